#pragma once

#include <array>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <vector>

namespace lfuav {

struct Transition {
  std::array<double, 2> s;   // normalized state
  std::array<double, 2> a;   // squashed action, components in [-1, 1]
  double r = 0.0;
  std::array<double, 2> s2;
  bool done = false;
};

// Fixed-capacity ring; oldest entries overwritten first.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity) : cap_(capacity) {
    if (capacity == 0) throw std::invalid_argument("ReplayBuffer: zero capacity");
    store_.reserve(capacity);
  }

  void push(const Transition& t) {
    if (store_.size() < cap_) {
      store_.push_back(t);
    } else {
      store_[cursor_] = t;
      cursor_ = (cursor_ + 1) % cap_;
    }
  }

  std::size_t size() const { return store_.size(); }
  std::size_t capacity() const { return cap_; }
  const Transition& operator[](std::size_t i) const { return store_[i]; }

  std::vector<std::size_t> sample_indices(std::size_t batch,
                                          std::mt19937_64& rng) const {
    if (batch > store_.size())
      throw std::invalid_argument("ReplayBuffer: batch exceeds size");
    std::uniform_int_distribution<std::size_t> u(0, store_.size() - 1);
    std::vector<std::size_t> idx(batch);
    for (auto& i : idx) i = u(rng);
    return idx;
  }

 private:
  std::size_t cap_;
  std::size_t cursor_ = 0;
  std::vector<Transition> store_;
};

}  // namespace lfuav
