#include "lfuav/config.hpp"

#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lfuav {
namespace {

using nlohmann::json;

json pos_to_json(const Position3D& p) { return json::array({p.x, p.y, p.z}); }

Position3D pos_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3)
    throw std::runtime_error("config: position must be [x, y, z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

template <typename T>
void maybe(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace

ExperimentConfig default_config() {
  ExperimentConfig cfg;
  cfg.layout.bs = {0.0, 0.0, 0.0};
  cfg.layout.uav = {0.0, 0.0, 500.0};
  // Default user positions are artifact defaults (the study fixes the users
  // but never publishes their coordinates); override via the config file.
  cfg.layout.users = {{4000.0, 3000.0, 0.0}, {7000.0, 1000.0, 0.0}};
  cfg.distortion = {{0.1, {1.0, 1.0, 1.0}}, {0.3, {1.0, 1.0, 1.0}}};
  return cfg;
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg = default_config();

  if (j.contains("layout")) {
    const auto& l = j.at("layout");
    if (l.contains("bs")) cfg.layout.bs = pos_from_json(l.at("bs"));
    if (l.contains("uav")) cfg.layout.uav = pos_from_json(l.at("uav"));
    if (l.contains("users")) {
      cfg.layout.users.clear();
      for (const auto& u : l.at("users")) cfg.layout.users.push_back(pos_from_json(u));
    }
  }
  if (j.contains("radio")) {
    const auto& r = j.at("radio");
    maybe(r, "pt_w", cfg.radio.pt_w);
    maybe(r, "n0_w", cfg.radio.n0_w);
    maybe(r, "carrier_hz", cfg.radio.carrier_hz);
  }
  if (j.contains("a2g")) {
    const auto& a = j.at("a2g");
    maybe(a, "a", cfg.a2g.a);
    maybe(a, "b", cfg.a2g.b);
    maybe(a, "eta_los_db", cfg.a2g.eta_los_db);
    maybe(a, "eta_nlos_db", cfg.a2g.eta_nlos_db);
  }
  if (j.contains("ground")) {
    const auto& g = j.at("ground");
    maybe(g, "log_distance", cfg.ground.log_distance);
    maybe(g, "exponent", cfg.ground.exponent);
  }
  if (j.contains("fading")) maybe(j.at("fading"), "m", cfg.fading_m);
  if (j.contains("distortion")) {
    cfg.distortion.clear();
    for (const auto& d : j.at("distortion")) {
      DistortionSpec s;
      maybe(d, "d", s.d);
      if (d.contains("kappa")) {
        const auto& k = d.at("kappa");
        for (int i = 0; i < 3; ++i) s.kappa[i] = k.at(i).get<double>();
      }
      cfg.distortion.push_back(s);
    }
  }
  if (j.contains("env")) {
    const auto& e = j.at("env");
    if (e.contains("area")) {
      const auto& a = e.at("area");
      cfg.env.area = {a.at(0).get<double>(), a.at(1).get<double>(),
                      a.at(2).get<double>(), a.at(3).get<double>()};
    }
    maybe(e, "altitude", cfg.env.altitude);
    maybe(e, "max_step", cfg.env.max_step);
    maybe(e, "horizon", cfg.env.horizon);
    maybe(e, "mu", cfg.env.mu);
    maybe(e, "eps_guard", cfg.env.eps_guard);
  }
  auto quad = [&](const char* key, QuadratureConfig& q) {
    if (!j.contains(key)) return;
    const auto& o = j.at(key);
    maybe(o, "abs_tol", q.abs_tol);
    maybe(o, "rel_tol", q.rel_tol);
    maybe(o, "max_subdivisions", q.max_subdivisions);
  };
  quad("quadrature", cfg.quadrature);
  quad("training_quadrature", cfg.training_quadrature);
  if (j.contains("sac")) {
    const auto& s = j.at("sac");
    maybe(s, "lr_q", cfg.sac.lr_q);
    maybe(s, "lr_pi", cfg.sac.lr_pi);
    maybe(s, "lr_alpha", cfg.sac.lr_alpha);
    maybe(s, "discount", cfg.sac.discount);
    maybe(s, "batch", cfg.sac.batch);
    maybe(s, "tau", cfg.sac.tau);
    maybe(s, "alpha0", cfg.sac.alpha0);
    maybe(s, "entropy_target", cfg.sac.entropy_target);
    maybe(s, "hidden", cfg.sac.hidden);
    maybe(s, "warmup", cfg.sac.warmup);
    maybe(s, "updates_per_step", cfg.sac.updates_per_step);
    maybe(s, "literal_buffer_trigger", cfg.sac.literal_buffer_trigger);
    maybe(s, "twin_critics", cfg.sac.twin_critics);
    maybe(s, "replay_capacity", cfg.sac.replay_capacity);
  }
  if (j.contains("ddpg")) {
    const auto& d = j.at("ddpg");
    maybe(d, "lr_q", cfg.ddpg.lr_q);
    maybe(d, "lr_pi", cfg.ddpg.lr_pi);
    maybe(d, "discount", cfg.ddpg.discount);
    maybe(d, "batch", cfg.ddpg.batch);
    maybe(d, "tau", cfg.ddpg.tau);
    maybe(d, "noise_sigma", cfg.ddpg.noise_sigma);
    maybe(d, "hidden", cfg.ddpg.hidden);
    maybe(d, "warmup", cfg.ddpg.warmup);
    maybe(d, "updates_per_step", cfg.ddpg.updates_per_step);
    maybe(d, "literal_buffer_trigger", cfg.ddpg.literal_buffer_trigger);
    maybe(d, "replay_capacity", cfg.ddpg.replay_capacity);
  }
  if (j.contains("train")) {
    const auto& t = j.at("train");
    maybe(t, "episodes", cfg.train.episodes);
    maybe(t, "use_cache", cfg.train.use_cache);
    maybe(t, "cache_resolution", cfg.train.cache_resolution);
  }
  if (j.contains("validate")) {
    const auto& v = j.at("validate");
    maybe(v, "geometries", cfg.validate.geometries);
    maybe(v, "mc_samples", cfg.validate.mc_samples);
    maybe(v, "mc_workers", cfg.validate.mc_workers);
    maybe(v, "distortions", cfg.validate.distortions);
  }
  maybe(j, "grid_resolution", cfg.grid_resolution);
  maybe(j, "seed", cfg.seed);
  maybe(j, "seeds", cfg.seeds);
  if (j.contains("compare_distortions")) {
    cfg.compare_distortions.clear();
    for (const auto& p : j.at("compare_distortions"))
      cfg.compare_distortions.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  }

  // Internal consistency: K users need K carriers and K distortions.
  const std::size_t k = cfg.layout.users.size();
  if (cfg.radio.carrier_hz.size() != k || cfg.distortion.size() != k)
    throw std::runtime_error("config: users, carriers and distortions must agree in count");
  for (const auto& d : cfg.distortion)
    if (!(d.d >= 0.0 && d.d <= 0.5))
      throw std::runtime_error("config: distortion d outside [0, 0.5]");
  if (!(cfg.fading_m >= 0.5)) throw std::runtime_error("config: fading m must be >= 0.5");
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["layout"]["bs"] = pos_to_json(cfg.layout.bs);
  j["layout"]["uav"] = pos_to_json(cfg.layout.uav);
  j["layout"]["users"] = json::array();
  for (const auto& u : cfg.layout.users) j["layout"]["users"].push_back(pos_to_json(u));
  j["radio"] = {{"pt_w", cfg.radio.pt_w},
                {"n0_w", cfg.radio.n0_w},
                {"carrier_hz", cfg.radio.carrier_hz}};
  j["a2g"] = {{"a", cfg.a2g.a},
              {"b", cfg.a2g.b},
              {"eta_los_db", cfg.a2g.eta_los_db},
              {"eta_nlos_db", cfg.a2g.eta_nlos_db}};
  j["ground"] = {{"log_distance", cfg.ground.log_distance},
                 {"exponent", cfg.ground.exponent}};
  j["fading"] = {{"m", cfg.fading_m}};
  j["distortion"] = json::array();
  for (const auto& d : cfg.distortion)
    j["distortion"].push_back({{"d", d.d}, {"kappa", d.kappa}});
  j["env"] = {{"area", {cfg.env.area.x0, cfg.env.area.x1, cfg.env.area.y0, cfg.env.area.y1}},
              {"altitude", cfg.env.altitude},
              {"max_step", cfg.env.max_step},
              {"horizon", cfg.env.horizon},
              {"mu", cfg.env.mu},
              {"eps_guard", cfg.env.eps_guard}};
  auto quad = [](const QuadratureConfig& q) {
    return json{{"abs_tol", q.abs_tol},
                {"rel_tol", q.rel_tol},
                {"max_subdivisions", q.max_subdivisions}};
  };
  j["quadrature"] = quad(cfg.quadrature);
  j["training_quadrature"] = quad(cfg.training_quadrature);
  j["sac"] = {{"lr_q", cfg.sac.lr_q},
              {"lr_pi", cfg.sac.lr_pi},
              {"lr_alpha", cfg.sac.lr_alpha},
              {"discount", cfg.sac.discount},
              {"batch", cfg.sac.batch},
              {"tau", cfg.sac.tau},
              {"alpha0", cfg.sac.alpha0},
              {"entropy_target", cfg.sac.entropy_target},
              {"hidden", cfg.sac.hidden},
              {"warmup", cfg.sac.warmup},
              {"updates_per_step", cfg.sac.updates_per_step},
              {"literal_buffer_trigger", cfg.sac.literal_buffer_trigger},
              {"twin_critics", cfg.sac.twin_critics},
              {"replay_capacity", cfg.sac.replay_capacity}};
  j["ddpg"] = {{"lr_q", cfg.ddpg.lr_q},
               {"lr_pi", cfg.ddpg.lr_pi},
               {"discount", cfg.ddpg.discount},
               {"batch", cfg.ddpg.batch},
               {"tau", cfg.ddpg.tau},
               {"noise_sigma", cfg.ddpg.noise_sigma},
               {"hidden", cfg.ddpg.hidden},
               {"warmup", cfg.ddpg.warmup},
               {"updates_per_step", cfg.ddpg.updates_per_step},
               {"literal_buffer_trigger", cfg.ddpg.literal_buffer_trigger},
               {"replay_capacity", cfg.ddpg.replay_capacity}};
  j["train"] = {{"episodes", cfg.train.episodes},
                {"use_cache", cfg.train.use_cache},
                {"cache_resolution", cfg.train.cache_resolution}};
  j["validate"] = {{"geometries", cfg.validate.geometries},
                   {"mc_samples", cfg.validate.mc_samples},
                   {"mc_workers", cfg.validate.mc_workers},
                   {"distortions", cfg.validate.distortions}};
  j["grid_resolution"] = cfg.grid_resolution;
  j["seed"] = cfg.seed;
  j["seeds"] = cfg.seeds;
  j["compare_distortions"] = json::array();
  for (const auto& p : cfg.compare_distortions)
    j["compare_distortions"].push_back({p[0], p[1]});
  return j;
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path.string());
  json j = json::parse(in);
  if (j.contains("schema") && j.at("schema") == "lfuav-manifest-1")
    return config_from_json(j.at("config"));
  return config_from_json(j);
}

std::string config_hash(const ExperimentConfig& cfg) {
  const std::string s = config_to_json(cfg).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

json RunManifest::to_json() const {
  json j;
  j["schema"] = "lfuav-manifest-1";
  j["command"] = command;
  j["version"] = kVersion;
  j["config"] = config_to_json(config);
  j["config_hash"] = hash;
  j["seed"] = config.seed;
  j["started_utc"] = started_utc.empty() ? utc_now() : started_utc;
  j["finished_utc"] = finished_utc.empty() && status == "complete"
                          ? utc_now()
                          : finished_utc;
  j["outputs"] = outputs;
  j["status"] = status;
  return j;
}

void RunManifest::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  out << to_json().dump(2) << '\n';
}

}  // namespace lfuav
