#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "lfuav/config.hpp"

using namespace lfuav;
namespace fs = std::filesystem;

namespace {
struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("lfuav_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};
}  // namespace

TEST_CASE("default config carries the published parameter tables") {
  const auto cfg = default_config();
  CHECK(cfg.radio.pt_w == doctest::Approx(0.5));
  CHECK(cfg.radio.n0_w == doctest::Approx(3.9811e-14));
  CHECK(cfg.a2g.a == doctest::Approx(4.88));
  CHECK(cfg.a2g.b == doctest::Approx(0.43));
  CHECK(cfg.a2g.eta_los_db == doctest::Approx(0.1));
  CHECK(cfg.a2g.eta_nlos_db == doctest::Approx(21.0));
  CHECK(cfg.fading_m == doctest::Approx(2.0));
  CHECK(cfg.env.mu == doctest::Approx(5000.0));
  CHECK(cfg.env.max_step == doctest::Approx(500.0));
  CHECK(cfg.env.horizon == 100);
  CHECK(cfg.env.altitude == doctest::Approx(500.0));
  CHECK(cfg.sac.discount == doctest::Approx(0.9));
  CHECK(cfg.sac.lr_q == doctest::Approx(0.003));
  CHECK(cfg.sac.lr_pi == doctest::Approx(0.001));
  CHECK(cfg.sac.lr_alpha == doctest::Approx(0.0003));
  CHECK(cfg.sac.batch == 128);
  CHECK(cfg.sac.entropy_target == doctest::Approx(-2.0));
  REQUIRE(cfg.layout.users.size() == 2);
  REQUIRE(cfg.distortion.size() == 2);
  CHECK(cfg.distortion[0].d == doctest::Approx(0.1));
  CHECK(cfg.distortion[1].d == doctest::Approx(0.3));
}

TEST_CASE("json round trip preserves the config") {
  auto cfg = default_config();
  cfg.seed = 77;
  cfg.fading_m = 3.5;
  cfg.env.max_step = 250.0;
  cfg.sac.hidden = {64, 32};
  cfg.distortion[1].d = 0.25;
  cfg.ground.log_distance = true;
  cfg.ground.exponent = 3.2;

  const auto j = config_to_json(cfg);
  const auto back = config_from_json(j);
  CHECK(back.seed == 77);
  CHECK(back.fading_m == doctest::Approx(3.5));
  CHECK(back.env.max_step == doctest::Approx(250.0));
  CHECK(back.sac.hidden == std::vector<int>{64, 32});
  CHECK(back.distortion[1].d == doctest::Approx(0.25));
  CHECK(back.ground.log_distance);
  CHECK(back.ground.exponent == doctest::Approx(3.2));
  CHECK(config_hash(back) == config_hash(cfg));
}

TEST_CASE("hash is sensitive to physics changes") {
  const auto a = default_config();
  auto b = default_config();
  b.fading_m = 2.5;
  CHECK(config_hash(a) != config_hash(b));
  auto c = default_config();
  c.seed = 99;
  CHECK(config_hash(a) != config_hash(c));
}

TEST_CASE("partial json overlays the defaults") {
  nlohmann::json j;
  j["fading"]["m"] = 1.5;
  const auto cfg = config_from_json(j);
  CHECK(cfg.fading_m == doctest::Approx(1.5));
  CHECK(cfg.radio.pt_w == doctest::Approx(0.5));  // untouched default
  const auto empty = config_from_json(nlohmann::json::object());
  CHECK(config_hash(empty) == config_hash(default_config()));
}

TEST_CASE("invalid configs are rejected") {
  nlohmann::json bad_d;
  bad_d["distortion"][0]["d"] = 0.7;
  bad_d["distortion"][1]["d"] = 0.1;
  CHECK_THROWS(config_from_json(bad_d));
  nlohmann::json neg_d;
  neg_d["distortion"][0]["d"] = -0.1;
  neg_d["distortion"][1]["d"] = 0.1;
  CHECK_THROWS(config_from_json(neg_d));
  nlohmann::json bad_m;
  bad_m["fading"]["m"] = 0.1;
  CHECK_THROWS(config_from_json(bad_m));
  nlohmann::json mismatch;
  // one user but two carriers/distortions
  mismatch["layout"]["users"] = nlohmann::json::array({{1000.0, 2000.0, 0.0}});
  CHECK_THROWS(config_from_json(mismatch));
}

TEST_CASE("config file loading and manifest replay") {
  TempDir tmp;
  auto cfg = default_config();
  cfg.seed = 1234;
  cfg.fading_m = 2.5;

  const auto cfg_path = tmp.path / "config.json";
  {
    std::ofstream out(cfg_path);
    out << config_to_json(cfg).dump(2);
  }
  const auto loaded = load_config_file(cfg_path);
  CHECK(loaded.seed == 1234);
  CHECK(config_hash(loaded) == config_hash(cfg));

  RunManifest man;
  man.command = "train";
  man.config = cfg;
  man.hash = config_hash(cfg);
  man.status = "ok";
  const auto man_path = tmp.path / "manifest.json";
  man.write(man_path);
  const auto replayed = load_config_file(man_path);
  CHECK(replayed.seed == 1234);
  CHECK(config_hash(replayed) == config_hash(cfg));

  CHECK_THROWS(load_config_file(tmp.path / "missing.json"));
  const auto junk = tmp.path / "junk.json";
  {
    std::ofstream out(junk);
    out << "not json";
  }
  CHECK_THROWS(load_config_file(junk));
}

TEST_CASE("manifest json carries schema, hash and outputs") {
  RunManifest man;
  man.command = "outage-map";
  man.config = default_config();
  man.hash = config_hash(man.config);
  man.outputs = {"outage_map.csv"};
  man.status = "ok";
  const auto j = man.to_json();
  CHECK(j.at("schema").get<std::string>() == "lfuav-manifest-1");
  CHECK(j.at("command").get<std::string>() == "outage-map");
  CHECK(j.at("config_hash").get<std::string>() == man.hash);
  CHECK(j.at("version").get<std::string>() == kVersion);
  CHECK(j.at("outputs").size() == 1);
  CHECK(j.contains("config"));
}
