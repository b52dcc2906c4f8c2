// Exercises the shared library through its C header only.
#include "shavok/shavok.h"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {
fs::path scratch(const char* name) {
  const fs::path p = fs::temp_directory_path() / (std::string("shavok_capi_") + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}
}  // namespace

TEST_SUITE("capi") {

TEST_CASE("status strings and version") {
  CHECK(std::strlen(shv_version()) > 0);
  CHECK(std::string(shv_status_string(SHV_OK)) == "ok");
  CHECK(std::strlen(shv_status_string(SHV_ERR_IO)) > 0);
}

TEST_CASE("series handles") {
  std::vector<double> v(100);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::sin(0.1 * k);
  shv_series* s = nullptr;
  REQUIRE(shv_series_from_values(1.0, 0.1, v.data(), v.size(), &s) == SHV_OK);
  CHECK(shv_series_length(s) == 100);
  CHECK(shv_series_dt(s) == 0.1);
  CHECK(shv_series_t0(s) == 1.0);
  std::vector<double> back(100);
  CHECK(shv_series_values(s, back.data(), back.size()) == 100);
  CHECK(back == v);

  shv_series* fine = nullptr;
  REQUIRE(shv_series_resample(s, 0.01, &fine) == SHV_OK);
  CHECK(shv_series_length(fine) == 991);
  shv_series_free(fine);

  CHECK(shv_series_resample(s, -1.0, &fine) == SHV_ERR_CONFIG);
  CHECK(std::strlen(shv_last_error()) > 0);
  CHECK(shv_series_from_values(0.0, 0.0, v.data(), v.size(), &fine) != SHV_OK);
  shv_series_free(s);
  shv_series_free(nullptr);
}

TEST_CASE("null arguments are rejected") {
  CHECK(shv_series_from_preset(nullptr, nullptr) == SHV_ERR_CONFIG);
  CHECK(shv_model_fit(nullptr, nullptr, nullptr) == SHV_ERR_CONFIG);
}

TEST_CASE("unknown preset and missing file map to distinct codes") {
  shv_series* s = nullptr;
  CHECK(shv_series_from_preset("duffing", &s) == SHV_ERR_CONFIG);
  CHECK(s == nullptr);
  CHECK(shv_series_from_csv("/nonexistent/x.csv", &s) == SHV_ERR_IO);
  shv_model* m = nullptr;
  CHECK(shv_model_load_json("/nonexistent/model.json", &m) == SHV_ERR_IO);
}

TEST_CASE("fit, inspect, save and reload a model") {
  shv_series* s = nullptr;
  REQUIRE(shv_series_from_preset("two_tone", &s) == SHV_OK);
  shv_fit_config cfg;
  REQUIRE(shv_fit_config_for_preset("two_tone", &cfg) == SHV_OK);
  CHECK(cfg.delays == 41);
  CHECK(cfg.rank == 4);
  cfg.method = SHV_METHOD_SHAVOK;
  shv_model* m = nullptr;
  REQUIRE(shv_model_fit(s, &cfg, &m) == SHV_OK);
  const std::size_t n = shv_model_state_dim(m);
  REQUIRE(n == 4);
  CHECK(shv_model_has_forcing(m) == 0);

  std::vector<double> a(n * n), re(n), im(n), kappa(n - 1);
  CHECK(shv_model_a(m, a.data()) == SHV_OK);
  CHECK(shv_model_spectrum(m, re.data(), im.data()) == SHV_OK);
  for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(re[i]) <= 5e-3 * std::hypot(re[i], im[i]));
  shv_structure st;
  CHECK(shv_model_structure(m, &st) == SHV_OK);
  CHECK(st.antisymmetry < 1e-2);
  CHECK(shv_model_curvatures(m, kappa.data()) == SHV_OK);
  CHECK(kappa[0] == doctest::Approx(1.205e-2).epsilon(0.05));
  std::vector<double> b(n);
  CHECK(shv_model_b(m, b.data()) != SHV_OK);

  const fs::path dir = scratch("model");
  const std::string path = (dir / "m.json").string();
  REQUIRE(shv_model_write_json(m, path.c_str()) == SHV_OK);
  shv_model* back = nullptr;
  REQUIRE(shv_model_load_json(path.c_str(), &back) == SHV_OK);
  double mean = -1, ra = 0, rb = 0;
  CHECK(shv_spectrum_distance(m, back, &mean, &ra, &rb) == SHV_OK);
  CHECK(mean < 1e-12);

  cfg.delays = 40;
  shv_model* bad = nullptr;
  CHECK(shv_model_fit(s, &cfg, &bad) == SHV_ERR_CONFIG);
  CHECK(bad == nullptr);

  shv_model_free(back);
  shv_model_free(m);
  shv_series_free(s);
}

TEST_CASE("constant data is a numerical failure") {
  std::vector<double> v(300, 1.0);
  shv_series* s = nullptr;
  REQUIRE(shv_series_from_values(0.0, 0.01, v.data(), v.size(), &s) == SHV_OK);
  shv_fit_config cfg;
  shv_fit_config_init(&cfg);
  cfg.delays = 11;
  cfg.rank = 3;
  shv_model* m = nullptr;
  CHECK(shv_model_fit(s, &cfg, &m) == SHV_ERR_NUMERICAL);
  shv_series_free(s);
}

TEST_CASE("pipeline and scenario entry points") {
  const fs::path dir = scratch("pipeline");
  shv_fit_config cfg;
  REQUIRE(shv_fit_config_for_preset("two_tone", &cfg) == SHV_OK);
  CHECK(shv_run_pipeline("two_tone", &cfg, 0.0, 1, dir.string().c_str()) == SHV_OK);
  CHECK(fs::exists(dir / "model.json"));
  CHECK(fs::exists(dir / "plotdata.csv"));
  CHECK(shv_run_pipeline("/nonexistent.csv", &cfg, 0.0, 1, dir.string().c_str()) == SHV_ERR_IO);

  CHECK(shv_scenario_count() == 10);
  CHECK(shv_scenario_name(0) != nullptr);
  CHECK(shv_scenario_name(10) == nullptr);
  int passed = 0;
  char summary[256];
  CHECK(shv_reproduce("1", &passed, summary, sizeof summary, nullptr) == SHV_OK);
  CHECK(passed == 1);
  CHECK(std::strlen(summary) > 0);
  CHECK(shv_reproduce("11", &passed, summary, sizeof summary, nullptr) == SHV_ERR_CONFIG);
}

}
