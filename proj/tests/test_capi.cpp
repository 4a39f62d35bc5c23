#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include "psrep/psrep.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  psrep_string_free(s);
  return out;
}

psrep_config* free2_config() {
  psrep_config* cfg = nullptr;
  REQUIRE(psrep_config_parse("presentation = free2\nfamily = f2\nball_radius = 12\ntable_radius = 6\n"
                             "max_word_len = 6\n",
                             &cfg) == PSREP_OK);
  return cfg;
}

}  // namespace

TEST_CASE("config through the C interface") {
  psrep_config* cfg = nullptr;
  REQUIRE(psrep_config_new(&cfg) == PSREP_OK);
  CHECK(psrep_config_set(cfg, "window", "5") == PSREP_OK);
  char* v = nullptr;
  REQUIRE(psrep_config_get(cfg, "window", &v) == PSREP_OK);
  CHECK(take(v) == "5");
  CHECK(psrep_config_set(cfg, "no_such_key", "1") == PSREP_E_PARSE);
  CHECK(std::string(psrep_last_error()).find("no_such_key") != std::string::npos);
  CHECK(psrep_config_set(cfg, "window", "x") == PSREP_E_PARSE);
  CHECK(psrep_config_set(nullptr, "window", "1") == PSREP_E_INVALID_ARGUMENT);
  CHECK(psrep_config_load("/nonexistent/cfg", &cfg) == PSREP_E_IO);
  psrep_config_free(cfg);

  psrep_config* dup = nullptr;
  CHECK(psrep_config_parse("window = 1\nwindow = 2\n", &dup) == PSREP_E_PARSE);
  CHECK(dup == nullptr);
  char* schema = nullptr;
  REQUIRE(psrep_config_schema(&schema) == PSREP_OK);
  CHECK(take(schema).find("max_stride") != std::string::npos);
  CHECK(std::string(psrep_status_name(PSREP_E_DOMAIN)) == "domain");
}

TEST_CASE("representations round trip") {
  psrep_rep* rep = nullptr;
  REQUIRE(psrep_rep_anchor("nonorientable3", &rep) == PSREP_OK);
  double r = 1.0;
  CHECK(psrep_rep_residual(rep, &r) == PSREP_OK);
  CHECK(r < 1e-12);
  char* text = nullptr;
  REQUIRE(psrep_rep_write(rep, &text) == PSREP_OK);
  const std::string t = take(text);
  psrep_rep* back = nullptr;
  REQUIRE(psrep_rep_parse(t.c_str(), &back) == PSREP_OK);
  char* text2 = nullptr;
  REQUIRE(psrep_rep_write(back, &text2) == PSREP_OK);
  CHECK(take(text2).substr(0, 22) == t.substr(0, 22));
  CHECK(psrep_rep_anchor("orientable2", &back) == PSREP_E_INVALID_ARGUMENT);
  CHECK(psrep_rep_parse("presentation nowhere\n", &back) == PSREP_E_PARSE);
  psrep_rep_free(back);
  psrep_rep_free(rep);
}

TEST_CASE("free group pipelines") {
  psrep_config* cfg = free2_config();
  psrep_workspace* ws = nullptr;
  REQUIRE(psrep_workspace_new(cfg, &ws) == PSREP_OK);

  char* csv = nullptr;
  REQUIRE(psrep_primitives(ws, cfg, &csv) == PSREP_OK);
  const std::string prims = take(csv);
  CHECK(prims.rfind("canonical_word,length,orientation,verdict_depth\na,1,1,", 0) == 0);

  psrep_rep* rep = nullptr;
  REQUIRE(psrep_rep_anchor("free2", &rep) == PSREP_OK);
  psrep_verdict v = PSREP_FAILED;
  REQUIRE(psrep_certify(ws, cfg, rep, &v, &csv) == PSREP_OK);
  CHECK(v == PSREP_CERTIFIED);
  CHECK(take(csv).find("summary,") != std::string::npos);

  REQUIRE(psrep_config_set(cfg, "orbit_depth", "3") == PSREP_OK);
  REQUIRE(psrep_orbit(ws, cfg, rep, nullptr, &csv) == PSREP_OK);
  CHECK(take(csv).rfind("depth,distinct,in_window,escaped\n0,1,1,0\n", 0) == 0);
  CHECK(psrep_orbit(ws, cfg, rep, "gens a b\nauto f: a -> b ; b -> a\n", &csv) == PSREP_E_PARSE);

  REQUIRE(psrep_config_set(cfg, "grid_nx", "3") == PSREP_OK);
  REQUIRE(psrep_config_set(cfg, "grid_ny", "2") == PSREP_OK);
  REQUIRE(psrep_config_set(cfg, "grid_re_lo", "2.5") == PSREP_OK);
  REQUIRE(psrep_config_set(cfg, "grid_re_hi", "3.5") == PSREP_OK);
  char* ppm = nullptr;
  REQUIRE(psrep_scan(ws, cfg, &csv, &ppm) == PSREP_OK);
  CHECK(take(csv).find("cell_i,cell_j") == 0);
  CHECK(take(ppm).rfind("P3\n3 2\n255\n", 0) == 0);

  psrep_config* other = nullptr;
  REQUIRE(psrep_config_new(&other) == PSREP_OK);
  CHECK(psrep_primitives(ws, other, &csv) == PSREP_E_INVALID_ARGUMENT);
  psrep_config_free(other);
  psrep_rep_free(rep);
  psrep_workspace_free(ws);
  psrep_config_free(cfg);
}

TEST_CASE("elliptic and selftest") {
  psrep_config* cfg = nullptr;
  REQUIRE(psrep_config_new(&cfg) == PSREP_OK);
  double param = 0, dist = 1;
  int fixed = 0;
  REQUIRE(psrep_elliptic(cfg, &param, &dist, &fixed, nullptr) == PSREP_OK);
  CHECK(fixed == 1);
  CHECK(dist < 1e-6);
  REQUIRE(psrep_config_set(cfg, "elliptic_seed", "99") == PSREP_OK);
  CHECK(psrep_elliptic(cfg, &param, &dist, &fixed, nullptr) == PSREP_E_INVALID_ARGUMENT);
  CHECK(std::strlen(psrep_last_error()) > 0);
  psrep_config_free(cfg);

  int passed = 0;
  char* report = nullptr;
  REQUIRE(psrep_selftest(&passed, &report) == PSREP_OK);
  CHECK(passed == 1);
  CHECK(take(report).find("FAIL") == std::string::npos);
}
