// Command-line front end over the C API.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "psrep/psrep.h"

namespace {

struct Failure {
  std::string msg;
};

void check(psrep_status s) {
  if (s != PSREP_OK) throw Failure{std::string(psrep_status_name(s)) + ": " + psrep_last_error()};
}

struct Owned {
  char* p = nullptr;
  ~Owned() { psrep_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct Handles {
  psrep_config* cfg = nullptr;
  psrep_rep* rep = nullptr;
  psrep_workspace* ws = nullptr;
  ~Handles() {
    psrep_workspace_free(ws);
    psrep_rep_free(rep);
    psrep_config_free(cfg);
  }
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"io: cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Failure{"io: cannot write '" + path + "'"};
}

std::string get(psrep_config* cfg, const char* key) {
  Owned v;
  check(psrep_config_get(cfg, key, &v.p));
  return v.str();
}

const char* verdict_text(psrep_verdict v) {
  switch (v) {
    case PSREP_CERTIFIED: return "Certified";
    case PSREP_INCONCLUSIVE: return "Inconclusive";
    case PSREP_FAILED: return "Failed";
  }
  return "?";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Primitive-stability certificates for surface group representations"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string output;
  app.add_option("-c,--config", config_path, "key = value config file")->check(CLI::ExistingFile);
  app.add_option("-s,--set", overrides, "override one config key, key=value")->take_all();
  app.add_option("-o,--output", output, "CSV output path (overrides output_csv)");

  std::string rep_path;
  std::vector<double> point;
  auto add_rep_options = [&](CLI::App* sub) {
    auto* r = sub->add_option("--rep", rep_path, "representation file")->check(CLI::ExistingFile);
    auto* p = sub->add_option("--point", point, "family parameter: re im")->expected(2);
    r->excludes(p);
  };

  auto* certify = app.add_subcommand("certify", "certify a representation (default: the anchor)");
  add_rep_options(certify);
  auto* scan = app.add_subcommand("scan", "certify every cell of a parameter grid");
  std::string ppm_path;
  scan->add_option("--ppm", ppm_path, "PPM raster path (overrides output_ppm)");
  auto* prims = app.add_subcommand("primitives", "list primitive conjugacy classes");
  auto* orbit = app.add_subcommand("orbit", "sample the mapping class group orbit of a character");
  add_rep_options(orbit);
  std::string auto_path;
  orbit->add_option("--automorphisms", auto_path, "automorphism file (default: shipped set)")
      ->check(CLI::ExistingFile);
  auto* parabolics = app.add_subcommand("parabolics", "tune tune_word to tr^2 = 4 and certify there");
  auto* elliptic = app.add_subcommand("elliptic", "tune tune_word elliptic and test twist^n on the character");
  auto* schema = app.add_subcommand("schema", "print config keys with defaults");
  auto* selftest = app.add_subcommand("selftest", "run built-in consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    Handles h;
    if (config_path.empty()) {
      check(psrep_config_new(&h.cfg));
    } else {
      check(psrep_config_load(config_path.c_str(), &h.cfg));
    }
    for (const std::string& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        std::cerr << "usage: --set expects key=value, got '" << kv << "'\n";
        return 2;
      }
      const psrep_status s = psrep_config_set(h.cfg, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
      if (s == PSREP_E_PARSE) {
        std::cerr << "usage: " << psrep_last_error() << "\n";
        return 2;
      }
      check(s);
    }
    if (!output.empty()) check(psrep_config_set(h.cfg, "output_csv", output.c_str()));
    if (!ppm_path.empty()) check(psrep_config_set(h.cfg, "output_ppm", ppm_path.c_str()));
    const std::string out_csv = get(h.cfg, "output_csv");

    auto load_rep = [&] {
      if (!rep_path.empty()) {
        check(psrep_rep_load(rep_path.c_str(), &h.rep));
      } else if (!point.empty()) {
        check(psrep_rep_family_point(h.cfg, point[0], point[1], &h.rep));
      } else {
        check(psrep_rep_anchor(get(h.cfg, "presentation").c_str(), &h.rep));
      }
    };
    auto workspace = [&] { check(psrep_workspace_new(h.cfg, &h.ws)); };

    Owned csv;
    if (*schema) {
      check(psrep_config_schema(&csv.p));
      write_text("", csv.str());
      return 0;
    }
    if (*selftest) {
      int passed = 0;
      check(psrep_selftest(&passed, &csv.p));
      write_text("", csv.str());
      return passed ? 0 : 1;
    }
    if (*certify) {
      load_rep();
      workspace();
      psrep_verdict v{};
      check(psrep_certify(h.ws, h.cfg, h.rep, &v, &csv.p));
      std::cerr << "verdict " << verdict_text(v) << "\n";
    } else if (*scan) {
      workspace();
      const std::string ppm_out = get(h.cfg, "output_ppm");
      Owned ppm;
      check(psrep_scan(h.ws, h.cfg, &csv.p, ppm_out.empty() ? nullptr : &ppm.p));
      if (!ppm_out.empty()) write_text(ppm_out, ppm.str());
    } else if (*prims) {
      workspace();
      check(psrep_primitives(h.ws, h.cfg, &csv.p));
    } else if (*orbit) {
      load_rep();
      workspace();
      const std::string autos = auto_path.empty() ? std::string() : read_text(auto_path);
      check(psrep_orbit(h.ws, h.cfg, h.rep, auto_path.empty() ? nullptr : autos.c_str(), &csv.p));
    } else if (*parabolics) {
      workspace();
      double param = 0.0;
      psrep_verdict v{};
      check(psrep_parabolic(h.ws, h.cfg, &param, &v, &csv.p));
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", param);
      std::cerr << "param " << buf << " verdict " << verdict_text(v) << "\n";
    } else if (*elliptic) {
      check(psrep_elliptic(h.cfg, nullptr, nullptr, nullptr, &csv.p));
    }
    write_text(out_csv, csv.str());
    return 0;
  } catch (const Failure& f) {
    std::cerr << "error: " << f.msg << "\n";
    return 1;
  }
}
