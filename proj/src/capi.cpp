#include "psrep/psrep.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "psrep/io.hpp"

using namespace psrep;

struct psrep_config {
  io::Config cfg;
};

struct psrep_rep {
  charlab::Representation rho;
};

struct psrep_workspace {
  std::unique_ptr<explore::Workspace> ws;
};

namespace {

thread_local std::string last_error;

psrep_status fail(psrep_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <class F>
psrep_status guard(F&& fn) {
  try {
    fn();
    last_error.clear();
    return PSREP_OK;
  } catch (const Error& e) {
    return fail(static_cast<psrep_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PSREP_E_BUDGET, "out of memory");
  } catch (const std::exception& e) {
    return fail(PSREP_E_INTERNAL, e.what());
  }
}

void need(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

psrep_verdict to_c(pscert::Verdict v) {
  switch (v) {
    case pscert::Verdict::Certified: return PSREP_CERTIFIED;
    case pscert::Verdict::Inconclusive: return PSREP_INCONCLUSIVE;
    case pscert::Verdict::Failed: return PSREP_FAILED;
  }
  return PSREP_FAILED;
}

void check_workspace(const explore::Workspace& ws, const io::Config& cfg) {
  if (ws.presentation().name() != cfg.presentation) {
    throw Error(ErrorCode::InvalidArgument,
                "workspace is for " + ws.presentation().name() + ", config asks for " + cfg.presentation);
  }
}

explore::CertifyRun run_certify(const explore::Workspace& ws, const io::Config& cfg,
                                const charlab::Representation& rho) {
  check_workspace(ws, cfg);
  ws.primitives(cfg.max_word_len, cfg.conjugator_depth, cfg.threads, cfg.candidate_cap);
  return explore::certify(ws, rho, cfg.max_word_len, cfg.conjugator_depth, io::cert_params(cfg), {},
                          cfg.residual_bound);
}

}  // namespace

extern "C" {

const char* psrep_version(void) { return "0.1.0"; }

const char* psrep_last_error(void) { return last_error.c_str(); }

const char* psrep_status_name(psrep_status s) {
  if (s == PSREP_OK) return "ok";
  return error_code_name(static_cast<ErrorCode>(s));
}

void psrep_string_free(char* s) { std::free(s); }

psrep_status psrep_config_new(psrep_config** out) {
  return guard([&] {
    need(out, "out");
    *out = new psrep_config{};
  });
}

psrep_status psrep_config_parse(const char* text, psrep_config** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = new psrep_config{io::parse_config(text)};
  });
}

psrep_status psrep_config_load(const char* path, psrep_config** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new psrep_config{io::load_config(path)};
  });
}

psrep_status psrep_config_set(psrep_config* cfg, const char* key, const char* value) {
  return guard([&] {
    need(cfg, "config");
    need(key, "key");
    need(value, "value");
    io::set_config_value(cfg->cfg, key, value);
  });
}

psrep_status psrep_config_get(const psrep_config* cfg, const char* key, char** out) {
  return guard([&] {
    need(cfg, "config");
    need(key, "key");
    need(out, "out");
    *out = dup(io::config_value(cfg->cfg, key));
  });
}

psrep_status psrep_config_schema(char** out) {
  return guard([&] {
    need(out, "out");
    *out = dup(io::config_schema());
  });
}

void psrep_config_free(psrep_config* cfg) { delete cfg; }

psrep_status psrep_rep_load(const char* path, psrep_rep** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new psrep_rep{io::parse_representation(io::read_file(path))};
  });
}

psrep_status psrep_rep_parse(const char* text, psrep_rep** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = new psrep_rep{io::parse_representation(text)};
  });
}

psrep_status psrep_rep_anchor(const char* presentation, psrep_rep** out) {
  return guard([&] {
    need(presentation, "presentation");
    need(out, "out");
    *out = new psrep_rep{charlab::fuchsian_anchor(words::Presentation::from_name(presentation))};
  });
}

psrep_status psrep_rep_family_point(const psrep_config* cfg, double re, double im, psrep_rep** out) {
  return guard([&] {
    need(cfg, "config");
    need(out, "out");
    *out = new psrep_rep{charlab::build_representation(io::family(cfg->cfg), {re, im})};
  });
}

psrep_status psrep_rep_write(const psrep_rep* rep, char** out) {
  return guard([&] {
    need(rep, "representation");
    need(out, "out");
    *out = dup(io::write_representation(rep->rho));
  });
}

psrep_status psrep_rep_residual(const psrep_rep* rep, double* out) {
  return guard([&] {
    need(rep, "representation");
    need(out, "out");
    *out = rep->rho.residual();
  });
}

void psrep_rep_free(psrep_rep* rep) { delete rep; }

psrep_status psrep_workspace_new(const psrep_config* cfg, psrep_workspace** out) {
  return guard([&] {
    need(cfg, "config");
    need(out, "out");
    const io::Config& c = cfg->cfg;
    auto ws = std::make_unique<explore::Workspace>(words::Presentation::from_name(c.presentation), c.ball_radius,
                                                   c.table_radius, c.conjugator_depth);
    *out = new psrep_workspace{std::move(ws)};
  });
}

void psrep_workspace_free(psrep_workspace* ws) { delete ws; }

psrep_status psrep_primitives(const psrep_workspace* ws, const psrep_config* cfg, char** csv) {
  return guard([&] {
    need(ws, "workspace");
    need(cfg, "config");
    need(csv, "csv");
    const io::Config& c = cfg->cfg;
    check_workspace(*ws->ws, c);
    const auto& prims = ws->ws->primitives(c.max_word_len, c.conjugator_depth, c.threads, c.candidate_cap);
    *csv = dup(io::primitives_csv(ws->ws->presentation(), prims));
  });
}

psrep_status psrep_certify(const psrep_workspace* ws, const psrep_config* cfg, const psrep_rep* rep,
                           psrep_verdict* verdict, char** csv) {
  return guard([&] {
    need(ws, "workspace");
    need(cfg, "config");
    need(rep, "representation");
    const auto run = run_certify(*ws->ws, cfg->cfg, rep->rho);
    if (verdict) *verdict = to_c(run.result.verdict);
    if (csv) *csv = dup(io::certify_csv(ws->ws->presentation(), run.result));
  });
}

psrep_status psrep_scan(const psrep_workspace* ws, const psrep_config* cfg, char** csv, char** ppm) {
  return guard([&] {
    need(ws, "workspace");
    need(cfg, "config");
    need(csv, "csv");
    const io::Config& c = cfg->cfg;
    check_workspace(*ws->ws, c);
    ws->ws->primitives(c.max_word_len, c.conjugator_depth, c.threads, c.candidate_cap);
    const auto params = io::scan_params(c);
    const auto cells = explore::scan(*ws->ws, io::family(c), params);
    std::string text = io::scan_csv(cells);
    std::string image = ppm ? io::scan_ppm(cells, params.window) : std::string();
    *csv = dup(text);
    if (ppm) *ppm = dup(image);
  });
}

psrep_status psrep_orbit(const psrep_workspace* ws, const psrep_config* cfg, const psrep_rep* rep,
                         const char* automorphisms, char** csv) {
  return guard([&] {
    need(ws, "workspace");
    need(cfg, "config");
    need(rep, "representation");
    need(csv, "csv");
    const io::Config& c = cfg->cfg;
    const words::Presentation& p = rep->rho.presentation();
    if (p.name() != ws->ws->presentation().name()) {
      throw Error(ErrorCode::InvalidArgument, "representation and workspace presentations differ");
    }
    const io::AutomorphismSet set =
        automorphisms ? io::parse_automorphisms(automorphisms) : io::builtin_automorphisms(p);
    if (set.presentation.name() != p.name()) {
      throw Error(ErrorCode::InvalidArgument, "automorphisms are for " + set.presentation.name());
    }
    for (const auto& f : set.automorphisms) words::validate_automorphism(ws->ws->ball(), f);
    double bound = c.orbit_window;
    if (bound <= 0.0) {
      for (const auto& t : charlab::trace_fingerprint(rep->rho)) bound = std::max(bound, 2.0 * std::abs(t));
    }
    const auto rep_out = charlab::orbit_sample(rep->rho, set.automorphisms, c.orbit_depth, bound, c.fingerprint_tol);
    *csv = dup(io::orbit_csv(rep_out));
  });
}

psrep_status psrep_parabolic(const psrep_workspace* ws, const psrep_config* cfg, double* param,
                             psrep_verdict* verdict, char** csv) {
  return guard([&] {
    need(ws, "workspace");
    need(cfg, "config");
    const io::Config& c = cfg->cfg;
    const auto fam = io::family(c);
    const auto gamma = words::parse_word(fam.presentation(), c.tune_word);
    const auto tuned = explore::tune_parabolic(fam, gamma, c.tune_seed);
    const auto run = run_certify(*ws->ws, c, tuned.rho);
    if (param) *param = tuned.param;
    if (verdict) *verdict = to_c(run.result.verdict);
    if (csv) *csv = dup(io::certify_csv(ws->ws->presentation(), run.result));
  });
}

psrep_status psrep_elliptic(const psrep_config* cfg, double* param, double* distance, int* fixed, char** csv) {
  return guard([&] {
    need(cfg, "config");
    const io::Config& c = cfg->cfg;
    const auto fam = io::family(c);
    const auto p = fam.presentation();
    const auto gamma = words::parse_word(p, c.tune_word);
    const auto tuned = explore::tune_elliptic(fam, gamma, c.elliptic_n, c.elliptic_k, c.elliptic_seed);
    const auto set = io::builtin_automorphisms(p);
    const auto& f = set.find(c.twist);
    const double d = charlab::conjugacy_distance(charlab::act_power(f, tuned.rho, c.elliptic_n), tuned.rho);
    const bool is_fixed = d < c.fingerprint_tol;
    if (param) *param = tuned.param;
    if (distance) *distance = d;
    if (fixed) *fixed = is_fixed ? 1 : 0;
    if (csv) {
      *csv = dup(io::write_csv(
          {"word", "target_tr2", "param", "tr2_re", "tr2_im", "class", "twist", "power", "distance", "fixed"},
          {{c.tune_word, io::format_double(tuned.target), io::format_double(tuned.param),
            io::format_double(tuned.trace_squared.real()), io::format_double(tuned.trace_squared.imag()),
            hyp::tag_name(hyp::classify(tuned.rho.image(gamma), c.class_tol).tag), c.twist,
            std::to_string(c.elliptic_n), io::format_double(d), is_fixed ? "1" : "0"}}));
    }
  });
}

psrep_status psrep_selftest(int* passed, char** report) {
  return guard([&] {
    need(passed, "passed");
    std::string out;
    bool all = true;
    auto line = [&](const char* name, bool ok, const std::string& detail) {
      out += ok ? "ok   " : "FAIL ";
      out += name;
      if (!detail.empty()) out += " (" + detail + ")";
      out += '\n';
      all = all && ok;
    };
    auto attempt = [&](const char* name, auto&& body) {
      try {
        std::string detail;
        const bool ok = body(detail);
        line(name, ok, detail);
      } catch (const Error& e) {
        line(name, false, e.what());
      }
    };

    const auto n3 = words::Presentation::nonorientable(3);
    const auto f2 = words::Presentation::free_group(2);
    attempt("anchor relator residual", [&](std::string& d) {
      const double r = charlab::fuchsian_anchor(n3).residual();
      d = io::format_double(r);
      return r < 1e-12;
    });
    explore::Workspace small(f2, 12, 6);
    attempt("nielsen moves validate", [&](std::string&) {
      for (const auto& f : io::builtin_automorphisms(f2).automorphisms) words::validate_automorphism(small.ball(), f);
      return true;
    });
    attempt("twist moves the anchor", [&](std::string& d) {
      const auto rho = charlab::fuchsian_anchor(n3);
      const auto set = io::builtin_automorphisms(n3);
      const auto& f = set.find("twist_ab");
      const double dist = charlab::conjugacy_distance(charlab::act(f, rho), rho);
      d = io::format_double(dist);
      return dist > 1e-3;
    });
    attempt("free anchor certifies to length 6", [&](std::string& d) {
      pscert::CertParams cp;
      const auto run = explore::certify(small, charlab::fuchsian_anchor(f2), 6, -1, cp);
      d = std::string(pscert::verdict_name(run.result.verdict)) + ", " + std::to_string(run.prims.size()) +
          " classes, stride " + std::to_string(run.result.stride);
      return run.result.verdict == pscert::Verdict::Certified;
    });
    attempt("csv round trip", [&](std::string&) {
      const io::CsvRow h{"a", "b"};
      const std::vector<io::CsvRow> rows{{"x,y", "\"q\""}};
      const auto back = io::parse_csv(io::write_csv(h, rows));
      return back.size() == 2 && back[1] == rows[0];
    });
    *passed = all ? 1 : 0;
    if (report) *report = dup(out);
  });
}

}  // extern "C"
