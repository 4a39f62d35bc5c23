#include "psrep/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace psrep::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < text.size()) out.push_back(text.substr(start));
      break;
    }
    out.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto p = s.find(sep, start);
    out.push_back(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

double to_double(std::string_view s) {
  const std::string str(trim(s));
  if (str.empty()) throw Error(ErrorCode::Parse, "expected a number");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(str.c_str(), &end);
  if (end != str.c_str() + str.size() || errno == ERANGE) throw Error(ErrorCode::Parse, "bad number '" + str + "'");
  return v;
}

long long to_integer(std::string_view s) {
  const std::string str(trim(s));
  if (str.empty()) throw Error(ErrorCode::Parse, "expected an integer");
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(str.c_str(), &end, 10);
  if (end != str.c_str() + str.size() || errno == ERANGE) throw Error(ErrorCode::Parse, "bad integer '" + str + "'");
  return v;
}

int to_int(std::string_view s) {
  const long long v = to_integer(s);
  if (v < -(1LL << 31) || v > (1LL << 31) - 1) throw Error(ErrorCode::Parse, "integer out of range");
  return static_cast<int>(v);
}

std::string fmt_int(long long v) { return std::to_string(v); }

// -- config schema --------------------------------------------------------------

struct Field {
  const char* key;
  const char* help;
  std::function<void(Config&, std::string_view)> set;
  std::function<std::string(const Config&)> get;
};

template <class T>
Field real(const char* key, T Config::*m, const char* help) {
  return {key, help, [m](Config& c, std::string_view v) { c.*m = to_double(v); },
          [m](const Config& c) { return format_double(c.*m); }};
}

Field integer(const char* key, int Config::*m, const char* help) {
  return {key, help, [m](Config& c, std::string_view v) { c.*m = to_int(v); },
          [m](const Config& c) { return fmt_int(c.*m); }};
}

Field text(const char* key, std::string Config::*m, const char* help) {
  return {key, help, [m](Config& c, std::string_view v) { c.*m = std::string(trim(v)); },
          [m](const Config& c) { return c.*m; }};
}

const std::vector<Field>& schema() {
  static const std::vector<Field> fields = {
      text("presentation", &Config::presentation, "nonorientable3 or free2"),
      text("family", &Config::family, "nec3 (glide lengths t1, t2; parameter kappa) or f2 (tr a, tr b; parameter tr ab)"),
      real("t1", &Config::t1, "nec3 glide length of a"),
      real("t2", &Config::t2, "nec3 glide length of b"),
      real("tr_a", &Config::tr_a, "f2 trace of a"),
      real("tr_b", &Config::tr_b, "f2 trace of b"),
      integer("ball_radius", &Config::ball_radius, "Cayley ball radius cap"),
      integer("table_radius", &Config::table_radius, "radius of the materialized element table"),
      integer("max_word_len", &Config::max_word_len, "primitive word length cap"),
      integer("conjugator_depth", &Config::conjugator_depth, "conjugator depth of the simplicity test"),
      {"candidate_cap", "enumeration budget",
       [](Config& c, std::string_view v) {
         const long long n = to_integer(v);
         if (n < 1) throw Error(ErrorCode::Parse, "candidate_cap must be positive");
         c.candidate_cap = static_cast<std::size_t>(n);
       },
       [](const Config& c) { return fmt_int(static_cast<long long>(c.candidate_cap)); }},
      real("class_tol", &Config::class_tol, "classification tolerance on tr^2"),
      real("cert_gap", &Config::cert_gap, "plane gap threshold c"),
      integer("window", &Config::window, "periods materialized on each side of a quasi-axis"),
      integer("stride", &Config::stride, "fixed stride i, 0 to auto-tune"),
      integer("max_stride", &Config::max_stride, "largest stride tried by auto-tune"),
      real("parabolic_tol", &Config::parabolic_tol, "|tr^2 - 4| below which a primitive is a parabolic suspect"),
      real("fingerprint_tol", &Config::fingerprint_tol, "character equality on trace fingerprints"),
      real("residual_bound", &Config::residual_bound, "largest relator residual accepted by the certifier"),
      real("grid_re_lo", &Config::grid_re_lo, "scan window, real part low"),
      real("grid_re_hi", &Config::grid_re_hi, "scan window, real part high"),
      real("grid_im_lo", &Config::grid_im_lo, "scan window, imaginary part low"),
      real("grid_im_hi", &Config::grid_im_hi, "scan window, imaginary part high"),
      integer("grid_nx", &Config::grid_nx, "cells along the real axis"),
      integer("grid_ny", &Config::grid_ny, "cells along the imaginary axis"),
      text("tune_word", &Config::tune_word, "curve tuned to tr^2 = 4 or to an elliptic value"),
      real("tune_seed", &Config::tune_seed, "parabolic tuning seed on the family path"),
      integer("elliptic_n", &Config::elliptic_n, "elliptic order n"),
      integer("elliptic_k", &Config::elliptic_k, "elliptic numerator k"),
      real("elliptic_seed", &Config::elliptic_seed, "elliptic tuning seed on the family path"),
      text("twist", &Config::twist, "automorphism whose n-th power is tested at the elliptic point"),
      integer("orbit_depth", &Config::orbit_depth, "orbit sampling depth"),
      real("orbit_window", &Config::orbit_window, "fingerprint bound of the compact window, 0 for automatic"),
      text("output_csv", &Config::output_csv, "CSV path, empty for stdout"),
      text("output_ppm", &Config::output_ppm, "PPM path for scans, empty to skip"),
      integer("threads", &Config::threads, "worker threads, 0 for hardware concurrency"),
  };
  return fields;
}

const Field& field(std::string_view key) {
  for (const Field& f : schema()) {
    if (key == f.key) return f;
  }
  throw Error(ErrorCode::Parse, "unknown config key '" + std::string(key) + "'");
}

}  // namespace

void set_config_value(Config& cfg, std::string_view key, std::string_view value) { field(key).set(cfg, value); }

std::string config_value(const Config& cfg, std::string_view key) { return field(key).get(cfg); }

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const Field& f : schema()) out.emplace_back(f.key);
  return out;
}

std::string config_schema() {
  const Config defaults;
  std::string out;
  for (const Field& f : schema()) {
    out += f.key;
    out += " = ";
    out += f.get(defaults);
    out += "    # ";
    out += f.help;
    out += '\n';
  }
  return out;
}

Config parse_config(std::string_view text) {
  Config cfg;
  std::set<std::string> seen;
  int line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) throw Error(ErrorCode::Parse, where + "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    if (!seen.insert(key).second) throw Error(ErrorCode::Parse, where + "duplicate key '" + key + "'");
    try {
      set_config_value(cfg, key, line.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(ErrorCode::Parse, where + e.what());
    }
  }
  return cfg;
}

Config load_config(const std::string& path) { return parse_config(read_file(path)); }

charlab::RepFamily family(const Config& cfg) {
  charlab::RepFamily fam;
  if (cfg.family == "nec3") {
    fam = charlab::RepFamily::nec_genus3(cfg.t1, cfg.t2);
  } else if (cfg.family == "f2") {
    fam = charlab::RepFamily::trace_triple_f2(cfg.tr_a, cfg.tr_b);
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown family '" + cfg.family + "'");
  }
  if (fam.presentation().name() != cfg.presentation) {
    throw Error(ErrorCode::InvalidArgument, "family " + cfg.family + " does not belong to " + cfg.presentation);
  }
  return fam;
}

pscert::CertParams cert_params(const Config& cfg) {
  pscert::CertParams p;
  p.plane.gap = cfg.cert_gap;
  p.plane.window = cfg.window;
  p.auto_tune = cfg.stride == 0;
  p.plane.stride = cfg.stride == 0 ? 1 : cfg.stride;
  p.max_stride = cfg.max_stride;
  p.parabolic_tol = cfg.parabolic_tol;
  p.threads = cfg.threads;
  p.max_len = cfg.max_word_len;
  p.depth = cfg.conjugator_depth;
  return p;
}

explore::ScanParams scan_params(const Config& cfg) {
  explore::ScanParams p;
  p.window = {cfg.grid_re_lo, cfg.grid_re_hi, cfg.grid_im_lo, cfg.grid_im_hi, cfg.grid_nx, cfg.grid_ny};
  p.cert = cert_params(cfg);
  p.max_len = cfg.max_word_len;
  p.depth = cfg.conjugator_depth;
  p.residual_bound = cfg.residual_bound;
  p.threads = cfg.threads;
  return p;
}

// -- CSV ------------------------------------------------------------------------

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string write_csv(const CsvRow& header, const std::vector<CsvRow>& rows) {
  std::string out;
  auto line = [&](const CsvRow& r) {
    if (r.size() != header.size()) throw Error(ErrorCode::Internal, "CSV row width differs from the header");
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (k) out += ',';
      out += csv_field(r[k]);
    }
    out += '\n';
  };
  line(header);
  for (const CsvRow& r : rows) line(r);
  return out;
}

std::vector<CsvRow> parse_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  CsvRow row;
  std::string cur;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    any = true;
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(cur));
      cur.clear();
    } else if (c == '\n') {
      row.push_back(std::move(cur));
      cur.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (quoted) throw Error(ErrorCode::Parse, "unterminated quoted CSV field");
  if (any) {
    row.push_back(std::move(cur));
    rows.push_back(std::move(row));
  }
  return rows;
}

// -- PPM ------------------------------------------------------------------------

Rgb palette(explore::CellClass c) noexcept {
  switch (c) {
    case explore::CellClass::Certified: return {46, 139, 87};
    case explore::CellClass::Inconclusive: return {218, 165, 32};
    case explore::CellClass::Failed: return {178, 34, 34};
    case explore::CellClass::BuildError: return {105, 105, 105};
  }
  return {};
}

std::string write_ppm(const std::vector<explore::CellClass>& pixels, int width, int height) {
  if (width < 1 || height < 1 || width > 4096 || height > 4096) {
    throw Error(ErrorCode::InvalidArgument, "raster dimensions must be in [1, 4096]");
  }
  if (pixels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(ErrorCode::InvalidArgument, "pixel count does not match the dimensions");
  }
  std::string out = "P3\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const Rgb c = palette(pixels[static_cast<std::size_t>(y) * width + x]);
      if (x) out += ' ';
      out += std::to_string(c.r) + " " + std::to_string(c.g) + " " + std::to_string(c.b);
    }
    out += '\n';
  }
  return out;
}

std::vector<explore::CellClass> parse_ppm(std::string_view text, int& width, int& height) {
  std::vector<std::string_view> tok;
  for (std::string_view line : split_lines(text)) {
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    for (auto t : tokens(line)) tok.push_back(t);
  }
  if (tok.size() < 4 || tok[0] != "P3") throw Error(ErrorCode::Parse, "not a plain PPM");
  width = to_int(tok[1]);
  height = to_int(tok[2]);
  if (to_int(tok[3]) != 255) throw Error(ErrorCode::Parse, "maxval must be 255");
  if (width < 1 || height < 1 || tok.size() != 4 + 3 * static_cast<std::size_t>(width) * height) {
    throw Error(ErrorCode::Parse, "PPM size mismatch");
  }
  std::vector<explore::CellClass> out;
  for (std::size_t k = 4; k < tok.size(); k += 3) {
    const Rgb c{static_cast<std::uint8_t>(to_int(tok[k])), static_cast<std::uint8_t>(to_int(tok[k + 1])),
                static_cast<std::uint8_t>(to_int(tok[k + 2]))};
    bool found = false;
    for (auto cls : {explore::CellClass::Certified, explore::CellClass::Inconclusive, explore::CellClass::Failed,
                     explore::CellClass::BuildError}) {
      if (palette(cls) == c) {
        out.push_back(cls);
        found = true;
      }
    }
    if (!found) throw Error(ErrorCode::Parse, "color outside the palette");
  }
  return out;
}

// -- representations ------------------------------------------------------------

std::string write_representation(const charlab::Representation& rho) {
  const auto& p = rho.presentation();
  std::string out = "presentation " + p.name() + "\n";
  if (!rho.provenance().empty()) out += "# " + rho.provenance() + "\n";
  for (int k = 0; k < p.rank(); ++k) {
    const auto& m = rho.generators()[k];
    out += "gen ";
    out += p.gen_names[k];
    for (const hyp::cplx& z : {m.a(), m.b(), m.c(), m.d()}) out += " " + format_double(z.real()) + " " + format_double(z.imag());
    out += '\n';
  }
  return out;
}

charlab::Representation parse_representation(std::string_view text) {
  std::optional<words::Presentation> pres;
  std::vector<std::optional<hyp::Isometry>> gens;
  int line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = tokens(line);
    if (tok.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    try {
      if (tok[0] == "presentation") {
        if (pres || tok.size() != 2) throw Error(ErrorCode::Parse, "expected one presentation line with a name");
        pres = words::Presentation::from_name(tok[1]);
        gens.assign(pres->rank(), std::nullopt);
      } else if (tok[0] == "gen") {
        if (!pres) throw Error(ErrorCode::Parse, "gen before presentation");
        if (tok.size() != 10 || tok[1].size() != 1) throw Error(ErrorCode::Parse, "expected gen <name> and 8 numbers");
        int idx = -1;
        for (int k = 0; k < pres->rank(); ++k) {
          if (pres->gen_names[k] == tok[1][0]) idx = k;
        }
        if (idx < 0) throw Error(ErrorCode::Parse, "unknown generator '" + std::string(tok[1]) + "'");
        if (gens[idx]) throw Error(ErrorCode::Parse, "generator given twice");
        double v[8];
        for (int k = 0; k < 8; ++k) v[k] = to_double(tok[2 + k]);
        gens[idx] = hyp::Isometry::from_entries({v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]});
      } else {
        throw Error(ErrorCode::Parse, "unknown directive '" + std::string(tok[0]) + "'");
      }
    } catch (const Error& e) {
      throw Error(ErrorCode::Parse, where + e.what());
    }
  }
  if (!pres) throw Error(ErrorCode::Parse, "missing presentation line");
  std::vector<hyp::Isometry> out;
  for (int k = 0; k < pres->rank(); ++k) {
    if (!gens[k]) throw Error(ErrorCode::Parse, std::string("missing generator ") + pres->gen_names[k]);
    out.push_back(*gens[k]);
  }
  return charlab::Representation(*pres, std::move(out), "file");
}

// -- automorphisms --------------------------------------------------------------

const words::Automorphism& AutomorphismSet::find(std::string_view name) const {
  for (const auto& f : automorphisms) {
    if (f.name == name) return f;
  }
  throw Error(ErrorCode::InvalidArgument, "no automorphism named '" + std::string(name) + "'");
}

namespace {

words::Presentation match_presentation(const std::string& names, const std::vector<words::Word>& relators) {
  const int n = static_cast<int>(names.size());
  std::vector<words::Presentation> cands{words::Presentation::free_group(n)};
  if (n >= 3) cands.push_back(words::Presentation::nonorientable(n));
  if (n >= 4 && n % 2 == 0) cands.push_back(words::Presentation::orientable(n / 2));
  for (const auto& p : cands) {
    if (std::string(p.gen_names.begin(), p.gen_names.end()) == names && p.relators == relators) return p;
  }
  throw Error(ErrorCode::Parse, "gens and relators match no supported presentation");
}

// "a -> a a b ; b -> B A b ; c -> c"
std::vector<words::Word> parse_images(const words::Presentation& p, std::string_view body) {
  std::vector<std::optional<words::Word>> img(p.rank());
  for (std::string_view part : split(body, ';')) {
    part = trim(part);
    if (part.empty()) continue;
    const auto arrow = part.find("->");
    if (arrow == std::string_view::npos) throw Error(ErrorCode::Parse, "expected x -> word");
    const std::string_view lhs = trim(part.substr(0, arrow));
    int idx = -1;
    for (int k = 0; k < p.rank(); ++k) {
      if (lhs.size() == 1 && p.gen_names[k] == lhs[0]) idx = k;
    }
    if (idx < 0) throw Error(ErrorCode::Parse, "unknown generator '" + std::string(lhs) + "'");
    if (img[idx]) throw Error(ErrorCode::Parse, "generator mapped twice");
    img[idx] = words::parse_word(p, trim(part.substr(arrow + 2)));
  }
  std::vector<words::Word> out;
  for (int k = 0; k < p.rank(); ++k) {
    if (!img[k]) throw Error(ErrorCode::Parse, std::string("no image for ") + p.gen_names[k]);
    out.push_back(*img[k]);
  }
  return out;
}

std::string images_text(const words::Presentation& p, const std::vector<words::Word>& img) {
  std::string out;
  for (int k = 0; k < p.rank(); ++k) {
    if (k) out += " ; ";
    out += p.gen_names[k];
    out += " ->";
    const std::string w = words::to_string(p, img[k]);
    for (char c : w) {
      out += ' ';
      out += c;
    }
  }
  return out;
}

}  // namespace

AutomorphismSet parse_automorphisms(std::string_view text) {
  std::string names;
  std::vector<words::Word> relators;
  std::optional<words::Presentation> pres;
  AutomorphismSet set;
  bool pending_inverse = false;
  int line_no = 0;
  auto presentation = [&]() -> const words::Presentation& {
    if (!pres) {
      if (names.empty()) throw Error(ErrorCode::Parse, "auto before gens");
      pres = match_presentation(names, relators);
    }
    return *pres;
  };
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    try {
      const auto tok = tokens(line);
      if (tok[0] == "gens") {
        if (!names.empty()) throw Error(ErrorCode::Parse, "gens given twice");
        for (std::size_t k = 1; k < tok.size(); ++k) {
          if (tok[k].size() != 1 || tok[k][0] < 'a' || tok[k][0] > 'z') {
            throw Error(ErrorCode::Parse, "generator names are single lowercase letters");
          }
          names += tok[k][0];
        }
        if (names.empty()) throw Error(ErrorCode::Parse, "no generators");
      } else if (tok[0] == "relator") {
        if (names.empty() || pres) throw Error(ErrorCode::Parse, "relator must follow gens");
        words::Presentation tmp = words::Presentation::free_group(static_cast<int>(names.size()));
        tmp.gen_names.assign(names.begin(), names.end());
        relators.push_back(words::parse_word(tmp, line.substr(7)));
      } else if (tok[0] == "auto") {
        if (pending_inverse) throw Error(ErrorCode::Parse, "missing inverse block");
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) throw Error(ErrorCode::Parse, "expected auto <name>: images");
        words::Automorphism f;
        f.name = std::string(trim(line.substr(4, colon - 4)));
        if (f.name.empty()) throw Error(ErrorCode::Parse, "automorphism needs a name");
        for (const auto& g : set.automorphisms) {
          if (g.name == f.name) throw Error(ErrorCode::Parse, "duplicate automorphism '" + f.name + "'");
        }
        f.images = parse_images(presentation(), line.substr(colon + 1));
        set.automorphisms.push_back(std::move(f));
        pending_inverse = true;
      } else if (line.rfind("inverse:", 0) == 0) {
        if (!pending_inverse) throw Error(ErrorCode::Parse, "inverse without auto");
        set.automorphisms.back().inverse_images = parse_images(presentation(), line.substr(8));
        pending_inverse = false;
      } else {
        throw Error(ErrorCode::Parse, "unknown directive '" + std::string(tok[0]) + "'");
      }
    } catch (const Error& e) {
      throw Error(ErrorCode::Parse, where + e.what());
    }
  }
  if (pending_inverse) throw Error(ErrorCode::Parse, "missing inverse block");
  set.presentation = presentation();
  return set;
}

std::string write_automorphisms(const AutomorphismSet& set) {
  const auto& p = set.presentation;
  std::string out = "gens";
  for (char c : p.gen_names) {
    out += ' ';
    out += c;
  }
  out += '\n';
  for (const auto& r : p.relators) {
    out += "relator";
    for (char c : words::to_string(p, r)) {
      out += ' ';
      out += c;
    }
    out += '\n';
  }
  for (const auto& f : set.automorphisms) {
    out += "auto " + f.name + ": " + images_text(p, f.images) + "\n";
    out += "inverse: " + images_text(p, f.inverse_images) + "\n";
  }
  return out;
}

std::string builtin_automorphisms_text(const words::Presentation& p) {
  if (p.name() == "nonorientable3") {
    return "# Mapping classes of the genus 3 nonorientable surface.\n"
           "# Dehn twists along the two-sided curves ab and bc.\n"
           "gens a b c\n"
           "relator a a b b c c\n"
           "auto twist_ab: a -> a a b ; b -> B A b ; c -> c\n"
           "inverse: a -> a B A ; b -> a b b ; c -> c\n"
           "auto twist_bc: a -> a ; b -> b b c ; c -> C B c\n"
           "inverse: a -> a ; b -> b C B ; c -> b c c\n";
  }
  if (p.name() == "free2") {
    return "# Nielsen twists of the rank 2 free group.\n"
           "gens a b\n"
           "auto nielsen_a: a -> a b ; b -> b\n"
           "inverse: a -> a B ; b -> b\n"
           "auto nielsen_b: a -> a ; b -> b a\n"
           "inverse: a -> a ; b -> b A\n";
  }
  throw Error(ErrorCode::InvalidArgument, "no shipped automorphisms for " + p.name());
}

AutomorphismSet builtin_automorphisms(const words::Presentation& p) {
  return parse_automorphisms(builtin_automorphisms_text(p));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::Io, "read failed on '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "write failed on '" + path + "'");
}

// -- result tables --------------------------------------------------------------

namespace {

std::string optional_double(double x) { return std::isnan(x) ? std::string() : format_double(x); }
std::string gap_text(double g) { return std::isinf(g) && g > 0 ? std::string("none") : optional_double(g); }

}  // namespace

std::string primitives_csv(const words::Presentation& p, const std::vector<primitives::PrimitiveClass>& prims) {
  std::vector<CsvRow> rows;
  for (const auto& c : prims) {
    rows.push_back({words::to_string(p, c.word), fmt_int(c.length()), fmt_int(c.orientation), fmt_int(c.verified_depth)});
  }
  return write_csv({"canonical_word", "length", "orientation", "verdict_depth"}, rows);
}

std::string certify_csv(const words::Presentation& p, const pscert::CertResult& res) {
  const CsvRow header{"row", "word", "length", "orientation", "stride", "min_gap", "verdict", "fail_index", "reason",
                      "K", "A", "r_emp", "R_emp", "R_lip", "n_parabolic", "max_len", "depth", "gap_threshold"};
  std::vector<CsvRow> rows;
  for (const auto& c : res.classes) {
    rows.push_back({"class", words::to_string(p, c.word), fmt_int(static_cast<long long>(c.word.size())),
                    fmt_int(c.orientation), fmt_int(c.stride), gap_text(c.check.min_gap),
                    pscert::verdict_name(c.verdict), c.check.fail_index ? fmt_int(*c.check.fail_index) : "",
                    c.check.reason, "", "", "", "", "", "", "", "", ""});
  }
  for (const auto& s : res.parabolics) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "tr2=%.17g%+.17gi", s.trace_squared.real(), s.trace_squared.imag());
    rows.push_back({"parabolic", words::to_string(p, s.word), fmt_int(static_cast<long long>(s.word.size())),
                    fmt_int(s.orientation), "", "", "", "", buf, "", "", "", "", "", "", "", "", ""});
  }
  rows.push_back({"summary", res.witness ? words::to_string(p, *res.witness) : "",
                  res.witness ? fmt_int(static_cast<long long>(res.witness->size())) : "",
                  res.witness ? fmt_int(words::orientation_class(p, *res.witness)) : "", fmt_int(res.stride),
                  gap_text(res.min_gap), pscert::verdict_name(res.verdict),
                  res.witness_index ? fmt_int(*res.witness_index) : "", res.reason, optional_double(res.qg.K),
                  optional_double(res.qg.A), optional_double(res.ratios.r_emp), optional_double(res.ratios.R_emp),
                  format_double(res.ratios.R_lip), fmt_int(static_cast<long long>(res.parabolics.size())),
                  fmt_int(res.params.max_len), fmt_int(res.params.depth), format_double(res.params.plane.gap)});
  return write_csv(header, rows);
}

std::string scan_csv(const std::vector<explore::ScanCell>& cells) {
  std::vector<CsvRow> rows;
  for (const auto& c : cells) {
    const bool ok = c.cls != explore::CellClass::BuildError;
    rows.push_back({fmt_int(c.i), fmt_int(c.j), format_double(c.param.real()), format_double(c.param.imag()),
                    optional_double(c.residual), explore::cell_class_name(c.cls), ok ? gap_text(c.min_gap) : "",
                    ok ? fmt_int(c.stride) : "", c.witness, ok ? fmt_int(static_cast<long long>(c.n_parabolic)) : "",
                    optional_double(c.r_emp), optional_double(c.R_emp), c.error});
  }
  return write_csv({"cell_i", "cell_j", "p_re", "p_im", "residual", "verdict", "min_gap", "stride", "witness",
                    "n_parabolic", "r_emp", "R_emp", "error"},
                   rows);
}

std::string scan_ppm(const std::vector<explore::ScanCell>& cells, const explore::ScanWindow& window) {
  if (cells.size() != window.cells()) throw Error(ErrorCode::InvalidArgument, "cell count does not match the window");
  std::vector<explore::CellClass> px(cells.size());
  for (const auto& c : cells) {
    px[static_cast<std::size_t>(window.ny - 1 - c.j) * window.nx + c.i] = c.cls;
  }
  return write_ppm(px, window.nx, window.ny);
}

std::string orbit_csv(const charlab::OrbitReport& rep) {
  std::vector<CsvRow> rows;
  for (int d = 0; d <= rep.depth; ++d) {
    rows.push_back({fmt_int(d), fmt_int(static_cast<long long>(rep.distinct_by_depth[d])),
                    fmt_int(static_cast<long long>(rep.in_window_by_depth[d])),
                    fmt_int(static_cast<long long>(rep.escaped_by_depth[d]))});
  }
  return write_csv({"depth", "distinct", "in_window", "escaped"}, rows);
}

}  // namespace psrep::io
