#pragma once

// Text formats: key=value config, CSV and plain PPM writers, representation
// and automorphism files, and CSV renderings of pipeline results.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "psrep/explore.hpp"

namespace psrep::io {

struct Config {
  std::string presentation = "nonorientable3";
  std::string family = "nec3";  // nec3 | f2
  double t1 = charlab::kAnchorT;
  double t2 = charlab::kAnchorT;
  double tr_a = 3.0;
  double tr_b = 3.0;

  int ball_radius = explore::kDefaultBallRadius;
  int table_radius = explore::kDefaultTableRadius;
  int max_word_len = explore::kDefaultScanMaxLen;
  int conjugator_depth = primitives::kDefaultConjugatorDepth;
  std::size_t candidate_cap = primitives::kDefaultCandidateCap;

  double class_tol = 1e-9;
  double cert_gap = pscert::kDefaultGap;
  int window = pscert::kDefaultWindow;
  int stride = 0;  // 0: auto-tune
  int max_stride = pscert::kMaxStride;
  double parabolic_tol = pscert::kDefaultParabolicTol;
  double fingerprint_tol = 1e-6;
  double residual_bound = pscert::kDefaultResidualBound;

  double grid_re_lo = explore::ScanWindow{}.re_lo;
  double grid_re_hi = explore::ScanWindow{}.re_hi;
  double grid_im_lo = explore::ScanWindow{}.im_lo;
  double grid_im_hi = explore::ScanWindow{}.im_hi;
  int grid_nx = 32;
  int grid_ny = 32;

  std::string tune_word = "ab";
  double tune_seed = 0.15;
  int elliptic_n = 5;
  int elliptic_k = 1;
  double elliptic_seed = 0.25;
  std::string twist = "twist_ab";

  int orbit_depth = 6;
  double orbit_window = 0.0;  // 0: twice the largest |tr^2| of the input fingerprint

  std::string output_csv;
  std::string output_ppm;
  int threads = 1;
};

// Unknown keys, malformed values and duplicates throw Parse with the line number.
Config parse_config(std::string_view text);
Config load_config(const std::string& path);
void set_config_value(Config& cfg, std::string_view key, std::string_view value);
std::string config_value(const Config& cfg, std::string_view key);
std::vector<std::string> config_keys();
// One line per key: name, default, description.
std::string config_schema();

pscert::CertParams cert_params(const Config& cfg);
explore::ScanParams scan_params(const Config& cfg);
charlab::RepFamily family(const Config& cfg);

// -- CSV ------------------------------------------------------------------------

std::string format_double(double x);  // %.17g, "inf", "-inf", "nan"
std::string csv_field(std::string_view s);
using CsvRow = std::vector<std::string>;
std::string write_csv(const CsvRow& header, const std::vector<CsvRow>& rows);
std::vector<CsvRow> parse_csv(std::string_view text);

// -- PPM ------------------------------------------------------------------------

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb&) const = default;
};

Rgb palette(explore::CellClass c) noexcept;
// Row-major, first row on top. Throws past 4096 x 4096.
std::string write_ppm(const std::vector<explore::CellClass>& pixels, int width, int height);
std::vector<explore::CellClass> parse_ppm(std::string_view text, int& width, int& height);

// -- representations and automorphisms --------------------------------------------

std::string write_representation(const charlab::Representation& rho);
charlab::Representation parse_representation(std::string_view text);

struct AutomorphismSet {
  words::Presentation presentation;
  std::vector<words::Automorphism> automorphisms;

  const words::Automorphism& find(std::string_view name) const;
};

AutomorphismSet parse_automorphisms(std::string_view text);
std::string write_automorphisms(const AutomorphismSet& set);
// Shipped mapping classes for nonorientable3 and free2.
std::string builtin_automorphisms_text(const words::Presentation& p);
AutomorphismSet builtin_automorphisms(const words::Presentation& p);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view bytes);

// -- result tables --------------------------------------------------------------

std::string primitives_csv(const words::Presentation& p, const std::vector<primitives::PrimitiveClass>& prims);
std::string certify_csv(const words::Presentation& p, const pscert::CertResult& res);
std::string scan_csv(const std::vector<explore::ScanCell>& cells);
// Top row is the largest imaginary part.
std::string scan_ppm(const std::vector<explore::ScanCell>& cells, const explore::ScanWindow& window);
std::string orbit_csv(const charlab::OrbitReport& rep);

}  // namespace psrep::io
