#pragma once

// Pipelines over the other modules: a shared workspace (ball, reference
// structure, primitive cache), grid scans of a family, tuned boundary points.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "psrep/primitives.hpp"
#include "psrep/pscert.hpp"
#include "psrep/representation.hpp"

namespace psrep::explore {

inline constexpr int kDefaultBallRadius = 16;
inline constexpr int kDefaultTableRadius = 8;
inline constexpr int kDefaultScanMaxLen = 10;
inline constexpr int kDefaultCertifyMaxLen = 12;
inline constexpr std::size_t kMaxScanCells = 1000000;

// Ball and reference structure for one presentation, plus memoized primitive
// enumerations. Shareable across threads once built.
class Workspace {
 public:
  Workspace(const words::Presentation& p, int ball_radius = kDefaultBallRadius,
            int table_radius = kDefaultTableRadius, int depth = primitives::kDefaultConjugatorDepth);
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  const words::Presentation& presentation() const noexcept { return pres_; }
  const words::CayleyBall& ball() const noexcept { return *ball_; }
  const primitives::ReferenceStructure& reference() const noexcept { return *ref_; }

  // Throws Budget past `cap` candidates; depth < 0 uses the reference depth.
  const std::vector<primitives::PrimitiveClass>& primitives(int max_len, int depth = -1, int threads = 1,
                                                            std::size_t cap = primitives::kDefaultCandidateCap) const;

 private:
  words::Presentation pres_;
  std::unique_ptr<words::CayleyBall> ball_;
  std::unique_ptr<primitives::ReferenceStructure> ref_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, std::vector<primitives::PrimitiveClass>> prims_;
};

struct ScanWindow {
  double re_lo = 0.85, re_hi = 1.65;
  double im_lo = -0.4, im_hi = 0.4;
  int nx = 1, ny = 1;

  // Cell centers; i runs along the real axis, j along the imaginary axis.
  hyp::cplx point(int i, int j) const;
  std::size_t cells() const noexcept { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
};

enum class CellClass { Certified, Inconclusive, Failed, BuildError };
const char* cell_class_name(CellClass c) noexcept;
CellClass cell_class(pscert::Verdict v) noexcept;

struct ScanCell {
  int i = 0, j = 0;
  hyp::cplx param{};
  CellClass cls = CellClass::BuildError;
  double residual = std::numeric_limits<double>::quiet_NaN();
  double min_gap = std::numeric_limits<double>::quiet_NaN();
  int stride = 0;
  std::string witness;
  std::size_t n_parabolic = 0;
  double r_emp = std::numeric_limits<double>::quiet_NaN();
  double R_emp = std::numeric_limits<double>::quiet_NaN();
  std::string error;
};

struct ScanParams {
  ScanWindow window;
  pscert::CertParams cert;  // cert.threads is ignored, cells are the parallel unit
  int max_len = kDefaultScanMaxLen;
  int depth = -1;
  double residual_bound = pscert::kDefaultResidualBound;
  int threads = 1;
};

// Row-major by (j, i). Per-cell failures land in the cell, never abort.
std::vector<ScanCell> scan(const Workspace& ws, const charlab::RepFamily& fam, const ScanParams& params);

struct CertifyRun {
  std::vector<primitives::PrimitiveClass> prims;
  pscert::CertResult result;
};

CertifyRun certify(const Workspace& ws, const charlab::Representation& rho, int max_len, int depth,
                   const pscert::CertParams& params, const hyp::H3Point& basepoint = {},
                   double residual_bound = pscert::kDefaultResidualBound);

struct TunedPoint {
  words::Word gamma;
  double target = 0.0;
  double param = 0.0;
  charlab::Representation rho;
  hyp::cplx trace_squared{};
};

// tr^2(gamma) = 4 on the family path, nearest to `seed`.
TunedPoint tune_parabolic(const charlab::RepFamily& fam, const words::Word& gamma, double seed);
// tr^2(gamma) = 4 cos^2(k pi / n).
TunedPoint tune_elliptic(const charlab::RepFamily& fam, const words::Word& gamma, int n, int k, double seed);

}  // namespace psrep::explore
