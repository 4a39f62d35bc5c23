#pragma once

// Primitive-stability certification: orbit maps into H^3, the nested bisector
// criterion along quasi-axes, a brute-force quasi-geodesic check, parabolic
// suspects and translation-length ratios.

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "psrep/hyp.hpp"
#include "psrep/primitives.hpp"
#include "psrep/representation.hpp"
#include "psrep/words.hpp"

namespace psrep::pscert {

using hyp::H3Point;
using words::Word;

inline constexpr double kDefaultGap = 1e-4;
inline constexpr int kDefaultWindow = 3;
inline constexpr int kMaxStride = 4;
inline constexpr double kDefaultParabolicTol = 1e-6;
inline constexpr double kDefaultResidualBound = 1e-6;

class OrbitMap {
 public:
  // Throws Domain if the relator residual is not below `residual_bound`.
  explicit OrbitMap(charlab::Representation rho, H3Point basepoint = {},
                    double residual_bound = kDefaultResidualBound);

  const charlab::Representation& representation() const noexcept { return rho_; }
  const H3Point& basepoint() const noexcept { return x_; }
  H3Point point(const Word& w) const { return hyp::apply(rho_.image(w), x_); }

 private:
  charlab::Representation rho_;
  H3Point x_;
};

struct PlaneCriterionParams {
  int stride = 1;
  double gap = kDefaultGap;
  int window = kDefaultWindow;
};

struct QGConstants {
  double K = 1.0;
  double A = 0.0;
};

struct PlaneCheck {
  bool pass = false;
  bool structural = false;  // separation held everywhere (the gap may still be small)
  double min_gap = std::numeric_limits<double>::infinity();
  std::optional<int> fail_index;
  std::string reason;  // empty, "degenerate segment", "planes meet", "not separating", "gap below threshold"
};

// Bisectors of consecutive stride points along the quasi-axis. By periodicity
// every window is congruent to one starting in the first period, so each
// offset s in [0, L) is checked once in the frame of vertex s.
PlaneCheck check_plane_criterion(const OrbitMap& om, const words::GeodesicPath& path,
                                 const PlaneCriterionParams& params, double degenerate_tol = 1e-12);

struct QGCheck {
  bool pass = true;
  int s = 0, t = 0;          // worst pair (smallest margin)
  double distance = 0.0;     // d(alpha(s), alpha(t))
  double lower_bound = 0.0;  // |s - t| / K - A
};

// Every vertex pair with 0 < |s - t| <= span. Throws if span exceeds the
// materialized path.
QGCheck brute_force_qg_check(const OrbitMap& om, const words::GeodesicPath& path, const QGConstants& k, int span);

// (K, A) = (i R_lip / c, 2 i R_lip).
QGConstants derived_constants(int stride, double gap, double r_lip);

struct ParabolicSuspect {
  Word word;
  int orientation = 1;
  hyp::cplx trace_squared{};
};

std::vector<ParabolicSuspect> detect_parabolic_primitives(const OrbitMap& om,
                                                          const std::vector<primitives::PrimitiveClass>& prims,
                                                          double tol = kDefaultParabolicTol);

struct RatioStats {
  double r_emp = std::numeric_limits<double>::quiet_NaN();
  double R_emp = std::numeric_limits<double>::quiet_NaN();
  double R_lip = 0.0;
};

RatioStats ratio_stats(const OrbitMap& om, const words::CayleyBall& ball,
                       const std::vector<primitives::PrimitiveClass>& prims);

double lipschitz_constant(const OrbitMap& om);

enum class Verdict { Certified, Inconclusive, Failed };
const char* verdict_name(Verdict v) noexcept;

struct ClassResult {
  Word word;
  int orientation = 1;
  int stride = 0;
  PlaneCheck check;
  Verdict verdict = Verdict::Failed;
};

struct CertParams {
  PlaneCriterionParams plane;
  bool auto_tune = true;
  int max_stride = kMaxStride;
  double parabolic_tol = kDefaultParabolicTol;
  int threads = 1;
  // echoed only
  int max_len = 0;
  int depth = 0;
};

struct CertResult {
  Verdict verdict = Verdict::Certified;
  int stride = 0;
  double min_gap = std::numeric_limits<double>::infinity();  // +inf: nothing tested
  std::vector<ClassResult> classes;                           // input order
  std::optional<Word> witness;
  std::optional<int> witness_index;
  std::string reason;
  QGConstants qg;
  RatioStats ratios;
  std::vector<ParabolicSuspect> parabolics;
  CertParams params;
};

// prims should be in canonical (shortlex) order; the witness is the first
// failing class in that order.
CertResult certify(const OrbitMap& om, const words::CayleyBall& ball,
                   const std::vector<primitives::PrimitiveClass>& prims, const CertParams& params);

// Max over generators and pair products w of ||f(w)|| / ||w||.
double wordset_distortion(const words::Automorphism& f, const words::CayleyBall& ball);

}  // namespace psrep::pscert
