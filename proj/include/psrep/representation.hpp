#pragma once

// Representations of a presentation into PSL(2,C), one-parameter families,
// trace fingerprints and the Out action rho -> rho o f^-1.

#include <optional>
#include <string>
#include <vector>

#include "psrep/hyp.hpp"
#include "psrep/words.hpp"

namespace psrep::charlab {

using hyp::cplx;
using hyp::Isometry;
using words::Word;

class Representation {
 public:
  Representation() = default;
  Representation(words::Presentation p, std::vector<Isometry> gens, std::string provenance = {});

  const words::Presentation& presentation() const noexcept { return pres_; }
  const std::vector<Isometry>& generators() const noexcept { return gens_; }
  double residual() const noexcept { return residual_; }
  const std::string& provenance() const noexcept { return provenance_; }

  Isometry image(const Word& w) const;
  // Same representation conjugated by g: x -> g rho(x) g^-1.
  Representation conjugated(const Isometry& g) const;

 private:
  words::Presentation pres_;
  std::vector<Isometry> gens_;
  double residual_ = 0.0;
  std::string provenance_;
};

// Max over relators of the distance of rho(r) from +-I.
double relator_residual(const words::Presentation& p, const std::vector<Isometry>& gens);

enum class FamilyKind { NecGenus3, TraceTripleF2 };

// A one-complex-parameter slice. NecGenus3 fixes the glide lengths t1, t2 and
// varies the axis position kappa of b (axis from kappa-1 to kappa+1, a along
// 0..oo). TraceTripleF2 fixes tr a, tr b and varies tr ab.
struct RepFamily {
  FamilyKind kind = FamilyKind::NecGenus3;
  double t1 = 2.0;
  double t2 = 2.0;
  cplx tr_a{3.0};
  cplx tr_b{3.0};
  // Real path used by the tuners: param = s for s in [path_lo, path_hi].
  double path_lo = 0.0;
  double path_hi = 0.0;

  static RepFamily nec_genus3(double t1, double t2);
  static RepFamily trace_triple_f2(cplx tr_a, cplx tr_b);

  words::Presentation presentation() const;
  std::string name() const;
};

Representation build_representation(const RepFamily& fam, cplx param);

// Discrete faithful anchors: the Fuchsian NEC group at kappa = kAnchorKappa for
// nonorientable genus 3, the (3,3,3) punctured-torus group for free rank 2.
inline constexpr double kAnchorT = 2.0;
inline constexpr double kAnchorKappa = 1.25;
Representation fuchsian_anchor(const words::Presentation& p);

// Extended-precision generator images, for the Cayley ball's fingerprint check.
std::vector<words::PreciseMatrix> precise_generators(const RepFamily& fam, cplx param);
std::vector<words::PreciseMatrix> precise_anchor(const words::Presentation& p);

cplx trace_squared(const Representation& rho, const Word& w);

// Generators, pair products x_i x_j (i < j) and 20 fixed probe words.
std::vector<Word> fingerprint_words(const words::Presentation& p);
std::vector<cplx> trace_fingerprint(const Representation& rho);
// L-infinity distance of the fingerprints, each entry relative to max(1, |tr^2|).
double conjugacy_distance(const Representation& r1, const Representation& r2);

// Generator x -> rho(f^-1(x)).
Representation act(const words::Automorphism& f, const Representation& rho);

// act applied n times (f^-1 for n < 0). Long composed images lose the
// determinant to cancellation, so powers go through this.
Representation act_power(const words::Automorphism& f, const Representation& rho, int n);

// Conjugate with the first loxodromic generator's axis on (0, oo) and the
// basepoint level with the next generator's fixed points. Keeps entries near
// the size of the traces along long orbits.
Representation recentered(const Representation& rho);

// Fixed-point coincidence test on the generators: true when every generator
// image shares a fixed point with the first non-central one.
bool is_reducible(const Representation& rho, double tol = 1e-8);

// Real parameter s on the family's path with |tr^2(rho_s(gamma)) - target| < 1e-10.
// Scans outward from `seed` for the nearest sign change, then bisects.
double tune_trace_squared(const RepFamily& fam, const Word& gamma, double target, double seed);
// Target 4 cos^2(k pi / n).
double find_elliptic_approx(const RepFamily& fam, const Word& gamma, int n, int k, double seed);

bool stabilizer_check(const Representation& rho, const words::Automorphism& f, double tol);
// Same for f^power.
bool stabilizer_check(const Representation& rho, const words::Automorphism& f, int power, double tol);

struct OrbitReport {
  int depth = 0;
  std::vector<std::size_t> distinct_by_depth;   // cumulative distinct characters
  std::vector<std::size_t> in_window_by_depth;  // cumulative characters inside the window
  std::vector<std::size_t> escaped_by_depth;    // cumulative moves whose result left double range
  std::size_t distinct() const { return distinct_by_depth.empty() ? 0 : distinct_by_depth.back(); }
  std::size_t in_window() const { return in_window_by_depth.empty() ? 0 : in_window_by_depth.back(); }
};

inline constexpr double kEscapeTrace = 1e12;

// Breadth-first over words in the automorphisms and their inverses, up to
// `depth`. Characters are merged when their fingerprints agree to `dedup_tol`.
// A move whose result has |tr^2| > kEscapeTrace on the fingerprint, or cannot
// be normalized, counts as escaped and is not expanded.
OrbitReport orbit_sample(const Representation& rho, const std::vector<words::Automorphism>& gens, int depth,
                         double window_bound, double dedup_tol = 1e-6, std::size_t cap = 200000);

}  // namespace psrep::charlab
