#include "psrep/representation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <numeric>
#include <set>

namespace psrep::charlab {

using words::Presentation;
using words::PresentationKind;

// -- Representation ---------------------------------------------------------------

double relator_residual(const Presentation& p, const std::vector<Isometry>& gens) {
  double worst = 0.0;
  for (const Word& r : p.relators) {
    Isometry m;
    for (words::Letter l : r) {
      const Isometry& g = gens[words::generator_of(l)];
      m = m * (l > 0 ? g : g.inverse());
    }
    worst = std::max(worst, m.distance(Isometry::identity()));
  }
  return worst;
}

Representation::Representation(Presentation p, std::vector<Isometry> gens, std::string provenance)
    : pres_(std::move(p)), gens_(std::move(gens)), provenance_(std::move(provenance)) {
  if (static_cast<int>(gens_.size()) != pres_.rank()) {
    throw Error(ErrorCode::InvalidArgument, "generator count does not match the presentation");
  }
  for (Isometry& g : gens_) g = g.normalized();
  residual_ = relator_residual(pres_, gens_);
}

Isometry Representation::image(const Word& w) const {
  Isometry m;
  for (words::Letter l : w) {
    const int g = words::generator_of(l);
    if (g < 0 || g >= pres_.rank()) throw Error(ErrorCode::InvalidArgument, "letter outside presentation");
    m = m * (l > 0 ? gens_[g] : gens_[g].inverse());
  }
  return m;
}

Representation Representation::conjugated(const Isometry& g) const {
  std::vector<Isometry> out;
  const Isometry gi = g.inverse();
  for (const Isometry& x : gens_) out.push_back(g * x * gi);
  return Representation(pres_, std::move(out), provenance_ + " conjugated");
}

// -- families ---------------------------------------------------------------------

RepFamily RepFamily::nec_genus3(double t1, double t2) {
  if (!(t1 > 0.0) || !(t2 > 0.0)) throw Error(ErrorCode::InvalidArgument, "glide lengths must be positive");
  RepFamily f;
  f.kind = FamilyKind::NecGenus3;
  f.t1 = t1;
  f.t2 = t2;
  f.path_lo = 0.05;
  f.path_hi = 3.0;
  return f;
}

RepFamily RepFamily::trace_triple_f2(cplx tr_a, cplx tr_b) {
  RepFamily f;
  f.kind = FamilyKind::TraceTripleF2;
  f.tr_a = tr_a;
  f.tr_b = tr_b;
  f.path_lo = -6.0;
  f.path_hi = 6.0;
  return f;
}

Presentation RepFamily::presentation() const {
  return kind == FamilyKind::NecGenus3 ? Presentation::nonorientable(3) : Presentation::free_group(2);
}

std::string RepFamily::name() const { return kind == FamilyKind::NecGenus3 ? "nec3" : "f2trace"; }

namespace {

char* fmt(char* buf, std::size_t n, const char* f, double x, double y) {
  std::snprintf(buf, n, f, x, y);
  return buf;
}

template <class T>
using Mat = std::array<std::complex<T>, 4>;

template <class T>
Mat<T> mmul(const Mat<T>& l, const Mat<T>& r) {
  return {l[0] * r[0] + l[1] * r[2], l[0] * r[1] + l[1] * r[3], l[2] * r[0] + l[3] * r[2], l[2] * r[1] + l[3] * r[3]};
}

template <class T>
Mat<T> minv(const Mat<T>& m) {
  return {m[3], -m[1], -m[2], m[0]};
}

// NEC generators; the caller checks that h is loxodromic.
template <class T>
std::vector<Mat<T>> nec_matrices(T t1, T t2, std::complex<T> kappa) {
  using C = std::complex<T>;
  const C i{0, 1};
  // Glide along 0..oo: the real det -1 matrix diag(-e^{t/2}, e^{-t/2}) divided by i.
  const T e1 = std::exp(t1 / 2);
  const Mat<T> a{-e1 / i, C{}, C{}, (1 / e1) / i};
  // Glide along kappa-1 .. kappa+1, translating the other way.
  const C p = kappa - T(1), q = kappa + T(1);
  const C s = std::sqrt(q - p);
  const Mat<T> cm{q / s, p / s, T(1) / s, T(1) / s};
  const T e2 = std::exp(-t2 / 2);
  const Mat<T> g2{-e2 / i, C{}, C{}, (1 / e2) / i};
  const Mat<T> b = mmul(mmul(cm, g2), minv(cm));
  Mat<T> h = minv(mmul(mmul(a, a), mmul(b, b)));
  if ((h[0] + h[3]).real() < 0) {
    for (auto& x : h) x = -x;
  }
  const C th = h[0] + h[3];
  if (std::abs(th - T(2)) < T(1e-12)) throw Error(ErrorCode::Domain, "square root undefined");
  // Glide-type square root: c^2 = -h, tr^2 c = 2 - tr h.
  const C den = i * std::sqrt(th - T(2));
  const Mat<T> c{(h[0] - T(1)) / den, h[1] / den, h[2] / den, (h[3] - T(1)) / den};
  return {a, b, c};
}

// A = [[x, -1], [1, 0]], B = [[0, s], [-1/s, y]] with s + 1/s = z.
template <class T>
std::vector<Mat<T>> f2_matrices(std::complex<T> x, std::complex<T> y, std::complex<T> z) {
  using C = std::complex<T>;
  const C disc = std::sqrt(z * z - T(4));
  C s = (z + disc) / T(2);
  if (std::abs((z - disc) / T(2)) > std::abs(s)) s = (z - disc) / T(2);
  if (std::abs(s) < T(1e-300)) throw Error(ErrorCode::Domain, "degenerate trace triple");
  return {Mat<T>{x, C{-1}, C{1}, C{}}, Mat<T>{C{}, s, T(-1) / s, y}};
}

Isometry to_isometry(const Mat<double>& m) { return Isometry::from_sl2(m[0], m[1], m[2], m[3]); }

Representation build_nec(const RepFamily& fam, cplx kappa) {
  const auto m = nec_matrices<double>(fam.t1, fam.t2, kappa);
  const Isometry a = to_isometry(m[0]), b = to_isometry(m[1]), c = to_isometry(m[2]);
  const hyp::IsometryTag tag = hyp::classify((a * a * b * b).inverse()).tag;
  if (tag != hyp::IsometryTag::Hyperbolic && tag != hyp::IsometryTag::Loxodromic) {
    throw Error(ErrorCode::Domain, "a^2 b^2 not loxodromic, c undefined");
  }
  char buf[128];
  return Representation(fam.presentation(), {a, b, c},
                        fmt(buf, sizeof buf, "nec3 kappa=%.17g%+.17gi", kappa.real(), kappa.imag()));
}

Representation build_f2(const RepFamily& fam, cplx z) {
  const auto m = f2_matrices<double>(fam.tr_a, fam.tr_b, z);
  char buf[128];
  return Representation(fam.presentation(), {to_isometry(m[0]), to_isometry(m[1])},
                        fmt(buf, sizeof buf, "f2trace tr_ab=%.17g%+.17gi", z.real(), z.imag()));
}

}  // namespace

Representation build_representation(const RepFamily& fam, cplx param) {
  if (!std::isfinite(param.real()) || !std::isfinite(param.imag())) {
    throw Error(ErrorCode::InvalidArgument, "parameter not finite");
  }
  return fam.kind == FamilyKind::NecGenus3 ? build_nec(fam, param) : build_f2(fam, param);
}

Representation fuchsian_anchor(const Presentation& p) {
  if (p.kind == PresentationKind::NonorientableSurface && p.genus == 3) {
    return build_representation(RepFamily::nec_genus3(kAnchorT, kAnchorT), kAnchorKappa);
  }
  if (p.kind == PresentationKind::Free && p.genus == 2) {
    return build_representation(RepFamily::trace_triple_f2(3.0, 3.0), 3.0);
  }
  throw Error(ErrorCode::InvalidArgument, "no anchor representation for " + p.name());
}

std::vector<words::PreciseMatrix> precise_generators(const RepFamily& fam, cplx param) {
  build_representation(fam, param);  // same domain checks
  using L = long double;
  using CL = std::complex<L>;
  const CL p{param.real(), param.imag()};
  std::vector<Mat<L>> m;
  if (fam.kind == FamilyKind::NecGenus3) {
    m = nec_matrices<L>(fam.t1, fam.t2, p);
  } else {
    m = f2_matrices<L>(CL{fam.tr_a.real(), fam.tr_a.imag()}, CL{fam.tr_b.real(), fam.tr_b.imag()}, p);
  }
  return {m.begin(), m.end()};
}

std::vector<words::PreciseMatrix> precise_anchor(const Presentation& p) {
  if (p.kind == PresentationKind::NonorientableSurface && p.genus == 3) {
    return precise_generators(RepFamily::nec_genus3(kAnchorT, kAnchorT), kAnchorKappa);
  }
  if (p.kind == PresentationKind::Free && p.genus == 2) {
    return precise_generators(RepFamily::trace_triple_f2(3.0, 3.0), 3.0);
  }
  throw Error(ErrorCode::InvalidArgument, "no anchor representation for " + p.name());
}

// -- traces -----------------------------------------------------------------------

cplx trace_squared(const Representation& rho, const Word& w) { return rho.image(w).trace_squared(); }

std::vector<Word> fingerprint_words(const Presentation& p) {
  std::vector<Word> out;
  std::set<Word> seen;
  auto add = [&](const Word& w) {
    if (seen.insert(w).second) out.push_back(w);
  };
  const int n = p.rank();
  for (int k = 0; k < n; ++k) add({k + 1});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) add({i + 1, j + 1});
  // Probe words: cyclically reduced words of length 3 and 4 in shortlex
  // order, one per rotation/inversion class.
  std::vector<words::Letter> letters;
  for (int k = 0; k < n; ++k) {
    letters.push_back(k + 1);
    letters.push_back(-(k + 1));
  }
  auto class_min = [](const Word& w) {
    Word best = w;
    for (const Word& x : {w, words::inverse(w)})
      for (std::size_t k = 0; k < x.size(); ++k) {
        Word r = words::rotate(x, k);
        if (words::shortlex_less(r, best)) best = r;
      }
    return best;
  };
  std::size_t probes = 0;
  for (std::size_t len = 3; len <= 4 && probes < 20; ++len) {
    std::vector<std::size_t> idx(len, 0);
    for (;;) {
      Word w;
      for (std::size_t k = 0; k < len; ++k) w.push_back(letters[idx[k]]);
      if (probes < 20 && words::is_cyclically_reduced(w) && class_min(w) == w && !seen.count(w)) {
        add(w);
        ++probes;
      }
      std::size_t k = len;
      while (k > 0 && ++idx[k - 1] == letters.size()) idx[--k] = 0;
      if (k == 0) break;
    }
  }
  return out;
}

std::vector<cplx> trace_fingerprint(const Representation& rho) {
  std::vector<cplx> out;
  for (const Word& w : fingerprint_words(rho.presentation())) out.push_back(trace_squared(rho, w));
  return out;
}

double conjugacy_distance(const Representation& r1, const Representation& r2) {
  if (r1.presentation().name() != r2.presentation().name()) {
    throw Error(ErrorCode::InvalidArgument, "representations of different presentations");
  }
  const auto f1 = trace_fingerprint(r1), f2 = trace_fingerprint(r2);
  double d = 0.0;
  for (std::size_t k = 0; k < f1.size(); ++k) {
    d = std::max(d, std::abs(f1[k] - f2[k]) / std::max(1.0, std::abs(f1[k])));
  }
  return d;
}

Representation act(const words::Automorphism& f, const Representation& rho) {
  if (f.rank() != rho.presentation().rank()) throw Error(ErrorCode::InvalidArgument, "automorphism rank mismatch");
  std::vector<Isometry> gens;
  for (const Word& w : f.inverse_images) gens.push_back(rho.image(w));
  return Representation(rho.presentation(), std::move(gens), rho.provenance() + " . " + f.name);
}

Representation act_power(const words::Automorphism& f, const Representation& rho, int n) {
  const words::Automorphism g = n < 0 ? f.inverse() : f;
  Representation r = rho;
  for (int k = 0; k < std::abs(n); ++k) r = recentered(act(g, r));
  return r;
}

Representation recentered(const Representation& rho) {
  const auto& gens = rho.generators();
  auto loxodromic = [](const Isometry& m) {
    const auto tag = hyp::classify(m).tag;
    return tag == hyp::IsometryTag::Hyperbolic || tag == hyp::IsometryTag::Loxodromic;
  };
  try {
    std::size_t first = gens.size();
    for (std::size_t k = 0; k < gens.size() && first == gens.size(); ++k) {
      if (loxodromic(gens[k])) first = k;
    }
    if (first == gens.size()) return rho;
    const hyp::GeodesicLine ax = hyp::axis(gens[first]);
    Isometry m;
    if (ax.attracting.at_infinity) {
      m = Isometry::from_entries(1.0, -ax.repelling.z, 0.0, 1.0);
    } else if (ax.repelling.at_infinity) {
      m = Isometry::from_entries(0.0, 1.0, -1.0, ax.attracting.z);
    } else {
      m = Isometry::from_entries(1.0, -ax.repelling.z, 1.0, -ax.attracting.z);
    }
    // Slide along (0, oo) to the height of another generator's fixed points.
    for (std::size_t k = 0; k < gens.size(); ++k) {
      if (k == first) continue;
      const Isometry h = m * gens[k] * m.inverse();
      if (std::abs(h.c()) < 1e-300 || std::abs(h.b()) < 1e-300) continue;
      const double height = std::sqrt(std::abs(h.b() / h.c()));
      if (!(height > 0) || !std::isfinite(height)) continue;
      m = Isometry::diagonal(1.0 / std::sqrt(height)) * m;
      break;
    }
    return rho.conjugated(m);
  } catch (const Error&) {
    return rho;
  }
}

bool is_reducible(const Representation& rho, double tol) {
  auto fixes = [&](const Isometry& m, const hyp::BoundaryPoint& p) {
    if (p.at_infinity) return std::abs(m.c()) < tol;
    const hyp::BoundaryPoint q = hyp::apply(m, p);
    return !q.at_infinity && std::abs(q.z - p.z) < tol * std::max(1.0, std::abs(p.z));
  };
  const auto& gens = rho.generators();
  for (const Isometry& g : gens) {
    if (g.is_identity(tol)) continue;
    std::vector<hyp::BoundaryPoint> cands;
    if (std::abs(g.c()) < tol) {
      cands.push_back(hyp::BoundaryPoint::infinity());
      const cplx da = g.d() - g.a();
      if (std::abs(da) > tol) cands.push_back(hyp::BoundaryPoint::finite(g.b() / da));
    } else {
      const cplx s = std::sqrt(g.trace_squared() - 4.0);
      cands.push_back(hyp::BoundaryPoint::finite((g.a() - g.d() + s) / (2.0 * g.c())));
      cands.push_back(hyp::BoundaryPoint::finite((g.a() - g.d() - s) / (2.0 * g.c())));
    }
    for (const auto& p : cands) {
      if (std::all_of(gens.begin(), gens.end(), [&](const Isometry& m) { return fixes(m, p); })) return true;
    }
    return false;
  }
  return true;
}

// -- tuning -----------------------------------------------------------------------

double tune_trace_squared(const RepFamily& fam, const Word& gamma, double target, double seed) {
  auto value = [&](double s) -> std::optional<double> {
    try {
      const cplx t2 = trace_squared(build_representation(fam, s), gamma);
      if (std::abs(t2.imag()) > 1e-8 * std::max(1.0, std::abs(t2))) return std::nullopt;
      return t2.real() - target;
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  if (!(seed >= fam.path_lo && seed <= fam.path_hi)) {
    throw Error(ErrorCode::InvalidArgument, "seed outside the family path");
  }
  const int steps = 4000;
  const double h = (fam.path_hi - fam.path_lo) / steps;
  // Nearest bracket to the seed, looking both ways.
  std::optional<std::pair<double, double>> bracket;
  for (int k = 0; k < steps && !bracket; ++k) {
    for (int dir : {+1, -1}) {
      const double x0 = seed + dir * k * h, x1 = seed + dir * (k + 1) * h;
      if (std::min(x0, x1) < fam.path_lo || std::max(x0, x1) > fam.path_hi) continue;
      const auto f0 = value(x0), f1 = value(x1);
      if (f0 && f1 && ((*f0 <= 0.0 && *f1 >= 0.0) || (*f0 >= 0.0 && *f1 <= 0.0))) {
        bracket = std::make_pair(std::min(x0, x1), std::max(x0, x1));
        break;
      }
    }
  }
  if (!bracket) throw Error(ErrorCode::Domain, "no bracketing interval");
  double lo = bracket->first, hi = bracket->second;
  double flo = *value(lo);
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const auto fm = value(mid);
    if (!fm) throw Error(ErrorCode::Domain, "family undefined inside the bracket");
    if (*fm == 0.0) return mid;
    if ((*fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = *fm;
    } else {
      hi = mid;
    }
  }
  const double flo_abs = std::abs(*value(lo)), fhi_abs = std::abs(*value(hi));
  const double best = flo_abs <= fhi_abs ? lo : hi;
  if (std::min(flo_abs, fhi_abs) >= 1e-10) throw Error(ErrorCode::Domain, "root not resolved to 1e-10");
  return best;
}

double find_elliptic_approx(const RepFamily& fam, const Word& gamma, int n, int k, double seed) {
  if (n < 1 || std::gcd(k, n) != 1) throw Error(ErrorCode::InvalidArgument, "need gcd(k, n) = 1");
  const double c = std::cos(k * std::numbers::pi / n);
  return tune_trace_squared(fam, gamma, 4.0 * c * c, seed);
}

bool stabilizer_check(const Representation& rho, const words::Automorphism& f, double tol) {
  return conjugacy_distance(rho, act(f, rho)) < tol;
}

bool stabilizer_check(const Representation& rho, const words::Automorphism& f, int power, double tol) {
  return conjugacy_distance(rho, act_power(f, rho, power)) < tol;
}

// -- orbits -----------------------------------------------------------------------

OrbitReport orbit_sample(const Representation& rho, const std::vector<words::Automorphism>& gens, int depth,
                         double window_bound, double dedup_tol, std::size_t cap) {
  if (depth < 0 || depth > 8) throw Error(ErrorCode::InvalidArgument, "orbit depth must be in [0, 8]");
  std::vector<words::Automorphism> moves;
  for (const auto& g : gens) {
    moves.push_back(g);
    moves.push_back(g.inverse());
  }
  std::vector<std::vector<cplx>> seen;
  std::multimap<double, std::size_t> index;
  std::vector<double> weights;
  auto key = [&](const std::vector<cplx>& f) {
    if (weights.empty()) {
      for (std::size_t k = 0; k < f.size(); ++k) weights.push_back(1.0 + 0.37 * static_cast<double>(k % 7));
    }
    double s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) s += weights[k] * std::asinh(f[k].real());
    return s;
  };
  auto close = [&](const std::vector<cplx>& x, const std::vector<cplx>& y) {
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (std::abs(x[k] - y[k]) > dedup_tol * std::max(1.0, std::abs(x[k]))) return false;
    }
    return true;
  };
  std::size_t in_window = 0;
  auto insert = [&](const std::vector<cplx>& f) -> bool {
    const double k = key(f);
    double wsum = 0.0;
    for (double w : weights) wsum += w;
    const double width = 4.0 * dedup_tol * wsum;
    for (auto it = index.lower_bound(k - width); it != index.end() && it->first <= k + width; ++it) {
      if (close(f, seen[it->second])) return false;
    }
    index.emplace(k, seen.size());
    seen.push_back(f);
    double norm = 0.0;
    for (const cplx& v : f) norm = std::max(norm, std::abs(v));
    if (norm <= window_bound) ++in_window;
    return true;
  };
  OrbitReport rep;
  rep.depth = depth;
  std::vector<Representation> frontier{rho};
  insert(trace_fingerprint(rho));
  rep.distinct_by_depth.push_back(seen.size());
  rep.in_window_by_depth.push_back(in_window);
  rep.escaped_by_depth.push_back(0);
  std::size_t escaped = 0;
  for (int d = 1; d <= depth; ++d) {
    std::vector<Representation> next;
    for (const auto& r : frontier) {
      for (const auto& m : moves) {
        std::optional<Representation> r2;
        try {
          r2 = recentered(act(m, r));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::Domain) throw;
        }
        std::vector<cplx> f;
        if (r2) f = trace_fingerprint(*r2);
        const bool lost = !r2 || std::any_of(f.begin(), f.end(), [](const cplx& v) {
          return !(std::abs(v) <= kEscapeTrace);
        });
        if (lost) {
          ++escaped;
          continue;
        }
        if (insert(f)) next.push_back(std::move(*r2));
        if (seen.size() > cap) throw Error(ErrorCode::Budget, "budget exceeded");
      }
    }
    frontier = std::move(next);
    rep.distinct_by_depth.push_back(seen.size());
    rep.in_window_by_depth.push_back(in_window);
    rep.escaped_by_depth.push_back(escaped);
  }
  return rep;
}

}  // namespace psrep::charlab
