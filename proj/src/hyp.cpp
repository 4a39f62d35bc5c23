#include "psrep/hyp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace psrep {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Budget: return "budget";
    case ErrorCode::Inconsistent: return "inconsistent";
    case ErrorCode::Io: return "io";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace psrep

namespace psrep::hyp {

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(cplx a, cplx b, cplx c, cplx d) noexcept {
  return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
}

// Wraps an angle into (-pi, pi].
double wrap_angle(double theta) noexcept {
  theta = std::remainder(theta, 2.0 * kPi);
  if (theta <= -kPi) theta += 2.0 * kPi;
  return theta;
}

}  // namespace

// -- Isometry ---------------------------------------------------------------

Isometry Isometry::from_entries(cplx a, cplx b, cplx c, cplx d) {
  const cplx det = a * d - b * c;
  const double scale = max_abs(a, b, c, d);
  if (!(scale > 0.0) || std::abs(det) <= 1e-300 || std::abs(det) < 1e-14 * scale * scale) {
    throw Error(ErrorCode::Domain, "singular matrix");
  }
  const cplx s = std::sqrt(det);
  return from_sl2(a / s, b / s, c / s, d / s);
}

Isometry Isometry::diagonal(cplx lambda) {
  if (std::abs(lambda) == 0.0) throw Error(ErrorCode::Domain, "singular matrix");
  return from_sl2(lambda, 0.0, 0.0, 1.0 / lambda);
}

Isometry Isometry::pow(int n) const {
  Isometry base = n < 0 ? inverse() : *this;
  unsigned e = static_cast<unsigned>(n < 0 ? -n : n);
  Isometry result;
  while (e != 0) {
    if (e & 1u) result = result * base;
    base = base * base;
    e >>= 1u;
  }
  return result;
}

double Isometry::distance(const Isometry& o) const noexcept {
  const double plus = max_abs(a_ - o.a_, b_ - o.b_, c_ - o.c_, d_ - o.d_);
  const double minus = max_abs(a_ + o.a_, b_ + o.b_, c_ + o.c_, d_ + o.d_);
  return std::min(plus, minus);
}

double Isometry::max_abs_entry() const noexcept { return max_abs(a_, b_, c_, d_); }

H3Point H3Point::make(double x, double y, double t) {
  if (!(t > 0.0) || !std::isfinite(x) || !std::isfinite(y) || !std::isfinite(t)) {
    throw Error(ErrorCode::InvalidArgument, "H3 point needs finite coordinates and t > 0");
  }
  return {x, y, t};
}

const char* tag_name(IsometryTag tag) noexcept {
  switch (tag) {
    case IsometryTag::Identity: return "Identity";
    case IsometryTag::Elliptic: return "Elliptic";
    case IsometryTag::Parabolic: return "Parabolic";
    case IsometryTag::Hyperbolic: return "Hyperbolic";
    case IsometryTag::Loxodromic: return "Loxodromic";
  }
  return "?";
}

// -- Action -----------------------------------------------------------------

H3Point apply(const Isometry& m, const H3Point& p) noexcept {
  // Quaternion form of the Poincare extension for a determinant-one matrix.
  const cplx z = p.z();
  const cplx den = m.c() * z + m.d();
  const double t2 = p.t * p.t;
  const double scale = std::norm(den) + std::norm(m.c()) * t2;
  const cplx num = (m.a() * z + m.b()) * std::conj(den) + m.a() * std::conj(m.c()) * t2;
  const cplx w = num / scale;
  return {w.real(), w.imag(), p.t / scale};
}

BoundaryPoint apply(const Isometry& m, const BoundaryPoint& p) noexcept {
  if (p.at_infinity) {
    if (m.c() == cplx{}) return BoundaryPoint::infinity();
    return BoundaryPoint::finite(m.a() / m.c());
  }
  const cplx den = m.c() * p.z + m.d();
  if (den == cplx{}) return BoundaryPoint::infinity();
  return BoundaryPoint::finite((m.a() * p.z + m.b()) / den);
}

// -- Classification -----------------------------------------------------------

IsometryClass classify(const Isometry& m, double tol) {
  IsometryClass out;
  const cplx tr = m.trace();
  const cplx tr2 = tr * tr;
  out.trace_squared = tr2;
  if (m.is_identity(tol)) {
    out.tag = IsometryTag::Identity;
    return out;
  }
  if (std::abs(tr2 - 4.0) < tol) {
    out.tag = IsometryTag::Parabolic;
    return out;
  }
  const bool real = std::abs(tr2.imag()) < tol;
  if (real && tr2.real() >= 0.0 && tr2.real() < 4.0) {
    out.tag = IsometryTag::Elliptic;
    out.rotation_angle = 2.0 * std::acos(std::sqrt(tr2.real()) / 2.0);
    return out;
  }
  // Eigenvalue of modulus >= 1; the complex length is 2 log(lambda).
  const cplx disc = std::sqrt(tr2 - 4.0);
  cplx lambda = (tr + disc) / 2.0;
  const cplx other = (tr - disc) / 2.0;
  if (std::abs(other) > std::abs(lambda)) lambda = other;
  const cplx mu = 2.0 * std::log(lambda);
  if (real && tr2.real() > 4.0) {
    out.tag = IsometryTag::Hyperbolic;
    out.complex_length = {mu.real(), 0.0};
  } else {
    out.tag = IsometryTag::Loxodromic;
    double theta = wrap_angle(mu.imag());
    if (real && tr2.real() < 0.0) theta = kPi;
    out.complex_length = {mu.real(), theta};
  }
  return out;
}

double translation_length(const Isometry& m, double tol) {
  const IsometryClass cls = classify(m, tol);
  if (cls.tag == IsometryTag::Hyperbolic || cls.tag == IsometryTag::Loxodromic) {
    return cls.translation_length();
  }
  return 0.0;
}

GeodesicLine axis(const Isometry& m, double tol) {
  const IsometryClass cls = classify(m, tol);
  if (cls.tag != IsometryTag::Hyperbolic && cls.tag != IsometryTag::Loxodromic) {
    throw Error(ErrorCode::Domain, std::string("no axis for ") + tag_name(cls.tag) + " element");
  }
  const cplx a = m.a(), b = m.b(), c = m.c(), d = m.d();
  if (c == cplx{}) {
    // z -> (a z + b) / d fixes oo and b / (d - a).
    const BoundaryPoint finite = BoundaryPoint::finite(b / (d - a));
    if (std::abs(a) > std::abs(d)) return {finite, BoundaryPoint::infinity()};
    return {BoundaryPoint::infinity(), finite};
  }
  // Roots of c z^2 + (d - a) z - b = 0, computed without cancellation.
  const cplx s = std::sqrt(m.trace_squared() - 4.0);
  const cplx amd = a - d;
  const cplx q = std::abs(amd + s) >= std::abs(amd - s) ? (amd + s) / 2.0 : (amd - s) / 2.0;
  const cplx z1 = q / c;
  const cplx z2 = -b / q;
  // The fixed point z is attracting iff |c z + d| > 1.
  const bool z1_attracting = std::abs(c * z1 + d) > std::abs(c * z2 + d);
  const BoundaryPoint p1 = BoundaryPoint::finite(z1), p2 = BoundaryPoint::finite(z2);
  return z1_attracting ? GeodesicLine{p2, p1} : GeodesicLine{p1, p2};
}

// -- Distances and planes -----------------------------------------------------

double h3_distance(const H3Point& p, const H3Point& q) noexcept {
  const double dz2 = std::norm(p.z() - q.z());
  const double dt = p.t - q.t;
  const double chord = std::sqrt(dz2 + dt * dt);
  return 2.0 * std::asinh(chord / (2.0 * std::sqrt(p.t * q.t)));
}

BisectorPlane BisectorPlane::from_coefficients(double a, cplx b, double c) {
  const double norm = std::norm(b) - a * c;
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorCode::Domain, "inversive coordinates do not describe a circle");
  }
  const double s = std::sqrt(norm);
  BisectorPlane p;
  p.a_ = a / s;
  p.b_ = b / s;
  p.c_ = c / s;
  return p;
}

BisectorPlane BisectorPlane::hemisphere(cplx center, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  return from_coefficients(1.0, -center, std::norm(center) - radius * radius);
}

BisectorPlane BisectorPlane::vertical(cplx normal, double offset) {
  if (std::abs(normal) == 0.0) throw Error(ErrorCode::InvalidArgument, "zero normal");
  const cplx n = normal / std::abs(normal);
  return from_coefficients(0.0, n / 2.0, -offset);
}

double BisectorPlane::side(const H3Point& p) const noexcept {
  const cplx z = p.z();
  return a_ * (std::norm(z) + p.t * p.t) + 2.0 * (std::conj(b_) * z).real() + c_;
}

BisectorPlane BisectorPlane::flipped() const noexcept {
  BisectorPlane p;
  p.a_ = -a_;
  p.b_ = -b_;
  p.c_ = -c_;
  return p;
}

H3Point BisectorPlane::sample_point(double s, double u) const {
  if (a_ != 0.0) {
    const cplx center = -b_ / a_;
    const double radius = 1.0 / std::abs(a_);
    const double polar = std::clamp(s, 0.0, 1.0 - 1e-9) * 0.5 * kPi;
    const double azimuth = 2.0 * kPi * u;
    const cplx z = center + radius * std::sin(polar) * std::polar(1.0, azimuth);
    return {z.real(), z.imag(), radius * std::cos(polar)};
  }
  // Vertical plane over the line 2 Re(conj(b) z) + c = 0.
  const cplx foot = -c_ * b_ / (2.0 * std::norm(b_));
  const cplx along = cplx{0.0, 1.0} * b_ / std::abs(b_);
  const cplx z = foot + (8.0 * s - 4.0) * along;
  return {z.real(), z.imag(), std::exp(8.0 * u - 4.0)};
}

BisectorPlane perpendicular_bisector(const H3Point& p, const H3Point& q, double degenerate_tol) {
  if (h3_distance(p, q) < degenerate_tol) {
    throw Error(ErrorCode::Domain, "degenerate segment");
  }
  // side(X) = 2 t (cosh d(X, p) - cosh d(X, q)) before normalization.
  const cplx zp = p.z(), zq = q.z();
  const double a = 1.0 / p.t - 1.0 / q.t;
  const cplx b = -(zp / p.t - zq / q.t);
  const double c = (std::norm(zp) + p.t * p.t) / p.t - (std::norm(zq) + q.t * q.t) / q.t;
  // |b|^2 - a c = (|zp - zq|^2 + (tp - tq)^2) / (tp tq), evaluated stably.
  const double dt = p.t - q.t;
  const double norm = (std::norm(zp - zq) + dt * dt) / (p.t * q.t);
  const double s = std::sqrt(norm);
  return BisectorPlane::from_coefficients(a / s, b / s, c / s);
}

double inversive_product(const BisectorPlane& p, const BisectorPlane& q) noexcept {
  return (p.b() * std::conj(q.b())).real() - 0.5 * (p.a() * q.c() + q.a() * p.c());
}

bool planes_disjoint(const BisectorPlane& p, const BisectorPlane& q, double tangency_tol) noexcept {
  return std::abs(inversive_product(p, q)) > 1.0 + tangency_tol;
}

double plane_distance(const BisectorPlane& p, const BisectorPlane& q, double tangency_tol) noexcept {
  const double x = std::abs(inversive_product(p, q));
  if (x <= 1.0 + tangency_tol) return 0.0;
  return std::acosh(x);
}

int side_of(const BisectorPlane& plane, const BisectorPlane& other) noexcept {
  // Evaluate plane's side function at the point of `other` nearest to
  // (0, 0, 1), written in hyperboloid terms through the inversive product.
  const double value = (plane.a() + plane.c()) - (other.a() + other.c()) * inversive_product(plane, other);
  return value > 0.0 ? 1 : (value < 0.0 ? -1 : 0);
}

bool plane_separates(const BisectorPlane& first, const BisectorPlane& middle,
                     const BisectorPlane& last, double tangency_tol) {
  if (!planes_disjoint(first, middle, tangency_tol) || !planes_disjoint(middle, last, tangency_tol) ||
      !planes_disjoint(first, last, tangency_tol)) {
    throw Error(ErrorCode::Domain, "planes not pairwise disjoint");
  }
  return side_of(middle, first) != side_of(middle, last);
}

double circle_angle(const BoundaryPoint& p) noexcept {
  if (p.at_infinity) return kPi;
  return 2.0 * std::atan(p.z.real());
}

}  // namespace psrep::hyp
