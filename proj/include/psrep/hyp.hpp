#pragma once

// Geometry of the upper half-space model of H^3 and its boundary sphere.
//
// Isometries are PSL(2,C) matrices acting by Moebius maps on C u {oo} and by
// the Poincare extension on H^3 = {(x, y, t) : t > 0}. Totally geodesic
// planes are stored in inversive coordinates (a, b, c) with a, c real and b
// complex, describing the boundary circle a|z|^2 + conj(b) z + b conj(z) + c = 0
// normalized to |b|^2 - a c = 1.

#include <array>
#include <complex>
#include <optional>
#include <string>

#include "psrep/error.hpp"

namespace psrep::hyp {

using cplx = std::complex<double>;

// Tolerances used throughout the library. A single record is threaded through
// the public entry points so that every threshold is configurable in one place.
struct NumericSettings {
  double class_tol = 1e-9;        // |tr^2 - 4| and |Im tr^2| thresholds in classify
  double det_tol = 1e-12;         // post-normalization |det - 1|
  double degenerate_tol = 1e-12;  // minimum distance for a bisector to exist
  double tangency_tol = 1e-12;    // |<P,Q>| <= 1 + tol counts as meeting
  double same_axis_tol = 1e-8;    // endpoint coincidence for SameAxis
  double parabolic_tol = 1e-6;    // |tr^2 - 4| for parabolic suspects
  double fingerprint_tol = 1e-6;  // character equality via trace fingerprints
  double residual_bound = 1e-6;   // maximum relator residual accepted by the certifier
};

// Element of PSL(2,C), stored as an SL(2,C) representative.
class Isometry {
 public:
  Isometry() = default;  // identity

  // Normalizes by a square root of the determinant. Throws on a singular matrix.
  static Isometry from_entries(cplx a, cplx b, cplx c, cplx d);
  // Trusts that ad - bc = 1 already holds.
  static Isometry from_sl2(cplx a, cplx b, cplx c, cplx d) noexcept {
    Isometry m;
    m.a_ = a;
    m.b_ = b;
    m.c_ = c;
    m.d_ = d;
    return m;
  }
  static Isometry identity() noexcept { return Isometry{}; }
  static Isometry diagonal(cplx lambda);

  cplx a() const noexcept { return a_; }
  cplx b() const noexcept { return b_; }
  cplx c() const noexcept { return c_; }
  cplx d() const noexcept { return d_; }

  cplx det() const noexcept { return a_ * d_ - b_ * c_; }
  cplx trace() const noexcept { return a_ + d_; }
  cplx trace_squared() const noexcept { return trace() * trace(); }

  Isometry inverse() const noexcept { return from_sl2(d_, -b_, -c_, a_); }
  Isometry negated() const noexcept { return from_sl2(-a_, -b_, -c_, -d_); }
  Isometry normalized() const { return from_entries(a_, b_, c_, d_); }
  Isometry pow(int n) const;

  // Max-entry distance between the matrices, minimized over the sign.
  double distance(const Isometry& other) const noexcept;
  // Equality in PSL(2,C): M and -M compare equal.
  bool equals(const Isometry& other, double tol = 1e-12) const noexcept {
    return distance(other) <= tol;
  }
  bool is_identity(double tol) const noexcept { return equals(Isometry{}, tol); }
  double max_abs_entry() const noexcept;

  friend Isometry operator*(const Isometry& l, const Isometry& r) noexcept {
    return from_sl2(l.a_ * r.a_ + l.b_ * r.c_, l.a_ * r.b_ + l.b_ * r.d_,
                    l.c_ * r.a_ + l.d_ * r.c_, l.c_ * r.b_ + l.d_ * r.d_);
  }

 private:
  cplx a_{1.0}, b_{0.0}, c_{0.0}, d_{1.0};
};

struct H3Point {
  double x = 0.0;
  double y = 0.0;
  double t = 1.0;

  cplx z() const noexcept { return {x, y}; }
  static H3Point make(double x, double y, double t);  // throws unless t > 0
};

// Point of the boundary sphere. Infinity is an explicit flag, never a large
// finite value.
struct BoundaryPoint {
  bool at_infinity = false;
  cplx z{};

  static BoundaryPoint infinity() noexcept { return {true, {}}; }
  static BoundaryPoint finite(cplx z) noexcept { return {false, z}; }
};

// Geodesic line oriented from the repelling to the attracting endpoint.
struct GeodesicLine {
  BoundaryPoint repelling;
  BoundaryPoint attracting;
};

enum class IsometryTag { Identity, Elliptic, Parabolic, Hyperbolic, Loxodromic };

const char* tag_name(IsometryTag tag) noexcept;

struct IsometryClass {
  IsometryTag tag = IsometryTag::Identity;
  cplx trace_squared{4.0};   // the value the verdict was based on
  double rotation_angle = 0;  // Elliptic only, in (0, pi]
  cplx complex_length{};      // Hyperbolic/Loxodromic: l + i theta, l > 0, theta in (-pi, pi]

  double translation_length() const noexcept { return complex_length.real(); }
};

// Totally geodesic plane in inversive coordinates. The side function
// a(|z|^2 + t^2) + 2 Re(conj(b) z) + c is negative on the negative half-space.
class BisectorPlane {
 public:
  // Normalizes so that |b|^2 - a c = 1. Throws if the form is not a circle.
  static BisectorPlane from_coefficients(double a, cplx b, double c);
  // Hemisphere over the circle |z - center| = radius, interior negative.
  static BisectorPlane hemisphere(cplx center, double radius);
  // Vertical plane over the line Re(conj(normal) z) = offset, normal unit;
  // the side where Re(conj(normal) z) < offset is negative.
  static BisectorPlane vertical(cplx normal, double offset);

  double a() const noexcept { return a_; }
  cplx b() const noexcept { return b_; }
  double c() const noexcept { return c_; }

  double side(const H3Point& p) const noexcept;
  double lorentz_norm() const noexcept { return std::norm(b_) - a_ * c_; }
  BisectorPlane flipped() const noexcept;
  // A point of the plane in H^3 (finite, never on the boundary).
  H3Point sample_point(double s, double u) const;

 private:
  double a_ = 0.0;
  cplx b_{1.0};
  double c_ = 0.0;
};

// -- Moebius action ---------------------------------------------------------

H3Point apply(const Isometry& m, const H3Point& p) noexcept;
BoundaryPoint apply(const Isometry& m, const BoundaryPoint& p) noexcept;

IsometryClass classify(const Isometry& m, double tol = 1e-9);
double translation_length(const Isometry& m, double tol = 1e-9);

// Axis of a hyperbolic or loxodromic element. Throws Domain otherwise.
GeodesicLine axis(const Isometry& m, double tol = 1e-9);

double h3_distance(const H3Point& p, const H3Point& q) noexcept;

// Plane of points equidistant from p and q; p lies on the negative side.
BisectorPlane perpendicular_bisector(const H3Point& p, const H3Point& q,
                                     double degenerate_tol = 1e-12);

// Lorentz inversive product <P, Q>; equals cosh of the distance between
// disjoint planes up to sign and is at most 1 in absolute value when they meet.
double inversive_product(const BisectorPlane& p, const BisectorPlane& q) noexcept;

double plane_distance(const BisectorPlane& p, const BisectorPlane& q,
                      double tangency_tol = 1e-12) noexcept;

bool planes_disjoint(const BisectorPlane& p, const BisectorPlane& q,
                     double tangency_tol = 1e-12) noexcept;

// True iff `middle` separates `first` from `last`. Throws Domain with
// "planes not pairwise disjoint" if any pair meets or is tangent.
bool plane_separates(const BisectorPlane& first, const BisectorPlane& middle,
                     const BisectorPlane& last, double tangency_tol = 1e-12);

// Angle coordinate of a point of R u {oo} on the circle: 2 atan(x), oo -> pi.
double circle_angle(const BoundaryPoint& p) noexcept;

// Sign of `plane`'s side function on `other`, assuming the two are disjoint.
int side_of(const BisectorPlane& plane, const BisectorPlane& other) noexcept;

}  // namespace psrep::hyp
