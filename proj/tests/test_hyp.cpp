#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "psrep/hyp.hpp"

using namespace psrep::hyp;

namespace {

std::mt19937_64 rng(20240611);

double uni(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

H3Point random_point() { return {uni(-2, 2), uni(-2, 2), std::exp(uni(-1.5, 1.5))}; }

Isometry random_isometry() {
  for (;;) {
    cplx a{uni(-2, 2), uni(-2, 2)}, b{uni(-2, 2), uni(-2, 2)}, c{uni(-2, 2), uni(-2, 2)}, d{uni(-2, 2), uni(-2, 2)};
    if (std::abs(a * d - b * c) > 0.2) return Isometry::from_entries(a, b, c, d);
  }
}

// Displacement of (0,0,1)-style points: the minimum of d(p, m p) over a coarse
// grid polished by coordinate descent. Independent of the trace formula.
double numeric_min_displacement(const Isometry& m) {
  H3Point best{0, 0, 1};
  double bd = h3_distance(best, apply(m, best));
  for (double x = -3; x <= 3; x += 0.25)
    for (double y = -3; y <= 3; y += 0.25)
      for (double lt = -3; lt <= 3; lt += 0.25) {
        H3Point p{x, y, std::exp(lt)};
        double d = h3_distance(p, apply(m, p));
        if (d < bd) { bd = d; best = p; }
      }
  double step = 0.1;
  while (step > 1e-9) {
    bool moved = false;
    for (int k = 0; k < 6; ++k) {
      H3Point q = best;
      double s = (k % 2 ? -step : step);
      if (k / 2 == 0) q.x += s;
      if (k / 2 == 1) q.y += s;
      if (k / 2 == 2) q.t *= std::exp(s);
      double d = h3_distance(q, apply(m, q));
      if (d < bd) { bd = d; best = q; moved = true; }
    }
    if (!moved) step /= 2;
  }
  return bd;
}

}  // namespace

TEST_CASE("apply examples") {
  H3Point o{0, 0, 1};
  auto p = apply(Isometry::identity(), o);
  CHECK(p.t == doctest::Approx(1.0));
  p = apply(Isometry::diagonal(std::sqrt(2.0)), o);
  CHECK(p.t == doctest::Approx(2.0));
  CHECK(std::abs(p.x) < 1e-15);
  p = apply(Isometry::from_entries(1, 1, 0, 1), o);
  CHECK(p.x == doctest::Approx(1.0));
  CHECK(p.t == doctest::Approx(1.0));
}

TEST_CASE("apply preserves distance") {
  for (int n = 0; n < 100; ++n) {
    auto m = random_isometry();
    auto p = random_point(), q = random_point();
    CHECK(std::abs(h3_distance(apply(m, p), apply(m, q)) - h3_distance(p, q)) < 1e-10);
  }
}

TEST_CASE("normalization and equality") {
  auto m = Isometry::from_entries(2, 1, 3, 4);
  CHECK(std::abs(m.det() - 1.0) < 1e-12);
  CHECK(m.equals(m.negated()));
  CHECK_THROWS_AS(Isometry::from_entries(1, 2, 2, 4), psrep::Error);
}

TEST_CASE("classify examples") {
  auto par = classify(Isometry::from_entries(1, 1, 0, 1));
  CHECK(par.tag == IsometryTag::Parabolic);
  auto hyp = classify(Isometry::diagonal(2.0));
  CHECK(hyp.tag == IsometryTag::Hyperbolic);
  CHECK(hyp.complex_length.real() == doctest::Approx(2 * std::log(2.0)).epsilon(1e-14));
  CHECK(hyp.complex_length.imag() == 0.0);
  auto lox = classify(Isometry::from_sl2(cplx(0, std::sqrt(2.0)), 0, 0, cplx(0, -1 / std::sqrt(2.0))));
  CHECK(lox.tag == IsometryTag::Loxodromic);
  CHECK(lox.complex_length.imag() == doctest::Approx(M_PI));
  CHECK(lox.complex_length.real() == doctest::Approx(std::log(2.0)));
  // tr^2 = -1/2 here, so Re(2 acosh(tr/2)) is the translation length.
  cplx tr{0, std::sqrt(2.0) - 1 / std::sqrt(2.0)};
  CHECK(lox.complex_length.real() == doctest::Approx((2.0 * std::acosh(tr / 2.0)).real()));
  auto ell = classify(Isometry::from_sl2(std::cos(0.3), -std::sin(0.3), std::sin(0.3), std::cos(0.3)));
  CHECK(ell.tag == IsometryTag::Elliptic);
  CHECK(ell.rotation_angle == doctest::Approx(0.6));
  CHECK(classify(Isometry::identity()).tag == IsometryTag::Identity);
  CHECK(classify(Isometry::identity().negated()).tag == IsometryTag::Identity);
}

TEST_CASE("translation length against numerical displacement") {
  CHECK(translation_length(Isometry::from_entries(1, 1, 0, 1)) == 0.0);
  CHECK(translation_length(Isometry::diagonal(std::exp(1.0))) == doctest::Approx(2.0).epsilon(1e-14));
  for (int n = 0; n < 10; ++n) {
    auto g = random_isometry();
    auto m = g * Isometry::diagonal(std::exp(1.0)) * g.inverse();
    CHECK(std::abs(translation_length(m) - 2.0) < 1e-10);
  }
  for (int n = 0; n < 5; ++n) {
    auto m = random_isometry();
    if (classify(m).tag != IsometryTag::Loxodromic) continue;
    CHECK(std::abs(translation_length(m) - numeric_min_displacement(m)) < 1e-6);
  }
}

TEST_CASE("classification is conjugation invariant and additive on powers") {
  for (int n = 0; n < 50; ++n) {
    auto m = random_isometry();
    auto g = random_isometry();
    auto c1 = classify(m), c2 = classify(g * m * g.inverse());
    CHECK(c1.tag == c2.tag);
    CHECK(std::abs(c1.complex_length.real() - c2.complex_length.real()) < 1e-9);
    if (c1.tag == IsometryTag::Loxodromic && std::abs(std::abs(c1.complex_length.imag()) - M_PI) > 1e-6) {
      CHECK(std::abs(c1.complex_length.imag() - c2.complex_length.imag()) < 1e-9);
    }
    if (c1.tag == IsometryTag::Loxodromic || c1.tag == IsometryTag::Hyperbolic) {
      double l = translation_length(m);
      for (int k = 1; k <= 10; ++k) {
        CHECK(std::abs(translation_length(m.pow(k)) - k * l) < 1e-8 * std::max(1.0, k * l));
      }
    }
  }
}

TEST_CASE("axis examples") {
  auto ax = axis(Isometry::diagonal(2.0));
  CHECK(ax.attracting.at_infinity);
  CHECK(std::abs(ax.repelling.z) < 1e-15);
  auto t = Isometry::from_entries(1, 1, 0, 1);
  ax = axis(t * Isometry::diagonal(2.0) * t.inverse());
  CHECK(ax.attracting.at_infinity);
  CHECK(std::abs(ax.repelling.z - 1.0) < 1e-14);
  CHECK_THROWS_AS(axis(t), psrep::Error);
  // Iteration oracle: forward orbits converge to the attracting point.
  auto m = Isometry::from_entries(0, 1, -1, 2.5);
  ax = axis(m);
  for (int s = 0; s < 10; ++s) {
    BoundaryPoint z = BoundaryPoint::finite({uni(-5, 5), uni(-5, 5)});
    for (int k = 0; k < 200; ++k) z = apply(m, z);
    CHECK(std::abs(z.z - ax.attracting.z) < 1e-9);
    z = BoundaryPoint::finite({uni(-5, 5), uni(-5, 5)});
    for (int k = 0; k < 200; ++k) z = apply(m.inverse(), z);
    CHECK(std::abs(z.z - ax.repelling.z) < 1e-9);
  }
  for (int n = 0; n < 20; ++n) {
    auto r = random_isometry();
    if (classify(r).tag != IsometryTag::Loxodromic) continue;
    auto a = axis(r);
    BoundaryPoint z = BoundaryPoint::finite({uni(-1, 1), uni(-1, 1)});
    int iters = static_cast<int>(60.0 / translation_length(r)) + 1;
    for (int k = 0; k < iters; ++k) z = apply(r, z);
    if (a.attracting.at_infinity) {
      CHECK(std::abs(z.z) > 1e6);
    } else {
      CHECK(std::abs(z.z - a.attracting.z) < 1e-6 * std::max(1.0, std::abs(a.attracting.z)));
    }
  }
}

TEST_CASE("distance closed forms") {
  CHECK(std::abs(h3_distance({0, 0, 1}, {0, 0, std::exp(1.0)}) - 1.0) < 1e-12);
  CHECK(h3_distance({0.3, 0.1, 2}, {0.3, 0.1, 2}) == 0.0);
  CHECK(std::abs(h3_distance({0, 0, 1}, {1, 0, 1}) - std::acosh(1.5)) < 1e-12);
}

TEST_CASE("bisector closed forms") {
  auto p = perpendicular_bisector({0, 0, 1}, {0, 0, std::exp(2.0)});
  // hemisphere centered at 0 with radius e
  CHECK(std::abs(p.b()) < 1e-12);
  CHECK(std::abs(-p.c() / p.a() - std::exp(2.0)) < 1e-12);
  CHECK(p.side({0, 0, 1}) < 0);
  auto v = perpendicular_bisector({-1, 0, 1}, {1, 0, 1});
  CHECK(std::abs(v.a()) < 1e-12);
  CHECK(std::abs(v.c()) < 1e-12);
  CHECK(std::abs(v.b().imag()) < 1e-12);
  CHECK(v.side({-1, 0, 1}) < 0);
  CHECK(std::abs(v.lorentz_norm() - 1.0) < 1e-10);
  CHECK_THROWS_AS(perpendicular_bisector({0, 0, 1}, {0, 0, 1}), psrep::Error);
}

TEST_CASE("bisector sampling oracle") {
  for (int n = 0; n < 20; ++n) {
    auto p = random_point(), q = random_point();
    auto pl = perpendicular_bisector(p, q);
    CHECK(std::abs(pl.lorentz_norm() - 1.0) < 1e-10);
    CHECK(pl.side(p) < 0);
    CHECK(pl.side(q) > 0);
    for (int k = 0; k < 100; ++k) {
      auto x = pl.sample_point(uni(0, 1), uni(0, 1));
      CHECK(std::abs(h3_distance(x, p) - h3_distance(x, q)) < 1e-8);
    }
    auto rev = perpendicular_bisector(q, p);
    CHECK(std::abs(std::abs(inversive_product(pl, rev)) - 1.0) < 1e-9);
    CHECK(std::abs(pl.a() + rev.a()) < 1e-9);
  }
}

TEST_CASE("plane distance") {
  auto h1 = BisectorPlane::hemisphere(0, 1), he = BisectorPlane::hemisphere(0, std::exp(1.0));
  CHECK(std::abs(plane_distance(h1, he) - 1.0) < 1e-12);
  CHECK(plane_distance(h1, h1) == 0.0);
  auto h2 = BisectorPlane::hemisphere(0, 2), h4 = BisectorPlane::hemisphere(0, 4);
  CHECK(std::abs(plane_distance(h2, h4) - std::log(2.0)) < 1e-12);
  // sampling-minimization oracle on random disjoint pairs
  int tested = 0;
  while (tested < 5) {
    auto p = random_point(), q = random_point(), r = random_point();
    auto P = perpendicular_bisector(p, q), Q = perpendicular_bisector(q, r);
    double d = plane_distance(P, Q);
    if (d < 0.05) continue;
    ++tested;
    double best = 1e300;
    double bs = 0, bu = 0, cs = 0, cu = 0;
    for (int k = 0; k < 4000; ++k) {
      double s1 = uni(0, 1), u1 = uni(0, 1), s2 = uni(0, 1), u2 = uni(0, 1);
      double v = h3_distance(P.sample_point(s1, u1), Q.sample_point(s2, u2));
      if (v < best) { best = v; bs = s1; bu = u1; cs = s2; cu = u2; }
    }
    double step = 0.05;
    while (step > 1e-12) {
      bool moved = false;
      for (int k = 0; k < 8; ++k) {
        double s1 = bs, u1 = bu, s2 = cs, u2 = cu;
        double sg = k % 2 ? -step : step;
        if (k / 2 == 0) s1 += sg;
        if (k / 2 == 1) u1 += sg;
        if (k / 2 == 2) s2 += sg;
        if (k / 2 == 3) u2 += sg;
        double v = h3_distance(P.sample_point(s1, u1), Q.sample_point(s2, u2));
        if (v < best) { best = v; bs = s1; bu = u1; cs = s2; cu = u2; moved = true; }
      }
      if (!moved) step /= 2;
    }
    CHECK(std::abs(best - d) < 1e-4);
  }
}

TEST_CASE("plane separation") {
  auto h1 = BisectorPlane::hemisphere(0, 1), h2 = BisectorPlane::hemisphere(0, 2), h4 = BisectorPlane::hemisphere(0, 4);
  CHECK(plane_separates(h1, h2, h4));
  CHECK_FALSE(plane_separates(h1, h4, h2));
  auto v0 = BisectorPlane::vertical(1, 0), v1 = BisectorPlane::vertical(1, 1), v2 = BisectorPlane::vertical(1, 2);
  // parallel vertical planes share the point at infinity, so they are tangent
  CHECK_THROWS_WITH_AS(plane_separates(v0, v1, v2), "planes not pairwise disjoint", psrep::Error);
  auto w0 = BisectorPlane::hemisphere(-3, 1), w2 = BisectorPlane::hemisphere(3, 1);
  CHECK(plane_separates(w0, v0, w2));
  CHECK_FALSE(plane_separates(v0, w0, w2));
  auto big = BisectorPlane::hemisphere(0, 1.5);
  CHECK_THROWS_WITH_AS(plane_separates(h1, big, BisectorPlane::hemisphere(1, 1)), "planes not pairwise disjoint", psrep::Error);
  // invariance under isometries applied to defining points
  for (int n = 0; n < 50; ++n) {
    auto g = random_isometry();
    H3Point x{0, 0, 1};
    auto m = Isometry::diagonal(std::exp(0.7));
    H3Point p0 = x, p1 = apply(m, x), p2 = apply(m, p1), p3 = apply(m, p2);
    auto P0 = perpendicular_bisector(p0, p1), P1 = perpendicular_bisector(p1, p2), P2 = perpendicular_bisector(p2, p3);
    auto G0 = perpendicular_bisector(apply(g, p0), apply(g, p1));
    auto G1 = perpendicular_bisector(apply(g, p1), apply(g, p2));
    auto G2 = perpendicular_bisector(apply(g, p2), apply(g, p3));
    CHECK(plane_separates(P0, P1, P2));
    CHECK(plane_separates(G0, G1, G2));
    CHECK(std::abs(plane_distance(G0, G1) - 1.4) < 1e-8);
    CHECK_FALSE(plane_separates(G1, G0, G2));
  }
}
