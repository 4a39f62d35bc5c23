#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "psrep/pscert.hpp"

using namespace psrep::pscert;
using psrep::charlab::Representation;
using psrep::hyp::cplx;
using psrep::hyp::Isometry;
using psrep::words::CayleyBall;
using psrep::words::Presentation;
using psrep::words::parse_word;

namespace {

const Presentation F1 = Presentation::free_group(1);
const Presentation F2 = Presentation::free_group(2);
const Presentation N3 = Presentation::nonorientable(3);

const CayleyBall& f1_ball() {
  static const CayleyBall ball(F1, 16, 16);
  return ball;
}

const CayleyBall& n3_ball() {
  static const auto pr = psrep::charlab::precise_anchor(N3);
  static const CayleyBall ball(N3, 16, 6, &pr);
  return ball;
}

const std::vector<psrep::primitives::PrimitiveClass>& n3_prims() {
  static const psrep::primitives::ReferenceStructure ref(psrep::charlab::fuchsian_anchor(N3), n3_ball(), 4);
  static const auto prims = psrep::primitives::enumerate_primitives(N3, ref, 6);
  return prims;
}

Representation single(const Isometry& g) { return Representation(F1, {g}); }

Isometry random_isometry(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    const cplx a{n(rng), n(rng)}, b{n(rng), n(rng)}, c{n(rng), n(rng)}, d{n(rng), n(rng)};
    if (std::abs(a * d - b * c) > 0.2) return Isometry::from_entries(a, b, c, d);
  }
}

// Conjugate of the loxodromic with complex length l + i theta.
Isometry loxodromic(double l, double theta, const Isometry& g) {
  return g * Isometry::diagonal(std::exp(cplx{l, theta} / 2.0)) * g.inverse();
}

std::optional<int> first_passing_stride(const OrbitMap& om, const psrep::words::GeodesicPath& path, double c) {
  for (int i = 1; i <= kMaxStride; ++i) {
    if (check_plane_criterion(om, path, {i, c, kDefaultWindow}).pass) return i;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("orbit points") {
  const OrbitMap id(single(Isometry{}));
  CHECK(psrep::hyp::h3_distance(id.point({}), {0, 0, 1}) == 0.0);
  const OrbitMap dil(single(Isometry::diagonal(std::sqrt(2.0))));
  const auto p = dil.point({1});
  CHECK(p.x == doctest::Approx(0.0));
  CHECK(p.t == doctest::Approx(2.0).epsilon(1e-14));

  const OrbitMap om(psrep::charlab::fuchsian_anchor(N3));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> letter(0, 5), len(0, 3);
  auto random_word = [&] {
    psrep::words::Word w;
    const int n = len(rng);
    while (static_cast<int>(w.size()) < n) {
      const int l = letter(rng) / 2 + 1, s = letter(rng) % 2 ? l : -l;
      if (w.empty() || w.back() != -s) w.push_back(s);
    }
    return w;
  };
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto g = random_word(), w = random_word();
    const auto lhs = om.point(psrep::words::multiply(g, w));
    const auto rhs = psrep::hyp::apply(om.representation().image(g), om.point(w));
    worst = std::max(worst, psrep::hyp::h3_distance(lhs, rhs));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("orbit map rejects large residuals") {
  auto gens = psrep::charlab::fuchsian_anchor(N3).generators();
  gens[0] = gens[0] * Isometry::from_entries(1.0, 1e-3, 0.0, 1.0);
  CHECK_THROWS_AS(OrbitMap(Representation(N3, gens)), psrep::Error);
  CHECK_NOTHROW(OrbitMap(Representation(N3, gens), {}, 1.0));
}

TEST_CASE("vertical geodesic orbit has gap equal to the step") {
  const OrbitMap om(single(Isometry::diagonal(std::exp(1.0))));
  const auto path = psrep::words::quasi_axis(f1_ball(), {1}, 3);
  const auto r = check_plane_criterion(om, path, {1, 1e-4, 3});
  CHECK(r.pass);
  CHECK(r.structural);
  CHECK(r.min_gap == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_FALSE(r.fail_index);
  const auto qg = brute_force_qg_check(om, psrep::words::quasi_axis(f1_ball(), {1}, 6), {1.0, 0.01}, 6);
  CHECK(qg.pass);
}

TEST_CASE("parabolic orbits fail both checks") {
  const OrbitMap om(single(Isometry::from_entries(1.0, 1.0, 0.0, 1.0)));
  for (int i = 1; i <= kMaxStride; ++i) {
    const auto r = check_plane_criterion(om, psrep::words::quasi_axis(f1_ball(), {1}, 3), {i, 1e-4, 3});
    CHECK_FALSE(r.pass);
    CHECK_FALSE(r.structural);
    CHECK(r.fail_index);
  }
  const auto path = psrep::words::quasi_axis(f1_ball(), {1}, 40);
  CHECK_FALSE(brute_force_qg_check(om, path, {1.0, 1.0}, 40).pass);
  CHECK_FALSE(brute_force_qg_check(om, path, {2.0, 1.0}, 40).pass);
  CHECK_THROWS_AS(brute_force_qg_check(om, path, {1.0, 1.0}, 81), psrep::Error);
}

TEST_CASE("plane criterion soundness on random loxodromic orbits") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ell(0.1, 3.0), tiny_ell(0.001, 3.0), angle(-M_PI, M_PI);
  const double c = kDefaultGap;
  const int span = 40;
  const auto long_path = psrep::words::quasi_axis(f1_ball(), {1}, span);
  int passed = 0, spec_failures = 0, uniform_failures = 0, progress_failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const double l = trial < 150 ? ell(rng) : tiny_ell(rng);
    const OrbitMap om(single(loxodromic(l, angle(rng), random_isometry(rng))));
    const auto i = first_passing_stride(om, long_path, c);
    if (!i) continue;
    ++passed;
    const double r_lip = lipschitz_constant(om);
    // progress along stride points
    for (int j = 1; j * *i <= span; ++j) {
      const double d = psrep::hyp::h3_distance(om.point({}), om.point(psrep::words::power({1}, j * *i)));
      if (d < (j - 1) * c) ++progress_failures;
    }
    if (trial < 150 && !brute_force_qg_check(om, long_path, derived_constants(*i, c, r_lip), span).pass) {
      ++spec_failures;
    }
    const QGConstants uniform{std::max(1.0, *i / c), 2 * c + (*i - 1) * r_lip};
    if (!brute_force_qg_check(om, long_path, uniform, span).pass) ++uniform_failures;
  }
  CHECK(passed >= 100);
  CHECK(progress_failures == 0);
  CHECK(spec_failures == 0);
  CHECK(uniform_failures == 0);
}

TEST_CASE("derived constants can fail for very short translation") {
  // basepoint on the axis, l = 0.005: the criterion passes with c = 1e-4
  const OrbitMap om(single(Isometry::diagonal(std::exp(0.0025))));
  const auto path = psrep::words::quasi_axis(f1_ball(), {1}, 40);
  REQUIRE(check_plane_criterion(om, path, {1, 1e-4, 3}).pass);
  CHECK_FALSE(brute_force_qg_check(om, path, derived_constants(1, 1e-4, lipschitz_constant(om)), 40).pass);
  CHECK(brute_force_qg_check(om, path, {1.0 / 1e-4, 2e-4}, 40).pass);
}

TEST_CASE("quasi-geodesic orbits pass the plane criterion") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ell(0.5, 4.0), angle(-M_PI, M_PI), shift(-0.3, 0.3);
  const auto path = psrep::words::quasi_axis(f1_ball(), {1}, 40);
  int qg = 0;
  for (int trial = 0; trial < 200; ++trial) {
    // near-axis basepoints so that (1, 0.01) is attainable
    const Isometry g = Isometry::from_entries(1.0, cplx{shift(rng), shift(rng)}, 0.0, 1.0) *
                       Isometry::diagonal(std::exp(cplx{shift(rng), angle(rng)}));
    const OrbitMap om(single(loxodromic(ell(rng), angle(rng), g)));
    if (!brute_force_qg_check(om, path, {1.0, 0.01}, 40).pass) continue;
    ++qg;
    CHECK(first_passing_stride(om, path, kDefaultGap));
  }
  CHECK(qg >= 50);
}

TEST_CASE("parabolic suspects") {
  const Representation rho(F2, {Isometry::from_entries(1.0, 1.0, 0.0, 1.0), Isometry::diagonal(2.0)});
  const OrbitMap om(rho);
  const std::vector<psrep::primitives::PrimitiveClass> prims{{{1}, 1, 0}, {{2}, 1, 0}};
  const auto s = detect_parabolic_primitives(om, prims);
  REQUIRE(s.size() == 1);
  CHECK(s[0].word == psrep::words::Word{1});
  CHECK(std::abs(s[0].trace_squared - 4.0) < 1e-12);
  CHECK_THROWS_AS(detect_parabolic_primitives(om, prims, 0.0), psrep::Error);

  static const CayleyBall ball(F2, 16, 6);
  const auto res = certify(om, ball, prims, {});
  CHECK(res.verdict == Verdict::Failed);
  REQUIRE(res.witness);
  CHECK(*res.witness == psrep::words::Word{1});
  const auto ratios = ratio_stats(om, ball, prims);
  CHECK(ratios.r_emp < 1e-12);
  CHECK(ratios.R_emp <= ratios.R_lip);
}

TEST_CASE("anchor certification at small length") {
  const OrbitMap om(psrep::charlab::fuchsian_anchor(N3));
  CHECK(detect_parabolic_primitives(om, n3_prims()).empty());
  const auto res = certify(om, n3_ball(), n3_prims(), {});
  CHECK(res.verdict == Verdict::Certified);
  CHECK(res.stride >= 1);
  CHECK(res.stride <= kMaxStride);
  CHECK(res.min_gap > kDefaultGap);
  CHECK(res.ratios.r_emp > 0);
  CHECK(res.ratios.R_emp <= res.ratios.R_lip);
  CHECK(res.qg.K >= 1.0);
  CHECK(res.classes.size() == n3_prims().size());
  CHECK_FALSE(res.witness);

  const auto vacuous = certify(om, n3_ball(), {}, {});
  CHECK(vacuous.verdict == Verdict::Certified);
  CHECK(std::isinf(vacuous.min_gap));
  CHECK(std::isnan(vacuous.ratios.R_emp));
}

TEST_CASE("fixed stride without auto-tune") {
  const OrbitMap om(psrep::charlab::fuchsian_anchor(N3));
  CertParams p;
  p.auto_tune = false;
  p.plane.stride = 1;
  const auto res = certify(om, n3_ball(), n3_prims(), p);
  CHECK(res.stride == 1);
  CHECK(res.verdict != Verdict::Certified);
  REQUIRE(res.witness);
  CHECK(res.witness_index);
}

TEST_CASE("certification is conjugation invariant") {
  const Representation rho = psrep::charlab::fuchsian_anchor(N3);
  const auto base = certify(OrbitMap(rho), n3_ball(), n3_prims(), {});
  std::mt19937_64 rng(5);
  for (int k = 0; k < 5; ++k) {
    const Isometry g = random_isometry(rng);
    const OrbitMap om(rho.conjugated(g), psrep::hyp::apply(g, H3Point{}));
    const auto res = certify(om, n3_ball(), n3_prims(), {});
    CHECK(res.verdict == base.verdict);
    CHECK(res.stride == base.stride);
    CHECK(std::abs(res.min_gap - base.min_gap) < 1e-8);
  }
}

TEST_CASE("basepoint robustness") {
  const OrbitMap om(psrep::charlab::fuchsian_anchor(N3));
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0), r(0.0, 0.1);
  CertParams half;
  half.plane.gap = kDefaultGap / 2;
  for (int k = 0; k < 5; ++k) {
    // move distance r along a random direction from (0,0,1)
    const double d = r(rng);
    const double dx = u(rng), dy = u(rng), dt = u(rng), n = std::sqrt(dx * dx + dy * dy + dt * dt);
    const Isometry step = Isometry::diagonal(std::exp(d * dt / n / 2)) *
                          Isometry::from_entries(1.0, cplx{std::sinh(d) * dx / n, std::sinh(d) * dy / n}, 0.0, 1.0);
    const H3Point x = psrep::hyp::apply(step, H3Point{});
    REQUIRE(psrep::hyp::h3_distance(x, H3Point{}) <= 0.1 + 1e-12);
    const auto res = certify(OrbitMap(om.representation(), x), n3_ball(), n3_prims(), half);
    CHECK(res.verdict == Verdict::Certified);
  }
}

TEST_CASE("word-set distortion") {
  using psrep::words::Automorphism;
  CHECK(wordset_distortion(Automorphism::identity(3), n3_ball()) == 1.0);
  CHECK(wordset_distortion(Automorphism::inner(3, parse_word(N3, "ab")), n3_ball()) == 1.0);
  Automorphism t;
  t.name = "twist_ab";
  t.images = {parse_word(N3, "aab"), parse_word(N3, "BAb"), parse_word(N3, "c")};
  t.inverse_images = {parse_word(N3, "aBA"), parse_word(N3, "abb"), parse_word(N3, "c")};
  double prev = 1.0;
  for (int n = 1; n <= 6; ++n) {
    const double d = wordset_distortion(t.power(n), n3_ball());
    CHECK(d > prev);
    prev = d;
  }
  CHECK_THROWS_AS(wordset_distortion(Automorphism::identity(2), n3_ball()), psrep::Error);
}
