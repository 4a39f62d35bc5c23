#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "psrep/primitives.hpp"

using namespace psrep::primitives;
using psrep::words::CayleyBall;
using psrep::words::Presentation;
using psrep::words::parse_word;

namespace {

const Presentation F2 = Presentation::free_group(2);
const Presentation N3 = Presentation::nonorientable(3);

Word w(const Presentation& p, const char* s) { return parse_word(p, s); }

const CayleyBall& n3_ball() {
  static const auto pr = psrep::charlab::precise_anchor(N3);
  static const CayleyBall ball(N3, 16, 6, &pr);
  return ball;
}

const ReferenceStructure& n3_ref() {
  static const ReferenceStructure ref(psrep::charlab::fuchsian_anchor(N3), n3_ball(), 4);
  return ref;
}

const std::vector<PrimitiveClass>& n3_prims() {
  static const auto prims = enumerate_primitives(N3, n3_ref(), 6);
  return prims;
}

psrep::hyp::GeodesicLine line(double x, double y) {
  return {psrep::hyp::BoundaryPoint::finite(x), psrep::hyp::BoundaryPoint::finite(y)};
}

}  // namespace

TEST_CASE("proper powers") {
  CHECK(is_proper_power(w(F2, "abab")));
  CHECK_FALSE(is_proper_power(w(F2, "ab")));
  CHECK_FALSE(is_proper_power(w(F2, "ababa")));
  CHECK(is_proper_power(w(N3, "aa")));
  CHECK_FALSE(is_proper_power(w(N3, "a")));
}

TEST_CASE("axis linking") {
  using psrep::hyp::BoundaryPoint;
  CHECK(line_relation(line(-1, 1), {BoundaryPoint::finite(0), BoundaryPoint::infinity()}) == AxisRelation::Crossing);
  CHECK(line_relation(line(-2, -1), line(1, 2)) == AxisRelation::Disjoint);
  CHECK(line_relation(line(-2, 2), line(-1, 1)) == AxisRelation::Disjoint);
  CHECK(line_relation(line(1, 2), line(2, 1)) == AxisRelation::SameAxis);
  CHECK(line_relation(line(0, 1), line(1, 5)) == AxisRelation::Disjoint);
  CHECK_THROWS_AS(line_relation(line(-1, 1), {BoundaryPoint::finite({0, 1}), BoundaryPoint::finite({3, 2})}),
                  psrep::Error);
  CHECK(axes_cross(w(N3, "ab"), w(N3, "abab"), n3_ref()) == AxisRelation::SameAxis);
  CHECK(axes_cross(w(N3, "a"), w(N3, "a"), n3_ref()) == AxisRelation::SameAxis);
  CHECK_THROWS_AS(axes_cross(w(N3, "aabbcc"), w(N3, "a"), n3_ref()), psrep::Error);
}

TEST_CASE("Christoffel words") {
  CHECK(christoffel_word(1, 1, 1, 2) == w(F2, "ab"));
  CHECK(christoffel_word(2, 1, 1, 2) == w(F2, "aab"));
  CHECK(christoffel_word(3, 2, 1, 2) == w(F2, "aabab"));
  CHECK(is_f2_primitive(w(F2, "aBaaB")));
  CHECK(is_f2_primitive(w(F2, "BAA")));
  CHECK_FALSE(is_f2_primitive(w(F2, "abaB")));
  CHECK_FALSE(is_f2_primitive(w(F2, "aabb")));
  CHECK_FALSE(is_f2_primitive(w(F2, "aa")));
}

TEST_CASE("F2 primitives match the Whitehead brute force") {
  auto words_of = [](const std::vector<PrimitiveClass>& v) {
    std::vector<Word> out;
    for (auto& c : v) out.push_back(c.word);
    return out;
  };
  CHECK(words_of(f2_primitives(1)) == std::vector<Word>{w(F2, "a"), w(F2, "b")});
  CHECK(words_of(f2_primitives(2)) == std::vector<Word>{w(F2, "a"), w(F2, "b"), w(F2, "ab"), w(F2, "aB")});
  for (int n : {3, 6, 10}) {
    INFO("max_len " << n);
    CHECK(words_of(f2_primitives(n)) == oracle::whitehead_primitive_classes(n));
  }
}

TEST_CASE("free simplicity uses the Christoffel test") {
  static const CayleyBall ball(F2, 16, 4);
  const ReferenceStructure ref(psrep::charlab::fuchsian_anchor(F2), ball, 2);
  CHECK_FALSE(is_simple(w(F2, "abaB"), ref));
  CHECK(is_simple(w(F2, "abb"), ref));
  CHECK(enumerate_primitives(F2, ref, 5).size() == f2_primitives(5).size());
}

TEST_CASE("surface simplicity") {
  const auto& ref = n3_ref();
  for (const char* s : {"a", "b", "c", "ab", "ac", "bc"}) CHECK(is_simple(w(N3, s), ref));
  CHECK_FALSE(is_simple(w(N3, "aa"), ref));
  CHECK_FALSE(is_simple(w(N3, "aB"), ref));
  CHECK(canonical_class(n3_ball(), w(N3, "aabbc")) == w(N3, "c"));
  CHECK(canonical_class(n3_ball(), w(N3, "bA")) == canonical_class(n3_ball(), w(N3, "aB")));
}

TEST_CASE("N3 enumeration contains generators and pair products") {
  const auto& prims = n3_prims();
  auto contains = [&](const Word& x) {
    const Word c = canonical_class(n3_ball(), x);
    for (auto& p : prims) {
      if (p.word == c) return true;
    }
    return false;
  };
  for (int i = 1; i <= 3; ++i) {
    CHECK(contains({i}));
    for (int j = 1; j <= 3; ++j) {
      if (i != j) CHECK(contains({i, j}));
    }
  }
  for (auto& p : prims) {
    CHECK(p.word == canonical_class(n3_ball(), p.word));
    CHECK(p.orientation == psrep::words::orientation_class(N3, p.word));
    CHECK(p.verified_depth == 4);
    if (p.orientation == -1) CHECK(psrep::words::orientation_class(N3, psrep::words::power(p.word, 2)) == 1);
  }
}

TEST_CASE("simplicity is invariant under inversion and conjugation") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> len(1, 3), letter(0, 5);
  for (auto& p : n3_prims()) {
    CHECK(is_simple(psrep::words::inverse(p.word), n3_ref()));
    for (int k = 0; k < 10; ++k) {
      Word u;
      for (int n = len(rng); static_cast<int>(u.size()) < n;) {
        const int l = letter(rng) / 2 + 1;
        const int s = letter(rng) % 2 ? l : -l;
        if (u.empty() || u.back() != -s) u.push_back(s);
      }
      const Word conj = n3_ball().canonical(psrep::words::multiply(psrep::words::multiply(u, p.word),
                                                                   psrep::words::inverse(u)));
      CHECK(is_simple(conj, n3_ref()));
    }
  }
}

TEST_CASE("simplicity verdicts do not depend on depth at small length") {
  auto shallow = enumerate_primitives(N3, n3_ref(), 6, 0);
  REQUIRE(shallow.size() == n3_prims().size());
  for (std::size_t k = 0; k < shallow.size(); ++k) CHECK(shallow[k].word == n3_prims()[k].word);
}

TEST_CASE("twist images of simple curves stay simple") {
  psrep::words::Automorphism t;
  t.name = "twist_ab";
  t.images = {w(N3, "aab"), w(N3, "BAb"), w(N3, "c")};
  t.inverse_images = {w(N3, "aBA"), w(N3, "abb"), w(N3, "c")};
  psrep::words::validate_automorphism(n3_ball(), t);
  for (auto& p : n3_prims()) {
    if (p.length() > 4) continue;
    for (const auto& f : {t, t.inverse()}) {
      const Word img = psrep::words::apply_automorphism(f, p.word);
      CHECK(is_simple(img, n3_ref()));
    }
  }
}

TEST_CASE("enumeration budget") {
  CHECK_THROWS_AS(enumerate_primitives(N3, n3_ref(), 6, 4, 10), psrep::Error);
}
