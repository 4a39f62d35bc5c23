#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "psrep/representation.hpp"
#include "psrep/words.hpp"

using namespace psrep::words;
using psrep::charlab::fuchsian_anchor;

namespace {

const Presentation F2 = Presentation::free_group(2);
const Presentation N3 = Presentation::nonorientable(3);

Word w(const Presentation& p, const char* s) { return parse_word(p, s); }

const CayleyBall& n3_ball() {
  static const auto rho = psrep::charlab::precise_anchor(N3);
  static const CayleyBall ball(N3, 16, 6, &rho);
  return ball;
}

Word random_word(std::mt19937_64& rng, int rank, int len) {
  Word out;
  std::uniform_int_distribution<int> g(1, rank), s(0, 1);
  while (static_cast<int>(out.size()) < len) {
    int l = g(rng) * (s(rng) ? 1 : -1);
    if (!out.empty() && out.back() == -l) continue;
    out.push_back(l);
  }
  return out;
}

}  // namespace

TEST_CASE("free and cyclic reduction") {
  CHECK(free_reduce(w(F2, "aAb")) == w(F2, "b"));
  CHECK(free_reduce(Word{}).empty());
  CHECK(free_reduce(Word{1, 2, -2, 1}) == Word{1, 1});
  auto cr = cyclic_reduce(w(F2, "abA"));
  CHECK(cr.core == w(F2, "b"));
  CHECK(cr.conjugator == w(F2, "a"));
  cr = cyclic_reduce(w(F2, "ab"));
  CHECK(cr.core == w(F2, "ab"));
  CHECK(cr.conjugator.empty());
  cr = cyclic_reduce(w(N3, "abcBA"));
  CHECK(cr.core == w(N3, "c"));
  CHECK(cr.conjugator == w(N3, "ab"));
}

TEST_CASE("word text round trip") {
  CHECK(to_string(N3, w(N3, "a b^-1 c")) == "aBc");
  CHECK(to_string(N3, {}) == "1");
  CHECK(w(N3, "1").empty());
  CHECK_THROWS_AS(w(N3, "ad"), psrep::Error);
}

TEST_CASE("orientation class") {
  CHECK(orientation_class(N3, w(N3, "a")) == -1);
  CHECK(orientation_class(N3, w(N3, "ab")) == 1);
  CHECK(orientation_class(N3, N3.relators[0]) == 1);
  std::mt19937_64 rng(7);
  for (int k = 0; k < 100; ++k) {
    Word x = random_word(rng, 3, 5), y = random_word(rng, 3, 4);
    CHECK(orientation_class(N3, multiply(x, y)) == orientation_class(N3, x) * orientation_class(N3, y));
  }
}

TEST_CASE("free group ball counts") {
  CayleyBall ball(F2, 8, 8);
  auto sizes = ball.sphere_sizes();
  std::size_t expect = 1;
  CHECK(sizes[0] == 1);
  for (int k = 1; k <= 8; ++k) {
    std::size_t sk = 4;
    for (int j = 1; j < k; ++j) sk *= 3;
    CHECK(sizes[k] == sk);
    expect += sk;
  }
  CHECK(ball.table_size() == expect);
  CayleyBall b2(F2, 2, 2);
  CHECK(b2.table_size() == 17u);
  CHECK(ball.geodesic_length(w(F2, "aba")) == 3);
  CHECK(cayley_translation_length(ball, w(F2, "ab")) == 2);
  CHECK(cayley_translation_length(ball, w(F2, "abA")) == 1);
}

TEST_CASE("free group identities") {
  CayleyBall ball(F2, 16, 6);
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    Word x = free_reduce(random_word(rng, 2, 1 + k % 12));
    CHECK(ball.geodesic_length(x) == static_cast<int>(x.size()));
    CHECK(cayley_translation_length(ball, x) == static_cast<int>(cyclic_reduce(x).core.size()));
  }
}

TEST_CASE("radius cap and outside ball") {
  CHECK_THROWS_WITH_AS(CayleyBall(F2, 17, 4), "radius cap exceeded", psrep::Error);
  CayleyBall ball(F2, 4, 2);
  CHECK_THROWS_WITH_AS(ball.geodesic_length(w(F2, "ababa")), "outside ball", psrep::Error);
}

TEST_CASE("nonorientable genus 3 rewriting") {
  const auto& ball = n3_ball();
  CHECK(ball.stats().verified);
  CHECK(ball.is_identity(w(N3, "aabbcc")));
  CHECK(ball.geodesic_length(w(N3, "aabbc")) == 1);
  CHECK(ball.equal(w(N3, "aabbc"), w(N3, "C")));
  CHECK(cayley_translation_length(ball, w(N3, "aabbc")) == 1);
  CHECK(cayley_translation_length(ball, w(N3, "abA")) == 1);
  CHECK(ball.geodesic_length({}) == 0);
  for (int g = 1; g <= 3; ++g) CHECK(ball.geodesic_length({g}) == 1);
}

TEST_CASE("rewriting steps preserve the reference image") {
  auto rho = fuchsian_anchor(N3);
  Rewriter rw(N3);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 300; ++k) {
    Word x = random_word(rng, 3, 4 + k % 12);
    CHECK(rho.image(x).distance(rho.image(rw.normal_form(x))) < 1e-8 * std::max(1.0, rho.image(x).max_abs_entry()));
  }
}

TEST_CASE("translation length is a conjugacy invariant") {
  const auto& ball = n3_ball();
  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    Word x = random_word(rng, 3, 2 + k % 4);
    Word u = random_word(rng, 3, 1 + k % 5);
    Word y = multiply(multiply(u, x), inverse(u));
    CHECK(cayley_translation_length(ball, x) == cayley_translation_length(ball, y));
  }
}

TEST_CASE("quasi axes") {
  CayleyBall ball(F2, 16, 6);
  auto path = quasi_axis(ball, w(F2, "a"), 2);
  CHECK(path.first_index() == -2);
  CHECK(path.vertex(-2) == w(F2, "AA"));
  CHECK(path.vertex(-1) == w(F2, "A"));
  CHECK(path.vertex(0).empty());
  CHECK(path.vertex(2) == w(F2, "aa"));
  path = quasi_axis(ball, w(F2, "baB"), 1);
  CHECK(path.period == w(F2, "a"));
  CHECK(path.conjugator == w(F2, "b"));
  CHECK_THROWS_WITH_AS(quasi_axis(ball, w(F2, "abBA"), 1), "identity has no axis", psrep::Error);
  auto p3 = quasi_axis(n3_ball(), w(N3, "ab"), 2);
  CHECK(p3.period_length() == 2);
  CHECK(p3.vertex(1) == w(N3, "a"));
  CHECK(p3.vertex(3) == w(N3, "aba"));
  CHECK(p3.vertex(4) == w(N3, "abab"));
  // w = conjugator * period * conjugator^-1
  for (const char* s : {"abcBA", "aabbc", "cabC", "bcaBCA"}) {
    auto q = quasi_axis(n3_ball(), w(N3, s), 1);
    CHECK(n3_ball().equal(multiply(multiply(q.conjugator, q.period), inverse(q.conjugator)), w(N3, s)));
  }
}

TEST_CASE("automorphisms") {
  Automorphism f;
  f.name = "f";
  f.images = {w(F2, "ab"), w(F2, "b")};
  f.inverse_images = {w(F2, "aB"), w(F2, "b")};
  CHECK(apply_automorphism(f, w(F2, "a")) == w(F2, "ab"));
  CHECK(apply_automorphism(f, w(F2, "aB")) == w(F2, "a"));
  CayleyBall ball(F2, 16, 6);
  validate_automorphism(ball, f);
  std::mt19937_64 rng(9);
  Automorphism g;
  g.name = "g";
  g.images = {w(F2, "a"), w(F2, "ba")};
  g.inverse_images = {w(F2, "a"), w(F2, "bA")};
  validate_automorphism(ball, g);
  auto fg = compose(f, g);
  validate_automorphism(ball, fg);
  for (int k = 0; k < 100; ++k) {
    Word x = random_word(rng, 2, 1 + k % 6);
    CHECK(apply_automorphism(fg, x) == apply_automorphism(f, apply_automorphism(g, x)));
    CHECK(apply_automorphism(compose(f, f.inverse()), x) == x);
  }
  Automorphism bad = f;
  bad.inverse_images = {w(F2, "ab"), w(F2, "b")};
  CHECK_THROWS_AS(validate_automorphism(ball, bad), psrep::Error);

  // twist along ab on N3
  Automorphism t;
  t.name = "t";
  t.images = {w(N3, "aab"), w(N3, "BAb"), w(N3, "c")};
  t.inverse_images = {w(N3, "aBA"), w(N3, "abb"), w(N3, "c")};
  validate_automorphism(n3_ball(), t);
  CHECK(apply_automorphism(t, w(N3, "ab")) == w(N3, "ab"));
  Automorphism broken = t;
  broken.images[2] = w(N3, "C");
  broken.inverse_images[2] = w(N3, "C");
  CHECK_THROWS_AS(validate_automorphism(n3_ball(), broken), psrep::Error);
  auto inner = Automorphism::inner(3, w(N3, "ab"));
  validate_automorphism(n3_ball(), inner);
}
