#pragma once

// Words in finitely presented groups, Dehn-style rewriting, Cayley balls
// and explicit automorphisms.
//
// A letter is +(k+1) for generator k and -(k+1) for its inverse. Shortlex
// order compares length first, then letters with a < A < b < B < ...

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "psrep/hyp.hpp"

namespace psrep::words {

using Letter = int;
using Word = std::vector<Letter>;

enum class PresentationKind { Free, NonorientableSurface, OrientableSurface };

struct Presentation {
  PresentationKind kind = PresentationKind::Free;
  int genus = 0;                  // rank for Free
  std::vector<char> gen_names;    // single lowercase letters
  std::vector<Word> relators;
  std::vector<int> orientation;   // +1 / -1 per generator

  static Presentation free_group(int rank);
  static Presentation nonorientable(int genus);   // a1^2 ... ak^2, k >= 3
  static Presentation orientable(int genus);      // [a1,b1]...[ag,bg], g >= 2
  // "free2", "nonorientable3", "orientable2"
  static Presentation from_name(std::string_view name);

  int rank() const noexcept { return static_cast<int>(gen_names.size()); }
  std::string name() const;
};

inline int generator_of(Letter l) noexcept { return (l > 0 ? l : -l) - 1; }
inline int shortlex_key(Letter l) noexcept { return 2 * generator_of(l) + (l < 0 ? 1 : 0); }

Word free_reduce(const Word& w);
Word inverse(const Word& w);
// Freely reduced product.
Word multiply(const Word& u, const Word& v);
Word power(const Word& w, int n);
bool shortlex_less(const Word& u, const Word& v) noexcept;

struct CyclicReduction {
  Word core;
  Word conjugator;  // w = conjugator * core * conjugator^-1
};
CyclicReduction cyclic_reduce(const Word& w);
bool is_cyclically_reduced(const Word& w) noexcept;
// Rotation by k letters: w[k..] w[..k].
Word rotate(const Word& w, std::size_t k);

int orientation_class(const Presentation& p, const Word& w);

// Compact text: generator names, upper case for inverses, "1" for the empty word.
std::string to_string(const Presentation& p, const Word& w);
// Accepts compact or whitespace separated letters and x^-1 suffixes.
Word parse_word(const Presentation& p, std::string_view text);

// -- rewriting ----------------------------------------------------------------

// Reduces with the rules: free cancellation; a subword that is more than half
// of a cyclic permutation of a relator (or inverse) becomes the inverse of the
// complement; an exactly-half subword becomes the complementary half when that
// is shortlex smaller. Every step lowers shortlex order, so it terminates.
class Rewriter {
 public:
  Rewriter() = default;
  explicit Rewriter(const Presentation& p);

  Word normal_form(const Word& w) const;

 private:
  std::vector<Word> cyclic_relators_;  // all rotations of r and r^-1
  bool apply_once(Word& w) const;
};

// -- Cayley ball --------------------------------------------------------------

// Generator image in extended precision (a, b, c, d); the ball's fingerprint
// check needs more digits than the double-precision representation carries.
using PreciseMatrix = std::array<std::complex<long double>, 4>;

struct BallStats {
  std::size_t words = 0;        // freely reduced words enumerated
  std::size_t elements = 0;     // distinct group elements in the table
  double max_residual = 0.0;    // worst fingerprint deviation word vs canonical
  double min_separation = 0.0;  // smallest fingerprint distance between elements
  bool verified = false;        // fingerprint oracle was run
};

class CayleyBall {
 public:
  static constexpr int kRadiusCap = 16;

  // Materializes the elements up to `table_radius`: rewriting normal forms are
  // merged when the word problem says they are equal, candidates proposed by
  // matrix fingerprints under the reference representation (required once
  // there are relators). Disagreement throws "ball inconsistent".
  CayleyBall(const Presentation& p, int radius, int table_radius,
             const std::vector<PreciseMatrix>* reference = nullptr);

  const Presentation& presentation() const noexcept { return pres_; }
  int radius() const noexcept { return radius_; }
  int table_radius() const noexcept { return table_radius_; }
  const BallStats& stats() const noexcept { return stats_; }

  Word normal_form(const Word& w) const { return rewriter_.normal_form(w); }
  // Shortlex geodesic word inside the table. Beyond it, a representative that
  // is geodesic on every subword of length table_radius. Throws "outside ball"
  // past the radius.
  Word canonical(const Word& w) const;
  bool equal(const Word& u, const Word& v) const;
  // True iff w (length <= table_radius) is the shortlex geodesic of its element.
  bool is_canonical(const Word& w) const;
  bool is_identity(const Word& w) const { return normal_form(w).empty(); }
  int geodesic_length(const Word& w) const { return static_cast<int>(canonical(w).size()); }

  std::size_t table_size() const noexcept { return stats_.elements; }
  // Number of table elements at each geodesic length 0..table_radius.
  std::vector<std::size_t> sphere_sizes() const;
  // Canonical words of the table elements of length <= max_length, in shortlex order.
  std::vector<Word> elements(int max_length) const;

 private:
  Presentation pres_;
  Rewriter rewriter_;
  int radius_ = 0;
  int table_radius_ = 0;
  std::unordered_map<std::string, Word> table_;  // rewriting normal form -> shortlex geodesic
  BallStats stats_;
};

std::string word_key(const Word& w);

// Surrogate translation length: minimum geodesic length over rotations of the
// cyclic core, iterated until the core stops shrinking.
int cayley_translation_length(const CayleyBall& ball, const Word& w);

// Periodic path along the powers of a cyclically reduced period word.
struct GeodesicPath {
  Word period;      // geodesic representative of the chosen rotation
  Word conjugator;  // w = conjugator * period * conjugator^-1 in G
  int windows = 0;  // periods materialized on each side of the identity

  int period_length() const noexcept { return static_cast<int>(period.size()); }
  int first_index() const noexcept { return -windows * period_length(); }
  int last_index() const noexcept { return windows * period_length(); }
  // Word of vertex s: period^q * prefix_r with s = q L + r, 0 <= r < L.
  Word vertex(int s) const;
};

GeodesicPath quasi_axis(const CayleyBall& ball, const Word& w, int windows);

// -- automorphisms ------------------------------------------------------------

struct Automorphism {
  std::string name;
  std::vector<Word> images;          // f(x_k)
  std::vector<Word> inverse_images;  // f^-1(x_k)

  static Automorphism identity(int rank);
  // x -> u x u^-1
  static Automorphism inner(int rank, const Word& u);

  int rank() const noexcept { return static_cast<int>(images.size()); }
  Automorphism inverse() const;
  Automorphism power(int n) const;
};

Word apply_automorphism(const Automorphism& f, const Word& w);
// f o g
Automorphism compose(const Automorphism& f, const Automorphism& g);

// Throws Inconsistent unless f o f^-1 and f^-1 o f fix every generator and f
// kills every relator, both decided in the ball.
void validate_automorphism(const CayleyBall& ball, const Automorphism& f);

}  // namespace psrep::words
