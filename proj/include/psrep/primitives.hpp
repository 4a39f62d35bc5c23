#pragma once

// Primitive (simple closed curve) classes. Free rank 2 uses Christoffel words;
// surface groups use axis linking under a Fuchsian reference representation.

#include <array>
#include <cstddef>
#include <vector>

#include "psrep/hyp.hpp"
#include "psrep/representation.hpp"
#include "psrep/words.hpp"

namespace psrep::primitives {

using words::Word;

inline constexpr int kDefaultConjugatorDepth = 4;
inline constexpr std::size_t kDefaultCandidateCap = 1000000;

struct PrimitiveClass {
  Word word;               // canonical representative
  int orientation = 1;
  int verified_depth = 0;  // conjugator depth of the simplicity test, 0 when exact

  int length() const noexcept { return static_cast<int>(word.size()); }
};

enum class AxisRelation { Crossing, Disjoint, SameAxis };

const char* relation_name(AxisRelation r) noexcept;

// Geometric oracle for surface groups. Holds the images of every ball element
// of length <= depth, used as conjugators by is_simple.
class ReferenceStructure {
 public:
  // Requires residual < 1e-9 and loxodromic generator images.
  ReferenceStructure(charlab::Representation rep, const words::CayleyBall& ball, int depth,
                     double same_axis_tol = 1e-8);

  const charlab::Representation& representation() const noexcept { return rep_; }
  const words::CayleyBall& ball() const noexcept { return *ball_; }
  int depth() const noexcept { return depth_; }
  double same_axis_tol() const noexcept { return tol_; }

  // Ball elements of length <= d come first in shortlex order.
  const std::vector<Word>& conjugators() const noexcept { return conj_words_; }
  const std::vector<hyp::Isometry>& conjugator_images() const noexcept { return conj_images_; }
  std::size_t conjugator_count(int d) const;

 private:
  charlab::Representation rep_;
  const words::CayleyBall* ball_;
  int depth_;
  double tol_;
  std::vector<Word> conj_words_;
  std::vector<hyp::Isometry> conj_images_;
};

bool is_proper_power(const Word& w);

// Crossing iff the endpoint pairs are linked on a common circle. Throws Domain
// when the four endpoints are not concyclic.
AxisRelation line_relation(const hyp::GeodesicLine& l1, const hyp::GeodesicLine& l2, double tol = 1e-8);
// Throws Domain if either image is not hyperbolic or loxodromic.
AxisRelation axes_cross(const Word& g, const Word& h, const ReferenceStructure& ref);

// Shortlex minimum over rotations of the core of w and of its inverse, taken
// after ball canonicalization and repeated until stable.
Word canonical_class(const words::CayleyBall& ball, const Word& w);
// Same without relators: rotations of the cyclic core and its inverse.
Word canonical_class_free(const Word& w);

// Not a proper power and no conjugate p_i g p_j^-1 (p_i prefixes of the core,
// g of length <= depth) carries the axis across itself. depth < 0 uses ref.depth().
// Free rank 2 presentations are decided by the Christoffel test instead.
bool is_simple(const Word& w, const ReferenceStructure& ref, int depth = -1);

// Lower Christoffel word with p letters x and q letters y.
Word christoffel_word(int p, int q, words::Letter x, words::Letter y);
bool is_f2_primitive(const Word& w);
std::vector<PrimitiveClass> f2_primitives(int max_len);

// Primitive classes with canonical length <= max_len, shortlex ordered.
// Throws Budget "budget exceeded" past `cap` candidates.
std::vector<PrimitiveClass> enumerate_primitives(const words::Presentation& p, const ReferenceStructure& ref,
                                                 int max_len, int depth = -1,
                                                 std::size_t cap = kDefaultCandidateCap, int threads = 1);

}  // namespace psrep::primitives
