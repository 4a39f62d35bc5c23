#include "psrep/primitives.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "psrep/parallel.hpp"

namespace psrep::primitives {

using hyp::cplx;
using hyp::Isometry;
using words::Letter;

namespace {

// Boundary points in homogeneous coordinates (z : 1), oo = (1 : 0).
using Hom = std::array<cplx, 2>;

Hom unit(const Hom& h) {
  const double n = std::sqrt(std::norm(h[0]) + std::norm(h[1]));
  return {h[0] / n, h[1] / n};
}

Hom hom(const hyp::BoundaryPoint& p) { return p.at_infinity ? Hom{cplx{1.0}, cplx{}} : unit({p.z, cplx{1.0}}); }

Hom act(const Isometry& m, const Hom& h) { return unit({m.a() * h[0] + m.b() * h[1], m.c() * h[0] + m.d() * h[1]}); }

cplx wedge(const Hom& p, const Hom& q) { return p[0] * q[1] - p[1] * q[0]; }

struct Line {
  Hom from, to;
};

AxisRelation relation(const Line& x, const Line& y, double tol) {
  const cplx w11 = wedge(x.from, y.from), w22 = wedge(x.to, y.to);
  const cplx w12 = wedge(x.from, y.to), w21 = wedge(x.to, y.from);
  const double d11 = std::abs(w11), d22 = std::abs(w22), d12 = std::abs(w12), d21 = std::abs(w21);
  if ((d11 < tol && d22 < tol) || (d12 < tol && d21 < tol)) return AxisRelation::SameAxis;
  if (std::min({d11, d22, d12, d21}) < tol) return AxisRelation::Disjoint;
  // Cross ratio; real on a common circle, negative iff the pairs interleave.
  const cplx cr = (w11 * w22) / (w12 * w21);
  if (std::abs(cr.imag()) > 1e-6 * (1.0 + std::abs(cr))) throw Error(ErrorCode::Domain, "axes not concyclic");
  return cr.real() < 0 ? AxisRelation::Crossing : AxisRelation::Disjoint;
}

Line axis_line(const Isometry& m) {
  const hyp::IsometryClass cls = hyp::classify(m);
  if (cls.tag != hyp::IsometryTag::Hyperbolic && cls.tag != hyp::IsometryTag::Loxodromic) {
    throw Error(ErrorCode::Domain, std::string("reference image is ") + hyp::tag_name(cls.tag) + ", no axis");
  }
  const hyp::GeodesicLine g = hyp::axis(m);
  return {hom(g.repelling), hom(g.attracting)};
}

// w is no larger than any rotation of itself or of its inverse.
bool rotation_minimal(const Word& w) {
  const Word wi = words::inverse(w);
  const std::size_t n = w.size();
  for (const Word* s : {&w, &wi}) {
    for (std::size_t k = (s == &w ? 1 : 0); k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        const int a = words::shortlex_key((*s)[(k + j) % n]), b = words::shortlex_key(w[j]);
        if (a != b) {
          if (a < b) return false;
          break;
        }
      }
    }
  }
  return true;
}

}  // namespace

const char* relation_name(AxisRelation r) noexcept {
  switch (r) {
    case AxisRelation::Crossing: return "crossing";
    case AxisRelation::Disjoint: return "disjoint";
    case AxisRelation::SameAxis: return "same-axis";
  }
  return "?";
}

ReferenceStructure::ReferenceStructure(charlab::Representation rep, const words::CayleyBall& ball, int depth,
                                       double same_axis_tol)
    : rep_(std::move(rep)), ball_(&ball), depth_(depth), tol_(same_axis_tol) {
  if (depth < 0) throw Error(ErrorCode::InvalidArgument, "negative conjugator depth");
  if (rep_.presentation().name() != ball.presentation().name()) {
    throw Error(ErrorCode::InvalidArgument, "reference and ball presentations differ");
  }
  if (rep_.residual() >= 1e-9) throw Error(ErrorCode::Domain, "reference residual too large");
  for (const Isometry& g : rep_.generators()) {
    const hyp::IsometryTag t = hyp::classify(g).tag;
    if (t != hyp::IsometryTag::Hyperbolic && t != hyp::IsometryTag::Loxodromic) {
      throw Error(ErrorCode::Domain, "reference generator not loxodromic");
    }
  }
  conj_words_ = ball.elements(depth);
  conj_images_.reserve(conj_words_.size());
  for (const Word& u : conj_words_) conj_images_.push_back(rep_.image(u));
}

std::size_t ReferenceStructure::conjugator_count(int d) const {
  if (d > depth_) throw Error(ErrorCode::InvalidArgument, "conjugator depth exceeds the reference depth");
  auto it = std::find_if(conj_words_.begin(), conj_words_.end(),
                         [&](const Word& u) { return static_cast<int>(u.size()) > d; });
  return static_cast<std::size_t>(it - conj_words_.begin());
}

bool is_proper_power(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t k = d; k < n && periodic; ++k) periodic = w[k] == w[k - d];
    if (periodic) return true;
  }
  return false;
}

AxisRelation line_relation(const hyp::GeodesicLine& l1, const hyp::GeodesicLine& l2, double tol) {
  return relation({hom(l1.repelling), hom(l1.attracting)}, {hom(l2.repelling), hom(l2.attracting)}, tol);
}

AxisRelation axes_cross(const Word& g, const Word& h, const ReferenceStructure& ref) {
  const auto& rho = ref.representation();
  return relation(axis_line(rho.image(g)), axis_line(rho.image(h)), ref.same_axis_tol());
}

Word canonical_class_free(const Word& w) {
  const Word core = words::cyclic_reduce(w).core;
  Word best = core;
  for (const Word& s : {core, words::inverse(core)}) {
    for (std::size_t k = 0; k < s.size(); ++k) {
      Word r = words::rotate(s, k);
      if (words::shortlex_less(r, best)) best = std::move(r);
    }
  }
  return best;
}

Word canonical_class(const words::CayleyBall& ball, const Word& w) {
  Word c = words::cyclic_reduce(ball.canonical(w)).core;
  for (;;) {
    Word best = c;
    for (const Word& s : {c, words::inverse(c)}) {
      for (std::size_t k = 0; k < s.size(); ++k) {
        Word r = words::cyclic_reduce(ball.canonical(words::rotate(s, k))).core;
        if (words::shortlex_less(r, best)) best = std::move(r);
      }
    }
    if (best == c) return c;
    c = std::move(best);
  }
}

Word christoffel_word(int p, int q, Letter x, Letter y) {
  if (p < 0 || q < 0 || p + q == 0) throw Error(ErrorCode::InvalidArgument, "bad Christoffel slope");
  const int n = p + q;
  Word w;
  for (int k = 1; k <= n; ++k) w.push_back((k * q) / n != ((k - 1) * q) / n ? y : x);
  return w;
}

bool is_f2_primitive(const Word& w) {
  Word core = words::cyclic_reduce(w).core;
  if (core.size() == 1) return true;
  int sa = 0, sb = 0, p = 0, q = 0;
  for (Letter l : core) {
    const int g = words::generator_of(l), s = l > 0 ? 1 : -1;
    if (g > 1) throw Error(ErrorCode::InvalidArgument, "letter outside free group of rank 2");
    int& sign = g == 0 ? sa : sb;
    if (sign != 0 && sign != s) return false;
    sign = s;
    ++(g == 0 ? p : q);
  }
  if (p == 0 || q == 0 || std::gcd(p, q) != 1) return false;
  if (sa < 0) {
    core = words::inverse(core);
    sb = -sb;
  }
  return canonical_class_free(core) == canonical_class_free(christoffel_word(p, q, 1, 2 * sb));
}

std::vector<PrimitiveClass> f2_primitives(int max_len) {
  std::vector<Word> found;
  if (max_len >= 1) found = {{1}, {2}};
  for (int n = 2; n <= max_len; ++n) {
    for (int p = 1; p < n; ++p) {
      if (std::gcd(p, n - p) != 1) continue;
      found.push_back(canonical_class_free(christoffel_word(p, n - p, 1, 2)));
      found.push_back(canonical_class_free(christoffel_word(p, n - p, 1, -2)));
    }
  }
  std::sort(found.begin(), found.end(), words::shortlex_less);
  found.erase(std::unique(found.begin(), found.end()), found.end());
  std::vector<PrimitiveClass> out;
  for (Word& w : found) out.push_back({std::move(w), 1, 0});
  return out;
}

bool is_simple(const Word& w, const ReferenceStructure& ref, int depth) {
  if (depth < 0) depth = ref.depth();
  const words::Presentation& pres = ref.ball().presentation();
  const Word core = words::cyclic_reduce(w).core;
  if (core.empty()) throw Error(ErrorCode::Domain, "identity has no axis");
  if (pres.kind == words::PresentationKind::Free) {
    if (pres.rank() != 2) throw Error(ErrorCode::InvalidArgument, "free simplicity test is rank 2 only");
    return is_f2_primitive(core);
  }
  if (is_proper_power(core)) return false;
  const auto& rho = ref.representation();
  const Line ax = axis_line(rho.image(core));
  const std::size_t n = core.size();
  // Axis of the rotation p_i^-1 w p_i is rho(p_i)^-1 Ax(w).
  std::vector<Line> rot(n);
  Isometry prefix;
  for (std::size_t i = 0; i < n; ++i) {
    const Isometry back = prefix.inverse();
    rot[i] = {act(back, ax.from), act(back, ax.to)};
    prefix = prefix * rho.image({core[i]});
  }
  const std::size_t count = ref.conjugator_count(depth);
  const double tol = ref.same_axis_tol();
  for (std::size_t g = 0; g < count; ++g) {
    const Isometry& m = ref.conjugator_images()[g];
    for (std::size_t j = 0; j < n; ++j) {
      const Line moved{act(m, rot[j].from), act(m, rot[j].to)};
      for (std::size_t i = 0; i < n; ++i) {
        if (g == 0 && i == j) continue;
        if (relation(rot[i], moved, tol) == AxisRelation::Crossing) return false;
      }
    }
  }
  return true;
}

std::vector<PrimitiveClass> enumerate_primitives(const words::Presentation& p, const ReferenceStructure& ref,
                                                 int max_len, int depth, std::size_t cap, int threads) {
  if (p.kind == words::PresentationKind::Free) {
    if (p.rank() != 2) throw Error(ErrorCode::InvalidArgument, "free primitive enumeration is rank 2 only");
    return f2_primitives(max_len);
  }
  if (depth < 0) depth = ref.depth();
  const words::CayleyBall& ball = ref.ball();
  if (ball.presentation().name() != p.name()) throw Error(ErrorCode::InvalidArgument, "presentation mismatch");
  if (max_len > ball.radius()) throw Error(ErrorCode::Domain, "outside ball");
  const int tr = ball.table_radius();
  const int keys = 2 * p.rank();

  // Candidates: words whose every subword of length <= table radius is a
  // shortlex geodesic, whose first letter is the smallest letter of the cyclic
  // word and its inverse, and which are minimal among their rotations.
  std::vector<Word> candidates;
  Word word;
  auto suffix_ok = [&] {
    const std::size_t k = std::min<std::size_t>(word.size(), static_cast<std::size_t>(tr));
    return ball.is_canonical(Word(word.end() - static_cast<std::ptrdiff_t>(k), word.end()));
  };
  auto wrap_ok = [&] {
    const std::size_t n = word.size();
    for (std::size_t len = 2; len <= std::min<std::size_t>(n, static_cast<std::size_t>(tr)); ++len) {
      for (std::size_t start = n - len + 1; start < n; ++start) {
        Word s;
        for (std::size_t k = 0; k < len; ++k) s.push_back(word[(start + k) % n]);
        if (ball.geodesic_length(s) != static_cast<int>(len)) return false;
      }
    }
    return true;
  };
  auto dfs = [&](auto&& self) -> void {
    const std::size_t n = word.size();
    if (n >= 1 && (n == 1 || word.back() != -word.front()) && rotation_minimal(word) && wrap_ok()) {
      if (candidates.size() >= cap) throw Error(ErrorCode::Budget, "budget exceeded");
      candidates.push_back(word);
    }
    if (static_cast<int>(n) == max_len) return;
    for (int key = 0; key < keys; ++key) {
      const Letter l = key % 2 == 0 ? key / 2 + 1 : -(key / 2 + 1);
      if (n > 0) {
        if (l == -word.back()) continue;
        const int first = words::shortlex_key(word.front());
        if (key < first || words::shortlex_key(-l) < first) continue;
      }
      word.push_back(l);
      if (suffix_ok()) self(self);
      word.pop_back();
    }
  };
  dfs(dfs);

  std::vector<char> keep(candidates.size(), 0);
  parallel_for(candidates.size(), threads, [&](std::size_t k) {
    const Word& c = candidates[k];
    keep[k] = is_simple(c, ref, depth) && canonical_class(ball, c) == c ? 1 : 0;
  });
  std::vector<PrimitiveClass> out;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (keep[k]) out.push_back({candidates[k], words::orientation_class(p, candidates[k]), depth});
  }
  std::sort(out.begin(), out.end(),
            [](const PrimitiveClass& x, const PrimitiveClass& y) { return words::shortlex_less(x.word, y.word); });
  return out;
}

}  // namespace psrep::primitives
