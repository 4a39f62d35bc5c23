#include <algorithm>
#include <array>
#include <climits>
#include <cstdint>
#include <cmath>
#include <numeric>

#include "psrep/words.hpp"

namespace psrep::words {

namespace {

using Real = long double;
using Cx = std::complex<Real>;
using Fingerprint = std::array<Real, 18>;

PreciseMatrix mul(const PreciseMatrix& l, const PreciseMatrix& r) {
  return {l[0] * r[0] + l[1] * r[2], l[0] * r[1] + l[1] * r[3], l[2] * r[0] + l[3] * r[2], l[2] * r[1] + l[3] * r[3]};
}

PreciseMatrix inv(const PreciseMatrix& m) { return {m[3], -m[1], -m[2], m[0]}; }

// Symmetric square of M / |M|_F. Injective on PSL(2,C) and blind to the sign.
Fingerprint fingerprint(const PreciseMatrix& m) {
  const Cx a = m[0], b = m[1], c = m[2], d = m[3];
  const Real n2 = std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
  const std::array<Cx, 9> e{a * a, a * b, b * b, a * c, a * d + b * c, b * d, c * c, c * d, d * d};
  Fingerprint f{};
  for (std::size_t k = 0; k < e.size(); ++k) {
    f[2 * k] = e[k].real() / n2;
    f[2 * k + 1] = e[k].imag() / n2;
  }
  return f;
}

Real fp_distance(const Fingerprint& x, const Fingerprint& y) {
  Real d = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) d = std::max(d, std::abs(x[k] - y[k]));
  return d;
}

struct Node {
  Word nf;
  Fingerprint fp{};
};

struct Builder {
  const Presentation& pres;
  const Rewriter& rw;
  const std::vector<PreciseMatrix>* ref;
  int table_radius;
  Real max_residual = 0.0;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<Node> nodes;
  BallStats stats;
  Word word;

  void visit(const PreciseMatrix& m) {
    ++stats.words;
    Word nf = rw.normal_form(word);
    auto [it, fresh] = index.try_emplace(word_key(nf), nodes.size());
    if (fresh) {
      nodes.push_back({std::move(nf), ref ? fingerprint(m) : Fingerprint{}});
    } else if (ref) {
      max_residual = std::max(max_residual, fp_distance(fingerprint(m), nodes[it->second].fp));
    }
    if (static_cast<int>(word.size()) == table_radius) return;
    for (int g = 0; g < pres.rank(); ++g) {
      for (Letter l : {g + 1, -(g + 1)}) {
        if (!word.empty() && word.back() == -l) continue;
        word.push_back(l);
        if (ref) {
          visit(mul(m, l > 0 ? (*ref)[g] : inv((*ref)[g])));
        } else {
          visit(m);
        }
        word.pop_back();
      }
    }
  }
};

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

std::string word_key(const Word& w) {
  std::string s(w.size(), '\0');
  for (std::size_t k = 0; k < w.size(); ++k) s[k] = static_cast<char>(w[k]);
  return s;
}

CayleyBall::CayleyBall(const Presentation& p, int radius, int table_radius,
                       const std::vector<PreciseMatrix>* reference)
    : pres_(p), rewriter_(p), radius_(radius), table_radius_(std::min(table_radius, radius)) {
  if (radius < 0 || table_radius < 0) throw Error(ErrorCode::InvalidArgument, "negative ball radius");
  if (radius > kRadiusCap) throw Error(ErrorCode::InvalidArgument, "radius cap exceeded");
  if (reference && static_cast<int>(reference->size()) != p.rank()) {
    throw Error(ErrorCode::InvalidArgument, "reference representation has the wrong rank");
  }
  if (!reference && !p.relators.empty()) {
    throw Error(ErrorCode::InvalidArgument, "a reference representation is required for " + p.name());
  }
  Builder b{pres_, rewriter_, reference, table_radius_, 0.0L, {}, {}, {}, {}};
  b.visit(PreciseMatrix{1.0L, 0.0L, 0.0L, 1.0L});
  stats_ = b.stats;
  stats_.max_residual = static_cast<double>(b.max_residual);
  std::vector<Node>& nodes = b.nodes;
  std::vector<std::size_t> parent(nodes.size());
  std::iota(parent.begin(), parent.end(), 0);

  if (reference) {
    // Rewriting normal forms are not unique in G. Fingerprints propose equal
    // pairs, the word problem confirms them, and the two must agree: distinct
    // elements closer than 1e3 times the worst float deviation abort the build.
    Fingerprint dir{};
    Real weight = 0.0;
    for (std::size_t k = 0; k < dir.size(); ++k) {
      dir[k] = std::sin(1.0 + 2.3 * static_cast<double>(k));
      weight += std::abs(dir[k]);
    }
    std::vector<Real> proj(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      proj[i] = std::inner_product(dir.begin(), dir.end(), nodes[i].fp.begin(), 0.0);
    }
    std::vector<std::size_t> order(nodes.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return proj[x] < proj[y]; });
    const Real threshold = 1e3L * b.max_residual;
    const Real candidate = std::max(threshold, 1e-12L);
    Real min_sep = 1.0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const Node& u = nodes[order[i]];
      for (std::size_t j = i + 1; j < order.size() && proj[order[j]] - proj[order[i]] <= candidate * weight; ++j) {
        const Node& v = nodes[order[j]];
        const Real d = fp_distance(u.fp, v.fp);
        if (d > candidate) continue;
        const bool same = rewriter_.normal_form(multiply(u.nf, inverse(v.nf))).empty();
        if (same) {
          if (d > threshold) throw Error(ErrorCode::Inconsistent, "ball inconsistent");
          parent[find_root(parent, order[i])] = find_root(parent, order[j]);
        } else {
          if (d <= threshold) throw Error(ErrorCode::Inconsistent, "ball inconsistent");
          min_sep = std::min(min_sep, d);
        }
      }
    }
    stats_.min_separation = static_cast<double>(min_sep);
    stats_.verified = true;
  }

  std::vector<std::size_t> best(nodes.size(), SIZE_MAX);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::size_t r = find_root(parent, i);
    if (best[r] == SIZE_MAX || shortlex_less(nodes[i].nf, nodes[best[r]].nf)) best[r] = i;
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (find_root(parent, i) == i) ++stats_.elements;
  }
  table_.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    table_.emplace(word_key(nodes[i].nf), nodes[best[find_root(parent, i)]].nf);
  }
}

Word CayleyBall::canonical(const Word& w) const {
  Word x = normal_form(w);
  if (static_cast<int>(x.size()) <= table_radius_) return table_.at(word_key(x));
  // Beyond the table: replace subwords by their table geodesics until the
  // word is locally geodesic at scale table_radius.
  for (bool changed = true; changed;) {
    changed = false;
    for (int k = std::min<int>(table_radius_, static_cast<int>(x.size())); k >= 2 && !changed; --k) {
      for (std::size_t i = 0; i + k <= x.size(); ++i) {
        const Word s(x.begin() + i, x.begin() + i + k);
        auto it = table_.find(word_key(s));
        const Word c = it != table_.end() ? it->second : table_.at(word_key(normal_form(s)));
        if (shortlex_less(c, s)) {
          Word y(x.begin(), x.begin() + i);
          y.insert(y.end(), c.begin(), c.end());
          y.insert(y.end(), x.begin() + i + k, x.end());
          x = normal_form(y);
          changed = true;
          break;
        }
      }
    }
  }
  if (static_cast<int>(x.size()) <= table_radius_) return table_.at(word_key(x));
  if (static_cast<int>(x.size()) > radius_) throw Error(ErrorCode::Domain, "outside ball");
  return x;
}

bool CayleyBall::is_canonical(const Word& w) const {
  if (static_cast<int>(w.size()) > table_radius_) throw Error(ErrorCode::Domain, "outside ball");
  const std::string key = word_key(w);
  auto it = table_.find(key);
  return it != table_.end() && word_key(it->second) == key;
}

bool CayleyBall::equal(const Word& u, const Word& v) const {
  return normal_form(multiply(u, inverse(v))).empty();
}

std::vector<std::size_t> CayleyBall::sphere_sizes() const {
  std::vector<std::size_t> out(table_radius_ + 1, 0);
  for (auto& kv : table_) {
    if (kv.first == word_key(kv.second)) ++out[kv.second.size()];
  }
  return out;
}

std::vector<Word> CayleyBall::elements(int max_length) const {
  if (max_length > table_radius_) throw Error(ErrorCode::Domain, "outside ball");
  std::vector<Word> out;
  for (auto& kv : table_) {
    if (static_cast<int>(kv.second.size()) <= max_length && kv.first == word_key(kv.second)) out.push_back(kv.second);
  }
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

namespace {

struct AxisData {
  Word period;
  Word conjugator;
};

AxisData reduce_to_axis(const CayleyBall& ball, const Word& w) {
  CyclicReduction cr = cyclic_reduce(w);
  Word core = cr.core;
  Word conj = cr.conjugator;
  if (core.empty()) return {core, conj};
  for (;;) {
    // core = p * rot * p^-1 with p the first k letters.
    Word best;
    std::size_t best_k = 0;
    for (std::size_t k = 0; k < core.size(); ++k) {
      Word cand = ball.canonical(rotate(core, k));
      if (k == 0 || shortlex_less(cand, best)) {
        best = std::move(cand);
        best_k = k;
      }
    }
    const Word p(core.begin(), core.begin() + best_k);
    CyclicReduction next = cyclic_reduce(best);
    if (next.core.empty()) return {Word{}, multiply(conj, p)};
    if (next.core.size() < core.size()) {
      conj = multiply(multiply(conj, p), next.conjugator);
      core = std::move(next.core);
      continue;
    }
    return {best, multiply(conj, p)};
  }
}

}  // namespace

int cayley_translation_length(const CayleyBall& ball, const Word& w) {
  return static_cast<int>(reduce_to_axis(ball, w).period.size());
}

GeodesicPath quasi_axis(const CayleyBall& ball, const Word& w, int windows) {
  if (windows < 1) throw Error(ErrorCode::InvalidArgument, "windows must be positive");
  AxisData ax = reduce_to_axis(ball, w);
  if (ax.period.empty()) throw Error(ErrorCode::Domain, "identity has no axis");
  return {ax.period, ax.conjugator, windows};
}

Word GeodesicPath::vertex(int s) const {
  const int len = period_length();
  if (len == 0) return {};
  int q = s / len, r = s % len;
  if (r < 0) {
    r += len;
    --q;
  }
  return multiply(power(period, q), Word(period.begin(), period.begin() + r));
}

void validate_automorphism(const CayleyBall& ball, const Automorphism& f) {
  const Presentation& p = ball.presentation();
  if (f.rank() != p.rank() || static_cast<int>(f.inverse_images.size()) != p.rank()) {
    throw Error(ErrorCode::InvalidArgument, "automorphism rank does not match the presentation");
  }
  const Automorphism fi = f.inverse();
  for (int k = 0; k < p.rank(); ++k) {
    const Word x{k + 1};
    if (!ball.equal(apply_automorphism(f, apply_automorphism(fi, x)), x) ||
        !ball.equal(apply_automorphism(fi, apply_automorphism(f, x)), x)) {
      throw Error(ErrorCode::Inconsistent, "declared inverse of " + f.name + " is wrong");
    }
  }
  for (const Word& r : p.relators) {
    if (!ball.is_identity(apply_automorphism(f, r))) {
      throw Error(ErrorCode::Inconsistent, f.name + " does not preserve the relators");
    }
  }
}

}  // namespace psrep::words
