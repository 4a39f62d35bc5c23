#include <set>

#include "psrep/words.hpp"

namespace psrep::words {

Rewriter::Rewriter(const Presentation& p) {
  std::set<Word> seen;
  for (const Word& r : p.relators) {
    const Word cr = cyclic_reduce(r).core;
    if (cr.empty()) continue;
    for (const Word& base : {cr, inverse(cr)}) {
      for (std::size_t k = 0; k < base.size(); ++k) {
        Word rot = rotate(base, k);
        if (seen.insert(rot).second) cyclic_relators_.push_back(std::move(rot));
      }
    }
  }
}

bool Rewriter::apply_once(Word& w) const {
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (const Word& r : cyclic_relators_) {
      const std::size_t n = r.size();
      std::size_t m = 0;
      while (m < n && i + m < w.size() && w[i + m] == r[m]) ++m;
      if (2 * m < n) continue;
      // r = s t with s = w[i, i+m); s equals t^-1 in G.
      Word t_inv = inverse(Word(r.begin() + m, r.end()));
      if (2 * m == n) {
        const Word s(w.begin() + i, w.begin() + i + m);
        if (!shortlex_less(t_inv, s)) continue;
      }
      Word out(w.begin(), w.begin() + i);
      out.insert(out.end(), t_inv.begin(), t_inv.end());
      out.insert(out.end(), w.begin() + i + m, w.end());
      w = free_reduce(out);
      return true;
    }
  }
  return false;
}

Word Rewriter::normal_form(const Word& w) const {
  Word out = free_reduce(w);
  while (apply_once(out)) {
  }
  return out;
}

}  // namespace psrep::words
