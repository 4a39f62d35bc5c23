#include "psrep/words.hpp"

#include <algorithm>
#include <cctype>

namespace psrep::words {

namespace {

Letter letter(int gen, bool inverse) { return inverse ? -(gen + 1) : gen + 1; }

Presentation base(PresentationKind kind, int genus, int rank) {
  if (rank > 26) throw Error(ErrorCode::InvalidArgument, "too many generators");
  Presentation p;
  p.kind = kind;
  p.genus = genus;
  for (int k = 0; k < rank; ++k) p.gen_names.push_back(static_cast<char>('a' + k));
  p.orientation.assign(rank, kind == PresentationKind::NonorientableSurface ? -1 : 1);
  return p;
}

}  // namespace

Presentation Presentation::free_group(int rank) {
  if (rank < 1) throw Error(ErrorCode::InvalidArgument, "free group rank must be positive");
  return base(PresentationKind::Free, rank, rank);
}

Presentation Presentation::nonorientable(int genus) {
  if (genus < 3) throw Error(ErrorCode::InvalidArgument, "nonorientable genus must be at least 3");
  Presentation p = base(PresentationKind::NonorientableSurface, genus, genus);
  Word r;
  for (int k = 0; k < genus; ++k) {
    r.push_back(letter(k, false));
    r.push_back(letter(k, false));
  }
  p.relators.push_back(r);
  return p;
}

Presentation Presentation::orientable(int genus) {
  if (genus < 2) throw Error(ErrorCode::InvalidArgument, "orientable genus must be at least 2");
  Presentation p = base(PresentationKind::OrientableSurface, genus, 2 * genus);
  Word r;
  for (int k = 0; k < genus; ++k) {
    int x = 2 * k, y = 2 * k + 1;
    r.insert(r.end(), {letter(x, false), letter(y, false), letter(x, true), letter(y, true)});
  }
  p.relators.push_back(r);
  return p;
}

Presentation Presentation::from_name(std::string_view name) {
  auto number = [&](std::string_view prefix) -> int {
    std::string_view rest = name.substr(prefix.size());
    if (rest.empty() || rest.size() > 3) throw Error(ErrorCode::Parse, "bad presentation name: " + std::string(name));
    int n = 0;
    for (char ch : rest) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) {
        throw Error(ErrorCode::Parse, "bad presentation name: " + std::string(name));
      }
      n = 10 * n + (ch - '0');
    }
    return n;
  };
  if (name.rfind("free", 0) == 0) return free_group(number("free"));
  if (name.rfind("nonorientable", 0) == 0) return nonorientable(number("nonorientable"));
  if (name.rfind("orientable", 0) == 0) return orientable(number("orientable"));
  throw Error(ErrorCode::Parse, "unknown presentation: " + std::string(name));
}

std::string Presentation::name() const {
  switch (kind) {
    case PresentationKind::Free: return "free" + std::to_string(genus);
    case PresentationKind::NonorientableSurface: return "nonorientable" + std::to_string(genus);
    case PresentationKind::OrientableSurface: return "orientable" + std::to_string(genus);
  }
  return "?";
}

// -- word arithmetic ------------------------------------------------------------

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (Letter& l : out) l = -l;
  return out;
}

Word multiply(const Word& u, const Word& v) {
  Word out = free_reduce(u);
  for (Letter l : v) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word power(const Word& w, int n) {
  const Word base = n < 0 ? inverse(w) : w;
  Word out;
  for (int k = 0; k < std::abs(n); ++k) out = multiply(out, base);
  return out;
}

bool shortlex_less(const Word& u, const Word& v) noexcept {
  if (u.size() != v.size()) return u.size() < v.size();
  for (std::size_t k = 0; k < u.size(); ++k) {
    const int a = shortlex_key(u[k]), b = shortlex_key(v[k]);
    if (a != b) return a < b;
  }
  return false;
}

bool is_cyclically_reduced(const Word& w) noexcept {
  for (std::size_t k = 1; k < w.size(); ++k) {
    if (w[k] == -w[k - 1]) return false;
  }
  return w.size() < 2 || w.front() != -w.back();
}

CyclicReduction cyclic_reduce(const Word& w) {
  const Word r = free_reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
    ++lo;
    --hi;
  }
  return {Word(r.begin() + lo, r.begin() + hi), Word(r.begin(), r.begin() + lo)};
}

Word rotate(const Word& w, std::size_t k) {
  if (w.empty()) return w;
  k %= w.size();
  Word out(w.begin() + k, w.end());
  out.insert(out.end(), w.begin(), w.begin() + k);
  return out;
}

int orientation_class(const Presentation& p, const Word& w) {
  int s = 1;
  for (Letter l : w) {
    const int g = generator_of(l);
    if (g < 0 || g >= p.rank()) throw Error(ErrorCode::InvalidArgument, "letter outside presentation");
    s *= p.orientation[g];
  }
  return s;
}

std::string to_string(const Presentation& p, const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (Letter l : w) {
    const int g = generator_of(l);
    if (g < 0 || g >= p.rank()) throw Error(ErrorCode::InvalidArgument, "letter outside presentation");
    const char ch = p.gen_names[g];
    s.push_back(l > 0 ? ch : static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
  }
  return s;
}

Word parse_word(const Presentation& p, std::string_view text) {
  Word w;
  std::size_t k = 0;
  auto lookup = [&](char ch) -> int {
    const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    for (int g = 0; g < p.rank(); ++g) {
      if (p.gen_names[g] == lower) return g;
    }
    throw Error(ErrorCode::Parse, std::string("unknown generator '") + ch + "'");
  };
  while (k < text.size()) {
    const char ch = text[k];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '*' || ch == '.') {
      ++k;
      continue;
    }
    if (ch == '1' && w.empty()) {
      ++k;
      continue;
    }
    if (!std::isalpha(static_cast<unsigned char>(ch))) {
      throw Error(ErrorCode::Parse, std::string("unexpected character '") + ch + "' in word");
    }
    const int g = lookup(ch);
    bool inv = std::isupper(static_cast<unsigned char>(ch)) != 0;
    ++k;
    if (text.substr(k, 3) == "^-1") {
      inv = !inv;
      k += 3;
    }
    w.push_back(letter(g, inv));
  }
  return free_reduce(w);
}

// -- automorphisms ----------------------------------------------------------------

Automorphism Automorphism::identity(int rank) {
  Automorphism f;
  f.name = "id";
  for (int k = 0; k < rank; ++k) {
    f.images.push_back({k + 1});
    f.inverse_images.push_back({k + 1});
  }
  return f;
}

Automorphism Automorphism::inner(int rank, const Word& u) {
  Automorphism f;
  f.name = "inner";
  const Word ui = words::inverse(u);
  for (int k = 0; k < rank; ++k) {
    f.images.push_back(multiply(multiply(u, {k + 1}), ui));
    f.inverse_images.push_back(multiply(multiply(ui, {k + 1}), u));
  }
  return f;
}

Automorphism Automorphism::inverse() const {
  Automorphism f;
  f.name = name + "^-1";
  f.images = inverse_images;
  f.inverse_images = images;
  return f;
}

Automorphism Automorphism::power(int n) const {
  Automorphism out = identity(rank());
  const Automorphism step = n < 0 ? inverse() : *this;
  for (int k = 0; k < std::abs(n); ++k) out = compose(step, out);
  out.name = name + "^" + std::to_string(n);
  return out;
}

Word apply_automorphism(const Automorphism& f, const Word& w) {
  Word out;
  for (Letter l : w) {
    const int g = generator_of(l);
    if (g < 0 || g >= f.rank()) throw Error(ErrorCode::InvalidArgument, "letter outside automorphism domain");
    out = multiply(out, l > 0 ? f.images[g] : words::inverse(f.images[g]));
  }
  return out;
}

Automorphism compose(const Automorphism& f, const Automorphism& g) {
  if (f.rank() != g.rank()) throw Error(ErrorCode::InvalidArgument, "automorphism ranks differ");
  Automorphism h;
  h.name = f.name + "*" + g.name;
  const Automorphism gi = g.inverse(), fi = f.inverse();
  for (int k = 0; k < f.rank(); ++k) {
    h.images.push_back(apply_automorphism(f, g.images[k]));
    // (f g)^-1 = g^-1 f^-1
    h.inverse_images.push_back(apply_automorphism(gi, fi.images[k]));
  }
  return h;
}

}  // namespace psrep::words
