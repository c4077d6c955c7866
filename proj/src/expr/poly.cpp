#include "laxkit/expr.hpp"

namespace laxkit {

Poly Poly::atom(const Atom& a) { return word(Word{a}); }

Poly Poly::scalar(const Rational& c) {
  Poly p;
  p.add_canonical(Word{}, c);
  return p;
}

Poly Poly::word(const Word& w, const Rational& c) {
  Poly p;
  p.add_canonical(canonical_word(w), c);
  return p;
}

void Poly::add_canonical(const Word& w, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [w, c] : o.terms_) add_canonical(w, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [w, c] : o.terms_) add_canonical(w, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, coef] : terms_) coef *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  Word joined;
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      joined.clear();
      joined.reserve(wa.size() + wb.size());
      joined.insert(joined.end(), wa.begin(), wa.end());
      joined.insert(joined.end(), wb.begin(), wb.end());
      out.add_canonical(canonical_word(joined), ca * cb);
    }
  }
  return out;
}

Poly commutator(const Poly& a, const Poly& b) { return a * b - b * a; }

bool contains_atom_kind(const Poly& p, AtomKind kind) {
  for (const auto& [w, c] : p.terms()) {
    for (const Atom& a : w) {
      if (a.kind == kind) return true;
    }
  }
  return false;
}

}  // namespace laxkit
