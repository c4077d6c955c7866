#pragma once

// Exact evaluation of expressions with rational matrices substituted for
// atoms. Derivative atoms are treated as independent matrices; the inverse
// field atom evaluates to the exact inverse of the bound field.

#include "laxkit/expr.hpp"

#include <map>
#include <random>
#include <set>

namespace laxkit {

class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t n) : n_(n), data_(n * n) {}

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix scalar(std::size_t n, const Rational& c);

  std::size_t dim() const { return n_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

  bool is_zero() const;
  /// Gauss-Jordan over the rationals; returns nullopt for singular input.
  std::optional<RationalMatrix> inverse() const;

  RationalMatrix& operator+=(const RationalMatrix& o);
  RationalMatrix& operator-=(const RationalMatrix& o);
  RationalMatrix& operator*=(const Rational& c);
  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
  friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }
  friend RationalMatrix operator*(const Rational& c, RationalMatrix a) { return a *= c; }
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  bool operator==(const RationalMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<Rational> data_;
};

class ExactBinding {
 public:
  explicit ExactBinding(std::size_t n) : n_(n) {}

  std::size_t dim() const { return n_; }
  void bind(const Atom& a, RationalMatrix m);
  /// Value of an atom. Identity and inverse fields are derived, everything
  /// else must be bound (UnboundAtom otherwise).
  RationalMatrix value(const Atom& a) const;

 private:
  std::size_t n_;
  std::map<Atom, RationalMatrix> values_;
};

RationalMatrix evaluate(const JetExpr& e, const ExactBinding& b);
RationalMatrix evaluate(const Poly& p, const ExactBinding& b);

std::set<Atom> atoms_of(const Poly& p);
std::set<Atom> atoms_of(const JetExpr& e);

/// Random small rational matrices for every atom in the set. Bare fields are
/// drawn invertible so their inverse atoms evaluate.
ExactBinding random_binding(const std::set<Atom>& atoms, std::size_t n, std::mt19937_64& rng);

}  // namespace laxkit
