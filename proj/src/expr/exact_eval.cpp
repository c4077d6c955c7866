#include "laxkit/exact_eval.hpp"

#include "laxkit/errors.hpp"

#include <algorithm>

namespace laxkit {

RationalMatrix RationalMatrix::identity(std::size_t n) { return scalar(n, 1); }

RationalMatrix RationalMatrix::scalar(std::size_t n, const Rational& c) {
  RationalMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

bool RationalMatrix::is_zero() const {
  for (const auto& x : data_) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

std::optional<RationalMatrix> RationalMatrix::inverse() const {
  RationalMatrix a = *this;
  RationalMatrix inv = identity(n_);
  for (std::size_t col = 0; col < n_; ++col) {
    std::size_t pivot = col;
    while (pivot < n_ && sgn(a(pivot, col)) == 0) ++pivot;
    if (pivot == n_) return std::nullopt;
    if (pivot != col) {
      for (std::size_t k = 0; k < n_; ++k) {
        std::swap(a(pivot, k), a(col, k));
        std::swap(inv(pivot, k), inv(col, k));
      }
    }
    const Rational p = a(col, col);
    for (std::size_t k = 0; k < n_; ++k) {
      a(col, k) /= p;
      inv(col, k) /= p;
    }
    for (std::size_t r = 0; r < n_; ++r) {
      if (r == col || sgn(a(r, col)) == 0) continue;
      const Rational f = a(r, col);
      for (std::size_t k = 0; k < n_; ++k) {
        a(r, k) -= f * a(col, k);
        inv(r, k) -= f * inv(col, k);
      }
    }
  }
  return inv;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& o) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

RationalMatrix& RationalMatrix::operator-=(const RationalMatrix& o) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

RationalMatrix& RationalMatrix::operator*=(const Rational& c) {
  for (auto& x : data_) x *= c;
  return *this;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t n = a.dim();
  RationalMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a(i, k) * b(k, j);
    }
  }
  return out;
}

void ExactBinding::bind(const Atom& a, RationalMatrix m) {
  if (m.dim() != n_) throw Error(ErrorCode::DimensionMismatch, "binding dimension mismatch");
  // mpq comparison assumes canonical form; arithmetic keeps it, raw input may not.
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) m(i, j).canonicalize();
  }
  values_[a] = std::move(m);
}

RationalMatrix ExactBinding::value(const Atom& a) const {
  if (a.kind == AtomKind::Identity) return RationalMatrix::identity(n_);
  if (a.kind == AtomKind::InverseField) {
    auto it = std::find_if(values_.begin(), values_.end(), [&](const auto& kv) {
      return kv.first.kind == AtomKind::Field && kv.first.name == a.name && kv.first.index.is_zero();
    });
    if (it == values_.end()) throw Error(ErrorCode::UnboundAtom, "no value for field " + a.name);
    auto inv = it->second.inverse();
    if (!inv) throw Error(ErrorCode::InvalidInverse, "bound field " + a.name + " is singular");
    return *inv;
  }
  auto it = values_.find(a);
  if (it == values_.end()) throw Error(ErrorCode::UnboundAtom, "no value for atom " + a.name);
  return it->second;
}

RationalMatrix evaluate(const JetExpr& e, const ExactBinding& b) {
  const std::size_t n = b.dim();
  switch (e.kind()) {
    case JetExpr::Kind::Atom:
      return b.value(e.as_atom());
    case JetExpr::Kind::Sum: {
      RationalMatrix out(n);
      for (const auto& c : e.children()) out += evaluate(c, b);
      return out;
    }
    case JetExpr::Kind::Product: {
      RationalMatrix out = RationalMatrix::identity(n);
      for (const auto& c : e.children()) out = out * evaluate(c, b);
      return out;
    }
    case JetExpr::Kind::ScalarMul:
      return e.scalar() * evaluate(e.children()[0], b);
    case JetExpr::Kind::Commutator: {
      RationalMatrix x = evaluate(e.children()[0], b);
      RationalMatrix y = evaluate(e.children()[1], b);
      return x * y - y * x;
    }
    case JetExpr::Kind::Inverse: {
      auto inv = evaluate(e.children()[0], b).inverse();
      if (!inv) throw Error(ErrorCode::InvalidInverse, "singular value under inverse");
      return *inv;
    }
  }
  return RationalMatrix(n);
}

RationalMatrix evaluate(const Poly& p, const ExactBinding& b) {
  const std::size_t n = b.dim();
  RationalMatrix out(n);
  for (const auto& [w, c] : p.terms()) {
    RationalMatrix term = RationalMatrix::scalar(n, c);
    for (const Atom& a : w) term = term * b.value(a);
    out += term;
  }
  return out;
}

std::set<Atom> atoms_of(const Poly& p) {
  std::set<Atom> out;
  for (const auto& [w, c] : p.terms()) out.insert(w.begin(), w.end());
  return out;
}

namespace {

void collect(const JetExpr& e, std::set<Atom>& out) {
  if (e.kind() == JetExpr::Kind::Atom) {
    out.insert(e.as_atom());
    return;
  }
  for (const auto& c : e.children()) collect(c, out);
}

}  // namespace

std::set<Atom> atoms_of(const JetExpr& e) {
  std::set<Atom> out;
  collect(e, out);
  return out;
}

ExactBinding random_binding(const std::set<Atom>& atoms, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  auto draw = [&] {
    RationalMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) = Rational(num(rng), den(rng));
        m(i, j).canonicalize();
      }
    }
    return m;
  };

  std::set<Atom> needed = atoms;
  for (const Atom& a : atoms) {
    if (a.kind == AtomKind::InverseField) needed.insert(Atom::field(a.name, {}));
  }

  ExactBinding b(n);
  for (const Atom& a : needed) {
    switch (a.kind) {
      case AtomKind::Identity:
      case AtomKind::InverseField:
        break;
      case AtomKind::Coordinate:
        b.bind(a, RationalMatrix::scalar(n, Rational(num(rng), den(rng))));
        break;
      case AtomKind::Field:
        if (a.index.is_zero()) {
          RationalMatrix m = draw();
          while (!m.inverse()) m = draw();
          b.bind(a, std::move(m));
          break;
        }
        [[fallthrough]];
      default:
        b.bind(a, draw());
    }
  }
  return b;
}

}  // namespace laxkit
