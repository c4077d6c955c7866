#include "laxkit/errors.hpp"
#include "laxkit/expr.hpp"

namespace laxkit {

struct JetExpr::Node {
  Kind kind = Kind::Sum;
  Atom atom;
  Rational scalar{1};
  std::vector<JetExpr> children;
};

namespace {

const std::shared_ptr<const JetExpr::Node>& zero_node() {
  static const auto node = std::make_shared<const JetExpr::Node>();
  return node;
}

Poly invert(const Poly& p) {
  if (p.size() != 1) {
    throw Error(ErrorCode::InvalidInverse, "inverse of a sum of monomials is outside the fragment");
  }
  const auto& [w, c] = *p.terms().begin();
  const Rational inv_c = 1 / c;
  if (w.empty()) return Poly::scalar(inv_c);
  if (w.size() == 1) {
    const Atom& a = w.front();
    if (a.kind == AtomKind::Field && a.index.is_zero()) {
      return Poly::word(Word{Atom::inverse_field(a.name)}, inv_c);
    }
    if (a.kind == AtomKind::InverseField) {
      return Poly::word(Word{Atom::field(a.name, a.index)}, inv_c);
    }
  }
  throw Error(ErrorCode::InvalidInverse, "only the bare field, its inverse and scalars can be inverted");
}

}  // namespace

JetExpr::JetExpr() : node_(zero_node()) {}

JetExpr JetExpr::atom(Atom a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->atom = std::move(a);
  return JetExpr(std::move(n));
}

JetExpr JetExpr::sum(std::vector<JetExpr> terms) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->children = std::move(terms);
  return JetExpr(std::move(n));
}

JetExpr JetExpr::product(std::vector<JetExpr> factors) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Product;
  n->children = std::move(factors);
  return JetExpr(std::move(n));
}

JetExpr JetExpr::scaled(Rational c, JetExpr e) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::ScalarMul;
  n->scalar = std::move(c);
  n->children = {std::move(e)};
  return JetExpr(std::move(n));
}

JetExpr JetExpr::commutator(JetExpr a, JetExpr b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Commutator;
  n->children = {std::move(a), std::move(b)};
  return JetExpr(std::move(n));
}

JetExpr JetExpr::inverse(JetExpr e) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Inverse;
  n->children = {std::move(e)};
  return JetExpr(std::move(n));
}

JetExpr JetExpr::from_poly(const Poly& p) {
  std::vector<JetExpr> terms;
  terms.reserve(p.size());
  for (const auto& [w, c] : p.terms()) {
    std::vector<JetExpr> factors;
    if (w.empty()) {
      factors.push_back(atom(Atom::identity()));
    } else {
      for (const Atom& a : w) factors.push_back(atom(a));
    }
    terms.push_back(scaled(c, product(std::move(factors))));
  }
  return sum(std::move(terms));
}

JetExpr::Kind JetExpr::kind() const { return node_->kind; }
const Atom& JetExpr::as_atom() const { return node_->atom; }
const Rational& JetExpr::scalar() const { return node_->scalar; }
std::span<const JetExpr> JetExpr::children() const { return node_->children; }

Poly JetExpr::to_poly() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Atom:
      return Poly::atom(n.atom);
    case Kind::Sum: {
      Poly out;
      for (const auto& c : n.children) out += c.to_poly();
      return out;
    }
    case Kind::Product: {
      Poly out = Poly::identity();
      for (const auto& c : n.children) out = out * c.to_poly();
      return out;
    }
    case Kind::ScalarMul:
      return n.scalar * n.children.at(0).to_poly();
    case Kind::Commutator:
      return laxkit::commutator(n.children.at(0).to_poly(), n.children.at(1).to_poly());
    case Kind::Inverse:
      return invert(n.children.at(0).to_poly());
  }
  return {};
}

bool JetExpr::operator==(const JetExpr& o) const {
  if (node_ == o.node_) return true;
  const Node& a = *node_;
  const Node& b = *o.node_;
  if (a.kind != b.kind) return false;
  if (a.kind == Kind::Atom) return a.atom == b.atom;
  if (a.kind == Kind::ScalarMul && a.scalar != b.scalar) return false;
  return a.children == b.children;
}

JetExpr normalize(const JetExpr& e) { return JetExpr::from_poly(e.to_poly()); }

bool is_zero(const JetExpr& e) { return e.to_poly().is_zero(); }

bool equivalent(const JetExpr& a, const JetExpr& b) { return a.to_poly() == b.to_poly(); }

}  // namespace laxkit
