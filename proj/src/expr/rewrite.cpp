#include "laxkit/errors.hpp"
#include "laxkit/expr.hpp"

#include <algorithm>

namespace laxkit {

AtomRewriter::AtomRewriter(Rule rule, std::size_t depth_cap)
    : rule_(std::move(rule)), depth_cap_(depth_cap) {}

const Poly* AtomRewriter::image(const Atom& a) {
  if (auto it = memo_.find(a); it != memo_.end()) {
    return it->second ? &*it->second : nullptr;
  }
  std::optional<Poly> step = rule_(a);
  if (!step) {
    memo_.emplace(a, std::nullopt);
    return nullptr;
  }
  if (std::find(active_.begin(), active_.end(), a) != active_.end()) {
    throw Error(ErrorCode::NonTerminating, "rewrite rules cycle through atom '" + a.name + "'");
  }
  if (active_.size() >= depth_cap_) {
    throw Error(ErrorCode::NonTerminating, "rewrite depth cap exceeded at atom '" + a.name + "'");
  }
  active_.push_back(a);
  Poly full = apply(*step);
  active_.pop_back();
  auto [it, inserted] = memo_.emplace(a, std::move(full));
  return &*it->second;
}

Poly AtomRewriter::apply(const Poly& p) {
  Poly out;
  for (const auto& [w, c] : p.terms()) {
    // Fast path: most words have no rewritable atom.
    std::vector<const Poly*> images(w.size(), nullptr);
    bool any = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
      images[i] = image(w[i]);
      any = any || images[i] != nullptr;
    }
    if (!any) {
      out.add_canonical(w, c);
      continue;
    }
    Poly term = Poly::scalar(c);
    for (std::size_t i = 0; i < w.size(); ++i) {
      term = term * (images[i] ? *images[i] : Poly::atom(w[i]));
      if (term.is_zero()) break;
    }
    out += term;
  }
  return out;
}

Poly substitute(const Poly& e, const SubstitutionRules& rules) {
  AtomRewriter rw([&rules](const Atom& a) -> std::optional<Poly> {
    for (const auto& [lhs, rhs] : rules) {
      if (lhs == a) return rhs;
    }
    return std::nullopt;
  });
  return rw.apply(e);
}

namespace {

// Rebuilds only the nodes above a replaced atom; untouched subtrees are
// shared with the input.
JetExpr substitute_tree(const JetExpr& e, const std::vector<std::pair<Atom, JetExpr>>& rules) {
  if (e.kind() == JetExpr::Kind::Atom) {
    for (const auto& [lhs, rhs] : rules) {
      if (lhs == e.as_atom()) return rhs;
    }
    return e;
  }
  std::vector<JetExpr> kids;
  bool changed = false;
  for (const auto& c : e.children()) {
    kids.push_back(substitute_tree(c, rules));
    changed = changed || !(kids.back() == c);
  }
  if (!changed) return e;
  switch (e.kind()) {
    case JetExpr::Kind::Sum: return JetExpr::sum(std::move(kids));
    case JetExpr::Kind::Product: return JetExpr::product(std::move(kids));
    case JetExpr::Kind::ScalarMul: return JetExpr::scaled(e.scalar(), kids[0]);
    case JetExpr::Kind::Commutator: return JetExpr::commutator(kids[0], kids[1]);
    case JetExpr::Kind::Inverse: return JetExpr::inverse(kids[0]);
    case JetExpr::Kind::Atom: break;
  }
  return e;
}

}  // namespace

JetExpr substitute(const JetExpr& e, const std::vector<std::pair<Atom, JetExpr>>& rules) {
  return substitute_tree(e, rules);
}

}  // namespace laxkit
