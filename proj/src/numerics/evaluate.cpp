#include "laxkit/errors.hpp"
#include "laxkit/numerics.hpp"

namespace laxkit::num {

GridEnv::GridEnv(const EquationDef& eq, GridField u) : eq_(eq), u_(std::move(u)) {
  if (u_.grid().arity() != eq.vars.arity()) {
    throw Error(ErrorCode::DimensionMismatch, "grid arity does not match the equation's variables");
  }
}

void GridEnv::bind_param(const std::string& name, const Mat& m) {
  if (static_cast<std::size_t>(m.rows()) != u_.dim() || m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "parameter '" + name + "' does not match the field dimension");
  }
  params_[name] = m;
  cache_.clear();
}

void GridEnv::bind_field(const std::string& name, GridField f) {
  if (!(f.grid() == u_.grid()) || f.dim() != u_.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "field '" + name + "' lives on another grid");
  }
  fields_.insert_or_assign(name, std::move(f));
  cache_.clear();
}

void GridEnv::bind_potential(GridField x) {
  if (!(x.grid() == u_.grid()) || x.dim() != u_.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "potential lives on another grid");
  }
  potential_ = std::move(x);
  cache_.clear();
}

const GridField& GridEnv::jet(const std::string& name, const GridField& base, const MultiIndex& mu) {
  if (mu.is_zero()) return base;
  // Peel one derivative off the last nonzero slot and recurse, so lower jets
  // are shared between higher ones.
  std::size_t v = eq_.vars.arity();
  while (mu[v - 1] == 0) --v;
  const MultiIndex lower = mu.minus(MultiIndex::unit(eq_.vars.arity(), v - 1));
  const Atom key = Atom::field("jet:" + name, mu);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  GridField d = diff(jet(name, base, lower), v - 1);
  return cache_.emplace(key, std::move(d)).first->second;
}

const GridField& GridEnv::atom(const Atom& a) {
  if (auto it = cache_.find(a); it != cache_.end()) return it->second;
  const std::size_t n = u_.dim();
  switch (a.kind) {
    case AtomKind::Identity:
      return cache_.emplace(a, constant_field(grid(), identity(n))).first->second;
    case AtomKind::Param: {
      auto it = params_.find(a.name);
      if (it == params_.end()) throw Error(ErrorCode::UnboundAtom, "parameter '" + a.name + "' is not bound");
      return cache_.emplace(a, constant_field(grid(), it->second)).first->second;
    }
    case AtomKind::Coordinate: {
      const std::size_t v = eq_.vars.require(a.name);
      GridField c(grid(), n);
      for (std::size_t p = 0; p < c.size(); ++p) c.set(p, grid().coordinate(p, v) * identity(n));
      return cache_.emplace(a, std::move(c)).first->second;
    }
    case AtomKind::InverseField: {
      if (a.name != eq_.field) throw Error(ErrorCode::UnboundAtom, "no inverse for field '" + a.name + "'");
      return cache_.emplace(a, inverse(u_)).first->second;
    }
    case AtomKind::Field: {
      if (a.name == eq_.field) return jet(a.name, u_, a.index);
      auto it = fields_.find(a.name);
      if (it == fields_.end()) throw Error(ErrorCode::UnboundAtom, "field '" + a.name + "' is not bound");
      return jet(a.name, it->second, a.index);
    }
    case AtomKind::Potential: {
      if (!potential_ || a.name != eq_.potential.name) {
        throw Error(ErrorCode::UnboundAtom, "potential '" + a.name + "' is not bound");
      }
      return jet(a.name, *potential_, a.index);
    }
    case AtomKind::FrechetPotential:
      break;
  }
  throw Error(ErrorCode::UnboundAtom, "atom '" + a.name + "' has no grid value");
}

GridField GridEnv::eval(const Poly& p) {
  const std::size_t n = u_.dim();
  GridField out(grid(), n);
  for (const auto& [w, c] : p.terms()) {
    std::vector<const GridField*> factors;
    for (const Atom& a : w) factors.push_back(&atom(a));
    const double coef = c.get_d();
    for (std::size_t q = 0; q < out.size(); ++q) {
      Mat m = factors.empty() ? identity(n) : Mat(factors.front()->view(q));
      for (std::size_t i = 1; i < factors.size(); ++i) m = m * factors[i]->view(q);
      out.view(q) += coef * m;
    }
  }
  return out;
}

}  // namespace laxkit::num
