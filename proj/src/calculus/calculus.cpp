#include "laxkit/calculus.hpp"

#include "laxkit/errors.hpp"

namespace laxkit {

std::size_t EquationDef::slot_index(std::string_view which) const {
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].name == which) return i;
  }
  throw Error(ErrorCode::UnknownConnection,
              "equation '" + name + "' has no connection '" + std::string(which) + "'");
}

namespace {

Atom with_index(const Atom& a, const MultiIndex& idx) { return Atom{a.kind, a.name, idx}; }

Poly atom_derivative(const Atom& a, std::size_t var, const VarSpace& vars) {
  switch (a.kind) {
    case AtomKind::Identity:
    case AtomKind::Param:
      return {};
    case AtomKind::Coordinate:
      return a.name == vars.name(var) ? Poly::identity() : Poly{};
    case AtomKind::InverseField: {
      const Atom d = Atom::field(a.name, MultiIndex::unit(vars.arity(), var));
      return Poly::word({a, d, a}, -1);
    }
    case AtomKind::Field:
    case AtomKind::Potential:
    case AtomKind::FrechetPotential: {
      MultiIndex m = a.index.incremented(var);
      if (m.total() > vars.max_order()) {
        throw Error(ErrorCode::DerivativeOrderOverflow,
                    "derivative of " + pretty(a, vars) + " exceeds order cap " +
                        std::to_string(vars.max_order()));
      }
      return Poly::atom(with_index(a, m));
    }
  }
  return {};
}

// Sum over positions i of prefix * image(w[i]) * suffix.
template <typename ImageFn>
Poly leibniz(const Poly& p, ImageFn&& image) {
  Poly out;
  Word joined;
  for (const auto& [w, c] : p.terms()) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      const Poly d = image(w[i]);
      for (const auto& [dw, dc] : d.terms()) {
        joined.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
        joined.insert(joined.end(), dw.begin(), dw.end());
        joined.insert(joined.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.end());
        out.add_canonical(canonical_word(joined), c * dc);
      }
    }
  }
  return out;
}

}  // namespace

Poly total_derivative(const Poly& p, std::size_t var, const VarSpace& vars) {
  if (var >= vars.arity()) throw std::out_of_range("total_derivative: variable out of range");
  return leibniz(p, [&](const Atom& a) { return atom_derivative(a, var, vars); });
}

Poly total_derivative(const Poly& p, const MultiIndex& mu, const VarSpace& vars) {
  Poly out = p;
  for (std::size_t v = 0; v < vars.arity(); ++v) {
    for (int k = 0; k < mu[v]; ++k) out = total_derivative(out, v, vars);
  }
  return out;
}

JetExpr total_derivative(const JetExpr& e, std::size_t var, const VarSpace& vars) {
  return JetExpr::from_poly(total_derivative(e.to_poly(), var, vars));
}

FrechetContext frechet_context(const EquationDef& eq, const Poly& q) {
  FrechetContext ctx{eq.vars, {}, {eq.potential}};
  ctx.rules.emplace(eq.field, q);
  return ctx;
}

Poly frechet_derivative(const Poly& p, const FrechetContext& ctx) {
  std::map<Atom, Poly> cache;
  auto field_image = [&](const std::string& name) -> const Poly& {
    auto it = ctx.rules.find(name);
    if (it == ctx.rules.end()) {
      throw Error(ErrorCode::UnboundField, "no Frechet rule for field '" + name + "'");
    }
    return it->second;
  };
  auto image = [&](const Atom& a) -> Poly {
    switch (a.kind) {
      case AtomKind::Identity:
      case AtomKind::Param:
      case AtomKind::Coordinate:
        return {};
      case AtomKind::Field:
        return total_derivative(field_image(a.name), a.index, ctx.vars);
      case AtomKind::InverseField: {
        const Poly inv = Poly::atom(a);
        return -(inv * field_image(a.name) * inv);
      }
      case AtomKind::Potential: {
        if (a.index.is_zero()) return Poly::atom(Atom::frechet_potential(a.name, a.index));
        for (const auto& sys : ctx.potentials) {
          if (sys.name != a.name) continue;
          for (const auto& [v, rhs] : sys.rules) {
            if (a.index[v] == 0) continue;
            const MultiIndex rest = a.index.minus(MultiIndex::unit(ctx.vars.arity(), v));
            return total_derivative(frechet_derivative(rhs, ctx), rest, ctx.vars);
          }
        }
        // No rule eliminates this direction: the image is the jet of dX itself.
        return Poly::atom(Atom::frechet_potential(a.name, a.index));
      }
      case AtomKind::FrechetPotential:
        throw Error(ErrorCode::UnboundField, "second variation of '" + a.name + "' is not defined");
    }
    return {};
  };
  return leibniz(p, [&](const Atom& a) -> Poly {
    auto it = cache.find(a);
    if (it == cache.end()) it = cache.emplace(a, image(a)).first;
    return it->second;
  });
}

JetExpr frechet_derivative(const JetExpr& e, const FrechetContext& ctx) {
  return JetExpr::from_poly(frechet_derivative(e.to_poly(), ctx));
}

Poly covariant_derivative(const Poly& e, const EquationDef& eq, std::size_t slot) {
  const DivergenceSlot& s = eq.slots.at(slot);
  return total_derivative(e, s.conn_var, eq.vars) + commutator(s.connection, e);
}

JetExpr covariant_derivative(const JetExpr& e, const EquationDef& eq, std::string_view which) {
  return JetExpr::from_poly(covariant_derivative(e.to_poly(), eq, eq.slot_index(which)));
}

SolvedForm derive_solved_form(const Poly& f, const std::string& field, const VarSpace& vars,
                              std::size_t preferred) {
  const Atom inv = Atom::inverse_field(field);
  std::optional<Atom> lead;
  Rational lead_coef;
  for (const auto& [w, c] : f.terms()) {
    if (w.size() != 2 || w[0] != inv || w[1].kind != AtomKind::Field || w[1].name != field) continue;
    const Atom& cand = w[1];
    if (!lead || cand.index[preferred] > lead->index[preferred] ||
        (cand.index[preferred] == lead->index[preferred] && cand.index > lead->index)) {
      lead = cand;
      lead_coef = c;
    }
  }
  if (!lead) throw std::invalid_argument("field equation has no term linear in a derivative of " + field);
  Poly rest = f;
  rest.add_canonical({inv, *lead}, -lead_coef);
  for (const auto& [w, c] : rest.terms()) {
    for (const Atom& a : w) {
      if (a == *lead) throw std::invalid_argument("leading derivative is not isolated in the field equation");
    }
  }
  Rational scale = -1 / lead_coef;
  return SolvedForm{field, lead->index, scale * (Poly::atom(Atom::field(field, MultiIndex(vars.arity()))) * rest)};
}

ShellReducer::ShellReducer(const EquationDef& eq, const FrechetContext* ctx)
    : eq_(eq),
      ctx_(ctx),
      full_([this](const Atom& a) {
        if (auto p = potential_step(a)) return p;
        return solved_step(a);
      }),
      field_only_([this](const Atom& a) { return solved_step(a); }),
      potential_only_([this](const Atom& a) { return potential_step(a); }) {}

std::optional<Poly> ShellReducer::potential_step(const Atom& a) const {
  const bool pot = a.kind == AtomKind::Potential;
  const bool dpot = a.kind == AtomKind::FrechetPotential && ctx_ != nullptr;
  if (!(pot || dpot) || a.name != eq_.potential.name || a.index.is_zero()) return std::nullopt;
  for (const auto& [v, rhs] : eq_.potential.rules) {
    if (a.index[v] == 0) continue;
    const MultiIndex rest = a.index.minus(MultiIndex::unit(eq_.vars.arity(), v));
    const Poly base = pot ? rhs : frechet_derivative(rhs, *ctx_);
    return total_derivative(base, rest, eq_.vars);
  }
  return std::nullopt;
}

std::optional<Poly> ShellReducer::solved_step(const Atom& a) const {
  if (a.kind != AtomKind::Field || a.name != eq_.solved.field) return std::nullopt;
  if (!a.index.dominates(eq_.solved.leading)) return std::nullopt;
  return total_derivative(eq_.solved.rhs, a.index.minus(eq_.solved.leading), eq_.vars);
}

Poly ShellReducer::on_shell(const Poly& p) { return full_.apply(p); }
Poly ShellReducer::reduce_mod_field_equation(const Poly& p) { return field_only_.apply(p); }
Poly ShellReducer::eliminate_potentials(const Poly& p) { return potential_only_.apply(p); }

Poly reduce_mod_field_equation(const Poly& p, const EquationDef& eq) {
  return ShellReducer(eq).reduce_mod_field_equation(p);
}

JetExpr reduce_mod_field_equation(const JetExpr& e, const EquationDef& eq) {
  return JetExpr::from_poly(reduce_mod_field_equation(e.to_poly(), eq));
}

Poly on_shell(const Poly& p, const EquationDef& eq, const FrechetContext* ctx) {
  return ShellReducer(eq, ctx).on_shell(p);
}

int word_weight(const Word& w) {
  int total = 0;
  for (const Atom& a : w) {
    if (a.kind == AtomKind::Field || a.kind == AtomKind::Potential ||
        a.kind == AtomKind::FrechetPotential) {
      total += a.index.total();
    }
  }
  return total;
}

}  // namespace laxkit
