#include "laxkit/equations.hpp"

#include "laxkit/errors.hpp"

namespace laxkit {

namespace {

Poly inv_times_derivative(const std::string& field, const VarSpace& vars, std::size_t var) {
  return Poly::word({Atom::inverse_field(field), Atom::field(field, MultiIndex::unit(vars.arity(), var))});
}

Poly inverse_times(const EquationDef& eq, const Poly& p) { return Poly::atom(eq.inverse_atom()) * p; }

}  // namespace

EquationDef make_divergence_equation(std::string name, VarSpace vars, std::string field,
                                     std::array<std::pair<std::string, std::string>, 2> slot_vars,
                                     std::string preferred, bool trace_constraint) {
  EquationDef eq;
  eq.name = std::move(name);
  eq.vars = std::move(vars);
  eq.field = std::move(field);
  for (std::size_t i = 0; i < 2; ++i) {
    DivergenceSlot& s = eq.slots[i];
    s.name = slot_vars[i].first;
    s.conn_var = eq.vars.require(slot_vars[i].first);
    s.div_var = eq.vars.require(slot_vars[i].second);
    s.connection = inv_times_derivative(eq.field, eq.vars, s.conn_var);
    s.component = s.connection;
  }
  eq.trace_constraint = trace_constraint;
  eq.potential.name = "X";
  eq.potential.rules = {{eq.slots[1].div_var, eq.slots[0].component},
                        {eq.slots[0].div_var, -eq.slots[1].component}};
  eq.bt_kernel = Poly::word({eq.inverse_atom(), eq.placeholder_atom()});
  eq.solved = derive_solved_form(field_equation_residual(eq), eq.field, eq.vars,
                                 eq.vars.require(preferred));
  return eq;
}

EquationPtr chiral_equation() {
  static const EquationPtr eq = std::make_shared<const EquationDef>(
      make_divergence_equation("chiral", VarSpace({"t", "x"}), "g", {{{"t", "t"}, {"x", "x"}}}, "t",
                               false));
  return eq;
}

EquationPtr sdym_equation() {
  static const EquationPtr eq = std::make_shared<const EquationDef>(make_divergence_equation(
      "sdym", VarSpace({"y", "z", "ybar", "zbar"}), "J", {{{"y", "ybar"}, {"z", "zbar"}}}, "ybar",
      true));
  return eq;
}

EquationPtr equation_by_name(std::string_view name) {
  if (name == "chiral") return chiral_equation();
  if (name == "sdym") return sdym_equation();
  throw Error(ErrorCode::UnknownEquation, "unknown equation '" + std::string(name) + "'");
}

Poly field_equation_residual(const EquationDef& eq) {
  Poly f;
  for (const auto& s : eq.slots) f += total_derivative(s.component, s.div_var, eq.vars);
  return f;
}

Poly symmetry_condition(const EquationDef& eq, const Poly& q) {
  return frechet_derivative(field_equation_residual(eq), frechet_context(eq, q));
}

std::array<Poly, 2> symmetry_currents(const EquationDef& eq, const Poly& q) {
  const Poly k = inverse_times(eq, q);
  return {covariant_derivative(k, eq, 0), covariant_derivative(k, eq, 1)};
}

Poly symmetry_condition_covariant(const EquationDef& eq, const Poly& q) {
  auto currents = symmetry_currents(eq, q);
  return total_derivative(currents[0], eq.slots[0].div_var, eq.vars) +
         total_derivative(currents[1], eq.slots[1].div_var, eq.vars);
}

SymmetryVerdict verify_symmetry(const EquationDef& eq, const Poly& q) {
  const FrechetContext ctx = frechet_context(eq, q);
  Poly residue = on_shell(symmetry_condition(eq, q), eq, &ctx);
  const bool holds = residue.is_zero();
  return {holds, std::move(residue)};
}

SymmetryVerdict verify_symmetry(const EquationDef& eq, const Characteristic& q) {
  if (!q.is_closed()) throw std::invalid_argument("verify_symmetry needs a closed-form characteristic");
  return verify_symmetry(eq, q.closed());
}

std::vector<NamedCharacteristic> seed_characteristics(const EquationDef& eq) {
  const Atom u = eq.field_atom();
  const Poly m = Poly::atom(Atom::param("M"));
  const Poly lambda = Poly::atom(Atom::param("Lambda"));
  auto closed = [](int n, Poly p, std::string prov) {
    return Characteristic{n, std::move(p), std::move(prov)};
  };
  auto derivative = [&](std::size_t v) {
    return Poly::atom(eq.field_atom(MultiIndex::unit(eq.vars.arity(), v)));
  };
  std::vector<NamedCharacteristic> out;
  const std::string un = eq.field;
  out.push_back({un + "M", closed(0, Poly::atom(u) * m, "seed " + un + "M")});
  if (!eq.trace_constraint) {
    out.push_back({"Lambda" + un, closed(-1, lambda * Poly::atom(u), "seed Lambda" + un)});
  }
  for (std::size_t v = 0; v < eq.vars.arity(); ++v) {
    const std::string name = un + "_" + eq.vars.name(v);
    out.push_back({name, closed(0, derivative(v), "seed " + name)});
  }
  return out;
}

std::vector<NamedCharacteristic> characteristic_catalog(const EquationDef& eq) {
  std::vector<NamedCharacteristic> out = seed_characteristics(eq);
  const Poly u = Poly::atom(eq.field_atom());
  const Poly x = Poly::atom(Atom::potential(eq.potential.name, MultiIndex(eq.vars.arity())));
  const Poly m = Poly::atom(Atom::param("M"));
  const std::string un = eq.field;
  out.push_back({un + "[X,M]", {1, u * commutator(x, m), "catalog " + un + "[X,M]"}});
  if (eq.trace_constraint) {
    out.push_back({"Lambda" + un, {-1, Poly::atom(Atom::param("Lambda")) * u, "catalog Lambda" + un}});
    const std::size_t a = eq.slots[0].conn_var;
    const Poly xa = Poly::atom(Atom::potential(eq.potential.name, MultiIndex::unit(eq.vars.arity(), a)));
    const std::string name = un + "X_" + eq.vars.name(a);
    out.push_back({name, {1, u * xa, "catalog " + name}});
  }
  return out;
}

Poly potential_compatibility(const EquationDef& eq) {
  const auto& rules = eq.potential.rules;
  // rules[0] gives X along div_b, rules[1] along div_a.
  return total_derivative(rules[0].second, rules[1].first, eq.vars) -
         total_derivative(rules[1].second, rules[0].first, eq.vars);
}

Poly frechet_potential_compatibility(const EquationDef& eq, const Poly& q) {
  const FrechetContext ctx = frechet_context(eq, q);
  const auto& rules = eq.potential.rules;
  return total_derivative(frechet_derivative(rules[0].second, ctx), rules[1].first, eq.vars) -
         total_derivative(frechet_derivative(rules[1].second, ctx), rules[0].first, eq.vars);
}

Poly curvature_residue(const EquationDef& eq, const Poly& phi) {
  return covariant_derivative(covariant_derivative(phi, eq, 0), eq, 1) -
         covariant_derivative(covariant_derivative(phi, eq, 1), eq, 0);
}

Poly operator_identity_residue(const EquationDef& eq, const Poly& phi) {
  Poly out = commutator(field_equation_residual(eq), phi);
  for (std::size_t s = 0; s < 2; ++s) {
    const std::size_t div = eq.slots[s].div_var;
    out += covariant_derivative(total_derivative(phi, div, eq.vars), eq, s);
    out -= total_derivative(covariant_derivative(phi, eq, s), div, eq.vars);
  }
  return out;
}

}  // namespace laxkit
