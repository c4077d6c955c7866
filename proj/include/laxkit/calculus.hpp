#pragma once

// Total, Frechet and covariant derivatives on the jet-space algebra, and
// reduction of expressions modulo a field equation.

#include "laxkit/equation.hpp"
#include "laxkit/expr.hpp"

#include <map>

namespace laxkit {

/// D_v. Leibniz over words; (u^-1)_v = -u^-1 u_v u^-1; parameters and the
/// identity are constant. Throws DerivativeOrderOverflow past vars.max_order().
Poly total_derivative(const Poly& p, std::size_t var, const VarSpace& vars);
/// D^mu, applied one variable at a time.
Poly total_derivative(const Poly& p, const MultiIndex& mu, const VarSpace& vars);
JetExpr total_derivative(const JetExpr& e, std::size_t var, const VarSpace& vars);

/// Frechet images of the fields. Potentials listed here get their Frechet
/// derivatives through the prolonged potential system.
struct FrechetContext {
  VarSpace vars;
  std::map<std::string, Poly> rules;
  std::vector<PotentialSystem> potentials;
};

/// Context with Delta(eq.field) = q and the equation's potential attached.
FrechetContext frechet_context(const EquationDef& eq, const Poly& q);

/// Delta e. Delta u_mu = D^mu(Delta u); Delta X_mu (|mu| >= 1) goes through
/// the potential system; Delta X is the atom dX and derivatives no rule
/// eliminates map to jets of dX. Throws UnboundField for fields without a rule.
Poly frechet_derivative(const Poly& p, const FrechetContext& ctx);
JetExpr frechet_derivative(const JetExpr& e, const FrechetContext& ctx);

/// D_{conn_var} e + [connection, e] for the given slot.
Poly covariant_derivative(const Poly& e, const EquationDef& eq, std::size_t slot);
/// Slot looked up by name; throws UnknownConnection.
JetExpr covariant_derivative(const JetExpr& e, const EquationDef& eq, std::string_view which);

/// Solved form read off F: among the terms u^-1 u_mu of F, take the one with
/// the most derivatives in `preferred` (ties broken lexicographically) and
/// solve F = 0 for it.
SolvedForm derive_solved_form(const Poly& f, const std::string& field, const VarSpace& vars,
                              std::size_t preferred);

/// Cached on-shell reducer for one equation. It eliminates derivatives of the
/// potential (and of its Frechet image, when a context is given) and then
/// replaces the leading derivative and all its prolongations by the solved
/// form. Not thread-safe; give each thread its own.
class ShellReducer {
 public:
  explicit ShellReducer(const EquationDef& eq, const FrechetContext* ctx = nullptr);

  /// Full on-shell canonical form: potentials eliminated, solved form applied.
  Poly on_shell(const Poly& p);
  /// Only the solved form of the field equation.
  Poly reduce_mod_field_equation(const Poly& p);
  /// Only derivatives of the potential (and dX) rewritten.
  Poly eliminate_potentials(const Poly& p);

 private:
  std::optional<Poly> potential_step(const Atom& a) const;
  std::optional<Poly> solved_step(const Atom& a) const;

  const EquationDef& eq_;
  const FrechetContext* ctx_;
  AtomRewriter full_;
  AtomRewriter field_only_;
  AtomRewriter potential_only_;
};

Poly reduce_mod_field_equation(const Poly& p, const EquationDef& eq);
JetExpr reduce_mod_field_equation(const JetExpr& e, const EquationDef& eq);
Poly on_shell(const Poly& p, const EquationDef& eq, const FrechetContext* ctx = nullptr);

/// Derivative weight of a word: total order of all field and potential atoms.
int word_weight(const Word& w);

}  // namespace laxkit
