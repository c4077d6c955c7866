#pragma once

// The chiral field equation and self-dual Yang-Mills as divergence-form
// equations, their symmetry conditions and the seed characteristics.

#include "laxkit/calculus.hpp"
#include "laxkit/equation.hpp"

#include <variant>

namespace laxkit {

/// Divergence-form equation D_{div_a} A + D_{div_b} B = 0 with connections
/// u^-1 u_{conn}. The potential is X_{div_b} = A, X_{div_a} = -B and the
/// solved form is derived from F with `preferred` as the evolution variable.
EquationDef make_divergence_equation(std::string name, VarSpace vars, std::string field,
                                     std::array<std::pair<std::string, std::string>, 2> slot_vars,
                                     std::string preferred, bool trace_constraint);

EquationPtr chiral_equation();
EquationPtr sdym_equation();
/// "chiral" or "sdym"; throws UnknownEquation.
EquationPtr equation_by_name(std::string_view name);

/// F[u] = sum over slots of D_{div}(component), normalized.
Poly field_equation_residual(const EquationDef& eq);

/// One relation of an implicitly defined characteristic, solved for the
/// first derivative of the unknown: Q_var = left Q + Q right + source.
/// lhs = rhs is the same relation in the form it was derived.
struct ImplicitRelation {
  std::size_t var = 0;
  Poly lhs;
  Poly rhs;
  Poly left;
  Poly right;
  Poly source;
};

/// A characteristic known only through a first-order linear system in the
/// placeholder field named `unknown`.
struct ImplicitSystem {
  std::string unknown;
  std::vector<ImplicitRelation> relations;
};

struct Characteristic {
  int index = 0;
  std::variant<Poly, ImplicitSystem> body;
  std::string provenance;

  bool is_closed() const { return std::holds_alternative<Poly>(body); }
  const Poly& closed() const { return std::get<Poly>(body); }
  const ImplicitSystem& implicit() const { return std::get<ImplicitSystem>(body); }
};

struct NamedCharacteristic {
  std::string name;
  Characteristic q;
};

/// S(Q; u) as the Frechet derivative of F along Q.
Poly symmetry_condition(const EquationDef& eq, const Poly& q);
/// S(Q; u) as sum over slots of D_{div} A_conn(u^-1 Q).
Poly symmetry_condition_covariant(const EquationDef& eq, const Poly& q);
/// The currents (G, H) = (A_a(u^-1 Q), A_b(u^-1 Q)) whose divergence is S.
std::array<Poly, 2> symmetry_currents(const EquationDef& eq, const Poly& q);

struct SymmetryVerdict {
  bool holds = false;
  Poly residue;  // on-shell S(Q; u), empty when holds
};

SymmetryVerdict verify_symmetry(const EquationDef& eq, const Poly& q);
SymmetryVerdict verify_symmetry(const EquationDef& eq, const Characteristic& q);

/// Seeds: chiral {gM, Lambda g, g_t, g_x}; SDYM {JM, J_y, J_z, J_ybar, J_zbar}.
std::vector<NamedCharacteristic> seed_characteristics(const EquationDef& eq);
/// Seeds plus the displayed higher characteristics (u[X,M], Lambda u, J X_y).
std::vector<NamedCharacteristic> characteristic_catalog(const EquationDef& eq);

/// Cross-derivative of the two potential rules, X_{div_a div_b} computed both
/// ways; equals F before reduction.
Poly potential_compatibility(const EquationDef& eq);
/// Same for the Frechet image dX along q; equals S(q; u).
Poly frechet_potential_compatibility(const EquationDef& eq, const Poly& q);

/// [A_a, A_b](phi) for the two covariant derivatives. The connections are
/// pure gauge, so this vanishes identically, without using F = 0.
Poly curvature_residue(const EquationDef& eq, const Poly& phi);
/// sum over slots of (A_conn D_div - D_div A_conn)(phi) + [F, phi]; vanishes
/// identically.
Poly operator_identity_residue(const EquationDef& eq, const Poly& phi);

}  // namespace laxkit
