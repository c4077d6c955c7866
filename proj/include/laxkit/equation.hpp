#pragma once

// Field equations in divergence form D_a A[u] + D_b B[u] = 0, together with
// the data the symmetry/recursion machinery needs: the covariant connections,
// the solved form used for on-shell reduction, and the defining system of the
// nonlocal potential.

#include "laxkit/expr.hpp"

#include <array>
#include <memory>
#include <string>

namespace laxkit {

/// One half of the divergence structure. The component is differentiated
/// along div_var; the matching covariant derivative is
/// A_conn = D_{conn_var} + [connection, .].
struct DivergenceSlot {
  std::string name;     // connection slot name, e.g. "t" or "y"
  std::size_t conn_var; // variable of the covariant derivative
  std::size_t div_var;  // variable the component is differentiated by
  Poly component;       // A[u] or B[u]
  Poly connection;      // u^-1 u_{conn_var}
};

/// u_{leading} = rhs, applied with all prolongations.
struct SolvedForm {
  std::string field;
  MultiIndex leading;
  Poly rhs;
};

/// Defining system of a potential: D_var(name) = rhs for each rule. Rules are
/// tried in order when eliminating derivatives of the potential.
struct PotentialSystem {
  std::string name;
  std::vector<std::pair<std::size_t, Poly>> rules;
};

struct EquationDef {
  std::string name;
  VarSpace vars;
  std::string field;
  std::array<DivergenceSlot, 2> slots;
  SolvedForm solved;
  PotentialSystem potential;
  bool trace_constraint = false;
  /// Placeholder atom standing for a generic characteristic Q.
  std::string placeholder = "Q";
  /// K(Q'; u) written in terms of the placeholder, u^-1 Q for both equations.
  Poly bt_kernel;

  Atom field_atom(const MultiIndex& idx) const { return Atom::field(field, idx); }
  Atom field_atom() const { return Atom::field(field, MultiIndex(vars.arity())); }
  Atom inverse_atom() const { return Atom::inverse_field(field); }
  Atom placeholder_atom() const { return Atom::field(placeholder, MultiIndex(vars.arity())); }
  /// Index of a connection slot by name; throws UnknownConnection.
  std::size_t slot_index(std::string_view name) const;
};

using EquationPtr = std::shared_ptr<const EquationDef>;

}  // namespace laxkit
