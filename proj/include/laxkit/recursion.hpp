#pragma once

// Backlund-transformation recursion on symmetry characteristics, hierarchy
// generation, Laurent assembly and the Lax system.

#include "laxkit/equations.hpp"

#include <functional>

namespace laxkit {

enum class Direction { Forward, Backward };

std::string_view to_string(Direction d);

/// lhs = rhs with the unknown written as the placeholder field.
struct BTEquation {
  std::size_t var = 0;
  Poly lhs;
  Poly rhs;
};

/// Forward (unknown at n+1):  D_{div_b} K = A_a(u^-1 q),  D_{div_a} K = -A_b(u^-1 q),
/// with K = u^-1 Q'. Backward (unknown at n-1): A_a P = D_{div_b}(u^-1 q),
/// A_b P = -D_{div_a}(u^-1 q), with P = u^-1 Q'.
struct BTSystem {
  EquationPtr eq;
  Characteristic known;
  int unknown_level = 0;
  Direction direction = Direction::Forward;
  std::array<BTEquation, 2> equations;
  /// Right-hand sides of the two relations, on-shell.
  std::array<Poly, 2> targets;
  /// On-shell cross-derivative compatibility residue (empty when compatible).
  Poly compatibility_residue;
};

/// Builds the BT system for q. Throws IncompatibleSystem when the
/// compatibility residue is nonzero, i.e. q is not a symmetry.
BTSystem bt_step(const EquationPtr& eq, const Characteristic& q, Direction direction);

struct IntegrationOptions {
  std::size_t max_length = 5;
  std::size_t max_candidates = 4000;
};

struct IntegrationResult {
  Characteristic characteristic;
  /// Additive freedom left out by the C = 0 gauge: u C (forward) or C u
  /// (backward), with C a constant matrix.
  Poly constant_term;
  /// True for the backward step whose particular solution vanishes; the
  /// result is then the homogeneous solution Lambda u.
  bool homogeneous = false;
  std::size_t candidates_tried = 0;
};

/// Ansatz integrator: searches linear combinations of words of the right
/// weight, degree and parameter content whose on-shell image matches the
/// system. Falls back to the ImplicitSystem form of the relations.
IntegrationResult integrate_bt_symbolic(const BTSystem& sys, const IntegrationOptions& opts = {});

/// Implicit defining system of the unknown of a BT step, solved for its first
/// derivatives.
ImplicitSystem implicit_from_bt(const BTSystem& sys);

enum class LevelStatus { Closed, Implicit, NotReached };
std::string_view to_string(LevelStatus s);

struct NumericVerdict {
  bool holds = false;
  double residual = 0;
  std::string detail;
};

/// Numeric check of an implicitly defined level, supplied by the caller.
using NumericVerifier = std::function<std::optional<NumericVerdict>(const EquationDef&, const Characteristic&)>;

struct HierarchyLevel {
  int index = 0;
  LevelStatus status = LevelStatus::NotReached;
  std::optional<Characteristic> q;
  std::optional<SymmetryVerdict> symbolic;
  std::optional<NumericVerdict> numeric;
  Poly constant_term;
  bool homogeneous = false;
  /// Rational multiple of a seed or of an earlier level.
  bool degenerate = false;
  std::string note;
};

struct Hierarchy {
  EquationPtr eq;
  std::string seed_name;
  int n_min = 0;
  int n_max = 0;
  std::map<int, HierarchyLevel> levels;
};

/// Levels n_min..n_max from a seed placed at level 0. Each direction stops at
/// its first implicit level; levels past it are NotReached.
Hierarchy generate_hierarchy(const EquationPtr& eq, const NamedCharacteristic& seed, int n_min,
                             int n_max, const NumericVerifier& numeric = {},
                             const IntegrationOptions& opts = {});

// --- Lax system ------------------------------------------------------------

/// Polynomial in the spectral parameter: power -> coefficient.
using LambdaPoly = std::map<int, Poly>;

LambdaPoly lambda_add(LambdaPoly a, const LambdaPoly& b, const Rational& scale = 1);
bool lambda_is_zero(const LambdaPoly& p);

struct LaxSystem {
  EquationPtr eq;
  Atom psi;
  /// Relations written as L = 0, with phi = u^-1 Psi:
  ///   L1 = D_{div_b} phi - lambda A_a phi,  L2 = D_{div_a} phi + lambda A_b phi.
  std::array<LambdaPoly, 2> relations;
  std::array<std::size_t, 2> relation_vars{};
  /// -(D_{div_a} L1 - D_{div_b} L2); expected lambda S(Psi).
  LambdaPoly cross_residue;
  /// A_b L1 + A_a L2; expected S(Psi) - [F, phi].
  LambdaPoly covariant_residue;
  Poly symmetry;        // S(Psi; u), Frechet route
  Poly field_commutator;  // [F, phi]
  bool cross_matches = false;
  bool covariant_matches = false;
  /// covariant_residue - S(Psi) reduced mod F; empty on-shell.
  Poly covariant_on_shell;
};

LaxSystem lax_pair(const EquationPtr& eq);

struct LaurentSeries {
  int n_min = 0;
  int n_max = 0;
  Rational lambda;
  std::map<int, Characteristic> charges;
  /// sum lambda^n Q^(n) when every charge is closed-form.
  std::optional<Poly> psi;
};

/// Throws ZeroLambda for lambda = 0 and EmptyWindow for no charges or a
/// window with gaps.
LaurentSeries laurent_assemble(const std::map<int, Characteristic>& charges, const Rational& lambda);

/// The Lax relations with Psi = sum lambda^n Q^(n) substituted, on-shell, per
/// relation. Interior powers cancel by the BT; only lambda^{n_min} and
/// lambda^{n_max+1} may survive. Needs closed-form charges.
std::array<LambdaPoly, 2> truncation_residual(const EquationDef& eq,
                                              const std::map<int, Characteristic>& charges);

}  // namespace laxkit
