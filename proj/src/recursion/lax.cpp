#include "laxkit/errors.hpp"
#include "laxkit/recursion.hpp"

namespace laxkit {

LambdaPoly lambda_add(LambdaPoly a, const LambdaPoly& b, const Rational& scale) {
  for (const auto& [n, p] : b) {
    Poly& slot = a[n];
    slot += scale * p;
    if (slot.is_zero()) a.erase(n);
  }
  return a;
}

bool lambda_is_zero(const LambdaPoly& p) {
  for (const auto& [n, c] : p) {
    if (!c.is_zero()) return false;
  }
  return true;
}

namespace {

template <typename Fn>
LambdaPoly map_coefficients(const LambdaPoly& p, Fn&& fn) {
  LambdaPoly out;
  for (const auto& [n, c] : p) {
    Poly img = fn(c);
    if (!img.is_zero()) out[n] = std::move(img);
  }
  return out;
}

LambdaPoly pruned(LambdaPoly p) {
  std::erase_if(p, [](const auto& kv) { return kv.second.is_zero(); });
  return p;
}

Rational rational_pow(const Rational& base, int n) {
  Rational out = 1;
  const Rational b = n >= 0 ? base : Rational(1) / base;
  for (int i = 0; i < std::abs(n); ++i) out *= b;
  return out;
}

}  // namespace

LaxSystem lax_pair(const EquationPtr& eqp) {
  const EquationDef& eq = *eqp;
  LaxSystem lax;
  lax.eq = eqp;
  lax.psi = Atom::field("Psi", MultiIndex(eq.vars.arity()));
  const Poly psi = Poly::atom(lax.psi);
  const Poly phi = Poly::atom(eq.inverse_atom()) * psi;
  const std::size_t da = eq.slots[0].div_var;
  const std::size_t db = eq.slots[1].div_var;

  lax.relation_vars = {db, da};
  lax.relations[0] = pruned({{0, total_derivative(phi, db, eq.vars)}, {1, -covariant_derivative(phi, eq, 0)}});
  lax.relations[1] = pruned({{0, total_derivative(phi, da, eq.vars)}, {1, covariant_derivative(phi, eq, 1)}});

  const LambdaPoly d1 = map_coefficients(lax.relations[0], [&](const Poly& c) { return total_derivative(c, da, eq.vars); });
  const LambdaPoly d2 = map_coefficients(lax.relations[1], [&](const Poly& c) { return total_derivative(c, db, eq.vars); });
  lax.cross_residue = lambda_add(lambda_add({}, d1, -1), d2, 1);

  const LambdaPoly c1 = map_coefficients(lax.relations[0], [&](const Poly& c) { return covariant_derivative(c, eq, 1); });
  const LambdaPoly c2 = map_coefficients(lax.relations[1], [&](const Poly& c) { return covariant_derivative(c, eq, 0); });
  lax.covariant_residue = lambda_add(c1, c2);

  lax.symmetry = symmetry_condition(eq, psi);
  lax.field_commutator = commutator(field_equation_residual(eq), phi);

  lax.cross_matches = lax.cross_residue == pruned({{1, lax.symmetry}});
  lax.covariant_matches = lax.covariant_residue == pruned({{0, lax.symmetry - lax.field_commutator}});
  const auto it = lax.covariant_residue.find(0);
  const Poly zeroth = it == lax.covariant_residue.end() ? Poly{} : it->second;
  lax.covariant_on_shell = reduce_mod_field_equation(zeroth - lax.symmetry, eq);
  return lax;
}

LaurentSeries laurent_assemble(const std::map<int, Characteristic>& charges, const Rational& lambda) {
  if (sgn(lambda) == 0) throw Error(ErrorCode::ZeroLambda, "spectral parameter must be nonzero");
  if (charges.empty()) throw Error(ErrorCode::EmptyWindow, "no charges to assemble");
  LaurentSeries s;
  s.n_min = charges.begin()->first;
  s.n_max = charges.rbegin()->first;
  if (static_cast<std::size_t>(s.n_max - s.n_min + 1) != charges.size()) {
    throw Error(ErrorCode::EmptyWindow, "charge window has gaps");
  }
  s.lambda = lambda;
  s.charges = charges;
  Poly psi;
  bool closed = true;
  for (const auto& [n, q] : charges) {
    if (!q.is_closed()) {
      closed = false;
      break;
    }
    psi += rational_pow(lambda, n) * q.closed();
  }
  if (closed) s.psi = psi;
  return s;
}

std::array<LambdaPoly, 2> truncation_residual(const EquationDef& eq,
                                              const std::map<int, Characteristic>& charges) {
  ShellReducer red(eq);
  const std::size_t da = eq.slots[0].div_var;
  const std::size_t db = eq.slots[1].div_var;
  std::array<LambdaPoly, 2> out;
  for (const auto& [n, q] : charges) {
    if (!q.is_closed()) throw std::invalid_argument("truncation_residual needs closed-form charges");
    const Poly phi = Poly::atom(eq.inverse_atom()) * q.closed();
    out[0] = lambda_add(out[0], {{n, total_derivative(phi, db, eq.vars)}});
    out[0] = lambda_add(out[0], {{n + 1, covariant_derivative(phi, eq, 0)}}, -1);
    out[1] = lambda_add(out[1], {{n, total_derivative(phi, da, eq.vars)}});
    out[1] = lambda_add(out[1], {{n + 1, covariant_derivative(phi, eq, 1)}});
  }
  for (auto& rel : out) rel = map_coefficients(rel, [&](const Poly& c) { return red.on_shell(c); });
  return out;
}

}  // namespace laxkit
