#include "laxkit/calculus.hpp"
#include "laxkit/equations.hpp"
#include "laxkit/errors.hpp"
#include "laxkit/exact_eval.hpp"
#include "taylor.hpp"

#include <doctest.h>

#include <random>

using namespace laxkit;

namespace {

const EquationDef& chiral() { return *chiral_equation(); }
const EquationDef& sdym() { return *sdym_equation(); }

Poly P(const EquationDef& eq, std::string_view s) { return parse_sexpr(s, eq.vars).to_poly(); }
Poly C(std::string_view s) { return P(chiral(), s); }

double max_abs(const RationalMatrix& m) {
  double out = 0;
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = 0; c < m.dim(); ++c) out = std::max(out, std::abs(m(r, c).get_d()));
  }
  return out;
}

}  // namespace

TEST_CASE("total derivative of the inverse field") {
  CHECK(total_derivative(C("(finv g)"), 1, chiral().vars) == C("(scale -1 (* (finv g) (field g x) (finv g)))"));
}

TEST_CASE("parameters and the identity are constant") {
  CHECK(total_derivative(C("(param M)"), 1, chiral().vars).is_zero());
  CHECK(total_derivative(C("I"), 0, chiral().vars).is_zero());
  CHECK(total_derivative(C("(coord x)"), 1, chiral().vars) == C("I"));
  CHECK(total_derivative(C("(coord x)"), 0, chiral().vars).is_zero());
}

TEST_CASE("D_t of a commutator with a constant matrix") {
  const Poly a = C("(* (finv g) (field g t))");
  const Poly lhs = total_derivative(commutator(a, C("(param M)")), 0, chiral().vars);
  const Poly rhs = commutator(total_derivative(a, 0, chiral().vars), C("(param M)"));
  CHECK(lhs == rhs);
}

TEST_CASE("total derivatives commute and follow multi-indices") {
  const Poly e = C("(* (finv g) (field g t) (param M) (field g x))");
  const Poly tx = total_derivative(total_derivative(e, 0, chiral().vars), 1, chiral().vars);
  const Poly xt = total_derivative(total_derivative(e, 1, chiral().vars), 0, chiral().vars);
  CHECK(tx == xt);
  CHECK(total_derivative(e, MultiIndex{1, 1}, chiral().vars) == tx);
}

TEST_CASE("derivative order overflow") {
  Poly p = C("(field g)");
  try {
    for (int k = 0; k <= chiral().vars.max_order(); ++k) p = total_derivative(p, 0, chiral().vars);
    FAIL("expected DerivativeOrderOverflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DerivativeOrderOverflow);
  }
}

TEST_CASE("Frechet derivative basics") {
  const Poly q = C("(field Q)");
  const FrechetContext ctx = frechet_context(chiral(), q);
  CHECK(frechet_derivative(C("(field g)"), ctx) == q);
  CHECK(frechet_derivative(C("(field g t x)"), ctx) == C("(field Q t x)"));
  CHECK(frechet_derivative(C("(* (coord x) I)"), ctx).is_zero());
  CHECK(frechet_derivative(C("(param M)"), ctx).is_zero());
  try {
    frechet_derivative(C("(field h)"), ctx);
    FAIL("expected UnboundField");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnboundField);
  }
}

TEST_CASE("Frechet derivative of g^-1 g_t, with a first-order expansion oracle") {
  const Poly q = C("(field Q)");
  const Poly image = frechet_derivative(C("(* (finv g) (field g t))"), frechet_context(chiral(), q));
  CHECK(image == C("(+ (scale -1 (* (finv g) (field Q) (finv g) (field g t))) (* (finv g) (field Q t)))"));

  // d/de of (g + eQ)^-1 (g_t + eQ_t) at e = 0, by a symmetric difference
  // quotient in exact arithmetic; the error is O(e^2).
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const RationalMatrix g = testing::random_invertible(3, rng);
    const RationalMatrix gt = testing::random_matrix(3, rng);
    const RationalMatrix qm = testing::random_matrix(3, rng);
    const RationalMatrix qt = testing::random_matrix(3, rng);
    const Rational eps(1, 1000000);
    auto f = [&](const Rational& e) { return *(g + e * qm).inverse() * (gt + e * qt); };
    const RationalMatrix quotient = Rational(1, 2) / eps * (f(eps) - f(-eps));
    ExactBinding b(3);
    b.bind(Atom::field("g", MultiIndex(2)), g);
    b.bind(Atom::field("g", MultiIndex{1, 0}), gt);
    b.bind(Atom::field("Q", MultiIndex(2)), qm);
    b.bind(Atom::field("Q", MultiIndex{1, 0}), qt);
    const RationalMatrix symbolic = evaluate(image, b);
    CHECK(max_abs(symbolic - quotient) < 1e-6 * (1 + max_abs(symbolic)));
  }
}

TEST_CASE("Frechet and total derivatives commute") {
  const FrechetContext ctx = frechet_context(chiral(), C("(* (field g) (param M))"));
  const Poly e = C("(* (finv g) (field g x) (field g t))");
  CHECK(frechet_derivative(total_derivative(e, 0, chiral().vars), ctx) ==
        total_derivative(frechet_derivative(e, ctx), 0, chiral().vars));
}

TEST_CASE("covariant derivatives") {
  CHECK(covariant_derivative(C("(param M)"), chiral(), 0) == commutator(C("(* (finv g) (field g t))"), C("(param M)")));

  // Pure-gauge connections: D_t a_x - D_x a_t + [a_t, a_x] = 0, hence
  // A_t(a_x) - A_x(a_t) = [a_t, a_x] rather than 0.
  const Poly a_t = C("(* (finv g) (field g t))");
  const Poly a_x = C("(* (finv g) (field g x))");
  CHECK((total_derivative(a_x, 0, chiral().vars) - total_derivative(a_t, 1, chiral().vars) + commutator(a_t, a_x))
            .is_zero());
  CHECK(covariant_derivative(a_x, chiral(), 0) - covariant_derivative(a_t, chiral(), 1) == commutator(a_t, a_x));
  CHECK(curvature_residue(chiral(), C("(field phi)")).is_zero());

  const Poly a = P(sdym(), "(* (finv J) (field J y))");
  CHECK(covariant_derivative(a, sdym(), 0) == total_derivative(a, sdym().vars.require("y"), sdym().vars));

  const JetExpr m = parse_sexpr("(param M)", chiral().vars);
  CHECK(covariant_derivative(m, chiral(), "x").to_poly() == covariant_derivative(C("(param M)"), chiral(), 1));
  try {
    covariant_derivative(m, chiral(), "w");
    FAIL("expected UnknownConnection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownConnection);
  }
}

TEST_CASE("reduction modulo the field equation") {
  CHECK(reduce_mod_field_equation(field_equation_residual(chiral()), chiral()).is_zero());
  CHECK(reduce_mod_field_equation(field_equation_residual(sdym()), sdym()).is_zero());
  CHECK(on_shell(symmetry_condition(chiral(), C("(field g t)")), chiral()).is_zero());
  CHECK(on_shell(symmetry_condition(chiral(), C("(* (field g) (param M))")), chiral()).is_zero());
  // Off-shell quantities survive the reduction.
  CHECK_FALSE(reduce_mod_field_equation(C("(field g t t)"), chiral()).is_zero());
}

TEST_CASE("solved form prefers the evolution variable") {
  const SolvedForm s = derive_solved_form(field_equation_residual(chiral()), "g", chiral().vars, 0);
  CHECK(s.field == "g");
  CHECK(s.leading == MultiIndex{2, 0});
  // F = 0 solved for g_tt: g_tt = g_t g^-1 g_t - g_xx + g_x g^-1 g_x.
  const Poly rhs = C("(+ (* (field g t) (finv g) (field g t)) (scale -1 (field g x x)) (* (field g x) (finv g) (field g x)))");
  CHECK(s.rhs == rhs);
}

TEST_CASE("word weight counts derivative orders") {
  CHECK(word_weight({Atom::field("g", MultiIndex{1, 1}), Atom::inverse_field("g"), Atom::potential("X", MultiIndex{0, 1})}) == 3);
  CHECK(word_weight({Atom::param("M")}) == 0);
}
