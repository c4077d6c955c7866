#include "laxkit/errors.hpp"
#include "laxkit/recursion.hpp"

#include <doctest.h>

#include <algorithm>

using namespace laxkit;

namespace {

Poly P(const EquationPtr& eq, std::string_view s) { return parse_sexpr(s, eq->vars).to_poly(); }

NamedCharacteristic seed(const EquationPtr& eq, std::string_view name) {
  for (const auto& s : seed_characteristics(*eq)) {
    if (s.name == name) return s;
  }
  FAIL("no seed ", name);
  return {};
}

Characteristic closed(const Poly& p, int index = 0) { return Characteristic{index, p, "test"}; }

Poly step(const EquationPtr& eq, const Poly& q, Direction d) {
  const IntegrationResult r = integrate_bt_symbolic(bt_step(eq, closed(q), d));
  REQUIRE(r.characteristic.is_closed());
  return r.characteristic.closed();
}

// Relation for `var` solved as Q_var = Q u^-1 u_var + source.
void check_relation(const EquationPtr& eq, const ImplicitSystem& sys, std::string_view var, std::string_view source) {
  const std::size_t v = eq->vars.require(var);
  const Poly conn = Poly::word({eq->inverse_atom(), eq->field_atom(MultiIndex::unit(eq->vars.arity(), v))});
  const auto it = std::find_if(sys.relations.begin(), sys.relations.end(), [&](const auto& r) { return r.var == v; });
  REQUIRE(it != sys.relations.end());
  CHECK(it->left.is_zero());
  CHECK(it->right == conn);
  CHECK(it->source == P(eq, source));
}

}  // namespace

TEST_CASE("chiral forward step from gM gives g[X, M]") {
  const EquationPtr eq = chiral_equation();
  CHECK(step(eq, P(eq, "(* (field g) (param M))"), Direction::Forward) ==
        P(eq, "(* (field g) (comm (pot X) (param M)))"));
}

TEST_CASE("chiral backward step from gM is homogeneous: Lambda g") {
  const EquationPtr eq = chiral_equation();
  const IntegrationResult r = integrate_bt_symbolic(bt_step(eq, closed(P(eq, "(* (field g) (param M))")), Direction::Backward));
  CHECK(r.homogeneous);
  REQUIRE(r.characteristic.is_closed());
  CHECK(r.characteristic.closed() == P(eq, "(* (param Lambda) (field g))"));
}

TEST_CASE("SDYM steps from J_y") {
  const EquationPtr eq = sdym_equation();
  CHECK(step(eq, P(eq, "(field J y)"), Direction::Forward) == P(eq, "(* (field J) (pot X y))"));
  CHECK(step(eq, P(eq, "(field J y)"), Direction::Backward) == P(eq, "(field J zbar)"));
}

TEST_CASE("chiral backward from Lambda g is an implicit system") {
  const EquationPtr eq = chiral_equation();
  const BTSystem sys = bt_step(eq, closed(P(eq, "(* (param Lambda) (field g))"), -1), Direction::Backward);
  CHECK(sys.unknown_level == -2);
  CHECK(sys.compatibility_residue.is_zero());
  const ImplicitSystem imp = implicit_from_bt(sys);
  // Q_t - Q g^-1 g_t = g (g^-1 Lambda g)_x and Q_x - Q g^-1 g_x = -g (g^-1 Lambda g)_t.
  check_relation(eq, imp, "t", "(+ (* (param Lambda) (field g x)) (scale -1 (* (field g x) (finv g) (param Lambda) (field g))))");
  check_relation(eq, imp, "x", "(+ (scale -1 (* (param Lambda) (field g t))) (* (field g t) (finv g) (param Lambda) (field g)))");
}

TEST_CASE("a non-symmetry has an incompatible BT system") {
  const EquationPtr eq = chiral_equation();
  try {
    bt_step(eq, closed(P(eq, "(param M)")), Direction::Forward);
    FAIL("expected IncompatibleSystem");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IncompatibleSystem);
  }
}

TEST_CASE("chiral hierarchy from gM on [-1, 1]") {
  const EquationPtr eq = chiral_equation();
  const Hierarchy h = generate_hierarchy(eq, seed(eq, "gM"), -1, 1);
  REQUIRE(h.levels.size() == 3);
  for (int n = -1; n <= 1; ++n) {
    CHECK(h.levels.at(n).status == LevelStatus::Closed);
    CHECK(h.levels.at(n).symbolic->holds);
  }
  CHECK(h.levels.at(-1).q->closed() == P(eq, "(* (param Lambda) (field g))"));
  CHECK(h.levels.at(0).q->closed() == P(eq, "(* (field g) (param M))"));
  CHECK(h.levels.at(1).q->closed() == P(eq, "(* (field g) (comm (pot X) (param M)))"));
}

TEST_CASE("hierarchy stops at the first implicit level") {
  const EquationPtr eq = chiral_equation();
  const Hierarchy h = generate_hierarchy(eq, seed(eq, "gM"), -3, 0);
  CHECK(h.levels.at(-2).status == LevelStatus::Implicit);
  CHECK(h.levels.at(-3).status == LevelStatus::NotReached);
  CHECK_FALSE(h.levels.at(-2).numeric);  // no verifier supplied
}

TEST_CASE("SDYM hierarchy from J_y on [-1, 1]") {
  const EquationPtr eq = sdym_equation();
  const Hierarchy h = generate_hierarchy(eq, seed(eq, "J_y"), -1, 1);
  CHECK(h.levels.at(-1).q->closed() == P(eq, "(field J zbar)"));
  CHECK(h.levels.at(0).q->closed() == P(eq, "(field J y)"));
  CHECK(h.levels.at(1).q->closed() == P(eq, "(* (field J) (pot X y))"));
}

TEST_CASE("coordinate seeds are flagged degenerate") {
  const EquationPtr eq = chiral_equation();
  for (const char* s : {"g_t", "g_x"}) {
    const Hierarchy h = generate_hierarchy(eq, seed(eq, s), 0, 1);
    INFO(s);
    CHECK(h.levels.at(1).degenerate);
    CHECK_FALSE(h.levels.at(1).note.empty());
  }
}

TEST_CASE("window must contain the seed") {
  const EquationPtr eq = chiral_equation();
  CHECK_THROWS_AS(generate_hierarchy(eq, seed(eq, "gM"), 1, 2), std::invalid_argument);
}

TEST_CASE("Lax pair identities") {
  for (const EquationPtr& eq : {chiral_equation(), sdym_equation()}) {
    INFO(eq->name);
    const LaxSystem lax = lax_pair(eq);
    CHECK(lax.cross_matches);
    CHECK(lax.covariant_matches);
    CHECK(lax.covariant_on_shell.is_zero());
    CHECK(lax.relation_vars[0] == eq->slots[1].div_var);
    CHECK(lax.relation_vars[1] == eq->slots[0].div_var);
    // The cross residue is lambda S(Psi): only the power 1 survives.
    LambdaPoly expected{{1, lax.symmetry}};
    CHECK(lambda_is_zero(lambda_add(lax.cross_residue, expected, -1)));
  }
}

TEST_CASE("Laurent assembly") {
  const EquationPtr eq = chiral_equation();
  const Poly gm = P(eq, "(* (field g) (param M))");
  const Poly lg = P(eq, "(* (param Lambda) (field g))");
  const Poly gx = P(eq, "(* (field g) (comm (pot X) (param M)))");

  const LaurentSeries one = laurent_assemble({{0, closed(gm)}}, 1);
  REQUIRE(one.psi);
  CHECK(*one.psi == gm);

  const LaurentSeries three = laurent_assemble({{-1, closed(lg, -1)}, {0, closed(gm)}, {1, closed(gx, 1)}}, Rational(1, 2));
  REQUIRE(three.psi);
  CHECK(*three.psi == Rational(2) * lg + gm + Rational(1, 2) * gx);

  for (auto [charges, lambda, code] :
       {std::tuple{std::map<int, Characteristic>{}, Rational(1), ErrorCode::EmptyWindow},
        std::tuple{std::map<int, Characteristic>{{0, closed(gm)}, {2, closed(gm, 2)}}, Rational(1), ErrorCode::EmptyWindow},
        std::tuple{std::map<int, Characteristic>{{0, closed(gm)}}, Rational(0), ErrorCode::ZeroLambda}}) {
    try {
      laurent_assemble(charges, lambda);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == code);
    }
  }
}

TEST_CASE("truncated series leaves only the end powers") {
  const EquationPtr eq = chiral_equation();
  const Hierarchy h = generate_hierarchy(eq, seed(eq, "gM"), -1, 1);
  std::map<int, Characteristic> charges;
  for (const auto& [n, l] : h.levels) charges.emplace(n, *l.q);
  for (const LambdaPoly& rel : truncation_residual(*eq, charges)) {
    for (const auto& [power, coef] : rel) {
      INFO("power ", power);
      CHECK((coef.is_zero() || power == -1 || power == 2));
    }
  }
}
