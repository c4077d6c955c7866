#include "laxkit/errors.hpp"
#include "laxkit/exact_eval.hpp"
#include "laxkit/expr.hpp"
#include "taylor.hpp"

#include <doctest.h>

#include <random>

using namespace laxkit;

namespace {

const VarSpace& tx() {
  static const VarSpace vars({"t", "x"});
  return vars;
}

Poly P(std::string_view s) { return parse_sexpr(s, tx()).to_poly(); }

}  // namespace

TEST_CASE("normalize cancels u u^-1 in either order") {
  CHECK(P("(+ (* (field g) (finv g)) (scale -1 I))").is_zero());
  CHECK(P("(+ (* (finv g) (field g)) (scale -1 I))").is_zero());
  CHECK(P("(* (field g) (param M) (finv g))") == P("(* (field g) (param M) (finv g))"));
  CHECK_FALSE(P("(* (field g) (param M) (finv g))") == P("(param M)"));
}

TEST_CASE("commutator is antisymmetric") {
  CHECK(P("(+ (comm (param A) (param B)) (comm (param B) (param A)))").is_zero());
  CHECK(P("(comm (param A) (param A))").is_zero());
  CHECK(P("(comm (param A) (param B))") == P("(+ (* (param A) (param B)) (scale -1 (* (param B) (param A))))"));
}

TEST_CASE("g^-1 g_t g^-1 g - g^-1 g_t vanishes, with a random-matrix oracle") {
  const JetExpr lhs = parse_sexpr("(* (finv g) (field g t) (finv g) (field g))", tx());
  const JetExpr rhs = parse_sexpr("(* (finv g) (field g t))", tx());
  CHECK(is_zero(lhs - rhs));
  CHECK(equivalent(lhs, rhs));

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    ExactBinding b(3);
    b.bind(Atom::field("g", MultiIndex(2)), testing::random_invertible(3, rng));
    b.bind(Atom::field("g", MultiIndex{1, 0}), testing::random_matrix(3, rng));
    CHECK(evaluate(lhs, b) == evaluate(rhs, b));
  }
}

TEST_CASE("normal form is unique and idempotent") {
  const JetExpr e = parse_sexpr("(* (+ (param A) (field g x)) (comm (param B) (+ I (field g t))))", tx());
  const JetExpr n = normalize(e);
  CHECK(normalize(n) == n);
  CHECK(n.to_poly() == e.to_poly());
  CHECK(equivalent(e, n));
  CHECK(normalize(JetExpr()) == JetExpr::from_poly(Poly()));
}

TEST_CASE("mixed partials are one atom") {
  CHECK(P("(field g x t)") == P("(field g t x)"));
  CHECK(MultiIndex{1, 2} == MultiIndex{1, 0}.incremented(1).incremented(1));
  CHECK(MultiIndex{2, 1}.total() == 3);
  CHECK(MultiIndex{2, 1}.dominates(MultiIndex{1, 1}));
  CHECK_FALSE(MultiIndex{2, 0}.dominates(MultiIndex{1, 1}));
}

TEST_CASE("coordinates are central") {
  CHECK(P("(* (param A) (coord x) (param B))") == P("(* (coord x) (param A) (param B))"));
}

TEST_CASE("substitute replaces matching atoms only") {
  const JetExpr e = parse_sexpr("(pot X x)", tx());
  const JetExpr r = parse_sexpr("(* (finv g) (field g t))", tx());
  CHECK(equivalent(substitute(e, {{Atom::potential("X", MultiIndex{0, 1}), r}}), r));

  const JetExpr untouched = parse_sexpr("(* (field g) (param M))", tx());
  CHECK(substitute(untouched, {{Atom::potential("X", MultiIndex{0, 1}), r}}) == untouched);

  const Poly p = P("(+ (pot X x) (* (param M) (pot X x)))");
  const Poly s = substitute(p, {{Atom::potential("X", MultiIndex{0, 1}), r.to_poly()}});
  CHECK(s == P("(+ (* (finv g) (field g t)) (* (param M) (finv g) (field g t)))"));
}

TEST_CASE("rewriter detects cycles") {
  const Atom a = Atom::param("A");
  const Atom b = Atom::param("B");
  AtomRewriter rw([&](const Atom& x) -> std::optional<Poly> {
    if (x == a) return Poly::atom(b);
    if (x == b) return Poly::atom(a);
    return std::nullopt;
  });
  try {
    rw.apply(Poly::atom(a));
    FAIL("expected NonTerminating");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonTerminating);
  }
}

TEST_CASE("inverse nodes") {
  CHECK(P("(inv (field g))") == P("(finv g)"));
  CHECK(P("(inv (finv g))") == P("(field g)"));
  CHECK(P("(inv I)") == P("I"));
  CHECK(P("(inv (scale 2 (field g)))") == P("(scale 1/2 (finv g))"));
  try {
    P("(inv (field g t))");
    FAIL("expected InvalidInverse");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidInverse);
  }
}

TEST_CASE("s-expression round trip") {
  for (const char* s : {"(* (field g) (comm (pot X) (param M)))", "(+ (field g t x) (scale -3/4 (dpot X t)))",
                        "(* (coord t) (finv g))", "I"}) {
    CHECK(to_sexpr(parse_sexpr(s, tx()), tx()) == s);
  }
  const Poly p = P("(+ (* (field g) (param M)) (scale 2 (field g x x)))");
  CHECK(parse_sexpr(to_sexpr(p, tx()), tx()).to_poly() == p);
}

TEST_CASE("s-expression parse errors") {
  for (const char* bad : {"(frob g)", "(field g w)", "(comm (param A))", "(scale x (param A))", "(param A",
                          "(param A) extra", "g"}) {
    try {
      parse_sexpr(bad, tx());
      FAIL("expected ParseError for ", bad);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
    }
  }
}

TEST_CASE("pretty printing") {
  CHECK(pretty(P("(* (finv g) (field g t))"), tx()) == "g^-1 g_t");
  CHECK(pretty(Poly(), tx()) == "0");
  CHECK(pretty(P("(scale -1/2 (field g x t))"), tx()) == "-1/2 g_tx");
}

TEST_CASE("exact rational inverse") {
  RationalMatrix m(2);
  m(0, 0) = 2;
  m(0, 1) = 1;
  m(1, 0) = 1;
  m(1, 1) = 1;
  const auto inv = m.inverse();
  REQUIRE(inv);
  CHECK(m * *inv == RationalMatrix::identity(2));
  RationalMatrix singular(2);
  singular(0, 0) = 1;
  singular(0, 1) = 2;
  singular(1, 0) = 2;
  singular(1, 1) = 4;
  CHECK_FALSE(singular.inverse());
}

TEST_CASE("unbound atom in exact evaluation") {
  ExactBinding b(2);
  try {
    evaluate(P("(param M)"), b);
    FAIL("expected UnboundAtom");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnboundAtom);
  }
}

TEST_CASE("bindings are stored in canonical form") {
  // 2/2 entered raw compares unequal to 1 under mpq unless canonicalized.
  ExactBinding b(2);
  const Atom t = P("(coord t)").terms().begin()->first.front();
  b.bind(t, RationalMatrix::scalar(2, Rational(2, 2)));
  const JetExpr e = parse_sexpr("(+ (coord t) (inv (scale 1/2 (field g))))", tx());
  RationalMatrix g(2);
  g(0, 0) = 1;
  g(1, 1) = 2;
  b.bind(Atom::field("g", MultiIndex(2)), g);
  CHECK(evaluate(e, b) == evaluate(e.to_poly(), b));
  CHECK(b.value(t) == RationalMatrix::identity(2));
}
