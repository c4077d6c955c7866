#include "property_checks.hpp"

#include "taylor.hpp"

#include "laxkit/calculus.hpp"
#include "laxkit/equations.hpp"

#include <sstream>

namespace laxkit::testing {

namespace {

const EquationDef& pick_equation(std::size_t i) {
  return i % 2 == 0 ? *chiral_equation() : *sdym_equation();
}

MultiIndex random_jet_index(std::mt19937_64& rng, std::size_t arity, int lo, int hi) {
  std::uniform_int_distribution<int> total(lo, hi);
  std::uniform_int_distribution<std::size_t> var(0, arity - 1);
  MultiIndex mu(arity);
  const int k = total(rng);
  for (int i = 0; i < k; ++i) mu = mu.incremented(var(rng));
  return mu;
}

JetExpr random_leaf(std::mt19937_64& rng, const EquationDef& eq, const RandomExprOptions& opts) {
  const std::size_t arity = eq.vars.arity();
  std::uniform_int_distribution<int> pick(0, opts.potentials ? 8 : 7);
  switch (pick(rng)) {
    case 0: return JetExpr::atom(eq.field_atom());
    case 1: return JetExpr::atom(eq.inverse_atom());
    case 2:
    case 3: return JetExpr::atom(eq.field_atom(random_jet_index(rng, arity, 1, opts.max_leaf_order)));
    case 4: return JetExpr::atom(Atom::param("M"));
    case 5: return JetExpr::atom(Atom::param("Lambda"));
    case 6: {
      std::uniform_int_distribution<std::size_t> var(0, arity - 1);
      return JetExpr::atom(Atom::coordinate(eq.vars.name(var(rng))));
    }
    case 7: return JetExpr::atom(Atom::identity());
    default: return JetExpr::atom(Atom::potential(eq.potential.name, random_jet_index(rng, arity, 0, 1)));
  }
}

Rational random_scalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 3);
  int n = num(rng);
  if (n == 0) n = 1;
  Rational c(n, den(rng));
  c.canonicalize();
  return c;
}

JetExpr random_tree(std::mt19937_64& rng, const EquationDef& eq, const RandomExprOptions& opts,
                    int depth) {
  std::uniform_int_distribution<int> coin(0, 9);
  if (depth <= 0 || coin(rng) < 3) {
    if (opts.inverse_nodes && coin(rng) == 0) {
      return JetExpr::inverse(JetExpr::scaled(random_scalar(rng), JetExpr::atom(eq.field_atom())));
    }
    return random_leaf(rng, eq, opts);
  }
  std::uniform_int_distribution<int> kind(0, 3);
  switch (kind(rng)) {
    case 0: {
      std::uniform_int_distribution<int> width(2, 3);
      std::vector<JetExpr> terms;
      for (int i = width(rng); i > 0; --i) terms.push_back(random_tree(rng, eq, opts, depth - 1));
      return JetExpr::sum(std::move(terms));
    }
    case 1:
      return JetExpr::product({random_tree(rng, eq, opts, depth - 1), random_tree(rng, eq, opts, depth - 1)});
    case 2: return JetExpr::scaled(random_scalar(rng), random_tree(rng, eq, opts, depth - 1));
    default:
      return JetExpr::commutator(random_tree(rng, eq, opts, depth - 1), random_tree(rng, eq, opts, depth - 1));
  }
}

struct Recorder {
  PropertyOutcome out;

  void record(bool ok, const std::string& detail) {
    ++out.cases;
    if (ok) return;
    if (out.failures++ == 0) out.first_failure = "case " + std::to_string(out.cases - 1) + ": " + detail;
  }

  template <typename Fn>
  void run(Fn&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      record(false, std::string("exception: ") + e.what());
    }
  }
};

Poly generic_q(const EquationDef& eq) { return Poly::atom(eq.placeholder_atom()); }

// --- Taylor evaluation ------------------------------------------------------

// Series of every atom kind the random expressions use, for a field series G
// (and an optional variation added along the last variable).
struct SeriesEnv {
  const EquationDef* eq = nullptr;
  std::size_t vars = 0;
  int order = 0;
  std::size_t n = 0;
  std::map<std::string, Taylor> fields;
  std::map<std::string, RationalMatrix> params;
  std::map<std::string, Rational> coords;
  std::map<Atom, Taylor> cache;

  const Taylor& atom(const Atom& a) {
    if (auto it = cache.find(a); it != cache.end()) return it->second;
    Taylor t(vars, order, n);
    switch (a.kind) {
      case AtomKind::Identity: t = Taylor::constant(vars, order, RationalMatrix::identity(n)); break;
      case AtomKind::Param: t = Taylor::constant(vars, order, params.at(a.name)); break;
      case AtomKind::Coordinate:
        t = Taylor::constant(vars, order, RationalMatrix::scalar(n, coords.at(a.name))) +
            Taylor::coordinate(vars, order, n, eq->vars.require(a.name));
        break;
      case AtomKind::InverseField: t = fields.at(a.name).inverse(); break;
      case AtomKind::Field: {
        t = fields.at(a.name);
        for (std::size_t v = 0; v < eq->vars.arity(); ++v) {
          for (int k = 0; k < a.index[v]; ++k) t = t.derivative(v);
        }
        break;
      }
      default: throw std::invalid_argument("SeriesEnv: unsupported atom kind");
    }
    return cache.emplace(a, std::move(t)).first->second;
  }

  Taylor eval(const Poly& p) {
    Taylor out(vars, order, n);
    for (const auto& [w, c] : p.terms()) {
      Taylor term = Taylor::constant(vars, order, RationalMatrix::scalar(n, c));
      for (const Atom& a : w) term = term * atom(a);
      out += term;
    }
    return out;
  }

  /// Pointwise binding: jets of the stored series with the variation off.
  ExactBinding binding(const std::set<Atom>& atoms) const {
    ExactBinding b(n);
    for (const Atom& a : atoms) {
      switch (a.kind) {
        case AtomKind::Param: b.bind(a, params.at(a.name)); break;
        case AtomKind::Coordinate: b.bind(a, RationalMatrix::scalar(n, coords.at(a.name))); break;
        case AtomKind::Field: b.bind(a, fields.at(a.name).jet(a.index)); break;
        case AtomKind::InverseField: b.bind(Atom::field(a.name, MultiIndex(eq->vars.arity())), fields.at(a.name).value()); break;
        default: break;
      }
    }
    return b;
  }
};

SeriesEnv make_env(const EquationDef& eq, std::size_t vars, int order, std::size_t n, std::mt19937_64& rng) {
  SeriesEnv env;
  env.eq = &eq;
  env.vars = vars;
  env.order = order;
  env.n = n;
  env.params["M"] = random_matrix(n, rng);
  env.params["Lambda"] = random_matrix(n, rng);
  for (const auto& name : eq.vars.names()) env.coords[name] = random_scalar(rng);
  return env;
}

std::string show(const RationalMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) os << (i + j ? " " : "") << m(i, j);
  }
  os << "]";
  return os.str();
}

// Covariant derivative and field equation built directly on series.
Taylor series_connection(const EquationDef& eq, std::size_t slot, const Taylor& g) {
  return g.inverse() * g.derivative(eq.slots[slot].conn_var);
}

Taylor series_covariant(const EquationDef& eq, std::size_t slot, const Taylor& g, const Taylor& phi) {
  return phi.derivative(eq.slots[slot].conn_var) + commutator(series_connection(eq, slot, g), phi);
}

Taylor series_field_equation(const EquationDef& eq, const Taylor& g) {
  return series_connection(eq, 0, g).derivative(eq.slots[0].div_var) +
         series_connection(eq, 1, g).derivative(eq.slots[1].div_var);
}

Taylor series_symmetry(const EquationDef& eq, const Taylor& g, const Taylor& q) {
  const Taylor k = g.inverse() * q;
  return series_covariant(eq, 0, g, k).derivative(eq.slots[0].div_var) +
         series_covariant(eq, 1, g, k).derivative(eq.slots[1].div_var);
}

// Oracle cases. Each returns an empty string on success.

std::string total_derivative_oracle(std::mt19937_64& rng) {
  const EquationDef& eq = *chiral_equation();
  RandomExprOptions opts;
  opts.max_depth = 2;
  const Poly e = random_tree(rng, eq, opts, opts.max_depth).to_poly();
  std::uniform_int_distribution<std::size_t> var(0, eq.vars.arity() - 1);
  const std::size_t v = var(rng);
  SeriesEnv env = make_env(eq, 2, 3, 2, rng);
  env.fields.insert_or_assign(eq.field, random_polynomial(2, 3, 2, 3, rng));
  const RationalMatrix oracle = env.eval(e).derivative(v).value();
  const Poly de = total_derivative(e, v, eq.vars);
  const RationalMatrix engine = evaluate(de, env.binding(atoms_of(de)));
  return oracle == engine ? "" : "D_" + eq.vars.name(v) + " of " + pretty(e, eq.vars) + ": engine " + show(engine) + " oracle " + show(oracle);
}

std::string frechet_oracle(std::mt19937_64& rng) {
  const EquationDef& eq = *chiral_equation();
  RandomExprOptions opts;
  opts.max_depth = 2;
  const Poly e = random_tree(rng, eq, opts, opts.max_depth).to_poly();
  // The last series variable is the variation parameter.
  SeriesEnv env = make_env(eq, 3, 3, 2, rng);
  const Taylor g = random_polynomial(3, 3, 2, 3, rng).restrict_zero(2);
  const Taylor q = random_polynomial(3, 3, 2, 3, rng).restrict_zero(2);
  env.fields.insert_or_assign(eq.field, g + Taylor::coordinate(3, 3, 2, 2) * q);
  const RationalMatrix oracle = env.eval(e).derivative(2).value();
  const Poly de = frechet_derivative(e, frechet_context(eq, generic_q(eq)));
  SeriesEnv point = env;
  point.cache.clear();
  point.fields.insert_or_assign(eq.field, g);
  point.fields.insert_or_assign(eq.placeholder, q);
  const RationalMatrix engine = evaluate(de, point.binding(atoms_of(de)));
  return oracle == engine ? "" : "Delta of " + pretty(e, eq.vars) + ": engine " + show(engine) + " oracle " + show(oracle);
}

std::string catalog_on_shell_zero(std::size_t i, std::mt19937_64& rng) {
  const EquationDef& eq = pick_equation(i);
  const auto catalog = characteristic_catalog(eq);
  const auto& entry = catalog[(i / 2) % catalog.size()];
  const Poly raw = symmetry_condition(eq, entry.q.closed());
  const Poly raw_cov = symmetry_condition_covariant(eq, entry.q.closed());
  std::set<Atom> atoms = atoms_of(raw);
  for (const Atom& a : atoms_of(raw_cov)) atoms.insert(a);
  const ExactBinding b = solution_binding(eq, atoms, 3, rng);
  const RationalMatrix s1 = evaluate(raw, b);
  const RationalMatrix s2 = evaluate(raw_cov, b);
  if (!s1.is_zero()) return eq.name + " " + entry.name + ": S = " + show(s1) + " on the exact solution";
  if (!s2.is_zero()) return eq.name + " " + entry.name + ": covariant S = " + show(s2) + " on the exact solution";
  return "";
}

// The identity pieces are evaluated both by the engine (at exact jets of a
// random polynomial g and phi) and directly on series; the series value of
// the combination must vanish and each engine piece must match its series.
std::string identity_oracle(std::size_t i, std::mt19937_64& rng, bool operator_identity) {
  const EquationDef& eq = pick_equation(i);
  const std::size_t vars = eq.vars.arity();
  const int order = 3;
  const std::size_t n = 2;
  SeriesEnv env = make_env(eq, vars, order, n, rng);
  const Taylor g = random_polynomial(vars, order, n, 3, rng);
  const Taylor phi = random_polynomial(vars, order, n, 3, rng);
  env.fields.insert_or_assign(eq.field, g);
  env.fields.insert_or_assign("phi", phi);
  const Poly phip = Poly::atom(Atom::field("phi", MultiIndex(vars)));

  std::vector<std::pair<Poly, Taylor>> pieces;
  if (!operator_identity) {
    pieces.emplace_back(covariant_derivative(covariant_derivative(phip, eq, 0), eq, 1),
                        series_covariant(eq, 1, g, series_covariant(eq, 0, g, phi)));
    pieces.emplace_back(-covariant_derivative(covariant_derivative(phip, eq, 1), eq, 0),
                        Rational(-1) * series_covariant(eq, 0, g, series_covariant(eq, 1, g, phi)));
  } else {
    pieces.emplace_back(commutator(field_equation_residual(eq), phip),
                        commutator(series_field_equation(eq, g), phi));
    for (std::size_t s = 0; s < 2; ++s) {
      const std::size_t div = eq.slots[s].div_var;
      pieces.emplace_back(covariant_derivative(total_derivative(phip, div, eq.vars), eq, s),
                          series_covariant(eq, s, g, phi.derivative(div)));
      pieces.emplace_back(-total_derivative(covariant_derivative(phip, eq, s), div, eq.vars),
                          Rational(-1) * series_covariant(eq, s, g, phi).derivative(div));
    }
  }
  RationalMatrix total(n);
  Poly engine_total;
  for (const auto& [poly, series] : pieces) {
    const RationalMatrix oracle = series.value();
    const RationalMatrix engine = evaluate(poly, env.binding(atoms_of(poly)));
    if (engine != oracle) return eq.name + ": identity piece " + pretty(poly, eq.vars) + " disagrees with series";
    total += oracle;
    engine_total += poly;
  }
  const Poly asserted = operator_identity ? operator_identity_residue(eq, phip) : curvature_residue(eq, phip);
  if (!asserted.is_zero() || !engine_total.is_zero()) return eq.name + ": engine does not assert the identity";
  return total.is_zero() ? "" : eq.name + ": identity fails on series, value " + show(total);
}

// Frechet route to S against the covariant route, both on series with a
// generic variation, and the engine's S against the series value.
std::string symmetry_routes_oracle(std::size_t i, std::mt19937_64& rng) {
  const EquationDef& eq = pick_equation(i);
  const std::size_t vars = eq.vars.arity() + 1;
  const std::size_t eps = eq.vars.arity();
  const int order = 3;
  const std::size_t n = 2;
  const Taylor g = random_polynomial(vars, order, n, 3, rng).restrict_zero(eps);
  const Taylor q = random_polynomial(vars, order, n, 3, rng).restrict_zero(eps);
  const Taylor varied = g + Taylor::coordinate(vars, order, n, eps) * q;
  const RationalMatrix frechet = series_field_equation(eq, varied).derivative(eps).value();
  const RationalMatrix covariant = series_symmetry(eq, g, q).value();
  if (frechet != covariant) return eq.name + ": Frechet and covariant routes differ on series";

  SeriesEnv env = make_env(eq, vars, order, n, rng);
  env.fields.insert_or_assign(eq.field, g);
  env.fields.insert_or_assign(eq.placeholder, q);
  const Poly s = symmetry_condition(eq, generic_q(eq));
  const RationalMatrix engine = evaluate(s, env.binding(atoms_of(s)));
  if (engine != frechet) return eq.name + ": engine S disagrees with series";
  if (s != symmetry_condition_covariant(eq, generic_q(eq))) return eq.name + ": engine routes to S differ";
  return "";
}

}  // namespace

JetExpr random_expr(std::mt19937_64& rng, const EquationDef& eq, const RandomExprOptions& opts) {
  return random_tree(rng, eq, opts, opts.max_depth);
}

ExactBinding solution_binding(const EquationDef& eq, const std::set<Atom>& atoms, std::size_t n,
                              std::mt19937_64& rng) {
  const std::size_t arity = eq.vars.arity();
  // Chiral coordinates (t, x); SDYM lifts J(y, z, ybar, zbar) = g(y + ybar, z + zbar).
  auto chiral_index = [&](const MultiIndex& mu) {
    if (arity == 2) return mu;
    const int t = mu[eq.vars.require("y")] + mu[eq.vars.require("ybar")];
    const int x = mu[eq.vars.require("z")] + mu[eq.vars.require("zbar")];
    return MultiIndex{t, x};
  };
  int need = 1;
  for (const Atom& a : atoms) need = std::max(need, a.index.total());
  const ChiralSolution sol = nilpotent_solution(need, n, rng);

  ExactBinding b(n);
  std::set<Atom> all = atoms;
  all.insert(eq.field_atom());
  for (const Atom& a : all) {
    if (a.kind == AtomKind::Field && a.name == eq.field) {
      b.bind(a, sol.g.jet(chiral_index(a.index)));
    } else if (a.kind == AtomKind::Potential && a.name == eq.potential.name) {
      b.bind(a, sol.x.jet(chiral_index(a.index)));
    } else if (a.kind == AtomKind::Coordinate) {
      b.bind(a, RationalMatrix::scalar(n, random_scalar(rng)));
    } else if (a.kind == AtomKind::Param || a.kind == AtomKind::Field || a.kind == AtomKind::Potential ||
               a.kind == AtomKind::FrechetPotential) {
      b.bind(a, random_matrix(n, rng));
    }
  }
  return b;
}

PropertyOutcome check_idempotence(std::uint64_t seed, std::size_t cases) {
  Recorder r{{"normalize idempotence", 0, 0, {}}};
  std::mt19937_64 rng(seed);
  RandomExprOptions opts;
  opts.potentials = true;
  opts.inverse_nodes = true;
  for (std::size_t i = 0; i < cases; ++i) {
    r.run([&] {
      const EquationDef& eq = pick_equation(i);
      const JetExpr e = random_expr(rng, eq, opts);
      const JetExpr n1 = normalize(e);
      const JetExpr n2 = normalize(n1);
      r.record(n1 == n2 && n1.to_poly() == e.to_poly(), "normalize not idempotent on " + to_sexpr(e, eq.vars));
    });
  }
  return r.out;
}

PropertyOutcome check_distributivity(std::uint64_t seed, std::size_t cases) {
  Recorder r{{"ring laws", 0, 0, {}}};
  std::mt19937_64 rng(seed);
  RandomExprOptions opts;
  opts.max_depth = 2;
  opts.potentials = true;
  for (std::size_t i = 0; i < cases; ++i) {
    r.run([&] {
      const EquationDef& eq = pick_equation(i);
      const JetExpr a = random_expr(rng, eq, opts);
      const JetExpr b = random_expr(rng, eq, opts);
      const JetExpr c = random_expr(rng, eq, opts);
      const bool ok = equivalent((a + b) * c, a * c + b * c) && equivalent(c * (a + b), c * a + c * b) &&
                      equivalent((a * b) * c, a * (b * c)) &&
                      equivalent(JetExpr::commutator(a, b), a * b - b * a) && is_zero(a - a);
      r.record(ok, "ring law fails for " + to_sexpr(a, eq.vars));
    });
  }
  return r.out;
}

PropertyOutcome check_leibniz_total(std::uint64_t seed, std::size_t cases) {
  Recorder r{{"Leibniz rule for D", 0, 0, {}}};
  std::mt19937_64 rng(seed);
  RandomExprOptions opts;
  opts.potentials = true;
  for (std::size_t i = 0; i < cases; ++i) {
    r.run([&] {
      const EquationDef& eq = pick_equation(i);
      const Poly a = random_expr(rng, eq, opts).to_poly();
      const Poly b = random_expr(rng, eq, opts).to_poly();
      std::uniform_int_distribution<std::size_t> var(0, eq.vars.arity() - 1);
      const std::size_t v = var(rng);
      const Poly lhs = total_derivative(a * b, v, eq.vars);
      const Poly rhs = total_derivative(a, v, eq.vars) * b + a * total_derivative(b, v, eq.vars);
      r.record(lhs == rhs, "D_" + eq.vars.name(v) + " Leibniz fails for " + pretty(a, eq.vars) + " | " + pretty(b, eq.vars));
    });
  }
  return r.out;
}

PropertyOutcome check_leibniz_frechet(std::uint64_t seed, std::size_t cases) {
  Recorder r{{"Leibniz rule for Delta", 0, 0, {}}};
  std::mt19937_64 rng(seed);
  RandomExprOptions opts;
  opts.potentials = true;
  for (std::size_t i = 0; i < cases; ++i) {
    r.run([&] {
      const EquationDef& eq = pick_equation(i);
      const FrechetContext ctx = frechet_context(eq, generic_q(eq));
      const Poly a = random_expr(rng, eq, opts).to_poly();
      const Poly b = random_expr(rng, eq, opts).to_poly();
      const Poly lhs = frechet_derivative(a * b, ctx);
      const Poly rhs = frechet_derivative(a, ctx) * b + a * frechet_derivative(b, ctx);
      r.record(lhs == rhs, "Delta Leibniz fails for " + pretty(a, eq.vars) + " | " + pretty(b, eq.vars));
    });
  }
  return r.out;
}

PropertyOutcome check_total_frechet_commute(std::uint64_t seed, std::size_t cases) {
  Recorder r{{"D and Delta commute", 0, 0, {}}};
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < cases; ++i) {
    r.run([&] {
      const EquationDef& eq = pick_equation(i);
      std::uniform_int_distribution<std::size_t> var(0, eq.vars.arity() - 1);
      const std::size_t v = var(rng);
      RandomExprOptions opts;
      // Local expressions commute exactly for any variation. With potentials
      // the two orders agree only modulo F, so the variation must be a symmetry.
      opts.potentials = i % 4 == 3;
      const Poly e = random_expr(rng, eq, opts).to_poly();
      if (!opts.potentials) {
        const FrechetContext ctx = frechet_context(eq, generic_q(eq));
        const Poly lhs = total_derivative(frechet_derivative(e, ctx), v, eq.vars);
        const Poly rhs = frechet_derivative(total_derivative(e, v, eq.vars), ctx);
        r.record(lhs == rhs, "D_" + eq.vars.name(v) + " Delta != Delta D on " + pretty(e, eq.vars));
        return;
      }
      const auto catalog = characteristic_catalog(eq);
      const Poly q = catalog[(i / 4) % catalog.size()].q.closed();
      const FrechetContext ctx = frechet_context(eq, q);
      ShellReducer red(eq, &ctx);
      const Poly lhs = red.on_shell(total_derivative(frechet_derivative(e, ctx), v, eq.vars));
      const Poly rhs = red.on_shell(frechet_derivative(total_derivative(e, v, eq.vars), ctx));
      r.record(lhs == rhs, "D_" + eq.vars.name(v) + " Delta != Delta D on-shell on " + pretty(e, eq.vars));
    });
  }
  return r.out;
}

PropertyOutcome check_mixed_partials(std::uint64_t seed, std::size_t cases) {
  Recorder r{{"mixed partials commute", 0, 0, {}}};
  std::mt19937_64 rng(seed);
  RandomExprOptions opts;
  opts.potentials = true;
  for (std::size_t i = 0; i < cases; ++i) {
    r.run([&] {
      const EquationDef& eq = pick_equation(i);
      std::uniform_int_distribution<std::size_t> var(0, eq.vars.arity() - 1);
      const std::size_t a = var(rng);
      const std::size_t b = var(rng);
      const Poly e = random_expr(rng, eq, opts).to_poly();
      const Poly ab = total_derivative(total_derivative(e, a, eq.vars), b, eq.vars);
      const Poly ba = total_derivative(total_derivative(e, b, eq.vars), a, eq.vars);
      r.record(ab == ba, "mixed partials differ on " + pretty(e, eq.vars));
    });
  }
  return r.out;
}

PropertyOutcome check_normal_form_soundness(std::uint64_t seed, std::size_t cases) {
  Recorder r{{"normal form evaluates like the tree", 0, 0, {}}};
  std::mt19937_64 rng(seed);
  RandomExprOptions opts;
  opts.potentials = true;
  opts.inverse_nodes = true;
  for (std::size_t i = 0; i < cases; ++i) {
    r.run([&] {
      const EquationDef& eq = pick_equation(i);
      const JetExpr e = random_expr(rng, eq, opts);
      const ExactBinding b = random_binding(atoms_of(e), 3, rng);
      r.record(evaluate(e, b) == evaluate(e.to_poly(), b), "tree and normal form differ on " + to_sexpr(e, eq.vars));
    });
  }
  return r.out;
}

PropertyOutcome check_asserted_zero_soundness(std::uint64_t seed, std::size_t cases) {
  Recorder r{{"asserted zeros hold on exact matrices", 0, 0, {}}};
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < cases; ++i) {
    r.run([&] {
      std::string failure;
      switch (i % 6) {
        case 0: failure = total_derivative_oracle(rng); break;
        case 1: failure = frechet_oracle(rng); break;
        case 2: failure = catalog_on_shell_zero(i / 6, rng); break;
        case 3: failure = identity_oracle(i / 6, rng, false); break;
        case 4: failure = identity_oracle(i / 6, rng, true); break;
        default: failure = symmetry_routes_oracle(i / 6, rng); break;
      }
      r.record(failure.empty(), failure);
    });
  }
  return r.out;
}

std::vector<PropertyOutcome> run_all_properties(std::uint64_t seed, std::size_t cases) {
  return {check_idempotence(seed, cases),
          check_distributivity(seed + 1, cases),
          check_leibniz_total(seed + 2, cases),
          check_leibniz_frechet(seed + 3, cases),
          check_total_frechet_commute(seed + 4, cases),
          check_mixed_partials(seed + 5, cases),
          check_normal_form_soundness(seed + 6, cases),
          check_asserted_zero_soundness(seed + 7, cases)};
}

}  // namespace laxkit::testing
