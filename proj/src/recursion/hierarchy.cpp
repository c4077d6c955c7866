#include "laxkit/errors.hpp"
#include "laxkit/recursion.hpp"

namespace laxkit {

std::string_view to_string(LevelStatus s) {
  switch (s) {
    case LevelStatus::Closed: return "closed";
    case LevelStatus::Implicit: return "implicit";
    case LevelStatus::NotReached: return "not-reached";
  }
  return "?";
}

namespace {

// True when a = r b for some nonzero rational r.
bool proportional(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero() || a.size() != b.size()) return false;
  std::optional<Rational> ratio;
  auto ib = b.terms().begin();
  for (const auto& [w, c] : a.terms()) {
    if (ib->first != w) return false;
    const Rational r = c / ib->second;
    if (ratio && *ratio != r) return false;
    ratio = r;
    ++ib;
  }
  return true;
}

}  // namespace

Hierarchy generate_hierarchy(const EquationPtr& eqp, const NamedCharacteristic& seed, int n_min,
                             int n_max, const NumericVerifier& numeric,
                             const IntegrationOptions& opts) {
  if (n_min > 0 || n_max < 0) throw std::invalid_argument("hierarchy window must contain 0");
  const EquationDef& eq = *eqp;
  ShellReducer red(eq);
  Hierarchy h{eqp, seed.name, n_min, n_max, {}};

  Characteristic q0 = seed.q;
  q0.index = 0;
  HierarchyLevel base;
  base.index = 0;
  base.status = LevelStatus::Closed;
  base.q = q0;
  base.symbolic = verify_symmetry(eq, q0);
  h.levels[0] = base;

  // Local coordinate symmetries u_v: reaching one of them yields nothing new.
  std::vector<Poly> known;
  for (std::size_t v = 0; v < eq.vars.arity(); ++v) {
    known.push_back(Poly::atom(eq.field_atom(MultiIndex::unit(eq.vars.arity(), v))));
  }
  known.push_back(red.on_shell(q0.closed()));

  for (Direction dir : {Direction::Forward, Direction::Backward}) {
    const int step = dir == Direction::Forward ? 1 : -1;
    const int last = dir == Direction::Forward ? n_max : n_min;
    Characteristic cur = q0;
    bool stopped = false;
    for (int n = step; step * n <= step * last; n += step) {
      HierarchyLevel lvl;
      lvl.index = n;
      if (stopped) {
        lvl.note = "beyond the first implicit level";
        h.levels[n] = std::move(lvl);
        continue;
      }
      BTSystem sys;
      try {
        sys = bt_step(eqp, cur, dir);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::IncompatibleSystem) throw;
        throw Error(ErrorCode::IncompatibleSystem, "level " + std::to_string(n) + ": " + e.what());
      }
      IntegrationResult res = integrate_bt_symbolic(sys, opts);
      lvl.q = res.characteristic;
      lvl.constant_term = res.constant_term;
      lvl.homogeneous = res.homogeneous;
      if (res.characteristic.is_closed()) {
        lvl.status = LevelStatus::Closed;
        lvl.symbolic = verify_symmetry(eq, res.characteristic);
        const Poly reduced = red.on_shell(res.characteristic.closed());
        for (const Poly& k : known) lvl.degenerate = lvl.degenerate || proportional(reduced, k);
        if (lvl.degenerate) lvl.note = "multiple of a known characteristic";
        known.push_back(reduced);
        cur = res.characteristic;
      } else {
        lvl.status = LevelStatus::Implicit;
        if (numeric) lvl.numeric = numeric(eq, res.characteristic);
        stopped = true;
      }
      h.levels[n] = std::move(lvl);
    }
  }
  return h;
}

}  // namespace laxkit
