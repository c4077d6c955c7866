#include "laxkit/errors.hpp"
#include "laxkit/recursion.hpp"

namespace laxkit {

std::string_view to_string(Direction d) { return d == Direction::Forward ? "forward" : "backward"; }

BTSystem bt_step(const EquationPtr& eqp, const Characteristic& q, Direction direction) {
  const EquationDef& eq = *eqp;
  if (!q.is_closed()) throw std::invalid_argument("bt_step needs a closed-form characteristic");
  ShellReducer red(eq);
  const Poly k = Poly::atom(eq.inverse_atom()) * q.closed();
  const Poly kph = eq.bt_kernel;
  const DivergenceSlot& a = eq.slots[0];
  const DivergenceSlot& b = eq.slots[1];

  BTSystem sys;
  sys.eq = eqp;
  sys.known = q;
  sys.direction = direction;
  Poly compat;
  if (direction == Direction::Forward) {
    sys.unknown_level = q.index + 1;
    const Poly g = covariant_derivative(k, eq, 0);
    const Poly h = covariant_derivative(k, eq, 1);
    sys.equations[0] = {b.div_var, total_derivative(kph, b.div_var, eq.vars), g};
    sys.equations[1] = {a.div_var, total_derivative(kph, a.div_var, eq.vars), -h};
    compat = total_derivative(g, a.div_var, eq.vars) + total_derivative(h, b.div_var, eq.vars);
  } else {
    sys.unknown_level = q.index - 1;
    const Poly ra = total_derivative(k, b.div_var, eq.vars);
    const Poly rb = -total_derivative(k, a.div_var, eq.vars);
    sys.equations[0] = {a.conn_var, covariant_derivative(kph, eq, 0), ra};
    sys.equations[1] = {b.conn_var, covariant_derivative(kph, eq, 1), rb};
    compat = covariant_derivative(ra, eq, 1) - covariant_derivative(rb, eq, 0);
  }
  for (std::size_t i = 0; i < 2; ++i) sys.targets[i] = red.on_shell(sys.equations[i].rhs);
  sys.compatibility_residue = red.on_shell(compat);
  if (!sys.compatibility_residue.is_zero()) {
    throw Error(ErrorCode::IncompatibleSystem,
                std::string(to_string(direction)) + " BT system for level " +
                    std::to_string(sys.unknown_level) + " is incompatible; residue " +
                    pretty(sys.compatibility_residue, eq.vars));
  }
  return sys;
}

ImplicitSystem implicit_from_bt(const BTSystem& sys) {
  const EquationDef& eq = *sys.eq;
  const Poly u = Poly::atom(eq.field_atom());
  const Poly uinv = Poly::atom(eq.inverse_atom());
  ImplicitSystem out;
  out.unknown = eq.placeholder;
  for (std::size_t i = 0; i < 2; ++i) {
    const BTEquation& e = sys.equations[i];
    ImplicitRelation r;
    r.var = e.var;
    r.lhs = u * e.lhs;
    r.rhs = u * sys.targets[i];
    r.source = r.rhs;
    if (sys.direction == Direction::Forward) {
      // u D_w(u^-1 Q) = Q_w - u_w u^-1 Q
      r.left = Poly::atom(eq.field_atom(MultiIndex::unit(eq.vars.arity(), e.var))) * uinv;
    } else {
      // u A_v(u^-1 Q) = Q_v - Q u^-1 u_v
      r.right = eq.slots[i].connection;
    }
    out.relations.push_back(std::move(r));
  }
  return out;
}

}  // namespace laxkit
