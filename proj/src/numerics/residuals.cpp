#include "laxkit/errors.hpp"
#include "laxkit/numerics.hpp"

#include <cmath>

namespace laxkit::num {

namespace {

void require_shape(const EquationDef& eq, const GridField& u) {
  if (u.grid().arity() != eq.vars.arity()) {
    throw Error(ErrorCode::DimensionMismatch, "grid arity does not match the equation's variables");
  }
}

GridField add(const GridField& a, const GridField& b) {
  GridField out = a;
  for (std::size_t i = 0; i < out.raw().size(); ++i) out.raw()[i] += b.raw()[i];
  return out;
}

GridField product(const GridField& a, const GridField& b) {
  GridField out(a.grid(), a.dim());
  for (std::size_t p = 0; p < out.size(); ++p) out.view(p) = a.view(p).lazyProduct(b.view(p));
  return out;
}

}  // namespace

GridField connection(const EquationDef& eq, const GridField& u, std::size_t slot) {
  require_shape(eq, u);
  return product(inverse(u), diff(u, eq.slots.at(slot).conn_var));
}

Background make_background(const EquationDef& eq, const GridField& u) {
  require_shape(eq, u);
  Background bg;
  bg.u = u;
  bg.u_inv = inverse(u);
  for (std::size_t s = 0; s < 2; ++s) bg.conn[s] = product(bg.u_inv, diff(u, eq.slots[s].conn_var));
  return bg;
}

ResidualStats fd_residual_field_equation(const EquationDef& eq, const GridField& u) {
  require_shape(eq, u);
  return interior_stats(add(diff(connection(eq, u, 0), eq.slots[0].div_var),
                            diff(connection(eq, u, 1), eq.slots[1].div_var)),
                        2);
}

ResidualStats conservation_residual(const EquationDef& eq, const GridField& q, const GridField& u) {
  return conservation_residual(eq, q, make_background(eq, u));
}

ResidualStats conservation_residual(const EquationDef& eq, const GridField& q, const Background& bg) {
  require_shape(eq, bg.u);
  if (!(q.grid() == bg.u.grid()) || q.dim() != bg.u.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "characteristic lives on another grid");
  }
  const GridField k = product(bg.u_inv, q);
  GridField div(bg.u.grid(), bg.u.dim());
  for (std::size_t s = 0; s < 2; ++s) {
    GridField current = diff(k, eq.slots[s].conn_var);
    const GridField& a = bg.conn[s];
    for (std::size_t p = 0; p < current.size(); ++p) {
      current.view(p) += a.view(p).lazyProduct(k.view(p)) - k.view(p).lazyProduct(a.view(p));
    }
    const GridField d = diff(current, eq.slots[s].div_var);
    for (std::size_t i = 0; i < div.raw().size(); ++i) div.raw()[i] += d.raw()[i];
  }
  return interior_stats(div, 2);
}

ResidualStats symmetry_residual(const EquationDef& eq, const GridField& psi, const GridField& u) {
  return conservation_residual(eq, psi, u);
}

double determinant_defect(const GridField& u) {
  double out = 0;
  for (std::size_t p = 0; p < u.size(); ++p) out = std::max(out, std::abs(u.at(p).determinant() - 1.0));
  return out;
}

double trace_defect(const GridField& u) {
  double out = 0;
  for (std::size_t a = 0; a < u.grid().arity(); ++a) {
    const GridField du = diff(u, a);
    for (std::size_t p = 0; p < u.size(); ++p) {
      out = std::max(out, std::abs((u.at(p).inverse() * du.at(p)).trace()));
    }
  }
  return out;
}

}  // namespace laxkit::num
