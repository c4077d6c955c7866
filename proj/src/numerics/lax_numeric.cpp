#include "staircase.hpp"

#include "laxkit/errors.hpp"

#include <algorithm>
#include <cmath>

namespace laxkit::num {

double lift_defect(const GridField& u) {
  const Grid& g = u.grid();
  if (g.arity() != 4) throw Error(ErrorCode::NotALift, "a lift lives on a four-variable grid");
  // Axis pairs (y, ybar) and (z, zbar) at positions (0, 2) and (1, 3).
  double out = 0;
  for (std::size_t pair = 0; pair < 2; ++pair) {
    const std::size_t up = pair;
    const std::size_t down = pair + 2;
    if (std::abs(g.axis(up).h - g.axis(down).h) > 1e-14 * g.axis(up).h) {
      throw Error(ErrorCode::NotALift, "lift check needs equal spacings on paired axes");
    }
    for (std::size_t p = 0; p < g.size(); ++p) {
      if (g.index(p, up) + 1 == g.axis(up).count || g.index(p, down) == 0) continue;
      const std::size_t q = p + g.stride(up) - g.stride(down);
      out = std::max(out, norm(u.at(p) - u.at(q)));
    }
  }
  return out;
}

double lift_consistency(const ResidualStats& sdym, const Grid& sg, const ResidualStats& chiral, const Grid& cg) {
  if (sg.arity() != 4 || cg.arity() != 2) throw Error(ErrorCode::DimensionMismatch, "expected 4- and 2-variable grids");
  for (std::size_t a = 0; a < 2; ++a) {
    const bool same_h = std::abs(sg.axis(a).h - cg.axis(a).h) <= 1e-14 * cg.axis(a).h &&
                        std::abs(sg.axis(a + 2).h - cg.axis(a).h) <= 1e-14 * cg.axis(a).h;
    const bool covers = cg.axis(a).count >= sg.axis(a).count + sg.axis(a + 2).count - 1;
    if (!same_h || !covers) throw Error(ErrorCode::DimensionMismatch, "chiral grid does not cover the lifted sums");
  }
  double out = 0;
  for (std::size_t p = 0; p < sg.size(); ++p) {
    if (!sg.interior(p, 2)) continue;
    const std::size_t t = sg.index(p, 0) + sg.index(p, 2);
    const std::size_t x = sg.index(p, 1) + sg.index(p, 3);
    const std::size_t c = t * cg.stride(0) + x * cg.stride(1);
    out = std::max(out, std::abs(sdym.per_point.at(p) - chiral.per_point.at(c)));
  }
  return out;
}

LaxResult integrate_lax(const EquationDef& eq, const GridField& u, Complex lambda, const Mat& phi0) {
  if (std::abs(lambda) == 0) throw Error(ErrorCode::ZeroLambda, "spectral parameter must be nonzero");
  const Complex denom = 1.0 + lambda * lambda;
  if (std::abs(denom) < 1e-12) throw Error(ErrorCode::SingularLambda, "1 + lambda^2 vanishes");
  const Grid& g = u.grid();
  if (g.arity() != eq.vars.arity()) throw Error(ErrorCode::DimensionMismatch, "grid does not match the equation");
  if (static_cast<std::size_t>(phi0.rows()) != u.dim() || phi0.rows() != phi0.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "initial value does not match the field dimension");
  }
  if (g.arity() == 4) {
    const double defect = lift_defect(u);
    if (defect > 1e-10 * (1 + u.max_norm())) {
      throw Error(ErrorCode::NotALift, "the four-variable Lax integration needs a lifted field");
    }
  }

  // Explicit form: phi_v = [C_v, phi]. The slot-a axes (conn and div) carry
  // (-lambda b - lambda^2 a) / (1 + lambda^2), the slot-b axes
  // (lambda a - lambda^2 b) / (1 + lambda^2), with a, b the two connections.
  const GridField a = connection(eq, u, 0);
  const GridField b = connection(eq, u, 1);
  const GridField ca = zip(a, b, [&](const Mat& x, const Mat& y) -> Mat { return (-lambda * y - lambda * lambda * x) / denom; });
  const GridField cb = zip(a, b, [&](const Mat& x, const Mat& y) -> Mat { return (lambda * x - lambda * lambda * y) / denom; });
  std::map<std::size_t, const GridField*> coef;
  for (std::size_t s = 0; s < 2; ++s) {
    const GridField* c = s == 0 ? &ca : &cb;
    coef[eq.slots[s].conn_var] = c;
    coef[eq.slots[s].div_var] = c;
  }
  std::vector<std::size_t> order;
  for (const auto& [v, c] : coef) order.push_back(v);

  auto integrate = [&](const std::vector<std::size_t>& ord) {
    GridField phi(g, u.dim());
    phi.set(0, phi0);
    // The base point is the origin: every axis is integrated, so the
    // staircase starts from the single point with all indices zero.
    detail::staircase(g, ord, [&](std::size_t start, std::size_t axis) {
      const auto pts = detail::line(g, start, axis);
      const detail::LineSamples c(*coef.at(axis), pts);
      std::vector<Mat> y(pts.size());
      y[0] = phi.at(pts[0]);
      detail::rk4_line(y, g.axis(axis).h, [&](std::ptrdiff_t k, const Mat& v) -> Mat { return commutator(c(k), v); });
      for (std::size_t i = 1; i < pts.size(); ++i) phi.set(pts[i], y[i]);
    });
    return phi;
  };

  LaxResult res;
  res.phi = integrate(order);
  std::vector<std::size_t> rev(order.rbegin(), order.rend());
  res.compat_residual = max_difference(res.phi, integrate(rev));
  res.psi = zip(u, res.phi, [](const Mat& x, const Mat& y) -> Mat { return x * y; });
  return res;
}

}  // namespace laxkit::num
