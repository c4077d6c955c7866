#include "staircase.hpp"

#include "laxkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace laxkit::num {

namespace detail {

void staircase(const Grid& g, const std::vector<std::size_t>& order,
               const std::function<void(std::size_t, std::size_t)>& fn) {
  for (std::size_t j = 0; j < order.size(); ++j) {
    for (std::size_t p = 0; p < g.size(); ++p) {
      bool start = g.index(p, order[j]) == 0;
      for (std::size_t k = j + 1; start && k < order.size(); ++k) start = g.index(p, order[k]) == 0;
      if (start) fn(p, order[j]);
    }
  }
}

std::vector<std::size_t> line(const Grid& g, std::size_t start, std::size_t axis) {
  std::vector<std::size_t> pts(g.axis(axis).count);
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = start + i * g.stride(axis);
  return pts;
}

Mat midpoint(const std::vector<Mat>& v, std::size_t i) {
  const std::size_t n = v.size();
  if (n < 4) return 0.5 * (v[i] + v[i + 1]);
  if (i == 0) return (5.0 * v[0] + 15.0 * v[1] - 5.0 * v[2] + v[3]) / 16.0;
  if (i + 2 == n) return (v[n - 4] - 5.0 * v[n - 3] + 15.0 * v[n - 2] + 5.0 * v[n - 1]) / 16.0;
  return (-v[i - 1] + 9.0 * v[i] + 9.0 * v[i + 1] - v[i + 2]) / 16.0;
}

LineSamples::LineSamples(const GridField& f, const std::vector<std::size_t>& pts) {
  nodes_.reserve(pts.size());
  for (std::size_t p : pts) nodes_.push_back(f.at(p));
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) mids_.push_back(midpoint(nodes_, i));
}

}  // namespace detail

namespace {

using detail::line;
using detail::staircase;

std::vector<std::size_t> reversed(std::vector<std::size_t> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

// Trapezoidal staircase integration of X_v = rhs[v] for v in `axes`.
GridField integrate_trapezoid(const Grid& g, std::size_t n, const std::vector<std::size_t>& order,
                              const std::map<std::size_t, GridField>& rhs) {
  GridField x(g, n);
  staircase(g, order, [&](std::size_t start, std::size_t axis) {
    const GridField& r = rhs.at(axis);
    const double h = g.axis(axis).h;
    const auto pts = line(g, start, axis);
    for (std::size_t i = 1; i < pts.size(); ++i) {
      x.set(pts[i], x.at(pts[i - 1]) + (0.5 * h) * (r.at(pts[i - 1]) + r.at(pts[i])));
    }
  });
  return x;
}

}  // namespace

PathResult compute_potential(const EquationDef& eq, const GridField& u, const PathOptions& opts) {
  GridEnv env(eq, u);
  std::map<std::size_t, GridField> rhs;
  std::vector<std::size_t> axes;
  double scale = 0;
  for (const auto& [v, r] : eq.potential.rules) {
    rhs.emplace(v, env.eval(r));
    axes.push_back(v);
    scale = std::max(scale, rhs.at(v).max_norm());
  }
  std::sort(axes.begin(), axes.end());
  PathResult res;
  res.value = integrate_trapezoid(u.grid(), u.dim(), axes, rhs);
  const GridField other = integrate_trapezoid(u.grid(), u.dim(), reversed(axes), rhs);
  res.path_residual = max_difference(res.value, other);
  const double h = u.grid().h();
  res.tolerance = opts.tolerance_factor * h * h * (1 + scale);
  if (res.path_residual > res.tolerance) {
    throw Error(ErrorCode::PathInconsistent, "potential depends on the integration path (residual " +
                                                 fmt_double(res.path_residual) + " > tolerance " +
                                                 fmt_double(res.tolerance) + "); input is off-shell");
  }
  return res;
}

ResidualStats potential_consistency(const EquationDef& eq, const GridField& x, const GridField& u) {
  GridEnv env(eq, u);
  GridField worst(u.grid(), u.dim());
  ResidualStats out;
  bool first = true;
  for (const auto& [v, r] : eq.potential.rules) {
    const GridField rhs = env.eval(r);
    const GridField dx = diff(x, v);
    const ResidualStats st = interior_stats(zip(dx, rhs, [](const Mat& a, const Mat& b) -> Mat { return a - b; }));
    if (first) {
      out = st;
      first = false;
      continue;
    }
    out.max = std::max(out.max, st.max);
    out.l2 = std::sqrt(0.5 * (out.l2 * out.l2 + st.l2 * st.l2));
    for (std::size_t p = 0; p < out.per_point.size(); ++p) out.per_point[p] = std::max(out.per_point[p], st.per_point[p]);
  }
  return out;
}

namespace {

struct RelationFields {
  GridField left;
  GridField right;
  GridField source;
};

GridField integrate_implicit(const Grid& g, std::size_t n, const std::vector<std::size_t>& order,
                             const std::map<std::size_t, RelationFields>& rel) {
  GridField q(g, n);
  staircase(g, order, [&](std::size_t start, std::size_t axis) {
    const RelationFields& r = rel.at(axis);
    const auto pts = line(g, start, axis);
    const detail::LineSamples l(r.left, pts), rr(r.right, pts), s(r.source, pts);
    std::vector<Mat> y(pts.size());
    y[0] = q.at(pts[0]);
    detail::rk4_line(y, g.axis(axis).h,
                     [&](std::ptrdiff_t k, const Mat& v) -> Mat { return l(k) * v + v * rr(k) + s(k); });
    for (std::size_t i = 1; i < pts.size(); ++i) q.set(pts[i], y[i]);
  });
  return q;
}

}  // namespace

PathResult eval_characteristic(const Characteristic& q, GridEnv& env, const PathOptions& opts) {
  PathResult res;
  if (q.is_closed()) {
    res.value = env.eval(q.closed());
    return res;
  }
  const ImplicitSystem& sys = q.implicit();
  std::map<std::size_t, RelationFields> rel;
  std::vector<std::size_t> axes;
  double scale = 0;
  for (const ImplicitRelation& r : sys.relations) {
    RelationFields f{env.eval(r.left), env.eval(r.right), env.eval(r.source)};
    scale = std::max({scale, f.left.max_norm(), f.right.max_norm(), f.source.max_norm()});
    rel.emplace(r.var, std::move(f));
    axes.push_back(r.var);
  }
  std::sort(axes.begin(), axes.end());
  const Grid& g = env.grid();
  res.value = integrate_implicit(g, env.field().dim(), axes, rel);
  const GridField other = integrate_implicit(g, env.field().dim(), reversed(axes), rel);
  res.path_residual = max_difference(res.value, other);
  const double h = g.h();
  res.tolerance = opts.tolerance_factor * h * h * (1 + scale);
  if (res.path_residual > res.tolerance) {
    throw Error(ErrorCode::PathInconsistent, "implicit characteristic depends on the integration path (residual " +
                                                 fmt_double(res.path_residual) + " > tolerance " +
                                                 fmt_double(res.tolerance) + ")");
  }
  return res;
}

}  // namespace laxkit::num
