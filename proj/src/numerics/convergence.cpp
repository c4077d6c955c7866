#include "laxkit/errors.hpp"
#include "laxkit/numerics.hpp"

#include <cmath>
#include <limits>

namespace laxkit::num {

std::string_view to_string(ConvergenceStatus s) {
  switch (s) {
    case ConvergenceStatus::Converging: return "converging";
    case ConvergenceStatus::Exact: return "exact";
    case ConvergenceStatus::NonMonotone: return "non-monotone";
  }
  return "?";
}

ConvergenceEstimate convergence_order(const std::vector<double>& h, const std::vector<double>& r, double floor) {
  if (h.size() != r.size() || h.size() < 3) {
    throw std::invalid_argument("convergence_order needs at least three (h, residual) pairs");
  }
  const double ratio = h[1] / h[0];
  for (std::size_t k = 1; k < h.size(); ++k) {
    if (!(h[k] > 0) || std::abs(h[k] / h[k - 1] - ratio) > 1e-9 * std::abs(ratio) || !(ratio < 1)) {
      throw std::invalid_argument("spacings must shrink in geometric progression");
    }
  }
  ConvergenceEstimate est;
  est.h = h;
  est.residuals = r;
  bool all_floor = true;
  for (double v : r) all_floor = all_floor && v <= floor;
  if (all_floor) {
    est.status = ConvergenceStatus::Exact;
    return est;
  }
  // Least-squares slope of log r against log h over the pre-roundoff part:
  // the points up to and including the first one at the floor. Later points
  // sit on the roundoff plateau and would flatten the slope.
  std::size_t used = r.size();
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (r[k] <= floor) {
      used = k + 1;
      break;
    }
  }
  if (used < 2) used = r.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(used);
  for (std::size_t k = 0; k < used; ++k) {
    const double x = std::log(h[k]);
    const double y = std::log(std::max(r[k], std::numeric_limits<double>::min()));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  est.order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  bool decreasing = true;
  for (std::size_t k = 1; k < r.size(); ++k) decreasing = decreasing && (r[k] < r[k - 1] || r[k] <= floor);
  est.status = decreasing ? ConvergenceStatus::Converging : ConvergenceStatus::NonMonotone;
  return est;
}

ConvergenceEstimate convergence_order(const std::function<double(const Grid&)>& task, const Grid& coarsest,
                                      std::size_t levels, double floor) {
  std::vector<double> h, r;
  for (std::size_t k = 0; k < levels; ++k) {
    const Grid g = coarsest.refined(std::size_t{1} << k);
    h.push_back(g.h());
    r.push_back(task(g));
  }
  return convergence_order(h, r, floor);
}

ConvergenceEstimate require_convergence(const std::vector<double>& h, const std::vector<double>& r, double floor) {
  ConvergenceEstimate est = convergence_order(h, r, floor);
  if (est.status == ConvergenceStatus::NonMonotone) {
    throw Error(ErrorCode::NonMonotone, "residuals do not decrease under refinement");
  }
  return est;
}

std::map<std::string, Mat> default_params() {
  Mat m(2, 2);
  m << 1.0, 2.0, -1.0, -1.0;
  Mat lambda(2, 2);
  lambda << 0.5, -1.0, 2.0, -0.5;
  return {{"M", m}, {"Lambda", lambda}};
}

NumericVerifier make_numeric_verifier(const VerifierOptions& opts) {
  return [opts](const EquationDef& eq, const Characteristic& q) -> std::optional<NumericVerdict> {
    const bool lifted = eq.vars.arity() == 4;
    const FamilyKind kind = lifted ? FamilyKind::LiftedChiral : opts.kind;
    const std::size_t count = lifted ? 9 : opts.coarse_count;
    const Grid coarse = Grid::box(eq.vars, 0.0, lifted ? 0.5 : 1.0, count);
    std::vector<double> r;
    for (std::size_t level = 0; level < 2; ++level) {
      const Grid g = coarse.refined(std::size_t{1} << level);
      const GridField u = sample_solution(nilpotent_family(kind), g);
      GridEnv env(eq, u);
      for (const auto& [name, m] : default_params()) env.bind_param(name, m);
      env.bind_potential(compute_potential(eq, u).value);
      const PathResult qv = eval_characteristic(q, env);
      r.push_back(common_node_max(conservation_residual(eq, qv.value, u), g, coarse, 2));
    }
    NumericVerdict v;
    v.residual = r.back();
    if (r[0] <= kRoundoffFloor && r[1] <= kRoundoffFloor) {
      v.holds = true;
      v.detail = "conservation residual at roundoff";
      return v;
    }
    const double order = std::log2(r[0] / std::max(r[1], kRoundoffFloor));
    v.holds = order >= opts.min_order;
    v.detail = "conservation residual " + std::to_string(r[0]) + " -> " + std::to_string(r[1]) +
               ", observed order " + std::to_string(order);
    return v;
  };
}

}  // namespace laxkit::num
