#include "laxkit/errors.hpp"
#include "laxkit/numerics.hpp"

#include <cmath>
#include <numbers>

namespace laxkit::num {

std::string_view to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::ExponentialProduct: return "exponential-product";
    case FamilyKind::LiftedChiral: return "lifted-chiral";
    case FamilyKind::PerturbedOffshell: return "perturbed-offshell";
  }
  return "?";
}

SolutionFamily nilpotent_family(FamilyKind kind, double epsilon) {
  Mat a = Mat::Zero(2, 2);
  Mat b = Mat::Zero(2, 2);
  a(0, 1) = 1;
  b(1, 0) = 1;
  return {kind, a, b, epsilon};
}

Mat perturbation(std::size_t n, double t, double x) {
  constexpr double pi = std::numbers::pi;
  Mat p(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double wi = static_cast<double>(i + 1);
      const double wj = static_cast<double>(j + 1);
      p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          std::sin(pi * (wi * t + wj * x) / 2) * std::cos(pi * (t - x) / 3) / (wi + wj);
    }
  }
  return p;
}

GridField sample_solution(const SolutionFamily& family, const Grid& grid) {
  const auto& a = family.a;
  const auto& b = family.b;
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows() || a.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "family parameters must be square of one dimension");
  }
  const bool lifted = grid.arity() == 4;
  if (grid.arity() != 2 && grid.arity() != 4) {
    throw Error(ErrorCode::DimensionMismatch, "families live on two- or four-variable grids");
  }
  if (family.kind == FamilyKind::ExponentialProduct && lifted) {
    throw Error(ErrorCode::DimensionMismatch, "exponential-product family is two-variable; use lifted-chiral");
  }
  if (family.kind == FamilyKind::LiftedChiral && !lifted) {
    throw Error(ErrorCode::DimensionMismatch, "lifted-chiral family needs a four-variable grid");
  }
  const auto n = static_cast<std::size_t>(a.rows());
  GridField out(grid, n);
  // Exponentials depend on one coordinate each; cache them by value.
  std::map<double, Mat> ea;
  std::map<double, Mat> eb;
  auto cached = [](std::map<double, Mat>& memo, const Mat& m, double s) -> const Mat& {
    auto it = memo.find(s);
    if (it == memo.end()) it = memo.emplace(s, expm(Mat(s * m))).first;
    return it->second;
  };
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = lifted ? grid.coordinate(i, 0) + grid.coordinate(i, 2) : grid.coordinate(i, 0);
    const double x = lifted ? grid.coordinate(i, 1) + grid.coordinate(i, 3) : grid.coordinate(i, 1);
    Mat g = cached(ea, a, t) * cached(eb, b, x);
    if (family.kind == FamilyKind::PerturbedOffshell) {
      g = g * (identity(n) + family.epsilon * perturbation(n, t, x));
    }
    out.set(i, g);
  }
  return out;
}

}  // namespace laxkit::num
