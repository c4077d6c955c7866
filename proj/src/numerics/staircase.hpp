#pragma once

// Staircase traversal and line integrators shared by the potential, implicit
// characteristic and Lax integrations.

#include "laxkit/numerics.hpp"

namespace laxkit::num::detail {

/// For each axis of `order` in turn, calls fn(start, axis) for every line
/// along that axis that starts at index 0 of the axis and sits at index 0 of
/// all later axes in `order`. Reaching a point therefore moves along the
/// axes in the given order: a staircase path from the base plane.
void staircase(const Grid& g, const std::vector<std::size_t>& order,
               const std::function<void(std::size_t, std::size_t)>& fn);

/// Flat indices of the line through `start` along `axis`.
std::vector<std::size_t> line(const Grid& g, std::size_t start, std::size_t axis);

/// Value at the midpoint between line nodes i and i + 1 by four-point
/// Lagrange interpolation (shifted stencils at the ends).
Mat midpoint(const std::vector<Mat>& values, std::size_t i);

/// Classical RK4 along a line for y' = f(k, y), where k indexes sampled
/// coefficients: f is called with node k (0..n-1) or with a midpoint index
/// encoded as -(i+1) for the point between nodes i and i + 1.
template <typename Rhs>
void rk4_line(std::vector<Mat>& y, double h, Rhs&& f) {
  for (std::size_t i = 0; i + 1 < y.size(); ++i) {
    const auto mid = -static_cast<std::ptrdiff_t>(i) - 1;
    const Mat k1 = f(static_cast<std::ptrdiff_t>(i), y[i]);
    const Mat k2 = f(mid, Mat(y[i] + 0.5 * h * k1));
    const Mat k3 = f(mid, Mat(y[i] + 0.5 * h * k2));
    const Mat k4 = f(static_cast<std::ptrdiff_t>(i + 1), Mat(y[i] + h * k3));
    y[i + 1] = y[i] + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
}

/// Coefficient samples of one field along a line, with interpolated
/// midpoints, addressed the way rk4_line addresses them.
class LineSamples {
 public:
  LineSamples() = default;
  LineSamples(const GridField& f, const std::vector<std::size_t>& pts);
  const Mat& operator()(std::ptrdiff_t k) const {
    return k >= 0 ? nodes_[static_cast<std::size_t>(k)] : mids_[static_cast<std::size_t>(-k - 1)];
  }

 private:
  std::vector<Mat> nodes_;
  std::vector<Mat> mids_;
};

}  // namespace laxkit::num::detail
