#include "laxkit/errors.hpp"
#include "laxkit/numerics.hpp"

#include <cmath>

namespace laxkit::num {

Mat identity(std::size_t n) { return Mat::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)); }

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

double norm(const Mat& m) { return m.norm(); }

Grid::Grid(std::vector<Axis> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) throw Error(ErrorCode::GridTooSmall, "grid needs at least one axis");
  strides_.assign(axes_.size(), 1);
  size_ = 1;
  for (std::size_t a = axes_.size(); a-- > 0;) {
    const Axis& ax = axes_[a];
    if (ax.count < 5) {
      throw Error(ErrorCode::GridTooSmall, "axis '" + ax.name + "' has " + std::to_string(ax.count) +
                                               " points; at least 5 are needed");
    }
    if (!(ax.h > 0) || !std::isfinite(ax.h)) {
      throw Error(ErrorCode::GridTooSmall, "axis '" + ax.name + "' needs a positive spacing");
    }
    strides_[a] = size_;
    size_ *= ax.count;
  }
}

Grid Grid::box(const VarSpace& vars, double lo, double hi, std::size_t count) {
  if (count < 2) throw Error(ErrorCode::GridTooSmall, "grid needs at least 5 points per axis");
  std::vector<Axis> axes;
  for (const auto& name : vars.names()) {
    axes.push_back({name, lo, (hi - lo) / static_cast<double>(count - 1), count});
  }
  return Grid(std::move(axes));
}

bool Grid::interior(std::size_t flat, std::size_t margin) const {
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    const std::size_t i = index(flat, a);
    if (i < margin || i + margin >= axes_[a].count) return false;
  }
  return true;
}

double Grid::h() const {
  double h = 0;
  for (const auto& ax : axes_) h = std::max(h, ax.h);
  return h;
}

Grid Grid::refined(std::size_t factor) const {
  std::vector<Axis> axes = axes_;
  for (auto& ax : axes) {
    ax.count = (ax.count - 1) * factor + 1;
    ax.h /= static_cast<double>(factor);
  }
  return Grid(std::move(axes));
}

GridField::GridField(Grid grid, std::size_t n) : grid_(std::move(grid)), n_(n) {
  if (n == 0 || n > static_cast<std::size_t>(kMaxDim)) {
    throw Error(ErrorCode::DimensionMismatch,
                "matrix dimension " + std::to_string(n) + " outside 1.." + std::to_string(kMaxDim));
  }
  data_.assign(grid_.size() * n * n, Complex(0));
}

Mat GridField::at(std::size_t flat) const {
  const auto n = static_cast<Eigen::Index>(n_);
  Mat m(n, n);
  const Complex* p = data_.data() + flat * n_ * n_;
  for (Eigen::Index k = 0; k < n * n; ++k) m.data()[k] = p[k];
  return m;
}

void GridField::set(std::size_t flat, const Mat& m) {
  if (static_cast<std::size_t>(m.rows()) != n_ || static_cast<std::size_t>(m.cols()) != n_) {
    throw Error(ErrorCode::DimensionMismatch, "matrix does not match the field dimension");
  }
  Complex* p = data_.data() + flat * n_ * n_;
  for (std::size_t k = 0; k < n_ * n_; ++k) p[k] = m.data()[k];
}

double GridField::max_norm() const {
  double out = 0;
  for (std::size_t i = 0; i < size(); ++i) out = std::max(out, norm(at(i)));
  return out;
}

bool GridField::finite() const {
  for (const Complex& c : data_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

namespace {

void require_same(const GridField& a, const GridField& b) {
  if (!(a.grid() == b.grid()) || a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "fields live on different grids or dimensions");
  }
}

}  // namespace

GridField map(const GridField& a, const std::function<Mat(const Mat&)>& f) {
  GridField out(a.grid(), a.dim());
  for (std::size_t i = 0; i < a.size(); ++i) out.set(i, f(a.at(i)));
  return out;
}

GridField zip(const GridField& a, const GridField& b, const std::function<Mat(const Mat&, const Mat&)>& f) {
  require_same(a, b);
  GridField out(a.grid(), a.dim());
  for (std::size_t i = 0; i < a.size(); ++i) out.set(i, f(a.at(i), b.at(i)));
  return out;
}

GridField inverse(const GridField& u) {
  GridField out(u.grid(), u.dim());
  for (std::size_t p = 0; p < u.size(); ++p) out.view(p) = Mat(u.view(p)).inverse();
  return out;
}

GridField constant_field(const Grid& grid, const Mat& m) {
  GridField out(grid, static_cast<std::size_t>(m.rows()));
  for (std::size_t i = 0; i < out.size(); ++i) out.set(i, m);
  return out;
}

double max_difference(const GridField& a, const GridField& b) {
  require_same(a, b);
  double out = 0;
  for (std::size_t i = 0; i < a.size(); ++i) out = std::max(out, norm(a.at(i) - b.at(i)));
  return out;
}

}  // namespace laxkit::num
