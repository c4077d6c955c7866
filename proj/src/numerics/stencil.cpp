#include "laxkit/errors.hpp"
#include "laxkit/numerics.hpp"

#include <cmath>

namespace laxkit::num {

GridField diff(const GridField& f, std::size_t axis) {
  const Grid& g = f.grid();
  if (axis >= g.arity()) throw std::out_of_range("diff: axis out of range");
  const std::size_t count = g.axis(axis).count;
  const std::size_t stride = g.stride(axis);
  const std::size_t block = f.dim() * f.dim();
  const double inv2h = 1.0 / (2.0 * g.axis(axis).h);
  GridField out(g, f.dim());
  const Complex* in = f.raw().data();
  Complex* o = out.raw().data();
  for (std::size_t p = 0; p < g.size(); ++p) {
    const std::size_t i = g.index(p, axis);
    const Complex* c = in + p * block;
    Complex* dst = o + p * block;
    const std::ptrdiff_t s = static_cast<std::ptrdiff_t>(stride * block);
    if (i == 0) {
      for (std::size_t k = 0; k < block; ++k) dst[k] = (-3.0 * c[k] + 4.0 * c[k + s] - c[k + 2 * s]) * inv2h;
    } else if (i + 1 == count) {
      for (std::size_t k = 0; k < block; ++k) dst[k] = (3.0 * c[k] - 4.0 * c[k - s] + c[k - 2 * s]) * inv2h;
    } else {
      for (std::size_t k = 0; k < block; ++k) dst[k] = (c[k + s] - c[k - s]) * inv2h;
    }
  }
  return out;
}

ResidualStats interior_stats(const GridField& f, std::size_t margin) {
  ResidualStats st;
  st.per_point.assign(f.size(), 0.0);
  double sum = 0;
  for (std::size_t p = 0; p < f.size(); ++p) {
    if (!f.grid().interior(p, margin)) continue;
    const double r = norm(f.at(p));
    st.per_point[p] = r;
    st.max = std::max(st.max, r);
    sum += r * r;
    ++st.points;
  }
  if (st.points == 0) throw Error(ErrorCode::GridTooSmall, "grid has no interior points");
  st.l2 = std::sqrt(sum / static_cast<double>(st.points));
  return st;
}

double common_node_max(const ResidualStats& st, const Grid& fine, const Grid& coarse, std::size_t margin) {
  if (fine.arity() != coarse.arity() || st.per_point.size() != fine.size()) {
    throw Error(ErrorCode::DimensionMismatch, "residual does not live on the fine grid");
  }
  std::vector<std::size_t> factor(fine.arity());
  for (std::size_t a = 0; a < fine.arity(); ++a) {
    const Axis& f = fine.axis(a);
    const Axis& c = coarse.axis(a);
    const double ratio = c.h / f.h;
    factor[a] = static_cast<std::size_t>(std::lround(ratio));
    if (factor[a] == 0 || std::abs(ratio - static_cast<double>(factor[a])) > 1e-9 * ratio ||
        std::abs(f.origin - c.origin) > 1e-12 * (1 + std::abs(c.origin)) ||
        (c.count - 1) * factor[a] + 1 != f.count) {
      throw Error(ErrorCode::DimensionMismatch, "fine grid is not a refinement of the coarse grid");
    }
  }
  double out = 0;
  for (std::size_t p = 0; p < coarse.size(); ++p) {
    if (!coarse.interior(p, margin)) continue;
    std::size_t q = 0;
    for (std::size_t a = 0; a < coarse.arity(); ++a) q += coarse.index(p, a) * factor[a] * fine.stride(a);
    out = std::max(out, st.per_point[q]);
  }
  return out;
}

}  // namespace laxkit::num
