#include "laxkit/numerics.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace laxkit::num {

bool is_nilpotent(const Mat& a) {
  // A is nilpotent iff A^n = 0; exact zero only, so this fires for the
  // integer-valued triangular parameters used by the families.
  Mat p = a;
  for (Eigen::Index k = 1; k < a.rows(); ++k) p = p * a;
  return p.isZero(0);
}

Mat expm(const Mat& a) {
  if (is_nilpotent(a)) {
    Mat out = identity(static_cast<std::size_t>(a.rows()));
    Mat term = out;
    for (Eigen::Index k = 1; k < a.rows(); ++k) {
      term = term * a / static_cast<double>(k);
      out += term;
    }
    return out;
  }
  const Eigen::MatrixXcd dyn = a;
  const Eigen::MatrixXcd e = dyn.exp();
  return e;
}

}  // namespace laxkit::num
