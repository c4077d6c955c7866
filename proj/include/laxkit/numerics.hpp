#pragma once

// Grid-based verification of the symbolic claims: exact solution families
// sampled on uniform grids, finite-difference residuals, potentials and Lax
// wavefunctions integrated along staircase paths, and convergence orders.
//
// All derivatives are second-order finite differences: central in the
// interior, three-point one-sided on the boundary. Residual statistics are
// taken where every stencil involved is central: one point away from the
// boundary for first derivatives, two for divergences of currents (a central
// difference of a one-sided value loses an order).

#include "laxkit/recursion.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <iosfwd>
#include <optional>

namespace laxkit::num {

using Complex = std::complex<double>;
/// Largest supported matrix dimension. Matrices live on the stack, which
/// keeps per-point arithmetic on million-point grids allocation-free.
inline constexpr int kMaxDim = 4;
using Mat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;

Mat identity(std::size_t n);
Mat commutator(const Mat& a, const Mat& b);
/// Frobenius norm.
double norm(const Mat& m);

// --- grids -------------------------------------------------------------------

struct Axis {
  std::string name;
  double origin = 0;
  double h = 0;
  std::size_t count = 0;

  bool operator==(const Axis&) const = default;
};

class Grid {
 public:
  Grid() = default;
  /// Throws GridTooSmall for fewer than 5 points or non-positive spacing.
  explicit Grid(std::vector<Axis> axes);
  /// Same box [lo, hi] on every axis of vars, `count` points per axis.
  static Grid box(const VarSpace& vars, double lo, double hi, std::size_t count);

  std::size_t arity() const { return axes_.size(); }
  const Axis& axis(std::size_t a) const { return axes_.at(a); }
  const std::vector<Axis>& axes() const { return axes_; }
  std::size_t size() const { return size_; }
  std::size_t stride(std::size_t a) const { return strides_.at(a); }
  /// Per-axis index of a flat point index (row-major, last axis fastest).
  std::size_t index(std::size_t flat, std::size_t a) const { return (flat / strides_[a]) % axes_[a].count; }
  double coordinate(std::size_t flat, std::size_t a) const {
    return axes_[a].origin + axes_[a].h * static_cast<double>(index(flat, a));
  }
  /// At least `margin` points away from every boundary.
  bool interior(std::size_t flat, std::size_t margin = 1) const;
  /// Largest spacing over all axes.
  double h() const;
  /// Same box with (count - 1) * factor + 1 points per axis.
  Grid refined(std::size_t factor) const;

  bool operator==(const Grid&) const = default;

 private:
  std::vector<Axis> axes_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
};

/// N x N complex matrix per grid point, stored contiguously (column-major
/// within a point).
class GridField {
 public:
  GridField() = default;
  GridField(Grid grid, std::size_t n);

  const Grid& grid() const { return grid_; }
  std::size_t dim() const { return n_; }
  std::size_t size() const { return grid_.size(); }

  using View = Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>>;
  using MutView = Eigen::Map<Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>>;

  Mat at(std::size_t flat) const;
  /// Copy-free access to the matrix at a point.
  View view(std::size_t flat) const {
    const auto n = static_cast<Eigen::Index>(n_);
    return View(data_.data() + flat * n_ * n_, n, n);
  }
  MutView view(std::size_t flat) {
    const auto n = static_cast<Eigen::Index>(n_);
    return MutView(data_.data() + flat * n_ * n_, n, n);
  }
  void set(std::size_t flat, const Mat& m);
  const std::vector<Complex>& raw() const { return data_; }
  std::vector<Complex>& raw() { return data_; }

  /// Largest Frobenius norm over all points.
  double max_norm() const;
  bool finite() const;

 private:
  Grid grid_;
  std::size_t n_ = 0;
  std::vector<Complex> data_;
};

/// Pointwise maps.
GridField map(const GridField& a, const std::function<Mat(const Mat&)>& f);
GridField zip(const GridField& a, const GridField& b, const std::function<Mat(const Mat&, const Mat&)>& f);
GridField inverse(const GridField& u);
GridField constant_field(const Grid& grid, const Mat& m);
double max_difference(const GridField& a, const GridField& b);

// --- matrix exponential and solution families ----------------------------

/// Scaling and squaring with a Pade approximant; nilpotent input is summed
/// exactly.
Mat expm(const Mat& a);
bool is_nilpotent(const Mat& a);

enum class FamilyKind { ExponentialProduct, LiftedChiral, PerturbedOffshell };
std::string_view to_string(FamilyKind k);

/// g(t, x) = exp(tA) exp(xB). LiftedChiral samples J(y, z, ybar, zbar) =
/// g(y + ybar, z + zbar). PerturbedOffshell multiplies by (I + eps P(t, x))
/// for a fixed smooth non-constant P, and is lifted on four-variable grids.
struct SolutionFamily {
  FamilyKind kind = FamilyKind::ExponentialProduct;
  Mat a;
  Mat b;
  double epsilon = 0;
};

/// The nilpotent pair A = [[0,1],[0,0]], B = [[0,0],[1,0]].
SolutionFamily nilpotent_family(FamilyKind kind = FamilyKind::ExponentialProduct, double epsilon = 0);
/// The fixed perturbation P(t, x) used by PerturbedOffshell.
Mat perturbation(std::size_t n, double t, double x);

/// Throws DimensionMismatch for non-square or mismatched parameters, or a
/// grid arity that does not fit the family kind.
GridField sample_solution(const SolutionFamily& family, const Grid& grid);

// --- stencils and residuals --------------------------------------------------

/// d/d(axis) with second-order accuracy everywhere on the grid.
GridField diff(const GridField& f, std::size_t axis);

struct ResidualStats {
  double max = 0;
  /// Root mean square over the points the statistics cover.
  double l2 = 0;
  std::size_t points = 0;
  /// Frobenius norm per grid point; zero where not covered.
  std::vector<double> per_point;
};

/// Statistics of |f| over points at least `margin` (>= 1) from every boundary.
ResidualStats interior_stats(const GridField& f, std::size_t margin = 1);
/// Max of st.per_point over the nodes of `fine` that coincide with nodes of
/// `coarse` lying `margin` or more layers inside it. Comparing refinements on
/// a fixed set of physical points keeps the location of the max from
/// drifting with h. `fine` must be `coarse` refined by an integer factor
/// (DimensionMismatch otherwise).
double common_node_max(const ResidualStats& st, const Grid& fine, const Grid& coarse, std::size_t margin);

/// Connection u^-1 u_conn of a slot.
GridField connection(const EquationDef& eq, const GridField& u, std::size_t slot);
/// F[u] by finite differences. Throws GridTooSmall.
ResidualStats fd_residual_field_equation(const EquationDef& eq, const GridField& u);
/// u with u^-1 and both slot connections, computed once for repeated
/// conservation checks on the same background.
struct Background {
  GridField u;
  GridField u_inv;
  std::array<GridField, 2> conn;
};
Background make_background(const EquationDef& eq, const GridField& u);
/// Divergence of the current pair (A_a(u^-1 Q), A_b(u^-1 Q)).
ResidualStats conservation_residual(const EquationDef& eq, const GridField& q, const GridField& u);
ResidualStats conservation_residual(const EquationDef& eq, const GridField& q, const Background& bg);
/// S(Psi; u): same divergence, applied to a Lax wavefunction.
ResidualStats symmetry_residual(const EquationDef& eq, const GridField& psi, const GridField& u);

/// Largest |det u - 1| over the grid.
double determinant_defect(const GridField& u);
/// Largest |tr(u^-1 u_v)| over the grid and all axes.
double trace_defect(const GridField& u);

// --- evaluation of symbolic expressions -------------------------------------

/// Grid values for the atoms of symbolic expressions: the field, its
/// potential, extra named fields and parameter matrices. Jets are finite
/// differences, computed on demand and cached.
class GridEnv {
 public:
  GridEnv(const EquationDef& eq, GridField u);

  const EquationDef& equation() const { return eq_; }
  const GridField& field() const { return u_; }
  const Grid& grid() const { return u_.grid(); }

  void bind_param(const std::string& name, const Mat& m);
  void bind_field(const std::string& name, GridField f);
  void bind_potential(GridField x);
  bool has_potential() const { return potential_.has_value(); }

  /// Throws UnboundAtom.
  const GridField& atom(const Atom& a);
  GridField eval(const Poly& p);

 private:
  const GridField& jet(const std::string& name, const GridField& base, const MultiIndex& mu);

  const EquationDef& eq_;
  GridField u_;
  std::optional<GridField> potential_;
  std::map<std::string, GridField> fields_;
  std::map<std::string, Mat> params_;
  std::map<Atom, GridField> cache_;
};

// --- path integration --------------------------------------------------------

struct PathOptions {
  /// Tolerance on the path-independence residual is
  /// factor * h^2 * (1 + max |integrand|).
  double tolerance_factor = 1.0;
};

struct PathResult {
  GridField value;
  /// Max pointwise difference between the forward and the reversed staircase.
  double path_residual = 0;
  double tolerance = 0;
};

/// X from the potential rules by trapezoidal staircase integration from
/// X = 0 on the plane where all integrated axes sit at their first index.
/// Throws PathInconsistent when the two staircases disagree beyond tolerance.
PathResult compute_potential(const EquationDef& eq, const GridField& u, const PathOptions& opts = {});
/// Max over interior points and rules of |X_v - rhs_v|.
ResidualStats potential_consistency(const EquationDef& eq, const GridField& x, const GridField& u);

/// Grid values of a characteristic. Closed forms are evaluated pointwise;
/// implicit systems are integrated (fourth-order Runge-Kutta along staircase
/// paths, Q = 0 on the base plane). Throws UnboundAtom, PathInconsistent.
PathResult eval_characteristic(const Characteristic& q, GridEnv& env, const PathOptions& opts = {});

// --- Lax pair ----------------------------------------------------------------

struct LaxResult {
  GridField phi;
  GridField psi;
  double compat_residual = 0;
};

/// Integrates the Lax pair in explicit form from phi(origin) = phi0 along the
/// forward and reversed staircase with fourth-order Runge-Kutta. Four-variable
/// input must be a lift (NotALift otherwise); phi is then a lift up to the
/// integration error. Throws ZeroLambda, SingularLambda, DimensionMismatch.
LaxResult integrate_lax(const EquationDef& eq, const GridField& u, Complex lambda, const Mat& phi0);

/// Max |u(y, z, ybar, zbar) - u(y + h, z, ybar - h, zbar)| and likewise in z;
/// zero for a lift sampled on equal spacings.
double lift_defect(const GridField& u);
/// Max over interior points of the difference between a four-variable
/// residual and the two-variable residual at (y + ybar, z + zbar). The chiral
/// grid must have the same spacing and cover the sums.
double lift_consistency(const ResidualStats& sdym, const Grid& sdym_grid, const ResidualStats& chiral,
                        const Grid& chiral_grid);

// --- convergence ---------------------------------------------------------------

enum class ConvergenceStatus { Converging, Exact, NonMonotone };
std::string_view to_string(ConvergenceStatus s);

/// Residuals at or below this are indistinguishable from roundoff.
inline constexpr double kRoundoffFloor = 1e-9;

struct ConvergenceEstimate {
  ConvergenceStatus status = ConvergenceStatus::Converging;
  /// Least-squares slope of log residual against log h (0 when exact), fitted
  /// up to the first residual at the roundoff floor.
  double order = 0;
  std::vector<double> h;
  std::vector<double> residuals;
};

/// Requires >= 3 spacings in geometric progression (invalid_argument).
ConvergenceEstimate convergence_order(const std::vector<double>& h, const std::vector<double>& residuals,
                                      double floor = kRoundoffFloor);
/// Runs `task` on grid.refined(2^k) for k < levels and estimates the order.
ConvergenceEstimate convergence_order(const std::function<double(const Grid&)>& task, const Grid& coarsest,
                                      std::size_t levels = 3, double floor = kRoundoffFloor);
/// Same as convergence_order, but throws NonMonotone unless the estimate is
/// converging or exact.
ConvergenceEstimate require_convergence(const std::vector<double>& h, const std::vector<double>& residuals,
                                        double floor = kRoundoffFloor);

// --- hierarchy support ---------------------------------------------------------

struct VerifierOptions {
  FamilyKind kind = FamilyKind::ExponentialProduct;
  std::size_t coarse_count = 17;
  double min_order = 1.8;
};

/// Numeric check for implicit hierarchy levels: integrate the system on the
/// nilpotent family at two refinements and require the conservation residual
/// to converge (or vanish).
NumericVerifier make_numeric_verifier(const VerifierOptions& opts = {});

/// Parameter matrices used by default for the atoms M and Lambda (2 x 2,
/// traceless).
std::map<std::string, Mat> default_params();

// --- snapshots -----------------------------------------------------------------

/// Plain-text snapshot: a header with axes, spacings, counts and N, then one
/// line per point in row-major grid order holding the matrix entries row by
/// row as "re im" pairs in %.17g. Deterministic and round-trip exact.
void write_snapshot(std::ostream& os, const GridField& f);
GridField read_snapshot(std::istream& is);

}  // namespace laxkit::num
