#pragma once

// State shared by the claims of one run. Expensive pieces (sampled grids,
// potentials, Lax wavefunctions, the hierarchy) are built on first use.

#include "laxkit/cli.hpp"
#include "laxkit/errors.hpp"

#include <memory>

namespace laxkit::cli {

struct NumericLevel {
  num::Grid grid;
  num::GridField u;
  num::Background background;
  std::unique_ptr<num::GridEnv> env;
  /// Set when the potential could not be integrated (off-shell input).
  std::optional<Error> potential_error;
  std::map<double, num::LaxResult> lax;
};

struct NumericSuite {
  num::SolutionFamily family;
  num::Grid coarsest;
  std::vector<std::unique_ptr<NumericLevel>> levels;
};

struct RunContext {
  RunContext(const RunConfig& c);

  const RunConfig& cfg;
  EquationPtr eq;

  bool off_shell() const { return cfg.family.kind == num::FamilyKind::PerturbedOffshell; }
  /// The configured family on every refinement level.
  NumericSuite& suite();
  /// The unperturbed family on the coarsest grid only (negative controls
  /// compare against it at equal h).
  NumericLevel& on_shell_reference();
  const num::LaxResult& lax(NumericLevel& level, double lambda);
  const Hierarchy& hierarchy();

 private:
  std::unique_ptr<NumericLevel> build_level(const num::SolutionFamily& family, const num::Grid& g) const;

  std::optional<NumericSuite> suite_;
  std::unique_ptr<NumericLevel> reference_;
  std::optional<Hierarchy> hierarchy_;
};

}  // namespace laxkit::cli
