#pragma once

// Batch front-end: run configuration, the claim registry, the runner that
// executes claims into a report, and report serialization.

#include "laxkit/numerics.hpp"
#include "laxkit/recursion.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace laxkit::cli {

struct GridSpec {
  double lo = 0;
  double hi = 1;
  std::size_t count = 65;
};

enum class ReportFormat { Text, Structured };

struct RunConfig {
  std::string equation = "chiral";
  std::string seed = "gM";
  int n_min = -2;
  int n_max = 2;
  /// Constant matrices bound to the parameter atoms (M, Lambda).
  std::map<std::string, num::Mat> params;
  num::SolutionFamily family;
  GridSpec grid;
  /// Number of grids in the refinement sequence (coarsest first, h halved).
  std::size_t levels = 3;
  std::vector<double> lambdas{0.25, 0.5, 1.0, 2.0};
  double min_order = 1.8;
  /// Off-shell residual must exceed the on-shell one by this factor.
  double control_factor = 1e3;
  /// |order| below this counts as "no convergence" for a negative control.
  double flat_order = 0.5;
  /// Tolerance for checks that should hold to roundoff (lift, determinant).
  double roundoff_tolerance = 1e-10;
  std::string output;
  ReportFormat format = ReportFormat::Text;
};

/// Defaults for "chiral" or "sdym"; throws UnknownEquation.
RunConfig default_config(std::string_view equation);

/// Parses the sectioned key-value format of docs/config-format.md on top of
/// the defaults for the equation it names. Throws ConfigInvalid.
RunConfig parse_config(std::istream& in, std::string_view source = "<config>");
/// Throws IoFailure when the file cannot be read.
RunConfig load_config(const std::filesystem::path& path);
/// Window contains 0, lambdas nonzero and off the 1 + lambda^2 = 0 poles,
/// matrices square with one common dimension and traceless for SDYM.
/// Throws ConfigInvalid.
void validate(const RunConfig& cfg);

std::string_view to_string(ReportFormat f);
ReportFormat parse_format(std::string_view s);

// --- report ---------------------------------------------------------------------

enum class Stage { Symbolic, Hierarchy, Numeric, Lax };
std::string_view to_string(Stage s);

enum class Outcome { Pass, Fail, ExpectedFail, Skipped };
std::string_view to_string(Outcome o);

struct ClaimRecord {
  std::string id;
  std::string anchor;
  Stage stage = Stage::Symbolic;
  /// "holds", "fails" or empty when the claim has no symbolic part.
  std::string symbolic;
  std::vector<double> h;
  std::vector<double> residuals;
  std::optional<double> order;
  std::string convergence;
  bool expected_fail = false;
  Outcome outcome = Outcome::Fail;
  std::string detail;
};

struct Report {
  std::string equation;
  std::string family;
  std::string seed;
  int n_min = 0;
  int n_max = 0;
  std::vector<ClaimRecord> records;
};

/// False iff some record failed without being an expected failure.
bool passed(const Report& r);

/// Text: one block per claim plus a summary line. Structured: JSON with the
/// same fields in a fixed key order. Both print numbers in shortest
/// round-trip form and are deterministic.
void emit_report(const Report& r, ReportFormat format, std::ostream& os);
/// Writes through a temporary file and a rename. Throws IoFailure.
void write_report(const Report& r, ReportFormat format, const std::filesystem::path& path);

// --- claims ---------------------------------------------------------------------

struct RunContext;

/// A registry entry: a formula anchor and the check that fills a record.
struct Claim {
  std::string id;
  std::string anchor;
  Stage stage = Stage::Symbolic;
  std::function<void(RunContext&, ClaimRecord&)> check;
};

/// Registry for a configuration. The entries depend on the equation, the
/// seed and window, and the lambda list; see README for the counts.
std::vector<Claim> claim_catalog(const RunConfig& cfg);

/// Runs every registered claim of the selected stages in registry order. A
/// module error inside one claim is recorded on that claim and the run
/// continues. Throws ConfigInvalid before running anything.
Report run(const RunConfig& cfg, const std::vector<Stage>& stages = {Stage::Symbolic, Stage::Hierarchy,
                                                                     Stage::Numeric, Stage::Lax});

}  // namespace laxkit::cli
