// laxkit: batch verification front-end. See README for usage.

#include "laxkit/cli.hpp"
#include "laxkit/errors.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

using namespace laxkit;
using namespace laxkit::cli;

constexpr const char* kConfigDirEnv = "LAXKIT_CONFIG_DIR";

struct Options {
  std::string config;
  std::string equation;
  std::string window;
  std::vector<double> lambdas;
  std::size_t grid = 0;
  std::string output;
  std::string format;
};

std::filesystem::path config_dir() {
  const char* dir = std::getenv(kConfigDirEnv);
  return dir && *dir ? std::filesystem::path(dir) : std::filesystem::path();
}

// Explicit path first (relative paths also tried under the config directory),
// then <config dir>/<equation>.conf, then built-in defaults.
RunConfig resolve_config(const Options& o) {
  const auto dir = config_dir();
  if (!o.config.empty()) {
    std::filesystem::path p(o.config);
    if (!std::filesystem::exists(p) && p.is_relative() && !dir.empty() && std::filesystem::exists(dir / p)) {
      p = dir / p;
    }
    RunConfig cfg = load_config(p);
    if (!o.equation.empty() && o.equation != cfg.equation) {
      throw Error(ErrorCode::ConfigInvalid,
                  "--equation " + o.equation + " conflicts with equation " + cfg.equation + " in " + p.string());
    }
    return cfg;
  }
  const std::string eq = o.equation.empty() ? "chiral" : o.equation;
  if (!dir.empty() && std::filesystem::exists(dir / (eq + ".conf"))) return load_config(dir / (eq + ".conf"));
  try {
    return default_config(eq);
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigInvalid, e.what());
  }
}

void apply_overrides(RunConfig& cfg, const Options& o) {
  if (!o.window.empty()) {
    const auto colon = o.window.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument("missing ':'");
      std::size_t used = 0;
      const std::string lo = o.window.substr(0, colon), hi = o.window.substr(colon + 1);
      cfg.n_min = std::stoi(lo, &used);
      if (used != lo.size()) throw std::invalid_argument(lo);
      cfg.n_max = std::stoi(hi, &used);
      if (used != hi.size()) throw std::invalid_argument(hi);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ConfigInvalid, "--window expects n_min:n_max, got '" + o.window + "'");
    }
  }
  if (!o.lambdas.empty()) cfg.lambdas = o.lambdas;
  if (o.grid) cfg.grid.count = o.grid;
  if (!o.output.empty()) cfg.output = o.output;
  if (!o.format.empty()) cfg.format = parse_format(o.format);
  validate(cfg);
}

int execute(const Options& o, const std::vector<Stage>& stages) {
  RunConfig cfg = resolve_config(o);
  apply_overrides(cfg, o);
  const Report report = run(cfg, stages);
  if (cfg.output.empty()) {
    emit_report(report, cfg.format, std::cout);
  } else {
    write_report(report, cfg.format, cfg.output);
    std::cerr << "report written to " << cfg.output << (passed(report) ? " (pass)\n" : " (FAIL)\n");
  }
  return passed(report) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetry, recursion and Lax-pair verification for the chiral field and SDYM equations"};
  app.require_subcommand(1);
  Options o;

  struct Command {
    const char* name;
    const char* help;
    std::vector<Stage> stages;
  };
  const std::vector<Command> commands = {
      {"verify-symbolic", "exact symbolic identities and the characteristic catalog", {Stage::Symbolic}},
      {"gen-hierarchy", "generate and verify the charge hierarchy of the seed", {Stage::Hierarchy}},
      {"verify-numeric", "grid residuals and convergence orders on the solution family", {Stage::Numeric}},
      {"lax-check", "symbolic Lax identities and numeric Lax integration", {Stage::Lax}},
      {"report", "run every stage and write the full report",
       {Stage::Symbolic, Stage::Hierarchy, Stage::Numeric, Stage::Lax}},
  };
  std::vector<Stage> selected;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("-c,--config", o.config, std::string("config file (relative paths also searched in $") +
                                                 kConfigDirEnv + ")");
    sub->add_option("-e,--equation", o.equation, "chiral or sdym");
    sub->add_option("-w,--window", o.window, "hierarchy window n_min:n_max (must contain 0)");
    sub->add_option("-l,--lambda", o.lambdas, "spectral parameter values (repeatable)");
    sub->add_option("-g,--grid", o.grid, "points per axis on the coarsest grid");
    sub->add_option("-o,--output", o.output, "report path (stdout when omitted)");
    sub->add_option("-f,--format", o.format, "text or structured");
    sub->callback([&selected, stages = c.stages] { selected = stages; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    return execute(o, selected);
  } catch (const Error& e) {
    std::cerr << "laxkit: " << e.what() << '\n';
    return e.code() == ErrorCode::IoFailure ? 3 : 2;
  }
}
