#include "context.hpp"

#include "laxkit/errors.hpp"

#include <algorithm>

namespace laxkit::cli {

RunContext::RunContext(const RunConfig& c) : cfg(c), eq(equation_by_name(c.equation)) {}

std::unique_ptr<NumericLevel> RunContext::build_level(const num::SolutionFamily& family, const num::Grid& g) const {
  auto level = std::make_unique<NumericLevel>();
  level->grid = g;
  level->u = num::sample_solution(family, g);
  level->background = num::make_background(*eq, level->u);
  level->env = std::make_unique<num::GridEnv>(*eq, level->u);
  for (const auto& [name, m] : cfg.params) level->env->bind_param(name, m);
  try {
    level->env->bind_potential(num::compute_potential(*eq, level->u).value);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::PathInconsistent) throw;
    level->potential_error = e;
  }
  return level;
}

NumericSuite& RunContext::suite() {
  if (!suite_) {
    NumericSuite s;
    s.family = cfg.family;
    s.coarsest = num::Grid::box(eq->vars, cfg.grid.lo, cfg.grid.hi, cfg.grid.count);
    for (std::size_t k = 0; k < cfg.levels; ++k) {
      s.levels.push_back(build_level(s.family, s.coarsest.refined(std::size_t{1} << k)));
    }
    suite_ = std::move(s);
  }
  return *suite_;
}

NumericLevel& RunContext::on_shell_reference() {
  if (!reference_) {
    num::SolutionFamily family = cfg.family;
    family.kind = eq->vars.arity() == 4 ? num::FamilyKind::LiftedChiral : num::FamilyKind::ExponentialProduct;
    family.epsilon = 0;
    reference_ = build_level(family, suite().coarsest);
  }
  return *reference_;
}

const num::LaxResult& RunContext::lax(NumericLevel& level, double lambda) {
  auto it = level.lax.find(lambda);
  if (it == level.lax.end()) {
    // A fixed generic initial value; any invertible choice works.
    const num::Mat phi0 = num::identity(level.u.dim()) + cfg.params.at("Lambda");
    it = level.lax.emplace(lambda, num::integrate_lax(*eq, level.u, lambda, phi0)).first;
  }
  return it->second;
}

const Hierarchy& RunContext::hierarchy() {
  if (!hierarchy_) {
    const auto seeds = seed_characteristics(*eq);
    const auto seed = std::find_if(seeds.begin(), seeds.end(), [&](const auto& s) { return s.name == cfg.seed; });
    if (seed == seeds.end()) throw Error(ErrorCode::ConfigInvalid, "unknown seed '" + cfg.seed + "'");
    num::VerifierOptions opts;
    opts.min_order = cfg.min_order;
    hierarchy_ = generate_hierarchy(eq, *seed, cfg.n_min, cfg.n_max, num::make_numeric_verifier(opts));
  }
  return *hierarchy_;
}

bool passed(const Report& r) {
  return std::none_of(r.records.begin(), r.records.end(),
                      [](const ClaimRecord& c) { return c.outcome == Outcome::Fail; });
}

Report run(const RunConfig& cfg, const std::vector<Stage>& stages) {
  validate(cfg);
  RunContext ctx(cfg);
  Report report;
  report.equation = cfg.equation;
  report.family = std::string(num::to_string(cfg.family.kind));
  report.seed = cfg.seed;
  report.n_min = cfg.n_min;
  report.n_max = cfg.n_max;
  for (const Claim& claim : claim_catalog(cfg)) {
    if (std::find(stages.begin(), stages.end(), claim.stage) == stages.end()) continue;
    ClaimRecord rec;
    rec.id = claim.id;
    rec.anchor = claim.anchor;
    rec.stage = claim.stage;
    try {
      claim.check(ctx, rec);
    } catch (const std::exception& e) {
      // Recorded, not propagated: the remaining claims still run.
      rec.outcome = Outcome::Fail;
      rec.detail = e.what();
    }
    report.records.push_back(std::move(rec));
  }
  return report;
}

}  // namespace laxkit::cli
