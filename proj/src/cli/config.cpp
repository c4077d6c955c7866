#include "laxkit/cli.hpp"
#include "laxkit/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace laxkit::cli {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::ConfigInvalid, msg); }

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

struct Entry {
  std::string value;
  std::string where;
};

// (section, key) -> value, in file order of first appearance.
using Entries = std::map<std::pair<std::string, std::string>, Entry>;

Entries read_entries(std::istream& in, std::string_view source) {
  Entries out;
  std::string section;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = std::string(source) + ":" + std::to_string(lineno);
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') invalid(where + ": unterminated section header");
      section = trim(std::string_view(t).substr(1, t.size() - 2));
      if (section.empty()) invalid(where + ": empty section name");
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) invalid(where + ": expected 'key = value'");
    if (section.empty()) invalid(where + ": key outside any section");
    std::string key = trim(std::string_view(t).substr(0, eq));
    std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) invalid(where + ": empty key");
    auto [it, fresh] = out.try_emplace({section, key}, Entry{value, where});
    if (!fresh) invalid(where + ": duplicate key '" + key + "' (first at " + it->second.where + ")");
  }
  return out;
}

double parse_double(const Entry& e, const std::string& key) {
  std::istringstream ss(e.value);
  double v = 0;
  std::string rest;
  if (!(ss >> v) || (ss >> rest)) invalid(e.where + ": '" + key + "' needs one number, got '" + e.value + "'");
  if (!std::isfinite(v)) invalid(e.where + ": '" + key + "' must be finite");
  return v;
}

std::vector<double> parse_list(const Entry& e, const std::string& key) {
  std::istringstream ss(e.value);
  std::vector<double> out;
  std::string tok;
  while (ss >> tok) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || !std::isfinite(v)) invalid(e.where + ": bad number '" + tok + "' in '" + key + "'");
    out.push_back(v);
  }
  if (out.empty()) invalid(e.where + ": '" + key + "' is empty");
  return out;
}

std::size_t parse_count(const Entry& e, const std::string& key) {
  const double v = parse_double(e, key);
  if (v < 0 || v != std::floor(v)) invalid(e.where + ": '" + key + "' must be a non-negative integer");
  return static_cast<std::size_t>(v);
}

// Rows separated by ';', entries by whitespace, row-major.
num::Mat parse_matrix(const Entry& e, const std::string& key) {
  std::vector<std::vector<double>> rows;
  std::istringstream ss(e.value);
  std::string row;
  while (std::getline(ss, row, ';')) rows.push_back(parse_list(Entry{row, e.where}, key));
  const std::size_t n = rows.size();
  if (n == 0 || n > static_cast<std::size_t>(num::kMaxDim)) {
    invalid(e.where + ": matrix '" + key + "' must have 1.." + std::to_string(num::kMaxDim) + " rows");
  }
  num::Mat m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n) invalid(e.where + ": matrix '" + key + "' is not square");
    for (std::size_t c = 0; c < n; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  }
  return m;
}

num::FamilyKind parse_kind(const Entry& e) {
  for (auto k : {num::FamilyKind::ExponentialProduct, num::FamilyKind::LiftedChiral,
                 num::FamilyKind::PerturbedOffshell}) {
    if (num::to_string(k) == e.value) return k;
  }
  invalid(e.where + ": unknown family kind '" + e.value + "'");
}

}  // namespace

std::string_view to_string(ReportFormat f) { return f == ReportFormat::Text ? "text" : "structured"; }

ReportFormat parse_format(std::string_view s) {
  if (s == "text") return ReportFormat::Text;
  if (s == "structured") return ReportFormat::Structured;
  invalid("unknown report format '" + std::string(s) + "' (text or structured)");
}

RunConfig default_config(std::string_view equation) {
  const EquationPtr eq = equation_by_name(equation);
  RunConfig cfg;
  cfg.equation = eq->name;
  cfg.params = num::default_params();
  if (eq->vars.arity() == 4) {
    cfg.seed = "JM";
    cfg.family = num::nilpotent_family(num::FamilyKind::LiftedChiral);
    cfg.grid = {0.0, 0.5, 9};
  } else {
    cfg.seed = "gM";
    cfg.family = num::nilpotent_family(num::FamilyKind::ExponentialProduct);
    cfg.grid = {0.0, 1.0, 65};
  }
  return cfg;
}

RunConfig parse_config(std::istream& in, std::string_view source) {
  Entries entries = read_entries(in, source);
  auto take = [&](const std::string& section, const std::string& key) -> std::optional<Entry> {
    auto it = entries.find({section, key});
    if (it == entries.end()) return std::nullopt;
    Entry e = it->second;
    entries.erase(it);
    return e;
  };

  const auto eq_entry = take("run", "equation");
  RunConfig cfg;
  try {
    cfg = default_config(eq_entry ? eq_entry->value : "chiral");
  } catch (const Error& err) {
    invalid((eq_entry ? eq_entry->where + ": " : std::string{}) + err.what());
  }

  if (auto e = take("run", "seed")) cfg.seed = e->value;
  if (auto e = take("run", "window")) {
    const auto w = parse_list(*e, "window");
    if (w.size() != 2 || w[0] != std::floor(w[0]) || w[1] != std::floor(w[1])) {
      invalid(e->where + ": window needs two integers 'n_min n_max'");
    }
    cfg.n_min = static_cast<int>(w[0]);
    cfg.n_max = static_cast<int>(w[1]);
  }

  // Every remaining [params] key binds a parameter matrix of that name.
  for (auto it = entries.begin(); it != entries.end();) {
    if (it->first.first == "params") {
      cfg.params[it->first.second] = parse_matrix(it->second, it->first.second);
      it = entries.erase(it);
    } else {
      ++it;
    }
  }

  if (auto e = take("family", "kind")) cfg.family.kind = parse_kind(*e);
  if (auto e = take("family", "a")) cfg.family.a = parse_matrix(*e, "a");
  if (auto e = take("family", "b")) cfg.family.b = parse_matrix(*e, "b");
  if (auto e = take("family", "epsilon")) {
    cfg.family.epsilon = parse_double(*e, "epsilon");
  } else if (cfg.family.kind == num::FamilyKind::PerturbedOffshell) {
    cfg.family.epsilon = 0.1;
  }

  if (auto e = take("grid", "lo")) cfg.grid.lo = parse_double(*e, "lo");
  if (auto e = take("grid", "hi")) cfg.grid.hi = parse_double(*e, "hi");
  if (auto e = take("grid", "count")) cfg.grid.count = parse_count(*e, "count");
  if (auto e = take("grid", "levels")) cfg.levels = parse_count(*e, "levels");

  if (auto e = take("numeric", "lambdas")) cfg.lambdas = parse_list(*e, "lambdas");
  if (auto e = take("numeric", "min_order")) cfg.min_order = parse_double(*e, "min_order");
  if (auto e = take("numeric", "control_factor")) cfg.control_factor = parse_double(*e, "control_factor");
  if (auto e = take("numeric", "flat_order")) cfg.flat_order = parse_double(*e, "flat_order");
  if (auto e = take("numeric", "roundoff_tolerance")) {
    cfg.roundoff_tolerance = parse_double(*e, "roundoff_tolerance");
  }

  if (auto e = take("output", "path")) cfg.output = e->value;
  if (auto e = take("output", "format")) {
    try {
      cfg.format = parse_format(e->value);
    } catch (const Error& err) {
      invalid(e->where + ": " + err.what());
    }
  }

  if (!entries.empty()) {
    const auto& [key, e] = *entries.begin();
    invalid(e.where + ": unknown key '" + key.second + "' in section [" + key.first + "]");
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot read config '" + path.string() + "'");
  return parse_config(in, path.string());
}

void validate(const RunConfig& cfg) {
  EquationPtr eq;
  try {
    eq = equation_by_name(cfg.equation);
  } catch (const Error& err) {
    invalid(err.what());
  }
  if (cfg.n_min > 0 || cfg.n_max < 0) {
    invalid("window [" + std::to_string(cfg.n_min) + ", " + std::to_string(cfg.n_max) + "] must contain 0");
  }
  bool known_seed = false;
  for (const auto& s : seed_characteristics(*eq)) known_seed = known_seed || s.name == cfg.seed;
  if (!known_seed) invalid("'" + cfg.seed + "' is not a seed characteristic of " + cfg.equation);

  if (cfg.lambdas.empty()) invalid("lambda list is empty");
  for (double l : cfg.lambdas) {
    if (l == 0) invalid("lambda must be nonzero");
    if (std::abs(1 + l * l) < 1e-12) invalid("lambda sits on a pole of 1 + lambda^2");
  }

  const bool sdym = eq->trace_constraint;
  std::optional<Eigen::Index> dim;
  auto check_matrix = [&](const std::string& name, const num::Mat& m, bool traceless) {
    if (m.rows() != m.cols() || m.rows() == 0) invalid("matrix '" + name + "' must be square");
    if (dim && *dim != m.rows()) invalid("matrix '" + name + "' does not match the common dimension");
    dim = m.rows();
    if (traceless && std::abs(m.trace()) > 1e-12) invalid("matrix '" + name + "' must be traceless for " + cfg.equation);
  };
  for (const char* needed : {"M", "Lambda"}) {
    if (!cfg.params.count(needed)) invalid(std::string("parameter '") + needed + "' is not bound");
  }
  for (const auto& [name, m] : cfg.params) check_matrix(name, m, sdym);
  check_matrix("family a", cfg.family.a, sdym);
  check_matrix("family b", cfg.family.b, sdym);

  const bool four = eq->vars.arity() == 4;
  if (cfg.family.kind == num::FamilyKind::LiftedChiral && !four) {
    invalid("the lifted-chiral family needs a four-variable equation");
  }
  if (cfg.family.kind == num::FamilyKind::ExponentialProduct && four) {
    invalid("the exponential-product family lives on two variables; use lifted-chiral");
  }
  if (cfg.family.kind == num::FamilyKind::PerturbedOffshell && cfg.family.epsilon == 0) {
    invalid("a perturbed-offshell family needs a nonzero epsilon");
  }

  if (!(cfg.grid.hi > cfg.grid.lo)) invalid("grid needs hi > lo");
  if (cfg.grid.count < 5) invalid("grid needs at least 5 points per axis");
  if (cfg.levels < 3) invalid("convergence needs at least 3 grid levels");
  if (!(cfg.min_order > 0)) invalid("min_order must be positive");
  if (!(cfg.control_factor >= 1)) invalid("control_factor must be at least 1");
  if (!(cfg.flat_order > 0)) invalid("flat_order must be positive");
  if (!(cfg.roundoff_tolerance > 0)) invalid("roundoff_tolerance must be positive");
}

}  // namespace laxkit::cli
