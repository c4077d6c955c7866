#include "laxkit/cli.hpp"
#include "laxkit/errors.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <fstream>
#include <ostream>

namespace laxkit::cli {

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::Symbolic: return "symbolic";
    case Stage::Hierarchy: return "hierarchy";
    case Stage::Numeric: return "numeric";
    case Stage::Lax: return "lax";
  }
  return "?";
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::ExpectedFail: return "expected-fail";
    case Outcome::Skipped: return "skipped";
  }
  return "?";
}

namespace {

struct Tally {
  std::size_t pass = 0, fail = 0, expected = 0, skipped = 0;
};

Tally tally(const Report& r) {
  Tally t;
  for (const auto& c : r.records) {
    switch (c.outcome) {
      case Outcome::Pass: ++t.pass; break;
      case Outcome::Fail: ++t.fail; break;
      case Outcome::ExpectedFail: ++t.expected; break;
      case Outcome::Skipped: ++t.skipped; break;
    }
  }
  return t;
}

// Shortest round-trip form, the same digits the structured output uses.
std::string numbers(const std::vector<double>& v) {
  std::string out;
  for (double d : v) out += (out.empty() ? "" : " ") + fmt::format("{}", d);
  return out;
}

void emit_text(const Report& r, std::ostream& os) {
  os << fmt::format("laxkit report: equation {}, family {}, seed {}, window [{}, {}]\n", r.equation, r.family,
                    r.seed, r.n_min, r.n_max);
  for (const auto& c : r.records) {
    std::string tag(to_string(c.outcome));
    for (auto& ch : tag) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    os << fmt::format("\n[{}] {} ({})\n", tag, c.id, to_string(c.stage));
    os << fmt::format("    anchor: {}\n", c.anchor);
    if (!c.symbolic.empty()) os << fmt::format("    symbolic: {}\n", c.symbolic);
    if (!c.h.empty()) os << fmt::format("    h: {}\n", numbers(c.h));
    if (!c.residuals.empty()) os << fmt::format("    residuals: {}\n", numbers(c.residuals));
    if (c.order) os << fmt::format("    order: {}\n", *c.order);
    if (!c.convergence.empty()) os << fmt::format("    convergence: {}\n", c.convergence);
    if (c.expected_fail) os << "    negative control: yes\n";
    if (!c.detail.empty()) os << fmt::format("    detail: {}\n", c.detail);
  }
  const Tally t = tally(r);
  os << fmt::format("\nsummary: {} claims, {} passed, {} failed as expected, {} skipped, {} failed -> {}\n",
                    r.records.size(), t.pass, t.expected, t.skipped, t.fail, passed(r) ? "PASS" : "FAIL");
}

void emit_structured(const Report& r, std::ostream& os) {
  using json = nlohmann::ordered_json;
  json doc;
  doc["format"] = "laxkit-report 1";
  doc["equation"] = r.equation;
  doc["family"] = r.family;
  doc["seed"] = r.seed;
  doc["window"] = {r.n_min, r.n_max};
  json claims = json::array();
  for (const auto& c : r.records) {
    json rec;
    rec["id"] = c.id;
    rec["anchor"] = c.anchor;
    rec["stage"] = std::string(to_string(c.stage));
    rec["symbolic"] = c.symbolic.empty() ? json(nullptr) : json(c.symbolic);
    rec["h"] = c.h;
    rec["residuals"] = c.residuals;
    rec["order"] = c.order ? json(*c.order) : json(nullptr);
    rec["convergence"] = c.convergence.empty() ? json(nullptr) : json(c.convergence);
    rec["expected_fail"] = c.expected_fail;
    rec["outcome"] = std::string(to_string(c.outcome));
    rec["detail"] = c.detail;
    claims.push_back(std::move(rec));
  }
  doc["claims"] = std::move(claims);
  const Tally t = tally(r);
  doc["summary"] = {{"claims", r.records.size()}, {"passed", t.pass}, {"expected_fail", t.expected},
                    {"skipped", t.skipped}, {"failed", t.fail}, {"overall", passed(r) ? "pass" : "fail"}};
  os << doc.dump(2) << '\n';
}

}  // namespace

void emit_report(const Report& r, ReportFormat format, std::ostream& os) {
  if (format == ReportFormat::Text) {
    emit_text(r, os);
  } else {
    emit_structured(r, os);
  }
  if (!os) throw Error(ErrorCode::IoFailure, "failed to write report");
}

void write_report(const Report& r, ReportFormat format, const std::filesystem::path& path) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot open '" + tmp.string() + "' for writing");
    emit_report(r, format, out);
    out.flush();
    if (!out) throw Error(ErrorCode::IoFailure, "failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::IoFailure, "cannot move report into place at '" + path.string() + "'");
  }
}

}  // namespace laxkit::cli
