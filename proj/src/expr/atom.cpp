#include "laxkit/errors.hpp"
#include "laxkit/expr.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace laxkit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonTerminating: return "NonTerminating";
    case ErrorCode::DerivativeOrderOverflow: return "DerivativeOrderOverflow";
    case ErrorCode::UnboundField: return "UnboundField";
    case ErrorCode::UnknownConnection: return "UnknownConnection";
    case ErrorCode::InvalidInverse: return "InvalidInverse";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownEquation: return "UnknownEquation";
    case ErrorCode::IncompatibleSystem: return "IncompatibleSystem";
    case ErrorCode::ZeroLambda: return "ZeroLambda";
    case ErrorCode::SingularLambda: return "SingularLambda";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::PathInconsistent: return "PathInconsistent";
    case ErrorCode::UnboundAtom: return "UnboundAtom";
    case ErrorCode::NonMonotone: return "NonMonotone";
    case ErrorCode::NotALift: return "NotALift";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

VarSpace::VarSpace(std::vector<std::string> names, int max_order)
    : names_(std::move(names)), max_order_(max_order) {
  if (names_.size() > kMaxVars) {
    throw std::invalid_argument("VarSpace supports at most " + std::to_string(kMaxVars) +
                                " variables");
  }
  std::set<std::string> seen(names_.begin(), names_.end());
  if (seen.size() != names_.size()) throw std::invalid_argument("VarSpace names must be distinct");
}

std::optional<std::size_t> VarSpace::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t VarSpace::require(std::string_view name) const {
  if (auto i = index_of(name)) return *i;
  throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
}

MultiIndex::MultiIndex(std::size_t arity) : arity_(static_cast<std::uint8_t>(arity)) {
  if (arity > kMaxVars) throw std::invalid_argument("MultiIndex arity too large");
}

MultiIndex::MultiIndex(std::initializer_list<int> orders) : MultiIndex(orders.size()) {
  std::size_t i = 0;
  for (int o : orders) {
    if (o < 0 || o > 255) throw std::invalid_argument("MultiIndex order out of range");
    orders_[i++] = static_cast<std::uint8_t>(o);
  }
}

MultiIndex MultiIndex::unit(std::size_t arity, std::size_t var) {
  MultiIndex m(arity);
  m.orders_.at(var) = 1;
  return m;
}

int MultiIndex::total() const {
  return std::accumulate(orders_.begin(), orders_.end(), 0);
}

MultiIndex MultiIndex::incremented(std::size_t var) const {
  if (var >= kMaxVars) throw std::out_of_range("MultiIndex::incremented");
  MultiIndex m = *this;
  ++m.orders_[var];
  if (var >= m.arity_) m.arity_ = static_cast<std::uint8_t>(var + 1);
  return m;
}

bool MultiIndex::dominates(const MultiIndex& other) const {
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if ((*this)[i] < other[i]) return false;
  }
  return true;
}

MultiIndex MultiIndex::minus(const MultiIndex& other) const {
  MultiIndex m = *this;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (orders_[i] < other[i]) throw std::invalid_argument("MultiIndex::minus would go negative");
    m.orders_[i] = static_cast<std::uint8_t>(orders_[i] - other[i]);
  }
  return m;
}

MultiIndex MultiIndex::plus(const MultiIndex& other) const {
  MultiIndex m = *this;
  for (std::size_t i = 0; i < kMaxVars; ++i) m.orders_[i] = static_cast<std::uint8_t>(orders_[i] + other[i]);
  m.arity_ = std::max(arity_, static_cast<std::uint8_t>(other.arity()));
  return m;
}

Word canonical_word(Word w) {
  // Coordinates are scalars: pull them to the front in sorted order.
  auto split = std::stable_partition(w.begin(), w.end(),
                                     [](const Atom& a) { return a.kind == AtomKind::Coordinate; });
  std::sort(w.begin(), split);

  Word out;
  out.reserve(w.size());
  out.insert(out.end(), w.begin(), split);
  const std::size_t head = out.size();
  for (auto it = split; it != w.end(); ++it) {
    const Atom& a = *it;
    if (a.kind == AtomKind::Identity) continue;
    if (out.size() > head) {
      const Atom& b = out.back();
      const bool field_then_inverse = b.kind == AtomKind::Field && b.index.is_zero() &&
                                      a.kind == AtomKind::InverseField && a.name == b.name;
      const bool inverse_then_field = b.kind == AtomKind::InverseField && a.kind == AtomKind::Field &&
                                      a.index.is_zero() && a.name == b.name;
      if (field_then_inverse || inverse_then_field) {
        out.pop_back();
        continue;
      }
    }
    out.push_back(a);
  }
  return out;
}

}  // namespace laxkit
