#pragma once

// Noncommutative matrix-valued expressions over jet-space atoms.
//
// Two representations live here. JetExpr is an immutable tree that may hold
// unexpanded structure (sums, products, commutators, inverses, scalar
// multiples). Poly is the canonical sum-of-words form: a map from reduced
// words of atoms to nonzero exact rational coefficients. normalize() goes from
// the first to the second and back, and two expressions are equal exactly when
// their Poly forms compare equal.

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace laxkit {

using Rational = mpq_class;

inline constexpr std::size_t kMaxVars = 6;
inline constexpr int kDefaultMaxOrder = 6;

/// Ordered list of independent variables. Multi-indices refer to it by
/// position, so the order is fixed once a session starts.
class VarSpace {
 public:
  VarSpace() = default;
  explicit VarSpace(std::vector<std::string> names, int max_order = kDefaultMaxOrder);

  std::size_t arity() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t require(std::string_view name) const;
  int max_order() const { return max_order_; }

  bool operator==(const VarSpace&) const = default;

 private:
  std::vector<std::string> names_;
  int max_order_ = kDefaultMaxOrder;
};

/// Per-variable derivative counts. Mixed partials commute, so this is the
/// complete derivative record of a jet coordinate.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t arity);
  MultiIndex(std::initializer_list<int> orders);

  static MultiIndex unit(std::size_t arity, std::size_t var);

  std::size_t arity() const { return arity_; }
  int operator[](std::size_t i) const { return i < kMaxVars ? orders_[i] : 0; }
  int total() const;
  bool is_zero() const { return total() == 0; }

  MultiIndex incremented(std::size_t var) const;
  /// True when every entry of this is >= the corresponding entry of other.
  bool dominates(const MultiIndex& other) const;
  MultiIndex minus(const MultiIndex& other) const;
  MultiIndex plus(const MultiIndex& other) const;

  // Arity is metadata only: unused slots are zero, so comparing the order
  // arrays alone makes u with arity 0 and u with arity 2 the same atom.
  auto operator<=>(const MultiIndex& o) const { return orders_ <=> o.orders_; }
  bool operator==(const MultiIndex& o) const { return orders_ == o.orders_; }

 private:
  std::array<std::uint8_t, kMaxVars> orders_{};
  std::uint8_t arity_ = 0;
};

enum class AtomKind : std::uint8_t {
  Coordinate,        // a base-space coordinate, scalar and central
  Identity,
  Param,             // constant matrix: M, Lambda, ...
  Field,             // u and its derivatives
  InverseField,      // u^-1, never differentiated in place
  Potential,         // nonlocal potential X and its derivatives
  FrechetPotential,  // the Frechet image of a potential
};

struct Atom {
  AtomKind kind = AtomKind::Identity;
  std::string name;
  MultiIndex index;

  static Atom identity() { return {AtomKind::Identity, {}, {}}; }
  static Atom coordinate(std::string var) { return {AtomKind::Coordinate, std::move(var), {}}; }
  static Atom param(std::string name) { return {AtomKind::Param, std::move(name), {}}; }
  static Atom field(std::string name, MultiIndex index) {
    return {AtomKind::Field, std::move(name), index};
  }
  static Atom inverse_field(std::string name) { return {AtomKind::InverseField, std::move(name), {}}; }
  static Atom potential(std::string name, MultiIndex index) {
    return {AtomKind::Potential, std::move(name), index};
  }
  static Atom frechet_potential(std::string name, MultiIndex index) {
    return {AtomKind::FrechetPotential, std::move(name), index};
  }

  auto operator<=>(const Atom&) const = default;
  bool operator==(const Atom&) const = default;
};

using Word = std::vector<Atom>;

/// Canonical form of a word: identities elided, coordinates moved to the
/// front (they are central), adjacent u u^-1 / u^-1 u pairs cancelled.
Word canonical_word(Word w);

/// A canonical noncommutative polynomial: reduced words with nonzero
/// rational coefficients.
class Poly {
 public:
  using Terms = std::map<Word, Rational>;

  Poly() = default;
  static Poly atom(const Atom& a);
  static Poly scalar(const Rational& c);
  static Poly identity() { return scalar(1); }
  static Poly word(const Word& w, const Rational& c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds c * w where w is already canonical.
  void add_canonical(const Word& w, const Rational& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Rational(-1); }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b);

  bool operator==(const Poly&) const = default;

 private:
  Terms terms_;
};

Poly commutator(const Poly& a, const Poly& b);

bool contains_atom_kind(const Poly& p, AtomKind kind);

/// Tree-form expression. Immutable; copies share structure.
class JetExpr {
 public:
  enum class Kind { Atom, Sum, Product, ScalarMul, Commutator, Inverse };

  JetExpr();  // zero (an empty Sum)
  static JetExpr atom(Atom a);
  static JetExpr sum(std::vector<JetExpr> terms);
  static JetExpr product(std::vector<JetExpr> factors);
  static JetExpr scaled(Rational c, JetExpr e);
  static JetExpr commutator(JetExpr a, JetExpr b);
  static JetExpr inverse(JetExpr e);
  static JetExpr from_poly(const Poly& p);

  Kind kind() const;
  const Atom& as_atom() const;
  const Rational& scalar() const;
  std::span<const JetExpr> children() const;

  /// Canonical form. Throws InvalidInverse when an Inverse node wraps
  /// anything other than a (scaled) bare field, its inverse or the identity.
  Poly to_poly() const;

  /// Structural equality of trees.
  bool operator==(const JetExpr& o) const;

  friend JetExpr operator+(const JetExpr& a, const JetExpr& b) { return sum({a, b}); }
  friend JetExpr operator-(const JetExpr& a, const JetExpr& b) {
    return sum({a, scaled(Rational(-1), b)});
  }
  friend JetExpr operator*(const JetExpr& a, const JetExpr& b) { return product({a, b}); }
  friend JetExpr operator*(const Rational& c, const JetExpr& e) { return scaled(c, e); }

  struct Node;

 private:
  explicit JetExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Unique normal form: a Sum of ScalarMul(c, Product(atoms...)).
JetExpr normalize(const JetExpr& e);
bool is_zero(const JetExpr& e);
/// Equal as matrix expressions (same normal form).
bool equivalent(const JetExpr& a, const JetExpr& b);

// --- rewriting -------------------------------------------------------------

/// Rewrites atoms to fixpoint. The rule gives a one-step replacement (or
/// nothing); images are rewritten recursively and cached per atom. A cycle or
/// a recursion deeper than the cap raises NonTerminating.
class AtomRewriter {
 public:
  using Rule = std::function<std::optional<Poly>(const Atom&)>;

  explicit AtomRewriter(Rule rule, std::size_t depth_cap = 256);

  Poly apply(const Poly& p);
  /// Fully rewritten image of a single atom, or nullptr if it has no rule.
  const Poly* image(const Atom& a);

 private:
  Rule rule_;
  std::map<Atom, std::optional<Poly>> memo_;
  std::vector<Atom> active_;
  std::size_t depth_cap_;
};

using SubstitutionRules = std::vector<std::pair<Atom, Poly>>;

Poly substitute(const Poly& e, const SubstitutionRules& rules);
/// Tree form: matched atoms are replaced in place and nothing is normalized,
/// so an expression with no matching atoms comes back unchanged.
JetExpr substitute(const JetExpr& e, const std::vector<std::pair<Atom, JetExpr>>& rules);

// --- text forms -------------------------------------------------------------

/// S-expression serialization. Grammar documented in docs/expression-format.md.
std::string to_sexpr(const JetExpr& e, const VarSpace& vars);
std::string to_sexpr(const Poly& p, const VarSpace& vars);
JetExpr parse_sexpr(std::string_view text, const VarSpace& vars);

/// Human-readable infix rendering, e.g. "g^-1 g_t M - M g^-1 g_t".
std::string pretty(const Poly& p, const VarSpace& vars);
std::string pretty(const Atom& a, const VarSpace& vars);

}  // namespace laxkit
