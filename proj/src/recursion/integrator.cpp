#include "laxkit/errors.hpp"
#include "laxkit/recursion.hpp"

#include <algorithm>
#include <set>

namespace laxkit {

namespace {

using ParamCounts = std::map<std::string, int>;

struct Signature {
  std::set<int> weights;
  std::set<int> degrees;
  std::set<ParamCounts> params;
  int max_potentials = 0;
  std::size_t max_length = 0;
};

int degree_of(const Atom& a, const std::string& field) {
  if (a.name != field) return 0;
  if (a.kind == AtomKind::Field) return 1;
  if (a.kind == AtomKind::InverseField) return -1;
  return 0;
}

Signature signature_of(const Poly& k, const std::string& field) {
  Signature s;
  for (const auto& [w, c] : k.terms()) {
    s.weights.insert(word_weight(w));
    int deg = 0;
    int pots = 0;
    ParamCounts pc;
    for (const Atom& a : w) {
      deg += degree_of(a, field);
      if (a.kind == AtomKind::Potential) ++pots;
      if (a.kind == AtomKind::Param) ++pc[a.name];
    }
    s.degrees.insert(deg);
    s.params.insert(pc);
    s.max_potentials = std::max(s.max_potentials, pots);
    s.max_length = std::max(s.max_length, w.size());
  }
  return s;
}

bool eliminable_potential(const EquationDef& eq, const MultiIndex& mu) {
  for (const auto& [v, rhs] : eq.potential.rules) {
    if (mu[v] > 0) return true;
  }
  return false;
}

// All multi-indices of the given arity with total order in [lo, hi].
void multi_indices(std::size_t arity, int lo, int hi, std::vector<MultiIndex>& out) {
  std::vector<int> orders(arity, 0);
  auto rec = [&](auto&& self, std::size_t pos, int used) -> void {
    if (pos == arity) {
      if (used >= lo) {
        MultiIndex m(arity);
        for (std::size_t v = 0; v < arity; ++v) {
          for (int k = 0; k < orders[v]; ++k) m = m.incremented(v);
        }
        out.push_back(m);
      }
      return;
    }
    for (int o = 0; used + o <= hi; ++o) {
      orders[pos] = o;
      self(self, pos + 1, used + o);
    }
    orders[pos] = 0;
  };
  rec(rec, 0, 0);
}

struct Letter {
  Atom atom;
  int weight = 0;
  int degree = 0;
  bool potential = false;
};

std::vector<Letter> alphabet(const EquationDef& eq, int max_weight, const Signature& sig) {
  std::vector<Letter> out;
  const std::size_t n = eq.vars.arity();
  std::vector<MultiIndex> idx;
  multi_indices(n, 0, max_weight, idx);
  for (const MultiIndex& mu : idx) {
    if (!mu.dominates(eq.solved.leading)) out.push_back({eq.field_atom(mu), mu.total(), 1, false});
    if (!eliminable_potential(eq, mu)) {
      out.push_back({Atom::potential(eq.potential.name, mu), mu.total(), 0, true});
    }
  }
  out.push_back({eq.inverse_atom(), 0, -1, false});
  std::set<std::string> names;
  for (const auto& pc : sig.params) {
    for (const auto& [name, count] : pc) names.insert(name);
  }
  for (const auto& name : names) out.push_back({Atom::param(name), 0, 0, false});
  return out;
}

// Words of exact weight, degree and parameter content, up to max_len letters.
std::vector<Word> enumerate_words(const EquationDef& eq, const std::vector<Letter>& letters, int weight,
                                  int degree, const ParamCounts& params, int max_pots,
                                  std::size_t max_len, std::size_t cap) {
  std::vector<Word> out;
  Word cur;
  ParamCounts used;
  int param_total = 0;
  for (const auto& [n, c] : params) param_total += c;
  const Atom bare = eq.field_atom();
  const Atom inv = eq.inverse_atom();

  auto rec = [&](auto&& self, int w, int d, int pots, int params_used) -> void {
    if (out.size() >= cap) return;
    if (w == weight && d == degree && params_used == param_total && !cur.empty()) out.push_back(cur);
    const std::size_t remaining = max_len - cur.size();
    if (remaining == 0) return;
    for (const Letter& l : letters) {
      if (w + l.weight > weight) continue;
      if (l.potential && pots + 1 > max_pots) continue;
      int pu = params_used;
      if (l.atom.kind == AtomKind::Param) {
        auto it = params.find(l.atom.name);
        if (it == params.end() || used[l.atom.name] >= it->second) continue;
        ++pu;
      }
      if (!cur.empty()) {
        const Atom& last = cur.back();
        if ((last == bare && l.atom == inv) || (last == inv && l.atom == bare)) continue;
      }
      const int nd = d + l.degree;
      const std::size_t left = remaining - 1;
      if (static_cast<std::size_t>(std::abs(degree - nd)) > left) continue;
      if (static_cast<std::size_t>(param_total - pu) > left) continue;
      cur.push_back(l.atom);
      if (l.atom.kind == AtomKind::Param) ++used[l.atom.name];
      self(self, w + l.weight, nd, pots + (l.potential ? 1 : 0), pu);
      if (l.atom.kind == AtomKind::Param) --used[l.atom.name];
      cur.pop_back();
    }
  };
  rec(rec, 0, 0, 0, 0);
  return out;
}

// Solves sum_j c_j columns[j] = target exactly. Rows are (relation, word).
std::optional<std::vector<Rational>> solve_exact(const std::vector<std::array<Poly, 2>>& columns,
                                                 const std::array<Poly, 2>& target) {
  std::map<std::pair<int, Word>, std::size_t> row_of;
  std::vector<std::map<std::size_t, Rational>> rows;
  const std::size_t ncols = columns.size();
  auto row = [&](int rel, const Word& w) -> std::map<std::size_t, Rational>& {
    auto [it, inserted] = row_of.try_emplace({rel, w}, rows.size());
    if (inserted) rows.emplace_back();
    return rows[it->second];
  };
  for (std::size_t j = 0; j < ncols; ++j) {
    for (int rel = 0; rel < 2; ++rel) {
      for (const auto& [w, c] : columns[j][rel].terms()) row(rel, w)[j] = c;
    }
  }
  for (int rel = 0; rel < 2; ++rel) {
    for (const auto& [w, c] : target[rel].terms()) row(rel, w)[ncols] = c;
  }

  std::vector<std::size_t> pivot_col;
  std::size_t r0 = 0;
  for (std::size_t col = 0; col < ncols && r0 < rows.size(); ++col) {
    std::size_t p = r0;
    while (p < rows.size() && !rows[p].count(col)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r0]);
    const Rational inv = 1 / rows[r0][col];
    for (auto& [c, v] : rows[r0]) v *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == r0) continue;
      auto it = rows[r].find(col);
      if (it == rows[r].end()) continue;
      const Rational f = it->second;
      for (const auto& [c, v] : rows[r0]) {
        Rational& slot = rows[r][c];
        slot -= f * v;
        if (sgn(slot) == 0) rows[r].erase(c);
      }
    }
    pivot_col.push_back(col);
    ++r0;
  }
  for (std::size_t r = r0; r < rows.size(); ++r) {
    if (rows[r].count(ncols)) return std::nullopt;
  }
  std::vector<Rational> sol(ncols);
  for (std::size_t r = 0; r < pivot_col.size(); ++r) {
    auto it = rows[r].find(ncols);
    if (it != rows[r].end()) sol[pivot_col[r]] = it->second;
  }
  return sol;
}

std::string fresh_param(const Poly& q, const std::string& base) {
  std::set<std::string> taken;
  for (const auto& [w, c] : q.terms()) {
    for (const Atom& a : w) {
      if (a.kind == AtomKind::Param) taken.insert(a.name);
    }
  }
  if (!taken.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string name = base + std::to_string(i);
    if (!taken.count(name)) return name;
  }
}

}  // namespace

IntegrationResult integrate_bt_symbolic(const BTSystem& sys, const IntegrationOptions& opts) {
  const EquationDef& eq = *sys.eq;
  ShellReducer red(eq);
  const Poly u = Poly::atom(eq.field_atom());
  const Poly uinv = Poly::atom(eq.inverse_atom());
  const bool forward = sys.direction == Direction::Forward;
  const Poly c = Poly::atom(Atom::param("C"));

  IntegrationResult res;
  res.characteristic.index = sys.unknown_level;
  res.characteristic.provenance = sys.known.provenance + " -> " + std::string(to_string(sys.direction));
  res.constant_term = forward ? u * c : c * u;

  if (sys.targets[0].is_zero() && sys.targets[1].is_zero()) {
    // Only the homogeneous solution: K constant (forward) or P = u^-1 C u.
    const Poly p = Poly::atom(Atom::param(fresh_param(sys.known.closed(), forward ? "M" : "Lambda")));
    res.characteristic.body = forward ? u * p : p * u;
    res.homogeneous = true;
    return res;
  }

  const Poly k = red.on_shell(uinv * sys.known.closed());
  const Signature sig = signature_of(k, eq.field);
  const int max_weight = *sig.weights.rbegin();
  const std::vector<Letter> letters = alphabet(eq, max_weight, sig);
  const std::size_t max_len = std::min(opts.max_length, sig.max_length + 2);

  std::map<Word, std::array<Poly, 2>> images;
  auto image_of = [&](const Word& w) -> const std::array<Poly, 2>& {
    auto it = images.find(w);
    if (it != images.end()) return it->second;
    const Poly p = Poly::word(w);
    std::array<Poly, 2> img;
    for (std::size_t i = 0; i < 2; ++i) {
      const Poly raw = forward ? total_derivative(p, sys.equations[i].var, eq.vars)
                               : covariant_derivative(p, eq, i);
      img[i] = red.on_shell(raw);
    }
    return images.emplace(w, std::move(img)).first->second;
  };

  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Word> cands;
    bool overflow = false;
    for (int w : sig.weights) {
      for (int d : sig.degrees) {
        for (const auto& pc : sig.params) {
          auto ws = enumerate_words(eq, letters, w, d, pc, sig.max_potentials + 1, len,
                                    opts.max_candidates);
          overflow = overflow || ws.size() >= opts.max_candidates;
          cands.insert(cands.end(), ws.begin(), ws.end());
        }
      }
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    if (overflow || cands.size() > opts.max_candidates) break;
    res.candidates_tried = cands.size();

    std::vector<std::array<Poly, 2>> columns;
    columns.reserve(cands.size());
    for (const Word& w : cands) columns.push_back(image_of(w));
    auto sol = solve_exact(columns, sys.targets);
    if (!sol) continue;
    Poly kprime;
    for (std::size_t j = 0; j < cands.size(); ++j) {
      if (sgn((*sol)[j]) != 0) kprime.add_canonical(cands[j], (*sol)[j]);
    }
    res.characteristic.body = red.on_shell(u * kprime);
    return res;
  }

  res.characteristic.body = implicit_from_bt(sys);
  return res;
}

}  // namespace laxkit
