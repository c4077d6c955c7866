#include "taylor.hpp"

namespace laxkit::testing {

namespace {

void indices_upto(std::size_t vars, int order, std::vector<MultiIndex>& out) {
  std::vector<int> o(vars, 0);
  auto rec = [&](auto&& self, std::size_t pos, int used) -> void {
    if (pos == vars) {
      MultiIndex m(vars);
      for (std::size_t v = 0; v < vars; ++v) {
        for (int k = 0; k < o[v]; ++k) m = m.incremented(v);
      }
      out.push_back(m);
      return;
    }
    for (int k = 0; used + k <= order; ++k) {
      o[pos] = k;
      self(self, pos + 1, used + k);
    }
    o[pos] = 0;
  };
  rec(rec, 0, 0);
}

Rational factorial_weight(const MultiIndex& mu, std::size_t vars) {
  Rational w = 1;
  for (std::size_t v = 0; v < vars; ++v) {
    for (int k = 2; k <= mu[v]; ++k) w *= k;
  }
  return w;
}

}  // namespace

Taylor::Taylor(std::size_t vars, int order, std::size_t n) : vars_(vars), order_(order), n_(n) {
  std::vector<MultiIndex> idx;
  indices_upto(vars, order, idx);
  for (const auto& m : idx) coefs_.emplace(m, RationalMatrix(n));
}

Taylor Taylor::constant(std::size_t vars, int order, const RationalMatrix& m) {
  Taylor t(vars, order, m.dim());
  t.coef(MultiIndex(vars)) = m;
  return t;
}

Taylor Taylor::coordinate(std::size_t vars, int order, std::size_t n, std::size_t v) {
  Taylor t(vars, order, n);
  if (order >= 1) t.coef(MultiIndex::unit(vars, v)) = RationalMatrix::identity(n);
  return t;
}

RationalMatrix& Taylor::coef(const MultiIndex& mu) { return coefs_.at(mu); }
const RationalMatrix& Taylor::coef(const MultiIndex& mu) const { return coefs_.at(mu); }

RationalMatrix Taylor::jet(const MultiIndex& mu) const {
  if (mu.total() > order_) throw std::out_of_range("Taylor::jet beyond truncation order");
  return factorial_weight(mu, vars_) * coef(mu);
}

Taylor Taylor::derivative(std::size_t v) const {
  Taylor out(vars_, order_ - 1, n_);
  for (auto& [mu, c] : out.coefs_) {
    const MultiIndex up = mu.incremented(v);
    c = Rational(up[v]) * coef(up);
  }
  return out;
}

Taylor Taylor::antiderivative(std::size_t v) const {
  Taylor out(vars_, order_ + 1, n_);
  for (const auto& [mu, c] : coefs_) out.coef(mu.incremented(v)) = Rational(1, mu[v] + 1) * c;
  return out;
}

Taylor Taylor::restrict_zero(std::size_t v) const {
  Taylor out = *this;
  for (auto& [mu, c] : out.coefs_) {
    if (mu[v] > 0) c = RationalMatrix(n_);
  }
  return out;
}

Taylor Taylor::inverse() const {
  const auto inv0 = value().inverse();
  if (!inv0) throw std::domain_error("Taylor::inverse of a singular series");
  // Fixed point X = A0^-1 (I - (A - A0) X); each sweep fixes one more order.
  Taylor a1 = *this;
  a1.coef(MultiIndex(vars_)) = RationalMatrix(n_);
  const Taylor c0 = constant(vars_, order_, *inv0);
  Taylor x = c0;
  for (int k = 0; k < order_; ++k) x = c0 - c0 * (a1 * x);
  return x;
}

Taylor& Taylor::operator+=(const Taylor& o) {
  order_ = std::min(order_, o.order_);
  std::erase_if(coefs_, [&](const auto& kv) { return kv.first.total() > order_; });
  for (auto& [mu, c] : coefs_) c += o.coef(mu);
  return *this;
}

Taylor& Taylor::operator-=(const Taylor& o) {
  order_ = std::min(order_, o.order_);
  std::erase_if(coefs_, [&](const auto& kv) { return kv.first.total() > order_; });
  for (auto& [mu, c] : coefs_) c -= o.coef(mu);
  return *this;
}

Taylor operator*(const Taylor& a, const Taylor& b) {
  Taylor out(a.vars_, std::min(a.order_, b.order_), a.n_);
  for (const auto& [ma, ca] : a.coefs_) {
    if (ma.total() > out.order_ || ca.is_zero()) continue;
    for (const auto& [mb, cb] : b.coefs_) {
      if (ma.total() + mb.total() > out.order_ || cb.is_zero()) continue;
      out.coef(ma.plus(mb)) += ca * cb;
    }
  }
  return out;
}

Taylor operator*(const Rational& c, Taylor a) {
  for (auto& [mu, m] : a.coefs_) m *= c;
  return a;
}

Taylor commutator(const Taylor& a, const Taylor& b) { return a * b - b * a; }

RationalMatrix random_matrix(std::size_t n, std::mt19937_64& rng, int r) {
  std::uniform_int_distribution<int> num(-r, r);
  std::uniform_int_distribution<int> den(1, 3);
  RationalMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = Rational(num(rng), den(rng));
      m(i, j).canonicalize();
    }
  }
  return m;
}

RationalMatrix random_invertible(std::size_t n, std::mt19937_64& rng) {
  RationalMatrix m = random_matrix(n, rng);
  while (!m.inverse()) m = random_matrix(n, rng);
  return m;
}

Taylor random_polynomial(std::size_t vars, int order, std::size_t n, int degree, std::mt19937_64& rng) {
  Taylor t(vars, order, n);
  for (const auto& [mu, c] : t.coefs()) {
    if (mu.total() > degree) continue;
    t.coef(mu) = mu.is_zero() ? random_invertible(n, rng) : random_matrix(n, rng);
  }
  return t;
}

namespace {

// exp(d A) for nilpotent A as a series in the coordinate d.
Taylor exp_series(const Taylor& d, const RationalMatrix& a) {
  const std::size_t n = a.dim();
  Taylor out = Taylor::constant(d.vars(), d.order(), RationalMatrix::identity(n));
  Taylor power = out;
  Rational fact = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    power = power * (d * Taylor::constant(d.vars(), d.order(), a));
    fact *= static_cast<long>(k);
    out += Rational(1) / fact * power;
  }
  return out;
}

RationalMatrix exp_nilpotent(const RationalMatrix& a, const Rational& s) {
  const std::size_t n = a.dim();
  RationalMatrix out = RationalMatrix::identity(n);
  RationalMatrix power = out;
  Rational fact = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    power = power * (s * a);
    fact *= static_cast<long>(k);
    out += Rational(1) / fact * power;
  }
  return out;
}

}  // namespace

ChiralSolution nilpotent_solution(int order, std::size_t n, std::mt19937_64& rng) {
  RationalMatrix a = random_matrix(n, rng);
  RationalMatrix b = random_matrix(n, rng);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j <= i) a(i, j) = 0;
      if (j >= i) b(i, j) = 0;
    }
  }
  std::uniform_int_distribution<int> num(-4, 4);
  const Rational t0(num(rng), 3);
  const Rational x0(num(rng), 3);
  const Taylor dt = Taylor::coordinate(2, order + 1, n, 0);
  const Taylor dx = Taylor::coordinate(2, order + 1, n, 1);
  // exp((t0 + dt) A) exp((x0 + dx) B)
  const Taylor g = Taylor::constant(2, order + 1, exp_nilpotent(a, t0)) * exp_series(dt, a) *
                   exp_series(dx, b) * Taylor::constant(2, order + 1, exp_nilpotent(b, x0));
  const Taylor ginv = g.inverse();
  const Taylor conn_t = ginv * g.derivative(0);
  const Taylor conn_x = ginv * g.derivative(1);
  // X = X(p) + int_{x0}^{x} g^-1 g_t - int_{t0}^{t} g^-1 g_x |_{x = x0}
  Taylor x = Taylor::constant(2, order, random_matrix(n, rng)) + conn_t.antiderivative(1) -
             conn_x.restrict_zero(1).antiderivative(0);
  Taylor gt(2, order, n);
  gt += g;
  return {gt, x};
}

}  // namespace laxkit::testing
