#include "algebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace lps {

namespace {

using int128 = __int128;

std::int64_t checked_cast(int128 v, const char* what) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    fail(ErrorCode::overflow, std::string(what) + ": value exceeds 64-bit range");
  return static_cast<std::int64_t>(v);
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) fail(ErrorCode::invalid_argument, "Rational: zero denominator");
  if (den < 0) { num = -num; den = -den; }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  num_ = g ? num / g : num;
  den_ = g ? den / g : den;
}

Rational Rational::operator-() const { return Rational(-num_, den_); }

Rational Rational::operator+(const Rational& o) const {
  // reduce in 128-bit before the range check
  int128 nn = int128(num_) * o.den_ + int128(o.num_) * den_;
  int128 dd = int128(den_) * o.den_;
  if (nn != 0) {
    int128 a = nn < 0 ? -nn : nn, b = dd;
    while (b) { int128 t = a % b; a = b; b = t; }
    nn /= a; dd /= a;
  }
  return Rational(checked_cast(nn, "Rational+"), checked_cast(dd, "Rational+"));
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  // cross-reduce first to keep intermediates small
  const std::int64_t g1 = std::gcd(num_ < 0 ? -num_ : num_, o.den_);
  const std::int64_t g2 = std::gcd(o.num_ < 0 ? -o.num_ : o.num_, den_);
  const int128 n = int128(num_ / g1) * (o.num_ / g2);
  const int128 d = int128(den_ / g2) * (o.den_ / g1);
  return Rational(checked_cast(n, "Rational*"), checked_cast(d, "Rational*"));
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) fail(ErrorCode::invalid_argument, "Rational: division by zero");
  return *this * Rational(o.den_, o.num_);
}

double gen_binom(double alpha, long k) {
  if (k == 0) return 1.0;
  if (k < 0) return 0.0;
  double out = 1.0;
  for (long j = 0; j < k; ++j) out *= (alpha - double(j)) / double(j + 1);
  return out;
}

Rational gen_binom(const Rational& alpha, long k) {
  if (k == 0) return Rational(1);
  if (k < 0) return Rational(0);
  if (k > 64) fail(ErrorCode::invalid_argument, "gen_binom(Rational): k > 64 not supported exactly");
  Rational out(1);
  for (long j = 0; j < k; ++j)
    out = out * ((alpha - Rational(j)) / Rational(j + 1));
  return out;
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  int128 out = 1;
  for (int j = 1; j <= k; ++j) {
    out = out * (n - k + j) / j;
    checked_cast(out, "binomial");
  }
  return checked_cast(out, "binomial");
}

std::int64_t multinomial(int q, std::span<const int> parts) {
  for (int p : parts)
    if (p < 0 || p > q) return 0;
  const long long total = std::accumulate(parts.begin(), parts.end(), 0LL);
  if (total != q)
    fail(ErrorCode::invalid_argument, "multinomial: parts in range but do not sum to q");
  // product of binomials over the running prefix sums
  int128 out = 1;
  int used = 0;
  for (int p : parts) {
    used += p;
    out *= binomial(used, p);
    checked_cast(out, "multinomial");
  }
  return checked_cast(out, "multinomial");
}

namespace {

struct CompositionCache {
  std::mutex mu;
  std::map<std::pair<int, int>, std::unique_ptr<std::vector<Composition>>> table;
};

CompositionCache& composition_cache() {
  static CompositionCache cache;
  return cache;
}

void enumerate(int index, int remaining, Composition& scratch, std::vector<Composition>& out) {
  if (index == 1) {
    scratch[0] = remaining;
    out.push_back(scratch);
    return;
  }
  for (int ij = 0; ij * index <= remaining; ++ij) {
    scratch[static_cast<std::size_t>(index) - 1] = ij;
    enumerate(index - 1, remaining - ij * index, scratch, out);
  }
}

} // namespace

const std::vector<Composition>& weighted_compositions(int m, int r) {
  if (m < 0 || r < 1) fail(ErrorCode::invalid_argument, "weighted_compositions: need m >= 0, r >= 1");
  auto& cache = composition_cache();
  std::scoped_lock lock(cache.mu);
  auto& slot = cache.table[{m, r}];
  if (!slot) {
    auto list = std::make_unique<std::vector<Composition>>();
    Composition scratch(static_cast<std::size_t>(r), 0);
    enumerate(r, m, scratch, *list);
    slot = std::move(list);
  }
  return *slot;
}

std::size_t weighted_composition_count(int m, int r) { return weighted_compositions(m, r).size(); }

double a_coeff_alpha(double alpha, int m, std::span<const double> H) {
  const int r = static_cast<int>(H.size());
  if (m < 0) fail(ErrorCode::invalid_argument, "a_coeff: m must be nonnegative");
  if (r < 1) fail(ErrorCode::invalid_argument, "a_coeff: need at least one H value (n >= 2)");
  const int n = r + 1;
  double total = 0.0;
  for (const auto& parts : weighted_compositions(m, r)) {
    int q = 0;
    for (int ij : parts) q += ij;
    double term = gen_binom(alpha, q) * double(multinomial(q, parts));
    if (term == 0.0) continue;
    for (int j = 1; j <= r; ++j) {
      const int ij = parts[static_cast<std::size_t>(j) - 1];
      if (ij == 0) continue;
      const double cj = double(binomial(n - 1, j)) * H[static_cast<std::size_t>(j) - 1];
      for (int e = 0; e < ij; ++e) term *= cj;
    }
    total += term;
  }
  return total;
}

double a_coeff(double p, double s, int m, std::span<const double> H) {
  const int n = static_cast<int>(H.size()) + 1;
  if (std::abs(double(n) + p) < 1e-12)
    fail(ErrorCode::p_equals_minus_n, "a_coeff: p = -n is outside this coefficient family");
  return a_coeff_alpha((double(n) - s) / (double(n) + p), m, H);
}

double b_coeff(int q, std::span<const double> H, double h) {
  const int n = static_cast<int>(H.size()) + 1;
  if (q < 1 || q > 2 * n) fail(ErrorCode::invalid_argument, "b_coeff: q must lie in [1, 2n]");
  if (!(h > 0.0)) fail(ErrorCode::invalid_argument, "b_coeff: support value must be positive");
  double total = 0.0;
  double hpow = 1.0; // h^{-i}, built as i grows with k descending
  // iterate i = q-k from 0 upward so powers of 1/h accumulate
  for (int i = 0; i <= q; ++i) {
    const int k = q - i;
    if (i > 0) hpow /= h;
    if (i > n + 1 || k > n - 1) continue;
    const double Hk = (k == 0) ? 1.0 : H[static_cast<std::size_t>(k) - 1];
    total += double(binomial(n - 1, k)) * double(binomial(n + 1, i)) * Hk * hpow;
  }
  return total;
}

double a_coeff_neg_n(int m, std::span<const double> B) {
  const int r = static_cast<int>(B.size());
  if (m < 0) fail(ErrorCode::invalid_argument, "a_coeff_neg_n: m must be nonnegative");
  if (r < 1 || r % 2 != 0)
    fail(ErrorCode::invalid_argument, "a_coeff_neg_n: B must hold 2n values");
  double total = 0.0;
  for (const auto& parts : weighted_compositions(m, r)) {
    int q = 0;
    for (int ij : parts) q += ij;
    double term = gen_binom(0.5, q) * double(multinomial(q, parts));
    if (term == 0.0) continue;
    for (int j = 0; j < r; ++j) {
      const int ij = parts[static_cast<std::size_t>(j)];
      for (int e = 0; e < ij; ++e) term *= B[static_cast<std::size_t>(j)];
    }
    total += term;
  }
  return total;
}

SeriesPoly::SeriesPoly(int order) {
  if (order < 0 || order > max_order)
    fail(ErrorCode::invalid_argument, "SeriesPoly: order must lie in [0, 64]");
  c_.assign(static_cast<std::size_t>(order) + 1, 0.0);
}

SeriesPoly SeriesPoly::constant(double c0, int order) {
  SeriesPoly out(order);
  out.c_[0] = c0;
  return out;
}

SeriesPoly SeriesPoly::operator+(const SeriesPoly& o) const {
  if (order() != o.order()) fail(ErrorCode::invalid_argument, "SeriesPoly: order mismatch");
  SeriesPoly out(order());
  for (std::size_t j = 0; j < c_.size(); ++j) out.c_[j] = c_[j] + o.c_[j];
  return out;
}

SeriesPoly SeriesPoly::operator*(const SeriesPoly& o) const {
  if (order() != o.order()) fail(ErrorCode::invalid_argument, "SeriesPoly: order mismatch");
  SeriesPoly out(order());
  const int M = order();
  for (int i = 0; i <= M; ++i) {
    if (c_[static_cast<std::size_t>(i)] == 0.0) continue;
    for (int j = 0; i + j <= M; ++j)
      out.c_[static_cast<std::size_t>(i + j)] += c_[static_cast<std::size_t>(i)] * o.c_[static_cast<std::size_t>(j)];
  }
  return out;
}

SeriesPoly SeriesPoly::pow_real(double alpha) const {
  if (c_[0] != 1.0)
    fail(ErrorCode::invalid_argument, "SeriesPoly::pow_real: constant term must be 1");
  const int M = order();
  SeriesPoly u(M);
  for (int j = 1; j <= M; ++j) u.c_[static_cast<std::size_t>(j)] = c_[static_cast<std::size_t>(j)];
  SeriesPoly out = SeriesPoly::constant(1.0, M);
  SeriesPoly upow = SeriesPoly::constant(1.0, M);
  for (int i = 1; i <= M; ++i) {
    upow = upow * u; // starts at degree i; vanishes once i > M
    const double gb = gen_binom(alpha, i);
    if (gb == 0.0) continue;
    for (int j = i; j <= M; ++j)
      out.c_[static_cast<std::size_t>(j)] += gb * upow.c_[static_cast<std::size_t>(j)];
  }
  return out;
}

double SeriesPoly::eval(double t) const {
  double out = 0.0;
  for (std::size_t j = c_.size(); j-- > 0;) out = out * t + c_[j];
  return out;
}

CompositionPlan::CompositionPlan(double alpha, int r, int M) : r_(r), M_(M) {
  if (r < 1 || M < 0) fail(ErrorCode::invalid_argument, "CompositionPlan: need r >= 1, M >= 0");
  terms_.resize(static_cast<std::size_t>(M) + 1);
  for (int m = 0; m <= M; ++m) {
    for (const auto& parts : weighted_compositions(m, r)) {
      int q = 0;
      for (int ij : parts) q += ij;
      const double coef = gen_binom(alpha, q) * double(multinomial(q, parts));
      if (coef == 0.0) continue;
      terms_[static_cast<std::size_t>(m)].push_back({coef, parts});
    }
  }
}

void CompositionPlan::eval(std::span<const double> c, std::span<double> out) const {
  for (int m = 0; m <= M_; ++m) {
    double acc = 0.0;
    for (const auto& term : terms_[static_cast<std::size_t>(m)]) {
      double v = term.coef;
      for (int j = 0; j < r_; ++j) {
        const int e = term.exps[static_cast<std::size_t>(j)];
        for (int x = 0; x < e; ++x) v *= c[static_cast<std::size_t>(j)];
      }
      acc += v;
    }
    out[static_cast<std::size_t>(m)] = acc;
  }
}

SeriesPoly series_oracle(double alpha, std::span<const double> c, double beta, double hinv, int M) {
  SeriesPoly curvature = SeriesPoly::constant(1.0, M);
  for (std::size_t k = 0; k < c.size() && k + 1 <= static_cast<std::size_t>(M); ++k)
    curvature[static_cast<int>(k) + 1] = c[k];
  SeriesPoly support(M);
  double hp = 1.0;
  for (int j = 0; j <= M; ++j) {
    support[j] = gen_binom(beta, j) * hp;
    hp *= hinv;
  }
  return curvature.pow_real(alpha) * support;
}

} // namespace lps
