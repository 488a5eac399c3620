#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "errors.hpp"

namespace lps {

// Exact rational with 64-bit numerator/denominator, always normalized
// (denominator > 0, gcd(num, den) = 1). Arithmetic that would overflow
// the 64-bit range throws ErrorCode::overflow.
class Rational {
public:
  Rational() = default;
  Rational(std::int64_t value) : num_(value) {}
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Generalized binomial coefficient: 1 for k = 0, 0 for k < 0, else the
/// falling-factorial product alpha(alpha-1)...(alpha-k+1)/k!.
double gen_binom(double alpha, long k);

/// Exact variant for rational alpha; |k| must not exceed 64.
Rational gen_binom(const Rational& alpha, long k);

/// q!/(i_1!...i_r!) for nonnegative parts summing to q; 0 when any part is
/// negative or exceeds q. Throws ErrorCode::overflow past the int64 range.
std::int64_t multinomial(int q, std::span<const int> parts);

/// Ordinary binomial coefficient as an exact integer (n, k small).
std::int64_t binomial(int n, int k);

using Composition = std::vector<int>;

/// All tuples (i_1,...,i_r) of nonnegative integers with sum_j j*i_j = m,
/// each exactly once, in the fixed order produced by descending-index
/// recursion (i_r slowest, i_1 = remainder). Cached; the reference stays
/// valid for the process lifetime.
const std::vector<Composition>& weighted_compositions(int m, int r);

std::size_t weighted_composition_count(int m, int r);

/// A^m coefficient for a generic curvature-factor exponent alpha:
/// sum over weighted compositions of gen_binom(alpha, sum i_j) *
/// multinomial * prod_j [binom(n-1,j) H_j]^{i_j}, with n = H.size() + 1.
double a_coeff_alpha(double alpha, int m, std::span<const double> H);

/// A^m_{p,s}; alpha = (n-s)/(n+p). Rejects p = -n.
double a_coeff(double p, double s, int m, std::span<const double> H);

/// B_q = sum_{k+i=q} binom(n-1,k) binom(n+1,i) H_k / h^i, with H_0 = 1 and
/// H_k = 0 for k > n-1; n = H.size() + 1, valid for 1 <= q <= 2n, h > 0.
double b_coeff(int q, std::span<const double> H, double h);

/// A^m_{-n}: compositions over r = B.size() parts with exponent 1/2 and
/// weights B_q in place of the curvature products.
double a_coeff_neg_n(int m, std::span<const double> B);

// Truncated univariate power series c_0 + c_1 t + ... + c_M t^M. All
// arithmetic stays within the truncation order; orders above 64 are
// rejected.
class SeriesPoly {
public:
  static constexpr int max_order = 64;

  explicit SeriesPoly(int order);
  static SeriesPoly constant(double c0, int order);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  double operator[](int j) const { return c_[static_cast<std::size_t>(j)]; }
  double& operator[](int j) { return c_[static_cast<std::size_t>(j)]; }
  const std::vector<double>& coeffs() const { return c_; }

  SeriesPoly operator+(const SeriesPoly& o) const;
  SeriesPoly operator*(const SeriesPoly& o) const;

  /// (this)^alpha for a series with constant term 1, via the binomial
  /// expansion of (1 + u)^alpha in the nilpotent-truncated tail u.
  SeriesPoly pow_real(double alpha) const;

  double eval(double t) const;

private:
  std::vector<double> c_;
};

/// Truncated expansion of (1 + sum_k c[k-1] t^k)^alpha * (1 + hinv t)^beta
/// to order M. With c_k = binom(n-1,k) H_k and hinv = 1/h this reproduces
/// the pointwise series bracket of the L_p Steiner expansion.
SeriesPoly series_oracle(double alpha, std::span<const double> c, double beta, double hinv, int M);

// Precompiled evaluator for the whole A^0..A^M family at a fixed exponent:
// per m, the surviving composition terms with their scalar prefactors
// gen_binom(alpha, q) * multinomial. eval() then only multiplies node
// weights, which keeps grid construction off the enumeration path.
class CompositionPlan {
public:
  CompositionPlan(double alpha, int r, int M);

  int order() const { return M_; }
  int parts() const { return r_; }

  /// c holds the r per-node weights (c_j for A^m_p, B_q for A^m_{-n});
  /// out receives A^0..A^M.
  void eval(std::span<const double> c, std::span<double> out) const;

private:
  struct Term {
    double coef;
    std::vector<int> exps;
  };
  std::vector<std::vector<Term>> terms_;
  int r_, M_;
};

} // namespace lps
