#include "functionals.hpp"

#include <array>
#include <cmath>

#include "algebra.hpp"

namespace lps {

ExponentTriple lp_exponents(int n, const PExponent& p, double s) {
  if (p.is_inf()) return {0.0, -(double(n) - s), 1.0};
  const double np = double(n) + p.value;
  if (std::abs(np) < 1e-6)
    fail(ErrorCode::p_equals_minus_n,
         "p = -n is rejected here; the L_{-n} functional is the max-based one");
  return {(double(n) - s) / np, (double(n) - s) * (1.0 - p.value) / np, p.value / np};
}

double pow_checked(double x, double e) {
  const double v = std::pow(x, e);
  if (x > 0.0 && v < 1e-300)
    fail(ErrorCode::underflow, "integrand power underflowed below 1e-300");
  return v;
}

SampledBody::SampledBody(const SmoothBody& body, const SphereQuadrature& quad)
    : body_(body), quad_(&quad) {
  if (body.dim() != quad.n)
    fail(ErrorCode::invalid_argument, "SampledBody: body/quadrature dimension mismatch");
  const std::size_t N = quad.size();
  const int n = body.dim();
  h_.resize(static_cast<Eigen::Index>(N));
  f_.resize(static_cast<Eigen::Index>(N));
  radii_.resize(static_cast<Eigen::Index>(N), n - 1);
  c_.resize(static_cast<Eigen::Index>(N), n - 1);
  parallel_chunks(N, [&](std::size_t, std::size_t begin, std::size_t end) {
    Vec u(n);
    for (std::size_t i = begin; i < end; ++i) {
      u = quad.node(i);
      const auto idx = static_cast<Eigen::Index>(i);
      h_(idx) = body.support(u);
      const Vec r = body.principal_radii(u);
      radii_.row(idx) = r.transpose();
      const auto e = elementary_symmetric(r);
      f_(idx) = e[static_cast<std::size_t>(n) - 1];
      for (int j = 1; j < n; ++j)
        c_(idx, j - 1) = e[static_cast<std::size_t>(n - 1 - j)] / e[static_cast<std::size_t>(n) - 1];
    }
  });
}

double SampledBody::Hj(std::size_t i, int j) const {
  if (j == 0) return 1.0;
  return cvalue(i, j) / double(binomial(dim() - 1, j));
}

double SampledBody::f_shifted(std::size_t i, double t) const {
  double out = 1.0;
  for (int r = 0; r < dim() - 1; ++r) out *= radius(i, r) + t;
  return out;
}

double mixed_asa(const SampledBody& sb, const PExponent& p, double s, double t_shift,
                 const SphereRegion* region) {
  const auto ex = lp_exponents(sb.dim(), p, s);
  return integrate(
      sb.quad(),
      std::function<double(std::size_t)>([&](std::size_t i) {
        return pow_checked(sb.f_shifted(i, t_shift), ex.curvature) *
               pow_checked(sb.h_shifted(i, t_shift), ex.support);
      }),
      region);
}

double mixed_asa(const SmoothBody& body, const PExponent& p, double s, const SphereQuadrature& quad) {
  lp_exponents(body.dim(), p, s); // validate p before the sampling cost
  SampledBody sb(body, quad);
  return mixed_asa(sb, p, s);
}

double lp_asa(const SmoothBody& body, const PExponent& p, const SphereQuadrature& quad) {
  return mixed_asa(body, p, 0.0, quad);
}

MaxNodeResult l_neg_n_asa(const SampledBody& sb) {
  const std::size_t N = sb.size();
  const double ex = (double(sb.dim()) + 1.0) / 2.0;
  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < N; ++i) {
    const double v = std::sqrt(sb.f(i)) * std::pow(sb.h(i), ex);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  return {best, best_i};
}

MaxNodeResult l_neg_n_asa(const SmoothBody& body, const SphereQuadrature& quad) {
  SampledBody sb(body, quad);
  return l_neg_n_asa(sb);
}

double lp_quermass(const SampledBody& sb, const PExponent& p, int m, int k,
                   const SphereRegion* region) {
  if (m < 0 || k < m) fail(ErrorCode::invalid_argument, "lp_quermass: need k >= m >= 0");
  const int n = sb.dim();
  const auto ex = lp_exponents(n, p, 0.0);
  return integrate(
      sb.quad(),
      std::function<double(std::size_t)>([&](std::size_t i) {
        std::array<double, 4> H{}; // H_1..H_{n-1}, n <= 5
        for (int j = 1; j < n; ++j) H[static_cast<std::size_t>(j) - 1] = sb.Hj(i, j);
        const double Am =
            a_coeff_alpha(ex.curvature, m, std::span<const double>(H.data(), static_cast<std::size_t>(n) - 1));
        return pow_checked(sb.f(i), ex.curvature) *
               pow_checked(sb.h(i), ex.support - double(k) + double(m)) * Am;
      }),
      region);
}

double lp_quermass(const SmoothBody& body, const PExponent& p, int m, int k,
                   const SphereQuadrature& quad) {
  SampledBody sb(body, quad);
  return lp_quermass(sb, p, m, k);
}

double classical_quermass(const SmoothBody& body, int i, const SphereQuadrature& quad) {
  const int n = body.dim();
  if (i < 0 || i > n) fail(ErrorCode::invalid_argument, "classical_quermass: need 0 <= i <= n");
  SampledBody sb(body, quad);
  if (i == 0)
    return integrate(quad, std::function<double(std::size_t)>(
                               [&](std::size_t j) { return sb.h(j) * sb.f(j); })) /
           double(n);
  return integrate(quad, std::function<double(std::size_t)>([&](std::size_t j) {
                     return sb.Hj(j, i - 1) * sb.f(j);
                   })) /
         double(n);
}

double dual_quermass(const SmoothBody& body, double i, const SphereQuadrature& quad) {
  const int n = body.dim();
  SampledBody sb(body, quad);
  return integrate(quad, std::function<double(std::size_t)>([&](std::size_t j) {
                     return pow_checked(sb.h(j), -(double(n) - i));
                   })) /
         double(n);
}

double area_measure(const SmoothBody& body, const PExponent& p, int m, int k,
                    const SphereRegion& region, const SphereQuadrature& quad) {
  SampledBody sb(body, quad);
  return lp_quermass(sb, p, m, k, &region);
}

double curvature_measure(const SmoothBody& body, const PExponent& p, int m, int k,
                         const SpatialRegion& region, const SphereQuadrature& quad) {
  const SphereRegion pullback = boundary_region_pullback(body, region);
  return area_measure(body, p, m, k, pullback, quad);
}

double curvature_energy(const SmoothBody& body, double alpha, const SphereQuadrature& quad) {
  SampledBody sb(body, quad);
  return integrate(quad, std::function<double(std::size_t)>([&](std::size_t i) {
    return pow_checked(sb.Hj(i, 1), alpha) * sb.f(i);
  }));
}

RenyiResult renyi_divergence(const SmoothBody& body, int m, int k, const PExponent& p,
                             const SphereQuadrature& quad) {
  if (p.is_inf())
    fail(ErrorCode::alpha_one, "alpha = p/(n+p) = 1 at p = +-inf; the divergence is undefined");
  const int n = body.dim();
  const auto ex = lp_exponents(n, p, 0.0);
  SampledBody sb(body, quad);
  const double W = lp_quermass(sb, p, m, k);
  if (!(W > 0.0))
    fail(ErrorCode::nonpositive_mass, "renyi_divergence: W_{m,k} must be positive");
  RenyiResult out;
  out.alpha = ex.alpha;
  out.divergence = std::log(W) / (ex.alpha - 1.0);
  // unweighted Hellinger integral of p_K = f^{-1} h^{-n}, q_K = h against the
  // boundary measure, pulled back to the sphere
  out.hellinger = integrate(quad, std::function<double(std::size_t)>([&](std::size_t i) {
    return pow_checked(sb.f(i), 1.0 - ex.alpha) *
           pow_checked(sb.h(i), 1.0 - (double(n) + 1.0) * ex.alpha);
  }));
  return out;
}

} // namespace lps
