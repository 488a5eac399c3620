#pragma once

#include <cstddef>
#include <vector>

#include "bodies.hpp"
#include "quadrature.hpp"

namespace lps {

// Real exponent parameter p with +-infinity handled symbolically; the limit
// exponents are used instead of a large finite surrogate.
struct PExponent {
  enum class Kind { finite, pos_inf, neg_inf };
  Kind kind = Kind::finite;
  double value = 0.0;

  static PExponent finite(double v) { return {Kind::finite, v}; }
  static PExponent pos_inf() { return {Kind::pos_inf, 0.0}; }
  static PExponent neg_inf() { return {Kind::neg_inf, 0.0}; }
  bool is_inf() const { return kind != Kind::finite; }
};

// The three derived exponents produced by one shared routine. At p = +-inf
// they take the limits (0, -(n-s), 1).
struct ExponentTriple {
  double curvature; // (n-s)/(n+p)
  double support;   // (n-s)(1-p)/(n+p)
  double alpha;     // p/(n+p)
};

/// Rejects |n+p| < 1e-6 (the p = -n family lives in l_neg_n_asa).
ExponentTriple lp_exponents(int n, const PExponent& p, double s);

// Node cache: support values and principal radii of a smooth body at every
// quadrature node, with parallel-body shifts applied on the fly.
class SampledBody {
public:
  SampledBody(const SmoothBody& body, const SphereQuadrature& quad);

  const SmoothBody& body() const { return body_; }
  const SphereQuadrature& quad() const { return *quad_; }
  int dim() const { return body_.dim(); }
  std::size_t size() const { return static_cast<std::size_t>(h_.size()); }

  double h(std::size_t i) const { return h_(static_cast<Eigen::Index>(i)); }
  double f(std::size_t i) const { return f_(static_cast<Eigen::Index>(i)); }
  double radius(std::size_t i, int r) const { return radii_(static_cast<Eigen::Index>(i), r); }

  /// c_j = binom(n-1,j) H_j = e_{n-1-j}(r)/e_{n-1}(r); j in [1, n-1].
  double cvalue(std::size_t i, int j) const { return c_(static_cast<Eigen::Index>(i), j - 1); }
  double Hj(std::size_t i, int j) const;

  /// Support and curvature function of the parallel body K + tB at a node.
  double h_shifted(std::size_t i, double t) const { return h(i) + t; }
  double f_shifted(std::size_t i, double t) const;

private:
  SmoothBody body_;
  const SphereQuadrature* quad_;
  Eigen::VectorXd h_, f_;
  Mat radii_; // N x (n-1)
  Mat c_;     // N x (n-1)
};

/// pow with the underflow guard for negative-exponent integrands.
double pow_checked(double x, double e);

// --- scalar functionals -----------------------------------------------------

double lp_asa(const SmoothBody& body, const PExponent& p, const SphereQuadrature& quad);
double mixed_asa(const SmoothBody& body, const PExponent& p, double s, const SphereQuadrature& quad);
double mixed_asa(const SampledBody& sb, const PExponent& p, double s, double t_shift = 0.0,
                 const SphereRegion* region = nullptr);

struct MaxNodeResult {
  double value;
  std::size_t node;
};

/// as_{-n}(K) = max over nodes of f^{1/2} h^{(n+1)/2}, with the achieving node.
MaxNodeResult l_neg_n_asa(const SmoothBody& body, const SphereQuadrature& quad);
MaxNodeResult l_neg_n_asa(const SampledBody& sb);

double lp_quermass(const SmoothBody& body, const PExponent& p, int m, int k,
                   const SphereQuadrature& quad);
double lp_quermass(const SampledBody& sb, const PExponent& p, int m, int k,
                   const SphereRegion* region = nullptr);

/// W_i; i = 0 gives the n-volume via (1/n) \int h f.
double classical_quermass(const SmoothBody& body, int i, const SphereQuadrature& quad);

/// Dual quermassintegral of the polar body: (1/n) \int h^{-(n-i)}; real i.
double dual_quermass(const SmoothBody& body, double i, const SphereQuadrature& quad);

/// S_{m,k}(K, omega): the sphere-side measure over a region.
double area_measure(const SmoothBody& body, const PExponent& p, int m, int k,
                    const SphereRegion& region, const SphereQuadrature& quad);

/// C_{m,k}(K, B) evaluated through the boundary pullback of the spatial set.
double curvature_measure(const SmoothBody& body, const PExponent& p, int m, int k,
                         const SpatialRegion& region, const SphereQuadrature& quad);

/// \int_{\partial K} H_1^alpha dH^{n-1}; alpha = 2 in n = 3 is the Willmore
/// energy.
double curvature_energy(const SmoothBody& body, double alpha, const SphereQuadrature& quad);

struct RenyiResult {
  double alpha;      // p/(n+p)
  double divergence; // log(W_{m,k}) / (alpha - 1)
  double hellinger;  // unweighted Hellinger integral of the cone-measure densities
};

RenyiResult renyi_divergence(const SmoothBody& body, int m, int k, const PExponent& p,
                             const SphereQuadrature& quad);

} // namespace lps
