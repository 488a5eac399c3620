#pragma once

#include <string>

#include "functionals.hpp"

namespace lps {

// Coefficient grid of the L_p Steiner expansion: W[m][k] holds the
// (possibly region-masked) quermassintegral-style integral for m <= M,
// m <= k <= Kmax. Together with the support exponent it evaluates the
// truncated double series at any admissible offset t.
struct ExpansionGrid {
  int n = 0;
  PExponent p;
  double s = 0.0;
  int M = 0, Kmax = 0;
  double beta = 0.0;
  double curvature_exp = 0.0; // (n-s)/(n+p)
  double support_exp = 0.0;   // (n-s)(1-p)/(n+p)
  Mat W;                      // (M+1) x (Kmax+1); entries with k < m are zero
  // smallest t at which some node's curvature tail sum reaches 1; the
  // binomial expansion of the curvature factor is only classically valid
  // below it (diagnostic, not an error)
  double curvature_radius_t = std::numeric_limits<double>::infinity();
  int quad_level = 0;
};

struct SeriesValue {
  double value = 0.0;
  double tail_estimate = 0.0; // largest |term| in the final k-band
  double t = 0.0;
  bool converged = false;        // t < beta and tail <= tolerance
  bool expansion_flagged = false; // t exceeds the curvature expansion radius
};

ExpansionGrid build_grid(const SmoothBody& body, const PExponent& p, double s, int M, int Kmax,
                         const SphereQuadrature& quad, const SphereRegion* region = nullptr);
ExpansionGrid build_grid(const SampledBody& sb, const PExponent& p, double s, int M, int Kmax,
                         const SphereRegion* region = nullptr);

/// Truncated double series at offset t. Requires 0 <= t < beta; offsets past
/// 0.95 beta additionally require allow_near_beta.
SeriesValue evaluate_series(const ExpansionGrid& grid, double t, double tail_tol = 1e-8,
                            bool allow_near_beta = false);

/// Ground-truth oracle: the mixed affine surface area evaluated on the
/// parallel body directly, with no series or truncation.
double direct_parallel_asa(const SmoothBody& body, const PExponent& p, double s, double t,
                           const SphereQuadrature& quad);
double direct_parallel_asa(const SampledBody& sb, const PExponent& p, double s, double t,
                           const SphereRegion* region = nullptr);

struct NegNSeriesResult {
  double value;
  std::size_t node;
};

/// Theorem-level p = -n series: max over nodes of the full node-wise product
/// f^{1/2} h^{(n+1)/2} sum_m A^m_{-n}(u) t^m.
NegNSeriesResult series_neg_n(const SmoothBody& body, int M, double t, const SphereQuadrature& quad);
NegNSeriesResult series_neg_n(const SampledBody& sb, int M, double t);

/// The node-wise product series at one node (testing hook for the pointwise
/// consistency of the p = -n expansion).
double series_neg_n_at_node(const SampledBody& sb, std::size_t i, int M, double t);

/// Local Steiner series over a sphere region: the masked-grid double sum.
SeriesValue local_series(const SmoothBody& body, const PExponent& p, const SphereRegion& region,
                         int M, int Kmax, double t, const SphereQuadrature& quad,
                         double tail_tol = 1e-8, bool allow_near_beta = false);

// --- polytopes ---------------------------------------------------------------

/// \int_{Norm(v)} (h_P(u) + shift)^exponent dsigma(u). Exact 1D Gauss panels
/// for n = 2; gnomonic-projection triangulation with tensor Gauss rules for
/// n = 3. refine controls panel counts / subdivision depth.
double polytope_cone_integral(const Polytope& poly, std::size_t vertex, double exponent,
                              double shift = 0.0, int refine = 3);

/// Truncated polytope Steiner series. Case split: admissible p gives the
/// cone-integral series; p in [-n, 0) gives +infinity (s = 0); p = 0, s = 0
/// gives n*vol(P + tB) through the classical Steiner polynomial.
double polytope_series(const Polytope& poly, double p, double s, int M, double t, int refine = 3);

/// Pre-expansion direct value: t^{(n-1)(n-s)/(n+p)} sum_v cone integral of
/// (h + t)^b. The oracle the series must match.
double direct_polytope_asa(const Polytope& poly, double p, double s, double t, int refine = 3);

/// n * vol(P + tB) from the classical polytope Steiner polynomial.
double polytope_steiner_volume(const Polytope& poly, double t);

// --- grid serialization -------------------------------------------------------

std::string grid_to_json(const ExpansionGrid& grid);
ExpansionGrid grid_from_json(const std::string& text);
std::string grid_to_csv(const ExpansionGrid& grid);

} // namespace lps
