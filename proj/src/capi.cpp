#include "lpsteiner/lpsteiner.h"

#include <cstring>
#include <string>

#include "algebra.hpp"
#include "bodies.hpp"
#include "functionals.hpp"
#include "quadrature.hpp"
#include "steiner.hpp"

struct lps_body {
  lps::Body value;
};
struct lps_quadrature {
  lps::SphereQuadrature value;
};
struct lps_region {
  lps::SphereRegion value;
};
struct lps_grid {
  lps::ExpansionGrid value;
};

namespace {

thread_local std::string t_last_error;

lps_status map_code(lps::ErrorCode code) {
  using EC = lps::ErrorCode;
  switch (code) {
    case EC::invalid_argument: return LPS_ERR_INVALID_ARGUMENT;
    case EC::p_equals_minus_n: return LPS_ERR_P_EQUALS_MINUS_N;
    case EC::t_out_of_range: return LPS_ERR_T_OUT_OF_RANGE;
    case EC::unsupported_dimension: return LPS_ERR_UNSUPPORTED_DIMENSION;
    case EC::nonconvex_detected: return LPS_ERR_NONCONVEX;
    case EC::nonfinite_integrand: return LPS_ERR_NONFINITE_INTEGRAND;
    case EC::overflow: return LPS_ERR_OVERFLOW;
    case EC::underflow: return LPS_ERR_UNDERFLOW;
    case EC::nonpositive_mass: return LPS_ERR_NONPOSITIVE_MASS;
    case EC::alpha_one: return LPS_ERR_ALPHA_ONE;
    case EC::truncation_too_large: return LPS_ERR_TRUNCATION_TOO_LARGE;
    case EC::io_error: return LPS_ERR_IO;
  }
  return LPS_ERR_UNKNOWN;
}

template <class Fn>
lps_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return LPS_OK;
  } catch (const lps::Error& e) {
    t_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return LPS_ERR_UNKNOWN;
  } catch (...) {
    t_last_error = "unknown failure";
    return LPS_ERR_UNKNOWN;
  }
}

const lps::SmoothBody& as_smooth(const lps_body* body) {
  if (!body) lps::fail(lps::ErrorCode::invalid_argument, "null body handle");
  const auto* smooth = std::get_if<lps::SmoothBody>(&body->value);
  if (!smooth)
    lps::fail(lps::ErrorCode::invalid_argument, "a smooth body is required (got a polytope)");
  return *smooth;
}

const lps::Polytope& as_polytope(const lps_body* body) {
  if (!body) lps::fail(lps::ErrorCode::invalid_argument, "null body handle");
  const auto* poly = std::get_if<lps::Polytope>(&body->value);
  if (!poly) lps::fail(lps::ErrorCode::invalid_argument, "a polytope is required");
  return *poly;
}

template <class T>
void require(const T* ptr, const char* what) {
  if (!ptr) lps::fail(lps::ErrorCode::invalid_argument, std::string("null ") + what);
}

lps::Vec to_vec(const double* data, int n) {
  lps::Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = data[i];
  return v;
}

lps::PExponent to_p(lps_p_kind pk, double p) {
  switch (pk) {
    case LPS_P_FINITE: return lps::PExponent::finite(p);
    case LPS_P_POS_INF: return lps::PExponent::pos_inf();
    case LPS_P_NEG_INF: return lps::PExponent::neg_inf();
  }
  lps::fail(lps::ErrorCode::invalid_argument, "bad p kind");
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

} // namespace

extern "C" {

const char* lps_version(void) { return "1.0.0"; }

const char* lps_last_error(void) { return t_last_error.c_str(); }

void lps_set_thread_cap(int cap) { lps::set_thread_cap(cap); }

// --- bodies -----------------------------------------------------------------

lps_status lps_body_ball(int n, double radius, lps_body** out) {
  return guarded([&] {
    require(out, "out pointer");
    *out = new lps_body{lps::SmoothBody::make_ball(n, radius)};
  });
}

lps_status lps_body_ellipsoid(int n, const double* semi_axes, lps_body** out) {
  return guarded([&] {
    require(out, "out pointer");
    require(semi_axes, "semi_axes");
    *out = new lps_body{lps::SmoothBody::make_ellipsoid(to_vec(semi_axes, n))};
  });
}

lps_status lps_body_polytope(int n, const double* vertices, size_t nvertices, lps_body** out) {
  return guarded([&] {
    require(out, "out pointer");
    require(vertices, "vertices");
    std::vector<lps::Vec> verts;
    verts.reserve(nvertices);
    for (size_t i = 0; i < nvertices; ++i) verts.push_back(to_vec(vertices + i * size_t(n), n));
    *out = new lps_body{lps::Polytope(n, std::move(verts))};
  });
}

lps_status lps_body_from_json(const char* json_text, lps_body** out) {
  return guarded([&] {
    require(out, "out pointer");
    require(json_text, "json text");
    *out = new lps_body{lps::body_from_json(json_text)};
  });
}

lps_status lps_body_generic(int n, lps_support_fn support, void* ctx, double fd_step,
                            lps_body** out) {
  return guarded([&] {
    require(out, "out pointer");
    if (!support) lps::fail(lps::ErrorCode::invalid_argument, "null support evaluator");
    auto fn = [support, ctx](const lps::Vec& u) { return support(u.data(), ctx); };
    *out = new lps_body{
        lps::SmoothBody::make_generic(n, std::move(fn), fd_step > 0.0 ? fd_step : 1e-5)};
  });
}

lps_status lps_body_parallel(const lps_body* body, double t, lps_body** out) {
  return guarded([&] {
    require(out, "out pointer");
    *out = new lps_body{as_smooth(body).parallel(t)};
  });
}

void lps_body_free(lps_body* body) { delete body; }

lps_status lps_body_dim(const lps_body* body, int* out) {
  return guarded([&] {
    require(body, "body");
    require(out, "out pointer");
    *out = lps::body_dim(body->value);
  });
}

lps_status lps_body_is_polytope(const lps_body* body, int* out) {
  return guarded([&] {
    require(body, "body");
    require(out, "out pointer");
    *out = std::holds_alternative<lps::Polytope>(body->value) ? 1 : 0;
  });
}

lps_status lps_body_support(const lps_body* body, const double* u, double* out) {
  return guarded([&] {
    require(body, "body");
    require(u, "direction");
    require(out, "out pointer");
    const int n = lps::body_dim(body->value);
    const lps::Vec uv = to_vec(u, n);
    *out = std::visit([&](const auto& b) { return b.support(uv); }, body->value);
  });
}

lps_status lps_body_beta(const lps_body* body, double* out) {
  return guarded([&] {
    require(body, "body");
    require(out, "out pointer");
    *out = std::visit([](const auto& b) { return b.beta(); }, body->value);
  });
}

lps_status lps_body_radius_bounds(const lps_body* body, double* lambda, double* Lambda) {
  return guarded([&] {
    require(body, "body");
    require(lambda, "lambda pointer");
    require(Lambda, "Lambda pointer");
    const auto [lo, hi] = std::visit([](const auto& b) { return b.radius_bounds(); }, body->value);
    *lambda = lo;
    *Lambda = hi;
  });
}

lps_status lps_body_principal_radii(const lps_body* body, const double* u, double* out) {
  return guarded([&] {
    require(u, "direction");
    require(out, "out pointer");
    const auto& b = as_smooth(body);
    const lps::Vec r = b.principal_radii(to_vec(u, b.dim()));
    for (int i = 0; i < b.dim() - 1; ++i) out[i] = r(i);
  });
}

lps_status lps_body_sym_radii(const lps_body* body, const double* u, int j, double* out) {
  return guarded([&] {
    require(u, "direction");
    require(out, "out pointer");
    const auto& b = as_smooth(body);
    *out = b.sym_radii(to_vec(u, b.dim()), j);
  });
}

lps_status lps_body_h_curvature(const lps_body* body, const double* u, int j, double* out) {
  return guarded([&] {
    require(u, "direction");
    require(out, "out pointer");
    const auto& b = as_smooth(body);
    *out = b.h_curvature(to_vec(u, b.dim()), j);
  });
}

lps_status lps_body_polar_radial(const lps_body* body, const double* u, double* out) {
  return guarded([&] {
    require(u, "direction");
    require(out, "out pointer");
    const auto& b = as_smooth(body);
    *out = b.polar_radial(to_vec(u, b.dim()));
  });
}

lps_status lps_body_boundary_point(const lps_body* body, const double* u, double* out) {
  return guarded([&] {
    require(u, "direction");
    require(out, "out pointer");
    const auto& b = as_smooth(body);
    const lps::Vec x = b.boundary_point(to_vec(u, b.dim()));
    for (int i = 0; i < b.dim(); ++i) out[i] = x(i);
  });
}

// --- quadrature ----------------------------------------------------------------

lps_status lps_quadrature_build(int n, int level, lps_quadrature** out) {
  return guarded([&] {
    require(out, "out pointer");
    *out = new lps_quadrature{lps::build_quadrature(n, level)};
  });
}

void lps_quadrature_free(lps_quadrature* quad) { delete quad; }

lps_status lps_quadrature_size(const lps_quadrature* quad, size_t* out) {
  return guarded([&] {
    require(quad, "quadrature");
    require(out, "out pointer");
    *out = quad->value.size();
  });
}

lps_status lps_quadrature_weight_sum(const lps_quadrature* quad, double* out) {
  return guarded([&] {
    require(quad, "quadrature");
    require(out, "out pointer");
    *out = quad->value.weights.sum();
  });
}

// --- regions --------------------------------------------------------------------

lps_status lps_region_full(lps_region** out) {
  return guarded([&] {
    require(out, "out pointer");
    *out = new lps_region{lps::SphereRegion::full()};
  });
}

lps_status lps_region_cap(int n, const double* center, double angle, lps_region** out) {
  return guarded([&] {
    require(out, "out pointer");
    require(center, "center");
    *out = new lps_region{lps::SphereRegion::cap(to_vec(center, n), angle)};
  });
}

lps_status lps_region_sector(double theta0, double theta1, lps_region** out) {
  return guarded([&] {
    require(out, "out pointer");
    *out = new lps_region{lps::SphereRegion::sector(theta0, theta1)};
  });
}

lps_status lps_region_halfspace_pullback(const lps_body* body, const double* normal, double offset,
                                         lps_region** out) {
  return guarded([&] {
    require(out, "out pointer");
    require(normal, "normal");
    const auto& b = as_smooth(body);
    *out = new lps_region{lps::boundary_region_pullback(
        b, lps::SpatialRegion::halfspace(to_vec(normal, b.dim()), offset))};
  });
}

lps_status lps_region_ball_pullback(const lps_body* body, const double* center, double radius,
                                    lps_region** out) {
  return guarded([&] {
    require(out, "out pointer");
    require(center, "center");
    const auto& b = as_smooth(body);
    *out = new lps_region{
        lps::boundary_region_pullback(b, lps::SpatialRegion::ball(to_vec(center, b.dim()), radius))};
  });
}

lps_status lps_region_complement(const lps_region* region, lps_region** out) {
  return guarded([&] {
    require(region, "region");
    require(out, "out pointer");
    *out = new lps_region{region->value.complement()};
  });
}

void lps_region_free(lps_region* region) { delete region; }

// --- functionals ------------------------------------------------------------------

lps_status lps_asa(const lps_body* body, const lps_quadrature* quad, lps_p_kind pk, double p,
                   double* out) {
  return guarded([&] {
    require(quad, "quadrature");
    require(out, "out pointer");
    *out = lps::lp_asa(as_smooth(body), to_p(pk, p), quad->value);
  });
}

lps_status lps_mixed_asa(const lps_body* body, const lps_quadrature* quad, lps_p_kind pk, double p,
                         double s, double* out) {
  return guarded([&] {
    require(quad, "quadrature");
    require(out, "out pointer");
    *out = lps::mixed_asa(as_smooth(body), to_p(pk, p), s, quad->value);
  });
}

lps_status lps_neg_n_asa(const lps_body* body, const lps_quadrature* quad, double* value,
                         size_t* node) {
  return guarded([&] {
    require(quad, "quadrature");
    require(value, "value pointer");
    const auto r = lps::l_neg_n_asa(as_smooth(body), quad->value);
    *value = r.value;
    if (node) *node = r.node;
  });
}

lps_status lps_quermass(const lps_body* body, const lps_quadrature* quad, lps_p_kind pk, double p,
                        int m, int k, double* out) {
  return guarded([&] {
    require(quad, "quadrature");
    require(out, "out pointer");
    *out = lps::lp_quermass(as_smooth(body), to_p(pk, p), m, k, quad->value);
  });
}

lps_status lps_classical_quermass(const lps_body* body, const lps_quadrature* quad, int i,
                                  double* out) {
  return guarded([&] {
    require(quad, "quadrature");
    require(out, "out pointer");
    *out = lps::classical_quermass(as_smooth(body), i, quad->value);
  });
}

lps_status lps_dual_quermass(const lps_body* body, const lps_quadrature* quad, double i,
                             double* out) {
  return guarded([&] {
    require(quad, "quadrature");
    require(out, "out pointer");
    *out = lps::dual_quermass(as_smooth(body), i, quad->value);
  });
}

lps_status lps_area_measure(const lps_body* body, const lps_quadrature* quad, lps_p_kind pk,
                            double p, int m, int k, const lps_region* region, double* out) {
  return guarded([&] {
    require(quad, "quadrature");
    require(out, "out pointer");
    const lps::SphereRegion full = lps::SphereRegion::full();
    const lps::SphereRegion& reg = region ? region->value : full;
    *out = lps::area_measure(as_smooth(body), to_p(pk, p), m, k, reg, quad->value);
  });
}

lps_status lps_curvature_energy(const lps_body* body, const lps_quadrature* quad, double alpha,
                                double* out) {
  return guarded([&] {
    require(quad, "quadrature");
    require(out, "out pointer");
    *out = lps::curvature_energy(as_smooth(body), alpha, quad->value);
  });
}

lps_status lps_renyi(const lps_body* body, const lps_quadrature* quad, lps_p_kind pk, double p,
                     int m, int k, double* alpha, double* divergence, double* hellinger) {
  return guarded([&] {
    require(quad, "quadrature");
    const auto r = lps::renyi_divergence(as_smooth(body), m, k, to_p(pk, p), quad->value);
    if (alpha) *alpha = r.alpha;
    if (divergence) *divergence = r.divergence;
    if (hellinger) *hellinger = r.hellinger;
  });
}

// --- steiner -------------------------------------------------------------------------

lps_status lps_grid_build(const lps_body* body, const lps_quadrature* quad, lps_p_kind pk,
                          double p, double s, int M, int Kmax, const lps_region* region,
                          lps_grid** out) {
  return guarded([&] {
    require(quad, "quadrature");
    require(out, "out pointer");
    *out = new lps_grid{lps::build_grid(as_smooth(body), to_p(pk, p), s, M, Kmax, quad->value,
                                        region ? &region->value : nullptr)};
  });
}

void lps_grid_free(lps_grid* grid) { delete grid; }

lps_status lps_grid_dims(const lps_grid* grid, int* M, int* Kmax) {
  return guarded([&] {
    require(grid, "grid");
    if (M) *M = grid->value.M;
    if (Kmax) *Kmax = grid->value.Kmax;
  });
}

lps_status lps_grid_entry(const lps_grid* grid, int m, int k, double* out) {
  return guarded([&] {
    require(grid, "grid");
    require(out, "out pointer");
    if (m < 0 || m > grid->value.M || k < m || k > grid->value.Kmax)
      lps::fail(lps::ErrorCode::invalid_argument, "grid entry out of range (need 0 <= m <= k)");
    *out = grid->value.W(m, k);
  });
}

lps_status lps_grid_beta(const lps_grid* grid, double* out) {
  return guarded([&] {
    require(grid, "grid");
    require(out, "out pointer");
    *out = grid->value.beta;
  });
}

lps_status lps_grid_eval(const lps_grid* grid, double t, double tail_tol, int allow_near_beta,
                         double* value, double* tail, int* converged, int* expansion_flagged) {
  return guarded([&] {
    require(grid, "grid");
    require(value, "value pointer");
    const auto sv = lps::evaluate_series(grid->value, t, tail_tol, allow_near_beta != 0);
    *value = sv.value;
    if (tail) *tail = sv.tail_estimate;
    if (converged) *converged = sv.converged ? 1 : 0;
    if (expansion_flagged) *expansion_flagged = sv.expansion_flagged ? 1 : 0;
  });
}

lps_status lps_grid_to_json(const lps_grid* grid, char** out) {
  return guarded([&] {
    require(grid, "grid");
    require(out, "out pointer");
    *out = dup_string(lps::grid_to_json(grid->value));
  });
}

lps_status lps_grid_from_json(const char* text, lps_grid** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out pointer");
    *out = new lps_grid{lps::grid_from_json(text)};
  });
}

lps_status lps_grid_to_csv(const lps_grid* grid, char** out) {
  return guarded([&] {
    require(grid, "grid");
    require(out, "out pointer");
    *out = dup_string(lps::grid_to_csv(grid->value));
  });
}

void lps_string_free(char* s) { delete[] s; }

lps_status lps_direct_parallel_asa(const lps_body* body, const lps_quadrature* quad, lps_p_kind pk,
                                   double p, double s, double t, const lps_region* region,
                                   double* out) {
  return guarded([&] {
    require(quad, "quadrature");
    require(out, "out pointer");
    const auto& b = as_smooth(body);
    lps::lp_exponents(b.dim(), to_p(pk, p), s);
    lps::SampledBody sb(b, quad->value);
    *out = lps::direct_parallel_asa(sb, to_p(pk, p), s, t, region ? &region->value : nullptr);
  });
}

lps_status lps_series_neg_n(const lps_body* body, const lps_quadrature* quad, int M, double t,
                            double* value, size_t* node) {
  return guarded([&] {
    require(quad, "quadrature");
    require(value, "value pointer");
    const auto r = lps::series_neg_n(as_smooth(body), M, t, quad->value);
    *value = r.value;
    if (node) *node = r.node;
  });
}

// --- polytopes ------------------------------------------------------------------------

lps_status lps_polytope_series(const lps_body* body, double p, double s, int M, double t,
                               int refine, double* out) {
  return guarded([&] {
    require(out, "out pointer");
    *out = lps::polytope_series(as_polytope(body), p, s, M, t, refine);
  });
}

lps_status lps_direct_polytope_asa(const lps_body* body, double p, double s, double t, int refine,
                                   double* out) {
  return guarded([&] {
    require(out, "out pointer");
    *out = lps::direct_polytope_asa(as_polytope(body), p, s, t, refine);
  });
}

lps_status lps_polytope_steiner_volume(const lps_body* body, double t, double* out) {
  return guarded([&] {
    require(out, "out pointer");
    *out = lps::polytope_steiner_volume(as_polytope(body), t);
  });
}

lps_status lps_polytope_vertex_count(const lps_body* body, size_t* out) {
  return guarded([&] {
    require(out, "out pointer");
    *out = as_polytope(body).vertices().size();
  });
}

lps_status lps_polytope_cone_area(const lps_body* body, size_t vertex, double* out) {
  return guarded([&] {
    require(out, "out pointer");
    const auto& poly = as_polytope(body);
    if (vertex >= poly.vertices().size())
      lps::fail(lps::ErrorCode::invalid_argument, "vertex index out of range");
    *out = poly.cone_area(vertex);
  });
}

} // extern "C"
