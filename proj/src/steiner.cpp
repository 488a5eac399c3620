#include "steiner.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "algebra.hpp"
#include "json.hpp"

namespace lps {

namespace {

// smallest tau > 0 with sum_j c_j tau^j = 1 (all c_j >= 0, increasing), or
// +inf when the sum never reaches 1
double curvature_expansion_root(std::span<const double> c) {
  double total = 0.0;
  for (double v : c) total += v;
  if (!(total > 0.0)) return std::numeric_limits<double>::infinity();
  auto g = [&](double tau) {
    double acc = 0.0, tp = tau;
    for (double v : c) {
      acc += v * tp;
      tp *= tau;
    }
    return acc;
  };
  double hi = 1.0;
  while (g(hi) < 1.0) {
    hi *= 2.0;
    if (hi > 1e12) return std::numeric_limits<double>::infinity();
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

} // namespace

ExpansionGrid build_grid(const SampledBody& sb, const PExponent& p, double s, int M, int Kmax,
                         const SphereRegion* region) {
  if (M < 0 || Kmax < M) fail(ErrorCode::invalid_argument, "build_grid: need 0 <= M <= Kmax");
  if (Kmax > 64)
    fail(ErrorCode::truncation_too_large, "build_grid: truncation orders above 64 are rejected");
  const int n = sb.dim();
  const auto ex = lp_exponents(n, p, s);
  ExpansionGrid grid;
  grid.n = n;
  grid.p = p;
  grid.s = s;
  grid.M = M;
  grid.Kmax = Kmax;
  grid.beta = sb.body().beta();
  grid.curvature_exp = ex.curvature;
  grid.support_exp = ex.support;
  grid.quad_level = sb.quad().level;
  grid.W = Mat::Zero(M + 1, Kmax + 1);

  const CompositionPlan plan(ex.curvature, n - 1, M);
  const std::size_t N = sb.size();
  const std::size_t nchunks = (N + kChunk - 1) / kChunk;
  std::vector<Mat> sums(nchunks), comps(nchunks);
  std::vector<double> radius(nchunks, std::numeric_limits<double>::infinity());

  parallel_chunks(N, [&](std::size_t cidx, std::size_t begin, std::size_t end) {
    Mat sum = Mat::Zero(M + 1, Kmax + 1);
    Mat comp = Mat::Zero(M + 1, Kmax + 1);
    std::vector<double> cvals(static_cast<std::size_t>(n) - 1);
    std::vector<double> A(static_cast<std::size_t>(M) + 1);
    double rad = std::numeric_limits<double>::infinity();
    Vec u(n);
    for (std::size_t i = begin; i < end; ++i) {
      if (region) {
        u = sb.quad().node(i);
        if (!region->contains(u)) continue;
      }
      for (int j = 1; j < n; ++j) cvals[static_cast<std::size_t>(j) - 1] = sb.cvalue(i, j);
      rad = std::min(rad, curvature_expansion_root(cvals));
      plan.eval(cvals, A);
      const double h = sb.h(i);
      const double base = sb.quad().weights(static_cast<Eigen::Index>(i)) *
                          pow_checked(sb.f(i), ex.curvature);
      const double hb = pow_checked(h, ex.support);
      for (int m = 0; m <= M; ++m) {
        const double g = base * A[static_cast<std::size_t>(m)];
        if (g == 0.0) continue;
        double hp = hb;
        for (int k = m; k <= Kmax; ++k) {
          // Neumaier step on cell (m, k)
          const double x = g * hp;
          double& smk = sum(m, k);
          double& cmk = comp(m, k);
          const double t = smk + x;
          if (std::abs(smk) >= std::abs(x))
            cmk += (smk - t) + x;
          else
            cmk += (x - t) + smk;
          smk = t;
          hp /= h;
        }
      }
    }
    sums[cidx] = std::move(sum);
    comps[cidx] = std::move(comp);
    radius[cidx] = rad;
  });

  Mat total = Mat::Zero(M + 1, Kmax + 1);
  Mat totalc = Mat::Zero(M + 1, Kmax + 1);
  for (std::size_t c = 0; c < nchunks; ++c) {
    const Mat x = sums[c] + comps[c];
    for (int m = 0; m <= M; ++m)
      for (int k = m; k <= Kmax; ++k) {
        const double v = x(m, k);
        double& smk = total(m, k);
        double& cmk = totalc(m, k);
        const double t = smk + v;
        if (std::abs(smk) >= std::abs(v))
          cmk += (smk - t) + v;
        else
          cmk += (v - t) + smk;
        smk = t;
      }
    grid.curvature_radius_t = std::min(grid.curvature_radius_t, radius[c]);
  }
  grid.W = total + totalc;
  return grid;
}

ExpansionGrid build_grid(const SmoothBody& body, const PExponent& p, double s, int M, int Kmax,
                         const SphereQuadrature& quad, const SphereRegion* region) {
  lp_exponents(body.dim(), p, s); // validate before sampling
  SampledBody sb(body, quad);
  return build_grid(sb, p, s, M, Kmax, region);
}

SeriesValue evaluate_series(const ExpansionGrid& grid, double t, double tail_tol,
                            bool allow_near_beta) {
  if (t < 0.0 || t >= grid.beta)
    fail(ErrorCode::t_out_of_range, "evaluate_series: need 0 <= t < beta(K)");
  if (t > 0.95 * grid.beta && !allow_near_beta)
    fail(ErrorCode::t_out_of_range,
         "evaluate_series: t above 0.95*beta needs the near-beta override "
         "(convergence is slow near the boundary)");
  SeriesValue out;
  out.t = t;
  CompensatedSum acc;
  double tail = 0.0;
  std::vector<double> tpow(static_cast<std::size_t>(grid.Kmax) + 1, 1.0);
  for (int k = 1; k <= grid.Kmax; ++k)
    tpow[static_cast<std::size_t>(k)] = tpow[static_cast<std::size_t>(k) - 1] * t;
  for (int m = 0; m <= grid.M; ++m)
    for (int k = m; k <= grid.Kmax; ++k) {
      const double term =
          gen_binom(grid.support_exp, k - m) * grid.W(m, k) * tpow[static_cast<std::size_t>(k)];
      acc.add(term);
      if (k == grid.Kmax) tail = std::max(tail, std::abs(term));
    }
  out.value = acc.get();
  out.tail_estimate = tail;
  out.converged = tail <= tail_tol;
  out.expansion_flagged = t > grid.curvature_radius_t;
  return out;
}

double direct_parallel_asa(const SampledBody& sb, const PExponent& p, double s, double t,
                           const SphereRegion* region) {
  if (t < 0.0) fail(ErrorCode::invalid_argument, "direct_parallel_asa: t must be nonnegative");
  return mixed_asa(sb, p, s, t, region);
}

double direct_parallel_asa(const SmoothBody& body, const PExponent& p, double s, double t,
                           const SphereQuadrature& quad) {
  lp_exponents(body.dim(), p, s);
  SampledBody sb(body, quad);
  return direct_parallel_asa(sb, p, s, t);
}

double series_neg_n_at_node(const SampledBody& sb, std::size_t i, int M, double t) {
  const int n = sb.dim();
  std::vector<double> H(static_cast<std::size_t>(n) - 1);
  for (int j = 1; j < n; ++j) H[static_cast<std::size_t>(j) - 1] = sb.Hj(i, j);
  std::vector<double> B(static_cast<std::size_t>(2 * n));
  for (int q = 1; q <= 2 * n; ++q)
    B[static_cast<std::size_t>(q) - 1] = b_coeff(q, H, sb.h(i));
  double series = 0.0, tp = 1.0;
  for (int m = 0; m <= M; ++m) {
    series += a_coeff_neg_n(m, B) * tp;
    tp *= t;
  }
  return std::sqrt(sb.f(i)) * std::pow(sb.h(i), (double(n) + 1.0) / 2.0) * series;
}

NegNSeriesResult series_neg_n(const SampledBody& sb, int M, double t) {
  if (t < 0.0 || t >= sb.body().beta())
    fail(ErrorCode::t_out_of_range, "series_neg_n: need 0 <= t < beta(K)");
  const int n = sb.dim();
  const std::size_t N = sb.size();
  const CompositionPlan plan(0.5, 2 * n, M);
  std::vector<double> values(N);
  parallel_chunks(N, [&](std::size_t, std::size_t begin, std::size_t end) {
    std::vector<double> H(static_cast<std::size_t>(n) - 1);
    std::vector<double> B(static_cast<std::size_t>(2 * n));
    std::vector<double> A(static_cast<std::size_t>(M) + 1);
    for (std::size_t i = begin; i < end; ++i) {
      for (int j = 1; j < n; ++j) H[static_cast<std::size_t>(j) - 1] = sb.Hj(i, j);
      for (int q = 1; q <= 2 * n; ++q)
        B[static_cast<std::size_t>(q) - 1] = b_coeff(q, H, sb.h(i));
      plan.eval(B, A);
      double series = 0.0, tp = 1.0;
      for (int m = 0; m <= M; ++m) {
        series += A[static_cast<std::size_t>(m)] * tp;
        tp *= t;
      }
      values[i] = std::sqrt(sb.f(i)) * std::pow(sb.h(i), (double(n) + 1.0) / 2.0) * series;
    }
  });
  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < N; ++i)
    if (values[i] > best) {
      best = values[i];
      best_i = i;
    }
  return {best, best_i};
}

NegNSeriesResult series_neg_n(const SmoothBody& body, int M, double t, const SphereQuadrature& quad) {
  SampledBody sb(body, quad);
  return series_neg_n(sb, M, t);
}

SeriesValue local_series(const SmoothBody& body, const PExponent& p, const SphereRegion& region,
                         int M, int Kmax, double t, const SphereQuadrature& quad, double tail_tol,
                         bool allow_near_beta) {
  const ExpansionGrid grid = build_grid(body, p, 0.0, M, Kmax, quad, &region);
  return evaluate_series(grid, t, tail_tol, allow_near_beta);
}

// ---------------------------------------------------------------------------
// Polytope series

namespace {

double cone_integral_2d(const Polytope& poly, std::size_t vertex, double exponent, double shift,
                        int refine) {
  const auto [t0, t1] = poly.normal_arc(vertex);
  const Vec& v = poly.vertices()[vertex];
  const int panels = std::max(4, 4 * refine);
  std::vector<double> gx, gw;
  gauss_legendre(16, gx, gw);
  CompensatedSum acc;
  for (int pnl = 0; pnl < panels; ++pnl) {
    const double a = t0 + (t1 - t0) * pnl / panels;
    const double b = t0 + (t1 - t0) * (pnl + 1) / panels;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t g = 0; g < gx.size(); ++g) {
      const double th = mid + half * gx[g];
      const double h = v(0) * std::cos(th) + v(1) * std::sin(th);
      acc.add(half * gw[g] * std::pow(h + shift, exponent));
    }
  }
  return acc.get();
}

double cone_integral_3d(const Polytope& poly, std::size_t vertex, double exponent, double shift,
                        int refine) {
  const auto& ring = poly.cone_polygon(vertex);
  const Eigen::Vector3d v = poly.vertices()[vertex];
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  for (const auto& m : ring) center += Eigen::Vector3d(m);
  center.normalize();

  std::vector<double> gx, gw;
  gauss_legendre(12, gx, gw);
  const int nsub = 1 << refine; // rows per triangle edge

  auto integrand = [&](const Eigen::Vector3d& x) {
    const double r = x.norm();
    const double h = v.dot(x) / r;
    return std::pow(h + shift, exponent) / (r * r * r);
  };

  CompensatedSum acc;
  for (std::size_t e = 0; e < ring.size(); ++e) {
    const Eigen::Vector3d a = ring[e];
    const Eigen::Vector3d b = ring[(e + 1) % ring.size()];
    Eigen::Vector3d g = (center + a + b).normalized();
    // gnomonic projection onto the tangent plane <x, g> = 1
    const Eigen::Vector3d A = center / center.dot(g);
    const Eigen::Vector3d B = a / a.dot(g);
    const Eigen::Vector3d C = b / b.dot(g);
    // uniform triangulation into nsub^2 subtriangles
    const Eigen::Vector3d du = (B - A) / nsub;
    const Eigen::Vector3d dv = (C - A) / nsub;
    for (int i = 0; i < nsub; ++i)
      for (int j = 0; j < nsub - i; ++j) {
        const Eigen::Vector3d P = A + double(i) * du + double(j) * dv;
        // upward subtriangle (P, P+du, P+dv)
        std::array<std::array<Eigen::Vector3d, 3>, 2> tris;
        int ntri = 1;
        tris[0] = {P, P + du, P + dv};
        if (j < nsub - i - 1) {
          tris[1] = {P + du, P + du + dv, P + dv};
          ntri = 2;
        }
        for (int tI = 0; tI < ntri; ++tI) {
          const Eigen::Vector3d& T0 = tris[static_cast<std::size_t>(tI)][0];
          const Eigen::Vector3d& T1 = tris[static_cast<std::size_t>(tI)][1];
          const Eigen::Vector3d& T2 = tris[static_cast<std::size_t>(tI)][2];
          const double jac = (T1 - T0).cross(T2 - T1).norm();
          for (std::size_t gi = 0; gi < gx.size(); ++gi) {
            const double sq = 0.5 * (gx[gi] + 1.0);
            for (std::size_t gj = 0; gj < gx.size(); ++gj) {
              const double uq = 0.5 * (gx[gj] + 1.0);
              const Eigen::Vector3d x = T0 + sq * (T1 - T0) + sq * uq * (T2 - T1);
              acc.add(0.25 * gw[gi] * gw[gj] * sq * jac * integrand(x));
            }
          }
        }
      }
  }
  return acc.get();
}

enum class PolytopeBranch { series, infinite, volume };

PolytopeBranch polytope_branch(int n, double p, double s) {
  if (s == 0.0) {
    if (p == 0.0) return PolytopeBranch::volume;
    if (p >= -double(n) && p < 0.0) return PolytopeBranch::infinite; // includes p = -n
    return PolytopeBranch::series;
  }
  if (std::abs(double(n) + p) < 1e-12)
    fail(ErrorCode::p_equals_minus_n, "polytope series: p = -n with s != 0 is undefined");
  if (double(n) < s && p > -s && p <= -double(n))
    fail(ErrorCode::invalid_argument, "polytope series: p in (-s, -n] is inadmissible for n < s");
  if (double(n) > s && p >= -double(n) && p < -s)
    fail(ErrorCode::invalid_argument, "polytope series: p in [-n, -s) is inadmissible for n > s");
  return PolytopeBranch::series;
}

} // namespace

double polytope_cone_integral(const Polytope& poly, std::size_t vertex, double exponent,
                              double shift, int refine) {
  if (!poly.vertex_on_hull(vertex)) return 0.0;
  return poly.dim() == 2 ? cone_integral_2d(poly, vertex, exponent, shift, refine)
                         : cone_integral_3d(poly, vertex, exponent, shift, refine);
}

double polytope_steiner_volume(const Polytope& poly, double t) {
  const double pi = std::numbers::pi;
  if (poly.dim() == 2)
    return 2.0 * (poly.volume() + poly.perimeter() * t + pi * t * t);
  return 3.0 * (poly.volume() + poly.surface_area() * t + poly.edge_angle_term() * t * t +
                (4.0 * pi / 3.0) * t * t * t);
}

double polytope_series(const Polytope& poly, double p, double s, int M, double t, int refine) {
  if (t < 0.0 || t >= poly.beta())
    fail(ErrorCode::t_out_of_range, "polytope_series: need 0 <= t < beta(P)");
  const int n = poly.dim();
  switch (polytope_branch(n, p, s)) {
    case PolytopeBranch::volume: return polytope_steiner_volume(poly, t);
    case PolytopeBranch::infinite: return std::numeric_limits<double>::infinity();
    case PolytopeBranch::series: break;
  }
  const double b = (double(n) - s) * (1.0 - p) / (double(n) + p);
  const double texp = (double(n) - 1.0) * (double(n) - s) / (double(n) + p);
  CompensatedSum acc;
  for (int m = 0; m <= M; ++m) {
    const double gb = gen_binom(b, m);
    if (gb == 0.0) continue;
    double cones = 0.0;
    for (std::size_t vtx = 0; vtx < poly.vertices().size(); ++vtx)
      cones += polytope_cone_integral(poly, vtx, b - double(m), 0.0, refine);
    acc.add(gb * cones * std::pow(t, double(m) + texp));
  }
  return acc.get();
}

double direct_polytope_asa(const Polytope& poly, double p, double s, double t, int refine) {
  if (t < 0.0) fail(ErrorCode::invalid_argument, "direct_polytope_asa: t must be nonnegative");
  const int n = poly.dim();
  switch (polytope_branch(n, p, s)) {
    case PolytopeBranch::volume: return polytope_steiner_volume(poly, t);
    case PolytopeBranch::infinite: return std::numeric_limits<double>::infinity();
    case PolytopeBranch::series: break;
  }
  const double b = (double(n) - s) * (1.0 - p) / (double(n) + p);
  const double texp = (double(n) - 1.0) * (double(n) - s) / (double(n) + p);
  double cones = 0.0;
  for (std::size_t vtx = 0; vtx < poly.vertices().size(); ++vtx)
    cones += polytope_cone_integral(poly, vtx, b, t, refine);
  return std::pow(t, texp) * cones;
}

// ---------------------------------------------------------------------------
// Grid serialization

namespace {

nlohmann::ordered_json p_to_json(const PExponent& p) {
  switch (p.kind) {
    case PExponent::Kind::finite: return p.value;
    case PExponent::Kind::pos_inf: return "inf";
    case PExponent::Kind::neg_inf: return "-inf";
  }
  return nullptr;
}

PExponent p_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return PExponent::pos_inf();
    if (s == "-inf") return PExponent::neg_inf();
    fail(ErrorCode::io_error, "grid JSON: bad p token \"" + s + "\"");
  }
  return PExponent::finite(j.get<double>());
}

} // namespace

std::string grid_to_json(const ExpansionGrid& grid) {
  nlohmann::ordered_json j;
  j["schema"] = "lp-steiner/1";
  j["kind"] = "expansion-grid";
  j["n"] = grid.n;
  j["p"] = p_to_json(grid.p);
  j["s"] = grid.s;
  j["M"] = grid.M;
  j["Kmax"] = grid.Kmax;
  j["beta"] = grid.beta;
  j["curvature_exp"] = grid.curvature_exp;
  j["support_exp"] = grid.support_exp;
  if (std::isfinite(grid.curvature_radius_t))
    j["curvature_radius_t"] = grid.curvature_radius_t;
  else
    j["curvature_radius_t"] = nullptr;
  j["quad_level"] = grid.quad_level;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int m = 0; m <= grid.M; ++m) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int k = m; k <= grid.Kmax; ++k) row.push_back(grid.W(m, k));
    rows.push_back(std::move(row));
  }
  j["W"] = std::move(rows);
  return j.dump(2) + "\n";
}

ExpansionGrid grid_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::io_error, std::string("grid JSON parse error: ") + e.what());
  }
  if (j.value("schema", "") != "lp-steiner/1")
    fail(ErrorCode::io_error, "grid JSON: missing or unknown schema");
  ExpansionGrid grid;
  grid.n = j.at("n").get<int>();
  grid.p = p_from_json(j.at("p"));
  grid.s = j.at("s").get<double>();
  grid.M = j.at("M").get<int>();
  grid.Kmax = j.at("Kmax").get<int>();
  grid.beta = j.at("beta").get<double>();
  grid.curvature_exp = j.at("curvature_exp").get<double>();
  grid.support_exp = j.at("support_exp").get<double>();
  if (j.contains("curvature_radius_t") && !j.at("curvature_radius_t").is_null())
    grid.curvature_radius_t = j.at("curvature_radius_t").get<double>();
  grid.quad_level = j.value("quad_level", 0);
  grid.W = Mat::Zero(grid.M + 1, grid.Kmax + 1);
  const auto& rows = j.at("W");
  if (static_cast<int>(rows.size()) != grid.M + 1)
    fail(ErrorCode::io_error, "grid JSON: W row count does not match M");
  for (int m = 0; m <= grid.M; ++m) {
    const auto& row = rows[static_cast<std::size_t>(m)];
    if (static_cast<int>(row.size()) != grid.Kmax - m + 1)
      fail(ErrorCode::io_error, "grid JSON: W row length mismatch");
    for (int k = m; k <= grid.Kmax; ++k)
      grid.W(m, k) = row[static_cast<std::size_t>(k - m)].get<double>();
  }
  return grid;
}

std::string grid_to_csv(const ExpansionGrid& grid) {
  std::string out = "m,k,value\n";
  char buf[64];
  for (int m = 0; m <= grid.M; ++m)
    for (int k = m; k <= grid.Kmax; ++k) {
      std::snprintf(buf, sizeof buf, "%d,%d,%.17g\n", m, k, grid.W(m, k));
      out += buf;
    }
  return out;
}

} // namespace lps
