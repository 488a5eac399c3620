#include "bodies.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "algebra.hpp"
#include "json.hpp"

namespace lps {

namespace {
constexpr double kUnitTol = 1e-14;
constexpr double kRadiusFloor = 1e-12;
} // namespace

void check_unit(const Vec& u) {
  if (std::abs(u.norm() - 1.0) > kUnitTol)
    fail(ErrorCode::invalid_argument, "direction is not a unit vector");
}

Mat tangent_basis(const Vec& u) {
  const auto n = u.size();
  Vec v = u;
  const double sigma = (u(0) >= 0.0) ? -1.0 : 1.0;
  v(0) -= sigma;
  const double vtv = v.squaredNorm();
  Mat P = Mat::Identity(n, n);
  if (vtv > 0.0) P -= (2.0 / vtv) * (v * v.transpose());
  return P.rightCols(n - 1);
}

std::vector<double> elementary_symmetric(const Vec& values) {
  const auto r = static_cast<std::size_t>(values.size());
  std::vector<double> e(r + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t i = 0; i < r; ++i) {
    const double x = values(static_cast<Eigen::Index>(i));
    for (std::size_t k = std::min(i + 1, r); k >= 1; --k) e[k] += x * e[k - 1];
  }
  return e;
}

// ---------------------------------------------------------------------------
// SmoothBody

struct SmoothBody::GenericData {
  std::function<double(const Vec&)> support;
  mutable std::once_flag beta_once;
  mutable double beta_raw = 0.0;    // conservative min of base support
  mutable double lambda_raw = 0.0;
  mutable double Lambda_raw = 0.0;
};

SmoothBody SmoothBody::make_ball(int n, double radius) {
  if (n < 2) fail(ErrorCode::unsupported_dimension, "ball: need n >= 2");
  if (!(radius > 0.0)) fail(ErrorCode::invalid_argument, "ball: radius must be positive");
  SmoothBody b;
  b.n_ = n;
  b.kind_ = Kind::ball;
  b.radius_ = radius;
  return b;
}

SmoothBody SmoothBody::make_ellipsoid(Vec semi_axes) {
  if (semi_axes.size() < 2) fail(ErrorCode::unsupported_dimension, "ellipsoid: need n >= 2");
  for (Eigen::Index i = 0; i < semi_axes.size(); ++i)
    if (!(semi_axes(i) > 0.0)) fail(ErrorCode::invalid_argument, "ellipsoid: semi-axes must be positive");
  SmoothBody b;
  b.n_ = static_cast<int>(semi_axes.size());
  b.kind_ = Kind::ellipsoid;
  b.axes_ = std::move(semi_axes);
  return b;
}

SmoothBody SmoothBody::make_generic(int n, std::function<double(const Vec&)> support, double fd_step) {
  if (n < 2) fail(ErrorCode::unsupported_dimension, "generic body: need n >= 2");
  if (!support) fail(ErrorCode::invalid_argument, "generic body: null support evaluator");
  if (!(fd_step > 0.0)) fail(ErrorCode::invalid_argument, "generic body: step must be positive");
  SmoothBody b;
  b.n_ = n;
  b.kind_ = Kind::generic;
  b.generic_ = std::make_shared<GenericData>();
  b.generic_->support = std::move(support);
  b.fd_step_ = fd_step;
  return b;
}

double SmoothBody::base_support(const Vec& u) const {
  switch (kind_) {
    case Kind::ball: return radius_;
    case Kind::ellipsoid: return std::sqrt((axes_.array().square() * u.array().square()).sum());
    case Kind::generic: {
      const double h = generic_->support(u);
      if (!(h > 0.0)) fail(ErrorCode::invalid_argument, "support must be positive (origin interior)");
      return h;
    }
  }
  return 0.0;
}

double SmoothBody::support(const Vec& u) const {
  check_unit(u);
  return base_support(u) + offset_;
}

double SmoothBody::extension(const Vec& x) const {
  const double r = x.norm();
  return r * generic_->support(x / r);
}

Vec SmoothBody::base_radii(const Vec& u) const {
  const int n = n_;
  if (kind_ == Kind::ball) return Vec::Constant(n - 1, radius_);

  Mat hess(n, n);
  if (kind_ == Kind::ellipsoid) {
    const Vec d = axes_.array().square();
    const double h = std::sqrt((d.array() * u.array().square()).sum());
    const Vec du = d.asDiagonal() * u;
    hess = Mat(d.asDiagonal());
    hess.noalias() -= du * du.transpose() / (h * h);
    hess /= h;
  } else {
    // central differences on the 1-homogeneous extension
    const double d = fd_step_;
    const double f0 = extension(u);
    for (int i = 0; i < n; ++i) {
      Vec xp = u, xm = u;
      xp(i) += d;
      xm(i) -= d;
      hess(i, i) = (extension(xp) - 2.0 * f0 + extension(xm)) / (d * d);
      for (int j = i + 1; j < n; ++j) {
        Vec xpp = u, xpm = u, xmp = u, xmm = u;
        xpp(i) += d; xpp(j) += d;
        xpm(i) += d; xpm(j) -= d;
        xmp(i) -= d; xmp(j) += d;
        xmm(i) -= d; xmm(j) -= d;
        hess(i, j) = hess(j, i) =
            (extension(xpp) - extension(xpm) - extension(xmp) + extension(xmm)) / (4.0 * d * d);
      }
    }
  }

  const Mat basis = tangent_basis(u);
  const Mat reduced = basis.transpose() * hess * basis;
  Eigen::SelfAdjointEigenSolver<Mat> es(reduced);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::invalid_argument, "principal_radii: eigen decomposition failed");
  Vec r = es.eigenvalues(); // ascending
  for (Eigen::Index i = 0; i < r.size(); ++i)
    if (!(r(i) > kRadiusFloor))
      fail(ErrorCode::nonconvex_detected,
           "principal radius <= 0 encountered (body is not C^2_+)");
  return r;
}

Vec SmoothBody::principal_radii(const Vec& u) const {
  check_unit(u);
  Vec r = base_radii(u);
  r.array() += offset_;
  return r;
}

double SmoothBody::sym_radii(const Vec& u, int j) const {
  if (j < 0 || j > n_ - 1) fail(ErrorCode::invalid_argument, "sym_radii: need 0 <= j <= n-1");
  if (j == 0) return 1.0;
  const auto e = elementary_symmetric(principal_radii(u));
  return e[static_cast<std::size_t>(j)] / double(binomial(n_ - 1, j));
}

double SmoothBody::h_curvature(const Vec& u, int j) const {
  if (j < 0 || j > n_ - 1) fail(ErrorCode::invalid_argument, "h_curvature: need 0 <= j <= n-1");
  if (j == 0) return 1.0;
  const auto e = elementary_symmetric(principal_radii(u));
  const double s_nj = e[static_cast<std::size_t>(n_ - 1 - j)] / double(binomial(n_ - 1, n_ - 1 - j));
  const double s_top = e[static_cast<std::size_t>(n_ - 1)];
  return s_nj / s_top;
}

double SmoothBody::curvature_function(const Vec& u) const {
  return principal_radii(u).prod();
}

namespace {

// Direction grid for conservative support scans; returns directions plus the
// largest geodesic gap to the nearest grid point.
std::pair<std::vector<Vec>, double> direction_grid(int n) {
  std::vector<Vec> dirs;
  const double pi = std::numbers::pi;
  if (n == 2) {
    const int N = 8192;
    dirs.reserve(N);
    for (int i = 0; i < N; ++i) {
      const double th = (i + 0.5) * 2.0 * pi / N;
      Vec u(2);
      u << std::cos(th), std::sin(th);
      dirs.push_back(u);
    }
    return {std::move(dirs), pi / N};
  }
  int counts[4] = {0, 0, 0, 0}; // polar angles; last entry used as azimuth
  if (n == 3) counts[0] = 192, counts[1] = 384;
  else if (n == 4) counts[0] = 48, counts[1] = 48, counts[2] = 96;
  else if (n == 5) counts[0] = 24, counts[1] = 24, counts[2] = 24, counts[3] = 48;
  else fail(ErrorCode::unsupported_dimension, "support scan: 2 <= n <= 5");
  const int npolar = n - 2;
  std::vector<int> idx(static_cast<std::size_t>(npolar) + 1, 0);
  double gap = 0.0;
  for (int i = 0; i < npolar; ++i) gap = std::max(gap, pi / counts[i]);
  gap = std::max(gap, 2.0 * pi / counts[npolar]);
  while (true) {
    Vec u(n);
    double sines = 1.0;
    for (int i = 0; i < npolar; ++i) {
      const double phi = (idx[i] + 0.5) * pi / counts[i];
      u(i) = sines * std::cos(phi);
      sines *= std::sin(phi);
    }
    const double psi = (idx[npolar] + 0.5) * 2.0 * pi / counts[npolar];
    u(n - 2) = sines * std::cos(psi);
    u(n - 1) = sines * std::sin(psi);
    dirs.push_back(std::move(u));
    int carry = npolar;
    while (carry >= 0) {
      if (++idx[carry] < counts[carry]) break;
      idx[carry] = 0;
      --carry;
    }
    if (carry < 0) break;
  }
  return {std::move(dirs), gap};
}

} // namespace

double SmoothBody::beta() const {
  switch (kind_) {
    case Kind::ball: return radius_ + offset_;
    case Kind::ellipsoid: return axes_.minCoeff() + offset_;
    case Kind::generic: break;
  }
  std::call_once(generic_->beta_once, [&] {
    const auto [dirs, gap] = direction_grid(n_);
    double hmin = std::numeric_limits<double>::infinity();
    double hmax = 0.0;
    for (const auto& u : dirs) {
      const double h = generic_->support(u);
      if (!(h > 0.0)) fail(ErrorCode::invalid_argument, "support must be positive (origin interior)");
      hmin = std::min(hmin, h);
      hmax = std::max(hmax, h);
    }
    const double Lambda = hmax / std::cos(gap);
    generic_->Lambda_raw = Lambda;
    generic_->beta_raw = std::max(hmin - Lambda * gap, 0.0);
    generic_->lambda_raw = generic_->beta_raw;
  });
  return generic_->beta_raw + offset_;
}

std::pair<double, double> SmoothBody::radius_bounds() const {
  switch (kind_) {
    case Kind::ball: return {radius_ + offset_, radius_ + offset_};
    case Kind::ellipsoid: return {axes_.minCoeff() + offset_, axes_.maxCoeff() + offset_};
    case Kind::generic: break;
  }
  beta(); // ensure the scan ran
  return {generic_->lambda_raw + offset_, generic_->Lambda_raw + offset_};
}

SmoothBody SmoothBody::parallel(double t) const {
  if (t < 0.0) fail(ErrorCode::invalid_argument, "parallel body: t must be nonnegative");
  SmoothBody b = *this;
  b.offset_ += t;
  return b;
}

double SmoothBody::polar_radial(const Vec& u) const {
  const double h = support(u);
  if (!(h > 0.0)) fail(ErrorCode::invalid_argument, "polar_radial: support must be positive");
  return 1.0 / h;
}

Vec SmoothBody::boundary_point(const Vec& u) const {
  check_unit(u);
  Vec x(n_);
  switch (kind_) {
    case Kind::ball:
      x = radius_ * u;
      break;
    case Kind::ellipsoid: {
      const Vec d = axes_.array().square();
      const double h = std::sqrt((d.array() * u.array().square()).sum());
      x = (d.asDiagonal() * u) / h;
      break;
    }
    case Kind::generic: {
      const double d = fd_step_;
      for (int i = 0; i < n_; ++i) {
        Vec xp = u, xm = u;
        xp(i) += d;
        xm(i) -= d;
        x(i) = (extension(xp) - extension(xm)) / (2.0 * d);
      }
      break;
    }
  }
  return x + offset_ * u;
}

// ---------------------------------------------------------------------------
// Polytope

Polytope::Polytope(int n, std::vector<Vec> vertices) : n_(n), vertices_(std::move(vertices)) {
  if (n_ != 2 && n_ != 3)
    fail(ErrorCode::unsupported_dimension, "polytope: only n in {2,3} is supported");
  if (vertices_.size() < static_cast<std::size_t>(n_) + 1)
    fail(ErrorCode::invalid_argument, "polytope: need at least n+1 vertices");
  for (const auto& v : vertices_)
    if (v.size() != n_) fail(ErrorCode::invalid_argument, "polytope: vertex dimension mismatch");
  on_hull_.assign(vertices_.size(), false);
  if (n_ == 2) build2d();
  else build3d();
  if (!(beta_ > 0.0))
    fail(ErrorCode::invalid_argument, "polytope: origin must lie in the interior");
}

double Polytope::support(const Vec& u) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices_) best = std::max(best, v.dot(u));
  return best;
}

std::pair<double, double> Polytope::radius_bounds() const {
  double Lambda = 0.0;
  for (const auto& v : vertices_) Lambda = std::max(Lambda, v.norm());
  return {beta_, Lambda};
}

bool Polytope::in_normal_cone(std::size_t vi, const Vec& u) const {
  const double hv = vertices_[vi].dot(u);
  const double h = support(u);
  double scale = 1.0;
  for (const auto& v : vertices_) scale = std::max(scale, v.norm());
  return hv >= h - 1e-12 * scale;
}

std::pair<double, double> Polytope::normal_arc(std::size_t vi) const {
  if (n_ != 2) fail(ErrorCode::unsupported_dimension, "normal_arc: n = 2 only");
  if (!on_hull_[vi]) fail(ErrorCode::invalid_argument, "normal_arc: vertex not on the hull");
  return arcs_[vi];
}

const std::vector<Vec>& Polytope::cone_polygon(std::size_t vi) const {
  if (n_ != 3) fail(ErrorCode::unsupported_dimension, "cone_polygon: n = 3 only");
  if (!on_hull_[vi]) fail(ErrorCode::invalid_argument, "cone_polygon: vertex not on the hull");
  return cone_polys_[vi];
}

double Polytope::cone_area(std::size_t vi) const {
  if (!on_hull_[vi]) return 0.0;
  if (n_ == 2) {
    const auto [t0, t1] = arcs_[vi];
    return t1 - t0;
  }
  const auto& poly = cone_polys_[vi];
  const auto K = poly.size();
  double angle_sum = 0.0;
  for (std::size_t i = 0; i < K; ++i) {
    const Vec& prev = poly[(i + K - 1) % K];
    const Vec& cur = poly[i];
    const Vec& next = poly[(i + 1) % K];
    Vec ta = prev - cur * cur.dot(prev);
    Vec tb = next - cur * cur.dot(next);
    ta.normalize();
    tb.normalize();
    angle_sum += std::acos(std::clamp(ta.dot(tb), -1.0, 1.0));
  }
  return angle_sum - (double(K) - 2.0) * std::numbers::pi;
}

void Polytope::build2d() {
  // Andrew monotone chain on the distinct points
  std::vector<std::size_t> order(vertices_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (vertices_[a](0) != vertices_[b](0)) return vertices_[a](0) < vertices_[b](0);
    return vertices_[a](1) < vertices_[b](1);
  });
  auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
    const Vec& O = vertices_[o];
    return (vertices_[a](0) - O(0)) * (vertices_[b](1) - O(1)) -
           (vertices_[a](1) - O(1)) * (vertices_[b](0) - O(0));
  };
  const std::size_t N = order.size();
  std::vector<std::size_t> hull(2 * N);
  std::size_t k = 0;
  for (std::size_t ii = 0; ii < N; ++ii) { // lower hull
    const std::size_t i = order[ii];
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], i) <= 0) --k;
    hull[k++] = i;
  }
  for (std::size_t ii = N - 1, t = k + 1; ii-- > 0;) { // upper hull
    const std::size_t i = order[ii];
    while (k >= t && cross(hull[k - 2], hull[k - 1], i) <= 0) --k;
    hull[k++] = i;
  }
  hull.resize(k - 1); // the closing point repeats the first
  if (hull.size() < 3) fail(ErrorCode::invalid_argument, "polytope: degenerate 2d hull");
  // hull is CCW
  const std::size_t K = hull.size();
  arcs_.assign(vertices_.size(), {0.0, 0.0});
  std::vector<double> edge_angles(K);
  volume_ = 0.0;
  surface_area_ = 0.0;
  beta_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < K; ++i) {
    const Vec& a = vertices_[hull[i]];
    const Vec& b = vertices_[hull[(i + 1) % K]];
    on_hull_[hull[i]] = true;
    volume_ += 0.5 * (a(0) * b(1) - b(0) * a(1));
    const double len = (b - a).norm();
    surface_area_ += len;
    Vec normal(2);
    normal << (b(1) - a(1)) / len, -(b(0) - a(0)) / len; // outward for CCW
    edge_angles[i] = std::atan2(normal(1), normal(0));
    const double off = a.dot(normal);
    beta_ = std::min(beta_, off);
    Facet f;
    f.normal = normal;
    f.offset = off;
    f.members = {hull[i], hull[(i + 1) % K]};
    f.area = len;
    facets_.push_back(std::move(f));
  }
  for (std::size_t i = 0; i < K; ++i) {
    // Norm(v_{i+1}) spans from the normal of edge i to the normal of edge i+1
    double t0 = edge_angles[i];
    double t1 = edge_angles[(i + 1) % K];
    while (t1 <= t0) t1 += 2.0 * std::numbers::pi;
    arcs_[hull[(i + 1) % K]] = {t0, t1};
  }
}

void Polytope::build3d() {
  const std::size_t V = vertices_.size();
  double scale = 0.0;
  for (const auto& v : vertices_) scale = std::max(scale, v.lpNorm<Eigen::Infinity>());
  const double tol = 1e-9 * std::max(scale, 1.0);

  std::vector<std::vector<std::size_t>> facet_members;
  for (std::size_t i = 0; i < V; ++i)
    for (std::size_t j = i + 1; j < V; ++j)
      for (std::size_t k = j + 1; k < V; ++k) {
        Eigen::Vector3d a = vertices_[i], b = vertices_[j], c = vertices_[k];
        Eigen::Vector3d nrm = (b - a).cross(c - a);
        if (nrm.norm() < tol) continue;
        nrm.normalize();
        double off = nrm.dot(a);
        double lo = 0.0, hi = 0.0;
        for (const auto& v : vertices_) {
          const double d = nrm.dot(Eigen::Vector3d(v)) - off;
          lo = std::min(lo, d);
          hi = std::max(hi, d);
        }
        int side;
        if (hi <= tol) side = +1;
        else if (lo >= -tol) side = -1;
        else continue;
        if (side < 0) { nrm = -nrm; off = -off; }
        std::vector<std::size_t> members;
        for (std::size_t v = 0; v < V; ++v)
          if (std::abs(nrm.dot(Eigen::Vector3d(vertices_[v])) - off) <= tol) members.push_back(v);
        std::sort(members.begin(), members.end());
        if (std::find(facet_members.begin(), facet_members.end(), members) != facet_members.end())
          continue;
        facet_members.push_back(members);
        Facet f;
        f.normal = Vec(3);
        f.normal << nrm(0), nrm(1), nrm(2);
        f.offset = off;
        f.members = members;
        facets_.push_back(std::move(f));
      }
  if (facets_.size() < 4) fail(ErrorCode::invalid_argument, "polytope: degenerate 3d hull");

  beta_ = std::numeric_limits<double>::infinity();
  volume_ = 0.0;
  surface_area_ = 0.0;
  for (auto& f : facets_) {
    beta_ = std::min(beta_, f.offset);
    // shoelace area over the members in cyclic order (members themselves stay
    // index-sorted for the set operations below)
    const Mat basis = tangent_basis(f.normal);
    Vec centroid = Vec::Zero(3);
    for (auto m : f.members) centroid += vertices_[m];
    centroid /= double(f.members.size());
    std::vector<std::size_t> ring = f.members;
    std::sort(ring.begin(), ring.end(), [&](std::size_t a, std::size_t b) {
      const Vec pa = basis.transpose() * (vertices_[a] - centroid);
      const Vec pb = basis.transpose() * (vertices_[b] - centroid);
      return std::atan2(pa(1), pa(0)) < std::atan2(pb(1), pb(0));
    });
    double area2 = 0.0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const Vec pa = basis.transpose() * vertices_[ring[i]];
      const Vec pb = basis.transpose() * vertices_[ring[(i + 1) % ring.size()]];
      area2 += pa(0) * pb(1) - pb(0) * pa(1);
    }
    f.area = 0.5 * std::abs(area2);
    surface_area_ += f.area;
    volume_ += f.offset * f.area / 3.0;
    for (auto m : f.members) on_hull_[m] = true;
  }

  // edges: facet pairs sharing exactly two vertices
  edge_term_ = 0.0;
  for (std::size_t i = 0; i < facets_.size(); ++i)
    for (std::size_t j = i + 1; j < facets_.size(); ++j) {
      std::vector<std::size_t> shared;
      std::set_intersection(facets_[i].members.begin(), facets_[i].members.end(),
                            facets_[j].members.begin(), facets_[j].members.end(),
                            std::back_inserter(shared));
      if (shared.size() != 2) continue;
      Edge e;
      e.a = shared[0];
      e.b = shared[1];
      e.length = (vertices_[e.a] - vertices_[e.b]).norm();
      e.exterior_angle =
          std::acos(std::clamp(facets_[i].normal.dot(facets_[j].normal), -1.0, 1.0));
      edge_term_ += e.length * e.exterior_angle / 2.0;
      edges_.push_back(std::move(e));
    }

  // per-vertex normal cones: incident facet normals in cyclic order
  cone_polys_.assign(V, {});
  for (std::size_t v = 0; v < V; ++v) {
    if (!on_hull_[v]) continue;
    std::vector<Vec> normals;
    for (const auto& f : facets_)
      if (std::binary_search(f.members.begin(), f.members.end(), v)) normals.push_back(f.normal);
    if (normals.size() < 3)
      fail(ErrorCode::invalid_argument, "polytope: vertex with fewer than 3 incident facets");
    Vec axis = Vec::Zero(3);
    for (const auto& m : normals) axis += m;
    axis.normalize();
    const Mat basis = tangent_basis(axis);
    std::sort(normals.begin(), normals.end(), [&](const Vec& a, const Vec& b) {
      const Vec pa = basis.transpose() * a;
      const Vec pb = basis.transpose() * b;
      return std::atan2(pa(1), pa(0)) < std::atan2(pb(1), pb(0));
    });
    cone_polys_[v] = std::move(normals);
  }

  // orientation fix: make each cone polygon CCW as seen from outside so the
  // angle-excess area is positive
  for (std::size_t v = 0; v < V; ++v) {
    if (!on_hull_[v] || cone_polys_[v].size() < 3) continue;
    const auto& p = cone_polys_[v];
    const Vec c = (p[0] + p[1] + p[2]).normalized();
    Eigen::Vector3d e0 = Eigen::Vector3d(p[1]) - Eigen::Vector3d(p[0]);
    Eigen::Vector3d e1 = Eigen::Vector3d(p[2]) - Eigen::Vector3d(p[1]);
    if (e0.cross(e1).dot(Eigen::Vector3d(c)) < 0.0)
      std::reverse(cone_polys_[v].begin(), cone_polys_[v].end());
  }
}

// ---------------------------------------------------------------------------
// JSON ingestion

Body body_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::io_error, std::string("body JSON parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind"))
    fail(ErrorCode::invalid_argument, "body JSON: expected an object with a \"kind\" field");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "ball") {
    if (!j.contains("radius")) fail(ErrorCode::invalid_argument, "ball JSON: missing radius");
    const int n = j.value("n", 3);
    return SmoothBody::make_ball(n, j["radius"].get<double>());
  }
  if (kind == "ellipsoid") {
    if (!j.contains("axes")) fail(ErrorCode::invalid_argument, "ellipsoid JSON: missing axes");
    const auto axes = j["axes"].get<std::vector<double>>();
    Vec a(static_cast<Eigen::Index>(axes.size()));
    for (std::size_t i = 0; i < axes.size(); ++i) a(static_cast<Eigen::Index>(i)) = axes[i];
    return SmoothBody::make_ellipsoid(std::move(a));
  }
  if (kind == "polytope") {
    if (!j.contains("vertices")) fail(ErrorCode::invalid_argument, "polytope JSON: missing vertices");
    const auto vs = j["vertices"].get<std::vector<std::vector<double>>>();
    if (vs.empty()) fail(ErrorCode::invalid_argument, "polytope JSON: empty vertex list");
    std::vector<Vec> vertices;
    for (const auto& row : vs) {
      Vec v(static_cast<Eigen::Index>(row.size()));
      for (std::size_t i = 0; i < row.size(); ++i) v(static_cast<Eigen::Index>(i)) = row[i];
      vertices.push_back(std::move(v));
    }
    return Polytope(static_cast<int>(vs.front().size()), std::move(vertices));
  }
  fail(ErrorCode::invalid_argument, "body JSON: unknown kind \"" + kind + "\"");
}

int body_dim(const Body& b) {
  return std::visit([](const auto& x) { return x.dim(); }, b);
}

} // namespace lps
