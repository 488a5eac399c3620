#include "quadrature.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <mutex>
#include <sstream>
#include <thread>

namespace lps {

void gauss_legendre(int q, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(static_cast<std::size_t>(q), 0.0);
  weights.assign(static_cast<std::size_t>(q), 0.0);
  const int m = (q + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    double z = std::cos(std::numbers::pi * (i - 0.25) / (q + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= q; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = q * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    nodes[static_cast<std::size_t>(i) - 1] = -z;
    nodes[static_cast<std::size_t>(q - i)] = z;
    weights[static_cast<std::size_t>(i) - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
    weights[static_cast<std::size_t>(q - i)] = weights[static_cast<std::size_t>(i) - 1];
  }
}

double unit_ball_volume(int n) {
  return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

double sphere_surface_area(int n) { return n * unit_ball_volume(n); }

SphereQuadrature build_quadrature(int n, int level) {
  if (n < 2 || n > 5) fail(ErrorCode::unsupported_dimension, "build_quadrature: 2 <= n <= 5");
  if (level < 1) fail(ErrorCode::invalid_argument, "build_quadrature: level >= 1");
  const double pi = std::numbers::pi;
  SphereQuadrature q;
  q.n = n;
  q.level = level;

  if (n == 2) {
    const std::size_t N = std::size_t(32) << (level - 1);
    q.nodes.resize(static_cast<Eigen::Index>(N), 2);
    q.weights.resize(static_cast<Eigen::Index>(N));
    for (std::size_t i = 0; i < N; ++i) {
      const double th = (double(i) + 0.5) * 2.0 * pi / double(N);
      q.nodes(static_cast<Eigen::Index>(i), 0) = std::cos(th);
      q.nodes(static_cast<Eigen::Index>(i), 1) = std::sin(th);
      q.weights(static_cast<Eigen::Index>(i)) = 2.0 * pi / double(N);
    }
    return q;
  }

  const int npolar = n - 2;
  const int qp = 16 << (level - 1);
  const int naz = 2 * qp;
  std::vector<double> gl_x, gl_w;
  gauss_legendre(qp, gl_x, gl_w);
  // per polar angle j (1-based): angle phi in [0, pi], weight gl_w * (pi/2) * sin^{n-1-j}(phi)
  std::vector<std::vector<double>> phis(static_cast<std::size_t>(npolar)),
      ws(static_cast<std::size_t>(npolar));
  for (int j = 0; j < npolar; ++j) {
    const int spow = n - 2 - j;
    for (int i = 0; i < qp; ++i) {
      const double phi = (gl_x[static_cast<std::size_t>(i)] + 1.0) * pi / 2.0;
      phis[static_cast<std::size_t>(j)].push_back(phi);
      ws[static_cast<std::size_t>(j)].push_back(gl_w[static_cast<std::size_t>(i)] * (pi / 2.0) *
                                                std::pow(std::sin(phi), spow));
    }
  }
  std::size_t N = static_cast<std::size_t>(naz);
  for (int j = 0; j < npolar; ++j) N *= static_cast<std::size_t>(qp);
  q.nodes.resize(static_cast<Eigen::Index>(N), n);
  q.weights.resize(static_cast<Eigen::Index>(N));
  std::vector<int> idx(static_cast<std::size_t>(npolar), 0);
  std::size_t row = 0;
  while (true) {
    double sines = 1.0, wpolar = 1.0;
    Vec u(n);
    for (int j = 0; j < npolar; ++j) {
      const double phi = phis[static_cast<std::size_t>(j)][static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
      u(j) = sines * std::cos(phi);
      sines *= std::sin(phi);
      wpolar *= ws[static_cast<std::size_t>(j)][static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
    }
    for (int a = 0; a < naz; ++a) {
      const double psi = (double(a) + 0.5) * 2.0 * pi / double(naz);
      u(n - 2) = sines * std::cos(psi);
      u(n - 1) = sines * std::sin(psi);
      q.nodes.row(static_cast<Eigen::Index>(row)) = u.transpose();
      q.weights(static_cast<Eigen::Index>(row)) = wpolar * 2.0 * pi / double(naz);
      ++row;
    }
    int carry = npolar - 1;
    while (carry >= 0) {
      if (++idx[static_cast<std::size_t>(carry)] < qp) break;
      idx[static_cast<std::size_t>(carry)] = 0;
      --carry;
    }
    if (carry < 0) break;
  }
  return q;
}

// ---------------------------------------------------------------------------
// Regions

SphereRegion SphereRegion::full() { return {}; }

SphereRegion SphereRegion::cap(Vec center, double angle) {
  check_unit(center);
  if (!(angle >= 0.0)) fail(ErrorCode::invalid_argument, "cap: angle must be nonnegative");
  SphereRegion r;
  r.kind_ = Kind::cap;
  r.center_ = std::move(center);
  r.cos_angle_ = std::cos(angle);
  return r;
}

SphereRegion SphereRegion::sector(double theta0, double theta1) {
  SphereRegion r;
  r.kind_ = Kind::sector;
  r.theta0_ = theta0;
  r.theta1_ = theta1;
  return r;
}

SphereRegion SphereRegion::spherical_polygon(std::vector<Vec> vertices) {
  if (vertices.size() < 3)
    fail(ErrorCode::invalid_argument, "spherical_polygon: need at least 3 vertices");
  SphereRegion r;
  r.kind_ = Kind::polygon;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Eigen::Vector3d a = vertices[i];
    const Eigen::Vector3d b = vertices[(i + 1) % vertices.size()];
    Eigen::Vector3d m = a.cross(b);
    const double norm = m.norm();
    if (norm < 1e-14) fail(ErrorCode::invalid_argument, "spherical_polygon: degenerate edge");
    m /= norm;
    Vec mv(3);
    mv << m(0), m(1), m(2);
    r.inward_normals_.push_back(std::move(mv));
  }
  return r;
}

SphereRegion SphereRegion::predicate(std::function<bool(const Vec&)> test) {
  SphereRegion r;
  r.kind_ = Kind::predicate;
  r.test_ = std::move(test);
  return r;
}

SphereRegion SphereRegion::complement() const {
  SphereRegion r = *this;
  r.complemented_ = !r.complemented_;
  return r;
}

bool SphereRegion::contains(const Vec& u) const {
  bool inside = true;
  switch (kind_) {
    case Kind::full: inside = true; break;
    case Kind::cap: inside = u.dot(center_) >= cos_angle_; break;
    case Kind::sector: {
      const double tau = 2.0 * std::numbers::pi;
      double th = std::atan2(u(1), u(0));
      while (th < theta0_) th += tau;
      while (th >= theta0_ + tau) th -= tau;
      inside = th <= theta1_;
      break;
    }
    case Kind::polygon:
      for (const auto& m : inward_normals_)
        if (u.dot(m) < 0.0) { inside = false; break; }
      break;
    case Kind::predicate: inside = test_(u); break;
  }
  return complemented_ ? !inside : inside;
}

SpatialRegion SpatialRegion::halfspace(Vec normal, double offset) {
  SpatialRegion r;
  r.kind = Kind::halfspace;
  r.a = std::move(normal);
  r.b = offset;
  return r;
}

SpatialRegion SpatialRegion::ball(Vec center, double radius) {
  SpatialRegion r;
  r.kind = Kind::ball;
  r.center = std::move(center);
  r.r = radius;
  return r;
}

bool SpatialRegion::contains(const Vec& x) const {
  switch (kind) {
    case Kind::all: return true;
    case Kind::halfspace: return x.dot(a) >= b;
    case Kind::ball: return (x - center).norm() <= r;
  }
  return true;
}

SphereRegion boundary_region_pullback(const SmoothBody& body, const SpatialRegion& region) {
  if (region.kind == SpatialRegion::Kind::all) return SphereRegion::full();
  return SphereRegion::predicate(
      [body, region](const Vec& u) { return region.contains(body.boundary_point(u)); });
}

// ---------------------------------------------------------------------------
// Deterministic reduction

namespace {
std::atomic<int> g_thread_cap{0};
}

void set_thread_cap(int cap) { g_thread_cap.store(cap < 0 ? 0 : cap); }

int effective_threads() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  const int cap = g_thread_cap.load();
  return (cap > 0) ? std::min(cap, hw) : hw;
}

void parallel_chunks(std::size_t count,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  const std::size_t nchunks = (count + kChunk - 1) / kChunk;
  const int threads = std::min<int>(effective_threads(), static_cast<int>(nchunks));
  if (threads <= 1) {
    for (std::size_t c = 0; c < nchunks; ++c)
      fn(c, c * kChunk, std::min(count, (c + 1) * kChunk));
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mu;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      while (true) {
        const std::size_t c = next.fetch_add(1);
        if (c * kChunk >= count) return;
        try {
          fn(c, c * kChunk, std::min(count, (c + 1) * kChunk));
        } catch (...) {
          std::scoped_lock lock(error_mu);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

double integrate(const SphereQuadrature& q, const std::function<double(std::size_t)>& g,
                 const SphereRegion* region) {
  const std::size_t N = q.size();
  const std::size_t nchunks = (N + kChunk - 1) / kChunk;
  std::vector<double> partial(nchunks, 0.0);
  std::vector<std::size_t> bad(nchunks, SIZE_MAX);
  parallel_chunks(N, [&](std::size_t c, std::size_t begin, std::size_t end) {
    CompensatedSum acc;
    std::size_t first_bad = SIZE_MAX;
    Vec u(q.n);
    for (std::size_t i = begin; i < end; ++i) {
      if (region) {
        u = q.node(i);
        if (!region->contains(u)) continue;
      }
      const double v = g(i);
      if (!std::isfinite(v)) {
        if (first_bad == SIZE_MAX) first_bad = i;
        continue;
      }
      acc.add(q.weights(static_cast<Eigen::Index>(i)) * v);
    }
    partial[c] = acc.get();
    bad[c] = first_bad;
  });
  for (std::size_t c = 0; c < nchunks; ++c)
    if (bad[c] != SIZE_MAX) {
      std::ostringstream os;
      os << "non-finite integrand at node " << bad[c] << " u = [";
      for (int d = 0; d < q.n; ++d) os << (d ? ", " : "") << q.nodes(static_cast<Eigen::Index>(bad[c]), d);
      os << "]";
      fail(ErrorCode::nonfinite_integrand, os.str());
    }
  CompensatedSum total;
  for (double v : partial) total.add(v);
  return total.get();
}

double integrate(const SphereQuadrature& q, const std::function<double(const Vec&)>& g,
                 const SphereRegion* region) {
  return integrate(
      q, std::function<double(std::size_t)>([&](std::size_t i) { return g(q.node(i)); }), region);
}

} // namespace lps
