#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "bodies.hpp"
#include "errors.hpp"

namespace lps {

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int q, std::vector<double>& nodes, std::vector<double>& weights);

// Deterministic quadrature over S^{n-1}: uniform midpoint rule on the angle
// for n = 2, tensor Gauss-Legendre in the polar angles times uniform azimuth
// with sin-power Jacobian weights for 3 <= n <= 5. Node count doubles with
// each level.
struct SphereQuadrature {
  int n = 0;
  int level = 0;
  Mat nodes;            // N x n
  Eigen::VectorXd weights; // all positive
  std::size_t size() const { return static_cast<std::size_t>(weights.size()); }
  Vec node(std::size_t i) const { return nodes.row(static_cast<Eigen::Index>(i)).transpose(); }
};

SphereQuadrature build_quadrature(int n, int level);

double sphere_surface_area(int n); // n * omega_n
double unit_ball_volume(int n);    // omega_n

// Borel subsets of the sphere used by the local measures: node-wise
// membership, no boundary-straddling correction.
class SphereRegion {
public:
  static SphereRegion full();
  static SphereRegion cap(Vec center, double angle);
  static SphereRegion sector(double theta0, double theta1); // n = 2
  /// Convex spherical polygon from its CCW-ordered unit vertices (n = 3).
  static SphereRegion spherical_polygon(std::vector<Vec> vertices);
  static SphereRegion predicate(std::function<bool(const Vec&)> test);

  SphereRegion complement() const;
  bool contains(const Vec& u) const;

private:
  enum class Kind { full, cap, sector, polygon, predicate };
  SphereRegion() = default;

  Kind kind_ = Kind::full;
  bool complemented_ = false;
  Vec center_;
  double cos_angle_ = -1.0;
  double theta0_ = 0.0, theta1_ = 0.0;
  std::vector<Vec> inward_normals_;
  std::function<bool(const Vec&)> test_;
};

// Spatial (ambient-space) regions whose boundary pullback defines sphere
// regions: half-spaces <x,a> >= b and balls |x - c| <= r.
struct SpatialRegion {
  enum class Kind { all, halfspace, ball } kind = Kind::all;
  Vec a;
  double b = 0.0;
  Vec center;
  double r = 0.0;

  static SpatialRegion all_space() { return {}; }
  static SpatialRegion halfspace(Vec normal, double offset);
  static SpatialRegion ball(Vec center, double radius);
  bool contains(const Vec& x) const;
};

/// Sphere region {u : reverse-Gauss image of u lies in the spatial region}.
SphereRegion boundary_region_pullback(const SmoothBody& body, const SpatialRegion& region);

// Neumaier compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double get() const { return sum + comp; }
};

/// Caps the number of worker threads used by node evaluation (0 = hardware
/// default). Results are independent of the cap.
void set_thread_cap(int cap);
int effective_threads();

/// Runs fn(chunk_index, begin, end) over fixed-size index chunks, possibly
/// in parallel. Chunk boundaries do not depend on the thread count.
void parallel_chunks(std::size_t count, const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

constexpr std::size_t kChunk = 4096;

/// Sum of w_i * g(i) over the nodes inside the region (all nodes when region
/// is null), compensated and accumulated in fixed chunk order so the result
/// is bit-identical for any thread count. Throws on non-finite values,
/// naming the first offending node.
double integrate(const SphereQuadrature& q, const std::function<double(std::size_t)>& g,
                 const SphereRegion* region = nullptr);

/// Convenience overload evaluating a pointwise function of the direction.
double integrate(const SphereQuadrature& q, const std::function<double(const Vec&)>& g,
                 const SphereRegion* region = nullptr);

} // namespace lps
