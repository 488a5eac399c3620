#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"

namespace lps {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Throws unless |u| = 1 within 1e-14 (relative).
void check_unit(const Vec& u);

/// Deterministic orthonormal basis of the tangent space u^perp, as the
/// trailing n-1 columns of the Householder reflection exchanging u and
/// +-e_1.
Mat tangent_basis(const Vec& u);

/// Elementary symmetric polynomials e_0..e_r of the given values.
std::vector<double> elementary_symmetric(const Vec& values);

// A C^2_+ convex body presented through its support function and principal
// radii of curvature on the sphere. Parallel offsets fold into the body, so
// a parallel body is again a SmoothBody with support h + t and radii r + t.
class SmoothBody {
public:
  enum class Kind { ball, ellipsoid, generic };

  static SmoothBody make_ball(int n, double radius);
  static SmoothBody make_ellipsoid(Vec semi_axes);
  static SmoothBody make_generic(int n, std::function<double(const Vec&)> support,
                                 double fd_step = 1e-5);

  int dim() const { return n_; }
  Kind kind() const { return kind_; }
  double offset() const { return offset_; }
  double fd_step() const { return fd_step_; }

  double support(const Vec& u) const;

  /// Eigenvalues of the reverse Weingarten map at u, ascending, all > 0.
  Vec principal_radii(const Vec& u) const;

  /// Normalized elementary symmetric function s_j of the principal radii.
  double sym_radii(const Vec& u, int j) const;

  /// H_j evaluated at the boundary point with normal u: s_{n-1-j}/s_{n-1}.
  double h_curvature(const Vec& u, int j) const;

  /// Curvature function f_K(u) = s_{n-1}(u) = product of principal radii.
  double curvature_function(const Vec& u) const;

  /// min of the support function over the sphere. Closed form for balls and
  /// ellipsoids; grid scan with a conservative downward Lipschitz step for
  /// generic bodies.
  double beta() const;

  /// (lambda, Lambda): conservative inradius/outradius bounds about the
  /// origin, bracketing beta.
  std::pair<double, double> radius_bounds() const;

  /// Outer parallel body K + tB: support h + t, radii r_i + t.
  SmoothBody parallel(double t) const;

  /// Radial function of the polar body: 1/h_K(u).
  double polar_radial(const Vec& u) const;

  /// Reverse Gauss map: the boundary point with outer normal u, computed as
  /// the gradient of the 1-homogeneous support extension.
  Vec boundary_point(const Vec& u) const;

private:
  SmoothBody() = default;

  double base_support(const Vec& u) const;
  Vec base_radii(const Vec& u) const;
  double extension(const Vec& x) const; // 1-homogeneous support extension (generic)

  struct GenericData;

  int n_ = 0;
  Kind kind_ = Kind::ball;
  double offset_ = 0.0;
  double radius_ = 0.0; // ball
  Vec axes_;            // ellipsoid
  std::shared_ptr<GenericData> generic_;
  double fd_step_ = 1e-5;
};

// Convex polytope in dimension 2 or 3, given by its vertices with the
// origin in the interior. The hull structure (facets, edges, per-vertex
// normal cones) is computed on construction.
class Polytope {
public:
  struct Facet {
    Vec normal;  // outward unit normal
    double offset; // <v, normal> for member vertices; > 0
    std::vector<std::size_t> members;
    double area = 0.0; // n=3: facet area; n=2: edge length
  };

  struct Edge { // n=3 only
    std::size_t a, b;
    double length;
    double exterior_angle; // angle between the two incident facet normals
  };

  Polytope(int n, std::vector<Vec> vertices);

  int dim() const { return n_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<Edge>& edges() const { return edges_; }

  double support(const Vec& u) const;
  double beta() const { return beta_; }
  std::pair<double, double> radius_bounds() const;

  bool vertex_on_hull(std::size_t vi) const { return on_hull_[vi]; }
  bool in_normal_cone(std::size_t vi, const Vec& u) const;

  /// n=2: the CCW angular interval [theta0, theta1] of Norm(v) on S^1.
  std::pair<double, double> normal_arc(std::size_t vi) const;

  /// n=3: the incident facet normals of v in CCW order; these are the
  /// vertices of the spherical polygon Norm(v) on S^2.
  const std::vector<Vec>& cone_polygon(std::size_t vi) const;

  /// Area of Norm(v) on the sphere (angle excess for n=3, arc length for n=2).
  double cone_area(std::size_t vi) const;

  double volume() const { return volume_; }
  double surface_area() const { return surface_area_; } // n=2: perimeter
  double perimeter() const { return surface_area_; }
  double edge_angle_term() const { return edge_term_; } // t^2 Steiner coefficient, n=3

private:
  void build2d();
  void build3d();

  int n_;
  std::vector<Vec> vertices_;
  std::vector<Facet> facets_;
  std::vector<Edge> edges_;
  std::vector<bool> on_hull_;
  std::vector<std::pair<double, double>> arcs_;      // n=2, per vertex
  std::vector<std::vector<Vec>> cone_polys_;         // n=3, per vertex
  double beta_ = 0.0;
  double volume_ = 0.0;
  double surface_area_ = 0.0;
  double edge_term_ = 0.0;
};

using Body = std::variant<SmoothBody, Polytope>;

/// Parses {"kind":"ball","radius":R} | {"kind":"ellipsoid","axes":[..]} |
/// {"kind":"polytope","vertices":[[..],..]}.
Body body_from_json(const std::string& text);

int body_dim(const Body& b);

} // namespace lps
