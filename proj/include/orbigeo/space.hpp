#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

// Model spaces with closed-form metric kernels: flat R^n, the round unit
// sphere S^n (ambient R^{n+1}), and the hyperbolic plane H^2 in the
// hyperboloid model (ambient R^3 with the Minkowski form diag(-1,1,1)).

namespace orbigeo {

// Thrown when a caller violates a documented precondition (mismatched
// spaces, off-manifold points, invalid partitions, ...).
class contract_error : public std::runtime_error {
public:
  explicit contract_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a minimizing geodesic is not unique (e.g. an antipodal pair
// on the sphere, or a shortening segment at/beyond the injectivity bound).
class nonunique_geodesic_error : public std::runtime_error {
public:
  explicit nonunique_geodesic_error(const std::string& what, int segment = -1)
      : std::runtime_error(what), segment_index(segment) {}
  int segment_index; // offending segment, -1 when not segment-related
};

enum class SpaceKind { Euclidean, Sphere, Hyperbolic2 };

struct SpaceId {
  SpaceKind kind = SpaceKind::Euclidean;
  int dim = 2; // intrinsic dimension

  static SpaceId euclidean(int n) { return {SpaceKind::Euclidean, n}; }
  static SpaceId sphere(int n) { return {SpaceKind::Sphere, n}; }
  static SpaceId hyperbolic2() { return {SpaceKind::Hyperbolic2, 2}; }

  // dimension of the ambient coordinate vector
  int ambient_dim() const {
    switch (kind) {
    case SpaceKind::Euclidean: return dim;
    case SpaceKind::Sphere: return dim + 1;
    case SpaceKind::Hyperbolic2: return 3;
    }
    return dim;
  }

  bool operator==(const SpaceId&) const = default;
  std::string str() const;
};

// A point, stored in ambient coordinates.  Sphere points are unit vectors;
// hyperbolic points satisfy <x,x>_M = -1 with x0 > 0.
struct Point {
  SpaceId space;
  Eigen::VectorXd coords;
};

// A tangent vector at `base` in ambient coordinates (orthogonal to the
// base point under the relevant bilinear form for the curved spaces).
struct TangentVector {
  Point base;
  Eigen::VectorXd vec;
};

// Minkowski form diag(-1,1,1) applied to ambient 3-vectors.
double minkowski_dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// Largest radius below which minimizing geodesics between distinct points
// are unique: +inf, pi, +inf for the three kernels.
double uniqueness_radius(const SpaceId& space);

// True when `coords` satisfies the point invariant of `space` within tol.
bool on_space(const SpaceId& space, const Eigen::VectorXd& coords,
              double tol = 1e-10);

// Renormalizes ambient coordinates onto the model space (unit sphere /
// upper hyperboloid sheet); identity for Euclidean.
Point project_to_space(const SpaceId& space, Eigen::VectorXd coords);

// Checks the point invariant, throwing contract_error on failure.
void require_point(const Point& p);

// Geodesic distance.  Both points must lie on the same space.
double dist(const Point& p, const Point& q);

// Riemannian exponential: follow the geodesic from v.base with initial
// velocity v for unit time.  Output satisfies the point invariant to 1e-10.
Point exp_map(const TangentVector& v);

// Riemannian logarithm: the unique v at p with exp_map(v) = q and
// |v| = dist(p,q).  Throws nonunique_geodesic_error when dist(p,q) reaches
// uniqueness_radius (e.g. antipodal pairs on the sphere).
TangentVector log_map(const Point& p, const Point& q);

// Constant-speed minimizing geodesic from p to q evaluated at s in [0,1].
Point geodesic_point(const Point& p, const Point& q, double s);

// Metric norm of a tangent vector (the Minkowski form restricted to a
// tangent space of H^2 is positive definite).
double tangent_norm(const TangentVector& v);

// Metric inner product of two tangent vectors at a common base point.
double tangent_dot(const TangentVector& a, const TangentVector& b);

// Angle in [0, pi] between two tangent vectors at a common base point;
// vectors shorter than `degenerate_tol` contribute angle 0.
double tangent_angle(const TangentVector& a, const TangentVector& b,
                     double degenerate_tol = 1e-14);

} // namespace orbigeo
