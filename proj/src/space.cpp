#include "orbigeo/space.hpp"

#include <cmath>

namespace orbigeo {

namespace {

void require_same_space(const Point& p, const Point& q) {
  if (!(p.space == q.space))
    throw contract_error("points live on different spaces: " + p.space.str() +
                         " vs " + q.space.str());
}

void require_ambient(const SpaceId& s, const Eigen::VectorXd& v,
                     const char* what) {
  if (v.size() != s.ambient_dim())
    throw contract_error(std::string(what) + ": expected ambient dimension " +
                         std::to_string(s.ambient_dim()) + ", got " +
                         std::to_string(static_cast<int>(v.size())));
}

Eigen::VectorXd apply_J(const Eigen::VectorXd& v) {
  Eigen::VectorXd w = v;
  w(0) = -w(0);
  return w;
}

} // namespace

std::string SpaceId::str() const {
  switch (kind) {
  case SpaceKind::Euclidean: return "euclidean(" + std::to_string(dim) + ")";
  case SpaceKind::Sphere: return "sphere(" + std::to_string(dim) + ")";
  case SpaceKind::Hyperbolic2: return "hyperbolic2";
  }
  return "?";
}

double minkowski_dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != 3 || b.size() != 3)
    throw contract_error("minkowski_dot expects 3-vectors");
  return -a(0) * b(0) + a(1) * b(1) + a(2) * b(2);
}

double uniqueness_radius(const SpaceId& space) {
  switch (space.kind) {
  case SpaceKind::Euclidean: return std::numeric_limits<double>::infinity();
  case SpaceKind::Sphere: return M_PI;
  case SpaceKind::Hyperbolic2: return std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

bool on_space(const SpaceId& space, const Eigen::VectorXd& coords, double tol) {
  if (coords.size() != space.ambient_dim()) return false;
  switch (space.kind) {
  case SpaceKind::Euclidean:
    return coords.allFinite();
  case SpaceKind::Sphere:
    return coords.allFinite() && std::abs(coords.norm() - 1.0) <= tol;
  case SpaceKind::Hyperbolic2:
    return coords.allFinite() &&
           std::abs(minkowski_dot(coords, coords) + 1.0) <= tol &&
           coords(0) > 0.0;
  }
  return false;
}

Point project_to_space(const SpaceId& space, Eigen::VectorXd coords) {
  require_ambient(space, coords, "project_to_space");
  switch (space.kind) {
  case SpaceKind::Euclidean:
    break;
  case SpaceKind::Sphere: {
    double n = coords.norm();
    if (n <= 0.0) throw contract_error("cannot project zero vector to sphere");
    coords /= n;
    break;
  }
  case SpaceKind::Hyperbolic2: {
    double q = -minkowski_dot(coords, coords);
    if (q <= 0.0 || coords(0) <= 0.0)
      throw contract_error("cannot project non-timelike vector to hyperboloid");
    coords /= std::sqrt(q);
    break;
  }
  }
  return {space, std::move(coords)};
}

void require_point(const Point& p) {
  if (!on_space(p.space, p.coords))
    throw contract_error("point violates the invariant of " + p.space.str());
}

double dist(const Point& p, const Point& q) {
  require_same_space(p, q);
  switch (p.space.kind) {
  case SpaceKind::Euclidean:
    return (p.coords - q.coords).norm();
  case SpaceKind::Sphere: {
    // atan2 of the rejection norm against the dot product is accurate at
    // both ends of [0, pi], unlike plain acos.
    double c = p.coords.dot(q.coords);
    double s = (q.coords - c * p.coords).norm();
    return std::atan2(s, c);
  }
  case SpaceKind::Hyperbolic2: {
    // <p-q, p-q>_M = 2(cosh d - 1) = 4 sinh^2(d/2); stable for small d.
    double s2 = minkowski_dot(p.coords - q.coords, p.coords - q.coords);
    if (s2 < 0.0) s2 = 0.0;
    return 2.0 * std::asinh(0.5 * std::sqrt(s2));
  }
  }
  return 0.0;
}

Point exp_map(const TangentVector& v) {
  const Point& p = v.base;
  require_ambient(p.space, v.vec, "exp_map tangent");
  switch (p.space.kind) {
  case SpaceKind::Euclidean:
    return {p.space, p.coords + v.vec};
  case SpaceKind::Sphere: {
    double th = v.vec.norm();
    if (th < 1e-300) return p;
    Eigen::VectorXd out =
        std::cos(th) * p.coords + (std::sin(th) / th) * v.vec;
    return project_to_space(p.space, std::move(out));
  }
  case SpaceKind::Hyperbolic2: {
    double q = minkowski_dot(v.vec, v.vec);
    if (q < 0.0)
      throw contract_error("exp_map: tangent vector is not spacelike");
    double th = std::sqrt(q);
    if (th < 1e-300) return p;
    Eigen::VectorXd out =
        std::cosh(th) * p.coords + (std::sinh(th) / th) * v.vec;
    // re-project to kill the quadratic drift off the sheet
    return project_to_space(p.space, std::move(out));
  }
  }
  return p;
}

TangentVector log_map(const Point& p, const Point& q) {
  require_same_space(p, q);
  switch (p.space.kind) {
  case SpaceKind::Euclidean:
    return {p, q.coords - p.coords};
  case SpaceKind::Sphere: {
    double c = p.coords.dot(q.coords);
    c = std::min(1.0, std::max(-1.0, c));
    Eigen::VectorXd rej = q.coords - c * p.coords;
    double s = rej.norm();
    double th = std::atan2(s, c);
    if (s < 1e-14) {
      if (c > 0.0) // q == p
        return {p, Eigen::VectorXd::Zero(p.space.ambient_dim())};
      throw nonunique_geodesic_error(
          "log_map: antipodal pair on the sphere has no unique geodesic");
    }
    return {p, (th / s) * rej};
  }
  case SpaceKind::Hyperbolic2: {
    double d = dist(p, q);
    Eigen::VectorXd w = q.coords + minkowski_dot(q.coords, p.coords) * p.coords;
    double wn = std::sqrt(std::max(0.0, minkowski_dot(w, w)));
    if (wn < 1e-14)
      return {p, Eigen::VectorXd::Zero(3)};
    return {p, (d / wn) * w};
  }
  }
  return {p, Eigen::VectorXd()};
}

Point geodesic_point(const Point& p, const Point& q, double s) {
  if (s == 0.0) return p;
  if (s == 1.0) return q;
  TangentVector v = log_map(p, q);
  v.vec *= s;
  return exp_map(v);
}

double tangent_norm(const TangentVector& v) {
  switch (v.base.space.kind) {
  case SpaceKind::Hyperbolic2:
    return std::sqrt(std::max(0.0, minkowski_dot(v.vec, v.vec)));
  default:
    return v.vec.norm();
  }
}

double tangent_dot(const TangentVector& a, const TangentVector& b) {
  if (!(a.base.space == b.base.space))
    throw contract_error("tangent_dot: vectors on different spaces");
  if (a.base.space.kind == SpaceKind::Hyperbolic2)
    return minkowski_dot(a.vec, b.vec);
  return a.vec.dot(b.vec);
}

double tangent_angle(const TangentVector& a, const TangentVector& b,
                     double degenerate_tol) {
  double na = tangent_norm(a), nb = tangent_norm(b);
  if (na < degenerate_tol || nb < degenerate_tol) return 0.0;
  double c = tangent_dot(a, b) / (na * nb);
  c = std::min(1.0, std::max(-1.0, c));
  return std::acos(c);
}

} // namespace orbigeo
