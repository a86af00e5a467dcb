// Test-only oracles, all computed independently of the library's own
// minimizers so disagreements point at real bugs rather than shared ones.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "orbigeo/curve.hpp"
#include "orbigeo/isometry.hpp"
#include "orbigeo/space.hpp"

namespace orbigeo::testing {

// Minimum of p -> dist(p, w p) over a Euclidean box by exhaustive grid
// search followed by repeated local grid refinement around the best cell.
// Deliberately brute force: no gradients, no library minimizer.
struct GridMin {
  double value = std::numeric_limits<double>::infinity();
  Eigen::VectorXd argmin;
};

inline GridMin grid_min_displacement(const Isometry& w, double half_width,
                                     int points_per_axis = 13,
                                     int refinements = 6) {
  const int n = w.space.ambient_dim();
  Eigen::VectorXd center = Eigen::VectorXd::Zero(n);
  double h = half_width;
  GridMin best;
  for (int round = 0; round <= refinements; ++round) {
    Eigen::VectorXi idx = Eigen::VectorXi::Zero(n);
    bool done = false;
    while (!done) {
      Eigen::VectorXd p = center;
      for (int i = 0; i < n; ++i)
        p[i] += -h + 2.0 * h * idx[i] / (points_per_axis - 1);
      Point pt{w.space, p};
      double d = dist(pt, apply(w, pt));
      if (d < best.value) {
        best.value = d;
        best.argmin = p;
      }
      int i = 0;
      for (; i < n; ++i) {
        if (++idx[i] < points_per_axis) break;
        idx[i] = 0;
      }
      done = (i == n);
    }
    center = best.argmin;
    h = 2.0 * h / (points_per_axis - 1); // one old cell around the best point
  }
  return best;
}

// Shortest nonzero projected lattice vector |P z|, z in Z^n, by recursive
// enumeration of all coefficient vectors with |z_i| <= radius.  Projections
// shorter than drop_below are treated as zero (leafwise classes).
inline double brute_force_shortest_projected(const Eigen::MatrixXd& P,
                                             int radius,
                                             double drop_below = 1e-12) {
  const int n = static_cast<int>(P.cols());
  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXi z = Eigen::VectorXi::Zero(n);
  std::function<void(int)> walk = [&](int i) {
    if (i == n) {
      double len = (P * z.cast<double>()).norm();
      if (len > drop_below && len < best) best = len;
      return;
    }
    for (int v = -radius; v <= radius; ++v) {
      z[i] = v;
      walk(i + 1);
    }
  };
  walk(0);
  return best;
}

// Orthonormal basis of the tangent space at p (Minkowski-orthonormal on the
// hyperboloid), built by Gram-Schmidt over the ambient coordinate axes.
inline std::vector<Eigen::VectorXd> tangent_basis(const Point& p) {
  const int n = p.space.ambient_dim();
  std::vector<Eigen::VectorXd> basis;
  auto inner = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (p.space.kind == SpaceKind::Hyperbolic2) return minkowski_dot(a, b);
    return a.dot(b);
  };
  auto project_out = [&](Eigen::VectorXd v) {
    if (p.space.kind == SpaceKind::Sphere)
      v -= p.coords.dot(v) * p.coords;
    else if (p.space.kind == SpaceKind::Hyperbolic2)
      v += minkowski_dot(p.coords, v) * p.coords; // <p,p>_M = -1
    for (const auto& b : basis) v -= inner(b, v) * b;
    return v;
  };
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd v = project_out(Eigen::VectorXd::Unit(n, i));
    double len2 = inner(v, v);
    if (len2 > 1e-8) basis.push_back(v / std::sqrt(len2));
  }
  return basis;
}

// Max |dE/ds| over all nodes and tangent directions of a closed pair, by
// central finite differences of the discrete energy.  Node k is not a free
// variable: it tracks w(node 0).  Near a discrete geodesic this should
// vanish up to O(h^2) truncation error.
inline double fd_energy_gradient_norm(const ClosedPair& pair,
                                      double h = 1e-5) {
  const auto& curve = pair.curve;
  const int k = static_cast<int>(curve.partition.segments());
  double worst = 0.0;
  auto energy_with = [&](int node, const Eigen::VectorXd& coords) {
    DiscreteCurve c = curve;
    c.nodes[node].coords = coords;
    if (node == 0)
      c.nodes[k] = apply(pair.closure, c.nodes[0]);
    return energy(c);
  };
  for (int j = 0; j < k; ++j) {
    for (const Eigen::VectorXd& dir : tangent_basis(curve.nodes[j])) {
      TangentVector step{curve.nodes[j], h * dir};
      TangentVector back{curve.nodes[j], -h * dir};
      double ep = energy_with(j, exp_map(step).coords);
      double em = energy_with(j, exp_map(back).coords);
      worst = std::max(worst, std::abs(ep - em) / (2.0 * h));
    }
  }
  return worst;
}

} // namespace orbigeo::testing
