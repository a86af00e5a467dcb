#pragma once

#include "orbigeo/isometry.hpp"
#include "orbigeo/space.hpp"

#include <vector>

// Piecewise-geodesic discrete curves and closed curve/closure-element pairs.
// A pair (alpha, w) is closed when alpha(end) = w(alpha(start)); its energy
// is sum_i dist(x_{i-1}, x_i)^2 / (2 dt_i).

namespace orbigeo {

struct Partition {
  std::vector<double> values; // strictly increasing, at least two entries

  int segments() const { return static_cast<int>(values.size()) - 1; }
  double start() const { return values.front(); }
  double end() const { return values.back(); }
  // largest segment width
  double mesh() const;
};

Partition uniform_partition(double a, double b, int segments);

void require_partition(const Partition& p);

struct DiscreteCurve {
  SpaceId space;
  Partition partition;
  std::vector<Point> nodes; // one per partition value
};

void require_curve(const DiscreteCurve& c);

// Dirichlet energy of the piecewise-geodesic interpolation.
double energy(const DiscreteCurve& c);

// Total length (sum of segment distances).
double curve_length(const DiscreteCurve& c);

// Evaluates the piecewise-geodesic interpolation; s must lie within the
// partition range (1e-12 slack).  At a partition value the stored node is
// returned exactly.
Point eval(const DiscreteCurve& c, double s);

struct ClosedPair {
  DiscreteCurve curve;
  Isometry closure; // w with curve.end == w(curve.start)
};

// dist(w(alpha(start)), alpha(end)); a valid pair keeps this <= 1e-9.
double closure_residual(const ClosedPair& pair);

// Applies k to every node and conjugates the closure to k w k^{-1};
// energy, length and closure residual are preserved.
ClosedPair transform(const ClosedPair& pair, const Isometry& k);

// Largest node-to-node distance between two curves over a common partition.
double max_node_displacement(const DiscreteCurve& a, const DiscreteCurve& b);

struct ClosureReport {
  bool pass = true;
  double residual = 0.0;       // closure defect
  double mesh = 0.0;           // largest partition step
  double mesh_bound = 0.0;     // rho0^2 / energy_bound
  double max_segment = 0.0;    // largest segment length
  int first_bad_segment = -1;  // first segment at/beyond rho0, -1 if none
  std::string detail;          // empty when pass
};

// Structural check of a closed pair against the shortening preconditions:
// closure residual <= 1e-9, mesh < rho0^2/energy_bound, every segment
// shorter than rho0.
ClosureReport validate_closure(const ClosedPair& pair, double rho0,
                               double energy_bound);

} // namespace orbigeo
