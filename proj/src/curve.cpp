#include "orbigeo/curve.hpp"

#include <algorithm>
#include <cmath>

namespace orbigeo {

double Partition::mesh() const {
  double m = 0.0;
  for (std::size_t i = 1; i < values.size(); ++i)
    m = std::max(m, values[i] - values[i - 1]);
  return m;
}

Partition uniform_partition(double a, double b, int segments) {
  if (segments < 1 || !(a < b))
    throw contract_error("uniform_partition: need a < b and >= 1 segment");
  Partition p;
  p.values.resize(static_cast<std::size_t>(segments) + 1);
  for (int i = 0; i <= segments; ++i)
    p.values[static_cast<std::size_t>(i)] =
        a + (b - a) * (static_cast<double>(i) / segments);
  p.values.front() = a;
  p.values.back() = b;
  return p;
}

void require_partition(const Partition& p) {
  if (p.values.size() < 2)
    throw contract_error("partition needs at least two values");
  for (std::size_t i = 1; i < p.values.size(); ++i)
    if (!(p.values[i] > p.values[i - 1]))
      throw contract_error("partition values must be strictly increasing");
}

void require_curve(const DiscreteCurve& c) {
  require_partition(c.partition);
  if (c.nodes.size() != c.partition.values.size())
    throw contract_error("curve has " + std::to_string(c.nodes.size()) +
                         " nodes for " + std::to_string(c.partition.values.size()) +
                         " partition values");
  for (const Point& p : c.nodes) {
    if (!(p.space == c.space))
      throw contract_error("curve node lives on a different space");
    require_point(p);
  }
}

double energy(const DiscreteCurve& c) {
  double e = 0.0;
  for (std::size_t i = 1; i < c.nodes.size(); ++i) {
    double d = dist(c.nodes[i - 1], c.nodes[i]);
    double dt = c.partition.values[i] - c.partition.values[i - 1];
    e += d * d / (2.0 * dt);
  }
  return e;
}

double curve_length(const DiscreteCurve& c) {
  double l = 0.0;
  for (std::size_t i = 1; i < c.nodes.size(); ++i)
    l += dist(c.nodes[i - 1], c.nodes[i]);
  return l;
}

Point eval(const DiscreteCurve& c, double s) {
  const auto& t = c.partition.values;
  if (s < t.front() - 1e-12 || s > t.back() + 1e-12)
    throw contract_error("eval: parameter " + std::to_string(s) +
                         " outside the partition range");
  // exact node at partition values
  auto it = std::lower_bound(t.begin(), t.end(), s);
  if (it != t.end() && *it == s)
    return c.nodes[static_cast<std::size_t>(it - t.begin())];
  std::size_t hi = static_cast<std::size_t>(
      std::upper_bound(t.begin(), t.end(), s) - t.begin());
  if (hi == 0) hi = 1;
  if (hi >= t.size()) hi = t.size() - 1;
  double u = (s - t[hi - 1]) / (t[hi] - t[hi - 1]);
  u = std::min(1.0, std::max(0.0, u));
  return geodesic_point(c.nodes[hi - 1], c.nodes[hi], u);
}

double closure_residual(const ClosedPair& pair) {
  return dist(apply(pair.closure, pair.curve.nodes.front()),
              pair.curve.nodes.back());
}

ClosedPair transform(const ClosedPair& pair, const Isometry& k) {
  ClosedPair out = pair;
  for (Point& p : out.curve.nodes) p = apply(k, p);
  out.closure = compose(compose(k, pair.closure), inverse(k));
  return out;
}

double max_node_displacement(const DiscreteCurve& a, const DiscreteCurve& b) {
  if (a.nodes.size() != b.nodes.size())
    throw contract_error("max_node_displacement: node counts differ");
  double m = 0.0;
  for (std::size_t i = 0; i < a.nodes.size(); ++i)
    m = std::max(m, dist(a.nodes[i], b.nodes[i]));
  return m;
}

ClosureReport validate_closure(const ClosedPair& pair, double rho0,
                               double energy_bound) {
  require_curve(pair.curve);
  require_isometry(pair.closure);
  ClosureReport rep;
  rep.residual = closure_residual(pair);
  rep.mesh = pair.curve.partition.mesh();
  rep.mesh_bound = energy_bound > 0.0
                       ? rho0 * rho0 / energy_bound
                       : std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < pair.curve.nodes.size(); ++i) {
    double d = dist(pair.curve.nodes[i - 1], pair.curve.nodes[i]);
    rep.max_segment = std::max(rep.max_segment, d);
    if (d >= rho0 && rep.first_bad_segment < 0)
      rep.first_bad_segment = static_cast<int>(i) - 1;
  }
  if (rep.residual > 1e-9) {
    rep.pass = false;
    rep.detail = "closure residual " + std::to_string(rep.residual) +
                 " exceeds 1e-9";
  } else if (!(rep.mesh < rep.mesh_bound)) {
    rep.pass = false;
    rep.detail = "partition mesh " + std::to_string(rep.mesh) +
                 " violates mesh < rho0^2/energy_bound = " +
                 std::to_string(rep.mesh_bound);
  } else if (rep.first_bad_segment >= 0) {
    rep.pass = false;
    rep.detail = "segment " + std::to_string(rep.first_bad_segment) +
                 " has length >= rho0";
  }
  return rep;
}

} // namespace orbigeo
