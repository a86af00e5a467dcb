#include "orbigeo/shortening.hpp"

#include <cmath>
#include <deque>

namespace orbigeo {

namespace {

void require_unit_span(const DiscreteCurve& c) {
  if (std::abs(c.partition.start()) > 1e-12 ||
      std::abs(c.partition.end() - 1.0) > 1e-12)
    throw contract_error("shortening expects curves parameterized on [0,1]");
}

void check_segments(const std::vector<Point>& nodes, double rho0) {
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    double d = dist(nodes[i - 1], nodes[i]);
    if (d >= rho0)
      throw nonunique_geodesic_error(
          "segment " + std::to_string(i - 1) + " has length " +
              std::to_string(d) + " >= rho0 = " + std::to_string(rho0),
          static_cast<int>(i) - 1);
  }
}

Point midpoint(const Point& a, const Point& b) {
  return geodesic_point(a, b, 0.5);
}

} // namespace

ShorteningConfig ShorteningConfig::for_pair(const ClosedPair& pair,
                                            double rho0_cap,
                                            int segment_override) {
  require_curve(pair.curve);
  ShorteningConfig cfg;
  cfg.rho0 = std::min(0.9 * uniqueness_radius(pair.curve.space), rho0_cap);
  if (!(cfg.rho0 > 0.0))
    throw contract_error("rho0 cap must be positive");
  cfg.energy_bound = energy(pair.curve);
  int k_rule = std::max(
      8, static_cast<int>(
             std::ceil(cfg.energy_bound / (cfg.rho0 * cfg.rho0))) +
             1);
  cfg.segment_count = segment_override > 0 ? segment_override : k_rule;
  if (cfg.energy_bound > 0.0 &&
      !(1.0 / cfg.segment_count < cfg.rho0 * cfg.rho0 / cfg.energy_bound))
    throw contract_error(
        "segment count " + std::to_string(cfg.segment_count) +
        " violates the mesh condition 1/k < rho0^2/energy_bound");
  return cfg;
}

Partition ShorteningConfig::t_partition() const {
  return uniform_partition(0.0, 1.0, segment_count);
}

Partition ShorteningConfig::tau_partition() const {
  const int k = segment_count;
  Partition p;
  p.values.resize(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i <= k; ++i)
    p.values[static_cast<std::size_t>(i)] = (2.0 * i - 1.0) / (2.0 * k);
  return p;
}

ClosedPair p_hat(const ClosedPair& pair, const Partition& partition,
                 double rho0) {
  require_curve(pair.curve);
  require_partition(partition);
  if (std::abs(partition.start() - pair.curve.partition.start()) > 1e-12 ||
      std::abs(partition.end() - pair.curve.partition.end()) > 1e-12)
    throw contract_error("p_hat: partition must span the curve's interval");
  ClosedPair out;
  out.closure = pair.closure;
  out.curve.space = pair.curve.space;
  out.curve.partition = partition;
  out.curve.partition.values.front() = pair.curve.partition.start();
  out.curve.partition.values.back() = pair.curve.partition.end();
  out.curve.nodes.reserve(partition.values.size());
  for (double s : out.curve.partition.values)
    out.curve.nodes.push_back(eval(pair.curve, s));
  check_segments(out.curve.nodes, rho0);
  return out;
}

DiscreteCurve extend_back(const ClosedPair& pair, int segment_count) {
  require_unit_span(pair.curve);
  const int k = segment_count;
  if (k < 1) throw contract_error("extend_back: need at least one segment");
  const double tau0 = -1.0 / (2.0 * k);
  DiscreteCurve ext;
  ext.space = pair.curve.space;
  ext.partition.values.push_back(tau0);
  for (double s : pair.curve.partition.values)
    ext.partition.values.push_back(s);
  // the pre-image of the curve point half a step before the end
  Point tail = eval(pair.curve, 1.0 + tau0);
  ext.nodes.push_back(apply(inverse(pair.closure), tail));
  for (const Point& p : pair.curve.nodes) ext.nodes.push_back(p);
  return ext;
}

ClosedPair double_shorten(const ClosedPair& pair, const ShorteningConfig& cfg) {
  require_unit_span(pair.curve);
  const int k = cfg.segment_count;
  const Isometry& w = pair.closure;

  // pass 0: resample onto the uniform t-partition
  ClosedPair x = p_hat(pair, cfg.t_partition(), cfg.rho0);

  // pass 1: midpoints onto the interleaved tau-partition; the node at
  // tau_0 = -1/(2k) is the closure pullback of the node at tau_k
  std::vector<Point> y(static_cast<std::size_t>(k) + 1,
                       Point{x.curve.space, {}});
  for (int i = 1; i <= k; ++i)
    y[static_cast<std::size_t>(i)] = midpoint(
        x.curve.nodes[static_cast<std::size_t>(i) - 1],
        x.curve.nodes[static_cast<std::size_t>(i)]);
  y[0] = apply(inverse(w), y[static_cast<std::size_t>(k)]);
  check_segments(y, cfg.rho0);

  // pass 2: midpoints back onto the t-partition; the final node is the
  // closure pushforward of the first, so the output closes exactly
  ClosedPair out;
  out.closure = w;
  out.curve.space = x.curve.space;
  out.curve.partition = cfg.t_partition();
  out.curve.nodes.resize(static_cast<std::size_t>(k) + 1,
                         Point{x.curve.space, {}});
  for (int i = 0; i < k; ++i)
    out.curve.nodes[static_cast<std::size_t>(i)] =
        midpoint(y[static_cast<std::size_t>(i)],
                 y[static_cast<std::size_t>(i) + 1]);
  out.curve.nodes[static_cast<std::size_t>(k)] =
      apply(w, out.curve.nodes[0]);
  check_segments(out.curve.nodes, cfg.rho0);
  return out;
}

RecenterOutcome recenter(const ClosedPair& pair, const IsometryGroup& group) {
  FoldResult fr = fold(group, pair.curve.nodes.front());
  if (fr.word_length == 0) return {pair, fr};
  return {transform(pair, fr.element), fr};
}

VerifyReport verify_closed_geodesic(const ClosedPair& pair,
                                    const ShorteningTolerances& tol) {
  require_curve(pair.curve);
  const auto& nodes = pair.curve.nodes;
  const auto& t = pair.curve.partition.values;
  const std::size_t k = nodes.size() - 1;
  VerifyReport rep;

  double vmin = std::numeric_limits<double>::infinity(), vmax = 0.0;
  for (std::size_t i = 1; i <= k; ++i) {
    double v = dist(nodes[i - 1], nodes[i]) / (t[i] - t[i - 1]);
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  rep.speed_spread = vmax - vmin;

  for (std::size_t i = 1; i < k; ++i) {
    TangentVector incoming = log_map(nodes[i], nodes[i - 1]);
    incoming.vec = -incoming.vec; // direction of travel through node i
    TangentVector outgoing = log_map(nodes[i], nodes[i + 1]);
    double ang = tangent_angle(incoming, outgoing);
    if (ang > rep.max_interior_angle) {
      rep.max_interior_angle = ang;
      rep.worst_node = static_cast<int>(i);
    }
  }

  // tangent across the closure junction: dw(alpha'(0)) against alpha'(1)
  {
    TangentVector start_dir = log_map(nodes[0], nodes[1]);
    TangentVector pushed = dapply(pair.closure, start_dir);
    TangentVector end_dir = log_map(nodes[k], nodes[k - 1]);
    end_dir.vec = -end_dir.vec;
    pushed.base = end_dir.base; // bases agree within the closure residual
    rep.closure_angle = tangent_angle(pushed, end_dir);
  }

  rep.pass = rep.max_interior_angle <= tol.geodesic_angle &&
             rep.closure_angle <= tol.geodesic_angle &&
             rep.speed_spread <= tol.speed_spread;
  if (!rep.pass) {
    rep.detail = "max interior angle " + std::to_string(rep.max_interior_angle) +
                 ", closure angle " + std::to_string(rep.closure_angle) +
                 ", speed spread " + std::to_string(rep.speed_spread);
  }
  return rep;
}

std::string status_name(RunStatus s) {
  switch (s) {
  case RunStatus::NontrivialGeodesic: return "nontrivial_geodesic";
  case RunStatus::TrivialPoint: return "trivial_point";
  case RunStatus::MaxIterReached: return "max_iter_reached";
  }
  return "?";
}

GeodesicResult iterate_shortening(const ClosedPair& initial,
                                  const IsometryGroup& group,
                                  const ShorteningConfig& cfg) {
  require_unit_span(initial.curve);
  ClosureReport pre = validate_closure(initial, cfg.rho0, cfg.energy_bound);
  if (!pre.pass)
    throw contract_error("iterate_shortening precondition: " + pre.detail);
  if (energy(initial.curve) > cfg.energy_bound * (1.0 + 1e-12) + 1e-12)
    throw contract_error("iterate_shortening: initial energy exceeds the bound");

  const bool can_recenter =
      group.fold_strategy != FoldStrategy::None && cfg.recenter_every > 0;

  GeodesicResult res;
  res.conjugator = identity_isometry(group.space);

  ClosedPair cur = p_hat(initial, cfg.t_partition(), cfg.rho0);
  res.trace.push_back({0, energy(cur.curve), curve_length(cur.curve), 0.0, 0});

  int quiet_run = 0; // consecutive iterations below both tolerances
  for (long m = 1; m <= cfg.max_iter; ++m) {
    ClosedPair prev = std::move(cur);
    double e_prev = res.trace.back().energy;

    cur = double_shorten(prev, cfg);
    double disp = max_node_displacement(prev.curve, cur.curve);

    int fold_len = 0;
    if (can_recenter && (m % cfg.recenter_every == 0)) {
      RecenterOutcome rc = recenter(cur, group);
      fold_len = rc.fold.word_length;
      if (fold_len > 0) {
        cur = std::move(rc.pair);
        res.conjugator = compose(rc.fold.element, res.conjugator);
        disp = std::numeric_limits<double>::infinity();
      }
    }

    double e_cur = energy(cur.curve);
    res.trace.push_back(
        {m, e_cur, curve_length(cur.curve), disp, fold_len});
    res.iterations = m;

    double decrement = e_prev - e_cur;
    if (disp < cfg.tol.node_disp && decrement < cfg.tol.energy_decrement)
      ++quiet_run;
    else
      quiet_run = 0;

    if (quiet_run >= 5) {
      double len = curve_length(cur.curve);
      if (len <= cfg.tol.trivial_length) {
        res.status = RunStatus::TrivialPoint;
        res.certified = true;
        break;
      }
      VerifyReport vr = verify_closed_geodesic(cur, cfg.tol);
      res.verification = vr;
      if (vr.pass) {
        res.status = RunStatus::NontrivialGeodesic;
        res.certified = true;
        break;
      }
      quiet_run = 0; // plateau without straightness: keep shortening
    }
  }

  res.pair = std::move(cur);
  res.energy = energy(res.pair.curve);
  res.length = curve_length(res.pair.curve);
  return res;
}

ClosedPair make_auto_pair(const Isometry& w0, const Point& base,
                          int segment_count) {
  require_point(base);
  require_isometry(w0);
  if (segment_count < 1)
    throw contract_error("make_auto_pair: need at least one segment");
  Point target = apply(w0, base);
  double d = dist(base, target);
  ClosedPair pair;
  pair.closure = w0;
  pair.curve.space = base.space;
  pair.curve.partition = uniform_partition(0.0, 1.0, segment_count);

  const bool antipodal = base.space.kind == SpaceKind::Sphere &&
                         d >= uniqueness_radius(base.space) - 1e-9;
  if (antipodal) {
    // pick the coordinate direction most orthogonal to base, half great
    // circle through it (deterministic tie-break on the index)
    const int m = base.space.ambient_dim();
    int j = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      double a = std::abs(base.coords(i));
      if (a < best) {
        best = a;
        j = i;
      }
    }
    Eigen::VectorXd u = Eigen::VectorXd::Zero(m);
    u(j) = 1.0;
    u -= base.coords.dot(u) * base.coords;
    u /= u.norm();
    for (double s : pair.curve.partition.values) {
      Eigen::VectorXd x =
          std::cos(M_PI * s) * base.coords + std::sin(M_PI * s) * u;
      pair.curve.nodes.push_back(project_to_space(base.space, x));
    }
  } else {
    for (double s : pair.curve.partition.values)
      pair.curve.nodes.push_back(geodesic_point(base, target, s));
  }
  pair.curve.nodes.back() = target;
  if (closure_residual(pair) > 1e-9)
    throw contract_error(
        "make_auto_pair: constructed curve does not close (residual " +
        std::to_string(closure_residual(pair)) + ")");
  return pair;
}

GeodesicResult axis_via_displacement_min(const Isometry& w0,
                                         const IsometryGroup& group,
                                         int segment_count,
                                         std::uint64_t seed) {
  if (!(w0.space == group.space))
    throw contract_error("axis_via_displacement_min: space mismatch");
  FixedPointResult fp = fixed_point_test(w0, seed);
  if (fp.fixed_point)
    throw contract_error("axis_via_displacement_min expects a fixed-point-free "
                         "element (residual " + std::to_string(fp.residual) + ")");
  TranslationLength tl = translation_length(w0, LengthMode::Numeric, seed);
  if (!tl.argmin)
    throw contract_error("axis_via_displacement_min: minimization produced no "
                         "candidate point");

  GeodesicResult res;
  res.pair = make_auto_pair(w0, *tl.argmin, segment_count);
  res.conjugator = identity_isometry(group.space);
  res.energy = energy(res.pair.curve);
  res.length = curve_length(res.pair.curve);
  res.iterations = 0;
  res.verification = verify_closed_geodesic(res.pair, ShorteningTolerances{});
  res.certified = res.verification.pass && tl.certified;
  res.status = res.length > ShorteningTolerances{}.trivial_length
                   ? RunStatus::NontrivialGeodesic
                   : RunStatus::TrivialPoint;
  res.trace.push_back({0, res.energy, res.length, 0.0, 0});
  return res;
}

} // namespace orbigeo
