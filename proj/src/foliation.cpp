#include "orbigeo/foliation.hpp"

#include <cmath>

namespace orbigeo {

namespace {

// ---- torus helpers -------------------------------------------------------

void require_torus(const LinearTorusFoliation& f) {
  if (f.n < 1 || f.leaf_basis.rows() != f.n || f.leaf_basis.cols() < 1 ||
      f.leaf_basis.cols() >= f.n)
    throw contract_error("linear torus foliation needs an n x q leaf basis "
                         "with 0 < q < n");
  for (int i = 0; i < f.leaf_basis.rows(); ++i)
    for (int j = 0; j < f.leaf_basis.cols(); ++j)
      if (std::abs(f.leaf_basis(i, j) -
                   std::round(f.leaf_basis(i, j))) > 1e-12)
        throw contract_error("leaf basis entries must be integers");
}

// Orthonormal frames for the leaf space V and its complement via
// rank-revealing QR.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd>
leaf_frames(const Eigen::MatrixXd& leaf_basis) {
  const int n = static_cast<int>(leaf_basis.rows());
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(leaf_basis);
  qr.setThreshold(1e-10);
  int rank = static_cast<int>(qr.rank());
  if (rank != leaf_basis.cols())
    throw contract_error("leaf basis columns are linearly dependent");
  Eigen::MatrixXd Q = qr.householderQ();
  return {Q.leftCols(rank), Q.rightCols(n - rank)};
}

// Pairwise (Lagrange-style) reduction of a generating set of the projected
// lattice down to a short basis; verifies that every generator is an
// integer combination of the result.
Eigen::MatrixXd reduce_lattice_basis(std::vector<Eigen::VectorXd> gens,
                                     int d) {
  auto drop_zero = [&]() {
    std::vector<Eigen::VectorXd> keep;
    for (auto& v : gens)
      if (v.norm() > 1e-12) keep.push_back(v);
    gens = std::move(keep);
  };
  drop_zero();
  if (gens.empty())
    throw contract_error("projected lattice is trivial");

  for (int pass = 0; pass < 1000; ++pass) {
    bool changed = false;
    std::sort(gens.begin(), gens.end(),
              [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
                return a.norm() < b.norm();
              });
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = 0; j < gens.size(); ++j) {
        if (i == j) continue;
        double denom = gens[j].squaredNorm();
        if (denom < 1e-24) continue;
        double mu = std::round(gens[i].dot(gens[j]) / denom);
        if (mu != 0.0) {
          gens[i] -= mu * gens[j];
          changed = true;
        }
      }
    drop_zero();
    if (!changed) break;
    if (pass == 999)
      throw contract_error("lattice reduction did not terminate");
  }

  std::sort(gens.begin(), gens.end(),
            [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
              return a.norm() < b.norm();
            });
  Eigen::MatrixXd B(d, d);
  int got = 0;
  for (const auto& v : gens) {
    if (got == d) break;
    Eigen::MatrixXd trial(d, got + 1);
    if (got > 0) trial.leftCols(got) = B.leftCols(got);
    trial.col(got) = v;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(trial);
    if (svd.singularValues()(got) > 1e-10) {
      B.col(got) = v;
      ++got;
    }
  }
  if (got != d)
    throw contract_error("projected lattice does not have full rank");

  // basis verification: every generator must have integer coordinates
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> solver(B);
  for (const auto& v : gens) {
    Eigen::VectorXd c = solver.solve(v);
    for (int i = 0; i < d; ++i)
      if (std::abs(c(i) - std::round(c(i))) > 1e-9)
        throw contract_error("lattice reduction produced a sublattice basis");
  }
  return B;
}

const LinearTorusFoliation* as_torus(const FoliationModel& m) {
  return std::get_if<LinearTorusFoliation>(&m);
}

const SuspensionFoliation* as_suspension(const FoliationModel& m) {
  return std::get_if<SuspensionFoliation>(&m);
}

void require_suspension(const SuspensionFoliation& f) {
  if (f.order < 1)
    throw contract_error("suspension holonomy order must be >= 1");
  require_isometry(f.holonomy);
  if (!(f.holonomy.space == f.fiber))
    throw contract_error("suspension holonomy acts on the wrong space");
  Isometry pow = identity_isometry(f.fiber);
  for (int i = 0; i < f.order; ++i) pow = compose(f.holonomy, pow);
  if (!is_identity(pow, 1e-10))
    throw contract_error("holonomy does not have the declared order");
}

Isometry holonomy_power(const SuspensionFoliation& f, int j) {
  int jj = ((j % f.order) + f.order) % f.order;
  Isometry out = identity_isometry(f.fiber);
  for (int i = 0; i < jj; ++i) out = compose(f.holonomy, out);
  return out;
}

// distance from a projected vector to the projected lattice (for the
// leaf-recurrence certificate)
double lattice_residual(const Eigen::MatrixXd& basis,
                        const Eigen::VectorXd& u) {
  Eigen::VectorXd c = basis.colPivHouseholderQr().solve(u);
  Eigen::VectorXd r = c;
  for (int i = 0; i < r.size(); ++i) r(i) -= std::round(r(i));
  return (basis * r).norm();
}

} // namespace

TransverseModel transverse_model(const FoliationModel& model) {
  TransverseModel tm;
  if (const auto* t = as_torus(model)) {
    require_torus(*t);
    auto [L, Q] = leaf_frames(t->leaf_basis);
    const int d = static_cast<int>(Q.cols());
    std::vector<Eigen::VectorXd> gens;
    for (int i = 0; i < t->n; ++i)
      gens.push_back(Q.transpose() *
                     Eigen::VectorXd::Unit(t->n, i));
    tm.space = SpaceId::euclidean(d);
    tm.group = make_lattice_group(reduce_lattice_basis(std::move(gens), d));
    tm.leaf_frame = L;
    tm.transverse_frame = Q;
    return tm;
  }
  const auto* s = as_suspension(model);
  require_suspension(*s);
  tm.space = s->fiber;
  tm.group.space = s->fiber;
  tm.group.fold_strategy = FoldStrategy::None;
  Isometry gen = s->holonomy;
  if (gen.label.empty()) gen.label = "h";
  tm.group.generators.push_back(std::move(gen));
  return tm;
}

std::pair<DiscreteCurve, LeafPath>
parallel_transport(const FoliationModel& model, const LeafPath& beta,
                   const DiscreteCurve& gamma) {
  require_curve(gamma);
  if (dist(beta.start, gamma.nodes.front()) > 1e-9)
    throw contract_error("parallel_transport: gamma must start at beta's "
                         "start point");
  if (const auto* t = as_torus(model)) {
    auto [L, Q] = leaf_frames(t->leaf_basis);
    if (!(gamma.space == SpaceId::euclidean(t->n)))
      throw contract_error("parallel_transport: curve lives off the torus");
    for (std::size_t i = 1; i < gamma.nodes.size(); ++i) {
      Eigen::VectorXd seg = gamma.nodes[i].coords - gamma.nodes[i - 1].coords;
      if ((L.transpose() * seg).norm() > 1e-10 * std::max(1.0, seg.norm()))
        throw contract_error("parallel_transport: curve is not horizontal at "
                             "segment " + std::to_string(i - 1));
    }
    Eigen::VectorXd disp = beta.leaf_displacement;
    if (disp.size() != t->n ||
        (disp - L * (L.transpose() * disp)).norm() >
            1e-10 * std::max(1.0, disp.norm()))
      throw contract_error("parallel_transport: leaf displacement is not "
                           "leafwise");
    DiscreteCurve ghat = gamma;
    for (Point& p : ghat.nodes) p.coords += disp;
    Eigen::VectorXd horiz =
        gamma.nodes.back().coords - gamma.nodes.front().coords;
    LeafPath bhat{Point{gamma.space, beta.start.coords + horiz}, disp, 0};
    return {ghat, bhat};
  }
  const auto* s = as_suspension(model);
  require_suspension(*s);
  if (!(gamma.space == s->fiber))
    throw contract_error("parallel_transport: curve must lie in the fiber");
  Isometry hj = holonomy_power(*s, beta.winding);
  DiscreteCurve ghat = gamma;
  for (Point& p : ghat.nodes) p = apply(hj, p);
  LeafPath bhat{gamma.nodes.back(), Eigen::VectorXd(), beta.winding};
  return {ghat, bhat};
}

FoliatedPair f_p_hat(const FoliationModel& model, const FoliatedPair& input,
                     const Partition& partition, double rho0) {
  require_curve(input.curve);
  if (const auto* t = as_torus(model)) {
    TransverseModel tm = transverse_model(model);
    const Eigen::MatrixXd& Q = tm.transverse_frame;
    const Eigen::MatrixXd& L = tm.leaf_frame;
    Eigen::VectorXd lambda = Q.transpose() * input.cls.ambient_class;
    if (input.cls.ambient_class.size() != t->n)
      throw contract_error("f_p_hat: class vector has wrong dimension");
    ClosedPair down;
    down.curve.space = tm.space;
    down.curve.partition = input.curve.partition;
    for (const Point& p : input.curve.nodes)
      down.curve.nodes.push_back(
          Point{tm.space, Q.transpose() * p.coords});
    Isometry shift = identity_isometry(tm.space);
    shift.translation = lambda;
    down.closure = shift;
    if (closure_residual(down) > 1e-9)
      throw contract_error("f_p_hat: curve endpoints do not realize the "
                           "hinted class in the transverse model");
    ClosedPair res = p_hat(down, partition, rho0);
    FoliatedPair out;
    out.cls = input.cls;
    out.curve.space = input.curve.space;
    out.curve.partition = res.curve.partition;
    Eigen::VectorXd anchor =
        L * (L.transpose() * input.curve.nodes.front().coords);
    for (const Point& p : res.curve.nodes)
      out.curve.nodes.push_back(
          Point{input.curve.space, anchor + Q * p.coords});
    return out;
  }
  const auto* s = as_suspension(model);
  require_suspension(*s);
  ClosedPair down{input.curve, holonomy_power(*s, input.cls.winding)};
  if (closure_residual(down) > 1e-9)
    throw contract_error("f_p_hat: fiber curve endpoints do not realize the "
                         "hinted winding");
  ClosedPair res = p_hat(down, partition, rho0);
  return {res.curve, input.cls};
}

HorizontalResult
find_horizontal_periodic_geodesic(const FoliationModel& model,
                                  const ClassHint& hint,
                                  const HorizontalOptions& opts) {
  HorizontalResult out;
  out.model = transverse_model(model);

  Isometry w0;
  if (const auto* t = as_torus(model)) {
    if (hint.ambient_class.size() != t->n)
      throw contract_error("class hint has wrong dimension");
    for (int i = 0; i < hint.ambient_class.size(); ++i)
      if (std::abs(hint.ambient_class(i) -
                   std::round(hint.ambient_class(i))) > 1e-12)
        throw contract_error("class hint must be an integer vector");
    Eigen::VectorXd lambda =
        out.model.transverse_frame.transpose() * hint.ambient_class;
    if (lambda.norm() <= 1e-12) {
      out.note = "class is leafwise: its projection to the transverse "
                 "model vanishes";
      return out;
    }
    w0 = identity_isometry(out.model.space);
    w0.translation = lambda;
    w0.label = "class";
  } else {
    const auto* s = as_suspension(model);
    w0 = holonomy_power(*s, hint.winding);
    w0.label = "h^" + std::to_string(hint.winding);
    FixedPointResult fp = fixed_point_test(w0, opts.seed);
    if (fp.fixed_point) {
      out.note = "holonomy power has fixed points: the class has no "
                 "fixed-point-free representative";
      return out;
    }
  }

  TranslationLength tl =
      translation_length(w0, LengthMode::Numeric, opts.seed);
  Point base = tl.argmin ? *tl.argmin
                         : Point{out.model.space,
                                 Eigen::VectorXd::Zero(
                                     out.model.space.ambient_dim())};
  ClosedPair pair0 = make_auto_pair(w0, base, std::max(8, opts.segment_override));
  ShorteningConfig cfg = ShorteningConfig::for_pair(pair0, opts.rho0_cap,
                                                    opts.segment_override);
  cfg.max_iter = opts.max_iter;
  cfg.tol = opts.tol;
  out.initial = pair0;
  out.config = cfg;
  out.transverse = iterate_shortening(pair0, out.model.group, cfg);
  out.found = out.transverse.status == RunStatus::NontrivialGeodesic;

  // lift and certify leaf recurrence at five parameters for one and two
  // periods
  const DiscreteCurve& down = out.transverse.pair.curve;
  if (const auto* t = as_torus(model)) {
    out.lifted.space = SpaceId::euclidean(t->n);
    out.lifted.partition = down.partition;
    for (const Point& p : down.nodes)
      out.lifted.nodes.push_back(
          Point{out.lifted.space, out.model.transverse_frame * p.coords});
    double worst = 0.0;
    for (double s : {0.0, 0.2, 0.4, 0.6, 0.8}) {
      Eigen::VectorXd gs = eval(out.lifted, s).coords;
      for (int n = 1; n <= 2; ++n) {
        // extended curve: gamma(s + n) = gamma(s) + n * lift(closure)
        Eigen::VectorXd gsn =
            gs + n * (out.model.transverse_frame *
                      out.transverse.pair.closure.translation);
        Eigen::VectorXd diff =
            out.model.transverse_frame.transpose() * (gsn - gs);
        worst = std::max(
            worst, lattice_residual(out.model.group.lattice_basis, diff));
      }
    }
    out.recurrence_residual = worst;
  } else {
    const auto* s = as_suspension(model);
    out.lifted = down;
    double worst = 0.0;
    for (double sp : {0.0, 0.2, 0.4, 0.6, 0.8}) {
      Point gs = eval(out.lifted, sp);
      Point cur = gs;
      for (int n = 1; n <= 2; ++n) {
        cur = apply(out.transverse.pair.closure, cur);
        double best = std::numeric_limits<double>::infinity();
        for (int a = 0; a < s->order; ++a)
          best = std::min(best, dist(cur, apply(holonomy_power(*s, a), gs)));
        worst = std::max(worst, best);
      }
    }
    out.recurrence_residual = worst;
  }
  if (out.recurrence_residual > 1e-8) {
    out.found = false;
    out.note = "leaf recurrence certificate failed (residual " +
               std::to_string(out.recurrence_residual) + ")";
  }
  return out;
}

double shortest_horizontal_length_oracle(const FoliationModel& model) {
  if (const auto* t = as_torus(model)) {
    TransverseModel tm = transverse_model(model);
    const Eigen::MatrixXd& Q = tm.transverse_frame;
    const int n = t->n;
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> z(static_cast<std::size_t>(n), -10);
    while (true) {
      Eigen::VectorXd zv(n);
      for (int i = 0; i < n; ++i) zv(i) = z[static_cast<std::size_t>(i)];
      double l = (Q.transpose() * zv).norm();
      if (l > 1e-12) best = std::min(best, l);
      int i = 0;
      while (i < n && z[static_cast<std::size_t>(i)] == 10) {
        z[static_cast<std::size_t>(i)] = -10;
        ++i;
      }
      if (i == n) break;
      ++z[static_cast<std::size_t>(i)];
    }
    return best;
  }
  const auto* s = as_suspension(model);
  require_suspension(*s);
  double best = std::numeric_limits<double>::infinity();
  for (int j = 1; j < s->order; ++j) {
    Isometry hj = holonomy_power(*s, j);
    if (fixed_point_test(hj).fixed_point) continue;
    best = std::min(best, translation_length(hj, LengthMode::Analytic).length);
  }
  return best;
}

} // namespace orbigeo
