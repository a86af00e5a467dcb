#include "orbigeo/isometry.hpp"

#include "orbigeo/rng.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace orbigeo {

namespace {

Eigen::Matrix3d minkowski_J() {
  Eigen::Matrix3d J = Eigen::Matrix3d::Identity();
  J(0, 0) = -1.0;
  return J;
}

std::string join_labels(const std::string& a, const std::string& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + " " + b;
}

// ---- displacement minimization (numeric mode) ----------------------------

double displacement_sq(const Isometry& w, const Point& p) {
  double d = dist(p, apply(w, p));
  return d * d;
}

Point project_candidate(const SpaceId& space, const Eigen::VectorXd& x) {
  if (space.kind == SpaceKind::Euclidean) return {space, x};
  return project_to_space(space, x);
}

struct SearchOutcome {
  Point best;
  double f2 = 0.0;
  bool converged = true;
  long evals = 0;
};

// Greedy coordinate (compass) descent on the squared displacement with
// step halving; curved spaces re-project ambient probes onto the manifold.
SearchOutcome compass_descent(const Isometry& w, Point y, double f2,
                              long budget) {
  const int m = y.space.ambient_dim();
  double step = 0.5;
  const double floor_step = 1e-12;
  SearchOutcome out{y, f2, false, 0};
  while (step >= floor_step && out.evals < budget) {
    int best_dir = -1;
    double best_f2 = out.f2;
    Point best_pt = out.best;
    for (int i = 0; i < 2 * m && out.evals < budget; ++i) {
      Eigen::VectorXd cand = out.best.coords;
      cand(i / 2) += (i % 2 == 0 ? step : -step);
      Point c;
      try {
        c = project_candidate(y.space, cand);
      } catch (const contract_error&) {
        continue; // probe left the projectable region
      }
      double f = displacement_sq(w, c);
      ++out.evals;
      if (f < best_f2) {
        best_f2 = f;
        best_pt = c;
        best_dir = i;
      }
    }
    if (best_dir >= 0) {
      out.f2 = best_f2;
      out.best = best_pt;
    } else {
      step *= 0.5;
    }
  }
  out.converged = step < floor_step;
  return out;
}

std::vector<Point> seeded_starts(const SpaceId& space, std::uint64_t seed) {
  SeededRng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Point> starts;
  const int m = space.ambient_dim();
  switch (space.kind) {
  case SpaceKind::Euclidean: {
    starts.push_back({space, Eigen::VectorXd::Zero(m)});
    for (int s = 0; s < 8; ++s) {
      Eigen::VectorXd x(m);
      for (int i = 0; i < m; ++i) x(i) = rng.uniform(-3.0, 3.0);
      starts.push_back({space, x});
    }
    break;
  }
  case SpaceKind::Sphere: {
    Eigen::VectorXd pole = Eigen::VectorXd::Zero(m);
    pole(0) = 1.0;
    starts.push_back({space, pole});
    while (starts.size() < 9) {
      Eigen::VectorXd x(m);
      for (int i = 0; i < m; ++i) x(i) = rng.uniform(-1.0, 1.0);
      if (x.norm() < 1e-3) continue;
      starts.push_back(project_to_space(space, x));
    }
    break;
  }
  case SpaceKind::Hyperbolic2: {
    starts.push_back({space, Eigen::Vector3d(1.0, 0.0, 0.0)});
    for (int s = 0; s < 8; ++s) {
      double u = rng.uniform(-2.0, 2.0);
      double v = rng.uniform(-2.0, 2.0);
      Eigen::Vector3d x(std::sqrt(1.0 + u * u + v * v), u, v);
      starts.push_back({space, x});
    }
    break;
  }
  }
  return starts;
}

SearchOutcome minimize_displacement(const Isometry& w, std::uint64_t seed) {
  const long total_budget = 10000;
  std::vector<Point> starts = seeded_starts(w.space, seed);
  std::vector<std::pair<double, std::size_t>> ranked;
  long evals = 0;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    ranked.push_back({displacement_sq(w, starts[i]), i});
    ++evals;
  }
  std::sort(ranked.begin(), ranked.end());
  SearchOutcome best{starts[ranked[0].second], ranked[0].first, true, evals};
  bool all_converged = true;
  for (int r = 0; r < 3 && r < static_cast<int>(ranked.size()); ++r) {
    long budget = (total_budget - evals) / (3 - r);
    SearchOutcome o = compass_descent(w, starts[ranked[r].second],
                                      ranked[r].first, budget);
    evals += o.evals;
    all_converged = all_converged && o.converged;
    if (o.f2 < best.f2) {
      best.best = o.best;
      best.f2 = o.f2;
    }
  }
  best.converged = all_converged;
  best.evals = evals;
  return best;
}

// ---- analytic translation lengths ----------------------------------------

// Orthonormal basis of ker(A - I) via SVD; columns with tiny singular value.
Eigen::MatrixXd fixed_subspace(const Eigen::MatrixXd& A) {
  const int n = static_cast<int>(A.rows());
  Eigen::MatrixXd M = A - Eigen::MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
  double thresh = 1e-10 * std::max(1.0, svd.singularValues()(0));
  std::vector<int> cols;
  for (int i = 0; i < n; ++i)
    if (svd.singularValues()(i) <= thresh) cols.push_back(i);
  Eigen::MatrixXd N(n, static_cast<int>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    N.col(static_cast<int>(j)) = svd.matrixV().col(cols[j]);
  return N;
}

TranslationLength analytic_euclidean(const Isometry& w) {
  const int n = w.space.dim;
  Eigen::MatrixXd N = fixed_subspace(w.linear);
  double len = (N.cols() == 0) ? 0.0 : (N * (N.transpose() * w.translation)).norm();
  Eigen::MatrixXd M = w.linear - Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd x =
      M.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(-w.translation);
  return {len, Point{w.space, x}, true};
}

TranslationLength analytic_sphere(const Isometry& w) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(w.linear);
  double best = std::numeric_limits<double>::infinity();
  int best_i = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double ang = std::abs(
        std::atan2(es.eigenvalues()(i).imag(), es.eigenvalues()(i).real()));
    if (ang < best) {
      best = ang;
      best_i = i;
    }
  }
  Eigen::VectorXd dir = es.eigenvectors().col(best_i).real();
  if (dir.norm() < 1e-8) dir = es.eigenvectors().col(best_i).imag();
  std::optional<Point> argmin;
  if (dir.norm() > 1e-12)
    argmin = project_to_space(w.space, dir);
  return {best, argmin, true};
}

TranslationLength analytic_hyperbolic(const Isometry& w) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(w.linear);
  double rho = 0.0;
  int top = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double a = std::abs(es.eigenvalues()(i));
    if (a > rho) {
      rho = a;
      top = i;
    }
  }
  double len = std::max(0.0, std::log(rho));
  std::optional<Point> argmin;
  if (len > 1e-12) {
    // axis point: normalized sum of the two lightlike eigenvectors
    int bottom = 0;
    double small = std::numeric_limits<double>::infinity();
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
      double a = std::abs(es.eigenvalues()(i));
      if (a < small) {
        small = a;
        bottom = i;
      }
    }
    Eigen::VectorXd np = es.eigenvectors().col(top).real();
    Eigen::VectorXd nm = es.eigenvectors().col(bottom).real();
    if (np(0) < 0) np = -np;
    if (nm(0) < 0) nm = -nm;
    Eigen::VectorXd x = np / std::max(1e-300, np(0)) + nm / std::max(1e-300, nm(0));
    if (-minkowski_dot(x, x) > 0) argmin = project_to_space(w.space, x);
  }
  return {len, argmin, true};
}

} // namespace

// ---- basic isometry algebra ----------------------------------------------

double isometry_defect(const Isometry& w) {
  const int m = w.space.ambient_dim();
  if (w.linear.rows() != m || w.linear.cols() != m)
    return std::numeric_limits<double>::infinity();
  double defect = 0.0;
  switch (w.space.kind) {
  case SpaceKind::Euclidean: {
    defect = (w.linear.transpose() * w.linear - Eigen::MatrixXd::Identity(m, m))
                 .cwiseAbs()
                 .maxCoeff();
    if (w.translation.size() != m || !w.translation.allFinite())
      return std::numeric_limits<double>::infinity();
    break;
  }
  case SpaceKind::Sphere: {
    defect = (w.linear.transpose() * w.linear - Eigen::MatrixXd::Identity(m, m))
                 .cwiseAbs()
                 .maxCoeff();
    if (w.translation.size() != 0) defect = std::max(defect, w.translation.cwiseAbs().maxCoeff());
    break;
  }
  case SpaceKind::Hyperbolic2: {
    Eigen::Matrix3d J = minkowski_J();
    defect = (w.linear.transpose() * J * w.linear - J).cwiseAbs().maxCoeff();
    if (w.translation.size() != 0) defect = std::max(defect, w.translation.cwiseAbs().maxCoeff());
    // upper-sheet preservation: the image of (1,0,0) must point up
    if (w.linear(0, 0) <= 0.0) return std::numeric_limits<double>::infinity();
    break;
  }
  }
  return defect;
}

void require_isometry(const Isometry& w, double tol) {
  double d = isometry_defect(w);
  if (!(d <= tol))
    throw contract_error("isometry invariant violated on " + w.space.str() +
                         " (defect " + std::to_string(d) + ")");
}

Isometry make_isometry(SpaceId space, Eigen::MatrixXd linear,
                       Eigen::VectorXd translation, std::string label) {
  if (translation.size() == 0 && space.kind == SpaceKind::Euclidean)
    translation = Eigen::VectorXd::Zero(space.ambient_dim());
  Isometry w{space, std::move(linear), std::move(translation), std::move(label)};
  require_isometry(w);
  return w;
}

Isometry identity_isometry(const SpaceId& space) {
  const int m = space.ambient_dim();
  Eigen::VectorXd t;
  if (space.kind == SpaceKind::Euclidean) t = Eigen::VectorXd::Zero(m);
  return {space, Eigen::MatrixXd::Identity(m, m), t, ""};
}

bool is_identity(const Isometry& w, double tol) {
  const int m = w.space.ambient_dim();
  double d = (w.linear - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
  if (w.translation.size() > 0)
    d = std::max(d, w.translation.cwiseAbs().maxCoeff());
  return d <= tol;
}

Isometry compose(const Isometry& a, const Isometry& b) {
  if (!(a.space == b.space))
    throw contract_error("compose: isometries on different spaces");
  Isometry out;
  out.space = a.space;
  out.linear = a.linear * b.linear;
  if (a.space.kind == SpaceKind::Euclidean)
    out.translation = a.linear * b.translation + a.translation;
  out.label = join_labels(a.label, b.label);
  return out;
}

Isometry inverse(const Isometry& w) {
  Isometry out;
  out.space = w.space;
  switch (w.space.kind) {
  case SpaceKind::Euclidean:
  case SpaceKind::Sphere:
    out.linear = w.linear.transpose();
    break;
  case SpaceKind::Hyperbolic2: {
    Eigen::Matrix3d J = minkowski_J();
    out.linear = J * w.linear.transpose() * J;
    break;
  }
  }
  if (w.space.kind == SpaceKind::Euclidean)
    out.translation = -(out.linear * w.translation);
  if (!w.label.empty()) out.label = "(" + w.label + ")^-1";
  return out;
}

Point apply(const Isometry& w, const Point& p) {
  if (!(w.space == p.space))
    throw contract_error("apply: isometry and point on different spaces");
  Eigen::VectorXd x = w.linear * p.coords;
  if (w.space.kind == SpaceKind::Euclidean) {
    x += w.translation;
    return {p.space, std::move(x)};
  }
  // curved spaces: re-project to keep the invariant tight under chains
  return project_to_space(p.space, std::move(x));
}

TangentVector dapply(const Isometry& w, const TangentVector& v) {
  return {apply(w, v.base), w.linear * v.vec};
}

// ---- walls and reflections -----------------------------------------------

double wall_side(const SpaceId& space, const Wall& wall,
                 const Eigen::VectorXd& x) {
  switch (space.kind) {
  case SpaceKind::Euclidean:
    return wall.normal.dot(x) - wall.offset;
  case SpaceKind::Sphere:
    return wall.normal.dot(x);
  case SpaceKind::Hyperbolic2:
    return minkowski_dot(wall.normal, x);
  }
  return 0.0;
}

Isometry reflection(const SpaceId& space, const Wall& wall, std::string label) {
  const int m = space.ambient_dim();
  if (wall.normal.size() != m)
    throw contract_error("reflection: wall normal has wrong dimension");
  Eigen::VectorXd n = wall.normal;
  Isometry out;
  out.space = space;
  switch (space.kind) {
  case SpaceKind::Euclidean: {
    n /= n.norm();
    out.linear = Eigen::MatrixXd::Identity(m, m) - 2.0 * n * n.transpose();
    out.translation = 2.0 * wall.offset * n;
    break;
  }
  case SpaceKind::Sphere: {
    n /= n.norm();
    out.linear = Eigen::MatrixXd::Identity(m, m) - 2.0 * n * n.transpose();
    break;
  }
  case SpaceKind::Hyperbolic2: {
    double q = minkowski_dot(n, n);
    if (q <= 0)
      throw contract_error("reflection: hyperbolic wall normal must be spacelike");
    n /= std::sqrt(q);
    out.linear =
        Eigen::MatrixXd::Identity(3, 3) - 2.0 * n * (minkowski_J() * n).transpose();
    break;
  }
  }
  out.label = std::move(label);
  require_isometry(out);
  return out;
}

// ---- group constructors --------------------------------------------------

IsometryGroup make_lattice_group(const Eigen::MatrixXd& basis) {
  const int n = static_cast<int>(basis.rows());
  if (basis.cols() != n || n < 1)
    throw contract_error("lattice basis must be square and nonempty");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(basis);
  if (!lu.isInvertible())
    throw contract_error("lattice basis is singular");
  IsometryGroup g;
  g.space = SpaceId::euclidean(n);
  g.fold_strategy = FoldStrategy::LatticeRound;
  g.lattice_basis = basis;
  for (int i = 0; i < n; ++i) {
    g.generators.push_back(make_isometry(g.space,
                                         Eigen::MatrixXd::Identity(n, n),
                                         basis.col(i),
                                         "t" + std::to_string(i + 1)));
  }
  return g;
}

IsometryGroup make_affine_weyl_group(int dim, std::vector<Wall> walls) {
  if (dim < 1) throw contract_error("affine reflection group needs dim >= 1");
  if (walls.empty()) throw contract_error("affine reflection group needs walls");
  IsometryGroup g;
  g.space = SpaceId::euclidean(dim);
  g.fold_strategy = FoldStrategy::CoxeterFold;
  for (std::size_t i = 0; i < walls.size(); ++i) {
    double nn = walls[i].normal.norm();
    if (walls[i].normal.size() != dim || nn < 1e-14)
      throw contract_error("wall " + std::to_string(i) + " has a bad normal");
    walls[i].offset /= nn;
    walls[i].normal /= nn;
    g.generators.push_back(
        reflection(g.space, walls[i], "r" + std::to_string(i)));
  }
  g.walls = std::move(walls);
  return g;
}

IsometryGroup make_spherical_group(int sphere_dim, SphericalFamily family,
                                   int order) {
  if (sphere_dim < 1) throw contract_error("sphere dimension must be >= 1");
  const SpaceId space = SpaceId::sphere(sphere_dim);
  const int m = space.ambient_dim();
  IsometryGroup g;
  g.space = space;
  g.fold_strategy = FoldStrategy::None;
  auto plane_rotation = [&](double theta) {
    Eigen::MatrixXd R = Eigen::MatrixXd::Identity(m, m);
    R(0, 0) = std::cos(theta);
    R(0, 1) = -std::sin(theta);
    R(1, 0) = std::sin(theta);
    R(1, 1) = std::cos(theta);
    return R;
  };
  switch (family) {
  case SphericalFamily::Antipodal:
    g.generators.push_back(
        make_isometry(space, -Eigen::MatrixXd::Identity(m, m), {}, "a"));
    break;
  case SphericalFamily::Cyclic:
    if (order < 1) throw contract_error("cyclic order must be >= 1");
    g.generators.push_back(
        make_isometry(space, plane_rotation(2.0 * M_PI / order), {}, "c"));
    break;
  case SphericalFamily::Dihedral: {
    if (order < 1) throw contract_error("dihedral order must be >= 1");
    g.generators.push_back(
        make_isometry(space, plane_rotation(2.0 * M_PI / order), {}, "c"));
    Eigen::MatrixXd B = Eigen::MatrixXd::Identity(m, m);
    B(1, 1) = -1.0;
    if (m >= 3) B(2, 2) = -1.0; // proper rotation when there is room
    g.generators.push_back(make_isometry(space, B, {}, "b"));
    break;
  }
  }
  return g;
}

IsometryGroup make_hyperbolic_triangle_group(int p, int q, int r) {
  if (p < 2 || q < 2 || r < 2)
    throw contract_error("triangle group parameters must be >= 2");
  if (1.0 / p + 1.0 / q + 1.0 / r >= 1.0 - 1e-12)
    throw contract_error("triangle group is not hyperbolic: 1/p+1/q+1/r >= 1");
  const double A = M_PI / p, B = M_PI / q, C = M_PI / r;
  // hyperbolic law of cosines for angles: side lengths from the three angles
  const double side_c = std::acosh(
      (std::cos(A) * std::cos(B) + std::cos(C)) / (std::sin(A) * std::sin(B)));
  const double side_b = std::acosh(
      (std::cos(A) * std::cos(C) + std::cos(B)) / (std::sin(A) * std::sin(C)));
  Eigen::Vector3d VA(1.0, 0.0, 0.0);
  Eigen::Vector3d VB(std::cosh(side_c), std::sinh(side_c), 0.0);
  Eigen::Vector3d VC(std::cosh(side_b), std::sinh(side_b) * std::cos(A),
                     std::sinh(side_b) * std::sin(A));
  Eigen::Matrix3d J = minkowski_J();
  auto wall_through = [&](const Eigen::Vector3d& u, const Eigen::Vector3d& v,
                          const Eigen::Vector3d& inside) {
    Eigen::Vector3d n = J * u.cross(v);
    double nn = minkowski_dot(n, n);
    if (nn <= 0) throw contract_error("degenerate triangle wall");
    n /= std::sqrt(nn);
    if (minkowski_dot(n, inside) < 0) n = -n;
    return Wall{n, 0.0};
  };
  IsometryGroup g;
  g.space = SpaceId::hyperbolic2();
  g.fold_strategy = FoldStrategy::CoxeterFold;
  g.walls = {wall_through(VB, VC, VA),   // side opposite vertex A
             wall_through(VA, VC, VB),   // side opposite vertex B
             wall_through(VA, VB, VC)};  // side opposite vertex C
  for (int i = 0; i < 3; ++i)
    g.generators.push_back(
        reflection(g.space, g.walls[static_cast<std::size_t>(i)],
                   "r" + std::to_string(i)));
  return g;
}

Isometry word_element(const IsometryGroup& group, const std::vector<int>& word) {
  Isometry out = identity_isometry(group.space);
  for (int s : word) {
    int idx = std::abs(s) - 1;
    if (s == 0 || idx >= static_cast<int>(group.generators.size()))
      throw contract_error("word refers to generator " + std::to_string(s) +
                           " outside the group");
    const Isometry& gen = group.generators[static_cast<std::size_t>(idx)];
    out = compose(out, s > 0 ? gen : inverse(gen));
  }
  return out;
}

// ---- fixed points and translation length ---------------------------------

FixedPointResult fixed_point_test(const Isometry& w, std::uint64_t seed) {
  require_isometry(w);
  switch (w.space.kind) {
  case SpaceKind::Euclidean: {
    const int n = w.space.dim;
    Eigen::MatrixXd M = w.linear - Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd x =
        M.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(-w.translation);
    double res = (M * x + w.translation).norm();
    if (res <= 1e-9) return {Point{w.space, x}, res};
    return {std::nullopt, res};
  }
  case SpaceKind::Sphere: {
    Eigen::MatrixXd N = fixed_subspace(w.linear);
    if (N.cols() > 0) {
      Eigen::VectorXd v = N.col(0);
      int top = 0;
      v.cwiseAbs().maxCoeff(&top);
      if (v(top) < 0) v = -v;
      Point fp = project_to_space(w.space, v);
      double res = dist(fp, apply(w, fp));
      if (res <= 1e-9) return {fp, res};
    }
    // no invariant direction: report the displacement infimum over probes
    SearchOutcome o = minimize_displacement(w, seed);
    return {std::nullopt, std::sqrt(o.f2)};
  }
  case SpaceKind::Hyperbolic2: {
    SearchOutcome o = minimize_displacement(w, seed);
    double res = std::sqrt(o.f2);
    if (res <= 1e-9) return {o.best, res};
    return {std::nullopt, res};
  }
  }
  return {std::nullopt, 0.0};
}

TranslationLength translation_length(const Isometry& w, LengthMode mode,
                                     std::uint64_t seed) {
  require_isometry(w);
  if (mode == LengthMode::Analytic) {
    switch (w.space.kind) {
    case SpaceKind::Euclidean: return analytic_euclidean(w);
    case SpaceKind::Sphere: return analytic_sphere(w);
    case SpaceKind::Hyperbolic2: return analytic_hyperbolic(w);
    }
  }
  SearchOutcome o = minimize_displacement(w, seed);
  return {std::sqrt(o.f2), o.best, o.converged};
}

// ---- folding -------------------------------------------------------------

FoldResult fold(const IsometryGroup& group, const Point& p) {
  if (!(group.space == p.space))
    throw contract_error("fold: point and group on different spaces");
  switch (group.fold_strategy) {
  case FoldStrategy::None:
    return {identity_isometry(group.space), p, 0};
  case FoldStrategy::LatticeRound: {
    Eigen::VectorXd c = group.lattice_basis.colPivHouseholderQr().solve(p.coords);
    Eigen::VectorXd m(c.size());
    // snap coordinates within 1e-12 of an integer to it, then floor
    for (int i = 0; i < c.size(); ++i) m(i) = std::floor(c(i) + 1e-12);
    if (m.cwiseAbs().maxCoeff() == 0.0)
      return {identity_isometry(group.space), p, 0};
    Isometry k = identity_isometry(group.space);
    k.translation = -(group.lattice_basis * m);
    int wl = 0;
    for (int i = 0; i < m.size(); ++i) {
      int mi = static_cast<int>(std::llround(m(i)));
      wl += std::abs(mi);
      if (mi != 0) {
        std::string tok = "t" + std::to_string(i + 1);
        if (mi != -1) tok += "^" + std::to_string(-mi);
        k.label = join_labels(k.label, tok);
      }
    }
    return {k, apply(k, p), wl};
  }
  case FoldStrategy::CoxeterFold: {
    const double tol = 1e-12;
    const long budget =
        10 * static_cast<long>(group.walls.size()) *
        static_cast<long>(group.walls.size());
    Isometry k = identity_isometry(group.space);
    Point x = p;
    int wl = 0;
    for (long step = 0; step <= budget; ++step) {
      int worst = -1;
      double worst_side = -tol;
      for (std::size_t i = 0; i < group.walls.size(); ++i) {
        double s = wall_side(group.space, group.walls[i], x.coords);
        if (s < worst_side) {
          worst_side = s;
          worst = static_cast<int>(i);
        }
      }
      if (worst < 0) return {k, x, wl};
      Isometry refl =
          reflection(group.space, group.walls[static_cast<std::size_t>(worst)],
                     "r" + std::to_string(worst));
      x = apply(refl, x);
      k = compose(refl, k);
      ++wl;
    }
    throw contract_error("fold: reflection budget exceeded (point too far "
                         "from the chamber)");
  }
  }
  return {identity_isometry(group.space), p, 0};
}

} // namespace orbigeo
