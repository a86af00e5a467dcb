#pragma once

#include "orbigeo/space.hpp"

#include <cstdint>
#include <optional>
#include <vector>

// Discrete isometry groups of the model spaces: lattice translation groups,
// affine reflection groups, finite spherical groups and hyperbolic triangle
// groups, together with displacement minimization and fundamental-domain
// folding.

namespace orbigeo {

// An ambient-linear isometry.  `linear` is orthogonal (Euclidean, sphere)
// or Lorentz-orthogonal preserving the upper sheet (hyperbolic);
// `translation` is used by Euclidean isometries only.  `label` is a word in
// group generators kept for reporting; it does not affect the action.
struct Isometry {
  SpaceId space;
  Eigen::MatrixXd linear;
  Eigen::VectorXd translation;
  std::string label;
};

// Builds an isometry and checks the structural invariants (throws
// contract_error when the deviation exceeds 1e-10).
Isometry make_isometry(SpaceId space, Eigen::MatrixXd linear,
                       Eigen::VectorXd translation = Eigen::VectorXd(),
                       std::string label = "");

Isometry identity_isometry(const SpaceId& space);

// Max deviation from the structural invariants (orthogonality resp.
// Lorentz-orthogonality, zero translation on curved spaces, sheet
// preservation); composition/inversion keep this below 1e-10.
double isometry_defect(const Isometry& w);

void require_isometry(const Isometry& w, double tol = 1e-10);

bool is_identity(const Isometry& w, double tol = 1e-10);

// compose(a, b) acts as a after b: (a*b)(x) = a(b(x)).
Isometry compose(const Isometry& a, const Isometry& b);

Isometry inverse(const Isometry& w);

Point apply(const Isometry& w, const Point& p);

// Differential of the action: pushes a tangent vector forward, rebasing it
// at the image of its base point.
TangentVector dapply(const Isometry& w, const TangentVector& v);

// A geodesic hyperplane: Euclidean {x : <n,x> = c} with unit normal n;
// sphere / hyperbolic great hypersurfaces through the origin plane with
// normal n (offset unused, n spacelike unit for the hyperboloid).
struct Wall {
  Eigen::VectorXd normal;
  double offset = 0.0;
};

// Signed side of the wall: positive on the chamber side of the normal.
double wall_side(const SpaceId& space, const Wall& wall,
                 const Eigen::VectorXd& x);

Isometry reflection(const SpaceId& space, const Wall& wall,
                    std::string label = "");

enum class FoldStrategy { None, LatticeRound, CoxeterFold };

struct IsometryGroup {
  SpaceId space;
  std::vector<Isometry> generators;
  FoldStrategy fold_strategy = FoldStrategy::None;
  Eigen::MatrixXd lattice_basis;  // LatticeRound: columns generate the lattice
  std::vector<Wall> walls;        // CoxeterFold: chamber = all sides >= 0
};

// Full-rank lattice of translations of R^n; generators are the basis
// columns, fold strategy lattice_round.
IsometryGroup make_lattice_group(const Eigen::MatrixXd& basis);

// Group generated by reflections across the given Euclidean walls; the
// chamber is the intersection of the positive sides, fold strategy
// coxeter_fold.  Normals are normalized internally.
IsometryGroup make_affine_weyl_group(int dim, std::vector<Wall> walls);

enum class SphericalFamily { Cyclic, Dihedral, Antipodal };

// Finite group acting on S^n: cyclic/dihedral of the given order rotating
// the (x1,x2)-plane, or the antipodal map.  No fold strategy.
IsometryGroup make_spherical_group(int sphere_dim, SphericalFamily family,
                                   int order = 2);

// Triangle reflection group of H^2 with angles pi/p, pi/q, pi/r
// (1/p + 1/q + 1/r < 1).  Wall i is the side opposite vertex i; fold
// strategy coxeter_fold.
IsometryGroup make_hyperbolic_triangle_group(int p, int q, int r);

// Product of generators by signed 1-based indices in written order:
// {2, -1} means g2 * g1^{-1} (the rightmost factor acts first).
Isometry word_element(const IsometryGroup& group, const std::vector<int>& word);

struct FixedPointResult {
  std::optional<Point> fixed_point;
  double residual = 0.0; // displacement at the reported/best point
};

// Decides whether w has a fixed point: Euclidean via least squares on
// (A - I)x = -b, sphere via the invariant-direction test, hyperbolic via
// numeric displacement minimization (residual threshold 1e-9).
FixedPointResult fixed_point_test(const Isometry& w, std::uint64_t seed = 0);

enum class LengthMode { Analytic, Numeric };

struct TranslationLength {
  double length = 0.0;
  std::optional<Point> argmin;
  bool certified = true; // numeric mode: refinement reached its step floor
};

// Displacement infimum inf_y dist(y, w(y)).  Analytic mode uses the
// closed-form value per space (projected translation part, minimal
// rotation angle, log of the spectral radius); numeric mode runs a seeded
// 9-start coordinate search with a 1e4 evaluation budget.
TranslationLength translation_length(const Isometry& w, LengthMode mode,
                                     std::uint64_t seed = 0);

struct FoldResult {
  Isometry element;  // k with k(p) = folded
  Point folded;
  int word_length = 0;
};

// Moves p into the fundamental domain: nearest-cell rounding in lattice
// coordinates, or iterated reflection across the most violated wall
// (budget 10 * walls^2 reflections, contract_error on exceed).  Folding an
// already-folded point returns the identity.
FoldResult fold(const IsometryGroup& group, const Point& p);

} // namespace orbigeo
