#pragma once

#include "orbigeo/shortening.hpp"

#include <variant>

// Computable Riemannian foliations and their transverse reductions: linear
// foliations of flat tori (transverse model = projected lattice acting on
// the orthogonal complement of the leaf direction) and suspensions with
// finite-order holonomy (transverse model = the fiber with the cyclic
// holonomy group).  Horizontal periodic geodesics are found by shortening
// in the transverse model and lifting back.

namespace orbigeo {

// Leaves of R^n/Z^n parallel to the rational subspace V spanned by the
// integer columns of leaf_basis.
struct LinearTorusFoliation {
  int n = 2;
  Eigen::MatrixXd leaf_basis; // n x q, integer entries, full column rank
};

// Mapping-torus foliation: fiber x [0,1] glued by a finite-order isometry.
struct SuspensionFoliation {
  SpaceId fiber;
  Isometry holonomy;
  int order = 1; // holonomy^order = id within 1e-10
};

using FoliationModel = std::variant<LinearTorusFoliation, SuspensionFoliation>;

struct TransverseModel {
  SpaceId space;        // euclidean(d) resp. the fiber space
  IsometryGroup group;  // projected lattice resp. cyclic holonomy group
  // torus only: orthonormal frames for V and its complement, and the
  // reduced basis of the projected lattice (= group.lattice_basis)
  Eigen::MatrixXd leaf_frame;
  Eigen::MatrixXd transverse_frame;
};

// Builds the transverse model.  For the torus the projected standard
// lattice is reduced to a short basis by pairwise reduction and verified
// to generate every projected generator integrally.
TransverseModel transverse_model(const FoliationModel& model);

// A leafwise path descriptor: flat-torus leaves are affine subspaces, so a
// start point plus a leaf displacement; suspension leaves wind through the
// fiber bundle, so a start point plus a holonomy power.
struct LeafPath {
  Point start;
  Eigen::VectorXd leaf_displacement; // torus: vector in V
  int winding = 0;                   // suspension: power of the holonomy
};

// Bott-connection transport: slides a horizontal curve to the endpoint of
// a leaf path and the leaf path to the endpoint of the curve.  gamma must
// be horizontal (within 1e-10) and start at beta's start point; lengths
// are preserved and transporting along a full-order winding is the
// identity.
std::pair<DiscreteCurve, LeafPath>
parallel_transport(const FoliationModel& model, const LeafPath& beta,
                   const DiscreteCurve& gamma);

// Selects the leafwise homotopy class to shorten in: a nonzero integer
// vector of the covering torus (its projection is the translation class),
// or a winding power of the suspension holonomy.
struct ClassHint {
  Eigen::VectorXd ambient_class; // torus: z in Z^n with proj(z) != 0
  int winding = 0;               // suspension
};

// Transverse-model conjugated resampling: project the curve to the
// transverse model, run the partition resampling there, lift back through
// the start point's leaf.  The output is horizontal.
struct FoliatedPair {
  DiscreteCurve curve;
  ClassHint cls;
};

FoliatedPair f_p_hat(const FoliationModel& model, const FoliatedPair& input,
                     const Partition& partition, double rho0);

struct HorizontalOptions {
  int segment_override = 0; // 0: use the k-rule
  double rho0_cap = 1.0;
  long max_iter = 100000;
  ShorteningTolerances tol;
  std::uint64_t seed = 0;
};

struct HorizontalResult {
  bool found = false;  // false when the class has no fixed-point-free rep
  std::string note;
  TransverseModel model;
  ClosedPair initial;          // seed pair handed to the transverse engine
  ShorteningConfig config;     // resolved transverse configuration
  GeodesicResult transverse;   // shortening outcome in the transverse model
  DiscreteCurve lifted;        // horizontal representative upstairs
  double recurrence_residual = 0.0; // worst leaf-recurrence defect
};

// Shortens in the transverse model within the hinted class, lifts the
// geodesic to a horizontal curve, and certifies the periodicity
// gamma(n*t1 + s) in Leaf(gamma(s)) for n in {1,2} at five sample
// parameters (residual <= 1e-8).
HorizontalResult
find_horizontal_periodic_geodesic(const FoliationModel& model,
                                  const ClassHint& hint,
                                  const HorizontalOptions& opts = {});

// Independent enumeration oracle for the shortest closed horizontal
// geodesic: brute force over integer vectors with |z_i| <= 10 (torus,
// projections below 1e-12 excluded) or minimal analytic translation
// length among fixed-point-free holonomy powers (suspension; +inf when
// every power has fixed points).
double shortest_horizontal_length_oracle(const FoliationModel& model);

} // namespace orbigeo
