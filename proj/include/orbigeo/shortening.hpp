#pragma once

#include "orbigeo/curve.hpp"

#include <cstdint>

// Discrete curve shortening for closed pairs (alpha, w): resampling onto
// interleaved uniform partitions of [0,1], the two-pass midpoint step with
// the closure element bridging the wrap, chamber recentering, and the
// fixed-point iteration that drives a pair to a closed geodesic or a point.

namespace orbigeo {

struct ShorteningTolerances {
  double node_disp = 1e-10;        // per-node movement, convergence window
  double energy_decrement = 1e-12; // energy drop, convergence window
  double geodesic_angle = 1e-6;    // interior/closure kink bound (radians)
  double trivial_length = 1e-6;    // below this a limit counts as a point
  double speed_spread = 1e-8;      // segment speed equality bound
};

struct ShorteningConfig {
  int segment_count = 8;      // k: nodes sit at t_i = i/k
  double rho0 = 1.0;          // geodesic uniqueness margin actually used
  double energy_bound = 1.0;  // K: admissible energy, fixes the mesh bound
  ShorteningTolerances tol;
  long max_iter = 100000;
  int recenter_every = 1;     // 0 disables recentering

  // rho0 = min(0.9 * uniqueness_radius, rho0_cap); K = energy(pair);
  // k = max(8, ceil(K/rho0^2) + 1) unless overridden.  Throws when the
  // override breaks the mesh condition 1/k < rho0^2/K.
  static ShorteningConfig for_pair(const ClosedPair& pair,
                                   double rho0_cap = 1.0,
                                   int segment_override = 0);

  Partition t_partition() const;   // {i/k} on [0,1]
  Partition tau_partition() const; // {(2i-1)/(2k)}, starts at -1/(2k)
};

// Resamples the pair onto a new partition of the same span; each new node
// is the curve evaluated at the new value, so segments become minimizing
// geodesics and energy cannot increase.  Throws nonunique_geodesic_error
// (with segment index) when a resampled segment reaches rho0.
ClosedPair p_hat(const ClosedPair& pair, const Partition& partition,
                 double rho0);

// The backward extension of the curve to [-1/(2k), 1] by the pullback of
// its closing segment; eval at t and t+1 differ exactly by the closure.
DiscreteCurve extend_back(const ClosedPair& pair, int segment_count);

// One double-shortening step: resample at {t_i}, midpoint pass onto the
// interleaved {tau_i} (closing the wrap through w^{-1}), midpoint pass back
// onto {t_i} (closing through w).  Energy is non-increasing; the output is
// again a closed pair on the uniform partition of [0,1].
ClosedPair double_shorten(const ClosedPair& pair, const ShorteningConfig& cfg);

struct RecenterOutcome {
  ClosedPair pair;
  FoldResult fold; // identity when the base node already sat in the chamber
};

// Folds the base node into the fundamental domain and conjugates the whole
// pair by the folding element; energy/length/closure residual unchanged.
RecenterOutcome recenter(const ClosedPair& pair, const IsometryGroup& group);

struct VerifyReport {
  bool pass = true;
  double max_interior_angle = 0.0; // radians, worst interior kink
  int worst_node = -1;
  double closure_angle = 0.0;      // kink across the closure junction
  double speed_spread = 0.0;       // max - min segment speed
  std::string detail;
};

// Checks that the pair is a discrete closed geodesic: equal segment speeds,
// straight interior nodes, and tangents matched across the closure by the
// differential of w.  Degenerate (near-zero) segments contribute no angle.
VerifyReport verify_closed_geodesic(const ClosedPair& pair,
                                    const ShorteningTolerances& tol);

enum class RunStatus { NontrivialGeodesic, TrivialPoint, MaxIterReached };

std::string status_name(RunStatus s);

struct TraceRow {
  long iteration = 0;
  double energy = 0.0;
  double length = 0.0;
  double max_node_disp = 0.0;   // movement during this iteration
  int recenter_word_len = 0;    // reflections/translations used to recenter
};

struct GeodesicResult {
  ClosedPair pair;        // final state; closure = conjugator w0 conjugator^-1
  Isometry conjugator;    // accumulated recentering element
  double length = 0.0;
  double energy = 0.0;
  long iterations = 0;
  RunStatus status = RunStatus::MaxIterReached;
  bool certified = false; // verification (or axis smoothness) passed
  VerifyReport verification;
  std::vector<TraceRow> trace; // row 0 = initial state, one row per step
};

// Runs double shortening with recentering until node movement and energy
// decrement stay below tolerance for 5 consecutive iterations, then
// classifies the limit (trivial point vs verified closed geodesic).
// Throws contract_error when the input violates the mesh/energy contract.
GeodesicResult iterate_shortening(const ClosedPair& initial,
                                  const IsometryGroup& group,
                                  const ShorteningConfig& cfg);

// Uniformly subdivided geodesic from base to w0(base) as a closed pair.
// For an exactly antipodal sphere pair the great-circle direction is chosen
// deterministically (the half great circle through the most orthogonal
// coordinate direction).
ClosedPair make_auto_pair(const Isometry& w0, const Point& base,
                          int segment_count);

// Independent route to a closed geodesic for fixed-point-free w0: minimize
// the displacement function numerically, join the argmin to its image, and
// certify smoothness across the junction.  Result is flagged non-certified
// when the junction check or the minimization fails.
GeodesicResult axis_via_displacement_min(const Isometry& w0,
                                         const IsometryGroup& group,
                                         int segment_count = 16,
                                         std::uint64_t seed = 0);

} // namespace orbigeo
