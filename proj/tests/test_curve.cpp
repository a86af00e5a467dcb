#include "doctest.h"

#include <cmath>

#include "orbigeo/curve.hpp"
#include "orbigeo/rng.hpp"
#include "scenes.hpp"

using namespace orbigeo;
using namespace orbigeo::testing;

namespace {

DiscreteCurve vee_curve() {
  DiscreteCurve c;
  c.space = SpaceId::euclidean(2);
  c.partition = uniform_partition(0.0, 1.0, 2);
  c.nodes = {{c.space, Eigen::Vector2d(0.0, 0.0)},
             {c.space, Eigen::Vector2d(0.5, 0.5)},
             {c.space, Eigen::Vector2d(1.0, 0.0)}};
  return c;
}

} // namespace

TEST_CASE("partitions validate and report mesh") {
  Partition p = uniform_partition(0.0, 1.0, 4);
  CHECK(p.segments() == 4);
  CHECK(p.values.front() == 0.0);
  CHECK(p.values.back() == 1.0);
  CHECK(p.mesh() == doctest::Approx(0.25).epsilon(1e-15));

  Partition bad{{0.0, 0.5, 0.5, 1.0}};
  CHECK_THROWS_AS(require_partition(bad), contract_error);
  Partition single{{0.0}};
  CHECK_THROWS_AS(require_partition(single), contract_error);
}

TEST_CASE("energy and length of the V curve") {
  DiscreteCurve c = vee_curve();
  // two segments of length 1/sqrt(2) over dt = 1/2 each
  CHECK(curve_length(c) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(energy(c) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("energy scales inversely with the parameter span") {
  DiscreteCurve c = vee_curve();
  DiscreteCurve stretched = c;
  stretched.partition = uniform_partition(0.0, 2.0, 2);
  CHECK(energy(stretched) == doctest::Approx(0.5 * energy(c)).epsilon(1e-15));
  CHECK(curve_length(stretched) == doctest::Approx(curve_length(c)));
}

TEST_CASE("energy dominates length squared over two") {
  SeededRng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    ClosedPair pair = random_pair(trial, rng);
    double E = energy(pair.curve);
    double L = curve_length(pair.curve);
    CHECK(E >= L * L / 2.0 - 1e-12);
  }
}

TEST_CASE("eval returns stored nodes exactly and interpolates between") {
  DiscreteCurve c = vee_curve();
  CHECK((eval(c, 0.5).coords - c.nodes[1].coords).norm() == 0.0);
  CHECK((eval(c, 1.0).coords - c.nodes[2].coords).norm() == 0.0);
  Point q = eval(c, 0.25);
  CHECK((q.coords - Eigen::Vector2d(0.25, 0.25)).norm() < 1e-15);
  CHECK_THROWS_AS((void)eval(c, 1.5), contract_error);
  CHECK_THROWS_AS((void)eval(c, -0.5), contract_error);
}

TEST_CASE("transform preserves energy, length and closure") {
  auto g = a1_affine_weyl();
  SeededRng rng(21);
  ClosedPair pair = random_pair(1, rng);
  Isometry k = word_element(g, {1});
  ClosedPair moved = transform(pair, k);
  CHECK(energy(moved.curve) ==
        doctest::Approx(energy(pair.curve)).epsilon(1e-12));
  CHECK(curve_length(moved.curve) ==
        doctest::Approx(curve_length(pair.curve)).epsilon(1e-12));
  CHECK(closure_residual(moved) < 1e-9);
  // conjugated closure: k w k^-1 maps the moved start to the moved end
  Point expected = apply(k, apply(pair.closure, pair.curve.nodes[0]));
  CHECK((apply(moved.closure, moved.curve.nodes[0]).coords - expected.coords)
            .norm() < 1e-12);
}

TEST_CASE("closure validation catches bad pairs") {
  auto lattice = unit_square_lattice();
  Isometry t1 = word_element(lattice, {1});
  Point base{lattice.space, Eigen::Vector2d(0, 0)};
  ClosedPair good = make_auto_pair(t1, base, 8);
  ClosureReport ok = validate_closure(good, 1.0, energy(good.curve));
  CHECK(ok.pass);
  CHECK(ok.residual < 1e-12);

  ClosedPair broken = good;
  broken.curve.nodes.back().coords += Eigen::Vector2d(0.1, 0.0);
  ClosureReport rep = validate_closure(broken, 1.0, energy(broken.curve));
  CHECK_FALSE(rep.pass);
  CHECK(rep.residual == doctest::Approx(0.1).epsilon(1e-9));

  // mesh too coarse for the energy bound
  ClosureReport coarse = validate_closure(good, 1.0, 100.0);
  CHECK_FALSE(coarse.pass);
  CHECK(coarse.mesh >= coarse.mesh_bound);
}

TEST_CASE("max node displacement") {
  DiscreteCurve a = vee_curve();
  DiscreteCurve b = a;
  b.nodes[1].coords += Eigen::Vector2d(0.0, 0.25);
  CHECK(max_node_displacement(a, b) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(max_node_displacement(a, a) == 0.0);
}
