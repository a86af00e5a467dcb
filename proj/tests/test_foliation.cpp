#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "orbigeo/foliation.hpp"
#include "scenes.hpp"

using namespace orbigeo;
using namespace orbigeo::testing;

namespace {

const double pi = std::acos(-1.0);

LinearTorusFoliation torus_foliation(std::vector<Eigen::VectorXd> leaf_rows) {
  LinearTorusFoliation f;
  f.n = static_cast<int>(leaf_rows.front().size());
  f.leaf_basis.resize(f.n, static_cast<Eigen::Index>(leaf_rows.size()));
  for (std::size_t j = 0; j < leaf_rows.size(); ++j)
    f.leaf_basis.col(static_cast<Eigen::Index>(j)) = leaf_rows[j];
  return f;
}

SuspensionFoliation antipodal_suspension() {
  SuspensionFoliation f;
  f.fiber = SpaceId::sphere(2);
  f.holonomy = make_isometry(f.fiber, -Eigen::Matrix3d::Identity(), {}, "h");
  f.order = 2;
  return f;
}

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

} // namespace

TEST_CASE("transverse model of the (1,1) line foliation") {
  auto f = torus_foliation({vec2(1, 1)});
  TransverseModel tm = transverse_model(f);
  CHECK(tm.space.kind == SpaceKind::Euclidean);
  CHECK(tm.space.dim == 1);
  // projected standard lattice is generated by one vector of length 1/sqrt 2
  REQUIRE(tm.group.lattice_basis.cols() == 1);
  CHECK(std::abs(tm.group.lattice_basis.col(0).norm() - 1.0 / std::sqrt(2.0)) <
        1e-12);
  // frames are orthonormal and complementary
  CHECK((tm.leaf_frame.transpose() * tm.leaf_frame -
         Eigen::MatrixXd::Identity(1, 1))
            .norm() < 1e-12);
  CHECK((tm.transverse_frame.transpose() * tm.leaf_frame).norm() < 1e-12);
}

TEST_CASE("transverse lattices match brute-force enumeration") {
  for (auto rows : {std::vector<Eigen::VectorXd>{vec2(1, 1)},
                    std::vector<Eigen::VectorXd>{vec2(2, 1)},
                    std::vector<Eigen::VectorXd>{vec2(3, -2)}}) {
    TransverseModel tm = transverse_model(torus_foliation(rows));
    // shortest projected nonzero vector, two independent routes
    Eigen::MatrixXd P = tm.transverse_frame.transpose();
    double brute = brute_force_shortest_projected(P, 6);
    double via_basis = tm.group.lattice_basis.col(0).norm();
    for (Eigen::Index c = 1; c < tm.group.lattice_basis.cols(); ++c)
      via_basis =
          std::min(via_basis, tm.group.lattice_basis.col(c).norm());
    CHECK(via_basis == doctest::Approx(brute).epsilon(1e-10));
    CHECK(shortest_horizontal_length_oracle(torus_foliation(rows)) ==
          doctest::Approx(brute).epsilon(1e-10));
  }
}

TEST_CASE("suspension transverse model is the fiber with cyclic holonomy") {
  SuspensionFoliation f = antipodal_suspension();
  TransverseModel tm = transverse_model(f);
  CHECK(tm.space == f.fiber);
  REQUIRE(tm.group.generators.size() == 1);
  CHECK(is_identity(
      compose(tm.group.generators[0], tm.group.generators[0])));

  SuspensionFoliation wrong = f;
  wrong.order = 3; // h^3 = h != id
  CHECK_THROWS_AS((void)transverse_model(wrong), contract_error);
}

TEST_CASE("parallel transport slides horizontal curves along leaves") {
  auto f = torus_foliation({vec2(1, 1)});
  SpaceId E2 = SpaceId::euclidean(2);
  // horizontal segment in direction (1,-1)/sqrt2
  Eigen::Vector2d h = Eigen::Vector2d(1, -1).normalized();
  DiscreteCurve gamma;
  gamma.space = E2;
  gamma.partition = uniform_partition(0.0, 1.0, 4);
  for (int i = 0; i <= 4; ++i)
    gamma.nodes.push_back({E2, 0.25 * i * h});

  LeafPath beta;
  beta.start = gamma.nodes[0];
  beta.leaf_displacement = vec2(0.5, 0.5);
  auto [moved, beta_out] = parallel_transport(f, beta, gamma);
  // the transported curve is the original shifted along the leaf
  for (int i = 0; i <= 4; ++i)
    CHECK((moved.nodes[i].coords - (gamma.nodes[i].coords +
                                    Eigen::Vector2d(0.5, 0.5)))
              .norm() < 1e-12);
  CHECK(curve_length(moved) == doctest::Approx(curve_length(gamma)));
  // the slid leaf path starts at the curve's endpoint
  CHECK((beta_out.start.coords - gamma.nodes[4].coords).norm() < 1e-12);

  // non-horizontal curves are rejected
  DiscreteCurve slanted = gamma;
  slanted.nodes[2].coords += Eigen::Vector2d(0.2, 0.2);
  CHECK_THROWS_AS((void)parallel_transport(f, beta, slanted), contract_error);
}

TEST_CASE("suspension transport by a full-order winding is the identity") {
  SuspensionFoliation f = antipodal_suspension();
  DiscreteCurve gamma;
  gamma.space = f.fiber;
  gamma.partition = uniform_partition(0.0, 1.0, 3);
  for (int i = 0; i <= 3; ++i) {
    double a = 0.2 * i;
    gamma.nodes.push_back(
        {f.fiber, Eigen::Vector3d(std::cos(a), std::sin(a), 0.0)});
  }
  LeafPath beta;
  beta.start = gamma.nodes[0];
  beta.winding = f.order; // full loop
  auto [moved, beta_out] = parallel_transport(f, beta, gamma);
  CHECK(max_node_displacement(moved, gamma) < 1e-12);

  LeafPath half = beta;
  half.winding = 1;
  auto [flipped, unused] = parallel_transport(f, half, gamma);
  for (int i = 0; i <= 3; ++i)
    CHECK((flipped.nodes[i].coords + gamma.nodes[i].coords).norm() < 1e-12);
}

TEST_CASE("foliated resampling keeps curves horizontal") {
  auto f = torus_foliation({vec2(1, 1)});
  SpaceId E2 = SpaceId::euclidean(2);
  FoliatedPair input;
  input.cls.ambient_class = vec2(1, 0);
  input.curve.space = E2;
  input.curve.partition = uniform_partition(0.0, 1.0, 4);
  // wobbly representative of the e1 class
  input.curve.nodes = {{E2, vec2(0.0, 0.0)},
                       {E2, vec2(0.3, 0.1)},
                       {E2, vec2(0.5, -0.1)},
                       {E2, vec2(0.8, 0.05)},
                       {E2, vec2(1.0, 0.0)}};
  FoliatedPair out =
      f_p_hat(f, input, uniform_partition(0.0, 1.0, 8), 1.0);
  REQUIRE(out.curve.nodes.size() == 9);
  // every segment is orthogonal to the leaf direction (1,1)
  for (int i = 1; i <= 8; ++i) {
    Eigen::VectorXd d = out.curve.nodes[i].coords - out.curve.nodes[i - 1].coords;
    CHECK(std::abs(d.dot(vec2(1, 1).normalized())) < 1e-10);
  }
}

TEST_CASE("horizontal geodesic search: (1,1) foliation gives 1/sqrt 2") {
  auto f = torus_foliation({vec2(1, 1)});
  ClassHint hint;
  hint.ambient_class = vec2(1, 0);
  HorizontalResult res = find_horizontal_periodic_geodesic(f, hint);
  REQUIRE(res.found);
  CHECK(res.transverse.status == RunStatus::NontrivialGeodesic);
  CHECK(res.transverse.certified);
  CHECK(res.transverse.length ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
  CHECK(res.recurrence_residual <= 1e-8);
  // the lifted curve lives upstairs and has the same length
  CHECK(res.lifted.space.dim == 2);
  CHECK(curve_length(res.lifted) ==
        doctest::Approx(res.transverse.length).epsilon(1e-10));
}

TEST_CASE("horizontal geodesic search: (2,1) foliation gives 1/sqrt 5") {
  auto f = torus_foliation({vec2(2, 1)});
  ClassHint hint;
  hint.ambient_class = vec2(1, 0);
  HorizontalResult res = find_horizontal_periodic_geodesic(f, hint);
  REQUIRE(res.found);
  CHECK(res.transverse.length ==
        doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-10));
  CHECK(res.recurrence_residual <= 1e-8);
}

TEST_CASE("horizontal search refuses leafwise classes") {
  auto f = torus_foliation({vec2(1, 1)});
  ClassHint hint;
  hint.ambient_class = vec2(1, 1); // projects to zero
  HorizontalResult res = find_horizontal_periodic_geodesic(f, hint);
  CHECK_FALSE(res.found);
  CHECK_FALSE(res.note.empty());
}

TEST_CASE("suspension search: antipodal holonomy gives length pi") {
  SuspensionFoliation f = antipodal_suspension();
  ClassHint hint;
  hint.winding = 1;
  HorizontalResult res = find_horizontal_periodic_geodesic(f, hint);
  REQUIRE(res.found);
  CHECK(res.transverse.length == doctest::Approx(pi).epsilon(1e-6));
  CHECK(res.recurrence_residual <= 1e-8);
  CHECK(shortest_horizontal_length_oracle(f) ==
        doctest::Approx(pi).epsilon(1e-12));
}

TEST_CASE("suspension search reports fixed-point holonomy powers") {
  SuspensionFoliation f;
  f.fiber = SpaceId::sphere(2);
  // rotation holonomy fixes the poles: no horizontal periodic geodesic
  auto cyc = make_spherical_group(2, SphericalFamily::Cyclic, 4);
  f.holonomy = cyc.generators[0];
  f.order = 4;
  ClassHint hint;
  hint.winding = 1;
  HorizontalResult res = find_horizontal_periodic_geodesic(f, hint);
  CHECK_FALSE(res.found);
  CHECK(res.note.find("fixed") != std::string::npos);
  CHECK(std::isinf(shortest_horizontal_length_oracle(f)));
}

TEST_CASE("irrational-slope foliations are rejected") {
  LinearTorusFoliation f;
  f.n = 2;
  f.leaf_basis.resize(2, 1);
  f.leaf_basis << 1.0, std::sqrt(2.0);
  CHECK_THROWS_AS((void)transverse_model(f), contract_error);
}
