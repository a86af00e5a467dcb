#include "doctest.h"

#include <cmath>

#include "orbigeo/rng.hpp"
#include "orbigeo/space.hpp"

using namespace orbigeo;

namespace {

const double pi = std::acos(-1.0);

Point random_point(const SpaceId& space, SeededRng& rng) {
  const int n = space.ambient_dim();
  Eigen::VectorXd v(n);
  switch (space.kind) {
  case SpaceKind::Euclidean:
    for (int i = 0; i < n; ++i) v[i] = rng.uniform(-5.0, 5.0);
    return {space, v};
  case SpaceKind::Sphere:
    do {
      for (int i = 0; i < n; ++i) v[i] = rng.uniform(-1.0, 1.0);
    } while (v.norm() < 1e-2);
    return {space, v.normalized()};
  case SpaceKind::Hyperbolic2: {
    double u = rng.uniform(-2.0, 2.0), w = rng.uniform(-2.0, 2.0);
    v << std::sqrt(1.0 + u * u + w * w), u, w;
    return {space, v};
  }
  }
  return {space, v};
}

} // namespace

TEST_CASE("euclidean kernel matches vector arithmetic") {
  SpaceId E = SpaceId::euclidean(3);
  Point p{E, Eigen::Vector3d(1, 2, 3)};
  Point q{E, Eigen::Vector3d(4, 6, 3)};
  CHECK(dist(p, q) == doctest::Approx(5.0).epsilon(1e-15));
  Point mid = geodesic_point(p, q, 0.5);
  CHECK((mid.coords - Eigen::Vector3d(2.5, 4.0, 3.0)).norm() < 1e-15);
  TangentVector v = log_map(p, q);
  CHECK((v.vec - Eigen::Vector3d(3, 4, 0)).norm() < 1e-15);
  CHECK((exp_map(v).coords - q.coords).norm() < 1e-15);
}

TEST_CASE("sphere kernel: distances, slerp, tangency") {
  SpaceId S = SpaceId::sphere(2);
  Point e1{S, Eigen::Vector3d(1, 0, 0)};
  Point e2{S, Eigen::Vector3d(0, 1, 0)};
  CHECK(dist(e1, e2) == doctest::Approx(pi / 2).epsilon(1e-15));

  TangentVector v = log_map(e1, e2);
  CHECK(std::abs(e1.coords.dot(v.vec)) < 1e-14); // tangent at base
  CHECK(tangent_norm(v) == doctest::Approx(pi / 2).epsilon(1e-14));
  CHECK((exp_map(v).coords - e2.coords).norm() < 1e-14);

  Point third = geodesic_point(e1, e2, 1.0 / 3.0);
  CHECK(dist(e1, third) == doctest::Approx(pi / 6).epsilon(1e-12));
  // endpoints are returned exactly
  CHECK((geodesic_point(e1, e2, 1.0).coords - e2.coords).norm() == 0.0);
  CHECK((geodesic_point(e1, e2, 0.0).coords - e1.coords).norm() == 0.0);
}

TEST_CASE("sphere antipodal pairs have distance pi and no unique log") {
  SpaceId S = SpaceId::sphere(2);
  Point p{S, Eigen::Vector3d(0, 0, 1)};
  Point q{S, Eigen::Vector3d(0, 0, -1)};
  CHECK(dist(p, q) == doctest::Approx(pi).epsilon(1e-15));
  CHECK_THROWS_AS((void)log_map(p, q), nonunique_geodesic_error);
  CHECK(uniqueness_radius(S) == doctest::Approx(pi));
}

TEST_CASE("hyperbolic kernel: hyperboloid invariants and boost distances") {
  SpaceId H = SpaceId::hyperbolic2();
  Point origin{H, Eigen::Vector3d(1, 0, 0)};
  // boost of the origin by rapidity t lands at distance t
  for (double t : {0.25, 1.0, 3.0}) {
    Point q{H, Eigen::Vector3d(std::cosh(t), std::sinh(t), 0)};
    CHECK(dist(origin, q) == doctest::Approx(t).epsilon(1e-13));
    TangentVector v = log_map(origin, q);
    CHECK(std::abs(minkowski_dot(origin.coords, v.vec)) < 1e-12);
    CHECK(tangent_norm(v) == doctest::Approx(t).epsilon(1e-13));
    Point back = exp_map(v);
    CHECK((back.coords - q.coords).norm() < 1e-10 * (1.0 + q.coords.norm()));
  }
  CHECK(std::isinf(uniqueness_radius(H)));
}

TEST_CASE("exp/log round trips on 1000 seeded samples per space") {
  for (SpaceId space : {SpaceId::euclidean(2), SpaceId::euclidean(3),
                        SpaceId::sphere(2), SpaceId::hyperbolic2()}) {
    CAPTURE(space.str());
    SeededRng rng(42);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      Point p = random_point(space, rng);
      Point q = random_point(space, rng);
      if (space.kind == SpaceKind::Sphere &&
          dist(p, q) > 0.99 * uniqueness_radius(space))
        continue;
      TangentVector v = log_map(p, q);
      Point back = exp_map(v);
      double scale = 1.0 + q.coords.norm();
      worst = std::max(worst, (back.coords - q.coords).norm() / scale);
      // |log| equals the distance
      worst = std::max(worst,
                       std::abs(tangent_norm(v) - dist(p, q)) / scale);
    }
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("point invariant checking and projection") {
  SpaceId S = SpaceId::sphere(2);
  CHECK(on_space(S, Eigen::Vector3d(0, 1, 0)));
  CHECK_FALSE(on_space(S, Eigen::Vector3d(0, 1.1, 0)));
  Point proj = project_to_space(S, Eigen::Vector3d(0, 2, 0));
  CHECK((proj.coords - Eigen::Vector3d(0, 1, 0)).norm() < 1e-15);

  SpaceId H = SpaceId::hyperbolic2();
  CHECK(on_space(H, Eigen::Vector3d(1, 0, 0)));
  CHECK_FALSE(on_space(H, Eigen::Vector3d(-1, 0, 0))); // lower sheet
  CHECK_FALSE(on_space(H, Eigen::Vector3d(2, 0, 0)));
  Point ph = project_to_space(H, Eigen::Vector3d(1.5, 0.4, 0.1));
  CHECK(on_space(H, ph.coords));

  Point bad{S, Eigen::Vector3d(0, 1.1, 0)};
  CHECK_THROWS_AS(require_point(bad), contract_error);
}

TEST_CASE("tangent angles") {
  SpaceId E = SpaceId::euclidean(2);
  Point p{E, Eigen::Vector2d(0, 0)};
  TangentVector a{p, Eigen::Vector2d(1, 0)};
  TangentVector b{p, Eigen::Vector2d(0, 2)};
  TangentVector c{p, Eigen::Vector2d(-3, 0)};
  TangentVector zero{p, Eigen::Vector2d(0, 0)};
  CHECK(tangent_angle(a, b) == doctest::Approx(pi / 2).epsilon(1e-14));
  CHECK(tangent_angle(a, c) == doctest::Approx(pi).epsilon(1e-14));
  CHECK(tangent_angle(a, a) == doctest::Approx(0.0));
  CHECK(tangent_angle(a, zero) == 0.0); // degenerate vectors carry no angle
}

TEST_CASE("mismatched spaces are rejected") {
  Point p{SpaceId::euclidean(2), Eigen::Vector2d(0, 0)};
  Point q{SpaceId::euclidean(3), Eigen::Vector3d(0, 0, 0)};
  CHECK_THROWS_AS((void)dist(p, q), contract_error);
}
