#include <doctest.h>

#include <picub/geometry.hpp>

#include <cmath>
#include <random>

using namespace picub;
using Eigen::Vector2d;
using Eigen::Vector3d;
using Eigen::VectorXd;

namespace {

VectorXd vec2(double a, double b) { return Vector2d(a, b); }
VectorXd vec3(double a, double b, double c) { return Vector3d(a, b, c); }

}  // namespace

TEST_CASE("cube basics") {
  Domain c = make_cube(vec2(0.0, 0.0), 1.0);
  CHECK(c.dim() == 2);
  CHECK(c.analytic_volume().has_value());
  CHECK(*c.analytic_volume() == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(c.contains(vec2(0.3, -0.7)));
  CHECK(c.contains(vec2(1.0, 0.0)));  // closed set: boundary is inside
  CHECK(c.contains(vec2(1.0, 1.0)));
  CHECK_FALSE(c.contains(vec2(1.0 + 1e-12, 0.0)));
  CHECK(c.bounding_box().lo == vec2(-1.0, -1.0));
  CHECK(c.bounding_box().hi == vec2(1.0, 1.0));

  Domain off = make_cube(vec2(1.5, 1.5), 0.5);
  CHECK(off.contains(vec2(1.6, 1.6)));
  CHECK_FALSE(off.contains(vec2(0.9, 0.9)));
}

TEST_CASE("ball basics") {
  Domain b2 = make_ball(vec2(0.0, 0.0), 1.0);
  CHECK(*b2.analytic_volume() == doctest::Approx(M_PI).epsilon(1e-15));
  CHECK(b2.contains(vec2(0.8, 0.5)));  // norm < 1
  CHECK(b2.contains(vec2(1.0, 0.0)));
  CHECK_FALSE(b2.contains(vec2(0.8, 0.7)));

  Domain b3 = make_ball(vec3(0.0, 0.0, 0.0), 1.0);
  CHECK(*b3.analytic_volume() == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-15));
  CHECK_FALSE(b3.contains(vec3(1.01, 0.0, 0.0)));
  CHECK(b3.bounding_box().volume() == doctest::Approx(8.0));
}

TEST_CASE("bounding box helpers") {
  Domain b = make_ball(vec2(2.0, -1.0), 0.5);
  const BoundingBox& box = b.bounding_box();
  CHECK(box.lo == vec2(1.5, -1.5));
  CHECK(box.hi == vec2(2.5, -0.5));
  CHECK(box.diameter() == doctest::Approx(std::sqrt(2.0)));
  CHECK(box.contains(vec2(1.5, -0.5)));
  CHECK_FALSE(box.contains(vec2(1.4, -1.0)));
}

TEST_CASE("union of ball and off-center cube") {
  Domain u = make_union(make_ball(vec2(0.0, 0.0), 1.0),
                        make_cube(vec2(1.5, 1.5), 0.5), /*disjoint=*/true);
  CHECK(u.contains(vec2(1.2, 1.2)));   // corner of the cube part
  CHECK_FALSE(u.contains(vec2(0.9, 0.9)));
  CHECK(u.contains(vec2(0.0, 0.0)));
  CHECK(*u.analytic_volume() == doctest::Approx(M_PI + 1.0).epsilon(1e-15));
  CHECK(u.bounding_box().lo == vec2(-1.0, -1.0));
  CHECK(u.bounding_box().hi == vec2(2.0, 2.0));
}

TEST_CASE("union volume only when declared disjoint") {
  Domain a = make_cube(vec2(0.0, 0.0), 1.0);
  Domain b = make_cube(vec2(0.5, 0.5), 1.0);
  CHECK_FALSE(make_union(a, b, /*disjoint=*/false).analytic_volume().has_value());
  CHECK(make_union(a, b, /*disjoint=*/true).analytic_volume().has_value());
}

TEST_CASE("indicator composition is pointwise boolean algebra") {
  Domain a = make_cube(vec2(0.0, 0.0), 1.0);
  Domain b = make_ball(vec2(1.0, 0.0), 1.0);
  Domain u = make_union(a, b, false);
  Domain i = make_intersection(a, b);
  Domain d = make_difference(a, b);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-1.5, 2.5);
  for (int t = 0; t < 500; ++t) {
    VectorXd x = vec2(unif(rng), unif(rng));
    bool in_a = a.contains(x), in_b = b.contains(x);
    CHECK(u.contains(x) == (in_a || in_b));
    CHECK(i.contains(x) == (in_a && in_b));
    CHECK(d.contains(x) == (in_a && !in_b));
  }
}

TEST_CASE("intersection box is the overlap") {
  Domain i = make_intersection(make_cube(vec2(0.0, 0.0), 1.0),
                               make_ball(vec2(1.0, 0.0), 1.0));
  CHECK(i.bounding_box().lo == vec2(0.0, -1.0));
  CHECK(i.bounding_box().hi == vec2(1.0, 1.0));
  CHECK_THROWS_AS(make_intersection(make_cube(vec2(0.0, 0.0), 1.0),
                                    make_cube(vec2(5.0, 5.0), 1.0)),
                  std::invalid_argument);
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(make_cube(vec2(0.0, 0.0), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_ball(vec2(0.0, 0.0), -1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_union(make_cube(vec2(0.0, 0.0), 1.0),
                             make_cube(vec3(0.0, 0.0, 0.0), 1.0), false),
                  std::invalid_argument);
}

TEST_CASE("weight functions") {
  WeightFunction one = WeightFunction::one();
  CHECK(one(vec2(0.3, 0.4)) == 1.0);
  CHECK(one.kind() == WeightFunction::Kind::One);

  WeightFunction sq = WeightFunction::radial_power(0.5);
  CHECK(sq(vec2(3.0, 4.0)) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
  CHECK(sq(vec2(0.0, 0.0)) == 0.0);
  CHECK(sq.exponent() == 0.5);

  WeightFunction bad =
      WeightFunction::custom([](const VectorXd& x) { return x[0]; });
  CHECK(bad(vec2(2.0, 0.0)) == 2.0);
  CHECK_THROWS_AS(bad(vec2(-1.0, 0.0)), std::domain_error);
}

TEST_CASE("domain json round trip") {
  Domain u = make_union(make_ball(vec2(0.0, 0.0), 1.0),
                        make_cube(vec2(1.5, 1.5), 0.5), true);
  Domain u2 = domain_from_json(domain_to_json(u));
  CHECK(u2.dim() == 2);
  CHECK(*u2.analytic_volume() == doctest::Approx(*u.analytic_volume()).epsilon(1e-15));
  CHECK(u2.contains(vec2(1.2, 1.2)));
  CHECK_FALSE(u2.contains(vec2(0.9, 0.9)));

  nlohmann::json j = {{"type", "ball"}, {"center", {0.0, 0.0, 0.0}}, {"radius", 2.0}};
  Domain b = domain_from_json(j);
  CHECK(b.dim() == 3);
  CHECK(*b.analytic_volume() == doctest::Approx(32.0 * M_PI / 3.0));
  CHECK_THROWS(domain_from_json(nlohmann::json{{"type", "pyramid"}}));
}

TEST_CASE("weight json round trip") {
  WeightFunction w = weight_from_json(nlohmann::json{{"type", "radial_power"}, {"exponent", 0.5}});
  CHECK(w(vec3(1.0, 2.0, 2.0)) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  nlohmann::json j = weight_to_json(w);
  CHECK(j.at("type") == "radial_power");
  CHECK(j.at("exponent") == 0.5);
  CHECK(weight_from_json(nlohmann::json{{"type", "one"}}).kind() ==
        WeightFunction::Kind::One);
}
