#include <doctest.h>

#include <picub/moments.hpp>

#include <cmath>

using namespace picub;
using Eigen::Vector2d;
using Eigen::Vector3d;
using Eigen::VectorXd;

TEST_CASE("cube algebraic moments: product power rule") {
  Domain c = make_cube(Vector2d(0.0, 0.0), 1.0);
  auto m = analytic_moments(algebraic_space(2, 2), c, WeightFunction::one());
  REQUIRE(m.has_value());
  REQUIRE(m->size() == 6);
  // basis order 1, x, y, x^2, xy, y^2
  CHECK(m->values[0] == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(m->values[1] == 0.0);
  CHECK(m->values[2] == 0.0);
  CHECK(m->values[3] == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(m->values[4] == 0.0);
  CHECK(m->values[5] == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(m->provenance == MomentVector::Provenance::Analytic);
  CHECK(m->qmc_samples == 0);
  CHECK(m->error_estimate.isZero(0.0));

  // off-center box: integral of x over [1,2]x[1,2] = 3/2
  Domain off = make_cube(Vector2d(1.5, 1.5), 0.5);
  auto mo = analytic_moments(algebraic_space(2, 1), off, WeightFunction::one());
  CHECK(mo->values[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mo->values[1] == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(mo->values[2] == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("cube trigonometric moments vanish on whole periods") {
  // every mode with some alpha_j != 0 has alpha_j * width = integer here
  Domain c = make_cube(Vector2d(0.0, 0.0), 1.0);
  auto m = analytic_moments(trigonometric_space(2, 2), c, WeightFunction::one());
  REQUIRE(m.has_value());
  CHECK(m->values[0] == doctest::Approx(4.0).epsilon(1e-15));
  for (int k = 1; k < m->size(); ++k) CHECK(m->values[k] == 0.0);
}

TEST_CASE("cube trigonometric moments on a fractional-period box") {
  // d=1 box [-0.05, 0.55]: compare against the antiderivative directly
  Domain c = make_cube(VectorXd::Constant(1, 0.25), 0.3);
  auto m = analytic_moments(trigonometric_space(1, 2), c, WeightFunction::one());
  REQUIRE(m.has_value());
  const double lo = -0.05, hi = 0.55;
  auto cos_ref = [&](int a) {
    return (std::sin(2 * M_PI * a * hi) - std::sin(2 * M_PI * a * lo)) / (2 * M_PI * a);
  };
  auto sin_ref = [&](int a) {
    return (std::cos(2 * M_PI * a * lo) - std::cos(2 * M_PI * a * hi)) / (2 * M_PI * a);
  };
  CHECK(m->values[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(m->values[1] == doctest::Approx(cos_ref(1)).epsilon(1e-13));
  CHECK(m->values[2] == doctest::Approx(sin_ref(1)).epsilon(1e-13));
  CHECK(m->values[3] == doctest::Approx(cos_ref(2)).epsilon(1e-13));
  CHECK(m->values[4] == doctest::Approx(sin_ref(2)).epsilon(1e-13));
}

TEST_CASE("ball moments: radial-angular factorization") {
  Domain b2 = make_ball(Vector2d(0.0, 0.0), 1.0);
  FunctionSpace space = algebraic_space(2, 4);
  auto m = analytic_moments(space, b2, WeightFunction::one());
  REQUIRE(m.has_value());
  const auto& a = space.multi_indices();
  for (int k = 0; k < m->size(); ++k) {
    if (a[static_cast<std::size_t>(k)][0] % 2 || a[static_cast<std::size_t>(k)][1] % 2)
      CHECK(m->values[k] == 0.0);
  }
  CHECK(m->values[0] == doctest::Approx(M_PI).epsilon(1e-14));
  // x^2 over the unit disc = pi/4, x^2 y^2 = pi/24
  CHECK(m->values[3] == doctest::Approx(M_PI / 4.0).epsilon(1e-14));
  int k22 = -1;
  for (int k = 0; k < m->size(); ++k)
    if (a[static_cast<std::size_t>(k)][0] == 2 && a[static_cast<std::size_t>(k)][1] == 2) k22 = k;
  REQUIRE(k22 >= 0);
  CHECK(m->values[k22] == doctest::Approx(M_PI / 24.0).epsilon(1e-14));

  // radius scaling: moment of x^2 over radius-2 disc = pi/4 * 2^(2+2)
  Domain big = make_ball(Vector2d(0.0, 0.0), 2.0);
  auto mb = analytic_moments(algebraic_space(2, 2), big, WeightFunction::one());
  CHECK(mb->values[3] == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
}

TEST_CASE("ball moments with the radial weight") {
  Domain b3 = make_ball(Vector3d(0.0, 0.0, 0.0), 1.0);
  WeightFunction w = WeightFunction::radial_power(0.5);
  FunctionSpace space = algebraic_space(3, 2);
  auto m = analytic_moments(space, b3, w);
  REQUIRE(m.has_value());
  // I[1] = surface(S^2) / (1/2 + 3) = 4 pi / 3.5 = 8 pi / 7
  CHECK(m->values[0] == doctest::Approx(8.0 * M_PI / 7.0).epsilon(1e-14));
  // I[x^2] = (4 pi / 3) / 5.5 = 8 pi / 33
  const auto& a = space.multi_indices();
  for (int k = 0; k < m->size(); ++k) {
    const auto& e = a[static_cast<std::size_t>(k)];
    if (e.sum() == 2 && e.maxCoeff() == 2)
      CHECK(m->values[k] == doctest::Approx(8.0 * M_PI / 33.0).epsilon(1e-13));
  }
  CHECK_THROWS_AS(analytic_moments(algebraic_space(3, 1), b3,
                                   WeightFunction::radial_power(-3.0)),
                  std::domain_error);
}

TEST_CASE("analytic moments decline unsupported triples") {
  Domain c = make_cube(Vector2d(0.0, 0.0), 1.0);
  Domain b_off = make_ball(Vector2d(0.5, 0.0), 1.0);
  Domain u = make_union(make_ball(Vector2d(0.0, 0.0), 1.0),
                        make_cube(Vector2d(1.5, 1.5), 0.5), true);
  FunctionSpace alg = algebraic_space(2, 2);
  CHECK_FALSE(analytic_moments(alg, u, WeightFunction::one()).has_value());
  CHECK_FALSE(analytic_moments(alg, b_off, WeightFunction::one()).has_value());
  CHECK_FALSE(analytic_moments(alg, c, WeightFunction::radial_power(1.0)).has_value());
  CHECK_FALSE(analytic_moments(trigonometric_space(2, 1),
                               make_ball(Vector2d(0.0, 0.0), 1.0),
                               WeightFunction::one()).has_value());
}

TEST_CASE("qmc volume estimates") {
  // strip the analytic volume to force the sampling path
  Domain ball = make_ball(Vector2d(0.0, 0.0), 1.0);
  Domain ball_blind(Domain::Kind::Custom, ball.bounding_box(),
                    [ball](const VectorXd& x) { return ball.contains(x); },
                    std::nullopt);
  double v = domain_volume(ball_blind, 1 << 20);
  CHECK(v == doctest::Approx(M_PI).epsilon(5e-3));

  Domain u = make_union(ball, make_cube(Vector2d(1.5, 1.5), 0.5), true);
  Domain u_blind(Domain::Kind::Custom, u.bounding_box(),
                 [u](const VectorXd& x) { return u.contains(x); }, std::nullopt);
  CHECK(domain_volume(u_blind, 1 << 20) ==
        doctest::Approx(M_PI + 1.0).epsilon(5e-3));

  CHECK(domain_volume(make_cube(Vector2d(0.0, 0.0), 1.0)) == 4.0);
}

TEST_CASE("qmc moments agree with analytic within the error estimate") {
  struct Case {
    Domain dom;
    FunctionSpace space;
    WeightFunction w;
  };
  Domain c2 = make_cube(Vector2d(0.0, 0.0), 1.0);
  Domain b2 = make_ball(Vector2d(0.0, 0.0), 1.0);
  Domain b3 = make_ball(Vector3d(0.0, 0.0, 0.0), 1.0);
  std::vector<Case> cases;
  cases.push_back({c2, algebraic_space(2, 4), WeightFunction::one()});
  cases.push_back({c2, trigonometric_space(2, 2), WeightFunction::one()});
  cases.push_back({b2, algebraic_space(2, 4), WeightFunction::one()});
  cases.push_back({b2, algebraic_space(2, 4), WeightFunction::radial_power(0.5)});
  cases.push_back({b3, algebraic_space(3, 4), WeightFunction::one()});
  cases.push_back({b3, algebraic_space(3, 4), WeightFunction::radial_power(0.5)});
  for (const auto& tc : cases) {
    auto exact = analytic_moments(tc.space, tc.dom, tc.w);
    REQUIRE(exact.has_value());
    MomentVector q = qmc_moments(tc.space, tc.dom, tc.w, std::int64_t{1} << 20);
    CHECK(q.provenance == MomentVector::Provenance::Qmc);
    CHECK(q.qmc_samples == std::int64_t{1} << 20);
    for (int k = 0; k < q.size(); ++k) {
      CAPTURE(tc.space.descriptor());
      CAPTURE(k);
      CHECK(std::abs(q.values[k] - exact->values[k]) <=
            q.error_estimate[k] + 1e-12);
    }
  }
}

TEST_CASE("qmc moments preconditions") {
  Domain c = make_cube(Vector2d(0.0, 0.0), 1.0);
  FunctionSpace s = algebraic_space(2, 1);
  CHECK_THROWS_AS(qmc_moments(s, c, WeightFunction::one(), 9999),
                  std::invalid_argument);
  Domain empty(Domain::Kind::Custom, c.bounding_box(),
               [](const VectorXd&) { return false; }, std::nullopt);
  CHECK_THROWS_AS(qmc_moments(s, empty, WeightFunction::one(), 10000),
                  std::runtime_error);
}

TEST_CASE("compute_moments mode dispatch") {
  Domain c = make_cube(Vector2d(0.0, 0.0), 1.0);
  Domain u = make_union(make_ball(Vector2d(0.0, 0.0), 1.0),
                        make_cube(Vector2d(1.5, 1.5), 0.5), true);
  FunctionSpace s = algebraic_space(2, 1);
  WeightFunction one = WeightFunction::one();

  CHECK(compute_moments(s, c, one).provenance == MomentVector::Provenance::Analytic);
  MomentVector mu = compute_moments(s, u, one, MomentMode::Auto, 1 << 16);
  CHECK(mu.provenance == MomentVector::Provenance::Qmc);
  CHECK(mu.qmc_samples == (1 << 16));
  CHECK_THROWS_AS(compute_moments(s, u, one, MomentMode::Analytic),
                  std::invalid_argument);
  MomentVector mq = compute_moments(s, c, one, MomentMode::Qmc, 1 << 16);
  CHECK(mq.provenance == MomentVector::Provenance::Qmc);
  CHECK(mq.values[0] == doctest::Approx(4.0).epsilon(1e-12));
}
