#include "picub/moments.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "picub/sequences.hpp"

namespace picub {

namespace {

void check_m1_positive(const MomentVector& m) {
  if (!(m.values[0] > 0.0))
    throw std::runtime_error(
        "I[1] <= 0: the integral is not positive definite on constants");
}

// integral of x^a over [lo, hi]
double power_moment_1d(double lo, double hi, int a) {
  return (std::pow(hi, a + 1) - std::pow(lo, a + 1)) / (a + 1);
}

// integral of e^{2 pi i a x} over [lo, hi]; exactly 0 when a != 0 and
// a (hi - lo) is an integer
std::complex<double> oscillatory_moment_1d(double lo, double hi, int a) {
  if (a == 0) return {hi - lo, 0.0};
  const double cycles = a * (hi - lo);
  if (cycles == std::round(cycles)) return {0.0, 0.0};
  const std::complex<double> i2pa(0.0, 2.0 * std::numbers::pi * a);
  return (std::exp(i2pa * hi) - std::exp(i2pa * lo)) / i2pa;
}

// integral of x^alpha ||x||^p over the origin ball of the given radius:
// 0 for any odd exponent, else S_alpha r^{p+|alpha|+d} / (p+|alpha|+d) with
// S_alpha = 2 prod Gamma((alpha_j+1)/2) / Gamma(sum (alpha_j+1)/2)
double ball_radial_moment(int d, double radius, double p,
                          const Eigen::VectorXi& alpha) {
  for (int j = 0; j < d; ++j)
    if (alpha[j] % 2 != 0) return 0.0;
  double log_s = std::log(2.0);
  double half_sum = 0.0;
  for (int j = 0; j < d; ++j) {
    log_s += std::lgamma(0.5 * (alpha[j] + 1));
    half_sum += 0.5 * (alpha[j] + 1);
  }
  log_s -= std::lgamma(half_sum);
  const double t = p + alpha.sum() + d;
  return std::exp(log_s) * std::pow(radius, t) / t;
}

std::optional<MomentVector> cube_moments(const FunctionSpace& space,
                                         const Domain& domain) {
  const BoundingBox& box = domain.bounding_box();
  const int d = domain.dim();
  MomentVector m;
  m.values.resize(space.dim());
  if (space.kind() == FunctionSpace::Kind::Algebraic) {
    for (int k = 0; k < space.dim(); ++k) {
      const Eigen::VectorXi& alpha = space.multi_indices()[static_cast<std::size_t>(k)];
      double v = 1.0;
      for (int j = 0; j < d; ++j) v *= power_moment_1d(box.lo[j], box.hi[j], alpha[j]);
      m.values[k] = v;
    }
  } else {
    for (int k = 0; k < space.dim(); ++k) {
      const Eigen::VectorXi& alpha = space.multi_indices()[static_cast<std::size_t>(k)];
      std::complex<double> v(1.0, 0.0);
      for (int j = 0; j < d && v != std::complex<double>{}; ++j)
        v *= oscillatory_moment_1d(box.lo[j], box.hi[j], alpha[j]);
      m.values[k] = space.is_sin()[static_cast<std::size_t>(k)] ? v.imag() : v.real();
    }
  }
  m.provenance = MomentVector::Provenance::Analytic;
  m.error_estimate = Eigen::VectorXd::Zero(space.dim());
  return m;
}

std::optional<MomentVector> ball_moments(const FunctionSpace& space,
                                         const Domain& domain, double p) {
  if (!domain.center().isZero(0.0)) return std::nullopt;
  if (p <= -domain.dim())
    throw std::domain_error("radial weight exponent p must exceed -d");
  MomentVector m;
  m.values.resize(space.dim());
  for (int k = 0; k < space.dim(); ++k)
    m.values[k] = ball_radial_moment(
        domain.dim(), domain.radius(), p,
        space.multi_indices()[static_cast<std::size_t>(k)]);
  m.provenance = MomentVector::Provenance::Analytic;
  m.error_estimate = Eigen::VectorXd::Zero(space.dim());
  return m;
}

}  // namespace

std::optional<MomentVector> analytic_moments(const FunctionSpace& space,
                                             const Domain& domain,
                                             const WeightFunction& weight) {
  if (space.ambient_dim() != domain.dim())
    throw std::invalid_argument("space/domain dimension mismatch");
  std::optional<MomentVector> m;
  if (domain.kind() == Domain::Kind::Cube &&
      weight.kind() == WeightFunction::Kind::One &&
      space.kind() != FunctionSpace::Kind::Custom) {
    m = cube_moments(space, domain);
  } else if (domain.kind() == Domain::Kind::Ball &&
             space.kind() == FunctionSpace::Kind::Algebraic) {
    if (weight.kind() == WeightFunction::Kind::One)
      m = ball_moments(space, domain, 0.0);
    else if (weight.kind() == WeightFunction::Kind::RadialPower)
      m = ball_moments(space, domain, weight.exponent());
  }
  if (m) check_m1_positive(*m);
  return m;
}

MomentVector qmc_moments(const FunctionSpace& space, const Domain& domain,
                         const WeightFunction& weight, std::int64_t M) {
  if (space.ambient_dim() != domain.dim())
    throw std::invalid_argument("space/domain dimension mismatch");
  if (M < 10'000)
    throw std::invalid_argument("qmc_moments: M must be at least 10^4");
  const BoundingBox& box = domain.bounding_box();
  const int d = domain.dim();
  const int K = space.dim();
  const double box_volume = box.volume();

  Eigen::VectorXd sums = Eigen::VectorXd::Zero(K);
  // prefix snapshots at M/8, M/4, M/2 for the error estimate
  const std::int64_t p8 = M / 8, p4 = M / 4, p2 = M / 2;
  Eigen::VectorXd s8(K), s4(K), s2(K);
  std::int64_t hits = 0;
  for (std::int64_t n = 1; n <= M; ++n) {
    Eigen::VectorXd x = box.lo + halton(d, n).cwiseProduct(box.hi - box.lo);
    if (domain.contains(x)) {
      ++hits;
      sums += weight(x) * space.eval_all(x);
    }
    if (n == p8) s8 = sums;
    if (n == p4) s4 = sums;
    if (n == p2) s2 = sums;
  }
  if (hits == 0)
    throw std::runtime_error("qmc_moments: no sample hit the domain");

  MomentVector m;
  m.values = sums * (box_volume / static_cast<double>(M));
  Eigen::VectorXd m2 = s2 * (box_volume / static_cast<double>(p2));
  Eigen::VectorXd m4 = s4 * (box_volume / static_cast<double>(p4));
  Eigen::VectorXd m8 = s8 * (box_volume / static_cast<double>(p8));
  m.error_estimate = 2.0 * ((m.values - m2).cwiseAbs() + (m2 - m4).cwiseAbs() +
                            (m4 - m8).cwiseAbs());
  m.provenance = MomentVector::Provenance::Qmc;
  m.qmc_samples = M;
  check_m1_positive(m);
  return m;
}

MomentVector compute_moments(const FunctionSpace& space, const Domain& domain,
                             const WeightFunction& weight, MomentMode mode,
                             std::int64_t qmc_samples) {
  if (mode != MomentMode::Qmc) {
    auto m = analytic_moments(space, domain, weight);
    if (m) return *m;
    if (mode == MomentMode::Analytic)
      throw std::invalid_argument(
          "no analytic moment provider for this domain/weight/space triple");
  }
  return qmc_moments(space, domain, weight, qmc_samples);
}

double domain_volume(const Domain& domain, std::int64_t M) {
  if (domain.analytic_volume()) return *domain.analytic_volume();
  const BoundingBox& box = domain.bounding_box();
  std::int64_t hits = 0;
  for (std::int64_t n = 1; n <= M; ++n) {
    Eigen::VectorXd x =
        box.lo + halton(domain.dim(), n).cwiseProduct(box.hi - box.lo);
    if (domain.contains(x)) ++hits;
  }
  if (hits == 0)
    throw std::runtime_error("domain_volume: no sample hit the domain");
  return box.volume() * static_cast<double>(hits) / static_cast<double>(M);
}

}  // namespace picub
