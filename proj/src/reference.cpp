#include "picub/reference.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace picub {

std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  if (n == 1)
    return {Eigen::VectorXd::Zero(1), Eigen::VectorXd::Constant(1, 2.0)};
  // Jacobi matrix of the Legendre recurrence: beta_j = j / sqrt(4 j^2 - 1)
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (int j = 1; j < n; ++j)
    sub[j - 1] = j / std::sqrt(4.0 * j * j - 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  Eigen::VectorXd nodes = es.eigenvalues();
  Eigen::VectorXd weights = 2.0 * es.eigenvectors().row(0).transpose().cwiseAbs2();
  return {nodes, weights};
}

namespace {

Cubature wrap_reference(int d, std::vector<Eigen::VectorXd> nodes,
                        Eigen::VectorXd weights) {
  Cubature cf;
  cf.dimension = d;
  cf.nodes = std::move(nodes);
  cf.weights = std::move(weights);
  cf.space = {FunctionSpace::Kind::Custom, -1, 0};
  cf.moment_provenance = MomentVector::Provenance::Analytic;
  cf.residual = 0.0;
  return cf;
}

Cubature cube_reference(const Domain& domain, int n) {
  const int d = domain.dim();
  auto [xi, wi] = gauss_legendre(n);
  const Eigen::VectorXd& c = domain.center();
  const double h = domain.radius();
  std::vector<Eigen::VectorXd> nodes;
  Eigen::VectorXd weights(static_cast<Eigen::Index>(std::pow(n, d)));
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  Eigen::Index count = 0;
  for (;;) {
    Eigen::VectorXd x(d);
    double w = 1.0;
    for (int j = 0; j < d; ++j) {
      x[j] = c[j] + h * xi[idx[static_cast<std::size_t>(j)]];
      w *= h * wi[idx[static_cast<std::size_t>(j)]];
    }
    nodes.push_back(x);
    weights[count++] = w;
    int axis = d - 1;
    while (axis >= 0 && ++idx[static_cast<std::size_t>(axis)] == n) {
      idx[static_cast<std::size_t>(axis)] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return wrap_reference(d, std::move(nodes), std::move(weights));
}

Cubature ball2_reference(const Domain& domain, int n) {
  auto [xi, wi] = gauss_legendre(n);
  const Eigen::VectorXd& c = domain.center();
  const double r = domain.radius();
  const int n_theta = 2 * n;
  std::vector<Eigen::VectorXd> nodes;
  Eigen::VectorXd weights(static_cast<Eigen::Index>(n) * n_theta);
  Eigen::Index count = 0;
  for (int i = 0; i < n; ++i) {
    const double u = 0.5 * (xi[i] + 1.0);   // radius fraction in (0,1)
    const double wu = 0.5 * wi[i];
    for (int j = 0; j < n_theta; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / n_theta;
      Eigen::VectorXd x(2);
      x[0] = c[0] + r * u * std::cos(theta);
      x[1] = c[1] + r * u * std::sin(theta);
      nodes.push_back(x);
      weights[count++] = r * r * wu * u * (2.0 * std::numbers::pi / n_theta);
    }
  }
  return wrap_reference(2, std::move(nodes), std::move(weights));
}

Cubature ball3_reference(const Domain& domain, int n) {
  auto [xi, wi] = gauss_legendre(n);
  const Eigen::VectorXd& c = domain.center();
  const double r = domain.radius();
  const int n_phi = 2 * n;
  std::vector<Eigen::VectorXd> nodes;
  Eigen::VectorXd weights(static_cast<Eigen::Index>(n) * n * n_phi);
  Eigen::Index count = 0;
  for (int i = 0; i < n; ++i) {
    const double u = 0.5 * (xi[i] + 1.0);
    const double wu = 0.5 * wi[i];
    for (int k = 0; k < n; ++k) {
      const double s = xi[k];               // polar cosine on [-1,1]
      const double ring = std::sqrt(1.0 - s * s);
      for (int j = 0; j < n_phi; ++j) {
        const double phi = 2.0 * std::numbers::pi * j / n_phi;
        Eigen::VectorXd x(3);
        x[0] = c[0] + r * u * ring * std::cos(phi);
        x[1] = c[1] + r * u * ring * std::sin(phi);
        x[2] = c[2] + r * u * s;
        nodes.push_back(x);
        weights[count++] = r * r * r * wu * u * u * wi[k] *
                           (2.0 * std::numbers::pi / n_phi);
      }
    }
  }
  return wrap_reference(3, std::move(nodes), std::move(weights));
}

}  // namespace

Cubature gauss_legendre_reference(const Domain& domain, int n) {
  if (n < 1)
    throw std::invalid_argument("gauss_legendre_reference: n must be >= 1");
  if (domain.kind() == Domain::Kind::Cube) return cube_reference(domain, n);
  if (domain.kind() == Domain::Kind::Ball) {
    if (domain.dim() == 2) return ball2_reference(domain, n);
    if (domain.dim() == 3) return ball3_reference(domain, n);
    throw std::invalid_argument(
        "gauss_legendre_reference: balls supported for d = 2, 3 only");
  }
  throw std::invalid_argument(
      "gauss_legendre_reference: unsupported domain kind");
}

std::int64_t gauss_legendre_node_count(const Domain& domain, int n) {
  const auto nn = static_cast<std::int64_t>(n);
  if (domain.kind() == Domain::Kind::Cube) {
    std::int64_t c = 1;
    for (int j = 0; j < domain.dim(); ++j) c *= nn;
    return c;
  }
  if (domain.kind() == Domain::Kind::Ball) {
    if (domain.dim() == 2) return 2 * nn * nn;
    if (domain.dim() == 3) return 2 * nn * nn * nn;
  }
  throw std::invalid_argument("gauss_legendre_node_count: unsupported domain");
}

}  // namespace picub
