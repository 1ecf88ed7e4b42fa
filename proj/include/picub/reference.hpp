#pragma once

#include <cstdint>
#include <utility>

#include <Eigen/Dense>

#include "picub/cubature.hpp"
#include "picub/geometry.hpp"

namespace picub {

// n-point Gauss-Legendre nodes and weights on [-1, 1] (Golub-Welsch).
std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int n);

// Transformed product Gauss-Legendre rule with n points per axis:
//   cube: tensor product scaled to the box;
//   ball d=2: Gauss-Legendre radius on [0,1] with Jacobian rho, times 2n
//             uniform angles;
//   ball d=3: Gauss-Legendre radius (Jacobian rho^2) and polar cosine, times
//             2n uniform azimuths.
// Exact for constants once n >= 2 (n >= 1 for d = 2); not polynomially exact
// after the transformation. The returned Cubature carries a Custom space
// descriptor and no residual claim. Throws for other domain kinds (and balls
// beyond d = 3).
Cubature gauss_legendre_reference(const Domain& domain, int n);

// node count of gauss_legendre_reference for budget matching:
// n^d, 2n^2, 2n^3 for cube, ball d=2, ball d=3
std::int64_t gauss_legendre_node_count(const Domain& domain, int n);

}  // namespace picub
