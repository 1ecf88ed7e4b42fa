#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "picub/geometry.hpp"

namespace picub {

// Ordered basis phi_1..phi_K of the exactness space, phi_1 == 1 always.
// Immutable; evaluators must be pure (safe concurrent reads).
//
// Algebraic: monomials x^alpha, |alpha| <= m, graded order, lexicographically
// descending inside a degree block ((1,0) before (0,1)), constant first.
// Trigonometric: {1} and cos(2 pi a.x), sin(2 pi a.x) for one canonical
// representative a per +-a pair (first nonzero entry positive), 0 < |a| <= m,
// graded order, cos before sin. K comes from enumerating this basis; no
// closed form is claimed.
class FunctionSpace {
 public:
  enum class Kind { Algebraic, Trigonometric, Custom };
  using Evaluator = std::function<double(const Eigen::VectorXd&)>;

  Kind kind() const { return kind_; }
  int ambient_dim() const { return d_; }
  int degree() const { return m_; }
  int dim() const { return K_; }  // K

  double eval(int k, const Eigen::VectorXd& x) const;  // phi_{k+1}, 0-based k
  Eigen::VectorXd eval_all(const Eigen::VectorXd& x) const;

  // Multi-index structure backing the analytic moment providers: monomial
  // exponents for Algebraic, frequency vectors for Trigonometric (paired with
  // is_sin). Empty for Custom.
  const std::vector<Eigen::VectorXi>& multi_indices() const { return alpha_; }
  const std::vector<bool>& is_sin() const { return sin_; }

  std::string descriptor() const;

 private:
  friend FunctionSpace algebraic_space(int, int);
  friend FunctionSpace trigonometric_space(int, int);
  friend FunctionSpace custom_space(int, std::vector<Evaluator>, const Domain&);

  FunctionSpace() = default;

  Kind kind_ = Kind::Custom;
  int d_ = 0;
  int m_ = 0;
  int K_ = 0;
  std::vector<Eigen::VectorXi> alpha_;
  std::vector<bool> sin_;
  std::vector<Evaluator> custom_;
};

// Total-degree polynomial space, K = binom(m+d, d).
FunctionSpace algebraic_space(int d, int m);

// Real trigonometric space of total degree m, period 1 per unit coordinate.
FunctionSpace trigonometric_space(int d, int m);

// Wraps caller-supplied evaluators. The first must be the constant 1; this is
// spot-checked at 8 in-domain Halton points of check_domain.
FunctionSpace custom_space(int d, std::vector<FunctionSpace::Evaluator> evaluators,
                           const Domain& check_domain);

// K x N matrix Phi with Phi(k, n) = phi_{k+1}(x_n). Row 0 is all ones.
// Throws if any evaluator returns a non-finite value (message names the node).
Eigen::MatrixXd vandermonde(const FunctionSpace& space,
                            const std::vector<Eigen::VectorXd>& nodes);

}  // namespace picub
