#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "picub/function_space.hpp"
#include "picub/geometry.hpp"

namespace picub {

// m_k = I[phi_k] for the active basis, with accuracy tag. m_1 = I[1] > 0 is
// enforced by both providers (the integral must be positive definite on
// constants; a violation aborts the run).
struct MomentVector {
  enum class Provenance { Analytic, Qmc };

  Eigen::VectorXd values;
  Provenance provenance = Provenance::Analytic;
  std::int64_t qmc_samples = 0;        // 0 for analytic
  Eigen::VectorXd error_estimate;      // zero for analytic

  int size() const { return static_cast<int>(values.size()); }
};

// Closed-form moments where available:
//   cube, omega == 1, algebraic      (product power rule over the box)
//   cube, omega == 1, trigonometric  (complex product per axis; a mode is
//                                     exactly 0 when some alpha_j != 0 has
//                                     alpha_j * width_j integral)
//   origin ball, omega == 1 or ||x||_2^p with p > -d, algebraic
//                                    (radial-angular factorization)
// Returns std::nullopt for every other triple.
std::optional<MomentVector> analytic_moments(const FunctionSpace& space,
                                             const Domain& domain,
                                             const WeightFunction& weight);

// m_k ~ (|box|/M) sum over M Halton box points of 1_domain(x) w(x) phi_k(x).
// Per-component error estimate from comparing the M, M/2, M/4, M/8 prefixes:
//   est_k = 2 (|m_M - m_{M/2}| + |m_{M/2} - m_{M/4}| + |m_{M/4} - m_{M/8}|).
// Requires M >= 10^4; throws if no sample lands in the domain.
MomentVector qmc_moments(const FunctionSpace& space, const Domain& domain,
                         const WeightFunction& weight, std::int64_t M);

enum class MomentMode { Auto, Analytic, Qmc };

// Auto prefers the analytic provider and falls back to QMC; Analytic throws
// std::invalid_argument when no closed form covers the triple.
MomentVector compute_moments(const FunctionSpace& space, const Domain& domain,
                             const WeightFunction& weight,
                             MomentMode mode = MomentMode::Auto,
                             std::int64_t qmc_samples = std::int64_t{1} << 20);

// Analytic volume when the domain carries one, else the QMC estimate of
// integral of 1 over the domain.
double domain_volume(const Domain& domain, std::int64_t M = std::int64_t{1} << 20);

}  // namespace picub
