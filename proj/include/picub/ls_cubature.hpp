#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "picub/function_space.hpp"
#include "picub/geometry.hpp"
#include "picub/moments.hpp"
#include "picub/sequences.hpp"

namespace picub {

// r_n = volume * omega(x_n) / N, the only choice carrying the nonnegativity
// guarantee of the LS weights in the N -> infinity limit.
Eigen::VectorXd discrete_weights(const std::vector<Eigen::VectorXd>& nodes,
                                 const WeightFunction& weight, double volume);

// [u, v]_N = sum_n r_n u_n v_n over node values
double discrete_inner_product(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                              const Eigen::VectorXd& r);

// Discrete orthonormal basis pi_k(.; r) = sum_{l<=k} C(k,l) phi_{l+1} obtained
// by modified Gram-Schmidt in [.,.]_N. `values` holds the pi_k node values
// (row k = C.row(k) * Phi). Breakdown at step k means the nodes with r_n > 0
// fail to be unisolvent for the space (rank(Phi) < K); the doubling loop
// consumes the flag as "grow N".
struct DobFactorization {
  Eigen::MatrixXd C;              // K x K lower triangular, positive diagonal
  Eigen::MatrixXd values;         // K x N
  Eigen::VectorXd step_norms;     // per-step ||pi~_k||_N before normalization
  bool breakdown = false;
  int breakdown_index = -1;       // 0-based offending k
  double orthonormality_defect = 0.0;  // max |[pi_k,pi_l]_N - delta| post hoc
};

// Breakdown test: ||pi~_k||_N <= tol * ||phi_k||_N. A second orthogonalization
// pass runs when the first leaves a defect above 1e-10 (MGS twice).
DobFactorization gram_schmidt_dob(const Eigen::MatrixXd& phi,
                                  const Eigen::VectorXd& r, double tol = 1e-10);

// Explicit LS weights w_n = r_n sum_k pi_k(x_n; r) m~_k with m~ = C m; the
// minimum-||R^{-1/2} w||_2 solution of Phi w = m. Entries with r_n = 0 are
// exactly 0.
Eigen::VectorXd ls_weights(const DobFactorization& dob, const Eigen::MatrixXd& phi,
                           const Eigen::VectorXd& r, const MomentVector& m);

struct LsConfig {
  double rank_tol = 1e-10;
  // negatives above -neg_weight_tol * max_n w_n are clamped to 0, anything
  // below triggers another doubling
  double neg_weight_tol = 1e-12;
  std::int64_t n_cap = 0;         // 0 selects the default 2^20 * K
  double growth_factor = 2.0;
  std::int64_t rejection_cap = 10'000'000;
  std::optional<SequenceKind> sequence;  // default: bisection d<=2, Halton d>=3
  double volume = 0.0;            // 0 selects analytic volume, else QMC estimate
  std::int64_t volume_qmc_samples = std::int64_t{1} << 20;
  bool svd_rank_check = false;    // cross-validate MGS breakdown against an SVD
};

struct LsResult {
  std::vector<Eigen::VectorXd> nodes;
  Eigen::VectorXd weights;        // nonnegative after clamping
  Eigen::VectorXd r;
  Eigen::MatrixXd phi;            // K x N at the final node set
  DobFactorization dob;
  double residual;                // max_k |(Phi w - m)_k|
  std::vector<std::int64_t> n_history;  // doubling trace
  double volume;                  // |Omega| used for r
};

// Algorithm: start at N = K in-domain sequence points; compute r, run the DOB;
// on rank K compute the LS weights; stop once min w >= -tol_neg (clamping the
// tiny negatives to 0), else double N. A hard cap turns a nonterminating loop
// (violated restrictions) into an error carrying the last negative magnitude.
LsResult construct_nonnegative_ls_cf(const Domain& domain,
                                     const WeightFunction& weight,
                                     const FunctionSpace& space,
                                     const MomentVector& m,
                                     const LsConfig& config = {});

}  // namespace picub
