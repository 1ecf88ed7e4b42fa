#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "picub/cubature.hpp"
#include "picub/function_space.hpp"
#include "picub/moments.hpp"

namespace picub {

// Unit-norm a with Phi a = 0, for Phi with N > K columns and full row rank.
// Deterministic sign: the first nonzero entry is positive (which also makes
// max_n a_n > 0, as the elimination step needs). Throws when the factorization
// exposes rank < K or the verification ||Phi a||_inf <= 1e-10 ||Phi|| fails.
Eigen::VectorXd null_vector(const Eigen::MatrixXd& phi);

struct SteinitzState {
  std::vector<Eigen::VectorXd> nodes;
  Eigen::VectorXd weights;   // strictly positive
  Eigen::MatrixXd phi;       // K x N, columns follow nodes
};

struct StepInfo {
  double sigma = 0.0;
  std::vector<int> removed;  // positions in the pre-step arrays
};

// One elimination step: sigma = max_n a_n / w_n, new weights w_n - a_n/sigma.
// The argmax entry is forced to exactly 0; it is removed together with every
// weight that fell to <= zero_tol * max_n w_n (ties legitimately zero several
// weights at once). Surviving weights stay strictly positive and Phi w is
// preserved. The two-argument form draws a from null_vector(phi).
SteinitzState steinitz_step(const SteinitzState& s, double zero_tol = 1e-14,
                            StepInfo* info = nullptr);
SteinitzState steinitz_step(const SteinitzState& s, const Eigen::VectorXd& a,
                            double zero_tol = 1e-14, StepInfo* info = nullptr);

struct ReduceConfig {
  double zero_tol = 1e-14;          // relative to max_n w_n
  bool refine_final = true;         // re-solve on the surviving support
  double max_residual_drift = 0.0;  // 0 selects 1e-8 * (1 + ||m||_inf)
};

struct ReduceTraceRow {
  std::int64_t n_before;
  std::int64_t removed_node;  // original index of the argmax node
  double sigma;
  double residual;            // after the step
  int n_removed;              // including collateral zeros
};

struct ReduceResult {
  Cubature rule;
  std::vector<ReduceTraceRow> trace;
  bool refined = false;
  double residual = 0.0;
};

// Algorithm: prune exact-zero weights, then eliminate until N <= K. Each step
// uses a null vector supported on a window of K+1 active nodes (zero-extended
// it is a null vector of the full matrix, so the update preserves Phi w while
// touching only the window). The residual is tracked every step against the
// drift budget. The optional final refinement re-solves the K x N' system on
// the surviving support and is accepted only if all weights stay positive and
// the residual strictly improves; it never masks an error.
//
// Output: N <= K, all weights > 0, nodes a subset of the input nodes.
ReduceResult reduce(const std::vector<Eigen::VectorXd>& nodes,
                    const Eigen::VectorXd& weights, const FunctionSpace& space,
                    const MomentVector& m, const ReduceConfig& config = {});
ReduceResult reduce(const Cubature& rule, const FunctionSpace& space,
                    const MomentVector& m, const ReduceConfig& config = {});

}  // namespace picub
