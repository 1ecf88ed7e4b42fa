#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "picub/geometry.hpp"

namespace picub {

// n-th element (n >= 1) of the 1-D bisection sequence on [-R, R]:
// endpoints, then midpoints of all neighboring pairs, level by level:
//   -R, R, 0, -R/2, R/2, -3R/4, -R/4, R/4, 3R/4, ...
double bisection_1d(double R, std::int64_t n);

// n-th point of the d-dimensional tensor version on [-R, R]^d. Completed
// refinement levels are emitted in order; inside a level points are sorted
// lexicographically by coordinate value.
Eigen::VectorXd bisection_grid(double R, int d, std::int64_t n);

// n-th Halton point in (0,1)^d, coordinate j = radical inverse of n in the
// j-th prime base. d is limited by the precomputed prime table (16).
Eigen::VectorXd halton(int d, std::int64_t n);

enum class SequenceKind { Bisection, Halton };

// bisection for d <= 2, Halton for d >= 3
SequenceKind default_sequence_kind(int d);

// Deterministic cursor over the ambient sequence restricted to the domain by
// indicator rejection. The ambient sequence lives on the domain's bounding box
// (per-axis affine image of [-1,1]^d for bisection, of (0,1)^d for Halton).
// Two cursors over the same (kind, domain) yield identical prefixes.
//
// The rejection cap bounds consecutive ambient draws per emitted point; hitting
// it signals a degenerate domain/indicator rather than looping forever.
//
// Single-owner: a cursor is not safe for concurrent mutation, but distinct
// cursors may run in parallel.
class PointSequence {
 public:
  PointSequence(SequenceKind kind, Domain domain,
                std::int64_t rejection_cap = 10'000'000);

  Eigen::VectorXd next();
  std::vector<Eigen::VectorXd> take(std::int64_t count);

  SequenceKind kind() const { return kind_; }
  const Domain& domain() const { return domain_; }
  std::int64_t ambient_count() const { return ambient_count_; }

 private:
  Eigen::VectorXd next_ambient();

  SequenceKind kind_;
  Domain domain_;
  std::int64_t cap_;
  std::int64_t ambient_count_ = 0;
  // bisection odometer state: level and per-axis grid indices 0..2^level
  int level_ = 0;
  std::vector<std::int64_t> grid_idx_;
  bool level_exhausted_ = false;
};

// First N in-domain points from a fresh cursor. first_n_in_domain(k, d, N) is
// always a prefix of first_n_in_domain(k, d, N+1).
std::vector<Eigen::VectorXd> first_n_in_domain(
    SequenceKind kind, const Domain& domain, std::int64_t N,
    std::int64_t rejection_cap = 10'000'000);

}  // namespace picub
