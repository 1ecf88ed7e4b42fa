#include "picub/sequences.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace picub {

namespace {

constexpr int kMaxHaltonDim = 16;
constexpr int kPrimes[kMaxHaltonDim] = {2,  3,  5,  7,  11, 13, 17, 19,
                                        23, 29, 31, 37, 41, 43, 47, 53};

double radical_inverse(std::int64_t n, int base) {
  double f = 1.0, r = 0.0;
  while (n > 0) {
    f /= base;
    r += f * static_cast<double>(n % base);
    n /= base;
  }
  return r;
}

bool all_even(const std::vector<std::int64_t>& idx) {
  return std::all_of(idx.begin(), idx.end(),
                     [](std::int64_t j) { return j % 2 == 0; });
}

// Advances the level/odometer state to the next tuple of the tensor sequence.
// Level 0 runs over {0,1}^d (the corners); level L >= 1 runs over {0..2^L}^d
// skipping all-even tuples (those already emitted at coarser levels). The last
// axis moves fastest, so tuples inside a level come out in lexicographic
// order, which is also coordinate-lexicographic since index maps monotonically
// to coordinate.
void grid_advance(int d, int& level, std::vector<std::int64_t>& idx) {
  do {
    std::int64_t max_idx = level == 0 ? 1 : (std::int64_t{1} << level);
    int axis = d - 1;
    while (axis >= 0) {
      if (++idx[axis] <= max_idx) break;
      idx[axis] = 0;
      --axis;
    }
    if (axis < 0) {
      ++level;
      if (level > 60) throw std::overflow_error("bisection grid level overflow");
      std::fill(idx.begin(), idx.end(), 0);
    }
  } while (level >= 1 && all_even(idx));
}

Eigen::VectorXd grid_point(const BoundingBox& box, int level,
                           const std::vector<std::int64_t>& idx) {
  const int d = box.dim();
  const double denom =
      level == 0 ? 1.0 : static_cast<double>(std::int64_t{1} << level);
  Eigen::VectorXd x(d);
  for (int i = 0; i < d; ++i)
    x[i] = box.lo[i] + static_cast<double>(idx[i]) * (box.hi[i] - box.lo[i]) / denom;
  return x;
}

}  // namespace

double bisection_1d(double R, std::int64_t n) {
  if (R <= 0.0) throw std::invalid_argument("bisection_1d: R must be positive");
  if (n < 1) throw std::invalid_argument("bisection_1d: n must be >= 1");
  if (n == 1) return -R;
  if (n == 2) return R;
  // smallest L >= 1 with n <= 2^L + 1, then the j-th midpoint of that level
  int L = 1;
  while ((std::int64_t{1} << L) + 1 < n) ++L;
  std::int64_t j = n - ((std::int64_t{1} << (L - 1)) + 1);
  return -R + static_cast<double>(2 * j - 1) * R /
                  static_cast<double>(std::int64_t{1} << (L - 1));
}

Eigen::VectorXd bisection_grid(double R, int d, std::int64_t n) {
  if (R <= 0.0) throw std::invalid_argument("bisection_grid: R must be positive");
  if (d < 1) throw std::invalid_argument("bisection_grid: d must be >= 1");
  if (n < 1) throw std::invalid_argument("bisection_grid: n must be >= 1");
  BoundingBox box{Eigen::VectorXd::Constant(d, -R), Eigen::VectorXd::Constant(d, R)};
  int level = 0;
  std::vector<std::int64_t> idx(d, 0);
  for (std::int64_t i = 1; i < n; ++i) grid_advance(d, level, idx);
  return grid_point(box, level, idx);
}

Eigen::VectorXd halton(int d, std::int64_t n) {
  if (d < 1 || d > kMaxHaltonDim)
    throw std::invalid_argument("halton: d must be in 1.." +
                                std::to_string(kMaxHaltonDim));
  if (n < 1) throw std::invalid_argument("halton: n must be >= 1");
  Eigen::VectorXd u(d);
  for (int i = 0; i < d; ++i) u[i] = radical_inverse(n, kPrimes[i]);
  return u;
}

SequenceKind default_sequence_kind(int d) {
  return d <= 2 ? SequenceKind::Bisection : SequenceKind::Halton;
}

PointSequence::PointSequence(SequenceKind kind, Domain domain,
                             std::int64_t rejection_cap)
    : kind_(kind),
      domain_(std::move(domain)),
      cap_(rejection_cap),
      grid_idx_(domain_.dim(), 0) {
  if (cap_ < 1) throw std::invalid_argument("rejection cap must be >= 1");
}

Eigen::VectorXd PointSequence::next_ambient() {
  ++ambient_count_;
  if (kind_ == SequenceKind::Halton) {
    const BoundingBox& box = domain_.bounding_box();
    Eigen::VectorXd u = halton(domain_.dim(), ambient_count_);
    return box.lo + u.cwiseProduct(box.hi - box.lo);
  }
  Eigen::VectorXd x = grid_point(domain_.bounding_box(), level_, grid_idx_);
  grid_advance(domain_.dim(), level_, grid_idx_);
  return x;
}

Eigen::VectorXd PointSequence::next() {
  for (std::int64_t draws = 0; draws < cap_;) {
    Eigen::VectorXd p = next_ambient();
    ++draws;
    if (domain_.contains(p)) return p;
  }
  throw std::runtime_error(
      "rejection cap (" + std::to_string(cap_) +
      " ambient draws) exceeded without an in-domain point; "
      "degenerate domain or indicator");
}

std::vector<Eigen::VectorXd> PointSequence::take(std::int64_t count) {
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
  for (std::int64_t i = 0; i < count; ++i) pts.push_back(next());
  return pts;
}

std::vector<Eigen::VectorXd> first_n_in_domain(SequenceKind kind,
                                               const Domain& domain,
                                               std::int64_t N,
                                               std::int64_t rejection_cap) {
  if (N < 1) throw std::invalid_argument("first_n_in_domain: N must be >= 1");
  PointSequence seq(kind, domain, rejection_cap);
  return seq.take(N);
}

}  // namespace picub
