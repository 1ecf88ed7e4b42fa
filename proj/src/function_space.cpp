#include "picub/function_space.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "picub/sequences.hpp"

namespace picub {

namespace {

// exponent vectors of total degree exactly t, lexicographically descending
void monomials_of_degree(int d, int t, int slot, Eigen::VectorXi& work,
                         std::vector<Eigen::VectorXi>& out) {
  if (slot == d - 1) {
    work[slot] = t;
    out.push_back(work);
    return;
  }
  for (int a = t; a >= 0; --a) {
    work[slot] = a;
    monomials_of_degree(d, t - a, slot + 1, work, out);
  }
}

// signed frequency vectors with |a|_1 = t, first entry largest first; the
// canonical filter (first nonzero positive) is applied by the caller
void frequencies_of_degree(int d, int t, int slot, Eigen::VectorXi& work,
                           std::vector<Eigen::VectorXi>& out) {
  if (slot == d - 1) {
    if (t == 0) {
      work[slot] = 0;
      out.push_back(work);
    } else {
      work[slot] = t;
      out.push_back(work);
      work[slot] = -t;
      out.push_back(work);
    }
    return;
  }
  for (int a = t; a >= -t; --a) {
    work[slot] = a;
    frequencies_of_degree(d, t - std::abs(a), slot + 1, work, out);
  }
}

bool canonical(const Eigen::VectorXi& a) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] > 0) return true;
    if (a[i] < 0) return false;
  }
  return false;  // zero vector is handled separately
}

double monomial(const Eigen::VectorXi& alpha, const Eigen::VectorXd& x) {
  double v = 1.0;
  for (int i = 0; i < alpha.size(); ++i)
    for (int p = 0; p < alpha[i]; ++p) v *= x[i];
  return v;
}

}  // namespace

double FunctionSpace::eval(int k, const Eigen::VectorXd& x) const {
  if (k < 0 || k >= K_) throw std::out_of_range("basis index out of range");
  if (x.size() != d_) throw std::invalid_argument("point dimension mismatch");
  switch (kind_) {
    case Kind::Algebraic:
      return monomial(alpha_[static_cast<std::size_t>(k)], x);
    case Kind::Trigonometric: {
      if (k == 0) return 1.0;
      const auto& a = alpha_[static_cast<std::size_t>(k)];
      double t = 2.0 * std::numbers::pi * a.cast<double>().dot(x);
      return sin_[static_cast<std::size_t>(k)] ? std::sin(t) : std::cos(t);
    }
    case Kind::Custom:
      return custom_[static_cast<std::size_t>(k)](x);
  }
  throw std::logic_error("unreachable");
}

Eigen::VectorXd FunctionSpace::eval_all(const Eigen::VectorXd& x) const {
  Eigen::VectorXd v(K_);
  for (int k = 0; k < K_; ++k) v[k] = eval(k, x);
  return v;
}

std::string FunctionSpace::descriptor() const {
  switch (kind_) {
    case Kind::Algebraic:
      return "algebraic d=" + std::to_string(d_) + " m=" + std::to_string(m_);
    case Kind::Trigonometric:
      return "trigonometric d=" + std::to_string(d_) + " m=" + std::to_string(m_);
    case Kind::Custom:
      return "custom d=" + std::to_string(d_) + " K=" + std::to_string(K_);
  }
  return "?";
}

FunctionSpace algebraic_space(int d, int m) {
  if (d < 1) throw std::invalid_argument("algebraic_space: d must be >= 1");
  if (m < 0) throw std::invalid_argument("algebraic_space: m must be >= 0");
  FunctionSpace s;
  s.kind_ = FunctionSpace::Kind::Algebraic;
  s.d_ = d;
  s.m_ = m;
  Eigen::VectorXi work(d);
  for (int t = 0; t <= m; ++t) monomials_of_degree(d, t, 0, work, s.alpha_);
  s.K_ = static_cast<int>(s.alpha_.size());
  return s;
}

FunctionSpace trigonometric_space(int d, int m) {
  if (d < 1) throw std::invalid_argument("trigonometric_space: d must be >= 1");
  if (m < 0) throw std::invalid_argument("trigonometric_space: m must be >= 0");
  FunctionSpace s;
  s.kind_ = FunctionSpace::Kind::Trigonometric;
  s.d_ = d;
  s.m_ = m;
  s.alpha_.push_back(Eigen::VectorXi::Zero(d));  // constant
  s.sin_.push_back(false);
  Eigen::VectorXi work(d);
  for (int t = 1; t <= m; ++t) {
    std::vector<Eigen::VectorXi> freqs;
    frequencies_of_degree(d, t, 0, work, freqs);
    for (const auto& a : freqs) {
      if (!canonical(a)) continue;
      s.alpha_.push_back(a);
      s.sin_.push_back(false);
      s.alpha_.push_back(a);
      s.sin_.push_back(true);
    }
  }
  s.K_ = static_cast<int>(s.alpha_.size());
  return s;
}

FunctionSpace custom_space(int d, std::vector<FunctionSpace::Evaluator> evaluators,
                           const Domain& check_domain) {
  if (d < 1) throw std::invalid_argument("custom_space: d must be >= 1");
  if (evaluators.empty())
    throw std::invalid_argument("custom_space: need at least one evaluator");
  for (const auto& f : evaluators)
    if (!f) throw std::invalid_argument("custom_space: null evaluator");
  if (check_domain.dim() != d)
    throw std::invalid_argument("custom_space: check domain dimension mismatch");
  // contract: the leading evaluator is the constant 1
  auto probes = first_n_in_domain(SequenceKind::Halton, check_domain, 8);
  for (const auto& x : probes)
    if (std::abs(evaluators.front()(x) - 1.0) > 1e-12)
      throw std::invalid_argument(
          "custom_space: first evaluator is not the constant 1");
  FunctionSpace s;
  s.kind_ = FunctionSpace::Kind::Custom;
  s.d_ = d;
  s.m_ = -1;
  s.custom_ = std::move(evaluators);
  s.K_ = static_cast<int>(s.custom_.size());
  return s;
}

Eigen::MatrixXd vandermonde(const FunctionSpace& space,
                            const std::vector<Eigen::VectorXd>& nodes) {
  if (nodes.empty()) throw std::invalid_argument("vandermonde: no nodes");
  const int K = space.dim();
  const int N = static_cast<int>(nodes.size());
  Eigen::MatrixXd phi(K, N);
  for (int n = 0; n < N; ++n) {
    for (int k = 0; k < K; ++k) {
      double v = space.eval(k, nodes[static_cast<std::size_t>(n)]);
      if (!std::isfinite(v))
        throw std::runtime_error("basis evaluator " + std::to_string(k + 1) +
                                 " returned a non-finite value at node " +
                                 std::to_string(n + 1));
      phi(k, n) = v;
    }
  }
  return phi;
}

}  // namespace picub
