#include "picub/steinitz.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace picub {

namespace {

void fix_sign(Eigen::VectorXd& a) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] != 0.0) {
      if (a[i] < 0.0) a = -a;
      return;
    }
  }
  throw std::runtime_error("null vector is identically zero");
}

// orthogonal-complement vector of the column span of phi^T, i.e. a null
// vector of phi; valid for any K x W phi with W > K
Eigen::VectorXd qr_null_vector(const Eigen::MatrixXd& phi) {
  const auto W = phi.cols();
  const auto K = phi.rows();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(phi.transpose());
  Eigen::VectorXd a = qr.householderQ() * Eigen::VectorXd::Unit(W, K);
  fix_sign(a);
  if ((phi * a).lpNorm<Eigen::Infinity>() > 1e-10 * std::max(1.0, phi.norm()))
    throw std::runtime_error("null vector verification failed");
  return a;
}

}  // namespace

Eigen::VectorXd null_vector(const Eigen::MatrixXd& phi) {
  const auto N = phi.cols();
  const auto K = phi.rows();
  if (N <= K)
    throw std::invalid_argument("null_vector: need more nodes than basis functions");
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(phi.transpose());
  // rank deficiency is inconsistent with the precondition rank(phi) = K
  Eigen::VectorXd diag = qr.matrixQR().topRows(K).diagonal().cwiseAbs();
  if (!(diag.minCoeff() > 1e-10 * diag.maxCoeff()))
    throw std::runtime_error("null_vector: phi is rank deficient");
  Eigen::VectorXd a = qr.householderQ() * Eigen::VectorXd::Unit(N, K);
  fix_sign(a);
  if ((phi * a).lpNorm<Eigen::Infinity>() > 1e-10 * std::max(1.0, phi.norm()))
    throw std::runtime_error("null_vector: verification failed");
  return a;
}

SteinitzState steinitz_step(const SteinitzState& s, double zero_tol,
                            StepInfo* info) {
  return steinitz_step(s, null_vector(s.phi), zero_tol, info);
}

SteinitzState steinitz_step(const SteinitzState& s, const Eigen::VectorXd& a,
                            double zero_tol, StepInfo* info) {
  const auto N = s.weights.size();
  if (static_cast<Eigen::Index>(s.nodes.size()) != N || s.phi.cols() != N)
    throw std::invalid_argument("steinitz_step: inconsistent state sizes");
  if (a.size() != N)
    throw std::invalid_argument("steinitz_step: null vector length mismatch");
  if (!(s.weights.array() > 0.0).all())
    throw std::invalid_argument("steinitz_step: weights must be positive");

  Eigen::Index argmax = 0;
  const double sigma = (a.array() / s.weights.array()).maxCoeff(&argmax);
  if (!(sigma > 0.0))
    throw std::logic_error("steinitz_step: sigma <= 0 after sign normalization");

  Eigen::VectorXd w = s.weights - a / sigma;
  w[argmax] = 0.0;
  const double tol_abs = zero_tol * s.weights.maxCoeff();

  SteinitzState out;
  if (info) {
    info->sigma = sigma;
    info->removed.clear();
  }
  std::vector<Eigen::Index> keep;
  for (Eigen::Index n = 0; n < N; ++n) {
    if (w[n] <= tol_abs) {
      if (info) info->removed.push_back(static_cast<int>(n));
    } else {
      keep.push_back(n);
    }
  }
  if (keep.empty())
    throw std::logic_error("steinitz_step: all weights vanished");

  out.nodes.reserve(keep.size());
  out.weights.resize(static_cast<Eigen::Index>(keep.size()));
  out.phi.resize(s.phi.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    out.nodes.push_back(s.nodes[static_cast<std::size_t>(keep[i])]);
    out.weights[static_cast<Eigen::Index>(i)] = w[keep[i]];
    out.phi.col(static_cast<Eigen::Index>(i)) = s.phi.col(keep[i]);
  }
  return out;
}

ReduceResult reduce(const std::vector<Eigen::VectorXd>& nodes,
                    const Eigen::VectorXd& weights, const FunctionSpace& space,
                    const MomentVector& m, const ReduceConfig& config) {
  const int K = space.dim();
  if (m.size() != K) throw std::invalid_argument("reduce: moment length mismatch");
  if (static_cast<Eigen::Index>(nodes.size()) != weights.size())
    throw std::invalid_argument("reduce: node/weight count mismatch");
  if (!(weights.array() >= 0.0).all())
    throw std::invalid_argument("reduce: weights must be nonnegative");

  const double budget = config.max_residual_drift > 0.0
                            ? config.max_residual_drift
                            : 1e-8 * (1.0 + m.values.lpNorm<Eigen::Infinity>());

  // zero weights carry no information; drop them before anything else
  std::vector<Eigen::Index> act;
  for (Eigen::Index n = 0; n < weights.size(); ++n)
    if (weights[n] != 0.0) act.push_back(n);
  if (act.empty()) throw std::invalid_argument("reduce: all weights are zero");

  Eigen::MatrixXd phi = vandermonde(space, nodes);
  Eigen::VectorXd w = weights;
  Eigen::VectorXd res = -m.values;
  for (Eigen::Index idx : act) res += phi.col(idx) * w[idx];
  if (res.lpNorm<Eigen::Infinity>() > budget)
    throw std::invalid_argument(
        "reduce: input rule residual " +
        std::to_string(res.lpNorm<Eigen::Infinity>()) +
        " already exceeds the drift budget " + std::to_string(budget));

  ReduceResult out;
  while (static_cast<int>(act.size()) > K) {
    const int W = K + 1;
    Eigen::MatrixXd phi_w(K, W);
    for (int j = 0; j < W; ++j) phi_w.col(j) = phi.col(act[static_cast<std::size_t>(j)]);
    Eigen::VectorXd a = qr_null_vector(phi_w);

    Eigen::Index jstar = 0;
    double sigma = 0.0;
    for (int j = 0; j < W; ++j) {
      double ratio = a[j] / w[act[static_cast<std::size_t>(j)]];
      if (j == 0 || ratio > sigma) {
        sigma = ratio;
        jstar = j;
      }
    }
    if (!(sigma > 0.0))
      throw std::logic_error("reduce: sigma <= 0 after sign normalization");

    double max_w = 0.0;
    for (Eigen::Index idx : act) max_w = std::max(max_w, w[idx]);
    const double tol_abs = config.zero_tol * max_w;

    for (int j = 0; j < W; ++j) {
      const Eigen::Index idx = act[static_cast<std::size_t>(j)];
      const double nw = j == jstar ? 0.0 : w[idx] - a[j] / sigma;
      res += phi.col(idx) * (nw - w[idx]);
      w[idx] = nw;
    }

    const auto n_before = static_cast<std::int64_t>(act.size());
    const std::int64_t removed_node = act[static_cast<std::size_t>(jstar)];
    int n_removed = 0;
    std::vector<Eigen::Index> next_act;
    next_act.reserve(act.size());
    for (Eigen::Index idx : act) {
      if (w[idx] <= tol_abs) {
        ++n_removed;
        if (w[idx] != 0.0) {
          res -= phi.col(idx) * w[idx];
          w[idx] = 0.0;
        }
      } else {
        next_act.push_back(idx);
      }
    }
    act = std::move(next_act);
    if (act.empty()) throw std::logic_error("reduce: all weights vanished");

    const double step_res = res.lpNorm<Eigen::Infinity>();
    out.trace.push_back({n_before, removed_node, sigma, step_res, n_removed});
    if (step_res > budget)
      throw std::runtime_error(
          "reduce: residual drift " + std::to_string(step_res) +
          " exceeded the budget " + std::to_string(budget) + " after " +
          std::to_string(out.trace.size()) + " steps (N " +
          std::to_string(n_before) + " -> " + std::to_string(act.size()) + ")");
  }

  const auto n_final = static_cast<Eigen::Index>(act.size());
  Eigen::MatrixXd phi_s(K, n_final);
  Eigen::VectorXd w_s(n_final);
  std::vector<Eigen::VectorXd> nodes_s;
  nodes_s.reserve(act.size());
  for (Eigen::Index i = 0; i < n_final; ++i) {
    const Eigen::Index idx = act[static_cast<std::size_t>(i)];
    phi_s.col(i) = phi.col(idx);
    w_s[i] = w[idx];
    nodes_s.push_back(nodes[static_cast<std::size_t>(idx)]);
  }
  double residual = (phi_s * w_s - m.values).lpNorm<Eigen::Infinity>();

  if (config.refine_final) {
    Eigen::VectorXd w_ref = phi_s.colPivHouseholderQr().solve(m.values);
    const double res_ref = (phi_s * w_ref - m.values).lpNorm<Eigen::Infinity>();
    if ((w_ref.array() > 0.0).all() && res_ref < residual) {
      w_s = w_ref;
      residual = res_ref;
      out.refined = true;
    }
  }

  out.rule.dimension = space.ambient_dim();
  out.rule.nodes = std::move(nodes_s);
  out.rule.weights = std::move(w_s);
  out.rule.space = SpaceDescriptor::of(space);
  out.rule.moment_provenance = m.provenance;
  out.rule.qmc_samples = m.qmc_samples;
  out.rule.residual = residual;
  out.residual = residual;
  check_invariants(out.rule);
  return out;
}

ReduceResult reduce(const Cubature& rule, const FunctionSpace& space,
                    const MomentVector& m, const ReduceConfig& config) {
  return reduce(rule.nodes, rule.weights, space, m, config);
}

}  // namespace picub
