#include "picub/ls_cubature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace picub {

namespace {

// one modified Gram-Schmidt sweep over the rows of P, accumulating the
// change of basis into C; returns false on breakdown
bool mgs_sweep(Eigen::MatrixXd& P, Eigen::MatrixXd& C, const Eigen::VectorXd& r,
               const Eigen::VectorXd& row_scales, double tol,
               Eigen::VectorXd& step_norms, int& breakdown_index) {
  const int K = static_cast<int>(P.rows());
  const auto rt = r.transpose().array();
  for (int k = 0; k < K; ++k) {
    for (int l = 0; l < k; ++l) {
      double c = (P.row(k).array() * P.row(l).array() * rt).sum();
      P.row(k) -= c * P.row(l);
      C.row(k) -= c * C.row(l);
    }
    double nrm = std::sqrt((P.row(k).array().square() * rt).sum());
    step_norms[k] = nrm;
    if (!(nrm > tol * row_scales[k])) {
      breakdown_index = k;
      return false;
    }
    P.row(k) /= nrm;
    C.row(k) /= nrm;
  }
  return true;
}

double orthonormality_defect(const Eigen::MatrixXd& P, const Eigen::VectorXd& r) {
  Eigen::MatrixXd G = P * r.asDiagonal() * P.transpose();
  G.diagonal().array() -= 1.0;
  return G.cwiseAbs().maxCoeff();
}

}  // namespace

Eigen::VectorXd discrete_weights(const std::vector<Eigen::VectorXd>& nodes,
                                 const WeightFunction& weight, double volume) {
  if (volume <= 0.0)
    throw std::invalid_argument("discrete_weights: volume must be positive");
  if (nodes.empty()) throw std::invalid_argument("discrete_weights: no nodes");
  const auto N = static_cast<double>(nodes.size());
  Eigen::VectorXd r(nodes.size());
  for (std::size_t n = 0; n < nodes.size(); ++n)
    r[static_cast<int>(n)] = volume * weight(nodes[n]) / N;
  return r;
}

double discrete_inner_product(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                              const Eigen::VectorXd& r) {
  if (u.size() != v.size() || u.size() != r.size())
    throw std::invalid_argument("discrete_inner_product: length mismatch");
  return (u.array() * v.array() * r.array()).sum();
}

DobFactorization gram_schmidt_dob(const Eigen::MatrixXd& phi,
                                  const Eigen::VectorXd& r, double tol) {
  const int K = static_cast<int>(phi.rows());
  if (phi.cols() != r.size())
    throw std::invalid_argument("gram_schmidt_dob: phi/r size mismatch");
  if (!(r.sum() > 0.0))
    throw std::invalid_argument("gram_schmidt_dob: sum of r must be positive");

  DobFactorization dob;
  dob.values = phi;
  dob.C = Eigen::MatrixXd::Identity(K, K);
  dob.step_norms = Eigen::VectorXd::Zero(K);

  Eigen::VectorXd row_scales(K);
  for (int k = 0; k < K; ++k)
    row_scales[k] =
        std::sqrt((phi.row(k).array().square() * r.transpose().array()).sum());

  if (!mgs_sweep(dob.values, dob.C, r, row_scales, tol, dob.step_norms,
                 dob.breakdown_index)) {
    dob.breakdown = true;
    return dob;
  }
  dob.orthonormality_defect = orthonormality_defect(dob.values, r);
  if (dob.orthonormality_defect > 1e-10) {
    // MGS twice: one re-orthogonalization pass restores orthonormality lost
    // to ill-conditioned Vandermonde data
    Eigen::VectorXd second_norms = Eigen::VectorXd::Zero(K);
    if (!mgs_sweep(dob.values, dob.C, r, dob.step_norms, tol, second_norms,
                   dob.breakdown_index)) {
      dob.breakdown = true;
      return dob;
    }
    dob.orthonormality_defect = orthonormality_defect(dob.values, r);
  }
  return dob;
}

Eigen::VectorXd ls_weights(const DobFactorization& dob, const Eigen::MatrixXd& phi,
                           const Eigen::VectorXd& r, const MomentVector& m) {
  if (dob.breakdown)
    throw std::invalid_argument("ls_weights: DOB breakdown (rank < K)");
  if (m.size() != static_cast<int>(phi.rows()))
    throw std::invalid_argument("ls_weights: moment length mismatch");
  Eigen::VectorXd dob_moments = dob.C * m.values;
  return r.cwiseProduct(dob.values.transpose() * dob_moments);
}

LsResult construct_nonnegative_ls_cf(const Domain& domain,
                                     const WeightFunction& weight,
                                     const FunctionSpace& space,
                                     const MomentVector& m,
                                     const LsConfig& config) {
  if (space.ambient_dim() != domain.dim())
    throw std::invalid_argument("space/domain dimension mismatch");
  const int K = space.dim();
  if (m.size() != K)
    throw std::invalid_argument("moment vector length does not match K");

  const double volume = config.volume > 0.0
                            ? config.volume
                            : domain_volume(domain, config.volume_qmc_samples);
  const SequenceKind seq_kind =
      config.sequence.value_or(default_sequence_kind(domain.dim()));
  const std::int64_t n_cap =
      config.n_cap > 0 ? config.n_cap : static_cast<std::int64_t>(K) << 20;

  PointSequence cursor(seq_kind, domain, config.rejection_cap);

  LsResult out;
  out.volume = volume;
  double last_min_weight = 0.0;
  std::int64_t N = K;
  for (;;) {
    out.n_history.push_back(N);
    auto more = cursor.take(N - static_cast<std::int64_t>(out.nodes.size()));
    out.nodes.insert(out.nodes.end(), more.begin(), more.end());

    out.r = discrete_weights(out.nodes, weight, volume);
    out.phi = vandermonde(space, out.nodes);
    out.dob = gram_schmidt_dob(out.phi, out.r, config.rank_tol);

    if (config.svd_rank_check) {
      Eigen::MatrixXd scaled = out.phi * out.r.cwiseSqrt().asDiagonal();
      Eigen::BDCSVD<Eigen::MatrixXd> svd(scaled);
      int rank = 0;
      const double cutoff = config.rank_tol * svd.singularValues()[0];
      for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()[i] > cutoff) ++rank;
      if ((rank == K) == out.dob.breakdown)
        throw std::logic_error(
            "rank check mismatch: MGS breakdown disagrees with SVD rank " +
            std::to_string(rank) + " at N=" + std::to_string(N));
    }

    if (!out.dob.breakdown) {
      out.weights = ls_weights(out.dob, out.phi, out.r, m);
      const double max_w = out.weights.maxCoeff();
      const double min_w = out.weights.minCoeff();
      last_min_weight = min_w;
      const double tol_neg = config.neg_weight_tol * std::max(max_w, 0.0);
      if (min_w >= -tol_neg) {
        out.weights = out.weights.cwiseMax(0.0);
        out.residual = (out.phi * out.weights - m.values).lpNorm<Eigen::Infinity>();
        return out;
      }
    }

    auto next = static_cast<std::int64_t>(
        std::ceil(static_cast<double>(N) * config.growth_factor));
    if (next <= N) next = N + 1;
    if (next > n_cap)
      throw std::runtime_error(
          "node cap " + std::to_string(n_cap) + " reached at N=" +
          std::to_string(N) +
          (out.dob.breakdown
               ? " with rank < K"
               : "; most negative weight " + std::to_string(last_min_weight)) +
          "; check the domain/weight restrictions");
    N = next;
  }
}

}  // namespace picub
