#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "picub/function_space.hpp"
#include "picub/moments.hpp"

namespace picub {

// Malformed document: missing fields, wrong types, inconsistent sizes.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structurally valid document describing an invalid rule (nonpositive weight,
// duplicate nodes, non-finite entries).
struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Space metadata carried by a rule for certificates and round-trips.
struct SpaceDescriptor {
  FunctionSpace::Kind kind = FunctionSpace::Kind::Custom;
  int degree = -1;
  int K = 0;

  static SpaceDescriptor of(const FunctionSpace& space) {
    return {space.kind(), space.degree(), space.dim()};
  }
};

// Positive cubature rule C_N[f] = sum_n w_n f(x_n). All weights strictly
// positive and nodes pairwise distinct; nonnegative intermediates live in
// LsResult, not here. Immutable by convention; safe concurrent reads.
struct Cubature {
  int dimension = 0;
  std::vector<Eigen::VectorXd> nodes;
  Eigen::VectorXd weights;
  SpaceDescriptor space;
  MomentVector::Provenance moment_provenance = MomentVector::Provenance::Analytic;
  std::int64_t qmc_samples = 0;
  double residual = 0.0;

  std::int64_t size() const { return static_cast<std::int64_t>(nodes.size()); }
};

// weighted sum; throws on a non-finite f value (message names the node)
double evaluate(const Cubature& cf,
                const std::function<double(const Eigen::VectorXd&)>& f);

// max_k |C_N[phi_k] - m_k|
double exactness_residual(const Cubature& cf, const FunctionSpace& space,
                          const MomentVector& m);

// +infinity for a single node
double min_node_separation(const Cubature& cf);

// Count/positivity/finiteness and pairwise distinctness at the given
// tolerance (0 = exact duplicates only). Throws InvariantError.
void check_invariants(const Cubature& cf, double distinctness_tol = 0.0);

// JSON document:
//   {"dimension":d, "space":{"type":..,"degree":..,"K":..}, "nodes":[[..]..],
//    "weights":[..], "residual":x, "moment_provenance":"analytic"|"qmc",
//    "qmc_samples":M?}
// Round-trips are lossless (bit-identical nodes and weights).
nlohmann::json serialize(const Cubature& cf);

// Schema check only; use when invalid rules must still be inspectable.
Cubature deserialize_unchecked(const nlohmann::json& doc);

// Schema check plus invariants.
Cubature deserialize(const nlohmann::json& doc);

// header x_1,..,x_d,w then one row per node, 17 significant digits
void write_csv(const Cubature& cf, std::ostream& os);

}  // namespace picub
