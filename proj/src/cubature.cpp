#include "picub/cubature.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

namespace picub {

namespace {

std::string space_kind_name(FunctionSpace::Kind kind) {
  switch (kind) {
    case FunctionSpace::Kind::Algebraic: return "algebraic";
    case FunctionSpace::Kind::Trigonometric: return "trigonometric";
    case FunctionSpace::Kind::Custom: return "custom";
  }
  throw std::logic_error("unreachable");
}

FunctionSpace::Kind space_kind_from_name(const std::string& name) {
  if (name == "algebraic") return FunctionSpace::Kind::Algebraic;
  if (name == "trigonometric") return FunctionSpace::Kind::Trigonometric;
  if (name == "custom") return FunctionSpace::Kind::Custom;
  throw SchemaError("unknown space type: " + name);
}

}  // namespace

double evaluate(const Cubature& cf,
                const std::function<double(const Eigen::VectorXd&)>& f) {
  double acc = 0.0;
  for (std::size_t n = 0; n < cf.nodes.size(); ++n) {
    double v = f(cf.nodes[n]);
    if (!std::isfinite(v))
      throw std::runtime_error("integrand returned a non-finite value at node " +
                               std::to_string(n + 1));
    acc += cf.weights[static_cast<int>(n)] * v;
  }
  return acc;
}

double exactness_residual(const Cubature& cf, const FunctionSpace& space,
                          const MomentVector& m) {
  if (space.dim() != m.size())
    throw std::invalid_argument("space/moment dimension mismatch");
  if (space.ambient_dim() != cf.dimension)
    throw std::invalid_argument("space/rule dimension mismatch");
  Eigen::MatrixXd phi = vandermonde(space, cf.nodes);
  return (phi * cf.weights - m.values).lpNorm<Eigen::Infinity>();
}

double min_node_separation(const Cubature& cf) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cf.nodes.size(); ++i)
    for (std::size_t j = i + 1; j < cf.nodes.size(); ++j)
      best = std::min(best, (cf.nodes[i] - cf.nodes[j]).norm());
  return best;
}

void check_invariants(const Cubature& cf, double distinctness_tol) {
  if (cf.dimension < 1) throw InvariantError("dimension must be >= 1");
  if (cf.nodes.empty()) throw InvariantError("rule has no nodes");
  if (static_cast<std::int64_t>(cf.nodes.size()) != cf.weights.size())
    throw InvariantError("node/weight count mismatch");
  for (const auto& x : cf.nodes) {
    if (x.size() != cf.dimension) throw InvariantError("node dimension mismatch");
    if (!x.allFinite()) throw InvariantError("non-finite node coordinate");
  }
  if (!cf.weights.allFinite()) throw InvariantError("non-finite weight");
  if (!(cf.weights.array() > 0.0).all())
    throw InvariantError("weights must be strictly positive");
  if (cf.nodes.size() > 1 && !(min_node_separation(cf) > distinctness_tol))
    throw InvariantError("nodes are not pairwise distinct");
}

nlohmann::json serialize(const Cubature& cf) {
  nlohmann::json doc;
  doc["dimension"] = cf.dimension;
  doc["space"] = {{"type", space_kind_name(cf.space.kind)},
                  {"degree", cf.space.degree},
                  {"K", cf.space.K}};
  doc["nodes"] = nlohmann::json::array();
  for (const auto& x : cf.nodes)
    doc["nodes"].push_back(std::vector<double>(x.data(), x.data() + x.size()));
  doc["weights"] =
      std::vector<double>(cf.weights.data(), cf.weights.data() + cf.weights.size());
  doc["residual"] = cf.residual;
  doc["moment_provenance"] =
      cf.moment_provenance == MomentVector::Provenance::Analytic ? "analytic"
                                                                 : "qmc";
  if (cf.moment_provenance == MomentVector::Provenance::Qmc)
    doc["qmc_samples"] = cf.qmc_samples;
  return doc;
}

Cubature deserialize_unchecked(const nlohmann::json& doc) {
  if (!doc.is_object()) throw SchemaError("rule document must be an object");
  for (const char* key :
       {"dimension", "space", "nodes", "weights", "residual", "moment_provenance"})
    if (!doc.contains(key))
      throw SchemaError(std::string("missing field \"") + key + "\"");

  Cubature cf;
  try {
    cf.dimension = doc.at("dimension").get<int>();
    const auto& sp = doc.at("space");
    cf.space.kind = space_kind_from_name(sp.at("type").get<std::string>());
    cf.space.degree = sp.at("degree").get<int>();
    cf.space.K = sp.at("K").get<int>();
    const auto& nodes = doc.at("nodes");
    const auto& weights = doc.at("weights");
    if (!nodes.is_array() || !weights.is_array())
      throw SchemaError("\"nodes\" and \"weights\" must be arrays");
    if (nodes.size() != weights.size())
      throw SchemaError("node/weight count mismatch");
    if (nodes.empty()) throw SchemaError("empty rule");
    cf.weights.resize(static_cast<int>(weights.size()));
    for (std::size_t i = 0; i < weights.size(); ++i)
      cf.weights[static_cast<int>(i)] = weights[i].get<double>();
    for (const auto& jn : nodes) {
      if (!jn.is_array() || static_cast<int>(jn.size()) != cf.dimension)
        throw SchemaError("node of wrong dimension");
      Eigen::VectorXd x(cf.dimension);
      for (int j = 0; j < cf.dimension; ++j) x[j] = jn[static_cast<std::size_t>(j)].get<double>();
      cf.nodes.push_back(std::move(x));
    }
    cf.residual = doc.at("residual").get<double>();
    const std::string prov = doc.at("moment_provenance").get<std::string>();
    if (prov == "analytic")
      cf.moment_provenance = MomentVector::Provenance::Analytic;
    else if (prov == "qmc")
      cf.moment_provenance = MomentVector::Provenance::Qmc;
    else
      throw SchemaError("unknown moment_provenance: " + prov);
    cf.qmc_samples = doc.value("qmc_samples", std::int64_t{0});
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed rule document: ") + e.what());
  }
  return cf;
}

Cubature deserialize(const nlohmann::json& doc) {
  Cubature cf = deserialize_unchecked(doc);
  check_invariants(cf);
  return cf;
}

void write_csv(const Cubature& cf, std::ostream& os) {
  for (int j = 1; j <= cf.dimension; ++j) os << "x_" << j << ",";
  os << "w\n";
  char buf[32];
  for (std::size_t n = 0; n < cf.nodes.size(); ++n) {
    for (int j = 0; j < cf.dimension; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", cf.nodes[n][j]);
      os << buf << ",";
    }
    std::snprintf(buf, sizeof buf, "%.17g",
                  cf.weights[static_cast<int>(n)]);
    os << buf << "\n";
  }
}

}  // namespace picub
