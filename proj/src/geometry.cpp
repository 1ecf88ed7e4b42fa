#include "picub/geometry.hpp"

#include <cmath>
#include <numbers>

namespace picub {

namespace {

void check_dims(const Domain& a, const Domain& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("domain dimension mismatch: " +
                                std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()));
}

double unit_ball_volume(int d) {
  // pi^{d/2} / Gamma(d/2 + 1)
  return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

std::shared_ptr<const std::vector<Domain>> pack_parts(const Domain& a,
                                                      const Domain& b) {
  return std::make_shared<const std::vector<Domain>>(
      std::vector<Domain>{a, b});
}

}  // namespace

Domain::Domain(Kind kind, BoundingBox box, Indicator indicator,
               std::optional<double> volume)
    : kind_(kind),
      box_(std::move(box)),
      indicator_(std::move(indicator)),
      volume_(volume) {
  if (box_.dim() < 1) throw std::invalid_argument("domain dimension must be >= 1");
  if (!((box_.lo.array() < box_.hi.array()).all()))
    throw std::invalid_argument("bounding box requires lo < hi per axis");
  if (volume_ && *volume_ <= 0.0)
    throw std::invalid_argument("analytic volume must be positive");
}

bool Domain::contains(const Eigen::VectorXd& x) const {
  if (x.size() != box_.lo.size())
    throw std::invalid_argument("point dimension mismatch");
  if (!box_.contains(x)) return false;
  return indicator_(x);
}

Domain make_cube(const Eigen::VectorXd& center, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("cube radius must be positive");
  BoundingBox box{(center.array() - radius).matrix(),
                  (center.array() + radius).matrix()};
  Eigen::VectorXd c = center;
  double r = radius;
  Domain dom(Domain::Kind::Cube, box,
             [c, r](const Eigen::VectorXd& x) {
               return (x - c).lpNorm<Eigen::Infinity>() <= r;
             },
             std::pow(2.0 * radius, center.size()));
  dom.center_ = center;
  dom.radius_ = radius;
  return dom;
}

Domain make_ball(const Eigen::VectorXd& center, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("ball radius must be positive");
  BoundingBox box{(center.array() - radius).matrix(),
                  (center.array() + radius).matrix()};
  Eigen::VectorXd c = center;
  double r = radius;
  const int d = static_cast<int>(center.size());
  Domain dom(Domain::Kind::Ball, box,
             [c, r](const Eigen::VectorXd& x) { return (x - c).norm() <= r; },
             unit_ball_volume(d) * std::pow(radius, d));
  dom.center_ = center;
  dom.radius_ = radius;
  return dom;
}

Domain make_union(const Domain& a, const Domain& b, bool disjoint) {
  check_dims(a, b);
  BoundingBox box{a.bounding_box().lo.cwiseMin(b.bounding_box().lo),
                  a.bounding_box().hi.cwiseMax(b.bounding_box().hi)};
  std::optional<double> vol;
  if (disjoint && a.analytic_volume() && b.analytic_volume())
    vol = *a.analytic_volume() + *b.analytic_volume();
  Domain da = a, db = b;
  Domain dom(Domain::Kind::Union, box,
             [da, db](const Eigen::VectorXd& x) {
               return da.contains(x) || db.contains(x);
             },
             vol);
  dom.parts_ = pack_parts(a, b);
  return dom;
}

Domain make_intersection(const Domain& a, const Domain& b) {
  check_dims(a, b);
  BoundingBox box{a.bounding_box().lo.cwiseMax(b.bounding_box().lo),
                  a.bounding_box().hi.cwiseMin(b.bounding_box().hi)};
  if (!((box.lo.array() < box.hi.array()).all()))
    throw std::invalid_argument("intersection has empty bounding box");
  Domain da = a, db = b;
  Domain dom(Domain::Kind::Intersection, box,
             [da, db](const Eigen::VectorXd& x) {
               return da.contains(x) && db.contains(x);
             },
             std::nullopt);
  dom.parts_ = pack_parts(a, b);
  return dom;
}

Domain make_difference(const Domain& a, const Domain& b) {
  check_dims(a, b);
  Domain da = a, db = b;
  Domain dom(Domain::Kind::Difference, a.bounding_box(),
             [da, db](const Eigen::VectorXd& x) {
               return da.contains(x) && !db.contains(x);
             },
             std::nullopt);
  dom.parts_ = pack_parts(a, b);
  return dom;
}

WeightFunction WeightFunction::one() {
  return WeightFunction(Kind::One, [](const Eigen::VectorXd&) { return 1.0; },
                        0.0, true);
}

WeightFunction WeightFunction::radial_power(double p) {
  return WeightFunction(
      Kind::RadialPower,
      [p](const Eigen::VectorXd& x) { return std::pow(x.norm(), p); }, p, true);
}

WeightFunction WeightFunction::custom(Evaluator f, bool zero_set_nowhere_dense) {
  if (!f) throw std::invalid_argument("weight evaluator must be callable");
  return WeightFunction(Kind::Custom, std::move(f), 0.0,
                        zero_set_nowhere_dense);
}

double WeightFunction::operator()(const Eigen::VectorXd& x) const {
  double v = eval_(x);
  if (!(v >= 0.0))
    throw std::domain_error("weight function returned a negative value");
  return v;
}

namespace {

Eigen::VectorXd vector_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("expected a non-empty numeric array");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<int>(i)] = j[i].get<double>();
  return v;
}

}  // namespace

Domain domain_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type"))
    throw std::invalid_argument("domain spec needs a \"type\" field");
  const std::string type = j.at("type").get<std::string>();
  if (type == "cube" || type == "ball") {
    Eigen::VectorXd center = vector_from_json(j.at("center"));
    double radius = j.at("radius").get<double>();
    return type == "cube" ? make_cube(center, radius)
                          : make_ball(center, radius);
  }
  if (type == "union" || type == "intersection" || type == "difference") {
    const auto& parts = j.at("parts");
    if (!parts.is_array() || parts.size() != 2)
      throw std::invalid_argument("composite domain needs exactly 2 parts");
    Domain a = domain_from_json(parts[0]);
    Domain b = domain_from_json(parts[1]);
    if (type == "union")
      return make_union(a, b, j.value("disjoint", false));
    if (type == "intersection") return make_intersection(a, b);
    return make_difference(a, b);
  }
  throw std::invalid_argument("unknown domain type: " + type);
}

nlohmann::json domain_to_json(const Domain& dom) {
  nlohmann::json j;
  switch (dom.kind()) {
    case Domain::Kind::Cube:
    case Domain::Kind::Ball: {
      j["type"] = dom.kind() == Domain::Kind::Cube ? "cube" : "ball";
      j["center"] = std::vector<double>(dom.center().data(),
                                        dom.center().data() + dom.center().size());
      j["radius"] = dom.radius();
      break;
    }
    case Domain::Kind::Union:
    case Domain::Kind::Intersection:
    case Domain::Kind::Difference: {
      j["type"] = dom.kind() == Domain::Kind::Union          ? "union"
                  : dom.kind() == Domain::Kind::Intersection ? "intersection"
                                                             : "difference";
      j["parts"] = nlohmann::json::array();
      for (const Domain& p : dom.parts()) j["parts"].push_back(domain_to_json(p));
      if (dom.kind() == Domain::Kind::Union && dom.analytic_volume())
        j["disjoint"] = true;
      break;
    }
    case Domain::Kind::Custom:
      throw std::invalid_argument("custom domains are not serializable");
  }
  return j;
}

WeightFunction weight_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type"))
    throw std::invalid_argument("weight spec needs a \"type\" field");
  const std::string type = j.at("type").get<std::string>();
  if (type == "one") return WeightFunction::one();
  if (type == "radial_power")
    return WeightFunction::radial_power(j.at("exponent").get<double>());
  throw std::invalid_argument("unknown weight type: " + type);
}

nlohmann::json weight_to_json(const WeightFunction& w) {
  switch (w.kind()) {
    case WeightFunction::Kind::One:
      return {{"type", "one"}};
    case WeightFunction::Kind::RadialPower:
      return {{"type", "radial_power"}, {"exponent", w.exponent()}};
    case WeightFunction::Kind::Custom:
      throw std::invalid_argument("custom weights are not serializable");
  }
  throw std::logic_error("unreachable");
}

}  // namespace picub
