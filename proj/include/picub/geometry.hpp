#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace picub {

// Axis-aligned box, closed on all faces.
struct BoundingBox {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  int dim() const { return static_cast<int>(lo.size()); }
  double volume() const { return (hi - lo).prod(); }
  double diameter() const { return (hi - lo).norm(); }
  bool contains(const Eigen::VectorXd& x) const {
    return (x.array() >= lo.array()).all() && (x.array() <= hi.array()).all();
  }
};

// Compact integration domain: bounding box + membership indicator + volume.
// The indicator defines a closed set; boundary points count as inside.
// "Boundary of measure zero" is an assumption on the input, not checked here.
// Volume is analytic where a closed form exists, otherwise std::nullopt and
// callers fall back to the QMC estimate in the moments module.
//
// Immutable after construction; safe for concurrent reads.
class Domain {
 public:
  enum class Kind { Cube, Ball, Union, Intersection, Difference, Custom };
  using Indicator = std::function<bool(const Eigen::VectorXd&)>;

  Domain(Kind kind, BoundingBox box, Indicator indicator,
         std::optional<double> volume);

  int dim() const { return box_.dim(); }
  Kind kind() const { return kind_; }
  const BoundingBox& bounding_box() const { return box_; }
  const std::optional<double>& analytic_volume() const { return volume_; }

  // False for anything outside the bounding box, indicator otherwise.
  bool contains(const Eigen::VectorXd& x) const;

  // Defining parameters, kept for serialization and reference-rule dispatch.
  // center/radius are only meaningful for Kind::Cube and Kind::Ball,
  // parts for the three composite kinds.
  const Eigen::VectorXd& center() const { return center_; }
  double radius() const { return radius_; }
  const std::vector<Domain>& parts() const { return *parts_; }

 private:
  friend Domain make_cube(const Eigen::VectorXd&, double);
  friend Domain make_ball(const Eigen::VectorXd&, double);
  friend Domain make_union(const Domain&, const Domain&, bool);
  friend Domain make_intersection(const Domain&, const Domain&);
  friend Domain make_difference(const Domain&, const Domain&);

  Kind kind_;
  BoundingBox box_;
  Indicator indicator_;
  std::optional<double> volume_;
  Eigen::VectorXd center_;
  double radius_ = 0.0;
  std::shared_ptr<const std::vector<Domain>> parts_;
};

// { x : ||x - center||_inf <= radius }, volume (2 radius)^d
Domain make_cube(const Eigen::VectorXd& center, double radius);

// { x : ||x - center||_2 <= radius }, volume = unit-ball volume * radius^d
Domain make_ball(const Eigen::VectorXd& center, double radius);

// Indicator OR; bounding box is the hull. Volume is the sum only when the
// caller asserts the parts are disjoint, otherwise deferred to QMC.
Domain make_union(const Domain& a, const Domain& b, bool disjoint = false);

// Indicator AND; box is the (possibly empty-checked) intersection of boxes.
Domain make_intersection(const Domain& a, const Domain& b);

// Membership in a but not in b; box is a's box.
Domain make_difference(const Domain& a, const Domain& b);

// Nonnegative weight function on the domain. The kind tag lets the moments
// module recognize the closed-form cases; Custom is evaluate-only.
// The "nowhere dense zero set" restriction is a documented precondition.
class WeightFunction {
 public:
  enum class Kind { One, RadialPower, Custom };
  using Evaluator = std::function<double(const Eigen::VectorXd&)>;

  static WeightFunction one();
  // omega(x) = ||x||_2^p, p > -d (integrability checked at moment time)
  static WeightFunction radial_power(double p);
  static WeightFunction custom(Evaluator f, bool zero_set_nowhere_dense = true);

  Kind kind() const { return kind_; }
  double exponent() const { return exponent_; }
  bool zero_set_nowhere_dense() const { return nowhere_dense_; }

  // Throws std::domain_error on a negative value.
  double operator()(const Eigen::VectorXd& x) const;

 private:
  WeightFunction(Kind k, Evaluator f, double p, bool nd)
      : kind_(k), eval_(std::move(f)), exponent_(p), nowhere_dense_(nd) {}

  Kind kind_;
  Evaluator eval_;
  double exponent_;
  bool nowhere_dense_;
};

// CLI/config JSON form:
//   {"type":"cube"|"ball", "center":[...], "radius":r}
//   {"type":"union"|"intersection"|"difference", "parts":[...], "disjoint":b?}
Domain domain_from_json(const nlohmann::json& j);
nlohmann::json domain_to_json(const Domain& dom);

//   {"type":"one"} | {"type":"radial_power","exponent":p}
WeightFunction weight_from_json(const nlohmann::json& j);
nlohmann::json weight_to_json(const WeightFunction& w);

}  // namespace picub
