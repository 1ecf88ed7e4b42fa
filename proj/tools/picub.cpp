// picub: construct, verify, and benchmark positive interpolatory cubature.
// Exit codes: 0 success, 1 verification failure, 2 construction failure,
// 3 configuration error.

#include <picub/cubature.hpp>
#include <picub/ls_cubature.hpp>
#include <picub/moments.hpp>
#include <picub/reference.hpp>
#include <picub/steinitz.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

using namespace picub;
using nlohmann::json;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

// The config document is either a bare domain object (has "type") or a
// wrapper {"domain": {...}, "weight": {...}, "space": .., "degree": .., ...}.
// Command-line flags override the wrapper keys.
struct RunConfig {
  Domain domain = make_cube(Eigen::VectorXd::Zero(1), 1.0);
  WeightFunction weight = WeightFunction::one();
  std::string space_kind = "algebraic";
  int degree = -1;
  std::string sequence;      // "", "bisection", "halton"
  std::string moments = "auto";
  std::int64_t qmc_samples = std::int64_t{1} << 20;
  std::int64_t seed_cap = 0;  // 0 keeps the library default 2^20 K
};

RunConfig parse_config(const std::string& path) {
  json doc = load_json(path);
  RunConfig cfg;
  try {
    if (doc.contains("type")) {
      cfg.domain = domain_from_json(doc);
    } else if (doc.contains("domain")) {
      cfg.domain = domain_from_json(doc.at("domain"));
    } else {
      throw ConfigError(path + ": no domain (need \"type\" or \"domain\")");
    }
    if (doc.contains("weight")) cfg.weight = weight_from_json(doc.at("weight"));
    cfg.space_kind = doc.value("space", cfg.space_kind);
    cfg.degree = doc.value("degree", cfg.degree);
    cfg.sequence = doc.value("sequence", cfg.sequence);
    cfg.moments = doc.value("moments", cfg.moments);
    cfg.qmc_samples = doc.value("qmc_samples", cfg.qmc_samples);
    cfg.seed_cap = doc.value("seed_cap", cfg.seed_cap);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return cfg;
}

FunctionSpace make_space(const RunConfig& cfg) {
  if (cfg.degree < 0) throw ConfigError("degree not set (flag --degree)");
  if (cfg.space_kind == "algebraic")
    return algebraic_space(cfg.domain.dim(), cfg.degree);
  if (cfg.space_kind == "trigonometric")
    return trigonometric_space(cfg.domain.dim(), cfg.degree);
  throw ConfigError("unknown space \"" + cfg.space_kind +
                    "\" (algebraic|trigonometric)");
}

MomentMode moment_mode(const std::string& name) {
  if (name == "auto") return MomentMode::Auto;
  if (name == "analytic") return MomentMode::Analytic;
  if (name == "qmc") return MomentMode::Qmc;
  throw ConfigError("unknown moments mode \"" + name + "\" (auto|analytic|qmc)");
}

std::optional<SequenceKind> sequence_kind(const std::string& name) {
  if (name.empty()) return std::nullopt;
  if (name == "bisection") return SequenceKind::Bisection;
  if (name == "halton") return SequenceKind::Halton;
  throw ConfigError("unknown sequence \"" + name + "\" (bisection|halton)");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

// flags shared by the subcommands; empty/sentinel means "keep config value"
struct Flags {
  std::string domain_config;
  std::string space;
  int degree = -1;
  std::string sequence;
  std::string moments;
  std::int64_t qmc_samples = -1;
  std::int64_t seed_cap = -1;
  std::string out;
  std::string csv;
};

RunConfig merged_config(const Flags& f) {
  if (f.domain_config.empty()) throw ConfigError("--domain-config is required");
  RunConfig cfg = parse_config(f.domain_config);
  if (!f.space.empty()) cfg.space_kind = f.space;
  if (f.degree >= 0) cfg.degree = f.degree;
  if (!f.sequence.empty()) cfg.sequence = f.sequence;
  if (!f.moments.empty()) cfg.moments = f.moments;
  if (f.qmc_samples >= 0) cfg.qmc_samples = f.qmc_samples;
  if (f.seed_cap >= 0) cfg.seed_cap = f.seed_cap;
  return cfg;
}

struct Built {
  FunctionSpace space;
  MomentVector m;
  LsResult ls;
  ReduceResult rr;
  const Cubature& rule() const { return rr.rule; }
};

Built build_rule(const RunConfig& cfg) {
  FunctionSpace space = make_space(cfg);
  MomentVector m = compute_moments(space, cfg.domain, cfg.weight,
                                   moment_mode(cfg.moments), cfg.qmc_samples);
  LsConfig ls_cfg;
  ls_cfg.sequence = sequence_kind(cfg.sequence);
  if (cfg.seed_cap > 0) ls_cfg.n_cap = cfg.seed_cap;
  LsResult ls =
      construct_nonnegative_ls_cf(cfg.domain, cfg.weight, space, m, ls_cfg);
  ReduceResult rr = reduce(ls.nodes, ls.weights, space, m);
  return Built{std::move(space), std::move(m), std::move(ls), std::move(rr)};
}

int cmd_construct(const Flags& flags) {
  RunConfig cfg = merged_config(flags);
  const auto t0 = std::chrono::steady_clock::now();
  std::optional<Built> built;
  try {
    built = build_rule(cfg);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "construction failed: %s\n", e.what());
    return 2;
  }
  const Built& b = *built;
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::string doubling;
  for (std::size_t i = 0; i < b.ls.n_history.size(); ++i)
    doubling += (i ? "->" : "") + std::to_string(b.ls.n_history[i]);
  std::printf("space           %s (K = %d)\n", b.space.descriptor().c_str(),
              b.space.dim());
  std::printf("moments         %s%s\n",
              b.m.provenance == MomentVector::Provenance::Analytic ? "analytic"
                                                                   : "qmc",
              b.m.provenance == MomentVector::Provenance::Qmc
                  ? (" (M = " + std::to_string(b.m.qmc_samples) + ")").c_str()
                  : "");
  std::printf("volume          %.17g\n", b.ls.volume);
  std::printf("ls nodes        %s\n", doubling.c_str());
  std::printf("steinitz steps  %zu%s\n", b.rr.trace.size(),
              b.rr.refined ? " (+ final refinement)" : "");
  std::printf("rule            N = %lld nodes, weight sum %.17g\n",
              static_cast<long long>(b.rule().size()), b.rule().weights.sum());
  std::printf("residual        %.3e\n", b.rule().residual);
  std::printf("time            %.2fs\n", secs);

  if (!flags.out.empty()) write_file(flags.out, serialize(b.rule()).dump(2) + "\n");
  if (!flags.csv.empty()) {
    std::ofstream out(flags.csv);
    if (!out) throw ConfigError("cannot write " + flags.csv);
    write_csv(b.rule(), out);
  }
  return 0;
}

int cmd_verify(const std::string& rule_path, const Flags& flags) {
  RunConfig cfg = merged_config(flags);
  Cubature rule;
  try {
    rule = deserialize_unchecked(load_json(rule_path));
  } catch (const SchemaError& e) {
    throw ConfigError(rule_path + ": " + e.what());
  }
  if (rule.dimension != cfg.domain.dim())
    throw ConfigError("rule dimension does not match the domain");
  if (rule.space.kind == FunctionSpace::Kind::Custom)
    throw ConfigError("cannot verify a custom-space rule (no basis on file)");

  cfg.space_kind = rule.space.kind == FunctionSpace::Kind::Algebraic
                       ? "algebraic"
                       : "trigonometric";
  cfg.degree = rule.space.degree;
  FunctionSpace space = make_space(cfg);

  bool all_pass = true;
  auto line = [&](const char* name, bool pass, const std::string& detail) {
    std::printf("%-14s %s%s%s\n", name, pass ? "PASS" : "FAIL",
                detail.empty() ? "" : "  ", detail.c_str());
    all_pass = all_pass && pass;
  };

  line("descriptor", space.dim() == rule.space.K,
       "K on file " + std::to_string(rule.space.K) + ", enumerated " +
           std::to_string(space.dim()));
  line("node count", rule.size() <= space.dim(),
       "N = " + std::to_string(rule.size()) + ", K = " +
           std::to_string(space.dim()));
  line("positivity", rule.weights.size() > 0 &&
                         rule.weights.allFinite() &&
                         (rule.weights.array() > 0.0).all(),
       "min weight " + std::to_string(rule.weights.size() > 0
                                          ? rule.weights.minCoeff()
                                          : 0.0));
  bool interior = true;
  for (const auto& x : rule.nodes) interior = interior && cfg.domain.contains(x);
  line("interiority", interior, "");
  const double sep_tol = 1e-12 * cfg.domain.bounding_box().diameter();
  line("distinctness", min_node_separation(rule) > sep_tol,
       "min separation " + std::to_string(min_node_separation(rule)));

  MomentVector m = compute_moments(space, cfg.domain, cfg.weight,
                                   moment_mode(cfg.moments), cfg.qmc_samples);
  char detail[120];
  if (m.provenance == MomentVector::Provenance::Analytic) {
    const double res = exactness_residual(rule, space, m);
    const double bound = 1e-8 * (1.0 + m.values.lpNorm<Eigen::Infinity>());
    std::snprintf(detail, sizeof detail, "residual %.3e (bound %.3e)", res, bound);
    line("exactness", res <= bound, detail);
  } else {
    Eigen::VectorXd gap =
        (vandermonde(space, rule.nodes) * rule.weights - m.values).cwiseAbs();
    bool pass = true;
    double slack = std::numeric_limits<double>::infinity();
    for (int k = 0; k < gap.size(); ++k) {
      pass = pass && gap[k] <= 3.0 * m.error_estimate[k] + 1e-12;
      slack = std::min(slack, 3.0 * m.error_estimate[k] - gap[k]);
    }
    std::snprintf(detail, sizeof detail,
                  "per-moment gap vs 3x QMC estimate (min slack %.3e)", slack);
    line("exactness", pass, detail);
  }
  return all_pass ? 0 : 1;
}

int cmd_benchmark(const Flags& flags) {
  RunConfig cfg = merged_config(flags);
  if (cfg.degree < 0) throw ConfigError("degree not set (flag --degree)");
  const Domain& dom = cfg.domain;
  if (dom.kind() != Domain::Kind::Cube && dom.kind() != Domain::Kind::Ball)
    throw ConfigError("benchmark needs a cube or ball domain");
  const int d = dom.dim();

  // cube: f = prod 1/(1+x_j^2) with product-arctan reference when omega == 1;
  // ball: f = 1/(1+||x||^2) + sin(x_1) with a high-M QMC reference
  std::function<double(const Eigen::VectorXd&)> f;
  if (dom.kind() == Domain::Kind::Cube) {
    f = [](const Eigen::VectorXd& x) {
      double v = 1.0;
      for (int j = 0; j < x.size(); ++j) v /= 1.0 + x[j] * x[j];
      return v;
    };
  } else {
    f = [](const Eigen::VectorXd& x) {
      return 1.0 / (1.0 + x.squaredNorm()) + std::sin(x[0]);
    };
  }
  auto g = [&](const Eigen::VectorXd& x) { return cfg.weight(x) * f(x); };

  double ref = 0.0;
  std::string ref_note;
  if (dom.kind() == Domain::Kind::Cube &&
      cfg.weight.kind() == WeightFunction::Kind::One) {
    ref = 1.0;
    const BoundingBox& box = dom.bounding_box();
    for (int j = 0; j < d; ++j)
      ref *= std::atan(box.hi[j]) - std::atan(box.lo[j]);
    ref_note = "analytic (product arctan)";
  } else {
    const std::int64_t M = std::int64_t{1} << 22;
    FunctionSpace probe = custom_space(
        d, {[](const Eigen::VectorXd&) { return 1.0; }, g}, dom);
    MomentVector mv = qmc_moments(probe, dom, WeightFunction::one(), M);
    ref = mv.values[1];
    char buf[80];
    std::snprintf(buf, sizeof buf, "qmc M=2^22 (est %.1e)", mv.error_estimate[1]);
    ref_note = buf;
  }
  std::printf("reference integral %.12g  [%s]\n", ref, ref_note.c_str());

  std::string csv = "m,K,N,rule_error,gl_nodes,gl_error,status\n";
  std::printf("%4s %6s %6s %12s %9s %12s  %s\n", "m", "K", "N", "rule_error",
              "gl_nodes", "gl_error", "status");
  for (int m = 0; m <= cfg.degree; ++m) {
    RunConfig row_cfg = cfg;
    row_cfg.degree = m;
    const int K = make_space(row_cfg).dim();
    try {
      Built b = build_rule(row_cfg);
      const double rule_err = std::abs(evaluate(b.rule(), f) - ref);
      int n_axis = 1;
      while (gauss_legendre_node_count(dom, n_axis) < b.rule().size()) ++n_axis;
      Cubature gl = gauss_legendre_reference(dom, n_axis);
      const double gl_err = std::abs(evaluate(gl, g) - ref);
      char line[160];
      std::snprintf(line, sizeof line, "%d,%d,%lld,%.17g,%lld,%.17g,ok\n", m, K,
                    static_cast<long long>(b.rule().size()), rule_err,
                    static_cast<long long>(gl.size()), gl_err);
      csv += line;
      std::printf("%4d %6d %6lld %12.3e %9lld %12.3e  ok\n", m, K,
                  static_cast<long long>(b.rule().size()), rule_err,
                  static_cast<long long>(gl.size()), gl_err);
    } catch (const std::exception& e) {
      csv += std::to_string(m) + "," + std::to_string(K) + ",,,,,failed\n";
      std::printf("%4d %6d %6s %12s %9s %12s  failed: %s\n", m, K, "-", "-",
                  "-", "-", e.what());
    }
  }
  if (!flags.csv.empty()) write_file(flags.csv, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"positive interpolatory cubature on compact domains"};
  app.require_subcommand(1);

  Flags flags;
  std::string rule_path;

  auto add_common = [&](CLI::App* sub, bool with_out) {
    sub->add_option("--domain-config", flags.domain_config,
                    "JSON config (domain, optional weight/space/degree/...)")
        ->required();
    sub->add_option("--space", flags.space, "algebraic|trigonometric");
    sub->add_option("--degree", flags.degree, "total degree m");
    sub->add_option("--sequence", flags.sequence, "bisection|halton");
    sub->add_option("--moments", flags.moments, "auto|analytic|qmc");
    sub->add_option("--qmc-samples", flags.qmc_samples,
                    "QMC sample count for moments");
    sub->add_option("--seed-cap", flags.seed_cap,
                    "cap on candidate nodes in the doubling loop");
    if (with_out) {
      sub->add_option("--out", flags.out, "rule JSON output path");
      sub->add_option("--csv", flags.csv, "CSV output path");
    }
  };

  CLI::App* construct =
      app.add_subcommand("construct", "build a positive interpolatory rule");
  add_common(construct, true);

  CLI::App* verify = app.add_subcommand("verify", "check a rule file");
  verify->add_option("rule", rule_path, "rule JSON file")->required();
  add_common(verify, false);

  CLI::App* benchmark = app.add_subcommand(
      "benchmark", "accuracy versus Gauss-Legendre at matched node budgets");
  add_common(benchmark, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (construct->parsed()) return cmd_construct(flags);
    if (verify->parsed()) return cmd_verify(rule_path, flags);
    return cmd_benchmark(flags);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
