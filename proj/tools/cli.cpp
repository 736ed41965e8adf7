#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "logwalk/logwalk.hpp"

namespace logwalk::cli {

namespace {

using Json = nlohmann::ordered_json;

/// Ordered key=value summary mirrored into an optional JSON file.
class Summary {
 public:
  template <typename T>
  void set(const std::string& key, const T& value) {
    json_[key] = value;
  }

  void emit(std::ostream& err, const std::string& json_path) const {
    for (const auto& [key, value] : json_.items()) {
      err << key << '=';
      if (value.is_string()) {
        err << value.get<std::string>();
      } else if (value.is_number_float()) {
        err << format_double(value.get<double>());
      } else {
        err << value.dump();
      }
      err << '\n';
    }
    if (!json_path.empty()) write_file_atomic(json_path, json_.dump(2) + "\n");
  }

 private:
  Json json_ = Json::object();
};

struct CommonConfig {
  std::string graph;
  std::string out;
  std::string json;
  std::uint64_t seed = kDefaultSeed;
  bool seed_given = false;
  std::string mode = "practical";
  std::uint64_t samples = 100000;
  std::uint64_t pmf_samples = 0;
  unsigned workers = 1;
  std::uint64_t trial_cap = 0;
  std::uint64_t work_limit = 0;
  double gamma = 0.1;
  double lambda = 0.0;
  bool lambda_given = false;
  bool compare_oracle = false;
};

struct SolveConfig {
  std::string b;
  double epsilon = 0.1;
  bool project = false;
  std::string norm = "entrywise";
};

struct GapConfig {
  double delta = 0.2;
};

struct AuditCliConfig {
  std::vector<std::string> algorithms;
  std::vector<std::size_t> sizes{8, 16, 32, 64, 128};
  std::uint64_t trial_cap = 8;
  std::uint64_t work_limit = 200000;
  std::uint64_t seed = kDefaultSeed;
  bool seed_given = false;
  std::string graph;
  std::string out;
};

struct OracleConfig {
  std::string graph;
  std::string b;
  std::string out;
};

void check_unit_interval(double x, const char* name) {
  if (!(x > 0.0 && x <= 1.0)) throw DomainError(std::string(name) + " must lie in (0, 1]");
}

std::uint64_t resolve_seed(std::uint64_t given, bool seed_given) {
  if (seed_given) return given;
  const char* env = std::getenv("LOGWALK_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  std::uint64_t value = 0;
  const std::string_view text(env);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw DomainError("LOGWALK_SEED is not an unsigned integer");
  }
  return value;
}

ExecutionOptions execution(const CommonConfig& c) {
  ExecutionOptions exec;
  exec.mode = c.mode == "strict" ? Mode::strict : Mode::practical;
  exec.budget.walk_samples = c.samples;
  exec.budget.pmf_samples = c.pmf_samples;
  exec.limits.trial_cap = c.trial_cap;
  exec.limits.work_limit = c.work_limit;
  exec.workers = exec.mode == Mode::practical ? std::max(1u, c.workers) : 1u;
  return exec;
}

void emit_result(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_file_atomic(path, text);
  }
}

void validate_common(const CommonConfig& c) {
  check_unit_interval(c.gamma, "gamma");
  if (c.lambda_given && !(c.lambda > 0.0 && c.lambda <= 2.0)) {
    throw DomainError("lambda must lie in (0, 2]");
  }
  if (c.samples == 0) throw DomainError("--samples must be positive");
}

void add_common(CLI::App* cmd, CommonConfig& c) {
  cmd->add_option("--graph", c.graph, "Edge-list graph file")->required();
  cmd->add_option("--out", c.out, "Result file (default: standard output)");
  cmd->add_option("--json", c.json, "Write the summary as JSON to this file");
  cmd->add_option("--seed", c.seed, "Random seed (default: LOGWALK_SEED or a fixed constant)")
      ->each([&c](const std::string&) { c.seed_given = true; });
  cmd->add_option("--mode", c.mode, "strict or practical")
      ->check(CLI::IsMember({"strict", "practical"}));
  cmd->add_option("--samples", c.samples, "Walks per hit-frequency batch (practical)");
  cmd->add_option("--pmf-samples", c.pmf_samples,
                  "Trials per pmf estimate (practical; 0 = exact pmf)");
  cmd->add_option("--workers", c.workers, "Worker threads for trial batches (practical)");
  cmd->add_option("--trial-cap", c.trial_cap, "Strict mode: cap on each repeat loop (0 = none)");
  cmd->add_option("--work-limit", c.work_limit, "Strict mode: total work units (0 = none)");
  cmd->add_option("--gamma", c.gamma, "Failure probability budget in (0, 1]");
  cmd->add_option("--lambda", c.lambda, "Lower bound on lambda_2 (default 1/(diam vol))")
      ->each([&c](const std::string&) { c.lambda_given = true; });
  cmd->add_flag("--compare-oracle", c.compare_oracle, "Compare against the dense oracle");
}

int cmd_solve(const CommonConfig& c, const SolveConfig& s, std::ostream& out,
              std::ostream& err) {
  validate_common(c);
  check_unit_interval(s.epsilon, "epsilon");
  const std::uint64_t seed = resolve_seed(c.seed, c.seed_given);
  const auto g = load_graph_file(c.graph);
  const auto b = read_vector_file(s.b);
  if (b.size() != g.size()) {
    throw DomainError("b has " + std::to_string(b.size()) + " entries, graph has " +
                      std::to_string(g.size()) + " vertices");
  }

  SolveOptions options;
  options.epsilon = s.epsilon;
  options.gamma = c.gamma;
  if (c.lambda_given) options.lambda = c.lambda;
  options.auto_project = s.project;
  options.exec = execution(c);
  const NormTarget target = s.norm == "euclidean" ? NormTarget::euclidean : NormTarget::entrywise;

  const auto result = solve(g, b, options, target, RandomSource(seed));

  Summary summary;
  summary.set("command", "solve");
  summary.set("n", g.size());
  summary.set("components", result.components);
  summary.set("mode", mode_name(options.exec.mode));
  summary.set("seed", seed);
  summary.set("norm", s.norm);
  summary.set("epsilon", s.epsilon);
  summary.set("gamma", c.gamma);
  summary.set("entry_epsilon", result.entry_epsilon);
  summary.set("entry_gamma", result.entry_gamma);
  summary.set("lambda", result.params.series.lambda);
  summary.set("T", result.params.series.horizon);
  summary.set("N", result.params.series.grid);
  summary.set("K", result.params.series.max_power);
  summary.set("delta", result.params.delta);
  summary.set("zeta", result.params.zeta);
  summary.set("r", result.params.walk_trials);
  summary.set("walk_samples", result.params.walk_samples);
  summary.set("pmf_samples", result.params.pmf_samples);
  if (options.exec.mode == Mode::practical) {
    summary.set("hit_radius", result.hit_radius);
    summary.set("pmf_radius", result.pmf_radius);
  }
  summary.set("truncated", result.truncated);
  if (c.compare_oracle) {
    if (g.size() > kSeriesMaxVertices) {
      summary.set("oracle", "skipped: more than 200 vertices");
    } else {
      const auto exact = pseudo_inverse_apply(g, b);
      double worst = 0.0;
      double sq = 0.0;
      for (std::size_t i = 0; i < exact.size(); ++i) {
        const double d = result.x[i] - exact[i];
        worst = std::max(worst, std::abs(d));
        sq += d * d;
      }
      summary.set("oracle_error_max", worst);
      summary.set("oracle_error_l2", std::sqrt(sq));
    }
  }
  emit_result(c.out, format_vector(result.x), out);
  summary.emit(err, c.json);
  return kSuccess;
}

int cmd_gap(const CommonConfig& c, const GapConfig& gc, std::ostream& out, std::ostream& err) {
  validate_common(c);
  check_unit_interval(gc.delta, "delta");
  const std::uint64_t seed = resolve_seed(c.seed, c.seed_given);
  const auto g = load_graph_file(c.graph);
  const auto components = connected_components(g);

  GapOptions options;
  options.delta = gc.delta;
  options.gamma = c.gamma;
  if (c.lambda_given) options.lambda = c.lambda;
  options.exec = execution(c);
  const RandomSource source(seed);

  Summary summary;
  summary.set("command", "gap");
  summary.set("n", g.size());
  summary.set("components", components.size());
  summary.set("mode", mode_name(options.exec.mode));
  summary.set("seed", seed);
  summary.set("delta", gc.delta);
  summary.set("gamma", c.gamma);

  std::optional<double> best;
  std::optional<double> oracle_best;
  bool truncated = false;
  for (std::size_t ci = 0; ci < components.size(); ++ci) {
    const auto& members = components[ci];
    if (members.size() == 1) continue;  // a lone vertex has no gap
    const std::string prefix = "component" + std::to_string(ci) + ".";
    const WeightedGraph sub = components.size() == 1 ? g : g.induced(members);
    double value = 0.0;
    if (members.size() < 4) {
      if (!c.compare_oracle) {
        throw TooSmallError("component " + std::to_string(ci) + " has " +
                            std::to_string(members.size()) +
                            " vertices; gap estimation needs n >= 4");
      }
      value = lambda2_exact(sub);
      summary.set(prefix + "source", "oracle");
    } else {
      const auto r = lambda2_estimate(
          sub, options, components.size() == 1 ? source : source.child({ci}));
      value = r.value;
      truncated = truncated || r.truncated;
      summary.set(prefix + "source", "estimate");
      summary.set(prefix + "lambda", r.params.lambda);
      summary.set(prefix + "tau", r.params.tau);
      summary.set(prefix + "threshold", r.threshold);
      summary.set(prefix + "norm_epsilon", r.params.epsilon);
      summary.set(prefix + "norm_zeta", r.params.zeta);
      summary.set(prefix + "norm_calls", r.norm_calls);
      summary.set(prefix + "ratio", r.ratio);
    }
    summary.set(prefix + "n", members.size());
    summary.set(prefix + "value", value);
    if (c.compare_oracle && sub.size() <= kOracleMaxVertices) {
      const double exact = lambda2_exact(sub);
      summary.set(prefix + "oracle_lambda2", exact);
      oracle_best = oracle_best ? std::min(*oracle_best, exact) : exact;
    }
    best = best ? std::min(*best, value) : value;
  }
  if (!best) throw TooSmallError("graph has no component with an edge");
  summary.set("value", *best);
  summary.set("truncated", truncated);
  if (oracle_best) {
    summary.set("oracle_lambda2", *oracle_best);
    summary.set("oracle_relative_error", std::abs(*best - *oracle_best) / *oracle_best);
  }
  emit_result(c.out, format_double(*best) + "\n", out);
  summary.emit(err, c.json);
  return kSuccess;
}

int cmd_oracle(const OracleConfig& o, std::ostream& out, std::ostream& err) {
  const auto g = load_graph_file(o.graph);
  if (g.size() > kOracleMaxVertices) {
    throw SizeError("oracle limited to " + std::to_string(kOracleMaxVertices) + " vertices");
  }
  std::vector<double> b;
  if (!o.b.empty()) {
    b = read_vector_file(o.b);
    if (b.size() != g.size()) throw DomainError("b has the wrong length");
  }
  const auto spec = spectrum(g);
  std::string text = "n " + std::to_string(g.size()) + "\n";
  if (g.size() >= 2) text += "lambda2 " + format_double(spec.values[1]) + "\n";
  text += "eigenvalues\n" + format_vector(spec.values);
  if (!b.empty()) text += "pseudo_inverse_b\n" + format_vector(pseudo_inverse_apply(spec, b));
  emit_result(o.out, text, out);
  err << "command=oracle\nn=" << g.size() << "\nsweeps=" << spec.sweeps
      << "\nconnected=" << (is_connected(g) ? "true" : "false") << '\n';
  return kSuccess;
}

int cmd_audit(const AuditCliConfig& a, std::ostream& out, std::ostream& err) {
  std::vector<AuditedAlgorithm> algorithms;
  for (const auto& name : a.algorithms) {
    const auto parsed = parse_algorithm(name);
    if (!parsed) throw DomainError("unknown algorithm '" + name + "'");
    algorithms.push_back(*parsed);
  }
  if (algorithms.empty()) {
    algorithms = {AuditedAlgorithm::solve_entry, AuditedAlgorithm::estimate_norm,
                  AuditedAlgorithm::lambda2_estimate};
  }
  AuditConfig config;
  config.seed = resolve_seed(a.seed, a.seed_given);
  config.limits.trial_cap = a.trial_cap;
  config.limits.work_limit = a.work_limit;

  std::vector<AuditRecord> records;
  if (!a.graph.empty()) {
    const auto g = load_graph_file(a.graph);
    for (auto alg : algorithms) records.push_back(audited_run(alg, g, config));
  } else {
    for (std::size_t n : a.sizes) {
      if (n < 4) throw DomainError("audit ladder sizes must be at least 4");
    }
    records = audit_cycles(algorithms, a.sizes, config);
  }

  std::string text;
  std::size_t truncated = 0;
  std::map<std::string, std::pair<std::size_t, std::size_t>> marks;  // min, max
  for (const auto& r : records) {
    text += format_record(r) + "\n";
    if (r.truncated) ++truncated;
    auto [it, inserted] = marks.try_emplace(algorithm_name(r.algorithm), r.high_water_mark,
                                            r.high_water_mark);
    if (!inserted) {
      it->second.first = std::min(it->second.first, r.high_water_mark);
      it->second.second = std::max(it->second.second, r.high_water_mark);
    }
  }
  emit_result(a.out, text, out);
  err << "command=audit\nruns=" << records.size() << "\ntruncated_runs=" << truncated << '\n';
  for (const auto& [name, range] : marks) {
    err << name << ".constant=" << (range.first == range.second ? "true" : "false") << '\n';
    err << name << ".max_mark=" << range.second << '\n';
  }
  return kSuccess;
}

}  // namespace

int exit_code(const std::exception& e) noexcept {
  if (const auto* le = dynamic_cast<const Error*>(&e)) {
    switch (le->kind()) {
      case ErrorKind::input:
        return kBadInput;
      case ErrorKind::precondition:
        return kPrecondition;
      case ErrorKind::budget:
        return kBudget;
      case ErrorKind::numerical:
        return kNumerical;
    }
  }
  return kInternal;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random-walk Laplacian solver and spectral gap estimator", "logwalk"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "logwalk 0.1.0");

  CommonConfig solve_common;
  SolveConfig solve_cfg;
  auto* solve_cmd = app.add_subcommand("solve", "Estimate L^+ b");
  add_common(solve_cmd, solve_common);
  solve_cmd->add_option("--b", solve_cfg.b, "Right-hand side vector file")->required();
  solve_cmd->add_option("--epsilon", solve_cfg.epsilon, "Precision in (0, 1]");
  solve_cmd->add_flag("--project", solve_cfg.project, "Project b onto Im(L) first");
  solve_cmd->add_option("--norm", solve_cfg.norm, "entrywise or euclidean")
      ->check(CLI::IsMember({"entrywise", "euclidean"}));

  CommonConfig gap_common;
  GapConfig gap_cfg;
  auto* gap_cmd = app.add_subcommand("gap", "Estimate the spectral gap lambda_2");
  add_common(gap_cmd, gap_common);
  gap_cmd->add_option("--delta", gap_cfg.delta, "Multiplicative precision in (0, 1]");

  OracleConfig oracle_cfg;
  auto* oracle_cmd = app.add_subcommand("oracle", "Dense spectrum and pseudo-inverse");
  oracle_cmd->add_option("--graph", oracle_cfg.graph, "Edge-list graph file")->required();
  oracle_cmd->add_option("--b", oracle_cfg.b, "Also apply the pseudo-inverse to this vector");
  oracle_cmd->add_option("--out", oracle_cfg.out, "Result file (default: standard output)");

  AuditCliConfig audit_cfg;
  auto* audit_cmd = app.add_subcommand("audit", "Register high-water marks of strict runs");
  audit_cmd->add_option("--algorithm", audit_cfg.algorithms,
                        "solve_entry, estimate_norm or lambda2_estimate (repeatable)");
  audit_cmd->add_option("--sizes", audit_cfg.sizes, "Cycle sizes of the ladder");
  audit_cmd->add_option("--graph", audit_cfg.graph, "Audit this graph instead of the ladder");
  audit_cmd->add_option("--trial-cap", audit_cfg.trial_cap, "Cap on each repeat loop");
  audit_cmd->add_option("--work-limit", audit_cfg.work_limit, "Total work units per run");
  audit_cmd->add_option("--seed", audit_cfg.seed, "Random seed")
      ->each([&audit_cfg](const std::string&) { audit_cfg.seed_given = true; });
  audit_cmd->add_option("--out", audit_cfg.out, "Report file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kBadInput;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_common, solve_cfg, out, err);
    if (*gap_cmd) return cmd_gap(gap_common, gap_cfg, out, err);
    if (*oracle_cmd) return cmd_oracle(oracle_cfg, out, err);
    if (*audit_cmd) return cmd_audit(audit_cfg, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e);
  }
  return kInternal;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("logwalk");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace logwalk::cli
