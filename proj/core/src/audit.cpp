#include "logwalk/audit.hpp"

#include <cmath>

#include "logwalk/errors.hpp"
#include "logwalk/generators.hpp"
#include "logwalk/solver.hpp"
#include "logwalk/spectral.hpp"

namespace logwalk {

const char* algorithm_name(AuditedAlgorithm algorithm) noexcept {
  switch (algorithm) {
    case AuditedAlgorithm::solve_entry:
      return "solve_entry";
    case AuditedAlgorithm::estimate_norm:
      return "estimate_norm";
    case AuditedAlgorithm::lambda2_estimate:
      return "lambda2_estimate";
  }
  return "unknown";
}

std::optional<AuditedAlgorithm> parse_algorithm(std::string_view name) noexcept {
  for (auto a : {AuditedAlgorithm::solve_entry, AuditedAlgorithm::estimate_norm,
                 AuditedAlgorithm::lambda2_estimate}) {
    if (name == algorithm_name(a)) return a;
  }
  return std::nullopt;
}

namespace {

/// Unit vector along e_0 - e_1 with its kernel component removed.
std::vector<double> audit_rhs(const WeightedGraph& g) {
  std::vector<double> b(g.size(), 0.0);
  b[0] = 1.0;
  b[1] = -1.0;
  const auto projected = project_to_image(g, b);
  std::vector<double> out(projected.entries().begin(), projected.entries().end());
  const double norm = norm2(out);
  for (double& x : out) x /= norm;
  return out;
}

}  // namespace

AuditRecord audited_run(AuditedAlgorithm algorithm, const WeightedGraph& g,
                        const AuditConfig& config) {
  if (g.size() < 2) throw TooSmallError("audited runs need at least two vertices");
  RegisterFile file;
  ExecutionOptions exec;
  exec.mode = Mode::strict;
  exec.limits = config.limits;
  exec.registers = &file;
  const RandomSource source(config.seed);

  AuditRecord record;
  record.algorithm = algorithm;
  record.n = g.size();
  record.seed = config.seed;
  try {
    switch (algorithm) {
      case AuditedAlgorithm::solve_entry: {
        SolveOptions options;
        options.epsilon = config.epsilon;
        options.gamma = config.gamma;
        options.exec = exec;
        const auto b = audit_rhs(g);
        const auto r = solve_entry(g, b, 0, options, source);
        record.result = r.value;
        record.truncated = r.truncated;
        break;
      }
      case AuditedAlgorithm::estimate_norm: {
        const auto r = estimate_norm(g, config.power, sigma_vector(g, 0, 1), config.epsilon,
                                     config.gamma, exec, source);
        record.result = r.value;
        record.truncated = r.truncated;
        break;
      }
      case AuditedAlgorithm::lambda2_estimate: {
        GapOptions options;
        options.delta = config.delta;
        options.gamma = config.gamma;
        options.exec = exec;
        const auto r = lambda2_estimate(g, options, source);
        record.result = r.value;
        record.truncated = r.truncated;
        break;
      }
    }
  } catch (const BudgetError&) {
    record.truncated = true;
    record.budget_exhausted = true;
  }
  record.high_water_mark = file.high_water_mark();
  record.log = file.log();
  return record;
}

std::string format_record(const AuditRecord& record) {
  return std::string(algorithm_name(record.algorithm)) + ' ' + std::to_string(record.n) + ' ' +
         std::to_string(record.seed) + ' ' + std::to_string(record.high_water_mark);
}

std::vector<AuditRecord> audit_cycles(std::span<const AuditedAlgorithm> algorithms,
                                      std::span<const std::size_t> sizes,
                                      const AuditConfig& config) {
  std::vector<AuditRecord> records;
  for (auto algorithm : algorithms) {
    for (std::size_t n : sizes) records.push_back(audited_run(algorithm, cycle_graph(n), config));
  }
  return records;
}

}  // namespace logwalk
