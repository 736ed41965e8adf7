#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "logwalk/execution.hpp"
#include "logwalk/graph.hpp"
#include "logwalk/registers.hpp"

namespace logwalk {

enum class AuditedAlgorithm { solve_entry, estimate_norm, lambda2_estimate };

const char* algorithm_name(AuditedAlgorithm algorithm) noexcept;
std::optional<AuditedAlgorithm> parse_algorithm(std::string_view name) noexcept;

struct AuditConfig {
  std::uint64_t seed = 1;
  /// Strict runs use astronomically many trials; the caps keep the audit
  /// at desk scale while still entering every nested loop.
  StrictLimits limits{8, 200000};
  double epsilon = 0.5;
  double gamma = 0.5;
  double delta = 1.0;
  std::uint64_t power = 2;
};

struct AuditRecord {
  AuditedAlgorithm algorithm = AuditedAlgorithm::solve_entry;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t high_water_mark = 0;
  /// A trial cap shortened a loop or the work limit stopped the run.
  bool truncated = false;
  /// The run stopped on the work limit before producing a result.
  bool budget_exhausted = false;
  std::optional<double> result;
  std::vector<RegisterFile::LogEntry> log;
};

/// Runs one strict-mode algorithm with register accounting.
///   solve_entry:      b = e_0 - e_1 projected onto Im(L) and normalized, entry 0
///   estimate_norm:    v = sigma(0, 1), power `config.power`
///   lambda2_estimate: the full Sigma loop
/// Budget exhaustion is reported in the record, not thrown.
AuditRecord audited_run(AuditedAlgorithm algorithm, const WeightedGraph& g,
                        const AuditConfig& config);

/// `algorithm n seed high_water_mark`
std::string format_record(const AuditRecord& record);

/// Audits each algorithm on the cycles C_n for every n in `sizes`.
std::vector<AuditRecord> audit_cycles(std::span<const AuditedAlgorithm> algorithms,
                                      std::span<const std::size_t> sizes,
                                      const AuditConfig& config);

}  // namespace logwalk
