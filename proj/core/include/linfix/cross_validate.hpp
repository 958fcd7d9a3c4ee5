#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "linfix/generator.hpp"
#include "linfix/solvers.hpp"

namespace linfix {

using SolveFn = std::function<SolveResult(const DefiniteProgram&, Method)>;

struct Disagreement {
  std::size_t instance = 0;
  Method method;
  std::vector<std::string> expected;  ///< T_P least model, sorted names
  std::vector<std::string> actual;
};

struct InstanceRecord {
  GenSpec spec;
  std::size_t facts = 0;
  std::size_t extended_base = 0;
  std::size_t model_size = 0;
  std::size_t matrix_iterations = 0;      ///< 0 when the matrix method was not run
  std::size_t col_reduct_iterations = 0;  ///< 0 when column reduction was not run
};

struct CrossValidationReport {
  std::vector<InstanceRecord> instances;
  std::vector<Disagreement> disagreements;
  /// Instances where column reduction needed more products than the full matrix.
  std::vector<std::size_t> iteration_order_violations;
  /// Engines that threw, as "instance: method: message".
  std::vector<std::string> errors;

  bool ok() const noexcept { return disagreements.empty() && iteration_order_violations.empty() && errors.empty(); }
};

/// Generates every spec, computes the T_P least model, and compares each
/// method against it. Instances fan out over `workers` threads (0 = hardware
/// concurrency); the report is ordered by instance regardless.
CrossValidationReport cross_validate(std::span<const GenSpec> specs, std::span<const Method> methods,
                                     const SolveFn& solver = solve, unsigned workers = 0);

/// `count` specs cycling through n in `atoms` and m = factor * n for each
/// factor in `rule_factors`, seeded base_seed, base_seed + 1, ...
std::vector<GenSpec> campaign_specs(std::size_t count, std::span<const std::size_t> atoms,
                                    std::span<const std::size_t> rule_factors, std::uint64_t base_seed);

}  // namespace linfix
