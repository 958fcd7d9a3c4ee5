#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>

#include "linfix/program.hpp"

namespace linfix {

/// Share of non-fact rules by body size 0..8 (index = size). Size 8 takes
/// the upper end of its 0-1% band, so sizes 1..8 sum to exactly 1.
inline constexpr std::array<double, 9> kDefaultBodySizeDistribution = {0.0,  0.04, 0.04, 0.10, 0.40,
                                                                       0.35, 0.04, 0.02, 0.01};

struct GenSpec {
  std::size_t n = 1;  ///< atoms p0..p{n-1}
  std::size_t m = 1;  ///< rules, facts included
  std::uint64_t seed = 0;
  std::array<double, 9> body_dist = kDefaultBodySizeDistribution;
  /// The fact count x is drawn uniformly with 1 <= x < n * fact_fraction_bound.
  double fact_fraction_bound = 1.0 / 3.0;
};

/// Largest admissible fact count for `spec` (at least 1, at most m).
std::size_t max_fact_count(const GenSpec& spec);

/// Random definite program: x facts on distinct heads, then m - x rules with
/// body sizes split by body_dist quotas in shuffled order, a uniform head, and a body sampled
/// without replacement from the other atoms. Duplicate rules are redrawn.
/// Deterministic in the seed. Throws std::invalid_argument when the spec
/// cannot be met (n or m zero, body sizes above n - 1, too few distinct rules).
DefiniteProgram generate_program(const GenSpec& spec);

/// Like generate_program but every atom heads at most one rule (requires m <= n).
DefiniteProgram generate_sd_program(const GenSpec& spec);

/// Count of rules per body size; sizes above 8 land in the last bucket.
std::array<std::size_t, 9> body_size_histogram(const DefiniteProgram& p);

/// rules-per-head -> number of atoms with that many defining rules.
std::map<std::size_t, std::size_t> head_multiplicity(const DefiniteProgram& p);

}  // namespace linfix
