#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linfix/solvers.hpp"

namespace linfix {

struct GridPoint {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::size_t> k_values;
};

struct BenchRow {
  std::size_t n = 0;
  std::size_t m = 0;  ///< rule count
  Method method;
  std::optional<std::size_t> rep;  ///< nullopt on the per-method mean row
  double iterations = 0;
  double peval_s = 0;
  double fixpoint_s = 0;
  double total_s = 0;
  std::size_t nnz = 0;
  double compression = 0;
  std::size_t model_size = 0;
};

struct BenchInstance {
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::size_t facts = 0;
  std::size_t extended_base = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<BenchInstance> instances;
  /// "n=.. m=..: method gave model size a, tp gave b" for every mismatch.
  std::vector<std::string> model_mismatches;

  /// Mean rows in run order, or every row when there are none (reps = 1).
  std::vector<BenchRow> means() const;
};

/// Runs tp, matrix and col-reduct, then peval and peval-cr for each k, on one
/// generated program per grid point, `reps` times each, sequentially. With
/// reps > 1 a mean row per (grid point, method) follows the per-rep rows.
BenchReport run_benchmark(std::span<const GridPoint> grid, std::size_t reps, std::uint64_t seed = 1);

/// k = 1, 5, n/2, n with duplicates removed.
std::vector<std::size_t> default_k_values(std::size_t n);

inline constexpr const char* kCsvHeader = "n,m,method,k,rep,iterations,peval_s,fixpoint_s,total_s,nnz,compression,model_size";

void write_csv(const BenchReport& report, std::ostream& out);
/// Throws std::runtime_error naming the path on I/O failure.
void write_csv(const BenchReport& report, const std::filesystem::path& path);

/// One whitespace table per n ("fixpoint_n<N>.dat"): m, then the mean
/// fixpoint seconds of every method. Returns the files written.
std::vector<std::filesystem::path> emit_plot_data(const BenchReport& report, const std::filesystem::path& dir);

}  // namespace linfix
