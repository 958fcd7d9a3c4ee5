#include "linfix/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>

#include "linfix/generator.hpp"

namespace linfix {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::vector<Method> bench_methods(const GridPoint& g) {
  std::vector<Method> out{Method::tp(), Method::matrix(), Method::col_reduct()};
  for (std::size_t k : g.k_values) out.push_back(Method::peval(k));
  for (std::size_t k : g.k_values) out.push_back(Method::peval_col_reduct(k));
  return out;
}

BenchRow row_of(const GridPoint& g, const Method& method, std::size_t rep, const SolveResult& r) {
  BenchRow row;
  row.n = g.n;
  row.m = g.m;
  row.method = method;
  row.rep = rep;
  row.iterations = static_cast<double>(r.iterations);
  row.peval_s = r.peval_time.count();
  row.fixpoint_s = r.fixpoint_time.count();
  row.total_s = r.total_time.count();
  row.nnz = r.nnz;
  row.compression = r.compression();
  row.model_size = r.model.count();
  return row;
}

}  // namespace

std::vector<BenchRow> BenchReport::means() const {
  std::vector<BenchRow> out;
  std::copy_if(rows.begin(), rows.end(), std::back_inserter(out), [](const BenchRow& r) { return !r.rep; });
  return out.empty() ? rows : out;
}

std::vector<std::size_t> default_k_values(std::size_t n) {
  std::vector<std::size_t> ks{1, 5, n / 2, n};
  std::erase(ks, 0);
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

BenchReport run_benchmark(std::span<const GridPoint> grid, std::size_t reps, std::uint64_t seed) {
  if (reps == 0) throw std::invalid_argument("run_benchmark: reps must be at least 1");
  BenchReport report;
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    const GridPoint& g = grid[gi];
    GenSpec spec;
    spec.n = g.n;
    spec.m = g.m;
    spec.seed = seed + gi;
    const DefiniteProgram p = generate_program(spec);
    BenchInstance inst{g.n, g.m, spec.seed, p.facts().size(), 0};

    std::optional<std::size_t> reference_size;
    for (const Method& method : bench_methods(g)) {
      BenchRow mean;
      mean.n = g.n;
      mean.m = g.m;
      mean.method = method;
      for (std::size_t rep = 0; rep < reps; ++rep) {
        const SolveResult r = solve(p, method);
        inst.extended_base = std::max(inst.extended_base, r.m);
        BenchRow row = row_of(g, method, rep, r);
        if (!reference_size) reference_size = row.model_size;
        if (row.model_size != *reference_size)
          report.model_mismatches.push_back("n=" + std::to_string(g.n) + " m=" + std::to_string(g.m) + ": " +
                                            method.label() + " gave model size " + std::to_string(row.model_size) +
                                            ", tp gave " + std::to_string(*reference_size));
        mean.iterations += row.iterations;
        mean.peval_s += row.peval_s;
        mean.fixpoint_s += row.fixpoint_s;
        mean.total_s += row.total_s;
        mean.nnz = row.nnz;
        mean.compression = row.compression;
        mean.model_size = row.model_size;
        report.rows.push_back(std::move(row));
      }
      if (reps == 1) continue;
      const double r = static_cast<double>(reps);
      mean.iterations /= r;
      mean.peval_s /= r;
      mean.fixpoint_s /= r;
      mean.total_s /= r;
      report.rows.push_back(mean);
    }
    report.instances.push_back(inst);
  }
  return report;
}

void write_csv(const BenchReport& report, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const BenchRow& r : report.rows) {
    out << r.n << ',' << r.m << ',' << method_name(r.method.kind) << ',' << r.method.k << ','
        << (r.rep ? std::to_string(*r.rep) : std::string("mean")) << ',' << num(r.iterations) << ','
        << num(r.peval_s) << ',' << num(r.fixpoint_s) << ',' << num(r.total_s) << ',' << r.nnz << ','
        << num(r.compression) << ',' << r.model_size << '\n';
  }
}

void write_csv(const BenchReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_csv(report, out);
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::vector<std::filesystem::path> emit_plot_data(const BenchReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());

  // n -> (columns in first-seen order, m -> label -> seconds)
  struct Table {
    std::vector<std::string> columns;
    std::map<std::size_t, std::map<std::string, double>> cells;
  };
  std::map<std::size_t, Table> tables;
  for (const BenchRow& r : report.means()) {
    Table& t = tables[r.n];
    const std::string label = r.method.label();
    if (std::find(t.columns.begin(), t.columns.end(), label) == t.columns.end()) t.columns.push_back(label);
    t.cells[r.m][label] = r.fixpoint_s;
  }

  std::vector<std::filesystem::path> written;
  for (const auto& [n, t] : tables) {
    const auto path = dir / ("fixpoint_n" + std::to_string(n) + ".dat");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << "# mean fixpoint seconds, n = " << n << '\n';
    for (const BenchInstance& inst : report.instances)
      if (inst.n == n)
        out << "# instance m=" << inst.m << " seed=" << inst.seed << " facts=" << inst.facts
            << " extended_base=" << inst.extended_base << '\n';
    out << "# m";
    for (const auto& c : t.columns) out << ' ' << c;
    out << '\n';
    for (const auto& [m, cells] : t.cells) {
      out << m;
      for (const auto& c : t.columns) {
        auto it = cells.find(c);
        out << ' ' << (it == cells.end() ? std::string("nan") : num(it->second));
      }
      out << '\n';
    }
    out.flush();
    if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
    written.push_back(path);
  }
  return written;
}

}  // namespace linfix
