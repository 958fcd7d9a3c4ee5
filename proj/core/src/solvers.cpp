#include "linfix/solvers.hpp"

#include <stdexcept>
#include <string>

#include "linfix/tp_operator.hpp"

namespace linfix {

namespace {

using Clock = std::chrono::steady_clock;

Seconds since(Clock::time_point start) { return Clock::now() - start; }

void notify(const IterateObserver& observe, const BitVector& v) {
  if (observe) observe(v);
}

[[noreturn]] void diverged(std::size_t limit) {
  throw std::runtime_error("fixpoint iteration did not stabilize within " + std::to_string(limit) + " products");
}

}  // namespace

std::string_view method_name(MethodKind kind) {
  switch (kind) {
    case MethodKind::tp: return "tp";
    case MethodKind::matrix: return "matrix";
    case MethodKind::col_reduct: return "col-reduct";
    case MethodKind::peval: return "peval";
    case MethodKind::peval_col_reduct: return "peval-cr";
  }
  return "unknown";
}

std::optional<MethodKind> parse_method_kind(std::string_view name) {
  for (MethodKind k : {MethodKind::tp, MethodKind::matrix, MethodKind::col_reduct, MethodKind::peval,
                       MethodKind::peval_col_reduct})
    if (method_name(k) == name) return k;
  if (name == "col_reduct") return MethodKind::col_reduct;
  if (name == "peval_col_reduct" || name == "peval_cr") return MethodKind::peval_col_reduct;
  return std::nullopt;
}

std::string Method::label() const {
  std::string out(method_name(kind));
  if (uses_k()) out += "(k=" + std::to_string(k) + ")";
  return out;
}

FixpointResult fixpoint_matrix(const SparseMatrix& m, const BitVector& v0, const IterateObserver& observe) {
  if (m.rows() != m.cols() || m.rows() != v0.size())
    throw std::invalid_argument("fixpoint_matrix: need a square matrix matching the initial vector");
  const std::size_t limit = v0.size() + 1;
  notify(observe, v0);
  FixpointResult r{v0, 0};
  for (;;) {
    BitVector u = theta(matvec(m, r.v));
    ++r.iterations;
    notify(observe, u);
    if (u == r.v) return r;
    if (r.iterations >= limit) diverged(limit);
    r.v = std::move(u);
  }
}

FixpointResult fixpoint_colreduct(const SparseMatrix& nmat, const BitVector& v0, const DRuleIndex& idx,
                                  const IterateObserver& observe) {
  if (nmat.rows() != v0.size() || nmat.cols() > v0.size())
    throw std::invalid_argument("fixpoint_colreduct: submatrix shape does not match the initial vector");
  const std::size_t n = nmat.cols();
  const std::size_t limit = v0.size() + 1;
  notify(observe, v0);
  FixpointResult r{v0, 0};
  for (;;) {
    BitVector u = theta(matvec(nmat, std::span<const std::uint8_t>(r.v).first(n)));
    for (std::size_t i = 0; i < u.size(); ++i) u[i] |= v0[i];
    propagate_d_heads(u, idx);
    ++r.iterations;
    notify(observe, u);
    if (u == r.v) return r;
    if (r.iterations >= limit) diverged(limit);
    r.v = std::move(u);
  }
}

PevalMatrix peval_program_matrix(const DProgram& dp, std::size_t k) {
  PevalMatrix out;
  auto start = Clock::now();

  const std::size_t m = dp.m;
  const std::size_t sink = m;
  BitVector d_head(m, 0);
  for (const Rule& r : dp.d) d_head[r.head] = 1;

  std::vector<const Rule*> row_rule(m, nullptr);
  for (const Rule& r : dp.q.rules()) row_rule[r.head] = &r;

  SparseMatrix::Builder b(m + 1, m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    if (const Rule* r = row_rule[i]) {
      if (r->is_fact()) {
        b.add(i, 1.0);
      } else {
        const double w = 1.0 / static_cast<double>(r->body.size());
        for (AtomId j : r->body) b.add(j, w);
      }
    } else if (d_head[i]) {
      b.add(i, 1.0);
    } else {
      b.add(sink, 1.0);
    }
    b.finish_row();
  }
  b.add(sink, 1.0);
  b.finish_row();
  SparseMatrix g = std::move(b).build();
  out.encode_time += since(start);

  start = Clock::now();
  for (std::size_t i = 0; i < k; ++i) {
    SparseMatrix next = uniform_row_weights(matmul(g, g, 0.0));
    ++out.squarings;
    if (next == g) break;
    g = std::move(next);
  }
  out.squaring_time = since(start);

  start = Clock::now();
  g = g.truncate_rows(m).truncate_columns(m).clear_rows(d_head);
  out.gamma = add_matrices(g, encode_d_rules(dp.d, m), true);
  out.encode_time += since(start);
  return out;
}

PevalResult fixpoint_peval(const DProgram& dp, std::size_t k, bool col_reduct, const IterateObserver& observe) {
  PevalMatrix pm = peval_program_matrix(dp, k);
  PevalResult out;
  out.encode_time = pm.encode_time;
  out.squaring_time = pm.squaring_time;

  auto start = Clock::now();
  const BitVector v0 = initial_vector(dp);
  SparseMatrix mat = col_reduct ? pm.gamma.truncate_columns(dp.n) : std::move(pm.gamma);
  const DRuleIndex idx(dp);
  out.encode_time += since(start);

  out.matrix_rows = mat.rows();
  out.matrix_cols = mat.cols();
  out.nnz = mat.nnz();

  start = Clock::now();
  out.fixpoint = col_reduct ? fixpoint_colreduct(mat, v0, idx, observe) : fixpoint_matrix(mat, v0, observe);
  out.fixpoint_time = since(start);
  return out;
}

SolveResult solve(const DefiniteProgram& p, Method method) {
  const auto total_start = Clock::now();
  SolveResult result;
  result.n = p.atom_count();

  if (method.kind == MethodKind::tp) {
    auto start = Clock::now();
    LeastModel lm = tp_least_model(p);
    result.fixpoint_time = since(start);
    result.model = std::move(lm.model);
    result.iterations = lm.iterations;
    result.m = result.n;
    result.total_time = since(total_start);
    return result;
  }

  auto start = Clock::now();
  const DProgram dp = to_d_program(p);
  result.transform_time = since(start);
  result.m = dp.m;

  FixpointResult fp;
  switch (method.kind) {
    case MethodKind::matrix:
    case MethodKind::col_reduct: {
      const bool reduce = method.kind == MethodKind::col_reduct;
      start = Clock::now();
      const SparseMatrix mat = reduce ? encode_submatrix(dp) : encode_d_program(dp);
      const BitVector v0 = initial_vector(dp);
      const DRuleIndex idx(dp);
      result.encode_time = since(start);
      result.matrix_rows = mat.rows();
      result.matrix_cols = mat.cols();
      result.nnz = mat.nnz();
      start = Clock::now();
      fp = reduce ? fixpoint_colreduct(mat, v0, idx) : fixpoint_matrix(mat, v0);
      result.fixpoint_time = since(start);
      break;
    }
    case MethodKind::peval:
    case MethodKind::peval_col_reduct: {
      PevalResult pr = fixpoint_peval(dp, method.k, method.kind == MethodKind::peval_col_reduct);
      result.encode_time = pr.encode_time;
      result.peval_time = pr.squaring_time;
      result.fixpoint_time = pr.fixpoint_time;
      result.matrix_rows = pr.matrix_rows;
      result.matrix_cols = pr.matrix_cols;
      result.nnz = pr.nnz;
      fp = std::move(pr.fixpoint);
      break;
    }
    case MethodKind::tp: break;
  }

  result.iterations = fp.iterations;
  result.model = restrict_model(to_interpretation(fp.v), dp.n);
  result.total_time = since(total_start);
  return result;
}

}  // namespace linfix
