#include "linfix/encoding.hpp"

#include <stdexcept>
#include <string>

namespace linfix {

SparseMatrix encode_sd(const DefiniteProgram& q, std::size_t dim) {
  if (dim < q.atom_count())
    throw std::invalid_argument("encode_sd: dimension " + std::to_string(dim) + " below atom count " +
                                std::to_string(q.atom_count()));
  std::vector<const Rule*> row_rule(dim, nullptr);
  for (const Rule& r : q.rules()) {
    if (r.is_disjunctive()) throw std::invalid_argument("encode_sd: disjunctive rule for '" + q.name(r.head) + "'");
    if (row_rule[r.head]) throw std::invalid_argument("encode_sd: '" + q.name(r.head) + "' is defined twice");
    row_rule[r.head] = &r;
  }
  SparseMatrix::Builder b(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (const Rule* r = row_rule[i]) {
      if (r->is_fact()) {
        b.add(i, 1.0);
      } else {
        const double w = 1.0 / static_cast<double>(r->body.size());
        for (AtomId j : r->body) b.add(j, w);
      }
    }
    b.finish_row();
  }
  return std::move(b).build();
}

SparseMatrix encode_d_rules(std::span<const Rule> d, std::size_t m) {
  std::vector<Triplet> entries;
  for (const Rule& r : d)
    for (AtomId j : r.body) entries.push_back({r.head, j, 1.0});
  return SparseMatrix::from_triplets(m, m, std::move(entries));
}

SparseMatrix encode_d_program(const DProgram& dp) {
  return add_matrices(encode_sd(dp.q, dp.m), encode_d_rules(dp.d, dp.m), true);
}

SparseMatrix encode_submatrix(const DProgram& dp) { return encode_d_program(dp).truncate_columns(dp.n); }

SparseMatrix encode_constraints(const ConstraintSet& c, std::size_t n) {
  SparseMatrix::Builder b(c.size(), n);
  for (const auto& body : c.bodies) {
    if (body.empty()) throw std::invalid_argument("encode_constraints: empty constraint body");
    const double w = 1.0 / static_cast<double>(body.size());
    for (AtomId j : body) b.add(j, w);
    b.finish_row();
  }
  return std::move(b).build();
}

BitVector initial_vector(const DefiniteProgram& p) {
  BitVector v(p.atom_count(), 0);
  for (AtomId f : p.facts()) v[f] = 1;
  return v;
}

BitVector initial_vector(const DProgram& dp) {
  BitVector v(dp.m, 0);
  for (AtomId f : dp.q.facts()) v[f] = 1;
  return v;
}

BitVector theta(std::span<const double> v) {
  BitVector out(v.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] >= 1.0 - kThetaTolerance ? 1 : 0;
  return out;
}

DRuleIndex::DRuleIndex(const DProgram& dp) : DRuleIndex(dp.n, dp.m, dp.d) {}

DRuleIndex::DRuleIndex(std::size_t n, std::size_t m, std::span<const Rule> d) : n_(n), heads_(m - n, kNoHead) {
  if (m < n) throw std::invalid_argument("DRuleIndex: extended base smaller than original base");
  for (const Rule& r : d) {
    if (r.head >= n) throw std::invalid_argument("DRuleIndex: d-rule head must be an original atom");
    for (AtomId j : r.body) {
      if (j < n || j >= m) throw std::invalid_argument("DRuleIndex: d-rule body atom outside the fresh range");
      heads_[j - n] = r.head;
    }
  }
}

BitVector theta_d(std::span<const double> v, const DRuleIndex& idx) {
  BitVector w = theta(v);
  propagate_d_heads(w, idx);
  return w;
}

void propagate_d_heads(BitVector& w, const DRuleIndex& idx) {
  if (idx.empty()) return;
  if (w.size() != idx.m()) throw std::invalid_argument("theta_d: vector length does not match the extended base");
  for (std::size_t j = idx.n(); j < idx.m(); ++j)
    if (w[j] && idx.head_of(j) != DRuleIndex::kNoHead) w[idx.head_of(j)] = 1;
}

BitVector to_bits(const Interpretation& i) {
  BitVector v(i.universe(), 0);
  for (AtomId a : i.members()) v[a] = 1;
  return v;
}

Interpretation to_interpretation(std::span<const std::uint8_t> bits) {
  Interpretation i(bits.size());
  for (std::size_t k = 0; k < bits.size(); ++k)
    if (bits[k]) i.insert(static_cast<AtomId>(k));
  return i;
}

StateVector embed(std::span<const std::uint8_t> bits) { return StateVector(bits.begin(), bits.end()); }

ConstraintReport check_constraints_vec(const SparseMatrix& mc, std::span<const std::uint8_t> v) {
  const BitVector hits = theta(matvec(mc, v));
  ConstraintReport report;
  for (std::size_t i = 0; i < hits.size(); ++i)
    if (hits[i]) report.violated.push_back(i);
  return report;
}

}  // namespace linfix
