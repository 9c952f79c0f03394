#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "stabext/matrix.hpp"

namespace stabext {

struct ValidationReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

struct SymmetrizingForm {
  Vec lambda;  // linear functional as a coordinate row vector
};

enum class FormSearchStatus { Found, CertifiedAbsent, NotFoundWithinBudget };

struct FormSearchResult {
  FormSearchStatus status;
  std::optional<SymmetrizingForm> form;
};

/// A finite-dimensional algebra given by a full multiplication table together
/// with its unit, a complete set of primitive orthogonal idempotents, and a
/// basis of the Jacobson radical.
///
/// The radical and idempotents are input contract: validation checks the
/// necessary conditions (nilpotent two-sided ideal, orthogonality, basic and
/// split quotient) but cannot certify radical maximality.  A corrupted entry
/// passing these checks is the operator's responsibility.
struct AlgebraPresentation {
  FieldSpec field = FieldSpec::rationals();
  size_t dim = 0;
  std::vector<std::string> basis_labels;
  // table[i][j] = coordinates of b_i * b_j
  std::vector<std::vector<Vec>> table;
  Vec unit;
  std::vector<Vec> idempotents;
  std::vector<Vec> radical;
  std::string name;
  std::string provenance;

  // Derived data, filled in by validate_algebra.
  std::vector<Vec> generators;  // small set generating A together with the unit
  size_t loewy_length = 0;      // least k with J^k = 0

  mutable std::shared_ptr<const AlgebraPresentation> opposite_cache;
  mutable std::shared_ptr<void> projectives_cache;

  Vec multiply(const Vec& x, const Vec& y) const {
    Vec r(dim, Scalar(0));
    for (size_t i = 0; i < dim; ++i) {
      if (x[i] == 0) continue;
      for (size_t j = 0; j < dim; ++j) {
        if (y[j] == 0) continue;
        const Scalar c = field.mul(x[i], y[j]);
        const Vec& t = table[i][j];
        for (size_t k = 0; k < dim; ++k)
          if (t[k] != 0) r[k] += c * t[k];
      }
    }
    for (auto& v : r) v = field.reduce(v);
    return r;
  }

  /// Matrix of left multiplication by x on A.
  Mat left_mult(const Vec& x) const {
    Mat m(field, dim, dim);
    for (size_t j = 0; j < dim; ++j) {
      Vec ej(dim, Scalar(0));
      ej[j] = 1;
      Vec col = multiply(x, ej);
      for (size_t k = 0; k < dim; ++k) m.at(k, j) = col[k];
    }
    return m;
  }

  /// Matrix of right multiplication by x on A.
  Mat right_mult(const Vec& x) const {
    Mat m(field, dim, dim);
    for (size_t i = 0; i < dim; ++i) {
      Vec ei(dim, Scalar(0));
      ei[i] = 1;
      Vec col = multiply(ei, x);
      for (size_t k = 0; k < dim; ++k) m.at(k, i) = col[k];
    }
    return m;
  }

  Vec basis_vector(size_t i) const {
    Vec v(dim, Scalar(0));
    v[i] = 1;
    return v;
  }
};

using AlgebraPtr = std::shared_ptr<const AlgebraPresentation>;

namespace detail {

/// Span of the given vectors, as a matrix whose columns form a basis.
inline Mat span_basis(FieldSpec f, size_t dim, const std::vector<Vec>& vecs) {
  if (vecs.empty()) return Mat(f, dim, 0);
  return column_space_basis(Mat::from_columns(f, dim, vecs));
}

/// Smallest subspace containing `seed` and closed under left/right
/// multiplication by all basis elements of A (a two-sided ideal check helper).
inline bool spans_two_sided_ideal(const AlgebraPresentation& a, const Mat& basis,
                                  std::string* offending) {
  for (size_t i = 0; i < a.dim; ++i) {
    Vec bi = a.basis_vector(i);
    for (size_t c = 0; c < basis.cols(); ++c) {
      Vec r = basis.column(c);
      Vec lr = a.multiply(bi, r);
      Vec rr = a.multiply(r, bi);
      if (!in_column_space(basis, lr) || !in_column_space(basis, rr)) {
        if (offending) *offending = "basis element " + std::to_string(i);
        return false;
      }
    }
  }
  return true;
}

}  // namespace detail

/// Check every structural invariant of the presentation.  The algebra is
/// usable downstream only if the report is clean; validation also fills in
/// the derived generator set and Loewy length.
inline ValidationReport validate_algebra(AlgebraPresentation& a) {
  ValidationReport rep;
  const FieldSpec f = a.field;
  const size_t n = a.dim;

  auto shape_ok = [&]() {
    if (a.table.size() != n) return false;
    for (const auto& row : a.table) {
      if (row.size() != n) return false;
      for (const auto& v : row)
        if (v.size() != n) return false;
    }
    return a.unit.size() == n;
  };
  if (!shape_ok()) {
    rep.failures.push_back("shape: multiplication table or unit has wrong dimensions");
    return rep;
  }

  // associativity on all basis triples
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) {
        Vec lhs = a.multiply(a.table[i][j], a.basis_vector(k));
        Vec rhs = a.multiply(a.basis_vector(i), a.table[j][k]);
        if (lhs != rhs) {
          rep.failures.push_back("associativity fails on basis triple (" + std::to_string(i) +
                                 "," + std::to_string(j) + "," + std::to_string(k) + ")");
          if (rep.failures.size() > 8) return rep;
        }
      }
  if (!rep.failures.empty()) return rep;

  // unit is a two-sided identity
  for (size_t j = 0; j < n; ++j) {
    if (a.multiply(a.unit, a.basis_vector(j)) != a.basis_vector(j) ||
        a.multiply(a.basis_vector(j), a.unit) != a.basis_vector(j)) {
      rep.failures.push_back("unit fails on basis element " + std::to_string(j));
    }
  }

  // idempotents: complete set of orthogonal idempotents
  if (a.idempotents.empty()) rep.failures.push_back("idempotents: none declared");
  Vec sum(n, Scalar(0));
  for (size_t i = 0; i < a.idempotents.size(); ++i) {
    const Vec& e = a.idempotents[i];
    if (e.size() != n) {
      rep.failures.push_back("idempotent " + std::to_string(i) + ": wrong length");
      continue;
    }
    if (a.multiply(e, e) != e)
      rep.failures.push_back("idempotent " + std::to_string(i) + ": e*e != e");
    for (size_t j = 0; j < a.idempotents.size(); ++j) {
      if (i == j) continue;
      Vec prod = a.multiply(e, a.idempotents[j]);
      for (const auto& c : prod)
        if (c != 0) {
          rep.failures.push_back("idempotents " + std::to_string(i) + "," + std::to_string(j) +
                                 " not orthogonal");
          break;
        }
    }
    for (size_t k = 0; k < n; ++k) sum[k] = f.add(sum[k], e[k]);
  }
  if (sum != a.unit) rep.failures.push_back("idempotents do not sum to the unit");

  // radical: two-sided nilpotent ideal
  Mat jbasis = detail::span_basis(f, n, a.radical);
  if (jbasis.cols() != a.radical.size())
    rep.failures.push_back("radical basis is linearly dependent");
  std::string offender;
  if (!detail::spans_two_sided_ideal(a, jbasis, &offender))
    rep.failures.push_back("radical is not a two-sided ideal (closure fails at " + offender + ")");

  // nilpotency: J ⊇ J^2 ⊇ ... reaches zero within dim steps
  {
    Mat power = jbasis;
    size_t k = 1;
    while (power.cols() > 0 && k <= n + 1) {
      std::vector<Vec> next;
      for (size_t c = 0; c < jbasis.cols(); ++c)
        for (size_t d = 0; d < power.cols(); ++d)
          next.push_back(a.multiply(jbasis.column(c), power.column(d)));
      power = detail::span_basis(f, n, next);
      ++k;
    }
    if (power.cols() > 0)
      rep.failures.push_back("radical is not nilpotent within dim steps");
    else
      a.loewy_length = k;
  }

  // basic split quotient: dim A/J must equal the number of idempotents,
  // which forces every simple module to be one-dimensional.
  if (n - jbasis.cols() != a.idempotents.size())
    rep.failures.push_back("dim A/J != number of idempotents (algebra not basic split)");

  if (!rep.failures.empty()) return rep;

  // derived: a small generating set (idempotents plus radical elements added
  // greedily until the generated unital subalgebra is all of A)
  {
    std::vector<Vec> gens;
    std::vector<Vec> closure = {a.unit};
    for (const auto& e : a.idempotents) {
      gens.push_back(e);
      closure.push_back(e);
    }
    auto close = [&]() {
      Mat span = detail::span_basis(f, n, closure);
      bool grew = true;
      while (grew && span.cols() < n) {
        grew = false;
        std::vector<Vec> next;
        for (size_t c = 0; c < span.cols(); ++c) next.push_back(span.column(c));
        for (const auto& g : gens)
          for (size_t c = 0; c < span.cols(); ++c) {
            next.push_back(a.multiply(g, span.column(c)));
            next.push_back(a.multiply(span.column(c), g));
          }
        Mat bigger = detail::span_basis(f, n, next);
        if (bigger.cols() > span.cols()) {
          span = bigger;
          grew = true;
        }
      }
      return span;
    };
    Mat span = close();
    for (const auto& r : a.radical) {
      if (span.cols() == n) break;
      if (in_column_space(span, r)) continue;
      gens.push_back(r);
      closure.push_back(r);
      span = close();
    }
    if (span.cols() != n)
      rep.failures.push_back("internal: generator closure did not reach the whole algebra");
    a.generators = gens;
  }

  return rep;
}

/// Gram matrix of the bilinear form (a,b) -> lambda(ab).
inline Mat gram_matrix(const AlgebraPresentation& a, const Vec& lambda) {
  Mat g(a.field, a.dim, a.dim);
  for (size_t i = 0; i < a.dim; ++i)
    for (size_t j = 0; j < a.dim; ++j) {
      Scalar s(0);
      const Vec& prod = a.table[i][j];
      for (size_t k = 0; k < a.dim; ++k)
        if (prod[k] != 0 && lambda[k] != 0) s += prod[k] * lambda[k];
      g.at(i, j) = a.field.reduce(s);
    }
  return g;
}

/// Search the space of trace-symmetric functionals for one whose Gram matrix
/// is nondegenerate.  Deterministic sweep over a small coefficient lattice
/// first, then a seeded randomized search.  Over a finite field the whole
/// solution space is enumerated when small enough, so absence is certified.
inline FormSearchResult find_symmetrizing_form(const AlgebraPresentation& a,
                                               uint64_t seed = 0,
                                               size_t budget = 4096) {
  const FieldSpec f = a.field;
  const size_t n = a.dim;

  // constraints lambda(b_i b_j - b_j b_i) = 0 for i < j
  std::vector<Vec> rows;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      Vec row(n, Scalar(0));
      for (size_t k = 0; k < n; ++k) row[k] = f.sub(a.table[i][j][k], a.table[j][i][k]);
      rows.push_back(row);
    }
  Mat constraint(f, rows.size(), n);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t k = 0; k < n; ++k) constraint.at(i, k) = rows[i][k];
  Mat sol = kernel_basis(constraint);  // columns span the symmetric functionals
  const size_t s = sol.cols();
  if (s == 0) return {FormSearchStatus::CertifiedAbsent, std::nullopt};

  auto try_coeffs = [&](const Vec& t) -> std::optional<SymmetrizingForm> {
    Vec lambda(n, Scalar(0));
    bool nonzero = false;
    for (size_t c = 0; c < s; ++c) {
      if (t[c] == 0) continue;
      nonzero = true;
      for (size_t k = 0; k < n; ++k) lambda[k] = f.add(lambda[k], f.mul(t[c], sol.at(k, c)));
    }
    if (!nonzero) return std::nullopt;
    if (rank(gram_matrix(a, lambda)) == n) return SymmetrizingForm{lambda};
    return std::nullopt;
  };

  // exhaustive enumeration over F_p when feasible: certifies nonexistence
  if (!f.is_rational()) {
    const unsigned long p = f.characteristic();
    double total = 1;
    for (size_t c = 0; c < s && total <= double(budget) * p; ++c) total *= double(p);
    if (total <= double(budget) * p) {
      Vec t(s, Scalar(0));
      const size_t count = static_cast<size_t>(total);
      for (size_t idx = 0; idx < count; ++idx) {
        size_t v = idx;
        for (size_t c = 0; c < s; ++c) {
          t[c] = f.from_long(static_cast<long>(v % p));
          v /= p;
        }
        if (auto got = try_coeffs(t)) return {FormSearchStatus::Found, got};
      }
      return {FormSearchStatus::CertifiedAbsent, std::nullopt};
    }
  }

  // deterministic sweep: single basis directions, then {-1,0,1} lattice
  for (size_t c = 0; c < s; ++c) {
    Vec t(s, Scalar(0));
    t[c] = 1;
    if (auto got = try_coeffs(t)) return {FormSearchStatus::Found, got};
  }
  double lattice = 1;
  for (size_t c = 0; c < s && lattice <= double(budget); ++c) lattice *= 3;
  if (lattice <= double(budget)) {
    const size_t count = static_cast<size_t>(lattice);
    for (size_t idx = 0; idx < count; ++idx) {
      size_t v = idx;
      Vec t(s, Scalar(0));
      for (size_t c = 0; c < s; ++c) {
        t[c] = f.from_long(static_cast<long>(v % 3) - 1);
        v /= 3;
      }
      if (auto got = try_coeffs(t)) return {FormSearchStatus::Found, got};
    }
  }
  std::mt19937_64 rng(seed);
  for (size_t trial = 0; trial < budget; ++trial) {
    Vec t(s);
    for (size_t c = 0; c < s; ++c) t[c] = f.random(rng);
    if (auto got = try_coeffs(t)) return {FormSearchStatus::Found, got};
  }
  return {FormSearchStatus::NotFoundWithinBudget, std::nullopt};
}

/// Structure constants transposed; involutive.
inline AlgebraPresentation opposite_algebra(const AlgebraPresentation& a) {
  AlgebraPresentation op = a;
  op.name = a.name + "^op";
  op.opposite_cache.reset();
  op.projectives_cache.reset();
  op.generators.clear();
  for (size_t i = 0; i < a.dim; ++i)
    for (size_t j = 0; j < a.dim; ++j) op.table[i][j] = a.table[j][i];
  ValidationReport r = validate_algebra(op);
  if (!r.ok()) throw std::logic_error("opposite_algebra: opposite failed validation: " + r.failures[0]);
  return op;
}

/// Shared, cached opposite; the cache links both directions so that taking
/// the opposite twice returns the original pointer.
inline AlgebraPtr opposite_of(const AlgebraPtr& a) {
  if (a->opposite_cache) return a->opposite_cache;
  auto op = std::make_shared<AlgebraPresentation>(opposite_algebra(*a));
  op->opposite_cache = a;
  a->opposite_cache = op;
  return op;
}

}  // namespace stabext
