#pragma once

#include <string>
#include <vector>

#include "stabext/decomp.hpp"
#include "stabext/module.hpp"

namespace stabext {

// Hand-derivable fixture algebras.  Each builder returns an already
// validated presentation; the multiplication tables are small enough to
// write down directly and validation re-checks every axiom.

/// k[x]/(x^n): basis 1, x, ..., x^{n-1}.
inline AlgebraPtr truncated_polynomial_algebra(FieldSpec f, size_t n, const std::string& name) {
  AlgebraPresentation a;
  a.field = f;
  a.dim = n;
  a.name = name;
  a.provenance = "generated: truncated polynomial algebra";
  for (size_t i = 0; i < n; ++i) a.basis_labels.push_back(i == 0 ? "1" : "x^" + std::to_string(i));
  a.table.assign(n, std::vector<Vec>(n, Vec(n, Scalar(0))));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i + j < n) a.table[i][j][i + j] = 1;
  a.unit = a.basis_vector(0);
  a.idempotents = {a.unit};
  for (size_t i = 1; i < n; ++i) a.radical.push_back(a.basis_vector(i));
  ValidationReport r = validate_algebra(a);
  if (!r.ok()) throw std::logic_error("fixture " + name + " failed validation: " + r.failures[0]);
  return std::make_shared<AlgebraPresentation>(std::move(a));
}

/// F_2[C_2] with the group basis {1, g}.
inline AlgebraPtr group_algebra_c2() {
  FieldSpec f = FieldSpec::prime(2);
  AlgebraPresentation a;
  a.field = f;
  a.dim = 2;
  a.name = "F2[C2]";
  a.provenance = "generated: group algebra of the cyclic group of order 2";
  a.basis_labels = {"1", "g"};
  a.table.assign(2, std::vector<Vec>(2, Vec(2, Scalar(0))));
  a.table[0][0][0] = 1;
  a.table[0][1][1] = 1;
  a.table[1][0][1] = 1;
  a.table[1][1][0] = 1;  // g^2 = 1
  a.unit = a.basis_vector(0);
  a.idempotents = {a.unit};
  a.radical = {{Scalar(1), Scalar(1)}};  // 1 + g
  ValidationReport r = validate_algebra(a);
  if (!r.ok()) throw std::logic_error("fixture F2[C2] failed validation: " + r.failures[0]);
  return std::make_shared<AlgebraPresentation>(std::move(a));
}

/// F_2[C_2 x C_2] with group basis {1, g, h, gh}.
inline AlgebraPtr group_algebra_klein() {
  FieldSpec f = FieldSpec::prime(2);
  AlgebraPresentation a;
  a.field = f;
  a.dim = 4;
  a.name = "F2[C2xC2]";
  a.provenance = "generated: group algebra of the Klein four group";
  a.basis_labels = {"1", "g", "h", "gh"};
  a.table.assign(4, std::vector<Vec>(4, Vec(4, Scalar(0))));
  // group multiplication: indices as bitmasks (g = 1, h = 2)
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) a.table[i][j][i ^ j] = 1;
  a.unit = a.basis_vector(0);
  a.idempotents = {a.unit};
  a.radical = {{Scalar(1), Scalar(1), Scalar(0), Scalar(0)},
               {Scalar(1), Scalar(0), Scalar(1), Scalar(0)},
               {Scalar(1), Scalar(0), Scalar(0), Scalar(1)}};
  ValidationReport r = validate_algebra(a);
  if (!r.ok()) throw std::logic_error("fixture F2[C2xC2] failed validation: " + r.failures[0]);
  return std::make_shared<AlgebraPresentation>(std::move(a));
}

/// Symmetric Nakayama algebra with two simples and Loewy length three.
/// Quiver 1 <-> 2 with arrows a: 1->2, b: 2->1; paths of length three vanish.
/// Basis: e1, e2, a, b, c1 = ab (cycle at 1), c2 = ba (cycle at 2); products
/// compose paths left to right.
inline AlgebraPtr nakayama_symmetric_two(FieldSpec f) {
  AlgebraPresentation alg;
  alg.field = f;
  alg.dim = 6;
  alg.name = "Nakayama(2,3)";
  alg.provenance = "generated: symmetric Nakayama algebra, two vertices, Loewy length 3";
  alg.basis_labels = {"e1", "e2", "a", "b", "c1", "c2"};
  const size_t E1 = 0, E2 = 1, A = 2, B = 3, C1 = 4, C2 = 5;
  alg.table.assign(6, std::vector<Vec>(6, Vec(6, Scalar(0))));
  auto set = [&](size_t i, size_t j, size_t k) { alg.table[i][j][k] = 1; };
  // start/end vertices: e1 at 1; e2 at 2; a: 1->2; b: 2->1; c1: 1->1; c2: 2->2
  set(E1, E1, E1);
  set(E2, E2, E2);
  set(E1, A, A);
  set(A, E2, A);
  set(E2, B, B);
  set(B, E1, B);
  set(E1, C1, C1);
  set(C1, E1, C1);
  set(E2, C2, C2);
  set(C2, E2, C2);
  set(A, B, C1);  // a then b: cycle at 1
  set(B, A, C2);  // b then a: cycle at 2
  // all length-three compositions vanish: a.c2, c1.a, b.c1, c2.b, c1.c1, c2.c2
  alg.unit = Vec(6, Scalar(0));
  alg.unit[E1] = 1;
  alg.unit[E2] = 1;
  alg.idempotents = {alg.basis_vector(E1), alg.basis_vector(E2)};
  alg.radical = {alg.basis_vector(A), alg.basis_vector(B), alg.basis_vector(C1),
                 alg.basis_vector(C2)};
  ValidationReport r = validate_algebra(alg);
  if (!r.ok()) throw std::logic_error("fixture Nakayama(2,3) failed validation: " + r.failures[0]);
  return std::make_shared<AlgebraPresentation>(std::move(alg));
}

/// Path algebra of the quiver 1 -> 2 (not self-injective; used as the
/// certified-no-symmetrizing-form fixture).
inline AlgebraPtr path_algebra_a2(FieldSpec f) {
  AlgebraPresentation a;
  a.field = f;
  a.dim = 3;
  a.name = "kA2";
  a.provenance = "generated: path algebra of the A2 quiver";
  a.basis_labels = {"e1", "e2", "a"};
  a.table.assign(3, std::vector<Vec>(3, Vec(3, Scalar(0))));
  a.table[0][0][0] = 1;  // e1 e1
  a.table[1][1][1] = 1;  // e2 e2
  a.table[0][2][2] = 1;  // e1 a = a
  a.table[2][1][2] = 1;  // a e2 = a
  a.unit = {Scalar(1), Scalar(1), Scalar(0)};
  a.idempotents = {a.basis_vector(0), a.basis_vector(1)};
  a.radical = {a.basis_vector(2)};
  ValidationReport r = validate_algebra(a);
  if (!r.ok()) throw std::logic_error("fixture kA2 failed validation: " + r.failures[0]);
  return std::make_shared<AlgebraPresentation>(std::move(a));
}

/// The eight-dimensional local symmetric algebra with three generators
/// x0, x1, x2, relations x_i^2 = 0 and the q-commutation rules
/// x1 x0 = q x0 x1, x2 x1 = q x1 x2, x0 x2 = q x2 x0.
/// Basis: ordered monomials indexed by subsets of {0,1,2}.
inline AlgebraPtr q_exterior_algebra(FieldSpec f, const Scalar& q, const std::string& name) {
  if (q == 0) throw std::invalid_argument("q_exterior_algebra: q must be nonzero");
  AlgebraPresentation a;
  a.field = f;
  a.dim = 8;
  a.name = name;
  a.provenance = "generated: q-commutation local symmetric algebra, q=" + q.get_str();
  const char* labels[8] = {"1", "x0", "x1", "x2", "x0x1", "x0x2", "x1x2", "x0x1x2"};
  for (int i = 0; i < 8; ++i) a.basis_labels.push_back(labels[i]);

  // basis index = bitmask of letters present, letters multiplied in
  // ascending order
  auto mask_index = [](unsigned mask) -> size_t {
    static const size_t lookup[8] = {0, 1, 2, 4, 3, 5, 6, 7};
    // masks: 0->1, 1->x0, 2->x1, 3->x0x1, 4->x2, 5->x0x2, 6->x1x2, 7->x0x1x2
    return lookup[mask];
  };
  auto index_mask = [](size_t idx) -> unsigned {
    static const unsigned lookup[8] = {0, 1, 2, 4, 3, 5, 6, 7};
    for (unsigned m = 0; m < 8; ++m)
      if (lookup[m] == idx) return m;
    return 0;
  };
  // swap cost when moving letter j left past letter i (j appearing before i
  // in the word, j > i): x1 x0 = q x0 x1; x2 x1 = q x1 x2; x2 x0 = q^{-1} x0 x2
  const Scalar qinv = f.inv(q);
  auto swap_factor = [&](int left, int right) -> Scalar {
    // word has "left" immediately before "right" with left > right;
    // reordering to "right left" multiplies by this factor
    if (left == 1 && right == 0) return q;
    if (left == 2 && right == 1) return q;
    if (left == 2 && right == 0) return qinv;
    throw std::logic_error("swap_factor: bad letter pair");
  };

  a.table.assign(8, std::vector<Vec>(8, Vec(8, Scalar(0))));
  for (size_t bi = 0; bi < 8; ++bi)
    for (size_t bj = 0; bj < 8; ++bj) {
      unsigned mi = index_mask(bi), mj = index_mask(bj);
      if (mi & mj) continue;  // repeated letter: square relation kills it
      // build the concatenated word and bubble-sort it, tracking the factor
      std::vector<int> word;
      for (int l = 0; l < 3; ++l)
        if (mi & (1u << l)) word.push_back(l);
      for (int l = 0; l < 3; ++l)
        if (mj & (1u << l)) word.push_back(l);
      Scalar factor(1);
      for (size_t pass = 0; pass + 1 < word.size() || pass == 0; ++pass) {
        bool swapped = false;
        for (size_t t = 0; t + 1 < word.size(); ++t)
          if (word[t] > word[t + 1]) {
            factor = f.mul(factor, swap_factor(word[t], word[t + 1]));
            std::swap(word[t], word[t + 1]);
            swapped = true;
          }
        if (!swapped) break;
      }
      a.table[bi][bj][mask_index(mi | mj)] = factor;
    }
  a.unit = a.basis_vector(0);
  a.idempotents = {a.unit};
  for (size_t i = 1; i < 8; ++i) a.radical.push_back(a.basis_vector(i));
  ValidationReport r = validate_algebra(a);
  if (!r.ok()) throw std::logic_error("fixture " + name + " failed validation: " + r.failures[0]);
  return std::make_shared<AlgebraPresentation>(std::move(a));
}

inline AlgebraPtr liu_schulz_algebra(const Scalar& q = Scalar(2)) {
  return q_exterior_algebra(FieldSpec::rationals(), q, "LiuSchulz(q=" + q.get_str() + ")");
}

/// Cyclic left module A*u inside the regular module.
inline ModulePtr cyclic_module(const AlgebraPtr& alg, const Vec& u, const std::string& name) {
  ModulePtr reg = regular_module(alg);
  Mat span = column_space_basis(alg->right_mult(u));
  auto [sub, incl] = submodule(reg, span, name);
  return sub;
}

/// k[x]/(x^i) as a module over k[x]/(x^n), built directly from the nilpotent
/// shift action.
inline ModulePtr truncated_module(const AlgebraPtr& alg, size_t i, const std::string& name) {
  const FieldSpec f = alg->field;
  Mat shift(f, i, i);
  for (size_t r = 0; r + 1 < i; ++r) shift.at(r + 1, r) = 1;
  std::vector<Mat> act;
  Mat cur = Mat::identity(f, i);
  for (size_t k = 0; k < alg->dim; ++k) {
    act.push_back(cur);
    cur = shift * cur;
  }
  return make_module(alg, std::move(act), name);
}

}  // namespace stabext
