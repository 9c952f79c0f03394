#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stabext/algebra.hpp"

namespace stabext {

/// A finitely generated left module: one action matrix per algebra basis
/// element.  Immutable after construction.
struct FDModule {
  AlgebraPtr alg;
  size_t dim = 0;
  std::vector<Mat> action;  // action[i] = matrix of b_i
  std::string name;

  /// Action of an arbitrary algebra element given by coordinates.
  Mat act(const Vec& x) const {
    Mat m(alg->field, dim, dim);
    for (size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      for (size_t r = 0; r < dim; ++r)
        for (size_t c = 0; c < dim; ++c)
          if (action[i].at(r, c) != 0) m.at(r, c) += x[i] * action[i].at(r, c);
    }
    for (size_t r = 0; r < dim; ++r)
      for (size_t c = 0; c < dim; ++c) m.at(r, c) = alg->field.reduce(m.at(r, c));
    return m;
  }

  bool is_zero() const { return dim == 0; }
};

using ModulePtr = std::shared_ptr<const FDModule>;

inline ModulePtr make_module(AlgebraPtr alg, std::vector<Mat> action, std::string name) {
  auto m = std::make_shared<FDModule>();
  m->alg = std::move(alg);
  m->dim = action.empty() ? 0 : action[0].rows();
  m->action = std::move(action);
  m->name = std::move(name);
  return m;
}

inline ModulePtr zero_module(const AlgebraPtr& alg) {
  std::vector<Mat> act(alg->dim, Mat(alg->field, 0, 0));
  return make_module(alg, std::move(act), "0");
}

/// A as a left module over itself.
inline ModulePtr regular_module(const AlgebraPtr& alg) {
  std::vector<Mat> act;
  act.reserve(alg->dim);
  for (size_t i = 0; i < alg->dim; ++i) act.push_back(alg->left_mult(alg->basis_vector(i)));
  return make_module(alg, std::move(act), alg->name.empty() ? "A" : alg->name);
}

/// Full check that the action respects the structure constants and the unit.
inline ValidationReport validate_module(const FDModule& m) {
  ValidationReport rep;
  const auto& a = *m.alg;
  if (m.action.size() != a.dim) {
    rep.failures.push_back("module has wrong number of action matrices");
    return rep;
  }
  Mat id = Mat::identity(a.field, m.dim);
  if (m.act(a.unit) != id) rep.failures.push_back("unit does not act as identity");
  for (size_t i = 0; i < a.dim && rep.failures.size() < 8; ++i)
    for (size_t j = 0; j < a.dim; ++j) {
      if (m.action[i] * m.action[j] != m.act(a.table[i][j])) {
        rep.failures.push_back("action violates structure constants at pair (" +
                               std::to_string(i) + "," + std::to_string(j) + ")");
        break;
      }
    }
  return rep;
}

struct Morphism {
  ModulePtr src, dst;
  Mat m;  // dst.dim x src.dim

  bool is_zero() const { return m.is_zero(); }
  bool intertwines() const {
    for (const auto& g : src->alg->generators)
      if (!(m * src->act(g) == dst->act(g) * m)) return false;
    return true;
  }
};

inline Morphism compose(const Morphism& g, const Morphism& f) {
  if (f.dst->dim != g.src->dim) throw std::invalid_argument("compose: dimension mismatch");
  return Morphism{f.src, g.dst, g.m * f.m};
}

inline Morphism identity_morphism(const ModulePtr& m) {
  return Morphism{m, m, Mat::identity(m->alg->field, m->dim)};
}

inline Morphism zero_morphism(const ModulePtr& src, const ModulePtr& dst) {
  return Morphism{src, dst, Mat(src->alg->field, dst->dim, src->dim)};
}

// ---------------------------------------------------------------------------
// Submodules, quotients, sums
// ---------------------------------------------------------------------------

/// Submodule spanned by the (independent) columns of `basis`, with inclusion.
/// The span must be closed under the action.
inline std::pair<ModulePtr, Morphism> submodule(const ModulePtr& m, const Mat& basis,
                                                const std::string& name = "") {
  const auto& a = *m->alg;
  std::vector<Mat> act;
  act.reserve(a.dim);
  for (size_t i = 0; i < a.dim; ++i) {
    auto x = solve_matrix(basis, m->action[i] * basis);
    if (!x) throw std::logic_error("submodule: span not closed under the action");
    act.push_back(std::move(*x));
  }
  ModulePtr sub = make_module(m->alg, std::move(act), name);
  return {sub, Morphism{sub, m, basis}};
}

/// Quotient by the subspace spanned by the columns of `basis` (assumed
/// action-stable and independent), with projection.
inline std::pair<ModulePtr, Morphism> quotient(const ModulePtr& m, const Mat& basis,
                                               const std::string& name = "") {
  const auto& a = *m->alg;
  const FieldSpec f = a.field;
  const size_t n = m->dim, r = basis.cols();
  // extend basis to all of k^n by unit vectors (deterministic pivot choice)
  Mat t = basis.hstack(Mat::identity(f, n));
  std::vector<size_t> piv = rref(t).pivots;
  if (piv.size() != n || (r > 0 && piv[r - 1] >= r))
    throw std::logic_error("quotient: subspace basis is dependent");
  std::vector<size_t> comp_idx(piv.begin() + r, piv.end());
  Mat full(f, n, n);
  for (size_t j = 0; j < n; ++j)
    for (size_t i = 0; i < n; ++i) full.at(i, j) = t.at(i, piv[j]);
  Mat inv = *inverse(full);
  // projection = last n-r rows of inv; section = complement columns
  Mat proj(f, n - r, n), sect(f, n, n - r);
  for (size_t i = 0; i < n - r; ++i)
    for (size_t j = 0; j < n; ++j) proj.at(i, j) = inv.at(r + i, j);
  for (size_t j = 0; j < n - r; ++j)
    for (size_t i = 0; i < n; ++i) sect.at(i, j) = full.at(i, r + j);
  std::vector<Mat> act;
  act.reserve(a.dim);
  for (size_t i = 0; i < a.dim; ++i) act.push_back(proj * m->action[i] * sect);
  ModulePtr quo = make_module(m->alg, std::move(act), name);
  return {quo, Morphism{m, quo, proj}};
}

struct DirectSum {
  ModulePtr sum;
  std::vector<Morphism> inclusions;
  std::vector<Morphism> projections;
};

inline DirectSum direct_sum(const std::vector<ModulePtr>& parts, const std::string& name = "") {
  if (parts.empty()) throw std::invalid_argument("direct_sum: empty list");
  const AlgebraPtr alg = parts[0]->alg;
  const FieldSpec f = alg->field;
  size_t total = 0;
  for (const auto& p : parts) {
    if (p->alg != alg) throw std::invalid_argument("direct_sum: algebra mismatch");
    total += p->dim;
  }
  std::vector<Mat> act(alg->dim, Mat(f, total, total));
  size_t off = 0;
  for (const auto& p : parts) {
    for (size_t i = 0; i < alg->dim; ++i)
      for (size_t r = 0; r < p->dim; ++r)
        for (size_t c = 0; c < p->dim; ++c) act[i].at(off + r, off + c) = p->action[i].at(r, c);
    off += p->dim;
  }
  ModulePtr sum = make_module(alg, std::move(act), name);
  DirectSum ds;
  ds.sum = sum;
  off = 0;
  for (const auto& p : parts) {
    Mat inc(f, total, p->dim), prj(f, p->dim, total);
    for (size_t r = 0; r < p->dim; ++r) {
      inc.at(off + r, r) = 1;
      prj.at(r, off + r) = 1;
    }
    ds.inclusions.push_back(Morphism{p, sum, std::move(inc)});
    ds.projections.push_back(Morphism{sum, p, std::move(prj)});
    off += p->dim;
  }
  return ds;
}

inline std::pair<ModulePtr, Morphism> kernel_of(const Morphism& f, const std::string& name = "") {
  Mat k = kernel_basis(f.m);
  return submodule(f.src, k, name);
}

inline std::pair<ModulePtr, Morphism> image_of(const Morphism& f, const std::string& name = "") {
  Mat b = column_space_basis(f.m);
  return submodule(f.dst, b, name);
}

inline std::pair<ModulePtr, Morphism> cokernel_of(const Morphism& f, const std::string& name = "") {
  Mat b = column_space_basis(f.m);
  return quotient(f.dst, b, name);
}

// ---------------------------------------------------------------------------
// Hom spaces
// ---------------------------------------------------------------------------

struct HomSpace {
  ModulePtr src, dst;
  std::vector<Morphism> basis;
  size_t dim() const { return basis.size(); }
};

namespace detail {

inline Vec vec_of(const Mat& f) {
  Vec v(f.rows() * f.cols());
  for (size_t r = 0; r < f.rows(); ++r)
    for (size_t c = 0; c < f.cols(); ++c) v[r * f.cols() + c] = f.at(r, c);
  return v;
}

inline Mat unvec(FieldSpec fs, const Vec& v, size_t rows, size_t cols) {
  Mat f(fs, rows, cols);
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < cols; ++c) f.at(r, c) = v[r * cols + c];
  return f;
}

}  // namespace detail

/// Basis of Hom(M,N): solution space of the intertwining equations for a
/// generating set of the algebra, computed by iterative kernel refinement
/// (each generator cuts down the current candidate subspace).  Deterministic.
inline HomSpace hom_basis(const ModulePtr& m, const ModulePtr& n) {
  if (m->alg != n->alg) throw std::invalid_argument("hom_basis: algebra mismatch");
  const FieldSpec f = m->alg->field;
  const size_t nm = n->dim * m->dim;
  HomSpace hs{m, n, {}};
  if (nm == 0) return hs;
  Mat k = Mat::identity(f, nm);
  for (const auto& g : m->alg->generators) {
    if (k.cols() == 0) break;
    const Mat an = n->act(g), am = m->act(g);
    Mat tk(f, nm, k.cols());
    for (size_t c = 0; c < k.cols(); ++c) {
      Mat fc = detail::unvec(f, k.column(c), n->dim, m->dim);
      Vec img = detail::vec_of(an * fc - fc * am);
      for (size_t r = 0; r < nm; ++r) tk.at(r, c) = img[r];
    }
    k = k * kernel_basis(tk);
  }
  for (size_t c = 0; c < k.cols(); ++c)
    hs.basis.push_back(Morphism{m, n, detail::unvec(f, k.column(c), n->dim, m->dim)});
  return hs;
}

// ---------------------------------------------------------------------------
// Projectives, simples, covers
// ---------------------------------------------------------------------------

struct ProjInfo {
  ModulePtr mod;
  Mat basis_in_A;     // columns: basis of A*e_i in A-coordinates
  size_t idem_index;
};

namespace detail {
struct ProjCache {
  std::vector<ProjInfo> projectives;
};
}  // namespace detail

/// One projective indecomposable P_i = A e_i per idempotent; cached per algebra.
inline const std::vector<ProjInfo>& projective_indecomposables(const AlgebraPtr& alg) {
  if (!alg->projectives_cache) {
    auto cache = std::make_shared<detail::ProjCache>();
    ModulePtr reg = regular_module(alg);
    for (size_t i = 0; i < alg->idempotents.size(); ++i) {
      Mat b = column_space_basis(alg->right_mult(alg->idempotents[i]));
      auto [sub, incl] = submodule(reg, b, "P" + std::to_string(i + 1));
      cache->projectives.push_back(ProjInfo{sub, b, i});
    }
    size_t total = 0;
    for (const auto& p : cache->projectives) total += p.mod->dim;
    if (total != alg->dim)
      throw std::logic_error("projective_indecomposables: dims do not sum to dim A");
    alg->projectives_cache = cache;
  }
  return std::static_pointer_cast<detail::ProjCache>(alg->projectives_cache)->projectives;
}

/// Subspace J*M as a basis matrix (columns, in M-coordinates).
inline Mat radical_subspace(const ModulePtr& m) {
  const FieldSpec f = m->alg->field;
  if (m->alg->radical.empty() || m->dim == 0) return Mat(f, m->dim, 0);
  Mat stacked(f, m->dim, 0);
  for (const auto& r : m->alg->radical) stacked = stacked.hstack(m->act(r));
  return column_space_basis(stacked);
}

inline std::pair<ModulePtr, Morphism> radical_of(const ModulePtr& m) {
  return submodule(m, radical_subspace(m), "rad(" + m->name + ")");
}

inline std::pair<ModulePtr, Morphism> top_of(const ModulePtr& m) {
  return quotient(m, radical_subspace(m), "top(" + m->name + ")");
}

/// Annihilator of J in M, with inclusion.
inline std::pair<ModulePtr, Morphism> socle_of(const ModulePtr& m) {
  const FieldSpec f = m->alg->field;
  if (m->alg->radical.empty()) return submodule(m, Mat::identity(f, m->dim), "soc(" + m->name + ")");
  Mat stacked(f, 0, m->dim);
  for (const auto& r : m->alg->radical) stacked = stacked.vstack(m->act(r));
  return submodule(m, kernel_basis(stacked), "soc(" + m->name + ")");
}

/// Dimensions of the radical filtration layers M/JM, JM/J^2M, ...
inline std::vector<size_t> radical_filtration_dims(const ModulePtr& m) {
  std::vector<size_t> dims;
  size_t prev = m->dim;
  ModulePtr cur = m;
  while (prev > 0) {
    Mat j = radical_subspace(cur);
    dims.push_back(prev - j.cols());
    if (j.cols() == 0) break;
    auto [sub, incl] = submodule(cur, j);
    cur = sub;
    prev = cur->dim;
  }
  return dims;
}

inline std::vector<size_t> socle_filtration_dims(const ModulePtr& m) {
  std::vector<size_t> dims;
  ModulePtr cur = m;
  while (cur->dim > 0) {
    auto [soc, incl] = socle_of(cur);
    if (soc->dim == 0) break;  // cannot happen for nonzero modules over validated algebras
    dims.push_back(soc->dim);
    auto [quo, proj] = quotient(cur, incl.m);
    cur = quo;
  }
  return dims;
}

/// Composition length via the radical filtration.  Validation guarantees all
/// simples are one-dimensional, so each layer contributes its dimension.
inline size_t composition_length(const ModulePtr& m) {
  size_t len = 0;
  for (size_t d : radical_filtration_dims(m)) len += d;
  return len;
}

struct CoverPart {
  size_t offset;      // first coordinate of this part inside P
  size_t proj_index;  // index into projective_indecomposables(alg)
};

struct Cover {
  ModulePtr p;
  Morphism epi;  // P -> M, surjective, kernel inside J*P
  std::vector<CoverPart> parts;
};

/// Minimal projective cover P(M) -> M built from the top multiplicities.
inline Cover projective_cover(const ModulePtr& m) {
  const AlgebraPtr alg = m->alg;
  const FieldSpec f = alg->field;
  if (m->dim == 0) {
    ModulePtr z = zero_module(alg);
    return Cover{z, Morphism{z, m, Mat(f, 0, 0)}, {}};
  }
  const auto& projs = projective_indecomposables(alg);
  auto [top, q] = top_of(m);
  std::vector<ModulePtr> parts;
  std::vector<Mat> part_maps;  // columns of the epi per part
  std::vector<size_t> part_proj_idx;
  for (size_t pidx = 0; pidx < projs.size(); ++pidx) {
    const auto& pi = projs[pidx];
    Mat etop = top->act(alg->idempotents[pi.idem_index]);
    Mat iso_basis = column_space_basis(etop);
    for (size_t s = 0; s < iso_basis.cols(); ++s) {
      // lift the top generator to M and project onto the e_i part
      auto v0 = solve(q.m, iso_basis.column(s));
      if (!v0) throw std::logic_error("projective_cover: top projection not surjective");
      Vec v = m->act(alg->idempotents[pi.idem_index]).apply(*v0);
      Mat cols(f, m->dim, pi.mod->dim);
      for (size_t c = 0; c < pi.mod->dim; ++c) {
        Vec x = pi.basis_in_A.column(c);  // element of A
        Vec img = m->act(x).apply(v);
        for (size_t r = 0; r < m->dim; ++r) cols.at(r, c) = img[r];
      }
      parts.push_back(pi.mod);
      part_maps.push_back(std::move(cols));
      part_proj_idx.push_back(pidx);
    }
  }
  if (parts.empty()) throw std::logic_error("projective_cover: nonzero module with empty top");
  DirectSum ds = direct_sum(parts, "P(" + m->name + ")");
  Mat epi(f, m->dim, 0);
  for (const auto& pm : part_maps) epi = epi.hstack(pm);
  Morphism e{ds.sum, m, epi};
  if (rank(epi) != m->dim) throw std::logic_error("projective_cover: constructed map not surjective");
  // minimality: ker(epi) inside J*P
  Mat ker = kernel_basis(epi);
  Mat jp = radical_subspace(ds.sum);
  for (size_t c = 0; c < ker.cols(); ++c)
    if (!in_column_space(jp, ker.column(c)))
      throw std::logic_error("projective_cover: kernel not contained in rad P");
  std::vector<CoverPart> cps;
  size_t off = 0;
  for (size_t k = 0; k < parts.size(); ++k) {
    cps.push_back(CoverPart{off, part_proj_idx[k]});
    off += parts[k]->dim;
  }
  return Cover{ds.sum, e, std::move(cps)};
}

/// D(M) over the opposite algebra: transposed action matrices.
inline ModulePtr dual_module(const ModulePtr& m, const AlgebraPtr& op) {
  std::vector<Mat> act;
  act.reserve(m->action.size());
  for (const auto& a : m->action) act.push_back(a.transpose());
  return make_module(op, std::move(act), "D(" + m->name + ")");
}

inline ModulePtr dual_module(const ModulePtr& m) { return dual_module(m, opposite_of(m->alg)); }

/// Simple modules S_i = top(P_i).
inline std::vector<ModulePtr> simple_modules(const AlgebraPtr& alg) {
  std::vector<ModulePtr> out;
  for (const auto& pi : projective_indecomposables(alg)) {
    auto [top, q] = top_of(pi.mod);
    auto named = std::make_shared<FDModule>(*top);
    named->name = "S" + std::to_string(pi.idem_index + 1);
    out.push_back(named);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stable Hom
// ---------------------------------------------------------------------------

/// Hom(M,N) with the subspace of maps factoring through a projective split
/// off.  Factoring through a projective is equivalent to factoring through
/// the projective cover of the target: any map out of a projective lifts
/// along the cover epi, so a factorization M -> Q -> N through projective Q
/// yields one through P(N).
struct StableHomSpace {
  HomSpace hom;
  size_t proj_dim = 0;    // dim of the projectively-trivial subspace
  size_t stable_dim = 0;  // dim Hom - proj_dim
  Mat v;                  // nm x h: vectorized hom basis
  Mat bfull;              // h x h: first proj_dim cols span the trivial part
  std::vector<size_t> rep_indices;  // hom basis indices representing stable classes
  std::vector<Morphism> proj_subspace_basis;

  /// Coordinates of a morphism's stable class in the chosen representatives.
  Vec stable_coords(const Morphism& f) const {
    auto x = solve(v, detail::vec_of(f.m));
    if (!x) throw std::invalid_argument("stable_coords: morphism not in Hom space");
    auto y = solve(bfull, *x);
    Vec out(stable_dim);
    for (size_t i = 0; i < stable_dim; ++i) out[i] = (*y)[proj_dim + i];
    return out;
  }
};

inline StableHomSpace stable_hom(const ModulePtr& m, const ModulePtr& n) {
  StableHomSpace s;
  s.hom = hom_basis(m, n);
  const FieldSpec f = m->alg->field;
  const size_t h = s.hom.dim();
  const size_t nm = n->dim * m->dim;
  s.v = Mat(f, nm, h);
  for (size_t j = 0; j < h; ++j) {
    Vec col = detail::vec_of(s.hom.basis[j].m);
    for (size_t r = 0; r < nm; ++r) s.v.at(r, j) = col[r];
  }
  if (h == 0) {
    s.bfull = Mat(f, 0, 0);
    return s;
  }
  Cover cover = projective_cover(n);
  HomSpace g = hom_basis(m, cover.p);
  Mat w(f, h, 0);
  for (const auto& gm : g.basis) {
    Morphism through = compose(cover.epi, gm);
    auto coords = solve(s.v, detail::vec_of(through.m));
    if (!coords) throw std::logic_error("stable_hom: factored map escapes Hom space");
    w = w.hstack(Mat::from_columns(f, h, {*coords}));
  }
  Mat wb = column_space_basis(w);
  s.proj_dim = wb.cols();
  s.stable_dim = h - s.proj_dim;
  for (size_t c = 0; c < wb.cols(); ++c) {
    Mat mm(f, n->dim, m->dim);
    for (size_t j = 0; j < h; ++j)
      if (wb.at(j, c) != 0) mm = mm + s.hom.basis[j].m.scaled(wb.at(j, c));
    s.proj_subspace_basis.push_back(Morphism{m, n, mm});
  }
  // extend the trivial-part basis to all of Hom by unit vectors, greedily
  Mat b = wb;
  for (size_t j = 0; j < h && b.cols() < h; ++j) {
    Mat ej(f, h, 1);
    ej.at(j, 0) = 1;
    Mat cand = b.hstack(ej);
    if (rank(cand) > b.cols()) {
      b = cand;
      s.rep_indices.push_back(j);
    }
  }
  s.bfull = b;
  return s;
}

inline size_t stable_hom_dim(const ModulePtr& m, const ModulePtr& n) {
  return stable_hom(m, n).stable_dim;
}

/// Projectivity test: a module is projective iff its minimal cover is an
/// isomorphism, i.e. the cover has the same dimension.  (Equivalent to the
/// vanishing of stable endomorphisms; the equivalence is exercised in tests.)
inline bool is_projective(const ModulePtr& m) {
  if (m->dim == 0) return true;
  return projective_cover(m).p->dim == m->dim;
}

// ---------------------------------------------------------------------------
// Short exact sequences
// ---------------------------------------------------------------------------

struct ShortExactSequence {
  Morphism left;   // X -> Y, injective
  Morphism right;  // Y -> Z, surjective

  bool verify() const {
    if (left.dst->dim != right.src->dim) return false;
    if (rank(left.m) != left.src->dim) return false;
    if (rank(right.m) != right.dst->dim) return false;
    if (!(right.m * left.m).is_zero()) return false;
    return left.src->dim + right.dst->dim == left.dst->dim;
  }
};

}  // namespace stabext
