#pragma once

#include <map>
#include <optional>
#include <vector>

#include "stabext/decomp.hpp"

namespace stabext {

// Syzygies over a symmetric algebra.  Minimal projective covers keep the
// kernel inside rad P, and over a self-injective algebra a projective summand
// of a submodule of rad P would split off P itself, which is impossible; so
// kernels of minimal covers are automatically projective-free and no
// summand-stripping pass is needed.

struct SyzygyStep {
  Cover cover;      // P(M) -> M
  ModulePtr omega;  // ker of the cover epi
  Morphism incl;    // omega -> P(M)
};

inline SyzygyStep syzygy_step(const ModulePtr& m) {
  Cover c = projective_cover(m);
  auto [om, incl] = kernel_of(c.epi, "Om(" + m->name + ")");
  return SyzygyStep{std::move(c), om, incl};
}

inline ModulePtr syzygy(const ModulePtr& m) { return syzygy_step(m).omega; }

/// Cosyzygy via duality: injectives coincide with projectives for symmetric
/// algebras, so an injective envelope of M dualizes to a projective cover of
/// D(M) over the opposite algebra.
inline ModulePtr cosyzygy(const ModulePtr& m) {
  const AlgebraPtr op = opposite_of(m->alg);
  ModulePtr d = dual_module(m, op);
  ModulePtr sd = syzygy(d);
  ModulePtr back = dual_module(sd, m->alg);
  auto named = std::make_shared<FDModule>(*back);
  named->name = "Om-(" + m->name + ")";
  return named;
}

/// Omega^n for any integer n; n = 0 gives the projective-free part.
inline ModulePtr omega(const ModulePtr& m, long n) {
  if (n > 0) {
    ModulePtr cur = m;
    for (long i = 0; i < n; ++i) cur = syzygy(cur);
    return cur;
  }
  if (n < 0) {
    ModulePtr cur = m;
    for (long i = 0; i < -n; ++i) cur = cosyzygy(cur);
    return cur;
  }
  return cosyzygy(syzygy(m));
}

/// Lazily extended window of syzygies around one module; index i holds the
/// minimal Omega^i, with index 0 the projective-free part.
class ResolutionWindow {
public:
  explicit ResolutionWindow(ModulePtr m) : center_(std::move(m)) {
    pos_.push_back(omega(center_, 0));
  }

  const ModulePtr& center() const { return center_; }

  const ModulePtr& at(long i) {
    if (i >= 0) {
      while (long(pos_.size()) <= i) pos_.push_back(syzygy(pos_.back()));
      return pos_[size_t(i)];
    }
    while (long(neg_.size()) < -i)
      neg_.push_back(cosyzygy(neg_.empty() ? pos_[0] : neg_.back()));
    return neg_[size_t(-i - 1)];
  }

private:
  ModulePtr center_;
  std::vector<ModulePtr> pos_;  // pos_[k] = Omega^k
  std::vector<ModulePtr> neg_;  // neg_[k] = Omega^{-(k+1)}
};

// ---------------------------------------------------------------------------
// Stable cohomology
// ---------------------------------------------------------------------------

/// dim of the degree-i stable cohomology of (M, N): stable Hom out of
/// Omega^i M.
inline size_t ext_hat(ResolutionWindow& w, const ModulePtr& n, long i) {
  return stable_hom_dim(w.at(i), n);
}

inline size_t ext_hat(const ModulePtr& m, const ModulePtr& n, long i) {
  return stable_hom_dim(omega(m, i), n);
}

struct ExtTable {
  ModulePtr m, n;
  long lo = 0, hi = -1;
  std::vector<size_t> dims;

  size_t at(long i) const {
    if (i < lo || i > hi) throw std::out_of_range("ExtTable::at: index outside the window");
    return dims[size_t(i - lo)];
  }
};

inline ExtTable ext_table(ResolutionWindow& w, const ModulePtr& n, long lo, long hi) {
  ExtTable t;
  t.m = w.center();
  t.n = n;
  t.lo = lo;
  t.hi = hi;
  for (long i = lo; i <= hi; ++i) t.dims.push_back(ext_hat(w, n, i));
  return t;
}

inline ExtTable ext_table(const ModulePtr& m, const ModulePtr& n, long lo, long hi) {
  ResolutionWindow w(m);
  return ext_table(w, n, lo, hi);
}

/// Cover dimensions along the window (dim of the projective cover of each
/// minimal Omega^i).
inline std::map<long, size_t> betti(ResolutionWindow& w, long lo, long hi) {
  std::map<long, size_t> out;
  for (long i = lo; i <= hi; ++i) out[i] = projective_cover(w.at(i)).p->dim;
  return out;
}

// ---------------------------------------------------------------------------
// Syzygy periodicity
// ---------------------------------------------------------------------------

struct SyzygyPeriod {
  size_t period;
  Morphism witness;  // iso Omega^period(M) -> M (projective-free parts)
};

/// Smallest n <= bound with Omega^n M iso to M (projective-free part), with
/// the isomorphism as witness.  Only a certified iso counts; an Unknown iso
/// verdict is treated as no match at that degree.
inline std::optional<SyzygyPeriod> detect_syzygy_period(const ModulePtr& m, size_t bound,
                                                        uint64_t seed = 0) {
  ModulePtr base = omega(m, 0);
  if (base->dim == 0) return std::nullopt;
  ModulePtr cur = base;
  for (size_t k = 1; k <= bound; ++k) {
    cur = syzygy(cur);
    if (cur->dim != base->dim) continue;
    IsoResult r = is_iso(cur, base, seed);
    if (r.found()) return SyzygyPeriod{k, *r.iso};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Classical Ext at the cocycle level (independent cross-check)
// ---------------------------------------------------------------------------

/// dim Ext^i(M, N) computed from an explicit projective resolution as
/// cocycles modulo coboundaries in the Hom complex, with no reference to
/// stable Hom.  Agrees with ext_hat for i >= 1 over symmetric algebras.
inline size_t ext_classical(const ModulePtr& m, const ModulePtr& n, size_t i) {
  if (i == 0) return hom_basis(m, n).dim();
  const FieldSpec f = m->alg->field;
  // resolution ... -> P_1 -> P_0 -> M with differentials d_j : P_j -> P_{j-1}
  std::vector<ModulePtr> projs;
  std::vector<Mat> diff;  // diff[j] = matrix of d_{j+1}
  SyzygyStep prev = syzygy_step(m);
  projs.push_back(prev.cover.p);
  for (size_t j = 1; j <= i + 1; ++j) {
    SyzygyStep s = syzygy_step(prev.omega);
    projs.push_back(s.cover.p);
    diff.push_back(prev.incl.m * s.cover.epi.m);
    prev = std::move(s);
  }
  auto vectorized = [&](const HomSpace& h, const ModulePtr& p) {
    Mat v(f, n->dim * p->dim, h.dim());
    for (size_t j = 0; j < h.dim(); ++j) {
      Vec col = detail::vec_of(h.basis[j].m);
      for (size_t r = 0; r < col.size(); ++r) v.at(r, j) = col[r];
    }
    return v;
  };
  HomSpace hlo = hom_basis(projs[i - 1], n);
  HomSpace hmid = hom_basis(projs[i], n);
  HomSpace hhi = hom_basis(projs[i + 1], n);
  Mat vmid = vectorized(hmid, projs[i]);
  Mat vhi = vectorized(hhi, projs[i + 1]);
  // coboundary into degree i: f -> f . d_i
  Mat dlo(f, hmid.dim(), hlo.dim());
  for (size_t j = 0; j < hlo.dim(); ++j) {
    auto coords = solve(vmid, detail::vec_of(hlo.basis[j].m * diff[i - 1]));
    if (!coords) throw std::logic_error("ext_classical: coboundary escapes the Hom space");
    for (size_t r = 0; r < hmid.dim(); ++r) dlo.at(r, j) = (*coords)[r];
  }
  // coboundary out of degree i: f -> f . d_{i+1}
  Mat dhi(f, hhi.dim(), hmid.dim());
  for (size_t j = 0; j < hmid.dim(); ++j) {
    auto coords = solve(vhi, detail::vec_of(hmid.basis[j].m * diff[i]));
    if (!coords) throw std::logic_error("ext_classical: coboundary escapes the Hom space");
    for (size_t r = 0; r < hhi.dim(); ++r) dhi.at(r, j) = (*coords)[r];
  }
  const size_t cocycles = hmid.dim() - rank(dhi);
  return cocycles - rank(dlo);
}

}  // namespace stabext
