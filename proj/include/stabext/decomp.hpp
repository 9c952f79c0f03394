#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stabext/module.hpp"

namespace stabext {

// ---------------------------------------------------------------------------
// Polynomial helpers (dense, ascending coefficients, exact)
// ---------------------------------------------------------------------------

using Poly = std::vector<Scalar>;

namespace polydetail {

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline size_t degree(const Poly& p) { return p.empty() ? 0 : p.size() - 1; }

inline Poly derivative(const FieldSpec& f, const Poly& p) {
  Poly d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(f.mul(p[i], f.from_long(long(i))));
  trim(d);
  return d;
}

inline Poly monic(const FieldSpec& f, Poly p) {
  trim(p);
  if (p.empty()) return p;
  Scalar lead = p.back();
  for (auto& c : p) c = f.div(c, lead);
  return p;
}

/// Remainder of a by b (b nonzero).
inline Poly poly_rem(const FieldSpec& f, Poly a, const Poly& b) {
  trim(a);
  Poly bb = b;
  trim(bb);
  if (bb.empty()) throw std::domain_error("poly_rem: division by zero polynomial");
  while (a.size() >= bb.size() && !a.empty()) {
    Scalar c = f.div(a.back(), bb.back());
    size_t shift = a.size() - bb.size();
    for (size_t i = 0; i < bb.size(); ++i)
      a[shift + i] = f.sub(a[shift + i], f.mul(c, bb[i]));
    trim(a);
  }
  return a;
}

inline Poly poly_gcd(const FieldSpec& f, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(f, a);
}

inline Poly poly_div_exact(const FieldSpec& f, Poly a, const Poly& b) {
  trim(a);
  Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Scalar(0));
  Poly bb = b;
  trim(bb);
  while (a.size() >= bb.size() && !a.empty()) {
    Scalar c = f.div(a.back(), bb.back());
    size_t shift = a.size() - bb.size();
    q[shift] = c;
    for (size_t i = 0; i < bb.size(); ++i)
      a[shift + i] = f.sub(a[shift + i], f.mul(c, bb[i]));
    trim(a);
  }
  return q;
}

inline Scalar poly_eval(const FieldSpec& f, const Poly& p, const Scalar& x) {
  Scalar acc(0);
  for (size_t i = p.size(); i-- > 0;) acc = f.add(f.mul(acc, x), p[i]);
  return acc;
}

inline Poly poly_mul(const FieldSpec& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, Scalar(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = f.add(c[i + j], f.mul(a[i], b[j]));
  return c;
}

/// Product of the distinct irreducible factors.  In characteristic p the
/// naive p / gcd(p, p') drops factors whose multiplicity is divisible by p
/// (their contribution to the derivative vanishes), so those are recovered
/// by recursing into the gcd and, when the derivative is zero outright, by
/// taking the p-th root of the coefficient pattern.
inline Poly squarefree_part(const FieldSpec& f, const Poly& p0) {
  Poly p = monic(f, p0);
  if (p.size() <= 2) return p;
  Poly d = derivative(f, p);
  const unsigned long ch = f.characteristic();
  if (d.empty()) {
    if (ch == 0) return p;
    Poly root;  // p is q(x^ch) and coefficients are their own ch-th roots
    for (size_t i = 0; i < p.size(); i += ch) root.push_back(p[i]);
    return squarefree_part(f, root);
  }
  Poly g = poly_gcd(f, p, d);
  Poly w = poly_div_exact(f, p, g);  // squarefree, but may miss char-p factors
  if (g.size() <= 1) return w;
  Poly rest = squarefree_part(f, g);
  Poly shared = poly_gcd(f, w, rest);
  return monic(f, poly_mul(f, w, poly_div_exact(f, rest, shared)));
}

inline std::vector<long> small_divisors(const mpz_class& n0, size_t cap) {
  std::vector<long> out;
  mpz_class n = abs(n0);
  if (n == 0 || !n.fits_slong_p()) return out;
  long v = n.get_si();
  for (long d = 1; d * d <= v && out.size() < cap; ++d)
    if (v % d == 0) {
      out.push_back(d);
      if (d != v / d) out.push_back(v / d);
    }
  return out;
}

}  // namespace polydetail

/// Roots of p lying in the field.  Over F_p all field elements are tried.
/// Over Q rational roots are found by the divisor test when the cleared
/// coefficients are small enough; otherwise only a small candidate list is
/// scanned (callers treat a miss as a budget failure, never as certainty).
inline std::vector<Scalar> roots_in_field(const FieldSpec& f, const Poly& p) {
  std::vector<Scalar> roots;
  Poly q = p;
  polydetail::trim(q);
  if (q.size() <= 1) return roots;
  if (!f.is_rational()) {
    for (unsigned long c = 0; c < f.characteristic(); ++c) {
      Scalar x = f.from_long(long(c));
      if (polydetail::poly_eval(f, q, x) == 0) roots.push_back(x);
    }
    return roots;
  }
  // clear denominators
  mpz_class lcm(1);
  for (const auto& c : q) lcm = lcm * c.get_den() / gcd(lcm, mpz_class(c.get_den()));
  std::vector<mpz_class> z;
  for (const auto& c : q) z.push_back(mpq_class(c * lcm).get_num());
  // strip trailing zero constant coefficients: x = 0 is then a root
  size_t low = 0;
  while (low < z.size() && z[low] == 0) ++low;
  if (low > 0) roots.push_back(Scalar(0));
  if (low >= z.size()) return roots;
  auto nums = polydetail::small_divisors(z[low], 256);
  auto dens = polydetail::small_divisors(z.back(), 64);
  auto consider = [&](mpq_class x) {
    x.canonicalize();
    if (polydetail::poly_eval(f, q, x) == 0 &&
        std::find(roots.begin(), roots.end(), x) == roots.end())
      roots.push_back(x);
  };
  for (long n : nums)
    for (long d : dens) {
      consider(mpq_class(n, d));
      consider(mpq_class(-n, d));
    }
  if (nums.empty() || dens.empty()) {
    // coefficients too large for the divisor scan: small candidate list
    for (long c = -12; c <= 12; ++c) consider(Scalar(c));
    for (long j = 1; j <= 16; ++j) {
      mpz_class pw = mpz_class(1) << j;
      consider(Scalar(pw));
      consider(Scalar(-pw));
      consider(mpq_class(1, pw));
      consider(mpq_class(-1, pw));
    }
  }
  std::sort(roots.begin(), roots.end(), [](const Scalar& a, const Scalar& b) { return a < b; });
  return roots;
}

/// Monic minimal polynomial of a square matrix, ascending coefficients.
inline Poly minimal_polynomial(const Mat& a) {
  const FieldSpec f = a.field();
  const size_t n = a.rows();
  if (n == 0) return {Scalar(1)};
  const size_t nm = n * n;
  Mat powers(f, nm, 0);
  Mat cur = Mat::identity(f, n);
  for (size_t t = 0;; ++t) {
    Vec v = detail::vec_of(cur);
    if (t > 0) {
      if (auto x = solve(powers, v)) {
        Poly p(t + 1, Scalar(0));
        for (size_t i = 0; i < t; ++i) p[i] = f.neg((*x)[i]);
        p[t] = 1;
        return p;
      }
    }
    powers = powers.hstack(Mat::from_columns(f, nm, {v}));
    cur = cur * a;
    if (t > nm) throw std::logic_error("minimal_polynomial: no dependence found");
  }
}

// ---------------------------------------------------------------------------
// Isomorphism testing
// ---------------------------------------------------------------------------

enum class IsoStatus { Found, Absent, Unknown };

struct IsoResult {
  IsoStatus status;
  std::optional<Morphism> iso;
  bool found() const { return status == IsoStatus::Found; }
};

/// Search Hom(M,N) for an invertible element.  Deterministic sweep of basis
/// elements and small integer combinations, then seeded random combinations,
/// then (over Q, small Hom spaces) a grid evaluation of the determinant
/// polynomial that certifies absence: a nonzero polynomial of degree <= dim
/// in each variable cannot vanish on a {0..dim}^h grid.
inline IsoResult is_iso(const ModulePtr& m, const ModulePtr& n, uint64_t seed = 0,
                        size_t budget = 256) {
  if (m->alg != n->alg) throw std::invalid_argument("is_iso: algebra mismatch");
  if (m->dim != n->dim) return {IsoStatus::Absent, std::nullopt};
  const FieldSpec f = m->alg->field;
  const size_t d = m->dim;
  if (d == 0) return {IsoStatus::Found, Morphism{m, n, Mat(f, 0, 0)}};
  HomSpace hs = hom_basis(m, n);
  const size_t h = hs.dim();
  if (h == 0) return {IsoStatus::Absent, std::nullopt};

  auto combo = [&](const Vec& t) {
    Mat g(f, d, d);
    for (size_t i = 0; i < h; ++i)
      if (t[i] != 0) g = g + hs.basis[i].m.scaled(t[i]);
    return g;
  };
  auto check = [&](const Mat& g) -> std::optional<Morphism> {
    if (rank(g) == d) return Morphism{m, n, g};
    return std::nullopt;
  };

  for (size_t i = 0; i < h; ++i)
    if (auto got = check(hs.basis[i].m)) return {IsoStatus::Found, got};

  if (!f.is_rational()) {
    const unsigned long p = f.characteristic();
    double total = 1;
    for (size_t i = 0; i < h && total <= 4096; ++i) total *= double(p);
    if (total <= 4096) {
      const size_t count = static_cast<size_t>(total);
      for (size_t idx = 0; idx < count; ++idx) {
        size_t v = idx;
        Vec t(h, Scalar(0));
        for (size_t i = 0; i < h; ++i) {
          t[i] = f.from_long(long(v % p));
          v /= p;
        }
        if (auto got = check(combo(t))) return {IsoStatus::Found, got};
      }
      return {IsoStatus::Absent, std::nullopt};  // exhaustive: certified
    }
  } else {
    double lattice = 1;
    for (size_t i = 0; i < h && lattice <= 2187; ++i) lattice *= 3;
    if (lattice <= 2187) {
      const size_t count = static_cast<size_t>(lattice);
      for (size_t idx = 0; idx < count; ++idx) {
        size_t v = idx;
        Vec t(h, Scalar(0));
        for (size_t i = 0; i < h; ++i) {
          t[i] = Scalar(long(v % 3) - 1);
          v /= 3;
        }
        if (auto got = check(combo(t))) return {IsoStatus::Found, got};
      }
    }
  }

  std::mt19937_64 rng(seed);
  for (size_t trial = 0; trial < budget; ++trial) {
    Vec t(h);
    for (size_t i = 0; i < h; ++i) t[i] = f.random(rng);
    if (auto got = check(combo(t))) return {IsoStatus::Found, got};
  }

  if (f.is_rational() && h <= 6) {
    double grid = 1;
    for (size_t i = 0; i < h && grid <= 20000; ++i) grid *= double(d + 1);
    if (grid <= 20000) {
      const size_t count = static_cast<size_t>(grid);
      for (size_t idx = 0; idx < count; ++idx) {
        size_t v = idx;
        Vec t(h, Scalar(0));
        for (size_t i = 0; i < h; ++i) {
          t[i] = Scalar(long(v % (d + 1)));
          v /= d + 1;
        }
        if (auto got = check(combo(t))) return {IsoStatus::Found, got};
      }
      return {IsoStatus::Absent, std::nullopt};  // grid exhausts the degree bound
    }
  }
  return {IsoStatus::Unknown, std::nullopt};
}

// ---------------------------------------------------------------------------
// Fitting splits and full decomposition
// ---------------------------------------------------------------------------

struct FittingSplit {
  ModulePtr part1, part2;
  Morphism incl1, incl2;  // into the original module
  Morphism proj1, proj2;  // from the original module
};

namespace detail {

inline std::optional<FittingSplit> split_from_endo(const ModulePtr& m, const Mat& g) {
  const size_t d = m->dim;
  Mat gd = g.pow(d);
  const size_t r = rank(gd);
  if (r == 0 || r == d) return std::nullopt;
  Mat ker = kernel_basis(gd);
  Mat img = column_space_basis(gd);
  Mat both = ker.hstack(img);
  auto inv = inverse(both);
  if (!inv) return std::nullopt;  // cannot happen for a true Fitting split
  auto [m1, i1] = submodule(m, ker);
  auto [m2, i2] = submodule(m, img);
  Mat p1(m->alg->field, ker.cols(), d), p2(m->alg->field, img.cols(), d);
  for (size_t i = 0; i < ker.cols(); ++i)
    for (size_t j = 0; j < d; ++j) p1.at(i, j) = inv->at(i, j);
  for (size_t i = 0; i < img.cols(); ++i)
    for (size_t j = 0; j < d; ++j) p2.at(i, j) = inv->at(ker.cols() + i, j);
  return FittingSplit{m1, m2, i1, i2, Morphism{m, m1, p1}, Morphism{m, m2, p2}};
}

}  // namespace detail

/// Look for an endomorphism that is neither nilpotent nor invertible (or an
/// invertible one whose minimal polynomial has several roots in the field)
/// and split along its Fitting decomposition.  Absent after the budget is a
/// search failure, not a certificate of indecomposability.
inline std::optional<FittingSplit> fitting_split(const ModulePtr& m, uint64_t seed = 0,
                                                 size_t budget = 256) {
  const size_t d = m->dim;
  if (d == 0) return std::nullopt;
  const FieldSpec f = m->alg->field;
  HomSpace ends = hom_basis(m, m);
  const size_t h = ends.dim();

  auto try_endo = [&](const Mat& g) -> std::optional<FittingSplit> {
    if (auto s = detail::split_from_endo(m, g)) return s;
    // invertible or nilpotent: look for a second eigenvalue
    Poly mu = minimal_polynomial(g);
    Poly sf = polydetail::squarefree_part(f, mu);
    if (polydetail::degree(sf) <= 1) return std::nullopt;
    for (const Scalar& c : roots_in_field(f, sf)) {
      Mat shifted = g - Mat::identity(f, d).scaled(c);
      if (auto s = detail::split_from_endo(m, shifted)) return s;
    }
    return std::nullopt;
  };

  for (size_t i = 0; i < h; ++i)
    if (auto s = try_endo(ends.basis[i].m)) return s;
  for (size_t i = 0; i < h; ++i)
    for (size_t j = i + 1; j < h; ++j)
      if (auto s = try_endo(ends.basis[i].m + ends.basis[j].m)) return s;
  std::mt19937_64 rng(seed);
  for (size_t trial = 0; trial < budget; ++trial) {
    Mat g(f, d, d);
    for (size_t i = 0; i < h; ++i) g = g + ends.basis[i].m.scaled(f.random(rng));
    if (auto s = try_endo(g)) return s;
  }
  return std::nullopt;
}

enum class IndecCertificate { Certified, Probable };

/// Local-endomorphism-ring test.  Certified when every basis endomorphism is
/// scalar plus nilpotent and the nilpotent parts span a codimension-one
/// multiplicatively nilpotent subspace; then End(M) is local and M is
/// genuinely indecomposable.
inline IndecCertificate certify_indecomposable(const ModulePtr& m) {
  const FieldSpec f = m->alg->field;
  const size_t d = m->dim;
  HomSpace ends = hom_basis(m, m);
  const size_t h = ends.dim();
  if (h == 0) return IndecCertificate::Probable;  // zero module; caller excludes
  std::vector<Mat> nil;
  for (const auto& e : ends.basis) {
    Poly mu = minimal_polynomial(e.m);
    Poly sf = polydetail::squarefree_part(f, mu);
    if (polydetail::degree(sf) != 1) return IndecCertificate::Probable;
    Scalar c = f.neg(sf[0]);  // sf = x - c
    Mat n = e.m - Mat::identity(f, d).scaled(c);
    if (!n.pow(d).is_zero()) return IndecCertificate::Probable;
    nil.push_back(std::move(n));
  }
  const size_t nm = d * d;
  std::vector<Vec> nv;
  for (const auto& n : nil) nv.push_back(detail::vec_of(n));
  Mat nspan = detail::span_basis(f, nm, nv);
  if (nspan.cols() != h - 1) return IndecCertificate::Probable;
  // closure under products and multiplicative nilpotence of the span
  std::vector<Mat> gens;
  for (size_t c = 0; c < nspan.cols(); ++c)
    gens.push_back(detail::unvec(f, nspan.column(c), d, d));
  for (const auto& a : gens)
    for (const auto& b : gens)
      if (!in_column_space(nspan, detail::vec_of(a * b))) return IndecCertificate::Probable;
  Mat chain = nspan;
  for (size_t step = 0; step < h + 1 && chain.cols() > 0; ++step) {
    std::vector<Vec> next;
    for (const auto& g : gens)
      for (size_t c = 0; c < chain.cols(); ++c)
        next.push_back(detail::vec_of(g * detail::unvec(f, chain.column(c), d, d)));
    chain = detail::span_basis(f, nm, next);
  }
  return chain.cols() == 0 ? IndecCertificate::Certified : IndecCertificate::Probable;
}

/// Cheap prefilter key; collisions are resolved by explicit is_iso.
inline std::string iso_class_key(const ModulePtr& m) {
  auto fmt = [](std::vector<size_t> v) {
    std::sort(v.begin(), v.end());
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "." : "") << v[i];
    return os.str();
  };
  std::ostringstream os;
  os << "d" << m->dim << "|r" << fmt(radical_filtration_dims(m)) << "|s"
     << fmt(socle_filtration_dims(m)) << "|e" << hom_basis(m, m).dim();
  return os.str();
}

struct SummandEntry {
  ModulePtr rep;
  size_t multiplicity = 0;
  bool certified = false;
  std::string key;
  std::vector<Morphism> inclusions;  // one per copy, into the decomposed module
  std::vector<Morphism> projections;
};

struct Decomposition {
  ModulePtr input;
  std::vector<SummandEntry> summands;
  uint64_t seed = 0;
  bool any_probable = false;

  size_t total_dim() const {
    size_t t = 0;
    for (const auto& s : summands) t += s.rep->dim * s.multiplicity;
    return t;
  }
};

/// Recursive Fitting splitting with local-endomorphism certification of the
/// leaves; leaves are grouped into iso-classes (key prefilter, then is_iso).
inline Decomposition decompose(const ModulePtr& m, uint64_t seed = 0, size_t budget = 256) {
  Decomposition dec;
  dec.input = m;
  dec.seed = seed;

  struct Piece {
    ModulePtr mod;
    Morphism incl, proj;
  };
  std::vector<Piece> todo{{m, identity_morphism(m), identity_morphism(m)}};
  std::vector<Piece> leaves;
  std::vector<bool> leaf_cert;
  while (!todo.empty()) {
    Piece p = todo.back();
    todo.pop_back();
    if (p.mod->dim == 0) continue;
    // a local-endomorphism certificate is definitive, so check it before
    // spending the split-search budget
    if (certify_indecomposable(p.mod) == IndecCertificate::Certified) {
      leaves.push_back(p);
      leaf_cert.push_back(true);
      continue;
    }
    if (auto fs = fitting_split(p.mod, seed, budget)) {
      todo.push_back({fs->part1, compose(p.incl, fs->incl1), compose(fs->proj1, p.proj)});
      todo.push_back({fs->part2, compose(p.incl, fs->incl2), compose(fs->proj2, p.proj)});
    } else {
      leaves.push_back(p);
      leaf_cert.push_back(false);
      dec.any_probable = true;
    }
  }
  // deterministic order: by dimension, then key
  std::vector<size_t> order(leaves.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<std::string> keys;
  for (const auto& l : leaves) keys.push_back(iso_class_key(l.mod));
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (leaves[a].mod->dim != leaves[b].mod->dim) return leaves[a].mod->dim < leaves[b].mod->dim;
    return keys[a] < keys[b];
  });
  for (size_t idx : order) {
    const Piece& l = leaves[idx];
    bool merged = false;
    for (auto& s : dec.summands) {
      if (s.key != keys[idx]) continue;
      if (is_iso(s.rep, l.mod, seed).found()) {
        ++s.multiplicity;
        s.inclusions.push_back(l.incl);
        s.projections.push_back(l.proj);
        s.certified = s.certified && leaf_cert[idx];
        merged = true;
        break;
      }
    }
    if (!merged) {
      SummandEntry e;
      e.rep = l.mod;
      e.multiplicity = 1;
      e.certified = leaf_cert[idx];
      e.key = keys[idx];
      e.inclusions.push_back(l.incl);
      e.projections.push_back(l.proj);
      dec.summands.push_back(std::move(e));
    }
  }
  return dec;
}

}  // namespace stabext
