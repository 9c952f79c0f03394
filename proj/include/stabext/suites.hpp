#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stabext/arquiver.hpp"
#include "stabext/corpus.hpp"
#include "stabext/io.hpp"

namespace stabext {

// ---------------------------------------------------------------------------
// Suite reports
// ---------------------------------------------------------------------------

struct CheckResult {
  std::string name;
  std::string status;  // "pass" | "fail" | "skip"
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::string statement;  // the property under test, spelled out
  long window = 20;
  long guard = 8;
  uint64_t seed = 0;

  std::vector<CheckResult> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (c.status == "fail") return false;
    return true;
  }
  size_t passed() const {
    size_t n = 0;
    for (const auto& c : checks)
      if (c.status == "pass") ++n;
    return n;
  }

  void add(const std::string& name, bool pass, const std::string& detail = "") {
    checks.push_back({name, pass ? "pass" : "fail", detail});
  }
  void skip(const std::string& name, const std::string& reason) {
    checks.push_back({name, "skip", reason});
  }
};

/// Deterministic serialization: no timings, no environment data.
inline json suite_report_to_json(const SuiteReport& r) {
  json j;
  j["suite"] = r.suite;
  j["statement"] = r.statement;
  j["window"] = r.window;
  j["guard"] = r.guard;
  j["seed"] = r.seed;
  j["ok"] = r.ok();
  json checks = json::array();
  for (const auto& c : r.checks) {
    json jc;
    jc["name"] = c.name;
    jc["status"] = c.status;
    if (!c.detail.empty()) jc["detail"] = c.detail;
    checks.push_back(std::move(jc));
  }
  j["checks"] = std::move(checks);
  return j;
}

// ---------------------------------------------------------------------------
// Corpus
// ---------------------------------------------------------------------------

/// The distinguished module over the 8-dimensional q-exterior algebra is
/// found by a recorded search: enumerate cyclic modules R*u for u running
/// over sums of the degree-one generators and take the first one classified
/// Finite(1) at the given window.  The candidate order and parameters go
/// into the provenance string.
struct LiuSchulzFixture {
  AlgebraPtr alg;
  ModulePtr m;
  std::string provenance;
};

inline LiuSchulzFixture build_liu_schulz_fixture(const Scalar& q = Scalar(2),
                                                 long window = 20, long guard = 10) {
  AlgebraPtr alg = liu_schulz_algebra(q);
  // candidates: two-generator sums first, then all three, then singles
  const std::vector<std::vector<size_t>> supports = {{1, 2}, {1, 3}, {2, 3}, {1, 2, 3},
                                                     {1},    {2},    {3}};
  for (const auto& sup : supports) {
    Vec u(alg->dim, Scalar(0));
    std::string label = "u=";
    for (size_t i : sup) {
      u[i] = 1;
      label += (label.size() > 2 ? "+" : "") + alg->basis_labels[i];
    }
    ModulePtr m = cyclic_module(alg, u, "M");
    if (m->dim == 0 || is_projective(m)) continue;
    ExtDegResult r = ext_deg(m, window, guard);
    if (r.finite_is(1)) {
      LiuSchulzFixture fx;
      fx.alg = alg;
      fx.m = m;
      fx.provenance = "cyclic module R*u, first candidate with self-extension degree "
                      "Finite(1) at window " + std::to_string(window) + ", guard " +
                      std::to_string(guard) + "; candidates ordered x0+x1, x0+x2, x1+x2, "
                      "x0+x1+x2, x0, x1, x2; selected " + label + "; q=" + q.get_str();
      return fx;
    }
  }
  throw std::runtime_error("build_liu_schulz_fixture: candidate search exhausted");
}

/// The fixture set every suite runs against.  Built in memory; gen-corpus
/// writes the same data out as JSON files.
struct Corpus {
  AlgebraPtr f2x2, f3x3, c2, klein, nakayama, ls;
  ModulePtr S;        // unique simple over F_2[x]/(x^2)
  ModulePtr M1, M2;   // the two nonprojective indecomposables over F_3[x]/(x^3)
  ModulePtr k_klein;  // trivial module over F_2[C_2 x C_2]
  ModulePtr n1, n2;   // simples over the two-vertex symmetric Nakayama algebra
  ModulePtr ls_m;     // distinguished module over the q-exterior algebra
  std::string ls_provenance;

  std::vector<std::pair<AlgebraPtr, std::vector<ModulePtr>>> entries() const {
    return {{f2x2, {S}},          {f3x3, {M1, M2}}, {c2, {}},
            {klein, {k_klein}},   {nakayama, {n1, n2}}, {ls, {ls_m}}};
  }
};

inline Corpus standard_corpus() {
  Corpus c;
  c.f2x2 = truncated_polynomial_algebra(FieldSpec::prime(2), 2, "F2[x]/(x^2)");
  c.f3x3 = truncated_polynomial_algebra(FieldSpec::prime(3), 3, "F3[x]/(x^3)");
  c.c2 = group_algebra_c2();
  c.klein = group_algebra_klein();
  c.nakayama = nakayama_symmetric_two(FieldSpec::prime(2));
  c.S = truncated_module(c.f2x2, 1, "S");
  c.M1 = truncated_module(c.f3x3, 1, "M1");
  c.M2 = truncated_module(c.f3x3, 2, "M2");
  c.k_klein = simple_modules(c.klein)[0];
  auto nsimp = simple_modules(c.nakayama);
  c.n1 = nsimp[0];
  c.n2 = nsimp[1];
  LiuSchulzFixture fx = build_liu_schulz_fixture();
  c.ls = fx.alg;
  c.ls_m = fx.m;
  c.ls_provenance = fx.provenance;
  return c;
}

inline std::vector<ModulePtr> quasi_length_ladder(const ModulePtr& m, size_t count,
                                                  uint64_t seed = 0,
                                                  std::vector<AlmostSplitSequence>* seqs = nullptr) {
  std::vector<ModulePtr> ladder{m};
  while (ladder.size() < count) {
    AlmostSplitSequence as = ar_sequence(ladder.back(), seed);
    const ModulePtr* best = nullptr;
    for (const auto& s : as.middle_dec.summands) {
      if (is_projective(s.rep)) continue;
      if (!best || s.rep->dim > (*best)->dim) best = &s.rep;
    }
    if (!best || (*best)->dim <= ladder.back()->dim)
      throw std::runtime_error("quasi_length_ladder: no deeper middle summand found");
    if (seqs) seqs->push_back(as);
    auto named = std::make_shared<FDModule>(**best);
    named->name = "X" + std::to_string(ladder.size() + 1);
    ladder.push_back(std::move(named));
  }
  return ladder;
}

// ---------------------------------------------------------------------------
// Shared ext-table cache
// ---------------------------------------------------------------------------

/// Caches syzygy windows per module and self/pair ext tables per ordered
/// module pair, keyed by object identity (suites reuse the same ModulePtr
/// instances throughout a run).
class ExtCache {
public:
  const std::vector<size_t>& table(const ModulePtr& x, const ModulePtr& y, long window) {
    auto key = std::make_pair(x.get(), y.get());
    auto it = tables_.find(key);
    if (it != tables_.end() && long(it->second.size()) >= window) return it->second;
    ResolutionWindow& w = window_of(x);
    std::vector<size_t> dims;
    for (long i = 1; i <= window; ++i) dims.push_back(ext_hat(w, y, i));
    return tables_[key] = std::move(dims);
  }

  /// dims of self-extensions of the direct sum of `parts` (with repeats) in
  /// degrees 1..window, summed over ordered pairs.
  std::vector<size_t> sum_table(const std::vector<ModulePtr>& parts, long window) {
    std::vector<size_t> dims(size_t(window), 0);
    for (const auto& a : parts) {
      if (a->dim == 0 || is_projective(a)) continue;
      for (const auto& b : parts) {
        if (b->dim == 0 || is_projective(b)) continue;
        const std::vector<size_t>& t = table(a, b, window);
        for (long i = 0; i < window; ++i) dims[size_t(i)] += t[size_t(i)];
      }
    }
    return dims;
  }

  /// Finite / Unknown verdict from a dim vector, same guard rule as ext_deg.
  static ExtDegResult verdict_of(std::vector<size_t> dims, long window, long guard) {
    ExtDegResult r;
    r.window = window;
    r.guard = guard;
    r.dims = std::move(dims);
    long last = 0;
    for (long i = 1; i <= window; ++i)
      if (r.dims[size_t(i - 1)] != 0) last = i;
    if (window - last >= guard) {
      r.verdict = ExtDegVerdict::Finite;
      r.m = last;
    }
    return r;
  }

  /// Ext table of (sum of as, y): stable Hom and syzygies are additive in
  /// the first argument, so the table is the sum over the parts.
  std::vector<size_t> table_sum_left(const std::vector<ModulePtr>& as, const ModulePtr& y,
                                     long window) {
    std::vector<size_t> dims(size_t(window), 0);
    for (const auto& a : as) {
      if (a->dim == 0 || is_projective(a)) continue;
      const auto& t = table(a, y, window);
      for (long i = 0; i < window; ++i) dims[size_t(i)] += t[size_t(i)];
    }
    return dims;
  }

  /// Ext table of (x, sum of bs); additivity in the second argument.
  std::vector<size_t> table_sum_right(const ModulePtr& x, const std::vector<ModulePtr>& bs,
                                      long window) {
    std::vector<size_t> dims(size_t(window), 0);
    for (const auto& b : bs) {
      if (b->dim == 0 || is_projective(b)) continue;
      const auto& t = table(x, b, window);
      for (long i = 0; i < window; ++i) dims[size_t(i)] += t[size_t(i)];
    }
    return dims;
  }

  ResolutionWindow& window_of(const ModulePtr& x) {
    auto it = windows_.find(x.get());
    if (it == windows_.end())
      it = windows_.emplace(x.get(), std::make_unique<ResolutionWindow>(x)).first;
    return *it->second;
  }

private:
  std::map<std::pair<const FDModule*, const FDModule*>, std::vector<size_t>> tables_;
  std::map<const FDModule*, std::unique_ptr<ResolutionWindow>> windows_;
};

/// Everything the component-level suites need about the q-exterior fixture,
/// built once and shared: the radius-3 component fragment, the ladder
/// X_1, X_2, ... where X_{n+1} is the deeper nonprojective middle summand of
/// the almost split sequence ending at X_n, and a shared ext-table cache.
struct LsContext {
  ComponentGraph comp;            // radius 3, rooted at the fixture module
  std::vector<ModulePtr> ladder;  // X_1 = fixture module, then X_2, X_3, ...
  std::vector<AlmostSplitSequence> ladder_seqs;  // sequences ending at X_1..X_{count-1}
  ExtCache cache;
};

inline LsContext build_ls_context(const Corpus& c, uint64_t seed = 0) {
  LsContext ctx;
  ctx.comp = build_component(c.ls_m, 3, seed);
  ctx.ladder = quasi_length_ladder(c.ls_m, 4, seed, &ctx.ladder_seqs);
  return ctx;
}

/// Nonprojective middle summands with multiplicity.
inline std::vector<ModulePtr> middle_parts(const AlmostSplitSequence& as) {
  std::vector<ModulePtr> parts;
  for (const auto& s : as.middle_dec.summands) {
    if (is_projective(s.rep)) continue;
    for (size_t k = 0; k < s.multiplicity; ++k) parts.push_back(s.rep);
  }
  return parts;
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

/// Dimension shift: Ext_hat^i(M,N) = Ext_hat^{i-m+n}(Om^m M, Om^n N) for
/// seeded random (i,m,n), plus agreement with the cocycle-level classical
/// Ext oracle in degrees 1..5.
inline SuiteReport suite_dimension_shift(const Corpus& c, long window = 20, long guard = 8,
                                         uint64_t seed = 0) {
  SuiteReport rep;
  rep.suite = "dimension-shift";
  rep.statement = "dim Ext_hat^i(M,N) = dim Ext_hat^{i-m+n}(Om^m M, Om^n N) for all i,m,n; "
                  "Ext_hat agrees with the cocycle-level Ext oracle in degrees 1..5";
  rep.window = window;
  rep.guard = guard;
  rep.seed = seed;

  const std::vector<std::pair<ModulePtr, ModulePtr>> pairs = {
      {c.S, c.S}, {c.M1, c.M1}, {c.M1, c.M2}, {c.M2, c.M2}, {c.n1, c.n2}};

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> d(-10, 10);
  for (size_t t = 0; t < 50; ++t) {
    long i = d(rng), m = d(rng), n = d(rng);
    bool all = true;
    std::string bad;
    for (size_t p = 0; p < pairs.size(); ++p) {
      size_t lhs = ext_hat(pairs[p].first, pairs[p].second, i);
      size_t rhs = ext_hat(omega(pairs[p].first, m), omega(pairs[p].second, n), i - m + n);
      if (lhs != rhs) {
        all = false;
        bad = "pair " + std::to_string(p) + ": " + std::to_string(lhs) +
              " != " + std::to_string(rhs);
        break;
      }
    }
    rep.add("shift i=" + std::to_string(i) + " m=" + std::to_string(m) +
                " n=" + std::to_string(n),
            all, bad);
  }

  for (size_t p = 0; p < pairs.size(); ++p) {
    const auto& [m, n] = pairs[p];
    bool all = true;
    std::string bad;
    for (size_t i = 1; i <= 5; ++i) {
      size_t fast = ext_hat(m, n, long(i));
      size_t oracle = ext_classical(m, n, i);
      if (fast != oracle) {
        all = false;
        bad = "degree " + std::to_string(i) + ": " + std::to_string(fast) +
              " != oracle " + std::to_string(oracle);
        break;
      }
    }
    rep.add("cocycle oracle " + m->name + "," + n->name, all, bad);
  }
  return rep;
}

/// Tail-vanishing index of Ext_hat^k(x, y) inside the window: the last
/// nonzero degree, provided the remaining tail has at least `guard` zeros;
/// nullopt when the tail does not vanish.
inline std::optional<long> tail_index(ExtCache& cache, const ModulePtr& x, const ModulePtr& y,
                                      long window, long guard) {
  const auto& t = cache.table(x, y, window);
  long last = 0;
  for (long i = 1; i <= window; ++i)
    if (t[size_t(i - 1)] != 0) last = i;
  if (window - last >= guard) return last;
  return std::nullopt;
}

/// Index shift across almost split sequences 0 -> Om^2 M -> N -> M -> 0:
/// if Ext_hat^k(X,M) = 0 for k > n then Ext_hat^k(X,N) = 0 for n+2 < k <= B
/// and dim Ext_hat^{n+2}(X,N) = dim Ext_hat^n(X,M); dually on the other side.
inline SuiteReport suite_indices(const Corpus& c, LsContext& ls, long window = 20,
                                 long guard = 8, uint64_t seed = 0) {
  SuiteReport rep;
  rep.suite = "indices";
  rep.statement = "across 0 -> Om^2 M -> N -> M -> 0: tail vanishing of Ext_hat(X,M) forces "
                  "Ext_hat^k(X,N)=0 for n+2<k<=B with dim Ext_hat^{n+2}(X,N) = "
                  "dim Ext_hat^n(X,M), and dually";
  rep.window = window;
  rep.guard = guard;
  rep.seed = seed;
  ExtCache& cache = ls.cache;

  for (size_t i = 0; i < ls.ladder_seqs.size(); ++i) {
    const AlmostSplitSequence& as = ls.ladder_seqs[i];
    for (const ModulePtr& x : {ls.ladder[0], as.end}) {
      std::string base = "seq@" + as.end->name + " X=" + x->name;
      // forward form: Ext_hat(X, -) applied to the sequence
      auto n = tail_index(cache, x, as.end, window, guard);
      if (!n) {
        rep.skip(base + " forward", "no tail vanishing of Ext_hat(X, end) in window");
      } else {
        const auto& tm = cache.table(x, as.end, window);
        const std::vector<size_t> tn = cache.table_sum_right(x, middle_parts(as), window);
        bool ok = true;
        std::string bad;
        for (long k = *n + 3; k <= window; ++k)
          if (tn[size_t(k - 1)] != 0) {
            ok = false;
            bad = "Ext_hat^" + std::to_string(k) + "(X,N) != 0";
            break;
          }
        if (ok && *n >= 1 && *n + 2 <= window && tn[size_t(*n + 1)] != tm[size_t(*n - 1)]) {
          ok = false;
          bad = "dim mismatch at degree n+2";
        }
        rep.add(base + " forward", ok, bad);
      }
      // dual form: Ext_hat(-, X) applied to the sequence.  Here the syzygy
      // term contributes in degree k+2, so the middle vanishes for k > n
      // already and the boundary isomorphism sits at degree n itself.
      auto nd = tail_index(cache, as.end, x, window, guard);
      if (!nd) {
        rep.skip(base + " dual", "no tail vanishing of Ext_hat(end, X) in window");
      } else {
        const auto& tm = cache.table(as.end, x, window);
        const std::vector<size_t> tn = cache.table_sum_left(middle_parts(as), x, window);
        bool ok = true;
        std::string bad;
        for (long k = *nd + 1; k <= window; ++k)
          if (tn[size_t(k - 1)] != 0) {
            ok = false;
            bad = "Ext_hat^" + std::to_string(k) + "(N,X) != 0";
            break;
          }
        if (ok && *nd >= 1 && tn[size_t(*nd - 1)] != tm[size_t(*nd - 1)]) {
          ok = false;
          bad = "dim mismatch at degree n";
        }
        rep.add(base + " dual", ok, bad);
      }
    }
  }
  return rep;
}

/// Middle-term law: Finite(m) for the end term forces Finite(m+2) for the
/// middle term, with matching top-degree dimensions.
inline SuiteReport suite_middle_term(const Corpus& c, LsContext& ls, long window = 20,
                                     long guard = 8, uint64_t seed = 0) {
  SuiteReport rep;
  rep.suite = "middle-term";
  rep.statement = "ext_deg(end) = Finite(m) forces ext_deg(middle) = Finite(m+2) and "
                  "dim Ext_hat^{m+2}(middle,middle) = dim Ext_hat^m(end,end)";
  rep.window = window;
  rep.guard = guard;
  rep.seed = seed;
  ExtCache& cache = ls.cache;

  for (const auto& [id, as] : ls.comp.sequences) {
    const ModulePtr& end = as.end;
    std::vector<size_t> end_dims = cache.sum_table({end}, window);
    ExtDegResult re = ExtCache::verdict_of(end_dims, window, guard);
    std::string base = "seq@" + end->name;
    if (!re.finite()) {
      rep.skip(base, "end term not classified Finite in window");
      continue;
    }
    ExtDegResult rm =
        ExtCache::verdict_of(cache.sum_table(middle_parts(as), window), window, guard);
    bool ok = rm.finite_is(re.m + 2);
    std::string bad = ok ? "" : "middle verdict " + std::string(to_string(rm.verdict)) +
                                    "(" + std::to_string(rm.m) + "), expected Finite(" +
                                    std::to_string(re.m + 2) + ")";
    if (ok && re.m >= 1) {
      size_t lhs = rm.dims[size_t(re.m + 1)];
      size_t rhs = re.dims[size_t(re.m - 1)];
      if (lhs != rhs) {
        ok = false;
        bad = "top-degree dims differ: " + std::to_string(lhs) + " != " + std::to_string(rhs);
      }
    }
    rep.add(base, ok, bad);
  }
  return rep;
}

/// Jump law: on a middle term N + L with ext_deg(N) = Finite(n) strictly
/// below Finite(m) = ext_deg(end), the other summand jumps to Finite(m+2).
inline SuiteReport suite_jump(const Corpus& c, LsContext& ls, long window = 20,
                              long guard = 8, uint64_t seed = 0) {
  SuiteReport rep;
  rep.suite = "jump";
  rep.statement = "middle = N + L with ext_deg(N) = Finite(n) < Finite(m) = ext_deg(end) "
                  "forces ext_deg(L) = Finite(m+2) and dim Ext_hat^{m+2}(L,L) = "
                  "dim Ext_hat^m(end,end)";
  rep.window = window;
  rep.guard = guard;
  rep.seed = seed;
  ExtCache& cache = ls.cache;

  for (const auto& [id, as] : ls.comp.sequences) {
    std::vector<ModulePtr> np;
    for (const auto& s : as.middle_dec.summands)
      if (!is_projective(s.rep))
        for (size_t k = 0; k < s.multiplicity; ++k) np.push_back(s.rep);
    std::string base = "seq@" + as.end->name;
    if (np.size() != 2) {
      rep.skip(base, "middle does not split into exactly two nonprojective summands");
      continue;
    }
    ExtDegResult re = ExtCache::verdict_of(cache.sum_table({as.end}, window), window, guard);
    ExtDegResult r0 = ExtCache::verdict_of(cache.sum_table({np[0]}, window), window, guard);
    ExtDegResult r1 = ExtCache::verdict_of(cache.sum_table({np[1]}, window), window, guard);
    if (!re.finite() || !r0.finite() || !r1.finite()) {
      rep.skip(base, "not all terms classified Finite in window");
      continue;
    }
    // orient so that r0 is the low-degree summand
    if (r1.m < r0.m) {
      std::swap(r0, r1);
      std::swap(np[0], np[1]);
    }
    if (r0.m >= re.m) {
      rep.skip(base, "no summand with degree strictly below the end term");
      continue;
    }
    bool ok = r1.finite_is(re.m + 2);
    std::string bad = ok ? "" : "L verdict Finite(" + std::to_string(r1.m) + "), expected Finite(" +
                                    std::to_string(re.m + 2) + ")";
    if (ok && re.m >= 1) {
      size_t lhs = r1.dims[size_t(re.m + 1)];
      size_t rhs = re.dims[size_t(re.m - 1)];
      if (lhs != rhs) {
        ok = false;
        bad = "top-degree dims differ: " + std::to_string(lhs) + " != " + std::to_string(rhs);
      }
    }
    rep.add(base, ok, bad);
  }
  return rep;
}

/// Cone law: predecessor layer d of the fixture module has extension degree
/// Finite(m + 2d).
inline SuiteReport suite_cone(const Corpus& c, LsContext& ls, long window = 20,
                              long guard = 8, uint64_t seed = 0) {
  SuiteReport rep;
  rep.suite = "cone";
  rep.statement = "predecessor layer d of a module with ext_deg Finite(m) has "
                  "ext_deg Finite(m + 2d)";
  rep.window = window;
  rep.guard = guard;
  rep.seed = seed;

  ExtDegResult root = ext_deg(c.ls_m, window, guard, seed);
  if (!root.finite()) {
    rep.skip("root", "fixture module not classified Finite");
    return rep;
  }
  std::vector<ConeLayer> layers = cone_layers(ls.comp, ls.comp.root, 3);
  for (size_t d = 0; d <= 3; ++d) {
    std::vector<ModulePtr> mods;
    for (size_t v : layers[d].members) mods.push_back(ls.comp.vertices[v].rep);
    ExtDegResult r = ExtCache::verdict_of(ls.cache.sum_table(mods, window), window, guard);
    bool ok = r.finite_is(root.m + 2 * long(d));
    std::string members;
    for (size_t v : layers[d].members)
      members += (members.empty() ? "" : ",") + std::to_string(ls.comp.vertices[v].rep->dim);
    rep.add("layer d=" + std::to_string(d) + " dims{" + members + "}", ok,
            ok ? "" : "verdict " + std::string(to_string(r.verdict)) + "(" +
                          std::to_string(r.m) + "), expected Finite(" +
                          std::to_string(root.m + 2 * long(d)) + ")");
  }
  return rep;
}

/// Perp two-of-three across every short exact sequence the corpus produces:
/// cover sequences and almost split sequences, tested against corpus test
/// objects on both sides.
inline SuiteReport suite_perp(const Corpus& c, LsContext* ls, long window = 20,
                              long guard = 8, uint64_t seed = 0) {
  SuiteReport rep;
  rep.suite = "perp";
  rep.statement = "tail vanishing of stable cohomology against two terms of a short exact "
                  "sequence propagates to the third, within the documented window slack";
  rep.window = window;
  rep.guard = guard;
  rep.seed = seed;

  struct Item {
    ShortExactSequence ses;
    std::vector<ModulePtr> tests;
    std::string label;
  };
  std::vector<Item> items;
  auto cover_ses = [](const ModulePtr& m) {
    SyzygyStep st = syzygy_step(m);
    return ShortExactSequence{st.incl, st.cover.epi};
  };
  items.push_back({cover_ses(c.S), {c.S}, "cover@S"});
  items.push_back({cover_ses(c.M1), {c.M1, c.M2}, "cover@M1"});
  items.push_back({cover_ses(c.M2), {c.M1, c.M2}, "cover@M2"});
  items.push_back({cover_ses(c.n1), {c.n1, c.n2}, "cover@n1"});
  items.push_back({cover_ses(c.k_klein), {c.k_klein}, "cover@k"});
  items.push_back({ar_sequence(c.M1, seed).ses(), {c.M1, c.M2}, "ar@M1"});
  items.push_back({ar_sequence(c.S, seed).ses(), {c.S}, "ar@S"});
  items.push_back({ar_sequence(c.n1, seed).ses(), {c.n1, c.n2}, "ar@n1"});
  if (ls) {
    items.push_back({cover_ses(c.ls_m), {c.ls_m}, "cover@" + c.ls_m->name});
    items.push_back({ls->ladder_seqs[0].ses(), {c.ls_m}, "ar@" + c.ls_m->name});
  }

  for (const auto& it : items) {
    for (const auto& t : it.tests) {
      for (PerpSide side : {PerpSide::Left, PerpSide::Right}) {
        TwoOfThreeReport r = two_of_three_check(it.ses, t, side, window, guard);
        std::string name = it.label + " T=" + t->name +
                           (side == PerpSide::Left ? " left" : " right");
        if (!r.applicable)
          rep.skip(name, "fewer than two terms have vanishing tails");
        else
          rep.add(name, r.consistent,
                  r.consistent ? "" : "third term fails in the slack window");
      }
    }
  }
  return rep;
}

/// Periodic modules have infinite extension degree, with a constructive
/// certificate, and the certificate is numerically consistent: the dims at
/// multiples of the period equal the stable endomorphism dimension.
inline SuiteReport suite_tubes(const Corpus& c, long window = 20, long guard = 8,
                               uint64_t seed = 0) {
  SuiteReport rep;
  rep.suite = "tubes";
  rep.statement = "every nonprojective indecomposable with periodic syzygy orbit is "
                  "classified Infinite, certified by (period, nonzero stable endomorphism "
                  "space); dims at period multiples equal the stable endo dim";
  rep.window = window;
  rep.guard = guard;
  rep.seed = seed;

  const std::vector<ModulePtr> mods = {c.S, c.M1, c.M2, c.n1, c.n2};
  for (const auto& m : mods) {
    ExtDegResult r = ext_deg(m, window, guard, seed);
    bool ok = r.verdict == ExtDegVerdict::Infinite && r.period > 0 && r.stable_endo_dim > 0;
    std::string bad = ok ? "" : "verdict " + std::string(to_string(r.verdict));
    if (ok) {
      for (size_t k = 1; k <= 3; ++k) {
        long deg = long(k * r.period);
        if (deg > window) break;
        if (r.dims[size_t(deg - 1)] != r.stable_endo_dim) {
          ok = false;
          bad = "dim at degree " + std::to_string(deg) + " is " +
                std::to_string(r.dims[size_t(deg - 1)]) + ", stable endo dim is " +
                std::to_string(r.stable_endo_dim);
          break;
        }
      }
    }
    rep.add(m->alg->name + ":" + m->name, ok, bad);
  }
  return rep;
}

/// Induced syzygy maps of the irreducible maps around the fixture module
/// never flip between mono and epi; a map with a periodic simple kernel does
/// flip (or is flagged as never settling).
inline SuiteReport suite_omega_perfect(const Corpus& c, LsContext* ls, size_t bound = 6,
                                       uint64_t seed = 0) {
  SuiteReport rep;
  rep.suite = "omega-perfect";
  rep.statement = "irreducible maps around the fixture module keep a pure mono/epi "
                  "classification under syzygies; a map with a periodic simple kernel "
                  "does not";
  rep.seed = seed;

  if (ls) {
    ModuleOmegaPerfectReport r = module_omega_perfect(ls->ladder_seqs[0], bound, seed);
    rep.add("fixture module maps stay pure", r.all_perfect,
            r.all_perfect ? "" : "a mixed verdict appeared");
    auto alpha = ls->ladder_seqs[0].alpha;
    rep.add("fixture module valence <= 2", alpha <= 2, "alpha=" + std::to_string(alpha));
  }

  // counterexample fixture: the quotient map M2 -> M1 over F_3[x]/(x^3) has
  // the periodic simple M1 as kernel
  {
    HomSpace h = hom_basis(c.M2, c.M1);
    std::optional<OmegaPerfectReport> flagged;
    for (const auto& f : h.basis) {
      if (rank(f.m) != c.M1->dim) continue;  // want an epi
      OmegaPerfectReport r = omega_perfect_test(f, bound, seed);
      flagged = r;
      break;
    }
    bool ok = flagged && (flagged->verdict == "mixed" || !flagged->certified);
    rep.add("periodic-simple kernel map flips or is flagged", ok,
            flagged ? "verdict " + flagged->verdict +
                          (flagged->certified ? " (certified)" : " (uncertified)")
                    : "no epi found");
  }
  return rep;
}

/// Quasi-length ladder: ext_deg(X_n) = Finite(2n - 1) with the top-degree
/// dimension equal to dim Ext_hat^1 of the fixture module.
inline SuiteReport suite_quasilength(const Corpus& c, LsContext& ls, long window = 20,
                                     long guard = 8, uint64_t seed = 0) {
  SuiteReport rep;
  rep.suite = "quasi-length";
  rep.statement = "along the ladder X_1, X_2, ... of quasi-lengths 0,1,...: "
                  "ext_deg(X_n) = Finite(2n-1) and dim Ext_hat^{2n-1}(X_n,X_n) = "
                  "dim Ext_hat^1(X_1,X_1)";
  rep.window = window;
  rep.guard = guard;
  rep.seed = seed;

  ExtCache& cache = ls.cache;
  std::vector<size_t> base = cache.sum_table({ls.ladder[0]}, window);
  size_t base_dim = base[0];
  for (size_t n = 1; n <= ls.ladder.size(); ++n) {
    const ModulePtr& x = ls.ladder[n - 1];
    ExtDegResult r = ExtCache::verdict_of(cache.sum_table({x}, window), window, guard);
    long expect = 2 * long(n) - 1;
    bool ok = r.finite_is(expect);
    std::string bad = ok ? "" : "verdict " + std::string(to_string(r.verdict)) + "(" +
                                    std::to_string(r.m) + "), expected Finite(" +
                                    std::to_string(expect) + ")";
    if (ok && r.dims[size_t(expect - 1)] != base_dim) {
      ok = false;
      bad = "top-degree dim " + std::to_string(r.dims[size_t(expect - 1)]) +
            " != " + std::to_string(base_dim);
    }
    rep.add("X_" + std::to_string(n) + " dim=" + std::to_string(x->dim), ok, bad);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Suite dispatch
// ---------------------------------------------------------------------------

inline std::vector<std::string> suite_names() {
  return {"dimension-shift", "indices", "middle-term", "cone",         "jump",
          "perp",            "tubes",   "omega-perfect", "quasi-length"};
}

inline bool suite_needs_ls_context(const std::string& name) {
  return name == "indices" || name == "middle-term" || name == "cone" || name == "jump" ||
         name == "quasi-length" || name == "perp" || name == "omega-perfect";
}

inline SuiteReport run_suite(const std::string& name, const Corpus& c, LsContext* ls,
                             long window = 20, long guard = 8, uint64_t seed = 0) {
  if (name == "dimension-shift") return suite_dimension_shift(c, window, guard, seed);
  if (name == "tubes") return suite_tubes(c, window, guard, seed);
  if (name == "perp") return suite_perp(c, ls, window, guard, seed);
  if (name == "omega-perfect") return suite_omega_perfect(c, ls, 6, seed);
  if (!ls) throw std::invalid_argument("run_suite: suite '" + name + "' needs the component context");
  if (name == "indices") return suite_indices(c, *ls, window, guard, seed);
  if (name == "middle-term") return suite_middle_term(c, *ls, window, guard, seed);
  if (name == "cone") return suite_cone(c, *ls, window, guard, seed);
  if (name == "jump") return suite_jump(c, *ls, window, guard, seed);
  if (name == "quasi-length") return suite_quasilength(c, *ls, window, guard, seed);
  throw std::invalid_argument("run_suite: unknown suite '" + name + "'");
}

}  // namespace stabext
