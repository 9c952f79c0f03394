#pragma once

#include <optional>
#include <vector>

#include "stabext/resolve.hpp"

namespace stabext {

enum class ExtDegVerdict { MinusInfinity, Finite, Infinite, Unknown };

inline const char* to_string(ExtDegVerdict v) {
  switch (v) {
    case ExtDegVerdict::MinusInfinity: return "MinusInfinity";
    case ExtDegVerdict::Finite: return "Finite";
    case ExtDegVerdict::Infinite: return "Infinite";
    case ExtDegVerdict::Unknown: return "Unknown";
  }
  return "?";
}

/// Window-relative classification of the extension degree.
///   MinusInfinity: projective input (sup over the empty set).
///   Finite(m): self-extensions vanish in degrees m+1..m+guard inside the
///     window, with degree m (or degree 0) the last nonzero one.
///   Infinite: constructive certificate only; a syzygy period together with a
///     nonzero stable endomorphism space forces nonvanishing in every window.
///   Unknown: neither pattern observed within the window.
struct ExtDegResult {
  ExtDegVerdict verdict = ExtDegVerdict::Unknown;
  long m = 0;                  // Finite verdicts
  size_t period = 0;           // Infinite certificate
  size_t stable_endo_dim = 0;  // Infinite certificate
  long window = 0;
  long guard = 0;
  std::vector<size_t> dims;  // self-extension dims at degrees 1..window

  bool finite() const { return verdict == ExtDegVerdict::Finite; }
  bool finite_is(long deg) const { return finite() && m == deg; }
};

inline ExtDegResult ext_deg(const ModulePtr& mod, long window = 20, long guard = 8,
                            uint64_t seed = 0) {
  ExtDegResult r;
  r.window = window;
  r.guard = guard;
  if (mod->dim == 0 || is_projective(mod)) {
    r.verdict = ExtDegVerdict::MinusInfinity;
    return r;
  }
  ResolutionWindow w(mod);
  for (long i = 1; i <= window; ++i) r.dims.push_back(ext_hat(w, mod, i));
  if (auto p = detect_syzygy_period(mod, size_t(window), seed)) {
    r.verdict = ExtDegVerdict::Infinite;
    r.period = p->period;
    r.stable_endo_dim = stable_hom_dim(mod, mod);
    return r;
  }
  long last = 0;  // degree 0 always carries Hom(M,M) != 0
  for (long i = 1; i <= window; ++i)
    if (r.dims[size_t(i - 1)] != 0) last = i;
  if (window - last >= guard) {
    r.verdict = ExtDegVerdict::Finite;
    r.m = last;
  }
  return r;
}

/// Extension degree of a direct sum, computed additively: syzygies commute
/// with direct sums up to projective summands and stable Hom is additive, so
/// dim of self-extensions of the sum in degree i is the sum over ordered part
/// pairs (a,b) of dim Êxt^i(a,b).  Avoids resolving the (large) sum itself.
/// Only MinusInfinity and Finite verdicts are produced here; a nonvanishing
/// tail comes back Unknown (no periodicity certificate is attempted for sums).
inline ExtDegResult ext_deg_of_sum(const std::vector<ModulePtr>& parts, long window = 20,
                                   long guard = 8, uint64_t seed = 0) {
  std::vector<ModulePtr> np;
  for (const auto& p : parts)
    if (p->dim > 0 && !is_projective(p)) np.push_back(p);
  if (np.empty()) {
    ExtDegResult r;
    r.window = window;
    r.guard = guard;
    r.verdict = ExtDegVerdict::MinusInfinity;
    return r;
  }
  if (np.size() == 1) return ext_deg(np[0], window, guard, seed);
  ExtDegResult r;
  r.window = window;
  r.guard = guard;
  r.dims.assign(size_t(window), 0);
  for (const auto& a : np) {
    ResolutionWindow w(a);
    for (long i = 1; i <= window; ++i) {
      const ModulePtr& oa = w.at(i);
      for (const auto& b : np) r.dims[size_t(i - 1)] += stable_hom_dim(oa, b);
    }
  }
  long last = 0;
  for (long i = 1; i <= window; ++i)
    if (r.dims[size_t(i - 1)] != 0) last = i;
  if (window - last >= guard) {
    r.verdict = ExtDegVerdict::Finite;
    r.m = last;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Perp and two-of-three
// ---------------------------------------------------------------------------

/// Window reading of "self-extensions of (M against N) eventually vanish":
/// the last `guard` degrees of the window must all be zero.
struct PerpResult {
  bool holds = false;
  long first_witness = 0;  // first nonzero tail degree when it fails
  long window = 0;
  long guard = 0;
  std::vector<size_t> dims;  // degrees 1..window
};

inline PerpResult perp(const ModulePtr& m, const ModulePtr& n, long window = 20, long guard = 8) {
  PerpResult r;
  r.window = window;
  r.guard = guard;
  ResolutionWindow w(m);
  for (long i = 1; i <= window; ++i) r.dims.push_back(ext_hat(w, n, i));
  r.holds = true;
  for (long i = window - guard + 1; i <= window; ++i)
    if (r.dims[size_t(i - 1)] != 0) {
      r.holds = false;
      r.first_witness = i;
      break;
    }
  return r;
}

/// The long exact sequence of 0 -> X -> Y -> Z -> 0 against T propagates
/// tail vanishing from any two terms to the third, at the cost of two
/// degrees of window slack.  side = left tests the terms against T on the
/// left of Ext (term, T); side = right tests (T, term).
struct TwoOfThreeReport {
  bool applicable = false;  // at least two of the three hold
  bool consistent = true;   // the third holds in the slack-adjusted window
  bool term_holds[3] = {false, false, false};
  int inferred = -1;  // index of the term whose vanishing was inferred
  long window = 0, guard = 0;
};

enum class PerpSide { Left, Right };

inline TwoOfThreeReport two_of_three_check(const ShortExactSequence& ses, const ModulePtr& t,
                                           PerpSide side, long window = 20, long guard = 8) {
  if (!ses.verify()) throw std::invalid_argument("two_of_three_check: sequence is not exact");
  const ModulePtr terms[3] = {ses.left.src, ses.left.dst, ses.right.dst};
  TwoOfThreeReport rep;
  rep.window = window;
  rep.guard = guard;
  PerpResult pr[3];
  for (int i = 0; i < 3; ++i) {
    pr[i] = side == PerpSide::Left ? perp(terms[i], t, window, guard)
                                   : perp(t, terms[i], window, guard);
    rep.term_holds[i] = pr[i].holds;
  }
  int held = (rep.term_holds[0] ? 1 : 0) + (rep.term_holds[1] ? 1 : 0) +
             (rep.term_holds[2] ? 1 : 0);
  if (held < 2) return rep;  // vacuous
  rep.applicable = true;
  if (held == 3) return rep;
  for (int i = 0; i < 3; ++i)
    if (!rep.term_holds[i]) rep.inferred = i;
  // connecting maps shift degrees by at most one in each direction, so the
  // third term must vanish in the window shrunk by two degrees at each end
  const PerpResult& third = pr[rep.inferred];
  for (long i = window - guard + 3; i <= window - 2; ++i)
    if (third.dims[size_t(i - 1)] != 0) rep.consistent = false;
  return rep;
}

// ---------------------------------------------------------------------------
// Finitistic estimate over a family of modules
// ---------------------------------------------------------------------------

struct FedEstimate {
  std::optional<long> sup_finite;  // absent when no Finite verdict occurred
  size_t finite_count = 0;
  size_t infinite_count = 0;
  size_t projective_count = 0;
  size_t unknown_count = 0;
  std::vector<ExtDegResult> verdicts;
};

/// Sup of the Finite verdicts over the supplied modules; window-bounded
/// evidence, never a certificate for the algebra.
inline FedEstimate fed_estimate(const std::vector<ModulePtr>& mods, long window = 20,
                                long guard = 8, uint64_t seed = 0) {
  FedEstimate est;
  for (const auto& m : mods) {
    ExtDegResult r = ext_deg(m, window, guard, seed);
    switch (r.verdict) {
      case ExtDegVerdict::MinusInfinity: ++est.projective_count; break;
      case ExtDegVerdict::Finite:
        ++est.finite_count;
        if (!est.sup_finite || r.m > *est.sup_finite) est.sup_finite = r.m;
        break;
      case ExtDegVerdict::Infinite: ++est.infinite_count; break;
      case ExtDegVerdict::Unknown: ++est.unknown_count; break;
    }
    est.verdicts.push_back(std::move(r));
  }
  return est;
}

}  // namespace stabext
