#include <catch2/catch_amalgamated.hpp>

#include "stabext/corpus.hpp"
#include "stabext/extdeg.hpp"

using namespace stabext;

namespace {

struct Fix {
  AlgebraPtr f3 = truncated_polynomial_algebra(FieldSpec::prime(3), 3, "F3[x]/(x^3)");
  ModulePtr m1 = truncated_module(f3, 1, "M1");
  ModulePtr m2 = truncated_module(f3, 2, "M2");
  AlgebraPtr f2 = truncated_polynomial_algebra(FieldSpec::prime(2), 2, "F2[x]/(x^2)");
  ModulePtr s = truncated_module(f2, 1, "S");
};

}  // namespace

TEST_CASE("projectives get the minus-infinity sentinel", "[extdeg]") {
  Fix fx;
  ExtDegResult r = ext_deg(regular_module(fx.f3));
  CHECK(r.verdict == ExtDegVerdict::MinusInfinity);
  CHECK(ext_deg(zero_module(fx.f3)).verdict == ExtDegVerdict::MinusInfinity);
}

TEST_CASE("periodic modules get certified infinite verdicts", "[extdeg]") {
  Fix fx;
  for (const auto& [m, period] : std::vector<std::pair<ModulePtr, size_t>>{
           {fx.m1, 2}, {fx.m2, 2}, {fx.s, 1}}) {
    ExtDegResult r = ext_deg(m, 12, 4);
    CHECK(r.verdict == ExtDegVerdict::Infinite);
    CHECK(r.period == period);
    CHECK(r.stable_endo_dim > 0);
    // the certificate is numerically consistent at period multiples
    for (size_t k = 1; k * r.period <= 12 && k <= 3; ++k)
      CHECK(r.dims[k * r.period - 1] == r.stable_endo_dim);
  }
}

TEST_CASE("the q-exterior fixture module is finite of degree one", "[extdeg]") {
  AlgebraPtr ls = liu_schulz_algebra();
  Vec u(ls->dim, Scalar(0));
  u[1] = 1;
  u[2] = 1;
  ModulePtr m = cyclic_module(ls, u, "M");
  ExtDegResult r = ext_deg(m, 20, 10);
  CHECK(r.finite_is(1));
  CHECK(r.dims[0] == 1);
  for (size_t i = 1; i < r.dims.size(); ++i) CHECK(r.dims[i] == 0);
}

TEST_CASE("perp holds exactly when the tail vanishes", "[extdeg]") {
  Fix fx;
  PerpResult bad = perp(fx.m1, fx.m1, 10, 4);
  CHECK_FALSE(bad.holds);
  CHECK(bad.first_witness == 7);

  AlgebraPtr ls = liu_schulz_algebra();
  Vec u(ls->dim, Scalar(0));
  u[1] = 1;
  u[2] = 1;
  ModulePtr m = cyclic_module(ls, u, "M");
  PerpResult good = perp(m, m, 10, 4);
  CHECK(good.holds);
}

TEST_CASE("two-of-three is vacuous without two vanishing tails", "[extdeg]") {
  Fix fx;
  SyzygyStep st = syzygy_step(fx.m1);
  ShortExactSequence ses{st.incl, st.cover.epi};
  TwoOfThreeReport r = two_of_three_check(ses, fx.m1, PerpSide::Left, 10, 4);
  CHECK_FALSE(r.applicable);
  CHECK(r.consistent);
}

TEST_CASE("two-of-three applies across the fixture cover sequence", "[extdeg]") {
  AlgebraPtr ls = liu_schulz_algebra();
  Vec u(ls->dim, Scalar(0));
  u[1] = 1;
  u[2] = 1;
  ModulePtr m = cyclic_module(ls, u, "M");
  SyzygyStep st = syzygy_step(m);
  ShortExactSequence ses{st.incl, st.cover.epi};
  for (PerpSide side : {PerpSide::Left, PerpSide::Right}) {
    TwoOfThreeReport r = two_of_three_check(ses, m, side, 12, 4);
    CHECK(r.applicable);
    CHECK(r.consistent);
  }
}

TEST_CASE("finitistic estimate aggregates verdicts", "[extdeg]") {
  Fix fx;
  FedEstimate proj_only = fed_estimate({regular_module(fx.f3), regular_module(fx.f2)}, 8, 3);
  CHECK(proj_only.projective_count == 2);
  CHECK_FALSE(proj_only.sup_finite.has_value());

  FedEstimate mixed = fed_estimate({fx.m1, fx.m2, regular_module(fx.f3)}, 8, 3);
  CHECK(mixed.infinite_count == 2);
  CHECK(mixed.projective_count == 1);
  CHECK(mixed.finite_count == 0);
  CHECK_FALSE(mixed.sup_finite.has_value());
}

TEST_CASE("additive sum verdicts", "[extdeg]") {
  Fix fx;
  ExtDegResult r = ext_deg_of_sum({regular_module(fx.f3), regular_module(fx.f3)});
  CHECK(r.verdict == ExtDegVerdict::MinusInfinity);
  ExtDegResult u = ext_deg_of_sum({fx.m1, fx.m2}, 10, 4);
  CHECK(u.verdict == ExtDegVerdict::Unknown);  // nonvanishing tail, no certificate for sums
}
