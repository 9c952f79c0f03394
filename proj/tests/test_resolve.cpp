#include <catch2/catch_amalgamated.hpp>

#include "stabext/corpus.hpp"
#include "stabext/extdeg.hpp"
#include "stabext/resolve.hpp"
#include "stabext/decomp.hpp"

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

TEST_CASE("syzygies swap the two truncated modules", "[resolve]") {
  Fix fx;
  CHECK(is_iso(syzygy(fx.m1), fx.m2).found());
  CHECK(is_iso(syzygy(fx.m2), fx.m1).found());
  CHECK(is_iso(syzygy(fx.s), fx.s).found());
  CHECK(syzygy(regular_module(fx.f3))->dim == 0);
}

TEST_CASE("cosyzygy inverts syzygy and omega(0) strips projectives", "[resolve]") {
  Fix fx;
  CHECK(is_iso(cosyzygy(syzygy(fx.m1)), fx.m1).found());
  CHECK(is_iso(cosyzygy(syzygy(fx.m2)), fx.m2).found());
  ModulePtr padded = direct_sum({fx.m1, regular_module(fx.f3)}).sum;
  ModulePtr stripped = omega(padded, 0);
  CHECK(is_iso(stripped, fx.m1).found());
  CHECK(omega(regular_module(fx.f3), 0)->dim == 0);
}

TEST_CASE("omega composes additively in the exponent", "[resolve]") {
  Fix fx;
  for (long a : {-3L, -1L, 2L})
    for (long b : {-2L, 1L, 3L}) {
      ModulePtr lhs = omega(omega(fx.m2, a), b);
      ModulePtr rhs = omega(fx.m2, a + b);
      CHECK(is_iso(lhs, rhs).found());
    }
}

TEST_CASE("stable cohomology agrees with the cocycle-level oracle", "[resolve]") {
  Fix fx;
  for (const auto& [m, n] : std::vector<std::pair<ModulePtr, ModulePtr>>{
           {fx.m1, fx.m1}, {fx.m1, fx.m2}, {fx.m2, fx.m2}, {fx.s, fx.s}}) {
    for (size_t i = 1; i <= 4; ++i) CHECK(ext_hat(m, n, long(i)) == ext_classical(m, n, i));
  }
}

TEST_CASE("dimension shift identity on sampled triples", "[resolve]") {
  Fix fx;
  for (auto [i, m, n] : std::vector<std::array<long, 3>>{
           {2, 1, 0}, {0, -2, 3}, {-1, 4, -4}, {5, -3, -1}, {3, 2, 2}}) {
    CHECK(ext_hat(fx.m1, fx.m2, i) ==
          ext_hat(omega(fx.m1, m), omega(fx.m2, n), i - m + n));
  }
}

TEST_CASE("betti numbers of the periodic resolutions are constant", "[resolve]") {
  Fix fx;
  ResolutionWindow w(fx.m1);
  auto b = betti(w, 0, 5);
  for (long i = 0; i <= 5; ++i) CHECK(b[i] == 3);  // every cover is the regular module
}

TEST_CASE("syzygy period detection", "[resolve]") {
  Fix fx;
  auto p1 = detect_syzygy_period(fx.m1, 10);
  REQUIRE(p1.has_value());
  CHECK(p1->period == 2);
  auto ps = detect_syzygy_period(fx.s, 10);
  REQUIRE(ps.has_value());
  CHECK(ps->period == 1);
}

TEST_CASE("ext tables cover negative degrees", "[resolve]") {
  Fix fx;
  ExtTable t = ext_table(fx.m1, fx.m1, -3, 3);
  for (long i = -3; i <= 3; ++i) CHECK(t.at(i) == 1);  // period-2 tube, all dims 1
  CHECK_THROWS_AS(t.at(4), std::out_of_range);
}

TEST_CASE("additive ext degree matches the direct computation", "[resolve]") {
  Fix fx;
  ModulePtr ds = direct_sum({fx.m1, fx.m2}).sum;
  ExtDegResult add = ext_deg_of_sum({fx.m1, fx.m2}, 6, 2);
  for (long i = 1; i <= 6; ++i) CHECK(add.dims[size_t(i - 1)] == ext_hat(ds, ds, i));
}
