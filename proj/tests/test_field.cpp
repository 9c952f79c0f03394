#include <catch2/catch_amalgamated.hpp>

#include "stabext/matrix.hpp"

using namespace stabext;

TEST_CASE("prime field construction rejects composites", "[field]") {
  CHECK_THROWS_AS(FieldSpec::prime(1), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::prime(4), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::prime(91), std::invalid_argument);
  CHECK(FieldSpec::prime(2).characteristic() == 2);
  CHECK(FieldSpec::prime(97).characteristic() == 97);
  CHECK(FieldSpec::rationals().is_rational());
}

TEST_CASE("rational arithmetic stays canonical", "[field]") {
  FieldSpec q = FieldSpec::rationals();
  Scalar a = q.parse("3/7");
  Scalar b = q.parse("-2/14");
  CHECK(q.to_string(b) == "-1/7");
  CHECK(q.to_string(q.add(a, b)) == "2/7");
  CHECK(q.to_string(q.mul(a, q.inv(a))) == "1");
  CHECK(q.to_string(q.div(a, b)) == "-3");
  CHECK_THROWS_AS(q.inv(Scalar(0)), std::domain_error);
}

TEST_CASE("prime field arithmetic reduces mod p", "[field]") {
  FieldSpec f5 = FieldSpec::prime(5);
  CHECK(f5.from_long(12) == 2);
  CHECK(f5.from_long(-1) == 4);
  CHECK(f5.add(Scalar(3), Scalar(4)) == 2);
  CHECK(f5.mul(Scalar(3), Scalar(4)) == 2);
  CHECK(f5.inv(Scalar(3)) == 2);
  CHECK(f5.parse("7") == 2);
  // rational input is reduced through the denominator inverse
  CHECK(f5.parse("1/2") == 3);
  CHECK_THROWS_AS(f5.reduce(Scalar(1, 5)), std::domain_error);
}

TEST_CASE("scalar parsing rejects garbage", "[field]") {
  FieldSpec q = FieldSpec::rationals();
  CHECK_THROWS_AS(q.parse("x/y"), std::invalid_argument);
  CHECK_THROWS_AS(q.parse(""), std::invalid_argument);
}

TEST_CASE("random scalars are deterministic per seed", "[field]") {
  for (FieldSpec f : {FieldSpec::rationals(), FieldSpec::prime(7)}) {
    std::mt19937_64 a(42), b(42), c(43);
    std::vector<Scalar> va, vb, vc;
    for (int i = 0; i < 32; ++i) {
      va.push_back(f.random(a));
      vb.push_back(f.random(b));
      vc.push_back(f.random(c));
    }
    CHECK(va == vb);
    CHECK(va != vc);
    for (const auto& s : va) CHECK(f.reduce(s) == s);
  }
}
