#include <catch2/catch_amalgamated.hpp>

#include "stabext/matrix.hpp"

using namespace stabext;

namespace {

Mat random_matrix(FieldSpec f, size_t rows, size_t cols, std::mt19937_64& rng) {
  Mat m(f, rows, cols);
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < cols; ++c) m.at(r, c) = f.random(rng);
  return m;
}

}  // namespace

TEST_CASE("identity and multiplication", "[matrix]") {
  FieldSpec f = FieldSpec::prime(5);
  Mat id = Mat::identity(f, 3);
  std::mt19937_64 rng(1);
  Mat a = random_matrix(f, 3, 3, rng);
  CHECK(a * id == a);
  CHECK(id * a == a);
  CHECK((a - a).is_zero());
  CHECK(a.transpose().transpose() == a);
}

TEST_CASE("rref is idempotent and rank-revealing", "[matrix]") {
  for (FieldSpec f : {FieldSpec::rationals(), FieldSpec::prime(3)}) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 20; ++t) {
      Mat a = random_matrix(f, 4, 6, rng);
      RrefResult r1 = rref(a);
      RrefResult r2 = rref(r1.r);
      CHECK(r1.r == r2.r);
      CHECK(r1.rank() == r2.rank());
      CHECK(r1.rank() <= 4);
    }
  }
}

TEST_CASE("rank plus nullity equals column count on 200 seeded matrices", "[matrix]") {
  std::mt19937_64 rng(2024);
  const FieldSpec fields[] = {FieldSpec::rationals(), FieldSpec::prime(2), FieldSpec::prime(5)};
  std::uniform_int_distribution<size_t> dim(1, 8);
  for (int t = 0; t < 200; ++t) {
    FieldSpec f = fields[t % 3];
    Mat a = random_matrix(f, dim(rng), dim(rng), rng);
    Mat k = kernel_basis(a);
    CHECK(rank(a) + k.cols() == a.cols());
    CHECK((a * k).is_zero());
  }
}

TEST_CASE("solve finds solutions and detects inconsistency", "[matrix]") {
  FieldSpec q = FieldSpec::rationals();
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    Mat a = random_matrix(q, 5, 3, rng);
    Vec x(3);
    for (auto& s : x) s = q.random(rng);
    Vec b(5, Scalar(0));
    for (size_t r = 0; r < 5; ++r)
      for (size_t c = 0; c < 3; ++c) b[r] += a.at(r, c) * x[c];
    for (auto& s : b) s = q.reduce(s);
    auto got = solve(a, b);
    REQUIRE(got.has_value());
    // solutions may differ in the kernel directions; recheck the product
    Vec check(5, Scalar(0));
    for (size_t r = 0; r < 5; ++r)
      for (size_t c = 0; c < 3; ++c) check[r] += a.at(r, c) * (*got)[c];
    for (size_t r = 0; r < 5; ++r) CHECK(q.reduce(check[r]) == b[r]);
  }
  // inconsistent system
  Mat a(q, 2, 1);
  a.at(0, 0) = 1;
  a.at(1, 0) = 1;
  CHECK_FALSE(solve(a, Vec{Scalar(1), Scalar(2)}).has_value());
}

TEST_CASE("inverse round-trips on random invertible matrices", "[matrix]") {
  FieldSpec f = FieldSpec::prime(7);
  std::mt19937_64 rng(9);
  int done = 0;
  while (done < 10) {
    Mat a = random_matrix(f, 4, 4, rng);
    if (rank(a) < 4) continue;
    auto inv = inverse(a);
    REQUIRE(inv.has_value());
    CHECK(a * *inv == Mat::identity(f, 4));
    CHECK(*inv * a == Mat::identity(f, 4));
    ++done;
  }
  Mat sing(f, 2, 2);
  sing.at(0, 0) = 1;
  CHECK_FALSE(inverse(sing).has_value());
}

TEST_CASE("column space membership", "[matrix]") {
  FieldSpec q = FieldSpec::rationals();
  Mat a(q, 3, 2);
  a.at(0, 0) = 1;
  a.at(1, 1) = 1;
  Mat b = column_space_basis(a.hstack(a));
  CHECK(b.cols() == 2);
  CHECK(in_column_space(b, Vec{Scalar(2), Scalar(-3), Scalar(0)}));
  CHECK_FALSE(in_column_space(b, Vec{Scalar(0), Scalar(0), Scalar(1)}));
}
