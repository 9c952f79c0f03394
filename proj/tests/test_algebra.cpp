#include <catch2/catch_amalgamated.hpp>

#include "stabext/corpus.hpp"

using namespace stabext;

TEST_CASE("fixture algebras pass validation", "[algebra]") {
  // builders throw on validation failure, so constructing them is the check;
  // also confirm the derived data was filled in
  for (const AlgebraPtr& a :
       {truncated_polynomial_algebra(FieldSpec::prime(3), 3, "F3[x]/(x^3)"), group_algebra_c2(),
        group_algebra_klein(), nakayama_symmetric_two(FieldSpec::prime(2)),
        liu_schulz_algebra()}) {
    CHECK(a->loewy_length > 0);
    CHECK_FALSE(a->generators.empty());
    CHECK(a->multiply(a->unit, a->unit) == a->unit);
  }
}

TEST_CASE("validation rejects a corrupted multiplication table", "[algebra]") {
  AlgebraPtr good = truncated_polynomial_algebra(FieldSpec::prime(3), 3, "A");
  AlgebraPresentation bad = *good;
  bad.opposite_cache.reset();
  bad.projectives_cache.reset();
  bad.table[1][1][0] = 1;  // x*x picks up a unit component: breaks nilpotency
  ValidationReport rep = validate_algebra(bad);
  CHECK_FALSE(rep.ok());
}

TEST_CASE("validation rejects a dependent radical basis", "[algebra]") {
  AlgebraPtr good = truncated_polynomial_algebra(FieldSpec::prime(3), 3, "A");
  AlgebraPresentation bad = *good;
  bad.opposite_cache.reset();
  bad.projectives_cache.reset();
  bad.radical.push_back(bad.radical[0]);
  ValidationReport rep = validate_algebra(bad);
  CHECK_FALSE(rep.ok());
}

TEST_CASE("symmetrizing forms exist for the symmetric fixtures", "[algebra]") {
  for (const AlgebraPtr& a :
       {truncated_polynomial_algebra(FieldSpec::prime(2), 2, "F2[x]/(x^2)"),
        truncated_polynomial_algebra(FieldSpec::prime(3), 3, "F3[x]/(x^3)"),
        group_algebra_klein(), nakayama_symmetric_two(FieldSpec::prime(2)),
        liu_schulz_algebra()}) {
    FormSearchResult r = find_symmetrizing_form(*a);
    REQUIRE(r.status == FormSearchStatus::Found);
    Mat g = gram_matrix(*a, r.form->lambda);
    CHECK(g == g.transpose());
    CHECK(rank(g) == a->dim);
  }
}

TEST_CASE("non-self-injective fixture is certified to have no form", "[algebra]") {
  AlgebraPtr a = path_algebra_a2(FieldSpec::prime(2));
  FormSearchResult r = find_symmetrizing_form(*a);
  CHECK(r.status == FormSearchStatus::CertifiedAbsent);
}

TEST_CASE("opposite algebra transposes the table and is involutive", "[algebra]") {
  AlgebraPtr a = liu_schulz_algebra();
  AlgebraPtr op = opposite_of(a);
  for (size_t i = 0; i < a->dim; ++i)
    for (size_t j = 0; j < a->dim; ++j) CHECK(op->table[i][j] == a->table[j][i]);
  CHECK(opposite_of(op).get() == a.get());
  // multiplication really reverses
  Vec x = a->basis_vector(1), y = a->basis_vector(2);
  CHECK(op->multiply(x, y) == a->multiply(y, x));
}

TEST_CASE("left and right multiplication operators commute with each other", "[algebra]") {
  AlgebraPtr a = nakayama_symmetric_two(FieldSpec::prime(2));
  for (size_t i = 0; i < a->dim; ++i)
    for (size_t j = 0; j < a->dim; ++j) {
      Mat lr = a->left_mult(a->basis_vector(i)) * a->right_mult(a->basis_vector(j));
      Mat rl = a->right_mult(a->basis_vector(j)) * a->left_mult(a->basis_vector(i));
      CHECK(lr == rl);
    }
}
