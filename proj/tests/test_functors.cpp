#include "doctest.h"

#include "generators.hpp"
#include "lambdak/functors.hpp"

using namespace lambdak;

TEST_CASE("ranks of functor values") {
  CHECK(apply_to_module(FunctorSpec::lambda(2), 2) == 1);
  CHECK(apply_to_module(FunctorSpec::sym(2), 2) == 3);
  CHECK(apply_to_module(FunctorSpec::divided_power(2), 2) == 3);
  CHECK(apply_to_module(FunctorSpec::tensor_power(2), 3) == 9);
  // L2@L2 on rank 4: C(C(4,2),2) = C(6,2) = 15
  FunctorSpec l2l2 = FunctorSpec::compose(FunctorSpec::lambda(2), FunctorSpec::lambda(2));
  CHECK(apply_to_module(l2l2, 4) == 15);
  CHECK(apply_to_module(FunctorSpec::lambda(3), 2) == 0);
  CHECK(zero_preserving(FunctorSpec::lambda(2)));
  CHECK(!zero_preserving(FunctorSpec::lambda(0)));
}

TEST_CASE("apply_to_hom basics") {
  SUBCASE("Lambda(2) of a 2x2 matrix is the determinant") {
    IntMatrix a(2, 2, {{2, 3}, {5, 7}});
    IntMatrix m = apply_to_hom(FunctorSpec::lambda(2), a);
    REQUIRE(m.rows() == 1);
    CHECK(m(0, 0) == BigInt(2 * 7 - 3 * 5));
  }
  SUBCASE("identities map to identities") {
    for (auto f : {FunctorSpec::lambda(2), FunctorSpec::sym(3),
                   FunctorSpec::divided_power(2), FunctorSpec::tensor_power(2),
                   FunctorSpec::compose(FunctorSpec::lambda(2), FunctorSpec::sym(2))}) {
      IntMatrix id = IntMatrix::identity(3);
      IntMatrix m = apply_to_hom(f, id);
      CHECK(m == IntMatrix::identity(apply_to_module(f, 3)));
    }
  }
  SUBCASE("Sym vs DividedPower duality on a unipotent") {
    IntMatrix a(2, 2, {{1, 1}, {0, 1}});
    IntMatrix s = apply_to_hom(FunctorSpec::sym(2), a);
    IntMatrix g = apply_to_hom(FunctorSpec::divided_power(2), a);
    // bases x^2, xy, y^2 and e1^2, e1e2, e2^2
    CHECK(s == IntMatrix(3, 3, {{1, 1, 1}, {0, 1, 2}, {0, 0, 1}}));
    CHECK(g == IntMatrix(3, 3, {{1, 2, 1}, {0, 1, 1}, {0, 0, 1}}));
  }
  SUBCASE("functoriality F(AB) = F(A)F(B) on random pairs") {
    gen::Rng rng(101);
    std::vector<FunctorSpec> specs = {
        FunctorSpec::lambda(2),       FunctorSpec::lambda(3),
        FunctorSpec::sym(2),          FunctorSpec::divided_power(2),
        FunctorSpec::tensor_power(2),
        FunctorSpec::direct_sum(FunctorSpec::lambda(2), FunctorSpec::identity()),
        FunctorSpec::tensor_product(FunctorSpec::lambda(2), FunctorSpec::identity()),
        FunctorSpec::compose(FunctorSpec::lambda(2), FunctorSpec::sym(2))};
    for (auto& f : specs)
      for (int t = 0; t < 4; ++t) {
        IntMatrix a = gen::random_matrix(rng, 3, 3, -2, 2);
        IntMatrix b = gen::random_matrix(rng, 3, 3, -2, 2);
        CHECK(apply_to_hom(f, IntMatrix(a * b)) ==
              IntMatrix(apply_to_hom(f, a) * apply_to_hom(f, b)));
      }
  }
  SUBCASE("Cauchy-Binet for rectangular products") {
    gen::Rng rng(5);
    for (int t = 0; t < 5; ++t) {
      IntMatrix a = gen::random_matrix(rng, 3, 4, -2, 2);
      IntMatrix b = gen::random_matrix(rng, 4, 3, -2, 2);
      FunctorSpec l2 = FunctorSpec::lambda(2);
      CHECK(apply_to_hom(l2, IntMatrix(a * b)) ==
            IntMatrix(apply_to_hom(l2, a) * apply_to_hom(l2, b)));
    }
  }
}

TEST_CASE("component extraction agrees with the full matrix") {
  gen::Rng rng(303);
  std::vector<FunctorSpec> specs = {
      FunctorSpec::lambda(2), FunctorSpec::sym(2), FunctorSpec::divided_power(2),
      FunctorSpec::tensor_power(2),
      FunctorSpec::compose(FunctorSpec::lambda(2), FunctorSpec::lambda(2))};
  for (auto& f : specs) {
    IntMatrix a = gen::random_matrix(rng, 4, 3, -2, 2);
    IntMatrix full = apply_to_hom(f, a);
    std::vector<long> rows, cols;
    for (long i = 0; i < full.rows(); i += 2) rows.push_back(i);
    for (long j = 0; j < full.cols(); j += 2) cols.push_back(j);
    IntMatrix part = apply_to_hom_component(f, a, rows, cols);
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < cols.size(); ++j)
        CHECK(part((long)i, (long)j) == full(rows[i], cols[j]));
  }
}

TEST_CASE("cross effects") {
  SUBCASE("cr_n(Lambda^r) vanishes for n > r") {
    for (long r = 1; r <= 3; ++r) {
      std::vector<long> args(r + 1, 2);
      CHECK(cross_effect(FunctorSpec::lambda(r), args).rank == 0);
    }
  }
  SUBCASE("cr_r(Lambda^r) on lines is the tensor product") {
    for (long r = 2; r <= 4; ++r) {
      std::vector<long> ones(r, 1);
      CHECK(cross_effect(FunctorSpec::lambda(r), ones).rank == 1);
    }
    CHECK(cross_effect(FunctorSpec::lambda(3), {2, 1, 3}).rank == 2 * 1 * 3);
  }
  SUBCASE("cr_2(Lambda^2)(1,1) has rank 1") {
    CHECK(cross_effect(FunctorSpec::lambda(2), {1, 1}).rank == 1);
  }
  SUBCASE("decomposition F(X+Y) = F(X) + cr_2 + F(Y)") {
    std::vector<FunctorSpec> specs = {
        FunctorSpec::lambda(2), FunctorSpec::sym(3), FunctorSpec::tensor_power(2),
        FunctorSpec::compose(FunctorSpec::lambda(2), FunctorSpec::lambda(2))};
    for (auto& f : specs)
      for (long a = 0; a <= 4; ++a)
        for (long b = 0; b <= 4 - a; ++b) {
          long lhs = apply_to_module(f, a + b);
          long rhs = apply_to_module(f, a) + cross_effect(f, {a, b}).rank +
                     apply_to_module(f, b);
          CHECK(lhs == rhs);
        }
  }
  SUBCASE("inclusion matrix is the coordinate inclusion") {
    auto ce = cross_effect(FunctorSpec::lambda(2), {1, 1});
    REQUIRE(ce.inclusion.cols() == 1);
    CHECK(ce.inclusion.rows() == 1);  // Lambda^2(Z^2) has rank 1
    CHECK(ce.inclusion(0, 0) == BigInt(1));
  }
}

TEST_CASE("degree computation and verification") {
  CHECK(degree_of(FunctorSpec::lambda(3)) == 3);
  CHECK(degree_of(FunctorSpec::identity()) == 1);
  FunctorSpec l2l2 = FunctorSpec::compose(FunctorSpec::lambda(2), FunctorSpec::lambda(2));
  CHECK(degree_of(l2l2) == 4);
  CHECK(degree_verified(l2l2));
  CHECK(degree_verified(FunctorSpec::lambda(3)));
  CHECK(degree_verified(FunctorSpec::sym(2)));
  CHECK(degree_verified(FunctorSpec::tensor_power(3)));
  CHECK(degree_verified(
      FunctorSpec::direct_sum(FunctorSpec::lambda(2), FunctorSpec::identity())));
  CHECK(degree_verified(
      FunctorSpec::tensor_product(FunctorSpec::lambda(2), FunctorSpec::identity())));
}

TEST_CASE("functor text grammar") {
  CHECK(parse_functor("L2") == FunctorSpec::lambda(2));
  CHECK(parse_functor(" S3 ") == FunctorSpec::sym(3));
  CHECK(parse_functor("G2") == FunctorSpec::divided_power(2));
  CHECK(parse_functor("T2") == FunctorSpec::tensor_power(2));
  CHECK(parse_functor("L2*L1") ==
        FunctorSpec::tensor_product(FunctorSpec::lambda(2), FunctorSpec::lambda(1)));
  CHECK(parse_functor("L2+L1") ==
        FunctorSpec::direct_sum(FunctorSpec::lambda(2), FunctorSpec::lambda(1)));
  CHECK(parse_functor("L2@L2") ==
        FunctorSpec::compose(FunctorSpec::lambda(2), FunctorSpec::lambda(2)));
  // @ binds tighter than *, which binds tighter than +
  CHECK(parse_functor("L1+L2*L2@L1") ==
        FunctorSpec::direct_sum(
            FunctorSpec::lambda(1),
            FunctorSpec::tensor_product(
                FunctorSpec::lambda(2),
                FunctorSpec::compose(FunctorSpec::lambda(2), FunctorSpec::lambda(1)))));
  CHECK(parse_functor("(L1+L2)*L1") ==
        FunctorSpec::tensor_product(
            FunctorSpec::direct_sum(FunctorSpec::lambda(1), FunctorSpec::lambda(2)),
            FunctorSpec::lambda(1)));
  CHECK_THROWS(parse_functor("L"));
  CHECK_THROWS(parse_functor("Q2"));
  CHECK_THROWS(parse_functor("L2+"));
}

TEST_CASE("homogeneity") {
  CHECK(homogeneous_degree(FunctorSpec::lambda(2)) == 2);
  CHECK(homogeneous_degree(FunctorSpec::tensor_product(FunctorSpec::lambda(2),
                                                       FunctorSpec::identity())) == 3);
  CHECK(!homogeneous_degree(
      FunctorSpec::direct_sum(FunctorSpec::lambda(2), FunctorSpec::identity())));
  CHECK(homogeneous_degree(
            FunctorSpec::direct_sum(FunctorSpec::lambda(2), FunctorSpec::sym(2))) == 2);
}
