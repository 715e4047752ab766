#include "doctest.h"

#include "generators.hpp"
#include "lambdak/complexes.hpp"

using namespace lambdak;

namespace {

ChainComplex two_term(long long x) {
  ChainComplex c({1, 1});
  c.set_diff(1, IntMatrix(1, 1, {{x}}));
  return c;
}

// The admissible-epimorphism source: degrees 2,1,0 with
// d = (i1, p2) and d~ = (i2, p1) on Z -> Z^2 -> Z.
BinaryComplex example_source() {
  BinaryComplex b({1, 2, 1});
  b.d_[2] = IntMatrix(2, 1, {{1}, {0}});
  b.d_[1] = IntMatrix(1, 2, {{0, 1}});
  b.dt_[2] = IntMatrix(2, 1, {{0}, {1}});
  b.dt_[1] = IntMatrix(1, 2, {{1, 0}});
  return b;
}

}  // namespace

TEST_CASE("validate chain complexes") {
  CHECK(validate(two_term(1)).ok());
  ChainComplex bad({1, 1, 1});
  bad.set_diff(1, IntMatrix(1, 1, {{1}}));
  bad.set_diff(2, IntMatrix(1, 1, {{1}}));
  auto rep = validate(bad);
  REQUIRE(!rep.ok());
  CHECK(rep.violations[0].find("degree 2") != std::string::npos);
}

TEST_CASE("validate multicomplex commutation") {
  // binary bicomplex with one anticommuting square
  BinaryMultiComplex x(2);
  x.ranks[{0, 0}] = 1;
  x.ranks[{1, 0}] = 1;
  x.ranks[{0, 1}] = 1;
  x.ranks[{1, 1}] = 1;
  for (int f = 0; f < 2; ++f) {
    x.set_d(f, 0, {1, 0}, IntMatrix(1, 1, {{1}}));
    x.set_d(f, 0, {1, 1}, IntMatrix(1, 1, {{1}}));
    x.set_d(f, 1, {0, 1}, IntMatrix(1, 1, {{1}}));
    x.set_d(f, 1, {1, 1}, IntMatrix(1, 1, {{f == 0 ? -1 : 1}}));
  }
  auto rep = validate(x);
  REQUIRE(!rep.ok());
  CHECK(rep.violations[0].find("d^1d^2 = d^2d^1") != std::string::npos);

  // the commuting version passes
  BinaryMultiComplex y = x;
  y.fam[0][1][{1, 1}] = IntMatrix(1, 1, {{1}});
  CHECK(validate(y).ok());
}

TEST_CASE("homology of small complexes") {
  SUBCASE("Z --2--> Z") {
    ChainComplex c = two_term(2);
    FgAbGroup h0 = homology(c, 0);
    CHECK(h0.free_rank == 0);
    REQUIRE(h0.torsion.size() == 1);
    CHECK(h0.torsion[0] == BigInt(2));
    CHECK(homology(c, 1).is_trivial());
  }
  SUBCASE("Z --1--> Z") {
    ChainComplex c = two_term(1);
    CHECK(homology(c, 0).is_trivial());
    CHECK(homology(c, 1).is_trivial());
  }
  SUBCASE("unimodular change of basis preserves homology") {
    gen::Rng rng(42);
    for (int t = 0; t < 10; ++t) {
      ChainComplex c = gen::random_complex(rng, 3, 3);
      REQUIRE(validate(c).ok());
      std::vector<IntMatrix> U(c.top() + 1), Ui(c.top() + 1);
      ChainComplex c2 = c;
      for (long i = 0; i <= c.top(); ++i)
        gen::random_unimodular(rng, c.rank(i), U[i], Ui[i]);
      for (long i = 1; i <= c.top(); ++i)
        c2.set_diff(i, IntMatrix(U[i - 1] * c.diff(i) * Ui[i]));
      REQUIRE(validate(c2).ok());
      for (long i = 0; i <= c.top(); ++i) CHECK(homology(c, i) == homology(c2, i));
    }
  }
}

TEST_CASE("is_acyclic") {
  CHECK(is_acyclic(two_term(1)));
  CHECK(!is_acyclic(two_term(2)));
  BinaryComplex ex = example_source();
  REQUIRE(validate(ex).ok());
  CHECK(is_acyclic(ex.chain(0)));
  CHECK(is_acyclic(ex.chain(1)));
  CHECK(is_acyclic(ex));
}

TEST_CASE("shift") {
  BinaryComplex b = BinaryComplex::diagonal(two_term(5));
  SUBCASE("shift by zero is the identity") { CHECK(shift(b, 0) == b); }
  SUBCASE("shift by one") {
    BinaryComplex s = shift(b, 1);
    CHECK(s.rank(0) == 0);
    CHECK(s.rank(1) == 1);
    CHECK(s.rank(2) == 1);
    CHECK(s.diff(0, 2) == IntMatrix(1, 1, {{-5}}));
    CHECK(validate(s).ok());
  }
  SUBCASE("double shift composes") { CHECK(shift(shift(b, 1), 1) == shift(b, 2)); }
  SUBCASE("shift preserves acyclicity") {
    gen::Rng rng(3);
    for (int t = 0; t < 5; ++t) {
      BinaryComplex c = gen::random_binary_acyclic(rng, 1 + rng.below(2), 3);
      REQUIRE(is_acyclic(c));
      for (long k = 1; k <= 3; ++k) CHECK(is_acyclic(shift(c, k)));
    }
  }
}

TEST_CASE("cone") {
  SUBCASE("cone of zero is zero") {
    BinaryComplex z({0});
    CHECK(cone(z).is_zero());
  }
  SUBCASE("cone of Z --1--> Z is acyclic of total rank 4") {
    BinaryComplex b = BinaryComplex::diagonal(two_term(1));
    BinaryComplex c = cone(b);
    long total = 0;
    for (long r : c.ranks) total += r;
    CHECK(total == 4);
    CHECK(validate(c).ok());
    CHECK(is_acyclic(c));
  }
  SUBCASE("cones of identities are acyclic even for non-acyclic input") {
    gen::Rng rng(9);
    for (int t = 0; t < 8; ++t) {
      ChainComplex c = gen::random_complex(rng, 3, 3);
      BinaryComplex b = BinaryComplex::diagonal(c);
      CHECK(validate(cone(b)).ok());
      CHECK(is_acyclic(cone(b)));
    }
  }
  SUBCASE("0 -> C -> cone(C) -> C[1] -> 0 is degreewise exact") {
    gen::Rng rng(21);
    for (int t = 0; t < 5; ++t) {
      BinaryComplex b = gen::random_binary_acyclic(rng, 2, 3);
      ConeSequence s = cone_sequence(b);
      for (long i = 0; i <= s.total.top(); ++i) {
        const IntMatrix& inc = s.inclusion[i];
        const IntMatrix& prj = s.projection[i];
        CHECK(IntMatrix(prj * inc).is_zero());
        CHECK(rank_bareiss(inc) == s.sub.rank(i));
        CHECK(rank_bareiss(prj) == s.quotient.rank(i));
        CHECK(s.sub.rank(i) + s.quotient.rank(i) == s.total.rank(i));
      }
      for (int f = 0; f < 2; ++f)
        for (long i = 1; i <= s.total.top(); ++i) {
          CHECK(IntMatrix(s.total.diff(f, i) * s.inclusion[i]) ==
                IntMatrix(s.inclusion[i - 1] * s.sub.diff(f, i)));
          CHECK(IntMatrix(s.quotient.diff(f, i) * s.projection[i]) ==
                IntMatrix(s.projection[i - 1] * s.total.diff(f, i)));
        }
    }
  }
}

TEST_CASE("restrict") {
  gen::Rng rng(5);
  BinaryComplex b = gen::random_binary_acyclic(rng, 2, 2);
  SUBCASE("restrict to full support is the identity") {
    CHECK(restrict(b, b.top()) == b);
    CHECK(restrict(b, b.top() + 3) == b);
  }
  SUBCASE("restrict drops the top") {
    BinaryComplex r = restrict(b, 1);
    CHECK(r.rank(2) == 0);
    CHECK(r.rank(1) == b.rank(1));
    CHECK(r.diff(0, 1) == b.diff(0, 1));
  }
  SUBCASE("quotient of consecutive restrictions is concentrated in one degree") {
    for (long j = 1; j <= b.top(); ++j) {
      BinaryComplex hi = restrict(b, j), lo = restrict(b, j - 1);
      for (long i = 0; i <= j; ++i)
        CHECK(hi.rank(i) - lo.rank(i) == (i == j ? b.rank(j) : 0));
    }
  }
}

TEST_CASE("tot") {
  SUBCASE("bicomplex concentrated in one row is that row") {
    ChainComplex p({2});  // a point
    ChainComplex q = two_term(3);
    Bicomplex b = tensor_bicomplex(p, q);
    ChainComplex t = tot(b);
    CHECK(t.rank(0) == 2);
    CHECK(t.rank(1) == 2);
    CHECK(validate(t).ok());
  }
  SUBCASE("Tot of (Z-2->Z) tensor (Z-2->Z) has ranks 1,2,1") {
    ChainComplex c = two_term(2);
    ChainComplex t = tot(tensor_bicomplex(c, c));
    CHECK(t.rank(0) == 1);
    CHECK(t.rank(1) == 2);
    CHECK(t.rank(2) == 1);
    CHECK(validate(t).ok());
  }
  SUBCASE("acyclic tensor arbitrary is acyclic") {
    gen::Rng rng(13);
    for (int t = 0; t < 6; ++t) {
      ChainComplex a = gen::random_acyclic_complex(rng, 1 + rng.below(2), 3);
      ChainComplex p = gen::random_complex(rng, 2, 2);
      REQUIRE(is_acyclic(a));
      CHECK(is_acyclic(tot(tensor_bicomplex(p, a))));
      CHECK(is_acyclic(tot(tensor_bicomplex(a, p))));
    }
  }
  SUBCASE("rejects sign-invalid bicomplexes") {
    ChainComplex c = two_term(1);
    Bicomplex b = tensor_bicomplex(c, c);
    b.d_ver[{1, 1}] = IntMatrix(1, 1, {{1}});  // break the sign convention
    CHECK_THROWS(tot(b));
  }
}

TEST_CASE("grid tensors validate and stay acyclic") {
  gen::Rng rng(31);
  BinaryComplex p = gen::random_binary_acyclic(rng, 1, 2);
  BinaryComplex q = gen::random_binary_acyclic(rng, 1, 2);
  BinaryMultiComplex g = binary_grid_tensor(p, q);
  CHECK(validate(g).ok());
  CHECK(is_acyclic(g));
  CHECK(g.choice(0).rank({1, 1}) == p.rank(1) * q.rank(1));

  MultiComplex m = grid_tensor(p.chain(0), q.chain(0));
  CHECK(validate(m).ok());
  CHECK(is_acyclic(m));
}

TEST_CASE("contraction of acyclic complexes: d h + h d = 1") {
  gen::Rng rng(77);
  for (int t = 0; t < 10; ++t) {
    ChainComplex c = gen::random_acyclic_complex(rng, 1 + rng.below(3), 3);
    REQUIRE(is_acyclic(c));
    Contraction k = contraction(c);
    for (long i = 0; i <= c.top(); ++i) {
      IntMatrix lhs = IntMatrix(c.diff(i + 1) * k.h[i]);
      if (i >= 1) lhs = IntMatrix(lhs + IntMatrix(k.h[i - 1] * c.diff(i)));
      CHECK(lhs == IntMatrix::identity(c.rank(i)));
    }
  }
}

TEST_CASE("validate closure on constructor outputs") {
  gen::Rng rng(55);
  for (int t = 0; t < 6; ++t) {
    BinaryComplex b = gen::random_binary_acyclic(rng, 1 + rng.below(2), 3);
    CHECK(validate(b).ok());
    CHECK(validate(shift(b, 2)).ok());
    CHECK(validate(cone(b)).ok());
    CHECK(validate(restrict(b, 1)).ok());
    CHECK(validate(BinaryMultiComplex::from_binary(b)).ok());
  }
}
