// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "generators.hpp"
#include "lambdak/abelian.hpp"
#include "lambdak/cli.hpp"
#include "lambdak/derived.hpp"
#include "lambdak/schur.hpp"
#include "lambdak/symfunc.hpp"
#include "lambdak/tensor_delta.hpp"
#include "lambdak/witness.hpp"

using namespace lambdak;

namespace {

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double s() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void report(int num, const std::string& what, bool ok, double secs,
            double budget = 0) {
  bool in_budget = (budget <= 0) || (secs < budget);
  bool pass = ok && in_budget;
  if (!pass) ++failures;
  std::printf("[%s] criterion %2d: %s (%.2f s%s)\n", pass ? "PASS" : "FAIL", num,
              what.c_str(), secs,
              budget > 0 ? (", budget " + std::to_string((int)budget) + " s").c_str()
                         : "");
  std::fflush(stdout);
}

bool is_unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  if (m.rows() == 0) return true;
  auto d = snf(m);
  if (d.rank != m.rows()) return false;
  for (auto& f : d.invariant_factors)
    if (!f.is_one()) return false;
  return true;
}

ChainComplex unit_two_term(long long x) {
  ChainComplex c({1, 1});
  c.set_diff(1, IntMatrix(1, 1, {{x}}));
  return c;
}

void criterion1() {
  Timer t;
  bool ok = true;
  for (long r : {2, 3, 4})
    for (long long x : {2, 3, 5}) {
      Derived1 d = induced_F1(FunctorSpec::lambda(r), unit_two_term(x));
      if (d.guard_rank != 0) ok = false;
      for (long n = 0; n <= d.bound; ++n)
        if (d.out.rank(n) != ((n == r || n == r - 1) ? 1 : 0)) ok = false;
      if (!(d.out.diff(r) == IntMatrix(1, 1, {{x}}))) ok = false;
    }
  report(1, "exterior powers of unit two-term complexes land exactly", ok, t.s(), 5);
}

void criterion2() {
  Timer t;
  auto ce = counterexample_h2();
  bool ok = ce.h2.free_rank == 0 && ce.h2.torsion.size() == 1 &&
            ce.h2.torsion[0] == BigInt(2);
  report(2, "total tensor square of the torsion sequence has H2 = Z/2", ok, t.s(), 1);
}

void criterion3() {
  Timer t;
  gen::Rng rng(1003);
  bool ok = true;
  for (int it = 0; it < 50 && ok; ++it) {
    ChainComplex c = gen::random_complex(rng, 4, 4);
    long M = c.top() + 1;
    GammaResult g = gamma(c, M);
    MooreResult m = normalized_moore(g.a);
    for (long n = 0; n <= M; ++n)
      if (m.n.rank(n) != c.rank(n)) ok = false;
    if (!ok) break;
    std::vector<IntMatrix> phi(M + 1);
    for (long n = 0; n <= M; ++n) {
      IntMatrix inc(g.a.rank(n), c.rank(n));
      for (size_t li = 0; li < g.labels[n].size(); ++li)
        if (g.labels[n][li].p == (int)n) {
          for (long k = 0; k < c.rank(n); ++k)
            inc(g.offsets[n][li] + k, k) = BigInt(1);
          break;
        }
      phi[n] = IntMatrix(moore_sign(n) * IntMatrix(m.pi[n] * inc));
      if (c.rank(n) > 0 && !is_unimodular(phi[n])) ok = false;
    }
    for (long n = 1; n <= M && ok; ++n)
      if (!(IntMatrix(m.n.diff(n) * phi[n]) == IntMatrix(phi[n - 1] * c.diff(n))))
        ok = false;
  }
  report(3, "50 seeded normalization roundtrips recover the complex exactly", ok,
         t.s(), 30);
}

void criterion4() {
  Timer t;
  gen::Rng rng(1004);
  std::vector<FunctorSpec> specs = {FunctorSpec::lambda(2), FunctorSpec::lambda(3),
                                    FunctorSpec::sym(2)};
  bool ok = true;
  for (int it = 0; it < 50 && ok; ++it) {
    const FunctorSpec& f = specs[it % specs.size()];
    ChainComplex c = gen::random_complex(rng, 4, 4);
    long l = c.is_zero() ? 0 : c.top();
    long bound = f.degree() * l;
    auto ranks = induced_F1_ranks(f, c, bound + 1);
    if (ranks[bound + 1] != 0) ok = false;
    long top = 0;
    for (long n = 0; n <= bound; ++n)
      if (ranks[n]) top = n;
    if (top > bound) ok = false;
  }
  report(4, "50 seeded length bounds hold with vanishing guard degree", ok, t.s());
}

void criterion5() {
  Timer t;
  gen::Rng rng(1005);
  bool ok = true;
  for (int it = 0; it < 100 && ok; ++it) {
    long r = 1 + (it % 3);
    long len, max_rank;
    if (r <= 2) {
      len = 1 + rng.below(3);  // up to 3
      max_rank = 3;
    } else {
      len = 1 + rng.below(2);  // up to 2
      max_rank = (len == 2) ? 2 : 3;
    }
    ChainComplex c = gen::random_acyclic_complex(rng, len, max_rank);
    if (!is_acyclic(c)) {
      ok = false;
      break;
    }
    Derived1 d = induced_F1(FunctorSpec::lambda(r), c);
    if (d.guard_rank != 0 || !is_acyclic(d.out)) ok = false;
  }
  report(5, "100 seeded acyclic complexes stay acyclic under exterior powers", ok,
         t.s(), 120);
}

void criterion6() {
  Timer t;
  gen::Rng rng(1006);
  bool ok = true;
  for (int it = 0; it < 25 && ok; ++it) {
    // lengths exactly 2 so that the k*l bound applies; ranks <= 2
    ChainComplex p = gen::random_complex(rng, 2, 2);
    ChainComplex q = gen::random_complex(rng, 2, 2);
    if (p.top() < 2) p = gen::random_acyclic_complex(rng, 2, 2);
    if (q.top() < 2) q = gen::random_acyclic_complex(rng, 2, 2);
    long k = p.top(), l = q.top();
    TensorDelta d = simplicial_tensor(p, q);
    ChainComplex tt = tot(tensor_bicomplex(p, q));
    for (long i = 0; i <= std::max(d.out.top(), tt.top()); ++i)
      if (!(homology(d.out, i) == homology(tt, i))) ok = false;
    if (d.out.top() > k * l) ok = false;
  }
  report(6, "25 seeded simplicial tensors match the total complex in homology", ok,
         t.s());
}

void criterion7() {
  Timer t;
  gen::Rng rng(1007);
  bool ok = true;
  for (int it = 0; it < 10 && ok; ++it) {
    BinaryComplex b = gen::random_binary_acyclic(rng, 1 + rng.below(2), 2);
    WitnessChain ch = shift_witness(b, 1 + (it % 2));
    if (!validate_chain(ch).ok) ok = false;
  }
  report(7, "10 seeded shift certificates replay and close the ledger", ok, t.s());
}

void criterion8() {
  Timer t;
  gen::Rng rng(1008);
  bool ok = true;
  for (int it = 0; it < 10 && ok; ++it) {
    BinaryComplex p = gen::random_binary_acyclic(rng, 1 + rng.below(2), 2);
    BinaryComplex q = gen::random_binary_acyclic(rng, 1 + rng.below(2), 2);
    WitnessChain ch = product_vanishing_witness(p, q);
    if (!validate_chain(ch).ok) ok = false;
  }
  report(8, "10 seeded product-vanishing certificates replay in full", ok, t.s());
}

void criterion9() {
  Timer t;
  bool ok = true;
  for (long r = 1; r <= 4; ++r)
    if (!pr_substitution_identity(r)) ok = false;
  if (!lambda_t_multiplicative(4)) ok = false;
  report(9, "product-law polynomials: substitution identity and t-series", ok, t.s());
}

void criterion10() {
  Timer t;
  bool ok = true;
  MultiPoly expect;
  expect.add_term({1, 0, 1}, BigInt(1));
  expect.add_term({0, 0, 0, 1}, BigInt(-1));
  if (!(universal_Prs(2, 2) == expect)) ok = false;
  for (auto [r, s] : std::vector<std::pair<long, long>>{{2, 2}, {2, 3}, {3, 2}})
    if (!verify_axiom3_char(r, s)) ok = false;
  report(10, "composition-law polynomials match functor characters", ok, t.s(), 60);
}

void criterion11() {
  Timer t;
  bool ok = schur_algebra(2, 2).rank() == 10;
  for (auto f : {FunctorSpec::lambda(2), FunctorSpec::sym(2),
                 FunctorSpec::tensor_power(2)}) {
    SchurModule m = truncate_to_schur_module(f, 2);
    if (!(schur_act(m, m.algebra.unit) == IntMatrix::identity(m.module_rank)))
      ok = false;
    for (long i = 0; i < m.algebra.rank() && ok; ++i)
      for (long j = 0; j < m.algebra.rank() && ok; ++j) {
        std::vector<BigInt> ei(m.algebra.rank(), BigInt(0)), ej = ei;
        ei[i] = BigInt(1);
        ej[j] = BigInt(1);
        if (!(IntMatrix(m.action[i] * m.action[j]) ==
              schur_act(m, m.algebra.multiply(ei, ej))))
          ok = false;
      }
    MatrixT<MultiPoly> torus = schur_torus_action(m);
    MatrixT<MultiPoly> diag(2, 2);
    diag(0, 0) = MultiPoly::variable(0);
    diag(1, 1) = MultiPoly::variable(1);
    if (!(torus == apply_to_hom_t<MultiPoly>(f, diag))) ok = false;
    MultiPoly tr;
    for (long i = 0; i < torus.rows(); ++i) tr += torus(i, i);
    if (!(tr == char_functor(f, 2).p)) ok = false;
  }
  report(11, "degree-2 symmetric-tensor algebra: rank 10, modules, weights", ok,
         t.s());
}

void criterion12() {
  Timer t;
  gen::Rng rng(1012);
  bool ok = true;
  BinaryComplex p = gen::random_binary_acyclic(rng, 1, 2);
  BinaryComplex q = gen::random_binary_acyclic(rng, 1, 2);
  BinaryMultiComplex g = binary_grid_tensor(p, q);
  if (!is_acyclic(g)) ok = false;
  auto a = binary_lambda(2, 2, g, {2, 1});
  auto b = binary_lambda(2, 2, g, {1, 2});
  if (!(a.out.ranks == b.out.ranks)) ok = false;
  if (!validate(a.out).ok() || !validate(b.out).ok()) ok = false;
  if (!is_acyclic(a.out) || !is_acyclic(b.out)) ok = false;
  report(12, "dimension-2 binary exterior square is order-independent and acyclic",
         ok, t.s());
}

void criterion13() {
  Timer t;
  gen::Rng rng(1013);
  bool ok = true;
  // idempotent splittings preserve acyclicity, 20 seeded cases
  for (int it = 0; it < 20 && ok; ++it) {
    ChainComplex a = gen::random_acyclic_complex(rng, 1 + rng.below(2), 2);
    ChainComplex b = gen::random_acyclic_complex(rng, 1 + rng.below(2), 2);
    long top = std::max(a.top(), b.top());
    std::vector<long> ranks;
    for (long i = 0; i <= top; ++i) ranks.push_back(a.rank(i) + b.rank(i));
    ChainComplex c(ranks);
    for (long i = 1; i <= top; ++i) c.set_diff(i, direct_sum_mat(a.diff(i), b.diff(i)));
    auto h = gen::random_chain_map_to_self(rng, c);
    std::vector<IntMatrix> e;
    for (long i = 0; i <= top; ++i) {
      IntMatrix pr(c.rank(i), c.rank(i));
      for (long x = 0; x < a.rank(i); ++x) pr(x, x) = BigInt(1);
      IntMatrix one = IntMatrix::identity(c.rank(i));
      IntMatrix npart = IntMatrix(pr * h[i] * IntMatrix(one - pr));
      e.push_back(IntMatrix(IntMatrix(one + npart) * pr * IntMatrix(one - npart)));
    }
    auto s = split_chain_idempotent(e, c);
    if (!is_acyclic(s.kernel)) ok = false;
  }
  // the splice-by-splice splitting, 10 seeded cases
  for (int it = 0; it < 10 && ok; ++it) {
    ChainComplex a = gen::random_acyclic_complex(rng, 2, 2);
    ChainComplex b = gen::random_acyclic_complex(rng, 2, 2);
    long top = std::max(a.top(), b.top());
    std::vector<long> ranks;
    for (long i = 0; i <= top; ++i) ranks.push_back(a.rank(i) + b.rank(i));
    ChainComplex q(ranks);
    for (long i = 1; i <= top; ++i) q.set_diff(i, direct_sum_mat(a.diff(i), b.diff(i)));
    std::vector<IntMatrix> inc;
    for (long i = 0; i <= top; ++i) {
      IntMatrix ii(q.rank(i), a.rank(i));
      for (long x = 0; x < a.rank(i); ++x) ii(x, x) = BigInt(1);
      inc.push_back(ii);
    }
    auto s = split_acyclic_mono(inc, a, q, split_summand(inc[0]));
    for (long i = 0; i <= top; ++i)
      if (!(IntMatrix(s[i] * inc[i]) == IntMatrix::identity(a.rank(i)))) ok = false;
  }
  if (!binary_nonsplit_check()) ok = false;
  report(13, "idempotent and monomorphism splittings, and the non-splitting", ok,
         t.s());
}

}  // namespace

int main() {
  Timer total;
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  criterion12();
  criterion13();
  std::printf("%d/13 criteria passed in %.1f s\n", 13 - failures, total.s());
  return failures == 0 ? 0 : 1;
}
