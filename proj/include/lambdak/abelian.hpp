#pragma once

#include <stdexcept>
#include <vector>

#include "lambdak/complexes.hpp"

namespace lambdak {

// Finitely presented abelian group: coker(rels : Z^m -> Z^gens).
struct PresentedGroup {
  long gens = 0;
  IntMatrix rels;  // gens x m

  static PresentedGroup free(long n) { return {n, IntMatrix::zero(n, 0)}; }
  static PresentedGroup cyclic(long long order) {
    return {1, IntMatrix(1, 1, {{order}})};
  }
};

// Right-exactness of the tensor product on presentations:
// gens multiply, relations are rels_a (x) I  |  I (x) rels_b.
inline PresentedGroup tensor(const PresentedGroup& a, const PresentedGroup& b) {
  PresentedGroup t;
  t.gens = a.gens * b.gens;
  IntMatrix left = kron(a.rels, IntMatrix::identity(b.gens));
  IntMatrix right = kron(IntMatrix::identity(a.gens), b.rels);
  t.rels = IntMatrix::hcat(left, right);
  return t;
}

// Bounded complex of finitely presented abelian groups; differentials act on
// generators and must descend to the quotients.
struct PresentedComplex {
  std::vector<PresentedGroup> obj;  // degree -> group
  std::vector<IntMatrix> d;         // d[i]: gens_i -> gens_{i-1}; d[0] unused

  long top() const { return (long)obj.size() - 1; }
  const PresentedGroup& at(long i) const {
    static const PresentedGroup zero{0, IntMatrix()};
    return (i >= 0 && i < (long)obj.size()) ? obj[i] : zero;
  }
  IntMatrix diff(long i) const {
    if (i >= 1 && i < (long)d.size()) return d[i];
    return IntMatrix::zero(at(i - 1).gens, at(i).gens);
  }
};

inline ValidationReport validate(const PresentedComplex& c) {
  ValidationReport rep;
  for (long i = 1; i <= c.top(); ++i) {
    // d_i maps relations into relations
    if (!solve(c.at(i - 1).rels, IntMatrix(c.diff(i) * c.at(i).rels)))
      rep.violations.push_back("map does not respect relations at degree " +
                               std::to_string(i));
  }
  for (long i = 2; i <= c.top(); ++i)
    if (!solve(c.at(i - 2).rels, IntMatrix(c.diff(i - 1) * c.diff(i))))
      rep.violations.push_back("d.d != 0 modulo relations at degree " +
                               std::to_string(i));
  return rep;
}

// Homology of a complex of presented groups at degree i:
// cycles are generators x with d(x) in the relation lattice; divide by
// boundaries and relations.
inline FgAbGroup homology(const PresentedComplex& c, long i) {
  long g = c.at(i).gens;
  IntMatrix di = c.diff(i);
  IntMatrix rels_below = c.at(i - 1).rels;
  // pairs (x, y) with d x + rels y = 0; the x-parts generate the cycles
  IntMatrix stacked = IntMatrix::hcat(di, rels_below);
  IntMatrix K = kernel_basis(stacked);
  IntMatrix xpart(g, K.cols());
  for (long a = 0; a < g; ++a)
    for (long b = 0; b < K.cols(); ++b) xpart(a, b) = K(a, b);
  IntMatrix cyc = image_basis(xpart);  // lattice basis of the cycle subgroup
  IntMatrix killers = IntMatrix::hcat(c.diff(i + 1), c.at(i).rels);
  auto y = solve(cyc, killers);
  if (!y) throw std::logic_error("presented homology: boundaries escape cycles");
  return cokernel(*y);
}

// Tot of the tensor square grid of a presented complex, with the standard
// sign twist on the vertical differential.
inline PresentedComplex tot_tensor_square(const PresentedComplex& c) {
  long t = c.top();
  long N = 2 * t;
  std::vector<std::vector<PresentedGroup>> cell(t + 1);
  for (long i = 0; i <= t; ++i)
    for (long j = 0; j <= t; ++j) cell[i].push_back(tensor(c.at(i), c.at(j)));
  PresentedComplex out;
  std::vector<std::vector<long>> offs(N + 1);
  for (long n = 0; n <= N; ++n) {
    PresentedGroup tot;
    tot.gens = 0;
    std::vector<IntMatrix> relcols;
    for (long i = 0; i <= std::min(n, t); ++i) {
      long j = n - i;
      if (j < 0 || j > t) {
        offs[n].push_back(-1);
        continue;
      }
      offs[n].push_back(tot.gens);
      tot.gens += cell[i][j].gens;
    }
    // block-diagonal relations
    long rc = 0;
    for (long i = 0; i <= std::min(n, t); ++i) {
      long j = n - i;
      if (j >= 0 && j <= t) rc += cell[i][j].rels.cols();
    }
    tot.rels = IntMatrix(tot.gens, rc);
    long roff = 0, coff = 0;
    for (long i = 0; i <= std::min(n, t); ++i) {
      long j = n - i;
      if (j < 0 || j > t) continue;
      const IntMatrix& r = cell[i][j].rels;
      for (long a = 0; a < r.rows(); ++a)
        for (long b = 0; b < r.cols(); ++b) tot.rels(roff + a, coff + b) = r(a, b);
      roff += r.rows();
      coff += r.cols();
    }
    out.obj.push_back(tot);
  }
  out.d.resize(N + 1);
  for (long n = 1; n <= N; ++n) {
    IntMatrix m(out.at(n - 1).gens, out.at(n).gens);
    for (long i = 0; i <= std::min(n, t); ++i) {
      long j = n - i;
      if (j < 0 || j > t) continue;
      long coff = offs[n][i];
      // vertical: d (x) 1 with sign (-1)^j, to (i-1, j)
      if (i >= 1) {
        BigInt s(j % 2 == 0 ? 1 : -1);
        IntMatrix v = IntMatrix(s * kron(c.diff(i), IntMatrix::identity(c.at(j).gens)));
        long roff = offs[n - 1][i - 1];
        for (long a = 0; a < v.rows(); ++a)
          for (long b = 0; b < v.cols(); ++b) m(roff + a, coff + b) += v(a, b);
      }
      // horizontal: 1 (x) d, to (i, j-1)
      if (j >= 1) {
        IntMatrix h = kron(IntMatrix::identity(c.at(i).gens), c.diff(j));
        long roff = offs[n - 1][i];
        for (long a = 0; a < h.rows(); ++a)
          for (long b = 0; b < h.cols(); ++b) m(roff + a, coff + b) += h(a, b);
      }
    }
    out.d[n] = std::move(m);
  }
  return out;
}

// The torsion example: 0 -> Z --2--> Z -> Z/2 -> 0 in degrees 2,1,0 has
// H_2(Tot(C (x) C)) = Z/2, exhibiting failure of exactness preservation
// outside the split-exact world.
struct CounterexampleReport {
  FgAbGroup h2;
  FgAbGroup h0;
};

inline CounterexampleReport counterexample_h2() {
  PresentedComplex c;
  c.obj = {PresentedGroup::cyclic(2), PresentedGroup::free(1), PresentedGroup::free(1)};
  c.d.resize(3);
  c.d[1] = IntMatrix(1, 1, {{1}});
  c.d[2] = IntMatrix(1, 1, {{2}});
  auto rep = validate(c);
  if (!rep.ok()) throw std::logic_error("counterexample: invalid presented complex");
  PresentedComplex t = tot_tensor_square(c);
  CounterexampleReport out;
  out.h2 = homology(t, 2);
  out.h0 = homology(t, 0);
  return out;
}

}  // namespace lambdak
