#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <vector>

#include "lambdak/functors.hpp"
#include "lambdak/symfunc.hpp"

namespace lambdak {

struct DegreeMismatch : std::runtime_error {
  DegreeMismatch(const std::string& m) : std::runtime_error(m) {}
};

// The algebra of symmetric degree-d tensors over Mat(n,Z). Basis: multisets
// of size d over the matrix units, as weakly increasing index tuples.
struct SchurAlgebra {
  int n = 1;
  long d = 1;
  std::vector<std::vector<int>> basis;  // weakly increasing tuples of unit ids
  // mult[i][j]: list of (basis index, coefficient)
  std::vector<std::vector<std::vector<std::pair<long, BigInt>>>> mult;
  std::vector<BigInt> unit;  // coefficients of the identity element

  long rank() const { return (long)basis.size(); }
  long index_of(const std::vector<int>& tuple) const {
    auto it = std::lower_bound(basis.begin(), basis.end(), tuple);
    if (it == basis.end() || *it != tuple) return -1;
    return (long)(it - basis.begin());
  }

  std::vector<BigInt> multiply(const std::vector<BigInt>& x,
                               const std::vector<BigInt>& y) const {
    std::vector<BigInt> out(rank(), BigInt(0));
    for (long i = 0; i < rank(); ++i) {
      if (x[i].is_zero()) continue;
      for (long j = 0; j < rank(); ++j) {
        if (y[j].is_zero()) continue;
        for (auto& [k, c] : mult[i][j]) out[k] += x[i] * y[j] * c;
      }
    }
    return out;
  }
};

namespace detail {

inline std::vector<std::vector<int>> distinct_permutations(std::vector<int> t) {
  std::sort(t.begin(), t.end());
  std::vector<std::vector<int>> out;
  do {
    out.push_back(t);
  } while (std::next_permutation(t.begin(), t.end()));
  return out;
}

}  // namespace detail

// Structure constants from slotwise unit multiplication:
// E_{ij} E_{kl} = [j = k] E_{il} on each tensor factor.
inline SchurAlgebra schur_algebra(int n, long d) {
  if (n < 1 || d < 1) throw std::invalid_argument("schur_algebra: n, d >= 1");
  SchurAlgebra a;
  a.n = n;
  a.d = d;
  long units = (long)n * n;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if ((long)cur.size() == d) {
      a.basis.push_back(cur);
      return;
    }
    for (int u = start; u < (int)units; ++u) {
      cur.push_back(u);
      rec(u);
      cur.pop_back();
    }
  };
  rec(0);
  std::sort(a.basis.begin(), a.basis.end());
  auto urow = [&](int unit) { return unit / n; };
  auto ucol = [&](int unit) { return unit % n; };
  a.mult.assign(a.rank(),
                std::vector<std::vector<std::pair<long, BigInt>>>(a.rank()));
  for (long i = 0; i < a.rank(); ++i) {
    auto pi = detail::distinct_permutations(a.basis[i]);
    for (long j = 0; j < a.rank(); ++j) {
      auto pj = detail::distinct_permutations(a.basis[j]);
      std::map<long, BigInt> acc;
      std::vector<int> prod(d);
      for (auto& s : pi)
        for (auto& t : pj) {
          bool dead = false;
          for (long k = 0; k < d && !dead; ++k) {
            if (ucol(s[k]) != urow(t[k]))
              dead = true;
            else
              prod[k] = urow(s[k]) * n + ucol(t[k]);
          }
          if (dead) continue;
          // count only the sorted representative of each orbit
          if (std::is_sorted(prod.begin(), prod.end())) {
            long idx = a.index_of(prod);
            acc[idx] += BigInt(1);
          }
        }
      for (auto& [k, c] : acc)
        if (!c.is_zero()) a.mult[i][j].push_back({k, c});
    }
  }
  // unit: the sum of all multisets of diagonal units, coefficient 1
  a.unit.assign(a.rank(), BigInt(0));
  for (long i = 0; i < a.rank(); ++i) {
    bool diag = true;
    for (int u : a.basis[i])
      if (urow(u) != ucol(u)) diag = false;
    if (diag) a.unit[i] = BigInt(1);
  }
  return a;
}

// Left module structure on F(Z^n) for a homogeneous functor of degree d:
// the action of a symmetrized tensor of matrix units is the matching
// multi-homogeneous coefficient of F applied to a generic combination.
struct SchurModule {
  SchurAlgebra algebra;
  long module_rank = 0;
  std::vector<IntMatrix> action;  // per basis element of the algebra
};

inline SchurModule truncate_to_schur_module(const FunctorSpec& f, int n) {
  auto hd = homogeneous_degree(f);
  if (!hd || *hd < 1)
    throw DegreeMismatch("truncate_to_schur_module: functor is not homogeneous");
  long d = *hd;
  if ((long)n < d)
    throw std::invalid_argument("truncate_to_schur_module: requires n >= d");
  SchurModule m;
  m.algebra = schur_algebra(n, d);
  m.module_rank = apply_to_module(f, n);
  for (auto& tuple : m.algebra.basis) {
    // distinct units with multiplicities
    std::vector<int> units;
    std::vector<int> mults;
    for (int u : tuple) {
      if (units.empty() || units.back() != u) {
        units.push_back(u);
        mults.push_back(1);
      } else {
        ++mults.back();
      }
    }
    MatrixT<MultiPoly> generic(n, n);
    for (size_t k = 0; k < units.size(); ++k)
      generic(units[k] / n, units[k] % n) += MultiPoly::variable((int)k);
    MatrixT<MultiPoly> big = apply_to_hom_t<MultiPoly>(f, generic);
    MultiPoly::Exp want(units.size());
    for (size_t k = 0; k < units.size(); ++k) want[k] = mults[k];
    IntMatrix act(m.module_rank, m.module_rank);
    for (long i = 0; i < m.module_rank; ++i)
      for (long j = 0; j < m.module_rank; ++j) act(i, j) = big(i, j).coeff(want);
    m.action.push_back(std::move(act));
  }
  return m;
}

inline IntMatrix schur_act(const SchurModule& m, const std::vector<BigInt>& coeff) {
  IntMatrix out(m.module_rank, m.module_rank);
  for (long i = 0; i < m.algebra.rank(); ++i)
    if (!coeff[i].is_zero()) out = IntMatrix(out + IntMatrix(coeff[i] * m.action[i]));
  return out;
}

// torus weights: sum over multisets of diagonal units of x^mu * action
inline MatrixT<MultiPoly> schur_torus_action(const SchurModule& m) {
  const SchurAlgebra& a = m.algebra;
  MatrixT<MultiPoly> out(m.module_rank, m.module_rank);
  for (long i = 0; i < a.rank(); ++i) {
    bool diag = true;
    MultiPoly mono(1);
    for (int u : a.basis[i]) {
      if (u / a.n != u % a.n) {
        diag = false;
        break;
      }
      mono *= MultiPoly::variable(u / a.n);
    }
    if (!diag) continue;
    for (long r = 0; r < m.module_rank; ++r)
      for (long c = 0; c < m.module_rank; ++c)
        if (!m.action[i](r, c).is_zero())
          out(r, c) += mono * MultiPoly(m.action[i](r, c));
  }
  return out;
}

}  // namespace lambdak
