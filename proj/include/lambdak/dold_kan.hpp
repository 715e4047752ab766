#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lambdak/complexes.hpp"
#include "lambdak/functors.hpp"

namespace lambdak {

// Order-preserving map [m] -> [n] of pointed finite ordinals.
struct MonotoneMap {
  int source = 0;  // m
  int target = 0;  // n
  std::vector<int> values;  // size m+1, nondecreasing, in [0, n]

  static MonotoneMap identity(int n) {
    MonotoneMap f;
    f.source = f.target = n;
    f.values.resize(n + 1);
    for (int i = 0; i <= n; ++i) f.values[i] = i;
    return f;
  }
  // coface: the injection [n-1] -> [n] missing i
  static MonotoneMap coface(int n, int i) {
    MonotoneMap f;
    f.source = n - 1;
    f.target = n;
    for (int v = 0; v <= n; ++v)
      if (v != i) f.values.push_back(v);
    return f;
  }
  // codegeneracy: the surjection [n+1] -> [n] hitting j twice
  static MonotoneMap codegeneracy(int n, int j) {
    MonotoneMap f;
    f.source = n + 1;
    f.target = n;
    for (int v = 0; v <= n + 1; ++v) f.values.push_back(v <= j ? v : v - 1);
    return f;
  }

  bool is_surjective() const {
    std::vector<bool> hit(target + 1, false);
    for (int v : values) hit[v] = true;
    for (bool b : hit)
      if (!b) return false;
    return true;
  }
  bool is_injective() const {
    for (size_t i = 1; i < values.size(); ++i)
      if (values[i] == values[i - 1]) return false;
    return true;
  }

  // this o g (apply g first)
  MonotoneMap after(const MonotoneMap& g) const {
    if (g.target != source) throw std::invalid_argument("MonotoneMap: mismatch");
    MonotoneMap f;
    f.source = g.source;
    f.target = target;
    for (int v : g.values) f.values.push_back(values[v]);
    return f;
  }

  bool operator==(const MonotoneMap& o) const {
    return source == o.source && target == o.target && values == o.values;
  }
  bool operator<(const MonotoneMap& o) const { return values < o.values; }
};

// Unique factorization as surjection followed by injection.
inline std::pair<MonotoneMap, MonotoneMap> epi_monic_factor(const MonotoneMap& a) {
  std::vector<int> img;
  for (int v : a.values)
    if (img.empty() || img.back() != v) img.push_back(v);
  MonotoneMap mono;
  mono.source = (int)img.size() - 1;
  mono.target = a.target;
  mono.values = img;
  MonotoneMap epi;
  epi.source = a.source;
  epi.target = mono.source;
  for (int v : a.values)
    epi.values.push_back(
        (int)(std::lower_bound(img.begin(), img.end(), v) - img.begin()));
  return {epi, mono};
}

// All order-preserving surjections [n] ->> [p], lexicographically sorted by
// value lists; there are C(n,p) of them.
inline std::vector<MonotoneMap> monotone_surjections(int n, int p) {
  std::vector<MonotoneMap> out;
  if (p > n || p < 0) return out;
  // jump sets E in {1..n} of size p: values rise exactly at positions in E
  std::vector<int> jump(p);
  auto rec = [&](auto&& self, int start, int k) -> void {
    if (k == p) {
      MonotoneMap f;
      f.source = n;
      f.target = p;
      f.values.resize(n + 1);
      int v = 0;
      size_t e = 0;
      for (int i = 0; i <= n; ++i) {
        if (e < (size_t)p && jump[e] == i) {
          ++v;
          ++e;
        }
        f.values[i] = v;
      }
      out.push_back(f);
      return;
    }
    for (int i = start; i <= n; ++i) {
      jump[k] = i;
      self(self, i + 1, k + 1);
    }
  };
  rec(rec, 1, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// Truncated simplicial object in free modules.
struct SimplicialModule {
  long M = 0;                                   // truncation level
  std::vector<long> ranks;                      // 0..M
  std::vector<std::vector<IntMatrix>> face;     // face[n][i], 1 <= n <= M
  std::vector<std::vector<IntMatrix>> degen;    // degen[n][j], 0 <= n <= M-1

  long rank(long n) const { return (n >= 0 && n <= M) ? ranks[n] : 0; }
};

inline ValidationReport check_simplicial_identities(const SimplicialModule& a) {
  ValidationReport rep;
  auto bad = [&](const std::string& what, long n) {
    rep.violations.push_back(what + " fails at level " + std::to_string(n));
  };
  for (long n = 2; n <= a.M; ++n)
    for (long i = 0; i < (long)a.face[n].size(); ++i)
      for (long j = i + 1; j < (long)a.face[n].size(); ++j)
        if (!(IntMatrix(a.face[n - 1][i] * a.face[n][j]) ==
              IntMatrix(a.face[n - 1][j - 1] * a.face[n][i])))
          bad("d_i d_j = d_{j-1} d_i", n);
  for (long n = 0; n + 2 <= a.M; ++n)
    for (long i = 0; i <= n; ++i)
      for (long j = i; j <= n; ++j)
        if (!(IntMatrix(a.degen[n + 1][i] * a.degen[n][j]) ==
              IntMatrix(a.degen[n + 1][j + 1] * a.degen[n][i])))
          bad("s_i s_j = s_{j+1} s_i", n);
  for (long n = 1; n <= a.M; ++n)
    for (long j = 0; j < n; ++j)
      for (long i = 0; i <= n; ++i) {
        IntMatrix lhs = IntMatrix(a.face[n][i] * a.degen[n - 1][j]);
        IntMatrix rhs;
        if (i < j)
          rhs = IntMatrix(a.degen[n - 2 >= 0 ? n - 2 : 0][j - 1] * a.face[n - 1][i]);
        else if (i == j || i == j + 1)
          rhs = IntMatrix::identity(a.rank(n - 1));
        else
          rhs = IntMatrix(a.degen[n - 2][j] * a.face[n - 1][i - 1]);
        if (!(lhs == rhs)) bad("d_i s_j relation", n);
      }
  return rep;
}

// Summand label of Gamma(C)_n: a surjection [n] ->> [p] carrying a copy of
// C_p. Canonical order: p descending, then jump mask ascending.
struct GammaLabel {
  int p = 0;
  uint32_t mask = 0;  // jump positions, bit i-1 for position i
  MonotoneMap eta;

  bool operator<(const GammaLabel& o) const {
    if (p != o.p) return p > o.p;
    return mask < o.mask;
  }
  bool operator==(const GammaLabel& o) const { return p == o.p && mask == o.mask; }
};

inline uint32_t jump_mask(const MonotoneMap& eta) {
  uint32_t m = 0;
  for (size_t i = 1; i < eta.values.size(); ++i)
    if (eta.values[i] != eta.values[i - 1]) m |= 1u << (i - 1);
  return m;
}

inline std::vector<GammaLabel> gamma_labels(const std::vector<long>& ranks, int n) {
  std::vector<GammaLabel> out;
  for (int p = 0; p <= n; ++p) {
    if (p >= (int)ranks.size() || ranks[p] == 0) continue;
    for (auto& eta : monotone_surjections(n, p)) {
      GammaLabel l;
      l.p = p;
      l.eta = eta;
      l.mask = jump_mask(eta);
      out.push_back(l);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct GammaResult {
  SimplicialModule a;
  std::vector<std::vector<GammaLabel>> labels;   // per level
  std::vector<std::vector<long>> offsets;        // per level, per label
};

// The inverse Dold-Kan functor, truncated at level M. The image of a
// simplex-category morphism alpha on the summand labeled eta is determined
// by the epi-monic factorization of eta o alpha: identity when the epi part
// has full degree, the differential when it drops exactly the top value,
// zero otherwise.
inline GammaResult gamma(const ChainComplex& c, long M) {
  GammaResult g;
  g.a.M = M;
  g.labels.resize(M + 1);
  g.offsets.resize(M + 1);
  g.a.ranks.resize(M + 1, 0);
  for (long n = 0; n <= M; ++n) {
    g.labels[n] = gamma_labels(c.ranks, (int)n);
    long off = 0;
    for (auto& l : g.labels[n]) {
      g.offsets[n].push_back(off);
      off += c.rank(l.p);
    }
    g.a.ranks[n] = off;
  }
  auto locate = [&](long n, const GammaLabel& l) -> long {
    auto& ls = g.labels[n];
    auto it = std::lower_bound(ls.begin(), ls.end(), l);
    if (it == ls.end() || !(*it == l)) return -1;
    return (long)(it - ls.begin());
  };
  // the image of alpha: [m] -> [n] as a block matrix Gamma(C)_n -> Gamma(C)_m
  auto gamma_of = [&](const MonotoneMap& alpha) -> IntMatrix {
    long n = alpha.target, m = alpha.source;
    IntMatrix out(g.a.rank(m), g.a.rank(n));
    for (size_t li = 0; li < g.labels[n].size(); ++li) {
      const GammaLabel& l = g.labels[n][li];
      auto [epi, mono] = epi_monic_factor(l.eta.after(alpha));
      long q = mono.source;
      IntMatrix blk;
      int tp = 0;
      if (q == l.p) {
        blk = IntMatrix::identity(c.rank(l.p));
        tp = l.p;
      } else if (q == l.p - 1 && mono.values.back() == l.p - 1) {
        // mono misses exactly the top value p
        blk = c.diff(l.p);
        tp = l.p - 1;
      } else {
        continue;
      }
      GammaLabel tl;
      tl.p = tp;
      tl.eta = epi;
      tl.mask = jump_mask(epi);
      long ti = locate(m, tl);
      if (ti < 0) continue;  // zero-rank target summand
      long roff = g.offsets[m][ti], coff = g.offsets[n][li];
      for (long i = 0; i < blk.rows(); ++i)
        for (long j = 0; j < blk.cols(); ++j) out(roff + i, coff + j) = blk(i, j);
    }
    return out;
  };
  g.a.face.resize(M + 1);
  g.a.degen.resize(M + 1);
  for (long n = 1; n <= M; ++n)
    for (long i = 0; i <= n; ++i)
      g.a.face[n].push_back(gamma_of(MonotoneMap::coface((int)n, (int)i)));
  for (long n = 0; n < M; ++n)
    for (long j = 0; j <= n; ++j)
      g.a.degen[n].push_back(gamma_of(MonotoneMap::codegeneracy((int)n, (int)j)));
  return g;
}

// Associated chain complex with the alternating-sum differential.
inline ChainComplex associated_chain(const SimplicialModule& a) {
  ChainComplex c(a.ranks);
  for (long n = 1; n <= a.M; ++n) {
    IntMatrix d(a.rank(n - 1), a.rank(n));
    for (long i = 0; i <= n; ++i) {
      if (i % 2 == 0)
        d = IntMatrix(d + a.face[n][i]);
      else
        d = IntMatrix(d - a.face[n][i]);
    }
    c.set_diff(n, d);
  }
  return c;
}

struct DegenerateSubcomplex {
  std::vector<IntMatrix> inclusion;  // basis of D_n inside A_n, per level
  ChainComplex complex;              // induced differential in those bases
};

struct MooreResult {
  ChainComplex n;                    // normalized complex
  std::vector<IntMatrix> iota;       // N_n -> A_n
  std::vector<IntMatrix> pi;         // A_n -> N_n, projection along D
  DegenerateSubcomplex degenerate;
};

// Basis of sum(Im sigma_j) at each level; image lattice via snf.
inline std::vector<IntMatrix> degenerate_inclusions(const SimplicialModule& a) {
  std::vector<IntMatrix> inc(a.M + 1);
  inc[0] = IntMatrix::zero(a.rank(0), 0);
  for (long n = 1; n <= a.M; ++n) {
    IntMatrix cat(a.rank(n), 0);
    for (long j = 0; j < (long)a.degen[n - 1].size(); ++j)
      cat = IntMatrix::hcat(cat, a.degen[n - 1][j]);
    inc[n] = image_basis(cat);
  }
  return inc;
}

inline DegenerateSubcomplex degenerate_subcomplex(const SimplicialModule& a) {
  DegenerateSubcomplex out;
  out.inclusion = degenerate_inclusions(a);
  ChainComplex ca = associated_chain(a);
  std::vector<long> ranks;
  for (auto& m : out.inclusion) ranks.push_back(m.cols());
  out.complex = ChainComplex(ranks);
  for (long n = 1; n <= a.M; ++n) {
    // D is a subcomplex: express d(D_n) in the degree n-1 basis
    auto x = solve(out.inclusion[n - 1], IntMatrix(ca.diff(n) * out.inclusion[n]));
    if (!x)
      throw std::logic_error("degenerate_subcomplex: not closed under the differential");
    out.complex.set_diff(n, *x);
  }
  return out;
}

// Normalized Moore complex as the quotient by the degenerate subcomplex,
// realized as its complement summand via the Smith splitting.
inline MooreResult normalized_moore(const SimplicialModule& a) {
  MooreResult out;
  auto dinc = degenerate_inclusions(a);
  ChainComplex ca = associated_chain(a);
  std::vector<long> ranks(a.M + 1);
  out.iota.resize(a.M + 1);
  out.pi.resize(a.M + 1);
  for (long n = 0; n <= a.M; ++n) {
    auto comp = split_complement(dinc[n]);  // throws NotASummand when it fails
    out.iota[n] = comp.incl_n;
    out.pi[n] = comp.proj_n;
    ranks[n] = comp.incl_n.cols();
  }
  out.n = ChainComplex(ranks);
  for (long n = 1; n <= a.M; ++n)
    out.n.set_diff(n, IntMatrix(out.pi[n - 1] * ca.diff(n) * out.iota[n]));
  out.degenerate = degenerate_subcomplex(a);
  return out;
}

// Objectwise application of a polynomial functor to a simplicial module.
inline SimplicialModule apply_functor_simplicial(const FunctorSpec& f,
                                                 const SimplicialModule& a) {
  SimplicialModule b;
  b.M = a.M;
  for (long r : a.ranks) b.ranks.push_back(apply_to_module(f, r));
  b.face.resize(a.M + 1);
  b.degen.resize(a.M + 1);
  for (long n = 1; n <= a.M; ++n)
    for (auto& m : a.face[n]) b.face[n].push_back(apply_to_hom(f, m));
  for (long n = 0; n < a.M; ++n)
    for (auto& m : a.degen[n]) b.degen[n].push_back(apply_to_hom(f, m));
  auto rep = check_simplicial_identities(b);
  if (!rep.ok())
    throw std::logic_error("apply_functor_simplicial: identities broke: " +
                           rep.violations.front());
  return b;
}

// Sign fixing the round trip: NGamma(C) differs from C by (-1)^n on the
// degree-n differential; this scalar conjugates it away.
inline BigInt moore_sign(long n) { return BigInt(((n * (n + 1) / 2) % 2) ? -1 : 1); }

}  // namespace lambdak
