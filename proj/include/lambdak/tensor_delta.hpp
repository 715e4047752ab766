#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "lambdak/derived.hpp"
#include "lambdak/dold_kan.hpp"

namespace lambdak {

// ---------------------------------------------------------------------------
// simplicial tensor product of chain complexes: the normalized diagonal of
// the bisimplicial tensor. Degree n carries one summand P_i (x) Q_j for
// every pair of surjection labels whose jump sets jointly cover {1..n}.

struct PairLabel {
  GammaLabel a, b;
  bool operator<(const PairLabel& o) const {
    if (!(a == o.a)) return a < o.a;
    return b < o.b;
  }
  bool operator==(const PairLabel& o) const { return a == o.a && b == o.b; }
};

struct TensorLevel {
  std::vector<PairLabel> labels;
  std::vector<long> offsets;
  long total = 0;
};

inline TensorLevel tensor_level(const std::vector<long>& pranks,
                                const std::vector<long>& qranks, int n) {
  TensorLevel lv;
  auto la = gamma_labels(pranks, n);
  auto lb = gamma_labels(qranks, n);
  const uint32_t full = (n == 0) ? 0u : ((1u << n) - 1);
  for (auto& x : la)
    for (auto& y : lb)
      if ((x.mask | y.mask) == full) lv.labels.push_back({x, y});
  std::sort(lv.labels.begin(), lv.labels.end());
  for (auto& l : lv.labels) {
    lv.offsets.push_back(lv.total);
    lv.total += pranks[l.a.p] * qranks[l.b.p];
  }
  return lv;
}

struct TensorDelta {
  ChainComplex out;
  std::vector<TensorLevel> levels;  // 0..M
  long bound = 0;                   // top(p) + top(q)
};

namespace detail {

inline IntMatrix tensor_diff(const ChainComplex& p, const ChainComplex& q,
                             const TensorLevel& src, const TensorLevel& dst, int n) {
  IntMatrix m(dst.total, src.total);
  auto locate = [&](const PairLabel& l) -> long {
    auto it = std::lower_bound(dst.labels.begin(), dst.labels.end(), l);
    if (it == dst.labels.end() || !(*it == l)) return -1;
    return (long)(it - dst.labels.begin());
  };
  for (size_t li = 0; li < src.labels.size(); ++li) {
    const PairLabel& l = src.labels[li];
    for (int i = 0; i <= n; ++i) {
      LabelAction aa = label_face_action(l.a, n, i);
      LabelAction ab = label_face_action(l.b, n, i);
      if (!aa.kind || !ab.kind) continue;
      PairLabel tl{aa.target, ab.target};
      long ti = locate(tl);
      if (ti < 0) continue;
      IntMatrix ca = (aa.kind == 1) ? IntMatrix::identity(p.rank(l.a.p))
                                    : p.diff(l.a.p);
      IntMatrix cb = (ab.kind == 1) ? IntMatrix::identity(q.rank(l.b.p))
                                    : q.diff(l.b.p);
      IntMatrix blk = kron(ca, cb);
      if (blk.is_zero()) continue;
      long ro = dst.offsets[ti], co = src.offsets[li];
      BigInt sgn(i % 2 ? -1 : 1);
      for (long r = 0; r < blk.rows(); ++r)
        for (long c = 0; c < blk.cols(); ++c)
          m(ro + r, co + c) += sgn * blk(r, c);
    }
  }
  return m;
}

}  // namespace detail

inline TensorDelta simplicial_tensor(const ChainComplex& p, const ChainComplex& q) {
  TensorDelta t;
  long kp = p.is_zero() ? 0 : p.top(), kq = q.is_zero() ? 0 : q.top();
  t.bound = kp + kq;
  for (long n = 0; n <= t.bound + 1; ++n)
    t.levels.push_back(tensor_level(p.ranks, q.ranks, (int)n));
  if (t.levels.back().total != 0)
    throw std::logic_error("simplicial_tensor: guard level is nonzero");
  std::vector<long> ranks(t.bound + 1, 0);
  for (long n = 0; n <= t.bound; ++n) ranks[n] = t.levels[n].total;
  t.out = ChainComplex(ranks);
  for (long n = 1; n <= t.bound; ++n)
    t.out.set_diff(n,
                   detail::tensor_diff(p, q, t.levels[n], t.levels[n - 1], (int)n));
  return t;
}

// Functorial action: blockwise Kronecker of the two degreewise maps.
inline std::vector<IntMatrix> simplicial_tensor_map(
    const ChainComplex& psrc, const ChainComplex& qsrc, const TensorDelta& src,
    const ChainComplex& pdst, const ChainComplex& qdst, const TensorDelta& dst,
    const std::vector<IntMatrix>& f, const std::vector<IntMatrix>& g) {
  auto fat = [&](const std::vector<IntMatrix>& h, const ChainComplex& s,
                 const ChainComplex& d, long p) -> IntMatrix {
    if (p >= 0 && p < (long)h.size()) return h[p];
    return IntMatrix::zero(d.rank(p), s.rank(p));
  };
  long N = std::max(src.bound, dst.bound);
  std::vector<IntMatrix> out(N + 1);
  for (long n = 0; n <= N; ++n) {
    long sr = (n < (long)src.levels.size()) ? src.levels[n].total : 0;
    long dr = (n < (long)dst.levels.size()) ? dst.levels[n].total : 0;
    IntMatrix m(dr, sr);
    if (sr && dr) {
      const TensorLevel& sl = src.levels[n];
      const TensorLevel& dl = dst.levels[n];
      for (size_t li = 0; li < sl.labels.size(); ++li) {
        auto it = std::lower_bound(dl.labels.begin(), dl.labels.end(), sl.labels[li]);
        if (it == dl.labels.end() || !(*it == sl.labels[li])) continue;
        long di = (long)(it - dl.labels.begin());
        IntMatrix blk = kron(fat(f, psrc, pdst, sl.labels[li].a.p),
                             fat(g, qsrc, qdst, sl.labels[li].b.p));
        long ro = dl.offsets[di], co = sl.offsets[li];
        for (long r = 0; r < blk.rows(); ++r)
          for (long c = 0; c < blk.cols(); ++c) m(ro + r, co + c) = blk(r, c);
      }
    }
    out[n] = std::move(m);
  }
  return out;
}

// Binary complexes: applied per matched differential family; the graded
// object is shared by construction.
struct BinaryTensorDelta {
  BinaryComplex out;
  TensorDelta fam0, fam1;
};

inline BinaryTensorDelta simplicial_tensor_binary(const BinaryComplex& p,
                                                  const BinaryComplex& q) {
  BinaryTensorDelta r;
  r.fam0 = simplicial_tensor(p.chain(0), q.chain(0));
  r.fam1 = simplicial_tensor(p.chain(1), q.chain(1));
  if (!(r.fam0.out.ranks == r.fam1.out.ranks))
    throw GradedMismatch("simplicial_tensor_binary: family ranks disagree");
  r.out = BinaryComplex::from(r.fam0.out, r.fam1.out);
  return r;
}

// Degreewise module maps (same matrix for both families) transported to the
// binary tensor; covers inclusions, projections and concentrated maps.
inline std::vector<IntMatrix> simplicial_tensor_binary_map(
    const BinaryComplex& psrc, const BinaryComplex& qsrc, const BinaryTensorDelta& src,
    const BinaryComplex& pdst, const BinaryComplex& qdst, const BinaryTensorDelta& dst,
    const std::vector<IntMatrix>& f, const std::vector<IntMatrix>& g) {
  return simplicial_tensor_map(psrc.chain(0), qsrc.chain(0), src.fam0, pdst.chain(0),
                               qdst.chain(0), dst.fam0, f, g);
}

// ---------------------------------------------------------------------------
// recursive simplicial tensor on multicomplexes: normalize the diagonal of
// the level-wise (n-1)-tensor in the outer direction.

MultiComplex simplicial_tensor_n(const MultiComplex& p, const MultiComplex& q);

inline MultiMap simplicial_tensor_n_map(const MultiComplex& psrc,
                                        const MultiComplex& qsrc,
                                        const MultiComplex& pdst,
                                        const MultiComplex& qdst, const MultiMap& f,
                                        const MultiMap& g) {
  if (psrc.dim != 1)
    throw std::runtime_error(
        "simplicial_tensor_n_map: only dimension 1 is supported");
  ChainComplex ps = multi_to_chain(psrc), qs = multi_to_chain(qsrc);
  ChainComplex pd = multi_to_chain(pdst), qd = multi_to_chain(qdst);
  TensorDelta ts = simplicial_tensor(ps, qs), td = simplicial_tensor(pd, qd);
  std::vector<IntMatrix> fv, gv;
  for (long i = 0; i <= std::max(ps.top(), pd.top()); ++i)
    fv.push_back(map_at(psrc, pdst, f, {(int)i}));
  for (long i = 0; i <= std::max(qs.top(), qd.top()); ++i)
    gv.push_back(map_at(qsrc, qdst, g, {(int)i}));
  auto vec = simplicial_tensor_map(ps, qs, ts, pd, qd, td, fv, gv);
  MultiMap out;
  for (long i = 0; i < (long)vec.size(); ++i)
    if (vec[i].rows() && vec[i].cols()) out.comp[{(int)i}] = vec[i];
  return out;
}

inline MultiComplex simplicial_tensor_n(const MultiComplex& p, const MultiComplex& q) {
  if (p.dim != q.dim) throw DimensionMismatch("simplicial_tensor_n");
  if (p.dim == 1)
    return chain_to_multi(
        simplicial_tensor(multi_to_chain(p), multi_to_chain(q)).out);
  int outer = p.dim - 1;
  long kp = std::max(0, p.support_bound(outer));
  long kq = std::max(0, q.support_bound(outer));
  long M = kp + kq + 1;
  std::vector<MultiComplex> ps, qs;
  std::vector<long> ppseudo, qpseudo;
  for (int t = 0; t <= kp; ++t) {
    ps.push_back(slice_outer(p, t));
    ppseudo.push_back(ps.back().ranks.empty() ? 0 : 1);
  }
  for (int t = 0; t <= kq; ++t) {
    qs.push_back(slice_outer(q, t));
    qpseudo.push_back(qs.back().ranks.empty() ? 0 : 1);
  }
  // levels: labeled sums of pairwise inner tensor products
  std::vector<TensorLevel> labels(M + 1);
  std::vector<std::vector<MultiComplex>> pieces(M + 1);
  std::vector<MultiSum> sums(M + 1);
  SimplicialMulti sm;
  sm.M = M;
  for (long m = 0; m <= M; ++m) {
    labels[m] = tensor_level(ppseudo, qpseudo, (int)m);
    for (auto& l : labels[m].labels)
      pieces[m].push_back(simplicial_tensor_n(ps[l.a.p], qs[l.b.p]));
    if (pieces[m].empty()) pieces[m].push_back(MultiComplex(p.dim - 1));
    sums[m] = direct_sum_multi(pieces[m]);
    sm.level.push_back(sums[m].total);
  }
  auto structure_map = [&](long msrc, long mdst, const MonotoneMap& alpha) {
    MultiMap out;
    for (size_t li = 0; li < labels[msrc].labels.size(); ++li) {
      const PairLabel& l = labels[msrc].labels[li];
      // actions of alpha on both sides
      auto act = [&](const GammaLabel& gl, const MultiComplex& x,
                     const std::vector<MultiComplex>& slices, int& kind,
                     GammaLabel& tgt, MultiMap& comp) {
        MonotoneMap c = gl.eta.after(alpha);
        auto [epi, mono] = epi_monic_factor(c);
        if (mono.source == gl.p) {
          kind = 1;
          tgt.p = gl.p;
          tgt.eta = c;
          tgt.mask = jump_mask(c);
          for (auto& [cell, r] : slices[gl.p].ranks)
            comp.comp[cell] = IntMatrix::identity(r);
        } else if (mono.source == gl.p - 1 && mono.values.back() == gl.p - 1) {
          kind = 2;
          tgt.p = gl.p - 1;
          tgt.eta = epi;
          tgt.mask = jump_mask(epi);
          for (auto& [cell, r] : slices[gl.p].ranks) {
            MultiIndex xc = cell;
            xc.push_back(gl.p);
            IntMatrix d = x.d(x.dim - 1, xc);
            if (!d.is_zero()) comp.comp[cell] = d;
          }
        } else {
          kind = 0;
        }
      };
      int ka = 0, kb = 0;
      GammaLabel ta, tb;
      MultiMap ca, cb;
      act(l.a, p, ps, ka, ta, ca);
      act(l.b, q, qs, kb, tb, cb);
      if (!ka || !kb) continue;
      PairLabel tl{ta, tb};
      auto it = std::lower_bound(labels[mdst].labels.begin(),
                                 labels[mdst].labels.end(), tl);
      if (it == labels[mdst].labels.end() || !(*it == tl)) continue;
      long ti = (long)(it - labels[mdst].labels.begin());
      MultiMap blk = simplicial_tensor_n_map(ps[l.a.p], qs[l.b.p], ps[ta.p], qs[tb.p],
                                             ca, cb);
      for (auto& [cell, mat] : blk.comp) {
        if (mat.is_zero()) continue;
        if (!out.comp.count(cell))
          out.comp[cell] = IntMatrix::zero(sums[mdst].total.rank(cell),
                                           sums[msrc].total.rank(cell));
        long ro = sums[mdst].offsets[ti].at(cell);
        long co = sums[msrc].offsets[li].at(cell);
        IntMatrix& acc = out.comp[cell];
        for (long r = 0; r < mat.rows(); ++r)
          for (long c = 0; c < mat.cols(); ++c) acc(ro + r, co + c) += mat(r, c);
      }
    }
    return out;
  };
  sm.face.resize(M + 1);
  sm.degen.resize(M + 1);
  for (long m = 1; m <= M; ++m)
    for (long i = 0; i <= m; ++i)
      sm.face[m].push_back(structure_map(m, m - 1, MonotoneMap::coface((int)m, (int)i)));
  for (long m = 0; m < M; ++m)
    for (long j = 0; j <= m; ++j)
      sm.degen[m].push_back(
          structure_map(m, m + 1, MonotoneMap::codegeneracy((int)m, (int)j)));
  MultiComplex out = normalize_outer(sm, /*sign=*/false);
  for (auto& [c, r] : out.ranks)
    if (c.back() > kp + kq)
      throw std::logic_error("simplicial_tensor_n: guard level is nonzero");
  return out;
}

inline BinaryMultiComplex simplicial_tensor_binary_n(const BinaryMultiComplex& p,
                                                     const BinaryMultiComplex& q) {
  if (p.dim != q.dim) throw DimensionMismatch("simplicial_tensor_binary_n");
  int n = p.dim;
  std::vector<MultiComplex> res;
  for (unsigned mask = 0; mask < (1u << n); ++mask)
    res.push_back(simplicial_tensor_n(p.choice(mask), q.choice(mask)));
  for (unsigned mask = 1; mask < (1u << n); ++mask)
    if (!(res[mask].ranks == res[0].ranks))
      throw GradedMismatch("simplicial_tensor_binary_n: ranks disagree");
  BinaryMultiComplex out(n);
  out.ranks = res[0].ranks;
  for (int k = 0; k < n; ++k)
    for (int fam = 0; fam < 2; ++fam) {
      unsigned mask = fam ? (1u << k) : 0u;
      out.fam[fam][k] = res[mask].diff[k];
      for (unsigned m2 = 0; m2 < (1u << n); ++m2) {
        if (((m2 >> k) & 1u) != (unsigned)fam) continue;
        for (auto& [c, r] : res[0].ranks)
          if (!(res[m2].d(k, c) == res[mask].d(k, c)))
            throw GradedMismatch("simplicial_tensor_binary_n: reassembly mismatch");
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// wedge filtration of Lambda^r along a short exact sequence

struct NotExact : std::runtime_error {
  NotExact(const std::string& m) : std::runtime_error(m) {}
};

// exactness of 0 -> A -> B -> C -> 0 at the module level
inline bool modules_exact(const IntMatrix& inc, const IntMatrix& prj) {
  long a = inc.cols(), b = inc.rows(), c = prj.rows();
  if (prj.cols() != b) return false;
  if (!IntMatrix(prj * inc).is_zero()) return false;
  if (rank_bareiss(inc) != a) return false;
  // projection surjective over Z
  auto fac = snf_invariant_factors(prj);
  if ((long)fac.size() != c) return false;
  for (auto& f : fac)
    if (!f.is_one()) return false;
  if (a + c != b) return false;
  // image of inc = kernel of prj exactly
  IntMatrix K = kernel_basis(prj);
  auto x = solve(K, inc);
  if (!x) return false;
  auto xf = snf_invariant_factors(*x);
  if ((long)xf.size() != a) return false;
  for (auto& f : xf)
    if (!f.is_one()) return false;
  return true;
}

// wedge multiplication Lambda^a (x) Lambda^b -> Lambda^{a+b} on rank n
inline IntMatrix wedge_multiplication(long a, long b, long n) {
  auto sa = basis_index_scheme(FunctorSpec::lambda(a), n);
  auto sb = basis_index_scheme(FunctorSpec::lambda(b), n);
  auto st = basis_index_scheme(FunctorSpec::lambda(a + b), n);
  auto find = [&](const std::vector<int>& t) -> long {
    auto it = std::lower_bound(st.tuples.begin(), st.tuples.end(), t);
    if (it == st.tuples.end() || *it != t) return -1;
    return (long)(it - st.tuples.begin());
  };
  IntMatrix m((long)st.tuples.size(), (long)(sa.tuples.size() * sb.tuples.size()));
  for (size_t i = 0; i < sa.tuples.size(); ++i)
    for (size_t j = 0; j < sb.tuples.size(); ++j) {
      const auto& I = sa.tuples[i];
      const auto& J = sb.tuples[j];
      std::vector<int> u;
      u.reserve(I.size() + J.size());
      u.insert(u.end(), I.begin(), I.end());
      u.insert(u.end(), J.begin(), J.end());
      long inv = 0;
      bool dup = false;
      for (size_t x = 0; x < u.size() && !dup; ++x)
        for (size_t y = x + 1; y < u.size(); ++y) {
          if (u[x] == u[y]) {
            dup = true;
            break;
          }
          if (u[x] > u[y]) ++inv;
        }
      if (dup) continue;
      std::sort(u.begin(), u.end());
      long t = find(u);
      m(t, (long)(i * sb.tuples.size() + j)) = BigInt(inv % 2 ? -1 : 1);
    }
  return m;
}

struct WedgeModuleData {
  std::vector<IntMatrix> stage_basis;  // i = 0..r, columns in Lambda^r(P)
  std::vector<IntMatrix> inclusion;    // i = 1..r: stage i-1 in stage i coords
  std::vector<IntMatrix> quotient;     // i = 1..r: stage i ->> L^{r-i}P' (x) L^i P''
};

inline WedgeModuleData wedge_filtration0(long r, const IntMatrix& iota,
                                         const IntMatrix& pi) {
  if (!modules_exact(iota, pi)) throw NotExact("wedge_filtration0: sequence not exact");
  long nP = iota.rows();
  WedgeModuleData w;
  w.stage_basis.resize(r + 1);
  w.inclusion.resize(r + 1);
  w.quotient.resize(r + 1);
  std::vector<IntMatrix> wmat(r + 1);
  for (long i = 0; i <= r; ++i) {
    IntMatrix li = apply_to_hom(FunctorSpec::lambda(r - i), iota);
    IntMatrix idp = IntMatrix::identity(apply_to_module(FunctorSpec::lambda(i), nP));
    wmat[i] = IntMatrix(wedge_multiplication(r - i, i, nP) * kron(li, idp));
    w.stage_basis[i] = image_basis(wmat[i]);
  }
  for (long i = 1; i <= r; ++i) {
    auto inc = solve(w.stage_basis[i], w.stage_basis[i - 1]);
    if (!inc) throw std::logic_error("wedge_filtration0: filtration not nested");
    w.inclusion[i] = *inc;
    // unique factorization of (1 (x) Lambda^i(pi)) through the wedge image
    IntMatrix u = kron(
        IntMatrix::identity(apply_to_module(FunctorSpec::lambda(r - i), iota.cols())),
        apply_to_hom(FunctorSpec::lambda(i), pi));
    auto wcoord = solve(w.stage_basis[i], wmat[i]);
    if (!wcoord) throw std::logic_error("wedge_filtration0: image coordinates");
    auto q = solve(IntMatrix(wcoord->transpose()), IntMatrix(u.transpose()));
    if (!q) throw std::logic_error("wedge_filtration0: quotient factorization");
    w.quotient[i] = IntMatrix(q->transpose());
  }
  return w;
}

struct WedgeStageSes {
  ChainComplex sub, total, quotient;
  std::vector<IntMatrix> inclusion, projection;
};

struct WedgeFiltration {
  std::vector<ChainComplex> stages;  // i = 0..r: N of the wedge subobject
  std::vector<WedgeStageSes> sess;   // i = 1..r
};

// Level n = 1: the wedge filtration of Lambda^r_1 along a degreewise short
// exact sequence of bounded acyclic complexes.
inline WedgeFiltration wedge_filtration1(long r, const ChainComplex& psub,
                                         const ChainComplex& p,
                                         const ChainComplex& pquot,
                                         const std::vector<IntMatrix>& iota,
                                         const std::vector<IntMatrix>& pi) {
  long t = p.top();
  auto comp_at = [&](const std::vector<IntMatrix>& v, long i, long rows,
                     long cols) -> IntMatrix {
    if (i >= 0 && i < (long)v.size()) return v[i];
    return IntMatrix::zero(rows, cols);
  };
  for (long i = 0; i <= t; ++i)
    if (!modules_exact(comp_at(iota, i, p.rank(i), psub.rank(i)),
                       comp_at(pi, i, pquot.rank(i), p.rank(i))))
      throw NotExact("wedge_filtration1: sequence not degreewise exact at degree " +
                     std::to_string(i));
  for (long i = 1; i <= t; ++i) {
    if (!(IntMatrix(p.diff(i) * comp_at(iota, i, p.rank(i), psub.rank(i))) ==
          IntMatrix(comp_at(iota, i - 1, p.rank(i - 1), psub.rank(i - 1)) *
                    psub.diff(i))))
      throw NotExact("wedge_filtration1: inclusion is not a chain map");
    if (!(IntMatrix(pquot.diff(i) * comp_at(pi, i, pquot.rank(i), p.rank(i))) ==
          IntMatrix(comp_at(pi, i - 1, pquot.rank(i - 1), p.rank(i - 1)) * p.diff(i))))
      throw NotExact("wedge_filtration1: projection is not a chain map");
  }
  long M = r * t + 1;
  GammaResult g = gamma(p, M), gsub = gamma(psub, M), gquot = gamma(pquot, M);
  // levelwise inclusion/projection between the Gamma objects, labelwise
  auto labelwise = [&](const GammaResult& src, const GammaResult& dst,
                       const std::vector<IntMatrix>& comps, const ChainComplex& csrc,
                       const ChainComplex& cdst, long n) -> IntMatrix {
    IntMatrix m(dst.a.rank(n), src.a.rank(n));
    for (size_t li = 0; li < src.labels[n].size(); ++li) {
      const GammaLabel& l = src.labels[n][li];
      auto it = std::lower_bound(dst.labels[n].begin(), dst.labels[n].end(), l);
      if (it == dst.labels[n].end() || !(*it == l)) continue;
      long di = (long)(it - dst.labels[n].begin());
      IntMatrix blk = comp_at(comps, l.p, cdst.rank(l.p), csrc.rank(l.p));
      long ro = dst.offsets[n][di], co = src.offsets[n][li];
      for (long a = 0; a < blk.rows(); ++a)
        for (long b = 0; b < blk.cols(); ++b) m(ro + a, co + b) = blk(a, b);
    }
    return m;
  };
  // module-level wedge data at every level
  std::vector<WedgeModuleData> wd(M + 1);
  std::vector<std::vector<long>> stage_rank(M + 1);
  for (long n = 0; n <= M; ++n) {
    IntMatrix gi = labelwise(gsub, g, iota, psub, p, n);
    IntMatrix gp = labelwise(g, gquot, pi, p, pquot, n);
    wd[n] = wedge_filtration0(r, gi, gp);
    for (long i = 0; i <= r; ++i)
      stage_rank[n].push_back(wd[n].stage_basis[i].cols());
  }
  // each W_i as a simplicial module in its own coordinates
  WedgeFiltration out;
  std::vector<MooreResult> wmoore(r + 1), tmoore(r + 1);
  FunctorSpec lr = FunctorSpec::lambda(r);
  std::vector<std::vector<IntMatrix>> lface(M + 1), ldegen(M + 1);
  for (long n = 1; n <= M; ++n)
    for (long k = 0; k <= n; ++k) lface[n].push_back(apply_to_hom(lr, g.a.face[n][k]));
  for (long n = 0; n < M; ++n)
    for (long k = 0; k <= n; ++k)
      ldegen[n].push_back(apply_to_hom(lr, g.a.degen[n][k]));
  for (long i = 0; i <= r; ++i) {
    SimplicialModule a;
    a.M = M;
    for (long n = 0; n <= M; ++n) a.ranks.push_back(stage_rank[n][i]);
    a.face.resize(M + 1);
    a.degen.resize(M + 1);
    auto op = [&](long nsrc, long ndst, const IntMatrix& big) -> IntMatrix {
      auto x = solve(wd[ndst].stage_basis[i],
                     IntMatrix(big * wd[nsrc].stage_basis[i]));
      if (!x) throw std::logic_error("wedge_filtration1: stage not preserved");
      return *x;
    };
    for (long n = 1; n <= M; ++n)
      for (long k = 0; k <= n; ++k) a.face[n].push_back(op(n, n - 1, lface[n][k]));
    for (long n = 0; n < M; ++n)
      for (long k = 0; k <= n; ++k) a.degen[n].push_back(op(n, n + 1, ldegen[n][k]));
    wmoore[i] = normalized_moore(a);
    out.stages.push_back(wmoore[i].n);
  }
  // quotient targets: Lambda^{r-i}(Gamma P') (x) Lambda^i(Gamma P'')
  for (long i = 1; i <= r; ++i) {
    FunctorSpec fa = FunctorSpec::lambda(r - i), fb = FunctorSpec::lambda(i);
    SimplicialModule a;
    a.M = M;
    for (long n = 0; n <= M; ++n)
      a.ranks.push_back(apply_to_module(fa, gsub.a.rank(n)) *
                        apply_to_module(fb, gquot.a.rank(n)));
    a.face.resize(M + 1);
    a.degen.resize(M + 1);
    for (long n = 1; n <= M; ++n)
      for (long k = 0; k <= n; ++k)
        a.face[n].push_back(kron(apply_to_hom(fa, gsub.a.face[n][k]),
                                 apply_to_hom(fb, gquot.a.face[n][k])));
    for (long n = 0; n < M; ++n)
      for (long k = 0; k <= n; ++k)
        a.degen[n].push_back(kron(apply_to_hom(fa, gsub.a.degen[n][k]),
                                  apply_to_hom(fb, gquot.a.degen[n][k])));
    tmoore[i] = normalized_moore(a);
  }
  long outtop = 0;
  for (long i = 0; i <= r; ++i) outtop = std::max(outtop, out.stages[i].top());
  for (long i = 1; i <= r; ++i) outtop = std::max(outtop, tmoore[i].n.top());
  for (long i = 1; i <= r; ++i) {
    WedgeStageSes s;
    s.sub = out.stages[i - 1];
    s.total = out.stages[i];
    s.quotient = tmoore[i].n;
    for (long n = 0; n <= outtop; ++n) {
      IntMatrix incn = (n <= M) ? wd[n].inclusion[i]
                                : IntMatrix::zero(0, 0);
      IntMatrix qn = (n <= M) ? wd[n].quotient[i] : IntMatrix::zero(0, 0);
      s.inclusion.push_back(
          IntMatrix(wmoore[i].pi[n] * incn * wmoore[i - 1].iota[n]));
      s.projection.push_back(IntMatrix(tmoore[i].pi[n] * qn * wmoore[i].iota[n]));
    }
    out.sess.push_back(std::move(s));
  }
  return out;
}

}  // namespace lambdak
