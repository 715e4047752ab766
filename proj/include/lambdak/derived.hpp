#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lambdak/dold_kan.hpp"
#include "lambdak/functors.hpp"

namespace lambdak {

struct GradedMismatch : std::runtime_error {
  GradedMismatch(const std::string& m) : std::runtime_error(m) {}
};
struct DimensionMismatch : std::runtime_error {
  DimensionMismatch(const std::string& m) : std::runtime_error(m) {}
};

// ---------------------------------------------------------------------------
// Dimension-1 engine. The degree-n piece of the normalized complex of
// F(Gamma(C)) is the direct sum, over sets S of distinct summand labels
// whose jump sets cover {1..n}, of the S-supported component of F applied
// to the labeled sum. Degenerate labels never enter a covering set, which
// is what keeps the computation within the d*length bound.

struct DerivedBlock {
  std::vector<int> label_idx;   // ascending indices into the level's labels
  std::vector<long> parts;      // ranks of the labeled summands
  std::vector<long> ordinals;   // fully-supported basis ordinals of F(sum)
  long offset = 0;
};

struct DerivedLevel {
  std::vector<GammaLabel> labels;
  std::vector<DerivedBlock> blocks;
  long total = 0;
};

inline DerivedLevel derived_level(const FunctorSpec& f, const std::vector<long>& cranks,
                                  int n) {
  if (n >= 31) throw std::invalid_argument("derived_level: degree too large");
  DerivedLevel lv;
  lv.labels = gamma_labels(cranks, n);
  const long d = f.degree();
  const uint32_t full = (n == 0) ? 0u : ((1u << n) - 1);
  long maxp = 0;
  for (size_t p = 0; p < cranks.size(); ++p)
    if (cranks[p] > 0) maxp = (long)p;

  std::vector<int> cur;
  auto add_block = [&]() {
    DerivedBlock b;
    b.label_idx = cur;
    std::vector<uint32_t> units;
    for (size_t k = 0; k < cur.size(); ++k) {
      b.parts.push_back(cranks[lv.labels[cur[k]].p]);
      for (long t = 0; t < b.parts.back(); ++t) units.push_back(1u << k);
    }
    auto sups = basis_supports(f, units);
    uint32_t want = (cur.size() >= 32) ? 0 : ((1u << cur.size()) - 1);
    for (long i = 0; i < (long)sups.size(); ++i)
      if (sups[i] == want) b.ordinals.push_back(i);
    if (!b.ordinals.empty()) {
      b.offset = lv.total;
      lv.total += (long)b.ordinals.size();
      lv.blocks.push_back(std::move(b));
    }
  };
  std::function<void(int, uint32_t)> rec = [&](int start, uint32_t covered) {
    if (covered == full && !cur.empty()) add_block();
    if ((long)cur.size() == d) return;
    for (int i = start; i < (int)lv.labels.size(); ++i) {
      uint32_t after = covered | lv.labels[i].mask;
      long uncovered = __builtin_popcount(full & ~after);
      if ((d - (long)cur.size() - 1) * maxp < uncovered) continue;
      cur.push_back(i);
      rec(i + 1, after);
      cur.pop_back();
      if (lv.blocks.size() > 500000)
        throw std::runtime_error("derived_level: block explosion");
    }
  };
  if (d >= 1) rec(0, 0);
  return lv;
}

// Action of the i-th coface on a summand label. kind: 0 dead, 1 identity,
// 2 the differential C_p -> C_{p-1}.
struct LabelAction {
  int kind = 0;
  GammaLabel target;
};

inline LabelAction label_face_action(const GammaLabel& l, int n, int i) {
  MonotoneMap comp = l.eta.after(MonotoneMap::coface(n, i));
  auto [epi, mono] = epi_monic_factor(comp);
  if (mono.source == l.p) {
    GammaLabel t;
    t.p = l.p;
    t.eta = comp;
    t.mask = jump_mask(comp);
    return {1, t};
  }
  if (mono.source == l.p - 1 && mono.values.back() == l.p - 1) {
    GammaLabel t;
    t.p = l.p - 1;
    t.eta = epi;
    t.mask = jump_mask(epi);
    return {2, t};
  }
  return {0, {}};
}

struct Derived1 {
  ChainComplex out;
  std::vector<DerivedLevel> levels;  // 0..bound+1 (the last is the guard)
  long bound = 0;
  long guard_rank = 0;
};

namespace detail {

inline IntMatrix derived1_diff(const FunctorSpec& f, const ChainComplex& c,
                               const DerivedLevel& src, const DerivedLevel& dst,
                               int n) {
  IntMatrix m(dst.total, src.total);
  for (const auto& b : src.blocks) {
    for (int i = 0; i <= n; ++i) {
      std::vector<LabelAction> acts;
      for (int idx : b.label_idx)
        acts.push_back(label_face_action(src.labels[idx], n, i));
      // distinct live target labels, canonically sorted
      std::vector<GammaLabel> T;
      for (auto& a : acts)
        if (a.kind && c.rank(a.target.p) > 0) T.push_back(a.target);
      std::sort(T.begin(), T.end());
      T.erase(std::unique(T.begin(), T.end()), T.end());
      if (T.empty()) continue;
      std::vector<long> toff(T.size());
      long grows = 0;
      for (size_t k = 0; k < T.size(); ++k) {
        toff[k] = grows;
        grows += c.rank(T[k].p);
      }
      auto tpos = [&](const GammaLabel& l) -> long {
        auto it = std::lower_bound(T.begin(), T.end(), l);
        if (it == T.end() || !(*it == l)) return -1;
        return (long)(it - T.begin());
      };
      // the small map g between labeled sums
      long gcols = 0;
      for (long p : b.parts) gcols += p;
      IntMatrix g(grows, gcols);
      long coff = 0;
      for (size_t k = 0; k < b.label_idx.size(); ++k) {
        const auto& a = acts[k];
        long part = b.parts[k];
        if (a.kind && c.rank(a.target.p) > 0) {
          long tp = tpos(a.target);
          IntMatrix blk = (a.kind == 1)
                              ? IntMatrix::identity(part)
                              : c.diff(src.labels[b.label_idx[k]].p);
          for (long r = 0; r < blk.rows(); ++r)
            for (long cc = 0; cc < blk.cols(); ++cc)
              g(toff[tp] + r, coff + cc) += blk(r, cc);
        }
        coff += part;
      }
      // supports of F over the target parts
      std::vector<uint32_t> units;
      for (size_t k = 0; k < T.size(); ++k)
        for (long t = 0; t < c.rank(T[k].p); ++t) units.push_back(1u << k);
      auto sups = basis_supports(f, units);
      // scatter into every receiving block of the lower level
      for (const auto& db : dst.blocks) {
        uint32_t want = 0;
        bool ok = true;
        for (int idx : db.label_idx) {
          long p = tpos(dst.labels[idx]);
          if (p < 0) {
            ok = false;
            break;
          }
          want |= 1u << p;
        }
        if (!ok) continue;
        std::vector<long> rows;
        for (long t = 0; t < (long)sups.size(); ++t)
          if (sups[t] == want) rows.push_back(t);
        if (rows.size() != db.ordinals.size())
          throw std::logic_error("derived1_diff: block basis mismatch");
        if (rows.empty()) continue;
        IntMatrix sub = apply_to_hom_component(f, g, rows, b.ordinals);
        BigInt sgn(i % 2 ? -1 : 1);
        for (long r = 0; r < sub.rows(); ++r)
          for (long cc = 0; cc < sub.cols(); ++cc)
            m(db.offset + r, b.offset + cc) += sgn * sub(r, cc);
      }
    }
  }
  BigInt s = moore_sign(n - 1) * moore_sign(n);
  if (s.sign() < 0) m = IntMatrix(-m);
  return m;
}

}  // namespace detail

// N F Gamma of a bounded complex, computed blockwise at truncation level
// degree(F) * length + 1; the guard level must come out empty.
inline Derived1 induced_F1(const FunctorSpec& f, const ChainComplex& c) {
  if (!zero_preserving(f))
    throw std::invalid_argument("induced_F1: functor must preserve zero");
  long l = c.is_zero() ? 0 : c.top();
  long bound = f.degree() * l;
  long M = bound + 1;
  Derived1 out;
  out.bound = bound;
  for (long n = 0; n <= M; ++n)
    out.levels.push_back(derived_level(f, c.ranks, (int)n));
  out.guard_rank = out.levels[M].total;
  std::vector<long> ranks(bound + 1, 0);
  for (long n = 0; n <= bound; ++n) ranks[n] = out.levels[n].total;
  out.out = ChainComplex(ranks);
  for (long n = 1; n <= bound; ++n)
    out.out.set_diff(
        n, detail::derived1_diff(f, c, out.levels[n], out.levels[n - 1], (int)n));
  return out;
}

// Rank data only; enough for length-bound checks.
inline std::vector<long> induced_F1_ranks(const FunctorSpec& f, const ChainComplex& c,
                                          long up_to) {
  std::vector<long> r;
  for (long n = 0; n <= up_to; ++n)
    r.push_back(derived_level(f, c.ranks, (int)n).total);
  return r;
}

// Functorial action on chain maps: blockwise F of the label-diagonal map.
inline std::vector<IntMatrix> induced_F1_map(const FunctorSpec& f,
                                             const ChainComplex& csrc,
                                             const Derived1& src,
                                             const ChainComplex& cdst,
                                             const Derived1& dst,
                                             const std::vector<IntMatrix>& fmap) {
  auto comp_of = [&](long p) -> IntMatrix {
    if (p >= 0 && p < (long)fmap.size()) return fmap[p];
    return IntMatrix::zero(cdst.rank(p), csrc.rank(p));
  };
  long N = std::max(src.bound, dst.bound);
  std::vector<IntMatrix> out(N + 1);
  for (long n = 0; n <= N; ++n) {
    long sr = (n < (long)src.levels.size()) ? src.levels[n].total : 0;
    long dr = (n < (long)dst.levels.size()) ? dst.levels[n].total : 0;
    IntMatrix m(dr, sr);
    if (sr && dr) {
      const DerivedLevel& sl = src.levels[n];
      const DerivedLevel& dl = dst.levels[n];
      for (const auto& sb : sl.blocks) {
        // locate the block with the same label set on the target side
        std::vector<GammaLabel> key;
        for (int idx : sb.label_idx) key.push_back(sl.labels[idx]);
        const DerivedBlock* match = nullptr;
        for (const auto& db : dl.blocks) {
          if (db.label_idx.size() != key.size()) continue;
          bool same = true;
          for (size_t k = 0; k < key.size() && same; ++k)
            if (!(dl.labels[db.label_idx[k]] == key[k])) same = false;
          if (same) {
            match = &db;
            break;
          }
        }
        if (!match) continue;
        long gr = 0, gc = 0;
        for (long p : match->parts) gr += p;
        for (long p : sb.parts) gc += p;
        IntMatrix g(gr, gc);
        long ro = 0, co = 0;
        for (size_t k = 0; k < key.size(); ++k) {
          IntMatrix blk = comp_of(key[k].p);
          for (long r = 0; r < blk.rows(); ++r)
            for (long cc = 0; cc < blk.cols(); ++cc) g(ro + r, co + cc) = blk(r, cc);
          ro += match->parts[k];
          co += sb.parts[k];
        }
        IntMatrix sub = apply_to_hom_component(f, g, match->ordinals, sb.ordinals);
        for (long r = 0; r < sub.rows(); ++r)
          for (long cc = 0; cc < sub.cols(); ++cc)
            m(match->offset + r, sb.offset + cc) = sub(r, cc);
      }
    }
    out[n] = std::move(m);
  }
  return out;
}

// ---------------------------------------------------------------------------
// multicomplex plumbing for the outer recursion

struct MultiMap {
  std::map<MultiIndex, IntMatrix> comp;
};

inline IntMatrix map_at(const MultiComplex& src, const MultiComplex& dst,
                        const MultiMap& f, const MultiIndex& c) {
  auto it = f.comp.find(c);
  if (it != f.comp.end()) return it->second;
  return IntMatrix::zero(dst.rank(c), src.rank(c));
}

inline MultiComplex slice_outer(const MultiComplex& x, int p) {
  MultiComplex s(x.dim - 1);
  for (auto& [c, r] : x.ranks)
    if (c.back() == p) s.ranks[MultiIndex(c.begin(), c.end() - 1)] = r;
  for (int k = 0; k + 1 < x.dim; ++k)
    for (auto& [c, m] : x.diff[k])
      if (c.back() == p) s.diff[k][MultiIndex(c.begin(), c.end() - 1)] = m;
  return s;
}

struct MultiSum {
  MultiComplex total;
  std::vector<std::map<MultiIndex, long>> offsets;  // per part, per cell
};

inline MultiSum direct_sum_multi(const std::vector<MultiComplex>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum_multi: empty");
  int dim = parts[0].dim;
  MultiSum s;
  s.total = MultiComplex(dim);
  s.offsets.resize(parts.size());
  std::map<MultiIndex, long> sizes;
  for (size_t k = 0; k < parts.size(); ++k) {
    if (parts[k].dim != dim) throw DimensionMismatch("direct_sum_multi");
    for (auto& [c, r] : parts[k].ranks) {
      s.offsets[k][c] = sizes[c];
      sizes[c] += r;
    }
  }
  for (auto& [c, r] : sizes)
    if (r) s.total.ranks[c] = r;
  for (int dir = 0; dir < dim; ++dir) {
    for (auto& [c, r] : s.total.ranks) {
      MultiIndex t = c;
      t[dir] -= 1;
      if (t[dir] < 0 || s.total.rank(t) == 0) continue;
      IntMatrix m(s.total.rank(t), r);
      bool nz = false;
      for (size_t k = 0; k < parts.size(); ++k) {
        if (!s.offsets[k].count(c) || !s.offsets[k].count(t)) continue;
        IntMatrix blk = parts[k].d(dir, c);
        if (blk.is_zero()) continue;
        nz = true;
        long ro = s.offsets[k][t], co = s.offsets[k][c];
        for (long a = 0; a < blk.rows(); ++a)
          for (long b = 0; b < blk.cols(); ++b) m(ro + a, co + b) = blk(a, b);
      }
      if (nz) s.total.diff[dir][c] = std::move(m);
    }
  }
  return s;
}

inline MultiComplex permute_directions(const MultiComplex& x,
                                       const std::vector<int>& new_pos) {
  MultiComplex y(x.dim);
  auto remap = [&](const MultiIndex& c) {
    MultiIndex o(x.dim);
    for (int k = 0; k < x.dim; ++k) o[new_pos[k]] = c[k];
    return o;
  };
  for (auto& [c, r] : x.ranks) y.ranks[remap(c)] = r;
  for (int k = 0; k < x.dim; ++k)
    for (auto& [c, m] : x.diff[k]) y.diff[new_pos[k]][remap(c)] = m;
  return y;
}

// ---------------------------------------------------------------------------
// simplicial objects of multicomplexes and the outer normalization

struct SimplicialMulti {
  long M = 0;
  std::vector<MultiComplex> level;
  std::vector<std::vector<MultiMap>> face;   // face[m][i]: m -> m-1, m >= 1
  std::vector<std::vector<MultiMap>> degen;  // degen[m][j]: m -> m+1, m < M
};

struct NormalizeInfo {
  std::vector<std::map<MultiIndex, IntMatrix>> iota, pi;
};

// Quotient by the degenerate part in the outer direction, realized cellwise
// as the Smith complement; the outer index becomes the last direction.
inline MultiComplex normalize_outer(const SimplicialMulti& s, bool sign,
                                    NormalizeInfo* info_out = nullptr) {
  int inner = s.level.empty() ? 0 : s.level[0].dim;
  NormalizeInfo info;
  info.iota.resize(s.M + 1);
  info.pi.resize(s.M + 1);
  for (long m = 0; m <= s.M; ++m) {
    for (auto& [c, r] : s.level[m].ranks) {
      IntMatrix cat(r, 0);
      if (m >= 1)
        for (long j = 0; j < m; ++j)
          cat = IntMatrix::hcat(
              cat, map_at(s.level[m - 1], s.level[m], s.degen[m - 1][j], c));
      IntMatrix dbasis = image_basis(cat);
      auto comp = split_complement(dbasis);
      info.iota[m][c] = comp.incl_n;
      info.pi[m][c] = comp.proj_n;
    }
  }
  MultiComplex out(inner + 1);
  for (long m = 0; m <= s.M; ++m)
    for (auto& [c, i] : info.iota[m])
      if (i.cols()) {
        MultiIndex oc = c;
        oc.push_back((int)m);
        out.ranks[oc] = i.cols();
      }
  // outer differential: alternating sum of conjugated faces
  for (long m = 1; m <= s.M; ++m)
    for (auto& [c, iota_m] : info.iota[m]) {
      if (!iota_m.cols()) continue;
      auto it = info.pi[m - 1].find(c);
      if (it == info.pi[m - 1].end() || !it->second.rows()) continue;
      IntMatrix acc(it->second.rows(), iota_m.cols());
      for (long i = 0; i <= m; ++i) {
        IntMatrix fc = map_at(s.level[m], s.level[m - 1], s.face[m][i], c);
        IntMatrix term = IntMatrix(it->second * fc * iota_m);
        if (i % 2)
          acc = IntMatrix(acc - term);
        else
          acc = IntMatrix(acc + term);
      }
      if (sign) {
        BigInt sg = moore_sign(m - 1) * moore_sign(m);
        if (sg.sign() < 0) acc = IntMatrix(-acc);
      }
      if (!acc.is_zero()) {
        MultiIndex oc = c;
        oc.push_back((int)m);
        out.diff[inner][oc] = std::move(acc);
      }
    }
  // inner differentials, conjugated cellwise
  for (long m = 0; m <= s.M; ++m)
    for (auto& [c, iota_m] : info.iota[m]) {
      if (!iota_m.cols()) continue;
      for (int k = 0; k < inner; ++k) {
        MultiIndex t = c;
        t[k] -= 1;
        if (t[k] < 0) continue;
        auto it = info.pi[m].find(t);
        if (it == info.pi[m].end() || !it->second.rows()) continue;
        IntMatrix dmat = IntMatrix(it->second * s.level[m].d(k, c) * iota_m);
        if (!dmat.is_zero()) {
          MultiIndex oc = c;
          oc.push_back((int)m);
          out.diff[k][oc] = std::move(dmat);
        }
      }
    }
  if (info_out) *info_out = info;
  return out;
}

// ---------------------------------------------------------------------------
// the recursive functor on multicomplexes

struct FnResult {
  MultiComplex out;
  long bound = 0;
  long guard_rank = 0;
};

FnResult induced_Fn(const FunctorSpec& f, const MultiComplex& x);
MultiMap induced_Fn_map(const FunctorSpec& f, const MultiComplex& xs,
                        const MultiComplex& xd, const MultiMap& fm);

namespace detail {

struct OuterPipeline {
  long M = 0;
  long ell = 0;
  std::vector<std::vector<GammaLabel>> labels;  // per level
  std::vector<MultiSum> g;                      // labeled sums, per level
  std::vector<MultiComplex> v;                  // F_{n-1}(G_m)
  SimplicialMulti sm;
  NormalizeInfo info;
  MultiComplex out;
  // dimension-2 fast path caches
  std::vector<Derived1> d1;
  std::vector<ChainComplex> gchain;
};

// face/degeneracy of the labeled-sum levels, by the usual case rule
inline MultiMap outer_gamma_map(const MultiComplex& x,
                                const std::vector<MultiComplex>& slices,
                                const std::vector<GammaLabel>& src_labels,
                                const std::vector<GammaLabel>& dst_labels,
                                const MultiSum& gsrc, const MultiSum& gdst,
                                const MonotoneMap& alpha) {
  int outer = x.dim - 1;
  MultiMap out;
  auto locate = [&](const GammaLabel& l) -> long {
    auto it = std::lower_bound(dst_labels.begin(), dst_labels.end(), l);
    if (it == dst_labels.end() || !(*it == l)) return -1;
    return (long)(it - dst_labels.begin());
  };
  std::map<MultiIndex, IntMatrix> acc;
  for (size_t li = 0; li < src_labels.size(); ++li) {
    const GammaLabel& l = src_labels[li];
    MonotoneMap comp = l.eta.after(alpha);
    auto [epi, mono] = epi_monic_factor(comp);
    int kind = 0;
    GammaLabel tl;
    if (mono.source == l.p) {
      kind = 1;
      tl.p = l.p;
      tl.eta = comp;
      tl.mask = jump_mask(comp);
    } else if (mono.source == l.p - 1 && mono.values.back() == l.p - 1) {
      kind = 2;
      tl.p = l.p - 1;
      tl.eta = epi;
      tl.mask = jump_mask(epi);
    } else {
      continue;
    }
    long ti = locate(tl);
    if (ti < 0) continue;
    const MultiComplex& sl = slices[l.p];
    for (auto& [c, r] : sl.ranks) {
      IntMatrix blk;
      if (kind == 1) {
        blk = IntMatrix::identity(r);
      } else {
        MultiIndex xc = c;
        xc.push_back(l.p);
        blk = x.d(outer, xc);
      }
      if (blk.is_zero() || blk.rows() == 0) continue;
      if (!acc.count(c))
        acc[c] = IntMatrix::zero(gdst.total.rank(c), gsrc.total.rank(c));
      IntMatrix& m = acc[c];
      long ro = gdst.offsets[ti].at(c), co = gsrc.offsets[li].at(c);
      for (long a = 0; a < blk.rows(); ++a)
        for (long b = 0; b < blk.cols(); ++b) m(ro + a, co + b) += blk(a, b);
    }
  }
  out.comp = std::move(acc);
  return out;
}

inline OuterPipeline build_pipeline(const FunctorSpec& f, const MultiComplex& x) {
  OuterPipeline pl;
  int outer = x.dim - 1;
  pl.ell = std::max(0, x.support_bound(outer));
  pl.M = f.degree() * pl.ell + 1;
  std::vector<MultiComplex> slices;
  std::vector<long> pseudo;
  for (int p = 0; p <= (int)pl.ell; ++p) {
    slices.push_back(slice_outer(x, p));
    pseudo.push_back(slices.back().ranks.empty() ? 0 : 1);
  }
  pl.labels.resize(pl.M + 1);
  pl.g.resize(pl.M + 1);
  pl.v.resize(pl.M + 1);
  bool fast = (x.dim == 2);
  if (fast) {
    pl.d1.resize(pl.M + 1);
    pl.gchain.resize(pl.M + 1);
  }
  for (long m = 0; m <= pl.M; ++m) {
    pl.labels[m] = gamma_labels(pseudo, (int)m);
    std::vector<MultiComplex> parts;
    for (auto& l : pl.labels[m]) parts.push_back(slices[l.p]);
    if (parts.empty()) parts.push_back(MultiComplex(x.dim - 1));
    pl.g[m] = direct_sum_multi(parts);
    if (fast) {
      pl.gchain[m] = multi_to_chain(pl.g[m].total);
      pl.d1[m] = induced_F1(f, pl.gchain[m]);
      pl.v[m] = chain_to_multi(pl.d1[m].out);
    } else {
      pl.v[m] = induced_Fn(f, pl.g[m].total).out;
    }
  }
  auto vmap = [&](long msrc, long mdst, const MultiMap& phi) -> MultiMap {
    if (fast) {
      std::vector<IntMatrix> fv;
      long t = std::max(pl.gchain[msrc].top(), pl.gchain[mdst].top());
      for (long i = 0; i <= t; ++i)
        fv.push_back(map_at(chain_to_multi(pl.gchain[msrc]),
                            chain_to_multi(pl.gchain[mdst]), phi, {(int)i}));
      auto vec = induced_F1_map(f, pl.gchain[msrc], pl.d1[msrc], pl.gchain[mdst],
                                pl.d1[mdst], fv);
      MultiMap out;
      for (long i = 0; i < (long)vec.size(); ++i)
        if (vec[i].rows() && vec[i].cols()) out.comp[{(int)i}] = vec[i];
      return out;
    }
    return induced_Fn_map(f, pl.g[msrc].total, pl.g[mdst].total, phi);
  };
  pl.sm.M = pl.M;
  pl.sm.level = pl.v;
  pl.sm.face.resize(pl.M + 1);
  pl.sm.degen.resize(pl.M + 1);
  for (long m = 1; m <= pl.M; ++m)
    for (long i = 0; i <= m; ++i) {
      MultiMap phi = outer_gamma_map(x, slices, pl.labels[m], pl.labels[m - 1],
                                     pl.g[m], pl.g[m - 1],
                                     MonotoneMap::coface((int)m, (int)i));
      pl.sm.face[m].push_back(vmap(m, m - 1, phi));
    }
  for (long m = 0; m < pl.M; ++m)
    for (long j = 0; j <= m; ++j) {
      MultiMap phi = outer_gamma_map(x, slices, pl.labels[m], pl.labels[m + 1],
                                     pl.g[m], pl.g[m + 1],
                                     MonotoneMap::codegeneracy((int)m, (int)j));
      pl.sm.degen[m].push_back(vmap(m, m + 1, phi));
    }
  pl.out = normalize_outer(pl.sm, /*sign=*/true, &pl.info);
  return pl;
}

}  // namespace detail

inline FnResult induced_Fn(const FunctorSpec& f, const MultiComplex& x) {
  if (!zero_preserving(f))
    throw std::invalid_argument("induced_Fn: functor must preserve zero");
  if (x.dim == 1) {
    Derived1 d = induced_F1(f, multi_to_chain(x));
    FnResult r;
    r.out = chain_to_multi(d.out);
    r.bound = d.bound;
    r.guard_rank = d.guard_rank;
    return r;
  }
  auto pl = detail::build_pipeline(f, x);
  FnResult r;
  r.bound = f.degree() * pl.ell;
  // guard: nothing survives at the outer level bound+1
  for (auto& [c, rk] : pl.out.ranks)
    if (c.back() > r.bound) r.guard_rank += rk;
  if (r.guard_rank)
    throw std::logic_error("induced_Fn: guard level is nonzero");
  r.out = pl.out;
  return r;
}

inline MultiMap induced_Fn_map(const FunctorSpec& f, const MultiComplex& xs,
                               const MultiComplex& xd, const MultiMap& fm) {
  if (xs.dim != xd.dim) throw DimensionMismatch("induced_Fn_map");
  if (xs.dim == 1) {
    ChainComplex cs = multi_to_chain(xs), cd = multi_to_chain(xd);
    Derived1 ds = induced_F1(f, cs), dd = induced_F1(f, cd);
    std::vector<IntMatrix> fv;
    long t = std::max(cs.top(), cd.top());
    for (long i = 0; i <= t; ++i) fv.push_back(map_at(xs, xd, fm, {(int)i}));
    auto vec = induced_F1_map(f, cs, ds, cd, dd, fv);
    MultiMap out;
    for (long i = 0; i < (long)vec.size(); ++i)
      if (vec[i].rows() && vec[i].cols()) out.comp[{(int)i}] = vec[i];
    return out;
  }
  auto ps = detail::build_pipeline(f, xs);
  auto pd = detail::build_pipeline(f, xd);
  std::vector<MultiComplex> ss, sd;
  for (int p = 0; p <= std::max(ps.ell, pd.ell); ++p) {
    ss.push_back(slice_outer(xs, p));
    sd.push_back(slice_outer(xd, p));
  }
  MultiMap out;
  long M = std::min(ps.M, pd.M);
  for (long m = 0; m <= M; ++m) {
    // levelwise transported map between labeled sums
    MultiMap psi;
    for (size_t li = 0; li < ps.labels[m].size(); ++li) {
      const GammaLabel& l = ps.labels[m][li];
      auto it = std::lower_bound(pd.labels[m].begin(), pd.labels[m].end(), l);
      if (it == pd.labels[m].end() || !(*it == l)) continue;
      long di = (long)(it - pd.labels[m].begin());
      for (auto& [c, r] : ss[l.p].ranks) {
        MultiIndex xc = c;
        xc.push_back(l.p);
        IntMatrix blk = map_at(xs, xd, fm, xc);
        if (blk.is_zero()) continue;
        if (!psi.comp.count(c))
          psi.comp[c] =
              IntMatrix::zero(pd.g[m].total.rank(c), ps.g[m].total.rank(c));
        long ro = pd.g[m].offsets[di].at(c), co = ps.g[m].offsets[li].at(c);
        for (long a = 0; a < blk.rows(); ++a)
          for (long b = 0; b < blk.cols(); ++b) psi.comp[c](ro + a, co + b) = blk(a, b);
      }
    }
    MultiMap vpsi;
    if (xs.dim == 2) {
      ChainComplex cs = multi_to_chain(ps.g[m].total), cd = multi_to_chain(pd.g[m].total);
      std::vector<IntMatrix> fv;
      long t = std::max(cs.top(), cd.top());
      for (long i = 0; i <= t; ++i)
        fv.push_back(map_at(ps.g[m].total, pd.g[m].total, psi, {(int)i}));
      auto vec = induced_F1_map(f, cs, ps.d1[m], cd, pd.d1[m], fv);
      for (long i = 0; i < (long)vec.size(); ++i)
        if (vec[i].rows() && vec[i].cols()) vpsi.comp[{(int)i}] = vec[i];
    } else {
      vpsi = induced_Fn_map(f, ps.g[m].total, pd.g[m].total, psi);
    }
    // conjugate by the normalization data
    for (auto& [c, iota] : ps.info.iota[m]) {
      if (!iota.cols()) continue;
      auto it = pd.info.pi[m].find(c);
      if (it == pd.info.pi[m].end() || !it->second.rows()) continue;
      IntMatrix mm = IntMatrix(it->second * map_at(ps.v[m], pd.v[m], vpsi, c) * iota);
      if (!mm.is_zero()) {
        MultiIndex oc = c;
        oc.push_back((int)m);
        out.comp[oc] = std::move(mm);
      }
    }
  }
  return out;
}

// Peel directions in the requested order (1-based direction names, first
// entry peeled first). The default order is descending.
inline FnResult induced_Fn_ordered(const FunctorSpec& f, const MultiComplex& x,
                                   const std::vector<int>& order) {
  if ((int)order.size() != x.dim)
    throw std::invalid_argument("induced_Fn_ordered: order arity");
  std::vector<int> new_pos(x.dim, -1);
  for (int j = 0; j < x.dim; ++j) {
    int dir = order[j] - 1;
    if (dir < 0 || dir >= x.dim || new_pos[dir] != -1)
      throw std::invalid_argument("induced_Fn_ordered: not a permutation");
    new_pos[dir] = x.dim - 1 - j;
  }
  MultiComplex xp = permute_directions(x, new_pos);
  FnResult r = induced_Fn(f, xp);
  std::vector<int> inv(x.dim);
  for (int k = 0; k < x.dim; ++k) inv[new_pos[k]] = k;
  r.out = permute_directions(r.out, inv);
  return r;
}

// ---------------------------------------------------------------------------
// binary extension: apply to all 2^n choices and reassemble

struct BinaryFnResult {
  BinaryMultiComplex out;
  long bound = 0;
};

inline BinaryFnResult binary_derived(const FunctorSpec& f, const BinaryMultiComplex& b,
                                     const std::vector<int>& order = {}) {
  int n = b.dim;
  std::vector<int> ord = order;
  if (ord.empty())
    for (int k = n; k >= 1; --k) ord.push_back(k);
  std::vector<MultiComplex> res;
  long bound = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    FnResult r = induced_Fn_ordered(f, b.choice(mask), ord);
    bound = r.bound;
    res.push_back(r.out);
  }
  for (unsigned mask = 1; mask < (1u << n); ++mask)
    if (!(res[mask].ranks == res[0].ranks))
      throw GradedMismatch("binary_derived: choice outputs disagree on ranks");
  BinaryMultiComplex out(n);
  out.ranks = res[0].ranks;
  for (int k = 0; k < n; ++k)
    for (int fam = 0; fam < 2; ++fam) {
      unsigned mask = fam ? (1u << k) : 0u;
      out.fam[fam][k] = res[mask].diff[k];
      // every choice agreeing on direction k must produce this family
      for (unsigned m2 = 0; m2 < (1u << n); ++m2) {
        if (((m2 >> k) & 1u) != (unsigned)fam) continue;
        for (auto& [c, r] : res[0].ranks)
          if (!(res[m2].d(k, c) == res[mask].d(k, c)))
            throw GradedMismatch("binary_derived: family reassembly mismatch");
      }
    }
  BinaryFnResult r;
  r.out = out;
  r.bound = bound;
  return r;
}

inline BinaryFnResult binary_lambda(long r, int n, const BinaryMultiComplex& b,
                                    const std::vector<int>& order = {}) {
  if (b.dim != n) throw DimensionMismatch("binary_lambda: dimension mismatch");
  return binary_derived(FunctorSpec::lambda(r), b, order);
}

}  // namespace lambdak
