#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lambdak/complexes.hpp"
#include "lambdak/linalg.hpp"

namespace lambdak {

// Symbolic polynomial endofunctor: exterior, symmetric, divided and tensor
// powers closed under direct sum, tensor product and composition.
struct FunctorSpec {
  enum class Kind {
    Lambda,
    Sym,
    DividedPower,
    TensorPower,
    Identity,
    Zero,
    DirectSum,
    TensorProduct,
    Compose
  };
  Kind kind = Kind::Identity;
  long r = 0;
  std::vector<FunctorSpec> children;

  static FunctorSpec lambda(long r) { return atom(Kind::Lambda, r); }
  static FunctorSpec sym(long r) { return atom(Kind::Sym, r); }
  static FunctorSpec divided_power(long r) { return atom(Kind::DividedPower, r); }
  static FunctorSpec tensor_power(long r) { return atom(Kind::TensorPower, r); }
  static FunctorSpec identity() { return atom(Kind::Identity, 1); }
  static FunctorSpec zero() { return atom(Kind::Zero, 0); }
  static FunctorSpec direct_sum(FunctorSpec a, FunctorSpec b) {
    FunctorSpec f;
    f.kind = Kind::DirectSum;
    f.children = {std::move(a), std::move(b)};
    return f;
  }
  static FunctorSpec tensor_product(FunctorSpec a, FunctorSpec b) {
    FunctorSpec f;
    f.kind = Kind::TensorProduct;
    f.children = {std::move(a), std::move(b)};
    return f;
  }
  static FunctorSpec compose(FunctorSpec outer, FunctorSpec inner) {
    FunctorSpec f;
    f.kind = Kind::Compose;
    f.children = {std::move(outer), std::move(inner)};
    return f;
  }

  long degree() const {
    switch (kind) {
      case Kind::Lambda:
      case Kind::Sym:
      case Kind::DividedPower:
      case Kind::TensorPower:
        return r;
      case Kind::Identity:
        return 1;
      case Kind::Zero:
        return 0;
      case Kind::DirectSum: {
        long d = 0;
        for (auto& c : children) d = std::max(d, c.degree());
        return d;
      }
      case Kind::TensorProduct: {
        long d = 0;
        for (auto& c : children) d += c.degree();
        return d;
      }
      case Kind::Compose:
        return children[0].degree() * children[1].degree();
    }
    return 0;
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::Lambda: return "L" + std::to_string(r);
      case Kind::Sym: return "S" + std::to_string(r);
      case Kind::DividedPower: return "G" + std::to_string(r);
      case Kind::TensorPower: return "T" + std::to_string(r);
      case Kind::Identity: return "I";
      case Kind::Zero: return "Z";
      case Kind::DirectSum:
        return "(" + children[0].to_string() + "+" + children[1].to_string() + ")";
      case Kind::TensorProduct:
        return "(" + children[0].to_string() + "*" + children[1].to_string() + ")";
      case Kind::Compose:
        return "(" + children[0].to_string() + "@" + children[1].to_string() + ")";
    }
    return "?";
  }

  bool operator==(const FunctorSpec& o) const {
    return kind == o.kind && r == o.r && children == o.children;
  }

private:
  static FunctorSpec atom(Kind k, long r) {
    if (r < 0) throw std::invalid_argument("FunctorSpec: power must be >= 0");
    FunctorSpec f;
    f.kind = k;
    f.r = r;
    return f;
  }
};

// ---------------------------------------------------------------------------
// ranks and index schemes

inline long binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

inline long apply_to_module(const FunctorSpec& f, long n) {
  using K = FunctorSpec::Kind;
  switch (f.kind) {
    case K::Lambda: return binom(n, f.r);
    case K::Sym:
    case K::DividedPower: return binom(n + f.r - 1, f.r);
    case K::TensorPower: {
      long p = 1;
      for (long i = 0; i < f.r; ++i) p *= n;
      return p;
    }
    case K::Identity: return n;
    case K::Zero: return 0;
    case K::DirectSum: {
      long s = 0;
      for (auto& c : f.children) s += apply_to_module(c, n);
      return s;
    }
    case K::TensorProduct: {
      long p = 1;
      for (auto& c : f.children) p *= apply_to_module(c, n);
      return p;
    }
    case K::Compose:
      return apply_to_module(f.children[0], apply_to_module(f.children[1], n));
  }
  return 0;
}

inline bool zero_preserving(const FunctorSpec& f) { return apply_to_module(f, 0) == 0; }

// Ordered index tuples for one atom: strictly increasing for Lambda, weakly
// increasing for Sym/DividedPower, arbitrary for TensorPower; lex sorted.
struct BasisIndexScheme {
  FunctorSpec::Kind kind;
  long source_rank;
  std::vector<std::vector<int>> tuples;
};

inline BasisIndexScheme basis_index_scheme(const FunctorSpec& atom, long n) {
  using K = FunctorSpec::Kind;
  BasisIndexScheme s{atom.kind, n, {}};
  long r = atom.r;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if ((long)cur.size() == r) {
      s.tuples.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      int next = i;
      if (atom.kind == K::Lambda) next = i + 1;
      if (atom.kind == K::TensorPower) next = 0;
      self(self, next);
      cur.pop_back();
    }
  };
  switch (atom.kind) {
    case K::Lambda:
    case K::Sym:
    case K::DividedPower:
    case K::TensorPower:
      rec(rec, 0);
      break;
    case K::Identity:
      for (int i = 0; i < n; ++i) s.tuples.push_back({i});
      break;
    case K::Zero:
      break;
    default:
      throw std::invalid_argument("basis_index_scheme: not an atom");
  }
  return s;
}

// Supports: per basis ordinal of F applied to a sum of labeled units, the OR
// of the unit masks it touches. Drives cross-effects and block extraction.
inline std::vector<uint32_t> basis_supports(const FunctorSpec& f,
                                            const std::vector<uint32_t>& unit_masks) {
  using K = FunctorSpec::Kind;
  long n = (long)unit_masks.size();
  switch (f.kind) {
    case K::Lambda:
    case K::Sym:
    case K::DividedPower:
    case K::TensorPower: {
      auto scheme = basis_index_scheme(f, n);
      std::vector<uint32_t> out;
      out.reserve(scheme.tuples.size());
      for (auto& t : scheme.tuples) {
        uint32_t m = 0;
        for (int i : t) m |= unit_masks[i];
        out.push_back(m);
      }
      return out;
    }
    case K::Identity:
      return unit_masks;
    case K::Zero:
      return {};
    case K::DirectSum: {
      std::vector<uint32_t> out;
      for (auto& c : f.children) {
        auto sub = basis_supports(c, unit_masks);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      return out;
    }
    case K::TensorProduct: {
      std::vector<uint32_t> out{0};
      for (auto& c : f.children) {
        auto sub = basis_supports(c, unit_masks);
        std::vector<uint32_t> next;
        next.reserve(out.size() * sub.size());
        for (uint32_t a : out)
          for (uint32_t b : sub) next.push_back(a | b);
        out = std::move(next);
      }
      return out;
    }
    case K::Compose:
      return basis_supports(f.children[0], basis_supports(f.children[1], unit_masks));
  }
  return {};
}

// ---------------------------------------------------------------------------
// matrix action, generic over the scalar ring

namespace detail {

// determinant of the submatrix selected by index lists, allocation-light
template <class R>
R det_indexed(const MatrixT<R>& m, const long* rs, const long* cs, int n) {
  if (n == 0) return R(1);
  if (n == 1) return m(rs[0], cs[0]);
  if (n == 2)
    return m(rs[0], cs[0]) * m(rs[1], cs[1]) - m(rs[0], cs[1]) * m(rs[1], cs[0]);
  if (n == 3)
    return m(rs[0], cs[0]) *
               (m(rs[1], cs[1]) * m(rs[2], cs[2]) - m(rs[1], cs[2]) * m(rs[2], cs[1])) -
           m(rs[0], cs[1]) *
               (m(rs[1], cs[0]) * m(rs[2], cs[2]) - m(rs[1], cs[2]) * m(rs[2], cs[0])) +
           m(rs[0], cs[2]) *
               (m(rs[1], cs[0]) * m(rs[2], cs[1]) - m(rs[1], cs[1]) * m(rs[2], cs[0]));
  // cofactor expansion along the first row
  R acc(0);
  std::vector<long> sub(n - 1);
  for (int j = 0; j < n; ++j) {
    if (m(rs[0], cs[j]) == R(0)) continue;
    int k = 0;
    for (int c = 0; c < n; ++c)
      if (c != j) sub[k++] = cs[c];
    R term = m(rs[0], cs[j]) * det_indexed(m, rs + 1, sub.data(), n - 1);
    if (j % 2) term = R(0) - term;
    acc = acc + term;
  }
  return acc;
}

}  // namespace detail

template <class R>
R det_small(const MatrixT<R>& m) {
  long n = m.rows();
  std::vector<long> idx(n);
  for (long i = 0; i < n; ++i) idx[i] = i;
  return detail::det_indexed(m, idx.data(), idx.data(), (int)n);
}

namespace detail {

inline std::vector<long> all_indices(long n) {
  std::vector<long> v(n);
  for (long i = 0; i < n; ++i) v[i] = i;
  return v;
}

template <class R>
MatrixT<R> apply_hom_component(const FunctorSpec& f, const MatrixT<R>& a,
                               const std::vector<long>& rows,
                               const std::vector<long>& cols);

// Expand the image of one Sym basis tuple as a polynomial in the target
// monomial basis: product of the linear forms A e_{j}, j in tuple.
template <class R>
std::map<std::vector<int>, R> sym_column(const MatrixT<R>& a,
                                         const std::vector<int>& tuple) {
  std::map<std::vector<int>, R> acc;
  acc[{}] = R(1);
  for (int j : tuple) {
    std::map<std::vector<int>, R> next;
    for (auto& [mono, coeff] : acc)
      for (long i = 0; i < a.rows(); ++i) {
        if (a(i, j) == R(0)) continue;
        std::vector<int> m = mono;
        m.insert(std::lower_bound(m.begin(), m.end(), (int)i), (int)i);
        auto it = next.find(m);
        if (it == next.end())
          next.emplace(std::move(m), coeff * a(i, j));
        else
          it->second = it->second + coeff * a(i, j);
      }
    acc = std::move(next);
  }
  return acc;
}

template <class R>
MatrixT<R> lambda_component(const FunctorSpec& f, const MatrixT<R>& a,
                            const std::vector<long>& rows,
                            const std::vector<long>& cols) {
  auto rsch = basis_index_scheme(f, a.rows());
  auto csch = basis_index_scheme(f, a.cols());
  MatrixT<R> out((long)rows.size(), (long)cols.size());
  std::vector<long> I(f.r), J(f.r);
  for (size_t ri = 0; ri < rows.size(); ++ri) {
    for (long k = 0; k < f.r; ++k) I[k] = rsch.tuples[rows[ri]][k];
    for (size_t cj = 0; cj < cols.size(); ++cj) {
      for (long k = 0; k < f.r; ++k) J[k] = csch.tuples[cols[cj]][k];
      out((long)ri, (long)cj) = det_indexed(a, I.data(), J.data(), (int)f.r);
    }
  }
  return out;
}

template <class R>
MatrixT<R> sym_component(const FunctorSpec& f, const MatrixT<R>& a,
                         const std::vector<long>& rows, const std::vector<long>& cols) {
  auto rsch = basis_index_scheme(f, a.rows());
  auto csch = basis_index_scheme(f, a.cols());
  MatrixT<R> out((long)rows.size(), (long)cols.size());
  for (size_t cj = 0; cj < cols.size(); ++cj) {
    auto col = sym_column(a, csch.tuples[cols[cj]]);
    for (size_t ri = 0; ri < rows.size(); ++ri) {
      auto it = col.find(rsch.tuples[rows[ri]]);
      if (it != col.end()) out((long)ri, (long)cj) = it->second;
    }
  }
  return out;
}

template <class R>
MatrixT<R> tensor_power_component(const FunctorSpec& f, const MatrixT<R>& a,
                                  const std::vector<long>& rows,
                                  const std::vector<long>& cols) {
  auto rsch = basis_index_scheme(f, a.rows());
  auto csch = basis_index_scheme(f, a.cols());
  MatrixT<R> out((long)rows.size(), (long)cols.size());
  for (size_t ri = 0; ri < rows.size(); ++ri)
    for (size_t cj = 0; cj < cols.size(); ++cj) {
      const auto& I = rsch.tuples[rows[ri]];
      const auto& J = csch.tuples[cols[cj]];
      R p(1);
      for (long k = 0; k < f.r && !(p == R(0)); ++k) p = p * a(I[k], J[k]);
      out((long)ri, (long)cj) = p;
    }
  return out;
}

template <class R>
MatrixT<R> apply_hom_component(const FunctorSpec& f, const MatrixT<R>& a,
                               const std::vector<long>& rows,
                               const std::vector<long>& cols) {
  using K = FunctorSpec::Kind;
  switch (f.kind) {
    case K::Lambda:
      return lambda_component(f, a, rows, cols);
    case K::Sym:
      return sym_component(f, a, rows, cols);
    case K::DividedPower: {
      // Gamma^r(A) = Sym^r(A^T)^T
      FunctorSpec s = FunctorSpec::sym(f.r);
      return sym_component(s, MatrixT<R>(a.transpose()), cols, rows).transpose();
    }
    case K::TensorPower:
      return tensor_power_component(f, a, rows, cols);
    case K::Identity:
      return a.submatrix(rows, cols);
    case K::Zero:
      return MatrixT<R>((long)rows.size(), (long)cols.size());
    case K::DirectSum: {
      // block-diagonal in the concatenated ordinals
      long roffA = 0, coffA = 0;
      MatrixT<R> out((long)rows.size(), (long)cols.size());
      for (auto& c : f.children) {
        long rn = apply_to_module(c, a.rows()), cn = apply_to_module(c, a.cols());
        std::vector<long> rsel, rpos, csel, cpos;
        for (size_t i = 0; i < rows.size(); ++i)
          if (rows[i] >= roffA && rows[i] < roffA + rn) {
            rsel.push_back(rows[i] - roffA);
            rpos.push_back((long)i);
          }
        for (size_t j = 0; j < cols.size(); ++j)
          if (cols[j] >= coffA && cols[j] < coffA + cn) {
            csel.push_back(cols[j] - coffA);
            cpos.push_back((long)j);
          }
        if (!rsel.empty() && !csel.empty()) {
          MatrixT<R> blk = apply_hom_component(c, a, rsel, csel);
          for (size_t i = 0; i < rsel.size(); ++i)
            for (size_t j = 0; j < csel.size(); ++j)
              out(rpos[i], cpos[j]) = blk((long)i, (long)j);
        }
        roffA += rn;
        coffA += cn;
      }
      return out;
    }
    case K::TensorProduct: {
      const FunctorSpec& L = f.children[0];
      const FunctorSpec& Rr = f.children[1];
      long rnL = apply_to_module(L, a.rows());
      long cnL = apply_to_module(L, a.cols());
      long rnR = apply_to_module(Rr, a.rows());
      long cnR = apply_to_module(Rr, a.cols());
      (void)rnL;
      (void)cnL;
      std::vector<long> rL, rR, cL, cR;
      for (long x : rows) {
        rL.push_back(x / rnR);
        rR.push_back(x % rnR);
      }
      for (long x : cols) {
        cL.push_back(x / cnR);
        cR.push_back(x % cnR);
      }
      auto uniq = [](std::vector<long> v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
      };
      std::vector<long> urL = uniq(rL), urR = uniq(rR), ucL = uniq(cL), ucR = uniq(cR);
      auto pos = [](const std::vector<long>& v, long x) {
        return (long)(std::lower_bound(v.begin(), v.end(), x) - v.begin());
      };
      MatrixT<R> ML = apply_hom_component(L, a, urL, ucL);
      MatrixT<R> MR = apply_hom_component(Rr, a, urR, ucR);
      MatrixT<R> out((long)rows.size(), (long)cols.size());
      for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j)
          out((long)i, (long)j) = ML(pos(urL, rL[i]), pos(ucL, cL[j])) *
                                  MR(pos(urR, rR[i]), pos(ucR, cR[j]));
      return out;
    }
    case K::Compose: {
      MatrixT<R> inner = apply_hom_component(
          f.children[1], a, all_indices(apply_to_module(f.children[1], a.rows())),
          all_indices(apply_to_module(f.children[1], a.cols())));
      return apply_hom_component(f.children[0], inner, rows, cols);
    }
  }
  return MatrixT<R>(0, 0);
}

}  // namespace detail

template <class R>
MatrixT<R> apply_to_hom_t(const FunctorSpec& f, const MatrixT<R>& a) {
  return detail::apply_hom_component(
      f, a, detail::all_indices(apply_to_module(f, a.rows())),
      detail::all_indices(apply_to_module(f, a.cols())));
}

inline IntMatrix apply_to_hom(const FunctorSpec& f, const IntMatrix& a) {
  return IntMatrix(apply_to_hom_t<BigInt>(f, a));
}

inline IntMatrix apply_to_hom_component(const FunctorSpec& f, const IntMatrix& a,
                                        const std::vector<long>& rows,
                                        const std::vector<long>& cols) {
  return IntMatrix(detail::apply_hom_component<BigInt>(f, a, rows, cols));
}

// TensorProduct of more than two children is built by nesting; the tensor
// here flattens n-fold products left-associatively.
inline FunctorSpec tensor_chain(std::vector<FunctorSpec> fs) {
  if (fs.empty()) throw std::invalid_argument("tensor_chain: empty");
  FunctorSpec acc = fs[0];
  for (size_t i = 1; i < fs.size(); ++i)
    acc = FunctorSpec::tensor_product(acc, fs[i]);
  return acc;
}

// ---------------------------------------------------------------------------
// cross-effects

struct CrossEffect {
  long rank = 0;
  IntMatrix inclusion;            // into F(Z^{n_1+...+n_k}), 0/1 columns
  std::vector<long> ordinals;     // basis ordinals with full support
};

inline CrossEffect cross_effect(const FunctorSpec& f, const std::vector<long>& ranks) {
  long k = (long)ranks.size();
  if (k > 31) throw std::invalid_argument("cross_effect: too many arguments");
  std::vector<uint32_t> units;
  for (long i = 0; i < k; ++i)
    for (long t = 0; t < ranks[i]; ++t) units.push_back(1u << i);
  auto sups = basis_supports(f, units);
  uint32_t full = (k == 0) ? 0 : ((k == 31) ? 0x7fffffffu : ((1u << k) - 1));
  CrossEffect ce;
  for (long i = 0; i < (long)sups.size(); ++i)
    if (sups[i] == full) ce.ordinals.push_back(i);
  ce.rank = (long)ce.ordinals.size();
  ce.inclusion = IntMatrix((long)sups.size(), ce.rank);
  for (long j = 0; j < ce.rank; ++j) ce.inclusion(ce.ordinals[j], j) = BigInt(1);
  return ce;
}

// Structural degree cross-checked against cross-effect vanishing on rank-1
// arguments: cr_{d+1} = 0 and (for d >= 1) cr_d != 0.
inline long degree_of(const FunctorSpec& f) { return f.degree(); }

inline bool degree_verified(const FunctorSpec& f) {
  long d = f.degree();
  if (d + 1 <= 31) {
    std::vector<long> ones(d + 1, 1);
    if (cross_effect(f, ones).rank != 0) return false;
  }
  if (d >= 1) {
    std::vector<long> ones(d, 1);
    if (cross_effect(f, ones).rank == 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// text grammar: L2, S3, G2, T2, I, Z with * (tensor), + (sum), @ (compose)

namespace detail {

struct FunctorParser {
  const std::string& s;
  size_t pos = 0;

  explicit FunctorParser(const std::string& str) : s(str) {}

  void skip() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  FunctorSpec parse() {
    FunctorSpec f = expr();
    skip();
    if (pos != s.size())
      throw std::invalid_argument("functor parse error at position " +
                                  std::to_string(pos));
    return f;
  }

  FunctorSpec expr() {
    FunctorSpec f = term();
    while (eat('+')) f = FunctorSpec::direct_sum(f, term());
    return f;
  }
  FunctorSpec term() {
    FunctorSpec f = factor();
    while (eat('*')) f = FunctorSpec::tensor_product(f, factor());
    return f;
  }
  FunctorSpec factor() {
    FunctorSpec f = primary();
    while (eat('@')) f = FunctorSpec::compose(f, primary());
    return f;
  }
  FunctorSpec primary() {
    skip();
    if (eat('(')) {
      FunctorSpec f = expr();
      if (!eat(')')) throw std::invalid_argument("functor parse error: missing )");
      return f;
    }
    if (pos >= s.size()) throw std::invalid_argument("functor parse error: eof");
    char c = s[pos++];
    if (c == 'I') return FunctorSpec::identity();
    if (c == 'Z') return FunctorSpec::zero();
    long n = 0;
    bool got = false;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
      n = n * 10 + (s[pos++] - '0');
      got = true;
    }
    if (!got) throw std::invalid_argument("functor parse error: power expected");
    switch (c) {
      case 'L': return FunctorSpec::lambda(n);
      case 'S': return FunctorSpec::sym(n);
      case 'G': return FunctorSpec::divided_power(n);
      case 'T': return FunctorSpec::tensor_power(n);
      default: throw std::invalid_argument("functor parse error: unknown atom");
    }
  }
};

}  // namespace detail

inline FunctorSpec parse_functor(const std::string& text) {
  detail::FunctorParser p(text);
  return p.parse();
}

// Homogeneity degree; nullopt when inhomogeneous. The zero functor is
// homogeneous of every degree and reports -1.
inline std::optional<long> homogeneous_degree(const FunctorSpec& f) {
  using K = FunctorSpec::Kind;
  switch (f.kind) {
    case K::Lambda:
    case K::Sym:
    case K::DividedPower:
    case K::TensorPower:
      return f.r;
    case K::Identity:
      return 1;
    case K::Zero:
      return -1;
    case K::DirectSum: {
      long d = -1;
      for (auto& c : f.children) {
        auto h = homogeneous_degree(c);
        if (!h) return std::nullopt;
        if (*h == -1) continue;
        if (d == -1)
          d = *h;
        else if (d != *h)
          return std::nullopt;
      }
      return d;
    }
    case K::TensorProduct: {
      long d = 0;
      for (auto& c : f.children) {
        auto h = homogeneous_degree(c);
        if (!h) return std::nullopt;
        if (*h == -1) return -1;
        d += *h;
      }
      return d;
    }
    case K::Compose: {
      auto a = homogeneous_degree(f.children[0]), b = homogeneous_degree(f.children[1]);
      if (!a || !b) return std::nullopt;
      if (*a == -1 || *b == -1) return -1;
      return *a * *b;
    }
  }
  return std::nullopt;
}

}  // namespace lambdak
