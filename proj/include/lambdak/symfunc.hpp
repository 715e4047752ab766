#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lambdak/functors.hpp"
#include "lambdak/poly.hpp"

namespace lambdak {

struct NotSymmetric : std::runtime_error {
  NotSymmetric(const std::string& m) : std::runtime_error(m) {}
};
struct InsufficientVariables : std::runtime_error {
  InsufficientVariables(const std::string& m) : std::runtime_error(m) {}
};

// Symmetric polynomial in a fixed number of variables.
struct SymPoly {
  int nvars = 0;
  MultiPoly p;

  bool operator==(const SymPoly& o) const { return p == o.p; }
};

// Polynomial in the abstract elementary generators e_1, e_2, ...; variable
// i-1 stands for e_i, of weighted degree i.
struct EBasisPoly {
  MultiPoly p;

  long weighted_degree() const {
    long d = 0;
    for (auto& [e, v] : p.terms()) {
      long s = 0;
      for (size_t i = 0; i < e.size(); ++i) s += (long)(i + 1) * e[i];
      d = std::max(d, s);
    }
    return d;
  }
  bool operator==(const EBasisPoly& o) const { return p == o.p; }
  std::string to_string() const { return p.to_string("e"); }
};

// elementary symmetric polynomial e_k in n variables
inline MultiPoly elementary_sym(int k, int n) {
  MultiPoly out;
  if (k < 0 || k > n) return out;
  std::vector<int> idx(k);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) {
      MultiPoly::Exp e(n, 0);
      for (int i : idx) e[i] = 1;
      out.add_term(e, BigInt(1));
      return;
    }
    for (int i = start; i < n; ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  if (k == 0) out = MultiPoly(1);
  return out;
}

// complete homogeneous h_k in n variables
inline MultiPoly complete_sym(int k, int n) {
  MultiPoly out;
  std::function<void(int, int, MultiPoly::Exp&)> rec = [&](int start, int left,
                                                           MultiPoly::Exp& e) {
    if (left == 0) {
      out.add_term(e, BigInt(1));
      return;
    }
    if (start >= n) return;
    for (int take = left; take >= 0; --take) {
      e[start] = take;
      rec(start + 1, left - take, e);
      e[start] = 0;
    }
  };
  MultiPoly::Exp e(n, 0);
  if (k == 0) return MultiPoly(1);
  rec(0, k, e);
  return out;
}

inline bool is_symmetric(const MultiPoly& f, int n) {
  for (int i = 0; i + 1 < n; ++i) {
    MultiPoly g;
    for (auto& [e, v] : f.terms()) {
      MultiPoly::Exp t = e;
      if ((int)t.size() <= i + 1) t.resize(i + 2, 0);
      std::swap(t[i], t[i + 1]);
      g.add_term(t, v);
    }
    if (!(g == f)) return false;
  }
  return true;
}

// Unique expression of a symmetric polynomial in the elementary basis, by
// leading-monomial reduction.
inline EBasisPoly expand_in_e(const SymPoly& f) {
  int n = f.nvars;
  if ((long)n < f.p.total_degree())
    throw InsufficientVariables("expand_in_e: need at least deg(f) variables");
  if (!is_symmetric(f.p, n)) throw NotSymmetric("expand_in_e: input not symmetric");
  EBasisPoly out;
  MultiPoly rest = f.p;
  // cache of expanded e_k
  std::vector<MultiPoly> e(n + 1);
  for (int k = 1; k <= n; ++k) e[k] = elementary_sym(k, n);
  while (!rest.is_zero()) {
    // lex-leading monomial
    auto it = rest.terms().rbegin();
    MultiPoly::Exp lam = it->first;
    BigInt c = it->second;
    lam.resize(n, 0);
    for (int i = 0; i + 1 < n; ++i)
      if (lam[i] < lam[i + 1])
        throw NotSymmetric("expand_in_e: leading monomial is not a partition");
    // e-monomial with multiplicities lam_i - lam_{i+1}
    MultiPoly::Exp ee(n, 0);
    MultiPoly prod(1);
    for (int i = 0; i < n; ++i) {
      int m = lam[i] - (i + 1 < n ? lam[i + 1] : 0);
      ee[i] = m;
      for (int k = 0; k < m; ++k) prod *= e[i + 1];
    }
    out.p.add_term(ee, c);
    rest -= MultiPoly(c) * prod;
  }
  return out;
}

// expand an e-basis polynomial into honest symmetric polynomials
inline SymPoly expand_e_poly(const EBasisPoly& f, int n) {
  SymPoly out;
  out.nvars = n;
  for (auto& [e, v] : f.p.terms()) {
    MultiPoly term(v);
    for (size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) term *= elementary_sym((int)i + 1, n);
    out.p += term;
  }
  return out;
}

// ---------------------------------------------------------------------------
// the universal polynomials P_r and P_{r,s}

// Bi-symmetric reduction in two alphabets of r variables each: returns the
// polynomial in X_1..X_r (vars 0..r-1) and Y_1..Y_r (vars r..2r-1).
inline MultiPoly bisymmetric_reduce(MultiPoly f, int r) {
  MultiPoly out;
  std::vector<MultiPoly> ex(r + 1), ey(r + 1);
  for (int k = 1; k <= r; ++k) {
    ex[k] = elementary_sym(k, r);
    MultiPoly y;
    for (auto& [e, v] : ex[k].terms()) {
      MultiPoly::Exp t(r + e.size(), 0);
      for (size_t i = 0; i < e.size(); ++i) t[r + i] = e[i];
      y.add_term(t, v);
    }
    ey[k] = y;
  }
  while (!f.is_zero()) {
    auto it = f.terms().rbegin();
    MultiPoly::Exp lead = it->first;
    BigInt c = it->second;
    lead.resize(2 * r, 0);
    MultiPoly::Exp ee(2 * r, 0);
    MultiPoly prod(1);
    for (int i = 0; i < r; ++i) {
      int m = lead[i] - (i + 1 < r ? lead[i + 1] : 0);
      if (m < 0) throw NotSymmetric("bisymmetric_reduce: x-part not a partition");
      ee[i] = m;
      for (int k = 0; k < m; ++k) prod *= ex[i + 1];
    }
    for (int i = 0; i < r; ++i) {
      int m = lead[r + i] - (i + 1 < r ? lead[r + i + 1] : 0);
      if (m < 0) throw NotSymmetric("bisymmetric_reduce: y-part not a partition");
      ee[r + i] = m;
      for (int k = 0; k < m; ++k) prod *= ey[i + 1];
    }
    out.add_term(ee, c);
    f -= MultiPoly(c) * prod;
  }
  return out;
}

// P_r: the universal polynomial with
// P_r(e_1(x)..e_r(x), e_1(y)..e_r(y)) = e_r({x_i y_j}).
// Variables 0..r-1 are X_1..X_r, variables r..2r-1 are Y_1..Y_r.
inline MultiPoly universal_Pr(long r) {
  if (r < 1) throw std::invalid_argument("universal_Pr: r >= 1");
  // e_r of the product alphabet {x_i y_j : i,j < r} in 2r variables
  std::vector<MultiPoly::Exp> alphabet;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      MultiPoly::Exp e(2 * r, 0);
      e[i] += 1;
      e[r + j] += 1;
      alphabet.push_back(e);
    }
  MultiPoly f;
  std::vector<int> idx(r);
  std::function<void(int, int, MultiPoly::Exp&)> rec = [&](int start, int depth,
                                                           MultiPoly::Exp& acc) {
    if (depth == (int)r) {
      f.add_term(acc, BigInt(1));
      return;
    }
    for (int i = start; i < (int)alphabet.size(); ++i) {
      MultiPoly::Exp nx = acc;
      for (size_t k = 0; k < alphabet[i].size(); ++k) nx[k] += alphabet[i][k];
      rec(i + 1, depth + 1, nx);
    }
  };
  MultiPoly::Exp acc(2 * r, 0);
  rec(0, 0, acc);
  return bisymmetric_reduce(f, (int)r);
}

// P_{r,s}: the e-basis expansion of the plethysm e_r[e_s] in rs variables;
// variable i-1 is X_i.
inline MultiPoly universal_Prs(long r, long s) {
  if (r < 1 || s < 1) throw std::invalid_argument("universal_Prs: r, s >= 1");
  int n = (int)(r * s);
  MultiPoly inner = elementary_sym((int)s, n);
  std::vector<MultiPoly::Exp> alphabet;
  for (auto& [e, v] : inner.terms())
    alphabet.push_back(e);  // all coefficients are 1
  MultiPoly f;
  std::function<void(int, int, MultiPoly::Exp&)> rec = [&](int start, int depth,
                                                           MultiPoly::Exp& acc) {
    if (depth == (int)r) {
      f.add_term(acc, BigInt(1));
      return;
    }
    for (int i = start; i < (int)alphabet.size(); ++i) {
      MultiPoly::Exp nx = acc;
      if (nx.size() < alphabet[i].size()) nx.resize(alphabet[i].size(), 0);
      for (size_t k = 0; k < alphabet[i].size(); ++k) nx[k] += alphabet[i][k];
      rec(i + 1, depth + 1, nx);
    }
  };
  MultiPoly::Exp acc;
  rec(0, 0, acc);
  SymPoly sf;
  sf.nvars = n;
  sf.p = f;
  return expand_in_e(sf).p;
}

// Plethysm by monomial-alphabet substitution: the monomials of the inner
// symmetric function, with multiplicity, become the alphabet of the outer.
inline SymPoly plethysm_e(const EBasisPoly& outer, const EBasisPoly& inner, int n) {
  if ((long)n < outer.weighted_degree() * std::max(1l, inner.weighted_degree()))
    throw InsufficientVariables("plethysm_e: too few variables for faithfulness");
  SymPoly in = expand_e_poly(inner, n);
  std::vector<MultiPoly::Exp> alphabet;
  for (auto& [e, v] : in.p.terms()) {
    if (v.sign() < 0)
      throw std::invalid_argument("plethysm_e: inner is not monomial-positive");
    if (!v.fits_int64())
      throw std::invalid_argument("plethysm_e: inner multiplicity too large");
    for (long long k = 0; k < v.small_value(); ++k) alphabet.push_back(e);
  }
  // e_k over the alphabet, cached
  long maxk = 0;
  for (auto& [e, v] : outer.p.terms()) maxk = std::max(maxk, (long)e.size());
  std::vector<MultiPoly> ek(maxk + 1);
  for (long k = 0; k <= maxk; ++k) {
    if (k == 0) {
      ek[0] = MultiPoly(1);
      continue;
    }
    MultiPoly acc;
    // iterate k-subsets of the alphabet
    std::vector<int> idx(k);
    std::function<void(int, int, MultiPoly::Exp&)> rec = [&](int start, int depth,
                                                             MultiPoly::Exp& e) {
      if (depth == (int)k) {
        acc.add_term(e, BigInt(1));
        return;
      }
      for (int i = start; i < (int)alphabet.size(); ++i) {
        MultiPoly::Exp nx = e;
        if (nx.size() < alphabet[i].size()) nx.resize(alphabet[i].size(), 0);
        for (size_t t = 0; t < alphabet[i].size(); ++t) nx[t] += alphabet[i][t];
        rec(i + 1, depth + 1, nx);
      }
    };
    MultiPoly::Exp e;
    rec(0, 0, e);
    ek[k] = acc;
  }
  SymPoly out;
  out.nvars = n;
  for (auto& [e, v] : outer.p.terms()) {
    MultiPoly term(v);
    for (size_t i = 0; i < e.size(); ++i)
      for (int t = 0; t < e[i]; ++t) term *= ek[i + 1];
    out.p += term;
  }
  return out;
}

// ---------------------------------------------------------------------------
// characters of polynomial functors

namespace detail {

inline std::vector<MultiPoly> weight_list(const FunctorSpec& f,
                                          const std::vector<MultiPoly>& alphabet) {
  using K = FunctorSpec::Kind;
  switch (f.kind) {
    case K::Lambda:
    case K::Sym:
    case K::DividedPower:
    case K::TensorPower: {
      auto scheme = basis_index_scheme(f, (long)alphabet.size());
      std::vector<MultiPoly> out;
      out.reserve(scheme.tuples.size());
      for (auto& t : scheme.tuples) {
        MultiPoly w(1);
        for (int i : t) w *= alphabet[i];
        out.push_back(std::move(w));
      }
      return out;
    }
    case K::Identity:
      return alphabet;
    case K::Zero:
      return {};
    case K::DirectSum: {
      std::vector<MultiPoly> out;
      for (auto& c : f.children) {
        auto sub = weight_list(c, alphabet);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      return out;
    }
    case K::TensorProduct: {
      std::vector<MultiPoly> out{MultiPoly(1)};
      for (auto& c : f.children) {
        auto sub = weight_list(c, alphabet);
        std::vector<MultiPoly> next;
        next.reserve(out.size() * sub.size());
        for (auto& a : out)
          for (auto& b : sub) next.push_back(a * b);
        out = std::move(next);
      }
      return out;
    }
    case K::Compose:
      return weight_list(f.children[0], weight_list(f.children[1], alphabet));
  }
  return {};
}

}  // namespace detail

// Character: the multiset of weights of the diagonal torus acting on F(Z^n),
// as a symmetric polynomial.
inline SymPoly char_functor(const FunctorSpec& f, int n) {
  std::vector<MultiPoly> alphabet;
  for (int i = 0; i < n; ++i) alphabet.push_back(MultiPoly::variable(i));
  SymPoly out;
  out.nvars = n;
  for (auto& w : detail::weight_list(f, alphabet)) out.p += w;
  return out;
}

// The composition law at the character level:
// char(Lambda^r o Lambda^s) = P_{r,s}(e_1, ..., e_rs) in rs variables.
inline bool verify_axiom3_char(long r, long s) {
  int n = (int)(r * s);
  FunctorSpec f =
      FunctorSpec::compose(FunctorSpec::lambda(r), FunctorSpec::lambda(s));
  SymPoly lhs = char_functor(f, n);
  EBasisPoly prs;
  prs.p = universal_Prs(r, s);
  SymPoly rhs = expand_e_poly(prs, n);
  return lhs == rhs;
}

// ---------------------------------------------------------------------------
// axioms on the universal ring, degree by degree

struct LambdaCheckItem {
  std::string name;
  bool pass = false;
};

struct LambdaCheckReport {
  std::vector<LambdaCheckItem> items;
  bool all_pass() const {
    for (auto& i : items)
      if (!i.pass) return false;
    return true;
  }
};

// substitute X_1 = 1, X_2 = ... = X_r = 0 into P_r and compare with Y_r
inline bool pr_substitution_identity(long r) {
  MultiPoly pr = universal_Pr(r);
  MultiPoly result;
  for (auto& [e, v] : pr.terms()) {
    bool drop = false;
    MultiPoly::Exp ye;
    for (size_t i = 0; i < e.size(); ++i) {
      if ((int)i >= r) {
        if (ye.size() < e.size() - r) ye.resize(e.size() - r, 0);
        ye[i - r] = e[i];
      } else if (i >= 1 && e[i] > 0) {
        drop = true;
        break;
      }
    }
    if (!drop) result.add_term(ye, v);
  }
  MultiPoly yr = MultiPoly::variable((int)r - 1);
  return result == yr;
}

// coefficientwise check of lambda_t multiplicativity up to degree rmax:
// sum_r P_r(e(x), e(y)) t^r = prod_{i,j} (1 + x_i y_j t)
inline bool lambda_t_multiplicative(long rmax) {
  int a = (int)rmax;
  // variables: x_0..x_{a-1}, y_0..y_{a-1}
  std::vector<MultiPoly> ex(a + 1), ey(a + 1);
  for (int k = 1; k <= a; ++k) {
    ex[k] = elementary_sym(k, a);
    MultiPoly y;
    for (auto& [e, v] : ex[k].terms()) {
      MultiPoly::Exp t(a + e.size(), 0);
      for (size_t i = 0; i < e.size(); ++i) t[a + i] = e[i];
      y.add_term(t, v);
    }
    ey[k] = y;
  }
  // coefficient of t^r in the product, computed by direct expansion
  std::vector<MultiPoly> tcoeff(rmax + 1);
  tcoeff[0] = MultiPoly(1);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < a; ++j) {
      MultiPoly::Exp xy(a + a, 0);
      xy[i] += 1;
      xy[a + j] += 1;
      MultiPoly m = MultiPoly::monomial(xy, BigInt(1));
      for (long r = rmax; r >= 1; --r)
        tcoeff[r] = tcoeff[r] + tcoeff[r - 1] * m;
    }
  for (long r = 1; r <= rmax; ++r) {
    MultiPoly pr = universal_Pr(r);
    // substitute X_k -> e_k(x), Y_k -> e_k(y); P_r lives in 2r variables
    std::map<int, MultiPoly> sub;
    for (int k = 1; k <= (int)r; ++k) {
      sub[k - 1] = (k <= a) ? ex[k] : MultiPoly(0);
      sub[(int)r + k - 1] = (k <= a) ? ey[k] : MultiPoly(0);
    }
    if (!(pr.substitute(sub) == tcoeff[r])) return false;
  }
  return true;
}

inline LambdaCheckReport lambda_universal_check(long max_degree) {
  if (max_degree > 8)
    throw std::invalid_argument("lambda_universal_check: max_degree <= 8");
  LambdaCheckReport rep;
  auto push = [&](const std::string& n, bool ok) { rep.items.push_back({n, ok}); };
  // lambda^1 is the identity: P_{1,1} = X_1 and P_1 = X_1 Y_1
  push("lambda^1 = id", universal_Prs(1, 1) == MultiPoly::variable(0) &&
                            universal_Pr(1) ==
                                MultiPoly::variable(0) * MultiPoly::variable(1));
  // axiom (1): e_r of a disjoint union expands by the addition formula
  for (long r = 1; r <= std::min(max_degree, 4l); ++r) {
    int n = (int)r;
    MultiPoly lhs = elementary_sym((int)r, 2 * n);
    MultiPoly rhs;
    for (long i = 0; i <= r; ++i) {
      // e_i in x_0..x_{n-1} times e_{r-i} in x_n..x_{2n-1}
      MultiPoly left = elementary_sym((int)i, n);
      MultiPoly shifted = elementary_sym((int)(r - i), n);
      MultiPoly right;
      for (auto& [e, v] : shifted.terms()) {
        MultiPoly::Exp t(n + e.size(), 0);
        for (size_t k = 0; k < e.size(); ++k) t[n + k] = e[k];
        right.add_term(t, v);
      }
      rhs += left * right;
    }
    push("axiom 1 at degree " + std::to_string(r), lhs == rhs);
  }
  // axiom (2): the substitution identity and t-multiplicativity
  for (long r = 1; r <= std::min(max_degree, 4l); ++r)
    push("axiom 2 substitution identity, r = " + std::to_string(r),
         pr_substitution_identity(r));
  push("axiom 2 t-multiplicativity", lambda_t_multiplicative(std::min(max_degree, 4l)));
  if (max_degree >= 2) {
    // lambda^2 of the squared generator: e_2 of the ordered-pair alphabet
    // {x_i x_j} against P_2 evaluated on a single alphabet
    int n = 4;
    std::vector<MultiPoly::Exp> alphabet;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        MultiPoly::Exp e(n, 0);
        e[i] += 1;
        e[j] += 1;
        alphabet.push_back(e);
      }
    MultiPoly lhs;
    for (size_t i = 0; i < alphabet.size(); ++i)
      for (size_t j = i + 1; j < alphabet.size(); ++j) {
        MultiPoly::Exp e(n, 0);
        for (int k = 0; k < n; ++k) e[k] = alphabet[i][k] + alphabet[j][k];
        lhs.add_term(e, BigInt(1));
      }
    std::map<int, MultiPoly> sub;
    sub[0] = elementary_sym(1, n);
    sub[1] = elementary_sym(2, n);
    sub[2] = elementary_sym(1, n);
    sub[3] = elementary_sym(2, n);
    push("axiom 2 on a squared generator", universal_Pr(2).substitute(sub) == lhs);
  }
  // axiom (3) through characters
  for (long r = 2; r <= 3; ++r)
    for (long s = 2; s <= 3; ++s)
      if (r * s <= max_degree)
        push("axiom 3 at (r,s) = (" + std::to_string(r) + "," + std::to_string(s) + ")",
             verify_axiom3_char(r, s));
  return rep;
}

}  // namespace lambdak
