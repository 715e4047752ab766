#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "lambdak/linalg.hpp"

namespace lambdak {

using MultiIndex = std::vector<int>;

// Kronecker product, row-major pair order: (i1,i2) -> i1*rows(B)+i2.
inline IntMatrix kron(const IntMatrix& A, const IntMatrix& B) {
  IntMatrix r(A.rows() * B.rows(), A.cols() * B.cols());
  for (long i = 0; i < A.rows(); ++i)
    for (long j = 0; j < A.cols(); ++j) {
      if (A(i, j).is_zero()) continue;
      for (long k = 0; k < B.rows(); ++k)
        for (long l = 0; l < B.cols(); ++l)
          r(i * B.rows() + k, j * B.cols() + l) = A(i, j) * B(k, l);
    }
  return r;
}

inline IntMatrix direct_sum_mat(const IntMatrix& A, const IntMatrix& B) {
  IntMatrix r(A.rows() + B.rows(), A.cols() + B.cols());
  for (long i = 0; i < A.rows(); ++i)
    for (long j = 0; j < A.cols(); ++j) r(i, j) = A(i, j);
  for (long i = 0; i < B.rows(); ++i)
    for (long j = 0; j < B.cols(); ++j) r(A.rows() + i, A.cols() + j) = B(i, j);
  return r;
}

// Z_{>=0}^n-graded collection of free-module ranks, finitely supported.
struct GradedObject {
  int dimension = 1;
  std::map<MultiIndex, long> ranks;  // only nonzero entries

  long rank(const MultiIndex& c) const {
    auto it = ranks.find(c);
    return it == ranks.end() ? 0 : it->second;
  }
  bool operator==(const GradedObject& o) const {
    return dimension == o.dimension && ranks == o.ranks;
  }
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Bounded non-negative chain complex of free modules.
struct ChainComplex {
  std::vector<long> ranks;     // degree -> rank
  std::vector<IntMatrix> d_;   // d_[i]: C_i -> C_{i-1}; d_[0] unused

  ChainComplex() = default;
  explicit ChainComplex(std::vector<long> r) : ranks(std::move(r)) {
    d_.resize(ranks.size());
    for (size_t i = 1; i < ranks.size(); ++i)
      d_[i] = IntMatrix::zero(ranks[i - 1], ranks[i]);
  }

  long rank(long i) const {
    return (i >= 0 && i < (long)ranks.size()) ? ranks[i] : 0;
  }
  long top() const {
    for (long i = (long)ranks.size(); i-- > 0;)
      if (ranks[i] > 0) return i;
    return 0;
  }
  long length() const { return top(); }
  bool is_zero() const {
    for (long r : ranks)
      if (r) return false;
    return true;
  }

  IntMatrix diff(long i) const {
    if (i >= 1 && i < (long)d_.size()) return d_[i];
    return IntMatrix::zero(rank(i - 1), rank(i));
  }
  void set_diff(long i, IntMatrix m) {
    if (i < 1 || i >= (long)d_.size())
      throw std::invalid_argument("set_diff: degree out of range");
    d_[i] = std::move(m);
  }

  GradedObject graded() const {
    GradedObject g;
    g.dimension = 1;
    for (long i = 0; i < (long)ranks.size(); ++i)
      if (ranks[i]) g.ranks[{(int)i}] = ranks[i];
    return g;
  }
  bool operator==(const ChainComplex& o) const {
    long t = std::max(top(), o.top());
    for (long i = 0; i <= t; ++i)
      if (rank(i) != o.rank(i) || diff(i + 1) != o.diff(i + 1)) return false;
    return rank(0) == o.rank(0);
  }
};

// One graded object with two differentials.
struct BinaryComplex {
  std::vector<long> ranks;
  std::vector<IntMatrix> d_, dt_;

  BinaryComplex() = default;
  explicit BinaryComplex(std::vector<long> r) : ranks(std::move(r)) {
    d_.resize(ranks.size());
    dt_.resize(ranks.size());
    for (size_t i = 1; i < ranks.size(); ++i)
      d_[i] = dt_[i] = IntMatrix::zero(ranks[i - 1], ranks[i]);
  }
  static BinaryComplex diagonal(const ChainComplex& c) {
    BinaryComplex b;
    b.ranks = c.ranks;
    b.d_ = c.d_;
    b.dt_ = c.d_;
    return b;
  }
  static BinaryComplex from(const ChainComplex& top, const ChainComplex& bottom) {
    if (!(top.graded() == bottom.graded()))
      throw std::invalid_argument("BinaryComplex: graded objects differ");
    BinaryComplex b;
    long t = std::max(top.top(), bottom.top());
    for (long i = 0; i <= t; ++i) b.ranks.push_back(top.rank(i));
    b.d_.resize(b.ranks.size());
    b.dt_.resize(b.ranks.size());
    for (long i = 1; i <= t; ++i) {
      b.d_[i] = top.diff(i);
      b.dt_[i] = bottom.diff(i);
    }
    return b;
  }

  long rank(long i) const {
    return (i >= 0 && i < (long)ranks.size()) ? ranks[i] : 0;
  }
  long top() const {
    for (long i = (long)ranks.size(); i-- > 0;)
      if (ranks[i] > 0) return i;
    return 0;
  }
  bool is_zero() const {
    for (long r : ranks)
      if (r) return false;
    return true;
  }

  ChainComplex chain(int which) const {
    ChainComplex c;
    c.ranks = ranks;
    c.d_ = (which == 0) ? d_ : dt_;
    return c;
  }
  IntMatrix diff(int which, long i) const { return chain(which).diff(i); }

  bool is_diagonal() const {
    for (size_t i = 1; i < ranks.size(); ++i)
      if (!(d_[i] == dt_[i])) return false;
    return true;
  }
  bool operator==(const BinaryComplex& o) const {
    return chain(0) == o.chain(0) && chain(1) == o.chain(1);
  }
};

// First-quadrant bicomplex with the sign convention that makes Tot a
// complex: vertical differential carries (-1)^j on column j.
struct Bicomplex {
  std::vector<std::vector<long>> ranks;          // [i][j]
  std::map<MultiIndex, IntMatrix> d_ver, d_hor;  // (i,j)->(i-1,j), (i,j)->(i,j-1)

  long rank(long i, long j) const {
    if (i < 0 || j < 0 || i >= (long)ranks.size()) return 0;
    if (j >= (long)ranks[i].size()) return 0;
    return ranks[i][j];
  }
  long rows() const { return (long)ranks.size(); }
  long cols() const {
    long c = 0;
    for (auto& r : ranks) c = std::max(c, (long)r.size());
    return c;
  }
  IntMatrix ver(long i, long j) const {
    auto it = d_ver.find({(int)i, (int)j});
    return it == d_ver.end() ? IntMatrix::zero(rank(i - 1, j), rank(i, j)) : it->second;
  }
  IntMatrix hor(long i, long j) const {
    auto it = d_hor.find({(int)i, (int)j});
    return it == d_hor.end() ? IntMatrix::zero(rank(i, j - 1), rank(i, j)) : it->second;
  }
};

// n-dimensional multicomplex: one differential per direction, all pairs of
// differentials commuting.
struct MultiComplex {
  int dim = 1;
  std::map<MultiIndex, long> ranks;                    // nonzero cells
  std::vector<std::map<MultiIndex, IntMatrix>> diff;   // diff[k][c]: c -> c - e_k

  MultiComplex() : diff(1) {}
  explicit MultiComplex(int n) : dim(n), diff(n) {}

  long rank(const MultiIndex& c) const {
    for (int x : c)
      if (x < 0) return 0;
    auto it = ranks.find(c);
    return it == ranks.end() ? 0 : it->second;
  }
  void set_rank(const MultiIndex& c, long r) {
    if (r) ranks[c] = r;
  }
  IntMatrix d(int k, const MultiIndex& c) const {
    auto it = diff[k].find(c);
    if (it != diff[k].end()) return it->second;
    MultiIndex t = c;
    t[k] -= 1;
    return IntMatrix::zero(rank(t), rank(c));
  }
  void set_d(int k, const MultiIndex& c, IntMatrix m) {
    if (!m.is_zero()) diff[k][c] = std::move(m);
  }
  bool is_zero() const { return ranks.empty(); }
  int support_bound(int k) const {
    int b = -1;
    for (auto& [c, r] : ranks) b = std::max(b, c[k]);
    return b;
  }

  GradedObject graded() const {
    GradedObject g;
    g.dimension = dim;
    g.ranks = ranks;
    return g;
  }
};

// n-dimensional binary multicomplex: a pair of differential families.
struct BinaryMultiComplex {
  int dim = 1;
  std::map<MultiIndex, long> ranks;
  std::array<std::vector<std::map<MultiIndex, IntMatrix>>, 2> fam;  // [family][dir]

  BinaryMultiComplex() { fam[0].resize(1), fam[1].resize(1); }
  explicit BinaryMultiComplex(int n) : dim(n) {
    fam[0].resize(n);
    fam[1].resize(n);
  }

  long rank(const MultiIndex& c) const {
    for (int x : c)
      if (x < 0) return 0;
    auto it = ranks.find(c);
    return it == ranks.end() ? 0 : it->second;
  }
  IntMatrix d(int family, int k, const MultiIndex& c) const {
    auto it = fam[family][k].find(c);
    if (it != fam[family][k].end()) return it->second;
    MultiIndex t = c;
    t[k] -= 1;
    return IntMatrix::zero(rank(t), rank(c));
  }
  void set_d(int family, int k, const MultiIndex& c, IntMatrix m) {
    if (!m.is_zero()) fam[family][k][c] = std::move(m);
  }

  // Pick one family per direction; bit k of mask selects for direction k.
  MultiComplex choice(unsigned mask) const {
    MultiComplex x(dim);
    x.ranks = ranks;
    for (int k = 0; k < dim; ++k) x.diff[k] = fam[(mask >> k) & 1][k];
    return x;
  }
  bool is_diagonal_in(int k) const {
    for (auto& [c, r] : ranks) {
      if (!(d(0, k, c) == d(1, k, c))) return false;
    }
    return true;
  }
  bool is_diagonal() const {
    for (int k = 0; k < dim; ++k)
      if (is_diagonal_in(k)) return true;
    return false;
  }

  static BinaryMultiComplex from_binary(const BinaryComplex& b) {
    BinaryMultiComplex x(1);
    for (long i = 0; i <= b.top(); ++i)
      if (b.rank(i)) x.ranks[{(int)i}] = b.rank(i);
    for (long i = 1; i <= b.top(); ++i) {
      x.set_d(0, 0, {(int)i}, b.diff(0, i));
      x.set_d(1, 0, {(int)i}, b.diff(1, i));
    }
    return x;
  }
  BinaryComplex to_binary() const {
    if (dim != 1) throw std::invalid_argument("to_binary: dimension must be 1");
    int t = support_bound();
    BinaryComplex b(std::vector<long>(t + 1, 0));
    for (auto& [c, r] : ranks) b.ranks[c[0]] = r;
    for (int i = 1; i <= t; ++i) {
      b.d_[i] = d(0, 0, {i});
      b.dt_[i] = d(1, 0, {i});
    }
    return b;
  }
  int support_bound() const {
    int b = 0;
    for (auto& [c, r] : ranks)
      for (int x : c) b = std::max(b, x);
    return b;
  }
};

inline MultiComplex chain_to_multi(const ChainComplex& c) {
  MultiComplex x(1);
  for (long i = 0; i <= c.top(); ++i)
    if (c.rank(i)) x.ranks[{(int)i}] = c.rank(i);
  for (long i = 1; i <= c.top(); ++i) x.set_d(0, {(int)i}, c.diff(i));
  return x;
}

inline ChainComplex multi_to_chain(const MultiComplex& x) {
  if (x.dim != 1) throw std::invalid_argument("multi_to_chain: dimension must be 1");
  int t = 0;
  for (auto& [c, r] : x.ranks) t = std::max(t, c[0]);
  std::vector<long> ranks(t + 1, 0);
  for (auto& [cell, r] : x.ranks) ranks[cell[0]] = r;
  ChainComplex c(ranks);
  for (int i = 1; i <= t; ++i) {
    MultiIndex cell{i};
    if (c.rank(i) && c.rank(i - 1)) c.set_diff(i, x.d(0, cell));
  }
  return c;
}

// ---------------------------------------------------------------------------
// validation

inline ValidationReport validate(const ChainComplex& c) {
  ValidationReport rep;
  for (long i = 1; i <= c.top() + 1; ++i) {
    IntMatrix di = c.diff(i);
    if (di.rows() != c.rank(i - 1) || di.cols() != c.rank(i))
      rep.violations.push_back("shape mismatch of d at degree " + std::to_string(i));
  }
  for (long i = 2; i <= c.top() + 1; ++i)
    if (!IntMatrix(c.diff(i - 1) * c.diff(i)).is_zero())
      rep.violations.push_back("d.d != 0 at degree " + std::to_string(i));
  return rep;
}

inline ValidationReport validate(const BinaryComplex& b) {
  ValidationReport rep;
  auto r0 = validate(b.chain(0)), r1 = validate(b.chain(1));
  for (auto& v : r0.violations) rep.violations.push_back("d: " + v);
  for (auto& v : r1.violations) rep.violations.push_back("d~: " + v);
  return rep;
}

inline std::string cell_str(const MultiIndex& c) {
  std::string s = "(";
  for (size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + ")";
}

inline ValidationReport validate(const MultiComplex& x) {
  ValidationReport rep;
  for (auto& [c, r] : x.ranks) {
    for (int v : c)
      if (v < 0) rep.violations.push_back("negative support at " + cell_str(c));
    if ((int)c.size() != x.dim)
      rep.violations.push_back("bad index arity at " + cell_str(c));
  }
  for (int k = 0; k < x.dim; ++k)
    for (auto& [c, m] : x.diff[k]) {
      MultiIndex t = c;
      t[k] -= 1;
      if (m.rows() != x.rank(t) || m.cols() != x.rank(c))
        rep.violations.push_back("shape mismatch, direction " + std::to_string(k + 1) +
                                 " at " + cell_str(c));
    }
  // d^k d^k = 0 along every line
  for (int k = 0; k < x.dim; ++k)
    for (auto& [c, m] : x.diff[k]) {
      MultiIndex t = c;
      t[k] -= 1;
      if (t[k] >= 1 && !IntMatrix(x.d(k, t) * m).is_zero())
        rep.violations.push_back("d.d != 0 in direction " + std::to_string(k + 1) +
                                 " at " + cell_str(c));
    }
  // commutation d^a d^b = d^b d^a for a != b
  for (int a = 0; a < x.dim; ++a)
    for (int b = a + 1; b < x.dim; ++b)
      for (auto& [c, r] : x.ranks) {
        if (c[a] < 1 || c[b] < 1) continue;
        MultiIndex ca = c, cb = c;
        ca[a] -= 1;
        cb[b] -= 1;
        if (!(IntMatrix(x.d(b, ca) * x.d(a, c)) == IntMatrix(x.d(a, cb) * x.d(b, c))))
          rep.violations.push_back("d^" + std::to_string(a + 1) + "d^" +
                                   std::to_string(b + 1) + " = d^" +
                                   std::to_string(b + 1) + "d^" + std::to_string(a + 1) +
                                   " fails at " + cell_str(c));
      }
  return rep;
}

inline ValidationReport validate(const BinaryMultiComplex& x) {
  ValidationReport rep;
  for (unsigned mask = 0; mask < (1u << x.dim); ++mask) {
    auto r = validate(x.choice(mask));
    for (auto& v : r.violations)
      rep.violations.push_back("choice " + std::to_string(mask) + ": " + v);
  }
  return rep;
}

inline ValidationReport validate(const Bicomplex& b) {
  ValidationReport rep;
  for (long i = 0; i < b.rows(); ++i)
    for (long j = 0; j < b.cols(); ++j) {
      if (b.rank(i, j) == 0 && b.rank(i - 1, j) == 0 && b.rank(i, j - 1) == 0) continue;
      if (i >= 2 && !IntMatrix(b.ver(i - 1, j) * b.ver(i, j)).is_zero())
        rep.violations.push_back("ver.ver != 0 at (" + std::to_string(i) + "," +
                                 std::to_string(j) + ")");
      if (j >= 2 && !IntMatrix(b.hor(i, j - 1) * b.hor(i, j)).is_zero())
        rep.violations.push_back("hor.hor != 0 at (" + std::to_string(i) + "," +
                                 std::to_string(j) + ")");
      if (i >= 1 && j >= 1 &&
          !IntMatrix(b.hor(i - 1, j) * b.ver(i, j) + b.ver(i, j - 1) * b.hor(i, j))
               .is_zero())
        rep.violations.push_back("signed square fails at (" + std::to_string(i) + "," +
                                 std::to_string(j) + ")");
    }
  return rep;
}

// ---------------------------------------------------------------------------
// homology and acyclicity

inline FgAbGroup homology(const ChainComplex& c, long i) {
  IntMatrix di = c.diff(i);
  if (i == 0) di = IntMatrix::zero(0, c.rank(0));
  IntMatrix K = (i == 0) ? IntMatrix::identity(c.rank(0)) : kernel_basis(di);
  auto Y = solve(K, c.diff(i + 1));
  if (!Y.has_value())
    throw std::logic_error("homology: boundaries do not lie in cycles (d.d != 0?)");
  return cokernel(*Y);
}

// Over Z a bounded complex of free modules is acyclic exactly when every
// differential has unit invariant factors (so images are saturated and the
// quotients stay free) and the ranks add up in each degree.
inline bool is_acyclic(const ChainComplex& c) {
  long t = c.top();
  std::vector<long> drank(t + 2, 0);
  for (long i = 1; i <= t; ++i) {
    auto fac = snf_invariant_factors(c.diff(i));
    for (const auto& f : fac)
      if (!f.is_one()) return false;
    drank[i] = (long)fac.size();
  }
  for (long i = 0; i <= t; ++i)
    if (drank[i] + drank[i + 1] != c.rank(i)) return false;
  return true;
}

inline bool is_acyclic(const BinaryComplex& b) {
  return is_acyclic(b.chain(0)) && is_acyclic(b.chain(1));
}

// Extract the line of a multicomplex in direction k through a base cell.
inline ChainComplex line_of(const MultiComplex& x, int k, MultiIndex base) {
  int t = x.support_bound(k);
  std::vector<long> ranks;
  for (int i = 0; i <= t; ++i) {
    base[k] = i;
    ranks.push_back(x.rank(base));
  }
  ChainComplex c(ranks);
  for (int i = 1; i <= t; ++i) {
    base[k] = i;
    if (c.rank(i) && c.rank(i - 1)) c.set_diff(i, x.d(k, base));
  }
  return c;
}

// Acyclic multicomplex: every line in every direction is exact.
inline bool is_acyclic(const MultiComplex& x) {
  for (int k = 0; k < x.dim; ++k) {
    std::map<MultiIndex, bool> seen;
    for (auto& [c, r] : x.ranks) {
      MultiIndex base = c;
      base[k] = 0;
      if (seen.count(base)) continue;
      seen[base] = true;
      if (!is_acyclic(line_of(x, k, base))) return false;
    }
  }
  return true;
}

inline bool is_acyclic(const BinaryMultiComplex& x) {
  for (unsigned mask = 0; mask < (1u << x.dim); ++mask)
    if (!is_acyclic(x.choice(mask))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// shift, cone, restrict, tot

inline BinaryComplex shift(const BinaryComplex& b, long k) {
  std::vector<long> ranks(b.top() + k + 1, 0);
  for (long i = 0; i <= b.top(); ++i) ranks[i + k] = b.rank(i);
  BinaryComplex r(ranks);
  BigInt sgn(k % 2 == 0 ? 1 : -1);
  for (long i = 1; i <= b.top(); ++i) {
    r.d_[i + k] = IntMatrix(sgn * b.diff(0, i));
    r.dt_[i + k] = IntMatrix(sgn * b.diff(1, i));
  }
  return r;
}

namespace detail {
inline std::vector<IntMatrix> cone_family(const ChainComplex& c, long t) {
  // cone(C)_i = C_{i-1} (+) C_i with differential [[-d,0],[-1,d]]
  std::vector<IntMatrix> d(t + 2);
  for (long i = 1; i <= t + 1; ++i) {
    long r0 = (i - 2 >= 0 ? c.rank(i - 2) : 0), r1 = c.rank(i - 1);
    long cA = c.rank(i - 1), cB = c.rank(i);
    IntMatrix m(r0 + r1, cA + cB);
    IntMatrix dtop = c.diff(i - 1), dbot = c.diff(i);
    for (long a = 0; a < r0; ++a)
      for (long b = 0; b < cA; ++b) m(a, b) = -dtop(a, b);
    for (long a = 0; a < r1; ++a) m(r0 + a, a) = BigInt(-1);
    for (long a = 0; a < r1; ++a)
      for (long b = 0; b < cB; ++b) m(r0 + a, cA + b) = dbot(a, b);
    d[i] = std::move(m);
  }
  return d;
}
}  // namespace detail

inline BinaryComplex cone(const BinaryComplex& b) {
  long t = b.top();
  std::vector<long> ranks(t + 2, 0);
  for (long i = 0; i <= t + 1; ++i) ranks[i] = b.rank(i - 1) + b.rank(i);
  BinaryComplex r(ranks);
  r.d_ = detail::cone_family(b.chain(0), t);
  r.dt_ = detail::cone_family(b.chain(1), t);
  return r;
}

// Degreewise maps of the sequence 0 -> C -> cone(C) -> C[1] -> 0.
struct ConeSequence {
  BinaryComplex sub, total, quotient;
  std::vector<IntMatrix> inclusion, projection;
};

inline ConeSequence cone_sequence(const BinaryComplex& b) {
  ConeSequence s;
  s.sub = b;
  s.total = cone(b);
  s.quotient = shift(b, 1);
  long t = s.total.top();
  for (long i = 0; i <= t; ++i) {
    long rA = b.rank(i - 1), rB = b.rank(i);
    IntMatrix inc(rA + rB, rB), prj(rA, rA + rB);
    for (long a = 0; a < rB; ++a) inc(rA + a, a) = BigInt(1);
    for (long a = 0; a < rA; ++a) prj(a, a) = BigInt(1);
    s.inclusion.push_back(inc);
    s.projection.push_back(prj);
  }
  return s;
}

inline BinaryComplex restrict(const BinaryComplex& b, long hi) {
  long t = std::min(b.top(), hi);
  std::vector<long> ranks(t + 1, 0);
  for (long i = 0; i <= t; ++i) ranks[i] = b.rank(i);
  BinaryComplex r(ranks);
  for (long i = 1; i <= t; ++i) {
    r.d_[i] = b.diff(0, i);
    r.dt_[i] = b.diff(1, i);
  }
  return r;
}

inline ChainComplex restrict(const ChainComplex& c, long hi) {
  long t = std::min(c.top(), hi);
  std::vector<long> ranks(t + 1, 0);
  for (long i = 0; i <= t; ++i) ranks[i] = c.rank(i);
  ChainComplex r(ranks);
  for (long i = 1; i <= t; ++i) r.d_[i] = c.diff(i);
  return r;
}

// The bicomplex P (x) Q with d_ver = d_P (x) (-1)^j and d_hor = 1 (x) d_Q.
inline Bicomplex tensor_bicomplex(const ChainComplex& p, const ChainComplex& q) {
  Bicomplex b;
  long tp = p.top(), tq = q.top();
  b.ranks.assign(tp + 1, std::vector<long>(tq + 1, 0));
  for (long i = 0; i <= tp; ++i)
    for (long j = 0; j <= tq; ++j) b.ranks[i][j] = p.rank(i) * q.rank(j);
  for (long i = 1; i <= tp; ++i)
    for (long j = 0; j <= tq; ++j) {
      BigInt s(j % 2 == 0 ? 1 : -1);
      b.d_ver[{(int)i, (int)j}] =
          IntMatrix(s * kron(p.diff(i), IntMatrix::identity(q.rank(j))));
    }
  for (long i = 0; i <= tp; ++i)
    for (long j = 1; j <= tq; ++j)
      b.d_hor[{(int)i, (int)j}] = kron(IntMatrix::identity(p.rank(i)), q.diff(j));
  return b;
}

// Total complex; rejects bicomplexes violating the sign convention.
inline ChainComplex tot(const Bicomplex& b) {
  auto rep = validate(b);
  if (!rep.ok())
    throw std::invalid_argument("tot: invalid bicomplex: " + rep.violations.front());
  long R = b.rows(), C = b.cols();
  long N = R + C;
  std::vector<long> ranks(N + 1, 0);
  // offsets[n][i]: offset of cell (i, n-i) inside Tot_n (i ascending)
  std::vector<std::map<long, long>> offsets(N + 1);
  for (long n = 0; n <= N; ++n) {
    long off = 0;
    for (long i = 0; i <= n; ++i) {
      long r = b.rank(i, n - i);
      if (r) offsets[n][i] = off;
      off += r;
    }
    ranks[n] = off;
  }
  ChainComplex out(ranks);
  for (long n = 1; n <= N; ++n) {
    IntMatrix m(out.rank(n - 1), out.rank(n));
    for (auto& [i, off] : offsets[n]) {
      long j = n - i;
      IntMatrix v = b.ver(i, j);  // -> (i-1, j)
      if (v.rows() && offsets[n - 1].count(i - 1)) {
        long roff = offsets[n - 1][i - 1];
        for (long a = 0; a < v.rows(); ++a)
          for (long c = 0; c < v.cols(); ++c) m(roff + a, off + c) += v(a, c);
      }
      IntMatrix h = b.hor(i, j);  // -> (i, j-1)
      if (h.rows() && offsets[n - 1].count(i)) {
        long roff = offsets[n - 1][i];
        for (long a = 0; a < h.rows(); ++a)
          for (long c = 0; c < h.cols(); ++c) m(roff + a, off + c) += h(a, c);
      }
    }
    out.set_diff(n, std::move(m));
  }
  return out;
}

// Commuting tensor grid of two complexes as a dimension-2 multicomplex.
inline MultiComplex grid_tensor(const ChainComplex& p, const ChainComplex& q) {
  MultiComplex x(2);
  for (long i = 0; i <= p.top(); ++i)
    for (long j = 0; j <= q.top(); ++j)
      x.set_rank({(int)i, (int)j}, p.rank(i) * q.rank(j));
  for (long i = 1; i <= p.top(); ++i)
    for (long j = 0; j <= q.top(); ++j)
      if (p.rank(i) && q.rank(j))
        x.set_d(0, {(int)i, (int)j},
                kron(p.diff(i), IntMatrix::identity(q.rank(j))));
  for (long i = 0; i <= p.top(); ++i)
    for (long j = 1; j <= q.top(); ++j)
      if (p.rank(i) && q.rank(j))
        x.set_d(1, {(int)i, (int)j},
                kron(IntMatrix::identity(p.rank(i)), q.diff(j)));
  return x;
}

inline BinaryMultiComplex binary_grid_tensor(const BinaryComplex& p,
                                             const BinaryComplex& q) {
  BinaryMultiComplex x(2);
  for (long i = 0; i <= p.top(); ++i)
    for (long j = 0; j <= q.top(); ++j)
      if (p.rank(i) && q.rank(j)) x.ranks[{(int)i, (int)j}] = p.rank(i) * q.rank(j);
  for (int f = 0; f < 2; ++f) {
    for (long i = 1; i <= p.top(); ++i)
      for (long j = 0; j <= q.top(); ++j)
        if (p.rank(i) && q.rank(j))
          x.set_d(f, 0, {(int)i, (int)j},
                  kron(p.diff(f, i), IntMatrix::identity(q.rank(j))));
    for (long i = 0; i <= p.top(); ++i)
      for (long j = 1; j <= q.top(); ++j)
        if (p.rank(i) && q.rank(j))
          x.set_d(f, 1, {(int)i, (int)j},
                  kron(IntMatrix::identity(p.rank(i)), q.diff(f, j)));
  }
  return x;
}

// ---------------------------------------------------------------------------
// chain maps and contractions

inline bool is_chain_map(const ChainComplex& src, const ChainComplex& dst,
                         const std::vector<IntMatrix>& f) {
  long t = std::max(src.top(), dst.top());
  auto comp = [&](long i) -> IntMatrix {
    if (i >= 0 && i < (long)f.size()) return f[i];
    return IntMatrix::zero(dst.rank(i), src.rank(i));
  };
  for (long i = 1; i <= t + 1; ++i)
    if (!(IntMatrix(dst.diff(i) * comp(i)) == IntMatrix(comp(i - 1) * src.diff(i))))
      return false;
  return true;
}

// Splittings s_i with d s d = d for a bounded acyclic complex of free
// modules, normalized so that j r + t q = 1 per splice; yields a contraction.
struct Contraction {
  std::vector<IntMatrix> h;  // h[i]: C_i -> C_{i+1}, d h + h d = 1
};

inline Contraction contraction(const ChainComplex& c) {
  if (!is_acyclic(c)) throw std::invalid_argument("contraction: complex not acyclic");
  long t = c.top();
  // Z_i = im d_i with its saturated basis; q_i the corestriction of d_i.
  std::vector<IntMatrix> Z(t + 3), q(t + 3), r(t + 3), tmat(t + 3);
  for (long i = 1; i <= t + 1; ++i) {
    Z[i] = image_basis(c.diff(i));
    q[i] = *solve(Z[i], c.diff(i));
  }
  Z[0] = IntMatrix::zero(c.rank(0) > 0 ? 0 : 0, 0);
  q[0] = IntMatrix::zero(0, c.rank(0));
  Z[t + 2] = IntMatrix::zero(c.rank(t + 1), 0);
  q[t + 2] = IntMatrix::zero(0, c.rank(t + 1));
  for (long i = 0; i <= t + 1; ++i) {
    long n = c.rank(i);
    if (Z[i + 1].rows() != n) Z[i + 1] = IntMatrix::zero(n, Z[i + 1].cols());
    r[i] = (Z[i + 1].cols() > 0) ? split_summand(Z[i + 1]) : IntMatrix::zero(0, n);
    IntMatrix rest =
        IntMatrix(IntMatrix::identity(n) - IntMatrix(Z[i + 1] * r[i]));
    if (q[i].rows() > 0) {
      auto sol = solve(IntMatrix(q[i].transpose()), IntMatrix(rest.transpose()));
      if (!sol) throw std::logic_error("contraction: splice solve failed");
      tmat[i] = IntMatrix(sol->transpose());
    } else {
      if (!rest.is_zero()) throw std::logic_error("contraction: degenerate splice");
      tmat[i] = IntMatrix::zero(n, 0);
    }
  }
  Contraction out;
  out.h.resize(t + 1);
  for (long i = 0; i <= t; ++i) out.h[i] = IntMatrix(tmat[i + 1] * r[i]);
  return out;
}

}  // namespace lambdak
