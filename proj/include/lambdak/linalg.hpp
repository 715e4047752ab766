#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lambdak/bigint.hpp"

namespace lambdak {

struct NotASummand : std::runtime_error {
  NotASummand(const std::string& m) : std::runtime_error(m) {}
};

// Base ring selector. PrimeField checks primality at construction.
struct CoeffDomain {
  enum class Kind { Integers, Rationals, PrimeField };
  Kind kind = Kind::Integers;
  long long p = 0;

  static CoeffDomain integers() { return {Kind::Integers, 0}; }
  static CoeffDomain rationals() { return {Kind::Rationals, 0}; }
  static CoeffDomain prime_field(long long p) {
    if (p < 2) throw std::invalid_argument("PrimeField: p must be prime");
    for (long long d = 2; d * d <= p; ++d)
      if (p % d == 0) throw std::invalid_argument("PrimeField: p must be prime");
    return {Kind::PrimeField, p};
  }
  bool operator==(const CoeffDomain& o) const { return kind == o.kind && p == o.p; }
};

// Dense matrix over a commutative ring R. Row-major.
template <class R>
class MatrixT {
public:
  MatrixT() : rows_(0), cols_(0) {}
  MatrixT(long rows, long cols, R fill = R(0))
      : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows * cols), fill) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("matrix: negative shape");
  }

  static MatrixT identity(long n) {
    MatrixT m(n, n);
    for (long i = 0; i < n; ++i) m(i, i) = R(1);
    return m;
  }
  static MatrixT zero(long r, long c) { return MatrixT(r, c); }

  long rows() const { return rows_; }
  long cols() const { return cols_; }

  R& operator()(long i, long j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  const R& operator()(long i, long j) const {
    return e_[static_cast<size_t>(i) * cols_ + j];
  }

  bool is_zero() const {
    for (const auto& x : e_)
      if (!(x == R(0))) return false;
    return true;
  }

  friend bool operator==(const MatrixT& a, const MatrixT& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }
  friend bool operator!=(const MatrixT& a, const MatrixT& b) { return !(a == b); }

  friend MatrixT operator+(const MatrixT& a, const MatrixT& b) {
    require_same_shape(a, b);
    MatrixT r(a.rows_, a.cols_);
    for (size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
    return r;
  }
  friend MatrixT operator-(const MatrixT& a, const MatrixT& b) {
    require_same_shape(a, b);
    MatrixT r(a.rows_, a.cols_);
    for (size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
    return r;
  }
  friend MatrixT operator-(const MatrixT& a) {
    MatrixT r(a.rows_, a.cols_);
    for (size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = R(0) - a.e_[i];
    return r;
  }
  friend MatrixT operator*(const MatrixT& a, const MatrixT& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix: shape mismatch in *");
    MatrixT r(a.rows_, b.cols_);
    for (long i = 0; i < a.rows_; ++i)
      for (long k = 0; k < a.cols_; ++k) {
        const R& aik = a(i, k);
        if (aik == R(0)) continue;
        for (long j = 0; j < b.cols_; ++j) {
          const R& bkj = b(k, j);
          if (bkj == R(0)) continue;
          r(i, j) += aik * bkj;
        }
      }
    return r;
  }
  friend MatrixT operator*(const R& c, const MatrixT& a) {
    MatrixT r(a.rows_, a.cols_);
    for (size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = c * a.e_[i];
    return r;
  }

  MatrixT transpose() const {
    MatrixT r(cols_, rows_);
    for (long i = 0; i < rows_; ++i)
      for (long j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  MatrixT submatrix(const std::vector<long>& rws, const std::vector<long>& cls) const {
    MatrixT r((long)rws.size(), (long)cls.size());
    for (size_t i = 0; i < rws.size(); ++i)
      for (size_t j = 0; j < cls.size(); ++j) r((long)i, (long)j) = (*this)(rws[i], cls[j]);
    return r;
  }

  // [A | B] side by side
  static MatrixT hcat(const MatrixT& a, const MatrixT& b) {
    if (a.rows_ != b.rows_) throw std::invalid_argument("hcat: row mismatch");
    MatrixT r(a.rows_, a.cols_ + b.cols_);
    for (long i = 0; i < a.rows_; ++i) {
      for (long j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
      for (long j = 0; j < b.cols_; ++j) r(i, a.cols_ + j) = b(i, j);
    }
    return r;
  }
  static MatrixT vcat(const MatrixT& a, const MatrixT& b) {
    if (a.cols_ != b.cols_) throw std::invalid_argument("vcat: col mismatch");
    MatrixT r(a.rows_ + b.rows_, a.cols_);
    for (long i = 0; i < a.rows_; ++i)
      for (long j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
    for (long i = 0; i < b.rows_; ++i)
      for (long j = 0; j < a.cols_; ++j) r(a.rows_ + i, j) = b(i, j);
    return r;
  }

  void swap_rows(long i, long j) {
    for (long c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }
  void swap_cols(long i, long j) {
    for (long r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
  }

private:
  long rows_, cols_;
  std::vector<R> e_;

  static void require_same_shape(const MatrixT& a, const MatrixT& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("matrix: shape mismatch");
  }
};

// The exact-arithmetic workhorse: integer matrices (optionally tagged with a
// rationals or prime-field interpretation for rank computations).
struct IntMatrix : MatrixT<BigInt> {
  CoeffDomain domain = CoeffDomain::integers();

  IntMatrix() = default;
  IntMatrix(long r, long c) : MatrixT<BigInt>(r, c) {}
  IntMatrix(const MatrixT<BigInt>& m) : MatrixT<BigInt>(m) {}
  IntMatrix(long r, long c, std::vector<std::vector<long long>> rows_init)
      : MatrixT<BigInt>(r, c) {
    for (long i = 0; i < r; ++i)
      for (long j = 0; j < c; ++j) (*this)(i, j) = BigInt(rows_init[i][j]);
  }
  static IntMatrix identity(long n) { return IntMatrix(MatrixT<BigInt>::identity(n)); }
  static IntMatrix zero(long r, long c) { return IntMatrix(r, c); }
  static IntMatrix diag(std::vector<long long> d) {
    IntMatrix m((long)d.size(), (long)d.size());
    for (size_t i = 0; i < d.size(); ++i) m((long)i, (long)i) = BigInt(d[i]);
    return m;
  }
};

// U * S * V = original, with U, V unimodular and S in Smith form.
struct SmithDecomposition {
  IntMatrix U, S, V;
  IntMatrix Uinv, Vinv;
  long rank = 0;
  std::vector<BigInt> invariant_factors;  // nonzero diagonal of S, in order
};

// Finitely generated abelian group in invariant-factor form.
struct FgAbGroup {
  long free_rank = 0;
  std::vector<BigInt> torsion;  // d1 | d2 | ..., all >= 2

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool operator==(const FgAbGroup& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
  std::string to_string() const {
    if (is_trivial()) return "0";
    std::string s;
    for (long i = 0; i < free_rank; ++i) s += (s.empty() ? "Z" : " + Z");
    for (const auto& d : torsion) s += (s.empty() ? "" : " + ") + ("Z/" + d.to_string());
    return s;
  }
};

namespace detail {

inline void check_integer_domain(const IntMatrix& a, const char* op) {
  if (!(a.domain == CoeffDomain::integers()))
    throw std::invalid_argument(std::string(op) + ": requires the integer domain");
}

}  // namespace detail

// Smith normal form with tracked unimodular transforms and their inverses.
// Pivot choice: minimal nonzero absolute value in the remaining block.
inline SmithDecomposition snf(const IntMatrix& A) {
  detail::check_integer_domain(A, "snf");
  const long m = A.rows(), n = A.cols();
  MatrixT<BigInt> S = A;
  MatrixT<BigInt> U = MatrixT<BigInt>::identity(m), Uinv = U;
  MatrixT<BigInt> V = MatrixT<BigInt>::identity(n), Vinv = V;

  // Row op on S: r_i -= q r_j   =>  U: c_j += q c_i ; Uinv: r_i -= q r_j.
  auto row_sub = [&](long i, long j, const BigInt& q) {
    for (long c = 0; c < n; ++c) S(i, c) -= q * S(j, c);
    for (long r = 0; r < m; ++r) U(r, j) += q * U(r, i);
    for (long c = 0; c < m; ++c) Uinv(i, c) -= q * Uinv(j, c);
  };
  // Col op on S: c_i -= q c_j   =>  V: r_j += q r_i ; Vinv: c_i -= q c_j.
  auto col_sub = [&](long i, long j, const BigInt& q) {
    for (long r = 0; r < m; ++r) S(r, i) -= q * S(r, j);
    for (long c = 0; c < n; ++c) V(j, c) += q * V(i, c);
    for (long r = 0; r < n; ++r) Vinv(r, i) -= q * Vinv(r, j);
  };
  auto row_swap = [&](long i, long j) {
    if (i == j) return;
    S.swap_rows(i, j);
    U.swap_cols(i, j);
    Uinv.swap_rows(i, j);
  };
  auto col_swap = [&](long i, long j) {
    if (i == j) return;
    S.swap_cols(i, j);
    V.swap_rows(i, j);
    Vinv.swap_cols(i, j);
  };
  auto row_negate = [&](long i) {
    for (long c = 0; c < n; ++c) S(i, c) = -S(i, c);
    for (long r = 0; r < m; ++r) U(r, i) = -U(r, i);
    for (long c = 0; c < m; ++c) Uinv(i, c) = -Uinv(i, c);
  };

  long t = 0;
  const long lim = std::min(m, n);
  while (t < lim) {
    // find minimal-|.|, nonzero pivot in S[t.., t..]
    long pi = -1, pj = -1;
    for (long i = t; i < m; ++i)
      for (long j = t; j < n; ++j)
        if (!S(i, j).is_zero() &&
            (pi < 0 || S(i, j).cmp_abs(S(pi, pj)) < 0)) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;  // zero block
    row_swap(t, pi);
    col_swap(t, pj);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (long i = t + 1; i < m; ++i) {
        if (S(i, t).is_zero()) continue;
        BigInt q = S(i, t) / S(t, t);
        row_sub(i, t, q);
        if (!S(i, t).is_zero()) {
          row_swap(t, i);  // remainder is smaller; retry
          clean = false;
        }
      }
      for (long j = t + 1; j < n; ++j) {
        if (S(t, j).is_zero()) continue;
        BigInt q = S(t, j) / S(t, t);
        col_sub(j, t, q);
        if (!S(t, j).is_zero()) {
          col_swap(t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // make the pivot divide every remaining entry
      for (long i = t + 1; i < m && clean; ++i)
        for (long j = t + 1; j < n && clean; ++j)
          if (!(S(i, j) % S(t, t)).is_zero()) {
            row_sub(t, i, BigInt(-1));  // add row i to row t
            clean = false;
          }
    }
    if (S(t, t).sign() < 0) row_negate(t);
    ++t;
  }

  SmithDecomposition out;
  out.S = IntMatrix(S);
  out.U = IntMatrix(U);
  out.Uinv = IntMatrix(Uinv);
  out.V = IntMatrix(V);
  out.Vinv = IntMatrix(Vinv);
  out.rank = 0;
  for (long i = 0; i < lim; ++i)
    if (!S(i, i).is_zero()) {
      out.invariant_factors.push_back(S(i, i));
      ++out.rank;
    }
  return out;
}

// Diagonal of the Smith form only, with no transform tracking; much faster
// than snf when only ranks and invariant factors are needed.
inline std::vector<BigInt> snf_invariant_factors(const IntMatrix& A) {
  detail::check_integer_domain(A, "snf_invariant_factors");
  const long m = A.rows(), n = A.cols();
  MatrixT<BigInt> S = A;
  std::vector<BigInt> out;
  long t = 0;
  const long lim = std::min(m, n);
  while (t < lim) {
    long pi = -1, pj = -1;
    for (long i = t; i < m; ++i)
      for (long j = t; j < n; ++j)
        if (!S(i, j).is_zero() && (pi < 0 || S(i, j).cmp_abs(S(pi, pj)) < 0)) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    if (pi != t) S.swap_rows(t, pi);
    if (pj != t) S.swap_cols(t, pj);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (long i = t + 1; i < m; ++i) {
        if (S(i, t).is_zero()) continue;
        BigInt q = S(i, t) / S(t, t);
        for (long c = t; c < n; ++c) S(i, c) -= q * S(t, c);
        if (!S(i, t).is_zero()) {
          S.swap_rows(t, i);
          clean = false;
        }
      }
      for (long j = t + 1; j < n; ++j) {
        if (S(t, j).is_zero()) continue;
        BigInt q = S(t, j) / S(t, t);
        for (long r = t; r < m; ++r) S(r, j) -= q * S(r, t);
        if (!S(t, j).is_zero()) {
          S.swap_cols(t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      for (long i = t + 1; i < m && clean; ++i)
        for (long j = t + 1; j < n && clean; ++j)
          if (!(S(i, j) % S(t, t)).is_zero()) {
            for (long c = t; c < n; ++c) S(t, c) += S(i, c);
            clean = false;
          }
    }
    out.push_back(S(t, t).abs());
    ++t;
  }
  return out;
}

// Rank over the fraction field: fraction-free Bareiss elimination.
inline long rank_bareiss(const IntMatrix& A) {
  long m = A.rows(), n = A.cols();
  MatrixT<BigInt> M = A;
  BigInt prev(1);
  long r = 0;
  for (long c = 0; c < n && r < m; ++c) {
    long piv = -1;
    for (long i = r; i < m; ++i)
      if (!M(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) M.swap_rows(piv, r);
    for (long i = r + 1; i < m; ++i) {
      for (long j = c + 1; j < n; ++j)
        M(i, j) = (M(r, c) * M(i, j) - M(i, c) * M(r, j)) / prev;
      M(i, c) = BigInt(0);
    }
    prev = M(r, c);
    ++r;
  }
  return r;
}

inline long rank_mod_p(const IntMatrix& A, long long p) {
  long m = A.rows(), n = A.cols();
  std::vector<std::vector<long long>> M(m, std::vector<long long>(n));
  auto norm = [&](const BigInt& x) {
    BigInt r = x % BigInt(p);
    long long v = r.is_small() ? r.small_value() : 0;
    if (!r.is_small()) {
      // reduce a large value digit-wise via string; rare path
      v = 0;
      for (char ch : x.to_string()) {
        if (ch == '-') continue;
        v = (v * 10 + (ch - '0')) % p;
      }
      if (x.sign() < 0) v = -v;
    }
    return ((v % p) + p) % p;
  };
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < n; ++j) M[i][j] = norm(A(i, j));
  auto inv_mod = [&](long long a) {
    long long t = 0, nt = 1, r = p, nr = a % p;
    while (nr) {
      long long q = r / nr;
      std::swap(t -= q * nt, nt);
      std::swap(r -= q * nr, nr);
    }
    return ((t % p) + p) % p;
  };
  long r = 0;
  for (long c = 0; c < n && r < m; ++c) {
    long piv = -1;
    for (long i = r; i < m; ++i)
      if (M[i][c]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(M[piv], M[r]);
    long long inv = inv_mod(M[r][c]);
    for (long i = r + 1; i < m; ++i) {
      long long f = M[i][c] * inv % p;
      if (!f) continue;
      for (long j = c; j < n; ++j) M[i][j] = ((M[i][j] - f * M[r][j]) % p + p) % p;
    }
    ++r;
  }
  return r;
}

// Rank in the matrix's own domain.
inline long rank(const IntMatrix& A) {
  switch (A.domain.kind) {
    case CoeffDomain::Kind::PrimeField:
      return rank_mod_p(A, A.domain.p);
    case CoeffDomain::Kind::Integers:
    case CoeffDomain::Kind::Rationals:
      return rank_bareiss(A);
  }
  return 0;
}

// Basis of ker(A) as columns; over Z the basis is saturated (kernels of
// integer matrices are pure submodules).
inline IntMatrix kernel_basis(const IntMatrix& A) {
  SmithDecomposition d = snf(A);
  long n = A.cols(), r = d.rank;
  std::vector<long> all_rows(n), cls;
  for (long i = 0; i < n; ++i) all_rows[i] = i;
  for (long j = r; j < n; ++j) cls.push_back(j);
  return IntMatrix(d.Vinv.submatrix(all_rows, cls));
}

// Basis of the image lattice of A as columns: U_i * d_i for i < rank.
inline IntMatrix image_basis(const IntMatrix& A) {
  SmithDecomposition d = snf(A);
  long m = A.rows(), r = d.rank;
  IntMatrix B(m, r);
  for (long j = 0; j < r; ++j)
    for (long i = 0; i < m; ++i) B(i, j) = d.U(i, j) * d.S(j, j);
  return B;
}

inline FgAbGroup cokernel(const IntMatrix& A) {
  detail::check_integer_domain(A, "cokernel");
  SmithDecomposition d = snf(A);
  FgAbGroup g;
  g.free_rank = A.rows() - d.rank;
  for (const auto& f : d.invariant_factors)
    if (!(f == BigInt(1))) g.torsion.push_back(f);
  return g;
}

// Solve A X = B over the integers. Returns nullopt when unsolvable.
inline std::optional<IntMatrix> solve(const IntMatrix& A, const IntMatrix& B) {
  if (A.rows() != B.rows()) throw std::invalid_argument("solve: shape mismatch");
  SmithDecomposition d = snf(A);
  IntMatrix Y(d.Uinv * B);
  const long r = d.rank, m = A.rows(), n = A.cols(), k = B.cols();
  IntMatrix Z(n, k);
  for (long j = 0; j < k; ++j) {
    for (long i = 0; i < r; ++i) {
      if (!(Y(i, j) % d.S(i, i)).is_zero()) return std::nullopt;
      Z(i, j) = Y(i, j) / d.S(i, i);
    }
    for (long i = r; i < m; ++i)
      if (!Y(i, j).is_zero()) return std::nullopt;
  }
  return IntMatrix(d.Vinv * Z);
}

// Canonical retraction for a split-summand inclusion, from its SNF.
// Throws NotASummand when some invariant factor exceeds 1.
inline IntMatrix split_summand(const IntMatrix& inclusion) {
  detail::check_integer_domain(inclusion, "split_summand");
  SmithDecomposition d = snf(inclusion);
  if (d.rank != inclusion.cols())
    throw NotASummand("split_summand: inclusion is not injective");
  for (const auto& f : d.invariant_factors)
    if (!f.is_one())
      throw NotASummand("split_summand: invariant factor " + f.to_string() +
                        " exceeds 1");
  // inclusion = U [I;0] V  =>  retraction = Vinv [I 0] Uinv
  long k = inclusion.cols(), m = inclusion.rows();
  IntMatrix P(k, m);
  for (long i = 0; i < k; ++i)
    for (long j = 0; j < m; ++j) P(i, j) = d.Uinv(i, j);
  return IntMatrix(d.Vinv * P);
}

// Complement data for a split submodule: inclusion/projection of a free
// complement N with total = image(incl) (+) N, plus the projection onto the
// submodule coordinates. Deterministic via snf.
struct SplitComplement {
  IntMatrix incl_n;  // m x (m-k): basis of the complement
  IntMatrix proj_n;  // (m-k) x m: projection onto the complement along the image
  IntMatrix proj_sub;  // k x m: retraction onto the submodule coordinates
};

inline SplitComplement split_complement(const IntMatrix& inclusion) {
  SmithDecomposition d = snf(inclusion);
  long m = inclusion.rows(), k = inclusion.cols();
  if (d.rank != k)
    throw NotASummand("split_complement: inclusion is not injective");
  for (const auto& f : d.invariant_factors)
    if (!f.is_one()) throw NotASummand("split_complement: not a direct summand");
  SplitComplement out;
  out.incl_n = IntMatrix(m, m - k);
  for (long j = 0; j < m - k; ++j)
    for (long i = 0; i < m; ++i) out.incl_n(i, j) = d.U(i, k + j);
  out.proj_n = IntMatrix(m - k, m);
  for (long i = 0; i < m - k; ++i)
    for (long j = 0; j < m; ++j) out.proj_n(i, j) = d.Uinv(k + i, j);
  IntMatrix P(k, m);
  for (long i = 0; i < k; ++i)
    for (long j = 0; j < m; ++j) P(i, j) = d.Uinv(i, j);
  out.proj_sub = IntMatrix(d.Vinv * P);
  return out;
}

}  // namespace lambdak
