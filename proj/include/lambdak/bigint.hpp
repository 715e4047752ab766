#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <iosfwd>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lambdak {

// Signed arbitrary-precision integer with an inline int64 fast path.
// Values that fit in 64 bits never allocate; arithmetic promotes to a
// base-2^32 magnitude vector on overflow.
class BigInt {
public:
  BigInt() = default;
  BigInt(long long v) : v_(v) {}
  BigInt(int v) : v_(v) {}
  BigInt(long v) : v_(v) {}

  static BigInt from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("BigInt: empty string");
    size_t i = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
      neg = (s[0] == '-');
      i = 1;
    }
    if (i == s.size()) throw std::invalid_argument("BigInt: no digits");
    BigInt r(0);
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
      r = r * BigInt(10) + BigInt(s[i] - '0');
    }
    return neg ? -r : r;
  }

  bool is_small() const { return mag_.empty(); }
  bool is_zero() const { return is_small() ? v_ == 0 : false; }
  bool is_one() const { return is_small() && v_ == 1; }
  int sign() const {
    if (is_small()) return v_ > 0 ? 1 : (v_ < 0 ? -1 : 0);
    return sign_;
  }

  // Valid only when the value fits; callers use it after checking is_small().
  long long small_value() const {
    if (!is_small()) throw std::overflow_error("BigInt: not small");
    return v_;
  }

  friend BigInt operator-(const BigInt& a) {
    if (a.is_small() && a.v_ != INT64_MIN) return BigInt(-a.v_);
    BigInt p = a.promoted();
    return make(-p.sign_, std::move(p.mag_));
  }

  friend BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.is_small() && b.is_small()) {
      long long r;
      if (!__builtin_add_overflow(a.v_, b.v_, &r)) return BigInt(r);
    }
    return add_big(a.promoted(), b.promoted());
  }
  friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }
  friend BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.is_small() && b.is_small()) {
      long long r;
      if (!__builtin_mul_overflow(a.v_, b.v_, &r)) return BigInt(r);
    }
    return mul_big(a.promoted(), b.promoted());
  }

  BigInt& operator+=(const BigInt& o) { *this = *this + o; return *this; }
  BigInt& operator-=(const BigInt& o) { *this = *this - o; return *this; }
  BigInt& operator*=(const BigInt& o) { *this = *this * o; return *this; }

  // Truncated division (quotient rounds toward zero), matching C semantics.
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
    if (a.is_small() && b.is_small() && !(a.v_ == INT64_MIN && b.v_ == -1)) {
      q = BigInt(a.v_ / b.v_);
      r = BigInt(a.v_ % b.v_);
      return;
    }
    BigInt A = a.promoted(), B = b.promoted();
    std::vector<uint32_t> qm, rm;
    divmod_mag(A.mag_, B.mag_, qm, rm);
    q = make(A.sign_ * B.sign_, std::move(qm));
    r = make(A.sign_, std::move(rm));
  }

  friend BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    return q;
  }
  friend BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    return r;
  }

  friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return cmp(a, b) != 0; }
  friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
  friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return cmp(a, b) <= 0; }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return cmp(a, b) >= 0; }

  BigInt abs() const { return sign() < 0 ? -*this : *this; }

  // |this| compared to |o|.
  int cmp_abs(const BigInt& o) const {
    if (is_small() && o.is_small() && v_ != INT64_MIN && o.v_ != INT64_MIN) {
      long long x = std::llabs(v_), y = std::llabs(o.v_);
      return x < y ? -1 : (x > y ? 1 : 0);
    }
    return cmp_mag(promoted().mag_, o.promoted().mag_);
  }

  static BigInt gcd(BigInt a, BigInt b) {
    a = a.abs();
    b = b.abs();
    while (!b.is_zero()) {
      BigInt r = a % b;
      a = b;
      b = r;
    }
    return a;
  }

  bool fits_int64() const { return is_small(); }

  std::string to_string() const {
    if (is_small()) return std::to_string(v_);
    std::vector<uint32_t> m = mag_;
    std::string out;
    while (!m.empty()) {
      // divide magnitude by 10^9, collect remainder
      uint64_t rem = 0;
      for (size_t i = m.size(); i-- > 0;) {
        uint64_t cur = (rem << 32) | m[i];
        m[i] = static_cast<uint32_t>(cur / 1000000000u);
        rem = cur % 1000000000u;
      }
      trim(m);
      std::string chunk = std::to_string(rem);
      if (!m.empty()) chunk = std::string(9 - chunk.size(), '0') + chunk;
      out = chunk + out;
    }
    if (out.empty()) out = "0";
    return (sign_ < 0 ? "-" : "") + out;
  }

  friend std::ostream& operator<<(std::ostream& os, const BigInt& x) {
    return os << x.to_string();
  }

private:
  long long v_ = 0;
  int sign_ = 0;
  std::vector<uint32_t> mag_;  // base 2^32, little-endian, no trailing zeros

  static BigInt make(int sign, std::vector<uint32_t> mag) {
    trim(mag);
    if (mag.empty()) return BigInt(0);
    BigInt r;
    // demote if it fits in int64
    if (mag.size() <= 2) {
      unsigned long long v = mag[0];
      if (mag.size() == 2) v |= (unsigned long long)mag[1] << 32;
      if (sign > 0 && v <= (unsigned long long)INT64_MAX) return BigInt((long long)v);
      if (sign < 0 && v <= (unsigned long long)INT64_MAX + 1ull)
        return BigInt((long long)(-(long long)(v - 1) - 1));
    }
    r.sign_ = sign;
    r.mag_ = std::move(mag);
    return r;
  }

  BigInt promoted() const {
    if (!is_small()) return *this;
    BigInt r;
    if (v_ == 0) {
      r.sign_ = 0;
      r.mag_.push_back(0);  // non-small zero; trimmed away by consumers
      return r;
    }
    unsigned long long m =
        v_ < 0 ? (unsigned long long)(-(v_ + 1)) + 1ull : (unsigned long long)v_;
    r.sign_ = v_ < 0 ? -1 : 1;
    r.mag_.push_back(static_cast<uint32_t>(m & 0xffffffffu));
    if (m >> 32) r.mag_.push_back(static_cast<uint32_t>(m >> 32));
    return r;
  }

  static void trim(std::vector<uint32_t>& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
  }

  static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> x = a, y = b;
    trim(x);
    trim(y);
    if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
    for (size_t i = x.size(); i-- > 0;)
      if (x[i] != y[i]) return x[i] < y[i] ? -1 : 1;
    return 0;
  }

  static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r;
    r.reserve(std::max(a.size(), b.size()) + 1);
    uint64_t carry = 0;
    for (size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
      uint64_t s = carry;
      if (i < a.size()) s += a[i];
      if (i < b.size()) s += b[i];
      r.push_back(static_cast<uint32_t>(s & 0xffffffffu));
      carry = s >> 32;
    }
    if (carry) r.push_back(static_cast<uint32_t>(carry));
    return r;
  }

  // requires |a| >= |b|
  static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r = a;
    int64_t borrow = 0;
    for (size_t i = 0; i < r.size(); ++i) {
      int64_t s = (int64_t)r[i] - borrow - (i < b.size() ? (int64_t)b[i] : 0);
      if (s < 0) {
        s += (int64_t)1 << 32;
        borrow = 1;
      } else {
        borrow = 0;
      }
      r[i] = static_cast<uint32_t>(s);
    }
    trim(r);
    return r;
  }

  static BigInt add_big(const BigInt& a, const BigInt& b) {
    std::vector<uint32_t> am = a.mag_, bm = b.mag_;
    trim(am);
    trim(bm);
    int as = am.empty() ? 0 : a.sign_, bs = bm.empty() ? 0 : b.sign_;
    if (as == 0) return make(bs, std::move(bm));
    if (bs == 0) return make(as, std::move(am));
    if (as == bs) return make(as, add_mag(am, bm));
    int c = cmp_mag(am, bm);
    if (c == 0) return BigInt(0);
    if (c > 0) return make(as, sub_mag(am, bm));
    return make(bs, sub_mag(bm, am));
  }

  static BigInt mul_big(const BigInt& a, const BigInt& b) {
    std::vector<uint32_t> am = a.mag_, bm = b.mag_;
    trim(am);
    trim(bm);
    if (am.empty() || bm.empty()) return BigInt(0);
    std::vector<uint32_t> r(am.size() + bm.size(), 0);
    for (size_t i = 0; i < am.size(); ++i) {
      uint64_t carry = 0;
      for (size_t j = 0; j < bm.size(); ++j) {
        uint64_t cur = (uint64_t)am[i] * bm[j] + r[i + j] + carry;
        r[i + j] = static_cast<uint32_t>(cur & 0xffffffffu);
        carry = cur >> 32;
      }
      size_t k = i + bm.size();
      while (carry) {
        uint64_t cur = (uint64_t)r[k] + carry;
        r[k] = static_cast<uint32_t>(cur & 0xffffffffu);
        carry = cur >> 32;
        ++k;
      }
    }
    return make(a.sign_ * b.sign_, std::move(r));
  }

  // Shift-subtract long division on magnitudes; q, r outputs.
  static void divmod_mag(std::vector<uint32_t> a, std::vector<uint32_t> b,
                         std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
    trim(a);
    trim(b);
    if (b.empty()) throw std::domain_error("BigInt: division by zero");
    q.assign(a.size(), 0);
    r.clear();
    if (cmp_mag(a, b) < 0) {
      r = a;
      q.clear();
      return;
    }
    // single-digit divisor fast path
    if (b.size() == 1) {
      uint64_t d = b[0], rem = 0;
      for (size_t i = a.size(); i-- > 0;) {
        uint64_t cur = (rem << 32) | a[i];
        q[i] = static_cast<uint32_t>(cur / d);
        rem = cur % d;
      }
      trim(q);
      if (rem) r.push_back(static_cast<uint32_t>(rem));
      return;
    }
    int abits = bit_length(a), bbits = bit_length(b);
    std::vector<uint32_t> rem;
    for (int bit = abits - 1; bit >= 0; --bit) {
      shl1(rem);
      if (get_bit(a, bit)) set_bit0(rem);
      if (cmp_mag(rem, b) >= 0) {
        rem = sub_mag(rem, b);
        set_bit(q, bit);
      }
    }
    (void)bbits;
    trim(q);
    trim(rem);
    r = rem;
  }

  static int bit_length(const std::vector<uint32_t>& m) {
    if (m.empty()) return 0;
    uint32_t top = m.back();
    int l = 0;
    while (top) {
      ++l;
      top >>= 1;
    }
    return l + 32 * (int)(m.size() - 1);
  }
  static bool get_bit(const std::vector<uint32_t>& m, int i) {
    size_t w = i / 32;
    return w < m.size() && ((m[w] >> (i % 32)) & 1u);
  }
  static void set_bit(std::vector<uint32_t>& m, int i) {
    size_t w = i / 32;
    if (m.size() <= w) m.resize(w + 1, 0);
    m[w] |= 1u << (i % 32);
  }
  static void set_bit0(std::vector<uint32_t>& m) {
    if (m.empty()) m.push_back(0);
    m[0] |= 1u;
  }
  static void shl1(std::vector<uint32_t>& m) {
    uint32_t carry = 0;
    for (auto& w : m) {
      uint32_t nc = w >> 31;
      w = (w << 1) | carry;
      carry = nc;
    }
    if (carry) m.push_back(carry);
  }

  static int cmp(const BigInt& a, const BigInt& b) {
    if (a.is_small() && b.is_small())
      return a.v_ < b.v_ ? -1 : (a.v_ > b.v_ ? 1 : 0);
    int as = a.sign(), bs = b.sign();
    if (as != bs) return as < bs ? -1 : 1;
    int c = cmp_mag(a.promoted().mag_, b.promoted().mag_);
    return as >= 0 ? c : -c;
  }
};

}  // namespace lambdak
