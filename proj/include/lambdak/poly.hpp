#pragma once

#include <map>
#include <string>
#include <vector>

#include "lambdak/bigint.hpp"

namespace lambdak {

// Sparse multivariate polynomial over Z. Exponent vectors are stored with
// trailing zeros trimmed, so the ring is arity-free.
class MultiPoly {
public:
  using Exp = std::vector<int>;

  MultiPoly() = default;
  MultiPoly(int v) { set({}, BigInt(v)); }
  MultiPoly(long long v) { set({}, BigInt(v)); }
  explicit MultiPoly(const BigInt& v) { set({}, v); }

  static MultiPoly variable(int i, int power = 1) {
    MultiPoly p;
    Exp e(i + 1, 0);
    e[i] = power;
    p.set(e, BigInt(1));
    return p;
  }
  static MultiPoly monomial(Exp e, BigInt c) {
    MultiPoly p;
    p.set(std::move(e), std::move(c));
    return p;
  }

  const std::map<Exp, BigInt>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  BigInt coeff(Exp e) const {
    trim(e);
    auto it = c_.find(e);
    return it == c_.end() ? BigInt(0) : it->second;
  }

  void set(Exp e, BigInt v) {
    trim(e);
    if (v.is_zero())
      c_.erase(e);
    else
      c_[std::move(e)] = std::move(v);
  }
  void add_term(Exp e, const BigInt& v) {
    trim(e);
    auto it = c_.find(e);
    if (it == c_.end()) {
      if (!v.is_zero()) c_.emplace(std::move(e), v);
    } else {
      it->second += v;
      if (it->second.is_zero()) c_.erase(it);
    }
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = a;
    for (auto& [e, v] : b.c_) r.add_term(e, v);
    return r;
  }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = a;
    for (auto& [e, v] : b.c_) r.add_term(e, BigInt(0) - v);
    return r;
  }
  friend MultiPoly operator-(const MultiPoly& a) { return MultiPoly(0) - a; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r;
    for (auto& [ea, va] : a.c_)
      for (auto& [eb, vb] : b.c_) {
        Exp e(std::max(ea.size(), eb.size()), 0);
        for (size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
        for (size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
        r.add_term(std::move(e), va * vb);
      }
    return r;
  }
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.c_ == b.c_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  // substitute variable i by the given polynomial, for all i in the map
  MultiPoly substitute(const std::map<int, MultiPoly>& sub) const {
    MultiPoly r;
    for (auto& [e, v] : c_) {
      MultiPoly term(v);
      for (size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        auto it = sub.find((int)i);
        MultiPoly base =
            (it == sub.end()) ? MultiPoly::variable((int)i) : it->second;
        for (int k = 0; k < e[i]; ++k) term *= base;
      }
      r += term;
    }
    return r;
  }

  long total_degree() const {
    long d = 0;
    for (auto& [e, v] : c_) {
      long s = 0;
      for (int x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  std::string to_string(const std::string& var = "x") const {
    if (c_.empty()) return "0";
    std::string s;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      const auto& [e, v] = *it;
      std::string mono;
      for (size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        mono += var + std::to_string(i + 1);
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      std::string cs = v.to_string();
      if (!s.empty() && cs[0] != '-') s += "+";
      if (mono.empty())
        s += cs;
      else if (cs == "1")
        s += mono;
      else if (cs == "-1")
        s += "-" + mono;
      else
        s += cs + mono;
    }
    return s;
  }

private:
  std::map<Exp, BigInt> c_;

  static void trim(Exp& e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
  }
};

}  // namespace lambdak
