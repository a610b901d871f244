#pragma once

// Letters, PBW words and linear combinations of words (field expressions), plus
// polynomials in lambda with field-expression coefficients.

#include <boost/container/small_vector.hpp>
#include <boost/functional/hash.hpp>
#include <cstdint>
#include <map>
#include <vector>

#include "dsred/scalar/scalar.hpp"

namespace dsred {

// A letter d^n(g): generator index in the high half, 0xFFFF - n in the low half, so that
// integer order sorts by generator ascending and derivative order descending.
using Letter = std::uint32_t;
inline Letter make_letter(int gen, int deriv = 0) { return (std::uint32_t(gen) << 16) | (0xFFFFu - std::uint32_t(deriv)); }
inline int letter_gen(Letter l) { return int(l >> 16); }
inline int letter_deriv(Letter l) { return int(0xFFFFu - (l & 0xFFFFu)); }
inline Letter letter_d(Letter l, int n = 1) { return l - std::uint32_t(n); }

// Right-nested normal product :l1 :l2 ... ln::, letters in canonical order; empty word = vacuum.
using Word = boost::container::small_vector<Letter, 6>;

struct WordHash {
  std::size_t operator()(const Word& w) const { return boost::hash_range(w.begin(), w.end()); }
};

template <class C>
class FieldExpr {
 public:
  using Map = std::map<Word, C>;

  FieldExpr() = default;
  static FieldExpr word(const Word& w, const C& c = C(1)) {
    FieldExpr e;
    e.add(w, c);
    return e;
  }
  static FieldExpr vacuum(const C& c = C(1)) { return word(Word{}, c); }
  static FieldExpr letter(Letter l, const C& c = C(1)) { return word(Word{l}, c); }

  void add(const Word& w, const C& c) {
    if (is_zero(c)) return;
    auto [it, fresh] = m_.try_emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (is_zero(it->second)) m_.erase(it);
    }
  }
  void add(const FieldExpr& o, const C& c) {
    if (is_zero(c)) return;
    for (auto& [w, x] : o.m_) add(w, x * c);
  }

  const Map& terms() const { return m_; }
  bool is_zero() const { return m_.empty(); }
  std::size_t size() const { return m_.size(); }
  C coeff(const Word& w) const {
    auto it = m_.find(w);
    return it == m_.end() ? C(0) : it->second;
  }
  // Coefficient of the vacuum when every word is empty; zero field otherwise throws.
  bool is_vacuum_multiple() const { return m_.empty() || (m_.size() == 1 && m_.begin()->first.empty()); }

  FieldExpr& operator+=(const FieldExpr& o) {
    for (auto& [w, c] : o.m_) add(w, c);
    return *this;
  }
  FieldExpr& operator-=(const FieldExpr& o) {
    for (auto& [w, c] : o.m_) add(w, -c);
    return *this;
  }
  FieldExpr& operator*=(const C& c) {
    if (dsred::is_zero(c)) {
      m_.clear();
      return *this;
    }
    for (auto& [w, x] : m_) x *= c;
    return *this;
  }
  friend FieldExpr operator+(FieldExpr a, const FieldExpr& b) { return a += b; }
  friend FieldExpr operator-(FieldExpr a, const FieldExpr& b) { return a -= b; }
  friend FieldExpr operator*(FieldExpr a, const C& c) { return a *= c; }
  friend FieldExpr operator*(const C& c, FieldExpr a) { return a *= c; }
  FieldExpr operator-() const { return *this * C(-1); }
  friend bool operator==(const FieldExpr& a, const FieldExpr& b) { return a.m_ == b.m_; }
  friend bool operator!=(const FieldExpr& a, const FieldExpr& b) { return !(a == b); }

 private:
  static bool is_zero(const C& c) { return dsred::is_zero(c); }
  Map m_;
};

// sum_n lambda^n coeffs[n]
template <class C>
class LambdaPoly {
 public:
  LambdaPoly() = default;
  explicit LambdaPoly(const FieldExpr<C>& c0) {
    if (!c0.is_zero()) c_.push_back(c0);
  }

  int degree() const { return int(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const FieldExpr<C>& coeff(int n) const {
    static const FieldExpr<C> zero;
    return n >= 0 && n < int(c_.size()) ? c_[n] : zero;
  }
  const std::vector<FieldExpr<C>>& coeffs() const { return c_; }

  void add(int n, const FieldExpr<C>& e, const C& s = C(1)) {
    if (e.is_zero() || dsred::is_zero(s)) return;
    if (int(c_.size()) <= n) c_.resize(n + 1);
    c_[n].add(e, s);
    trim();
  }
  void add(const LambdaPoly& o, const C& s = C(1)) {
    for (int n = 0; n <= o.degree(); ++n) add(n, o.c_[n], s);
  }
  // Multiplies by lambda^n.
  LambdaPoly shifted(int n) const {
    LambdaPoly r;
    if (c_.empty()) return r;
    r.c_.resize(n);
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
  }
  LambdaPoly& operator+=(const LambdaPoly& o) {
    add(o);
    return *this;
  }
  LambdaPoly& operator-=(const LambdaPoly& o) {
    add(o, C(-1));
    return *this;
  }
  LambdaPoly& operator*=(const C& s) {
    if (dsred::is_zero(s)) {
      c_.clear();
      return *this;
    }
    for (auto& e : c_) e *= s;
    return *this;
  }
  friend LambdaPoly operator+(LambdaPoly a, const LambdaPoly& b) { return a += b; }
  friend LambdaPoly operator-(LambdaPoly a, const LambdaPoly& b) { return a -= b; }
  friend LambdaPoly operator*(LambdaPoly a, const C& s) { return a *= s; }
  friend bool operator==(const LambdaPoly& a, const LambdaPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const LambdaPoly& a, const LambdaPoly& b) { return !(a == b); }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<FieldExpr<C>> c_;
};

inline Rational binomial(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(r);
}
inline Rational factorial(int n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return Rational(r);
}

}  // namespace dsred
