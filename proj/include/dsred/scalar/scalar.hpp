#pragma once

// Canonical elements of Q(a, k, c, eps)[registered radicals]: a numerator that is
// multilinear in the radicals over Q[a, k, c, eps] divided by a radical-free monic
// denominator coprime to every numerator coefficient.  Two scalars are equal exactly when
// their representations agree, so zero testing is syntactic.

#include <algorithm>
#include <map>
#include <vector>

#include "dsred/error.hpp"
#include "dsred/scalar/poly.hpp"
#include "dsred/scalar/radicals.hpp"

namespace dsred {

class Scalar {
 public:
  struct Part {
    std::uint64_t rads;
    Poly coef;
  };

  Scalar() = default;
  Scalar(int c) : Scalar(Poly(long(c))) {}
  Scalar(long c) : Scalar(Poly(c)) {}
  Scalar(const Rational& c) : Scalar(Poly(c)) {}
  Scalar(const Poly& p) {
    if (!p.is_zero()) num_.push_back({0, p});
  }

  static Scalar var(int v) { return Scalar(Poly::var(v)); }
  static Scalar radical(int idx) {
    Scalar s;
    s.num_.push_back({std::uint64_t(1) << idx, Poly(1)});
    return s;
  }
  static Scalar fraction(const Poly& num, const Poly& den) {
    Scalar s;
    if (!num.is_zero()) s.num_.push_back({0, num});
    s.den_ = den;
    s.normalize();
    return s;
  }
  static Scalar from_parts(std::vector<Part> parts, Poly den) {
    Scalar s;
    s.num_ = combine(std::move(parts));
    s.den_ = std::move(den);
    s.normalize();
    return s;
  }

  const std::vector<Part>& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.empty(); }
  bool is_one() const { return num_.size() == 1 && num_[0].rads == 0 && num_[0].coef.is_one() && den_.is_one(); }
  bool is_radical_free() const { return num_.empty() || (num_.size() == 1 && num_[0].rads == 0); }
  bool is_rational() const {
    return den_.is_constant() && (num_.empty() || (num_.size() == 1 && num_[0].rads == 0 && num_[0].coef.is_constant()));
  }
  Rational to_rational() const {
    if (!is_rational()) throw Error(ErrorCode::Unsupported, "scalar is not a rational number");
    return num_.empty() ? Rational(0) : num_[0].coef.constant_term();
  }
  // Numerator as a plain polynomial; only valid for radical-free scalars.
  Poly radical_free_num() const { return num_.empty() ? Poly() : num_[0].coef; }
  std::uint64_t radicals() const {
    std::uint64_t m = 0;
    for (auto& p : num_) m |= p.rads;
    return m;
  }
  unsigned vars() const {
    unsigned s = den_.support();
    for (auto& p : num_) s |= p.coef.support();
    return s;
  }

  Scalar operator-() const {
    Scalar s = *this;
    for (auto& p : s.num_) p.coef = -p.coef;
    return s;
  }
  Scalar& operator+=(const Scalar& o) { return *this = add(*this, o, false); }
  Scalar& operator-=(const Scalar& o) { return *this = add(*this, o, true); }
  Scalar& operator*=(const Scalar& o) { return *this = mul(*this, o); }
  Scalar& operator/=(const Scalar& o) { return *this = mul(*this, o.inverse()); }
  friend Scalar operator+(const Scalar& a, const Scalar& b) { return add(a, b, false); }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return add(a, b, true); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) { return mul(a, b); }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return mul(a, b.inverse()); }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.num_.size() != b.num_.size() || a.den_ != b.den_) return false;
    for (std::size_t i = 0; i < a.num_.size(); ++i)
      if (a.num_[i].rads != b.num_[i].rads || a.num_[i].coef != b.num_[i].coef) return false;
    return true;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::size_t hash() const {
    std::size_t h = den_.hash();
    for (auto& p : num_) h = h * 1000003u ^ (p.coef.hash() + p.rads * 0x9e3779b97f4a7c15ull);
    return h;
  }

  Scalar inverse() const {
    if (is_zero()) throw Error(ErrorCode::ZeroDenominator, "division by zero");
    std::uint64_t m = radicals();
    if (m == 0) {
      Scalar s;
      s.num_.push_back({0, den_});
      s.den_ = num_[0].coef;
      s.normalize();
      return s;
    }
    // x = A + B r with r the highest radical present; (A + B r)(A - B r) = A^2 - B^2 r^2.
    int r = 63 - std::countl_zero(m);
    std::uint64_t bit = std::uint64_t(1) << r;
    std::vector<Part> pa, pb;
    for (auto& p : num_) {
      if (p.rads & bit)
        pb.push_back({p.rads & ~bit, p.coef});
      else
        pa.push_back(p);
    }
    Scalar A = from_parts(pa, den_), B = from_parts(pb, den_);
    const auto& info = RadicalRegistry::instance().info(r);
    Scalar q = fraction(info.num, info.den);
    Scalar norm = A * A - B * B * q;
    if (norm.is_zero())
      throw Error(ErrorCode::InconsistentRadical, "zero divisor: radical " + info.name + " is not independent");
    return (A - B * radical(r)) * norm.inverse();
  }

  Scalar pow(int n) const {
    if (n < 0) return inverse().pow(-n);
    Scalar r(1), b = *this;
    while (n > 0) {
      if (n & 1) r *= b;
      n >>= 1;
      if (n) b = b * b;
    }
    return r;
  }

 private:
  static std::vector<Part> combine(std::vector<Part> parts) {
    std::sort(parts.begin(), parts.end(), [](const Part& x, const Part& y) { return x.rads < y.rads; });
    std::vector<Part> out;
    for (auto& p : parts) {
      if (!out.empty() && out.back().rads == p.rads)
        out.back().coef += p.coef;
      else
        out.push_back(std::move(p));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Part& p) { return p.coef.is_zero(); }), out.end());
    return out;
  }

  void normalize() {
    num_.erase(std::remove_if(num_.begin(), num_.end(), [](const Part& p) { return p.coef.is_zero(); }), num_.end());
    if (den_.is_zero()) throw Error(ErrorCode::ZeroDenominator, "zero denominator");
    if (num_.empty()) {
      den_ = Poly(1);
      return;
    }
    if (!den_.is_constant()) {
      std::vector<const Poly*> others;
      for (auto& p : num_) others.push_back(&p.coef);
      if (!coprime(den_, others)) {
        Poly g = den_;
        for (auto& p : num_) {
          g = gcd(g, p.coef);
          if (g.is_constant()) break;
        }
        if (!g.is_constant()) {
          den_ = *divide_exact(den_, g);
          for (auto& p : num_) p.coef = *divide_exact(p.coef, g);
        }
      }
    }
    Rational lc = den_.lead().coef;
    if (lc != 1) {
      Rational f = 1 / lc;
      den_ *= f;
      for (auto& p : num_) p.coef *= f;
    }
  }

  static Scalar add(const Scalar& a, const Scalar& b, bool subtract) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return subtract ? -b : b;
    std::vector<Part> parts;
    parts.reserve(a.num_.size() + b.num_.size());
    Scalar s;
    if (a.den_ == b.den_) {
      for (auto& p : a.num_) parts.push_back(p);
      for (auto& p : b.num_) parts.push_back({p.rads, subtract ? -p.coef : p.coef});
      s.num_ = combine(std::move(parts));
      s.den_ = a.den_;
      if (s.den_.is_one()) {
        if (s.num_.empty()) s.den_ = Poly(1);
        return s;
      }
    } else {
      Poly g = gcd(a.den_, b.den_);
      Poly ca = *divide_exact(b.den_, g), cb = *divide_exact(a.den_, g);
      for (auto& p : a.num_) parts.push_back({p.rads, p.coef * ca});
      for (auto& p : b.num_) parts.push_back({p.rads, subtract ? -(p.coef * cb) : p.coef * cb});
      s.num_ = combine(std::move(parts));
      s.den_ = a.den_ * ca;
    }
    s.normalize();
    return s;
  }

  static Scalar mul(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return Scalar();
    // Group products by the radicals shared by both factors; those square to radicands.
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<Poly::Term>> acc;
    for (auto& p : a.num_)
      for (auto& q : b.num_) {
        auto& v = acc[{p.rads & q.rads, p.rads ^ q.rads}];
        Poly prod = p.coef * q.coef;
        for (auto& t : prod.terms()) v.push_back(t);
      }
    std::map<std::uint64_t, std::vector<Part>> by_shared;
    for (auto& [key, terms] : acc) by_shared[key.first].push_back({key.second, Poly::from_terms(std::move(terms))});
    Poly extra(1);
    std::vector<std::pair<Poly, Poly>> factors;  // radicand products per shared mask
    for (auto& [shared, parts] : by_shared) {
      if (shared == 0) {
        factors.emplace_back(Poly(1), Poly(1));
      } else {
        factors.push_back(RadicalRegistry::instance().radicand_product(shared));
        const Poly& d = factors.back().second;
        if (!d.is_one()) {
          Poly g = gcd(extra, d);
          extra = extra * *divide_exact(d, g);
        }
      }
    }
    std::vector<Part> out;
    std::size_t i = 0;
    for (auto& [shared, parts] : by_shared) {
      auto& [fn, fd] = factors[i++];
      Poly scale = fn;
      if (!extra.is_one()) scale = scale * *divide_exact(extra, fd);
      for (auto& p : parts) out.push_back({p.rads, scale.is_one() ? p.coef : p.coef * scale});
    }
    Scalar s;
    s.num_ = combine(std::move(out));
    s.den_ = a.den_ * b.den_ * extra;
    if (s.den_.is_one()) {
      if (s.num_.empty()) s.den_ = Poly(1);
      return s;
    }
    s.normalize();
    return s;
  }

  std::vector<Part> num_;  // sorted by radical mask
  Poly den_{1};
};

inline bool is_zero(const Scalar& x) { return x.is_zero(); }
inline Scalar inverse(const Scalar& x) { return x.inverse(); }
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline Rational inverse(const Rational& x) {
  if (sgn(x) == 0) throw Error(ErrorCode::ZeroDenominator, "division by zero");
  return Rational(1 / x);
}

inline const Scalar& imag_unit() {
  static const Scalar i = Scalar::radical(kI);
  return i;
}

}  // namespace dsred

template <>
struct std::hash<dsred::Scalar> {
  std::size_t operator()(const dsred::Scalar& s) const { return s.hash(); }
};
