#pragma once

// Sparse multivariate polynomials over Q in the four parameters a (alpha), k, c, eps,
// with a multivariate gcd (recursive primitive PRS plus a modular coprimality test).

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dsred {

using Rational = mpq_class;
using Integer = mpz_class;

inline constexpr int kNumVars = 4;
enum Var : int { kA = 0, kK = 1, kC = 2, kEps = 3 };

inline const char* var_name(int v) {
  static const char* names[kNumVars] = {"a", "k", "c", "eps"};
  return names[v];
}

// Variable v occupies bits [16v, 16v+16).  eps sits in the top bits so that plain integer
// comparison of two exponent words is lex order with eps > c > k > a.
using Mono = std::uint64_t;

inline int mono_exp(Mono m, int v) { return int((m >> (16 * v)) & 0xFFFF); }
inline Mono mono_var(int v, int e = 1) { return Mono(e) << (16 * v); }
inline int mono_degree(Mono m) {
  int d = 0;
  for (int v = 0; v < kNumVars; ++v) d += mono_exp(m, v);
  return d;
}
inline bool mono_divides(Mono a, Mono b) {
  for (int v = 0; v < kNumVars; ++v)
    if (mono_exp(a, v) > mono_exp(b, v)) return false;
  return true;
}
// deglex: total degree first, then lex.
inline bool mono_greater(Mono a, Mono b) {
  int da = mono_degree(a), db = mono_degree(b);
  if (da != db) return da > db;
  return a > b;
}
inline unsigned mono_support(Mono m) {
  unsigned s = 0;
  for (int v = 0; v < kNumVars; ++v)
    if (mono_exp(m, v)) s |= 1u << v;
  return s;
}

class Poly {
 public:
  struct Term {
    Mono mono;
    Rational coef;
  };

  Poly() = default;
  Poly(long c) {
    if (c != 0) t_.push_back({0, Rational(c)});
  }
  Poly(const Rational& c) {
    if (sgn(c) != 0) t_.push_back({0, c});
  }

  static Poly var(int v) { return term(mono_var(v), Rational(1)); }
  static Poly term(Mono m, const Rational& c) {
    Poly p;
    if (sgn(c) != 0) p.t_.push_back({m, c});
    return p;
  }
  // Terms in any order, duplicates allowed.
  static Poly from_terms(std::vector<Term> ts) {
    std::sort(ts.begin(), ts.end(),
              [](const Term& x, const Term& y) { return mono_greater(x.mono, y.mono); });
    Poly p;
    for (auto& t : ts) {
      if (!p.t_.empty() && p.t_.back().mono == t.mono) {
        p.t_.back().coef += t.coef;
        if (sgn(p.t_.back().coef) == 0) p.t_.pop_back();
      } else if (sgn(t.coef) != 0) {
        p.t_.push_back(std::move(t));
      }
    }
    return p;
  }

  const std::vector<Term>& terms() const { return t_; }
  std::size_t size() const { return t_.size(); }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].mono == 0); }
  Rational constant_term() const {
    if (!t_.empty() && t_.back().mono == 0) return t_.back().coef;
    return Rational(0);
  }
  bool is_one() const { return t_.size() == 1 && t_[0].mono == 0 && t_[0].coef == 1; }
  const Term& lead() const { return t_.front(); }
  int degree(int v) const {
    int d = 0;
    for (auto& t : t_) d = std::max(d, mono_exp(t.mono, v));
    return d;
  }
  int total_degree() const {
    int d = 0;
    for (auto& t : t_) d = std::max(d, mono_degree(t.mono));
    return d;
  }
  unsigned support() const {
    unsigned s = 0;
    for (auto& t : t_) s |= mono_support(t.mono);
    return s;
  }

  Poly operator-() const {
    Poly p = *this;
    for (auto& t : p.t_) t.coef = -t.coef;
    return p;
  }
  Poly& operator+=(const Poly& o) { return *this = merge(*this, o, false); }
  Poly& operator-=(const Poly& o) { return *this = merge(*this, o, true); }
  Poly& operator*=(const Rational& c) {
    if (sgn(c) == 0) {
      t_.clear();
      return *this;
    }
    for (auto& t : t_) t.coef *= c;
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, true); }
  friend Poly operator*(const Poly& a, const Rational& c) {
    Poly p = a;
    p *= c;
    return p;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    if (a.is_constant()) return b * a.t_[0].coef;
    if (b.is_constant()) return a * b.t_[0].coef;
    std::vector<Term> ts;
    ts.reserve(a.size() * b.size());
    for (auto& x : a.t_)
      for (auto& y : b.t_) ts.push_back({x.mono + y.mono, x.coef * y.coef});
    return from_terms(std::move(ts));
  }
  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.t_.size() != b.t_.size()) return false;
    for (std::size_t i = 0; i < a.t_.size(); ++i)
      if (a.t_[i].mono != b.t_[i].mono || a.t_[i].coef != b.t_[i].coef) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::size_t hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (auto& t : t_) {
      h ^= std::hash<Mono>()(t.mono) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h ^= mpz_get_ui(t.coef.get_num_mpz_t()) * 31 + mpz_get_ui(t.coef.get_den_mpz_t());
    }
    return h;
  }

  Poly pow(int n) const {
    Poly r(1), b = *this;
    while (n > 0) {
      if (n & 1) r *= b;
      n >>= 1;
      if (n) b = b * b;
    }
    return r;
  }

 private:
  static Poly merge(const Poly& a, const Poly& b, bool subtract) {
    Poly r;
    r.t_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.t_.size() || j < b.t_.size()) {
      if (j == b.t_.size() || (i < a.t_.size() && mono_greater(a.t_[i].mono, b.t_[j].mono))) {
        r.t_.push_back(a.t_[i++]);
      } else if (i == a.t_.size() || mono_greater(b.t_[j].mono, a.t_[i].mono)) {
        r.t_.push_back(b.t_[j]);
        if (subtract) r.t_.back().coef = -r.t_.back().coef;
        ++j;
      } else {
        Rational c = subtract ? Rational(a.t_[i].coef - b.t_[j].coef)
                              : Rational(a.t_[i].coef + b.t_[j].coef);
        if (sgn(c) != 0) r.t_.push_back({a.t_[i].mono, c});
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::vector<Term> t_;  // strictly decreasing deglex, nonzero coefficients
};

// Coefficients of p as a polynomial in x: result[e] multiplies x^e.
inline std::vector<Poly> coeffs_in(const Poly& p, int x) {
  std::vector<Poly> out(p.degree(x) + 1);
  std::vector<std::vector<Poly::Term>> buckets(out.size());
  for (auto& t : p.terms()) {
    int e = mono_exp(t.mono, x);
    buckets[e].push_back({t.mono - mono_var(x, e), t.coef});
  }
  for (std::size_t e = 0; e < out.size(); ++e) out[e] = Poly::from_terms(std::move(buckets[e]));
  return out;
}

inline Poly from_coeffs(const std::vector<Poly>& cs, int x) {
  std::vector<Poly::Term> ts;
  for (std::size_t e = 0; e < cs.size(); ++e)
    for (auto& t : cs[e].terms()) ts.push_back({t.mono + mono_var(x, int(e)), t.coef});
  return Poly::from_terms(std::move(ts));
}

inline std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (b.is_constant()) return a * Rational(1 / b.lead().coef);
  Poly q, r = a;
  const auto& bl = b.lead();
  while (!r.is_zero()) {
    const auto& rl = r.lead();
    if (!mono_divides(bl.mono, rl.mono)) return std::nullopt;
    Poly t = Poly::term(rl.mono - bl.mono, rl.coef / bl.coef);
    r -= b * t;
    q += t;
  }
  return q;
}

// p = factor * prim with prim integral, coprime coefficients, positive leading coefficient.
inline Rational primitive_split(const Poly& p, Poly& prim) {
  if (p.is_zero()) {
    prim = Poly();
    return Rational(0);
  }
  Integer l = 1, g = 0;
  for (auto& t : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.get_den_mpz_t());
  for (auto& t : p.terms()) {
    Integer n = t.coef.get_num() * (l / t.coef.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  Rational f(g, l);
  f.canonicalize();
  if (sgn(p.lead().coef) < 0) f = -f;
  prim = p * Rational(1 / f);
  return f;
}

inline Poly primitive(const Poly& p) {
  Poly q;
  primitive_split(p, q);
  return q;
}

namespace modp {

inline constexpr std::uint64_t P = (std::uint64_t(1) << 61) - 1;

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 z = (unsigned __int128)a * b;
  std::uint64_t lo = std::uint64_t(z & P), hi = std::uint64_t(z >> 61);
  std::uint64_t s = lo + hi;
  return s >= P ? s - P : s;
}
inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= P ? s - P : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + P - b; }
inline std::uint64_t pw(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}
inline std::uint64_t inv(std::uint64_t a) { return pw(a, P - 2); }

// Returns false when the denominator vanishes mod P.
inline bool reduce(const Rational& q, std::uint64_t& out) {
  Integer n = q.get_num() % Integer(P);
  if (n < 0) n += Integer(P);
  Integer d = q.get_den() % Integer(P);
  if (d == 0) return false;
  out = mul(std::uint64_t(mpz_get_ui(n.get_mpz_t())), inv(std::uint64_t(mpz_get_ui(d.get_mpz_t()))));
  return true;
}

using UPoly = std::vector<std::uint64_t>;  // low degree first, trimmed

inline void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline UPoly gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a mod b
    std::uint64_t il = inv(b.back());
    while (a.size() >= b.size()) {
      std::uint64_t f = mul(a.back(), il);
      std::size_t sh = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[sh + i] = sub(a[sh + i], mul(f, b[i]));
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a;
}

// Fixed evaluation points; deterministic so results are reproducible.
inline std::uint64_t eval_point(int attempt, int v) {
  std::uint64_t z = 0x243F6A8885A308D3ull * std::uint64_t(attempt * 7 + v + 1) + 0x13198A2E03707344ull;
  z ^= z >> 31;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 29;
  return (z % (P - 3)) + 2;
}

// Image of p in F_P[x] after evaluating the other variables; nullopt on a bad coefficient.
inline std::optional<UPoly> image(const Poly& p, int x, int attempt) {
  UPoly out(p.degree(x) + 1, 0);
  for (auto& t : p.terms()) {
    std::uint64_t c;
    if (!reduce(t.coef, c)) return std::nullopt;
    for (int v = 0; v < kNumVars; ++v) {
      if (v == x) continue;
      int e = mono_exp(t.mono, v);
      if (e) c = mul(c, pw(eval_point(attempt, v), e));
    }
    auto& slot = out[mono_exp(t.mono, x)];
    slot = add(slot, c);
  }
  return out;
}

}  // namespace modp

namespace detail {

Poly gcd_rec(const Poly& a, const Poly& b);

inline Poly content_in(const Poly& p, int x) {
  auto cs = coeffs_in(p, x);
  Poly g;
  for (auto& c : cs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? primitive(c) : gcd_rec(g, c);
    if (g.is_constant()) return Poly(1);
  }
  return g;
}

inline Poly pp_in(const Poly& p, int x) {
  Poly c = content_in(p, x);
  if (c.is_constant()) return primitive(p);
  return primitive(*divide_exact(p, c));
}

inline Poly prem_in(const Poly& a, const Poly& b, int x) {
  auto A = coeffs_in(a, x);
  auto B = coeffs_in(b, x);
  int db = int(B.size()) - 1;
  const Poly& lb = B.back();
  while (!A.empty() && int(A.size()) - 1 >= db) {
    Poly la = A.back();
    int sh = int(A.size()) - 1 - db;
    for (auto& c : A) c = c * lb;
    for (int i = 0; i <= db; ++i) A[sh + i] -= la * B[i];
    while (!A.empty() && A.back().is_zero()) A.pop_back();
    // Keep coefficient growth in check; the content does not affect the gcd.
    if (!A.empty()) {
      Poly g;
      for (auto& c : A)
        if (!c.is_zero()) g = g.is_zero() ? primitive(c) : gcd_rec(g, c);
      if (!g.is_constant())
        for (auto& c : A) c = *divide_exact(c, g);
      Rational f;
      Poly dummy = from_coeffs(A, x);
      f = primitive_split(dummy, dummy);
      for (auto& c : A) c *= Rational(1 / f);
    }
  }
  return from_coeffs(A, x);
}

// True when a and b certainly share no factor of positive degree in x.
inline bool coprime_in(const Poly& a, const Poly& b, int x) {
  for (int attempt = 0; attempt < 4; ++attempt) {
    auto ia = modp::image(a, x, attempt);
    auto ib = modp::image(b, x, attempt);
    if (!ia || !ib) continue;
    if (ia->size() != std::size_t(a.degree(x) + 1) || ia->back() == 0) continue;
    if (ib->size() != std::size_t(b.degree(x) + 1) || ib->back() == 0) continue;
    return modp::gcd(*ia, *ib).size() <= 1;
  }
  return false;
}

inline Poly gcd_rec(const Poly& a, const Poly& b) {
  if (a.is_zero()) return primitive(b);
  if (b.is_zero()) return primitive(a);
  if (a.is_constant() || b.is_constant()) return Poly(1);
  if (a == b) return primitive(a);
  unsigned common = a.support() & b.support();
  if (common == 0) return Poly(1);
  int x = -1, best = 1 << 30;
  for (int v = 0; v < kNumVars; ++v) {
    if (!(common >> v & 1)) continue;
    int d = std::max(a.degree(v), b.degree(v));
    if (d < best) best = d, x = v;
  }
  Poly ca = content_in(a, x), cb = content_in(b, x);
  Poly c = gcd_rec(ca, cb);
  Poly pa = ca.is_constant() ? primitive(a) : primitive(*divide_exact(a, ca));
  Poly pb = cb.is_constant() ? primitive(b) : primitive(*divide_exact(b, cb));
  Poly g(1);
  if (pa.degree(x) > 0 && pb.degree(x) > 0 && !coprime_in(pa, pb, x)) {
    if (pa.degree(x) < pb.degree(x)) std::swap(pa, pb);
    for (;;) {
      Poly r = prem_in(pa, pb, x);
      if (r.is_zero()) {
        g = pb;
        break;
      }
      if (r.degree(x) == 0) break;
      pa = std::move(pb);
      pb = pp_in(r, x);
    }
    g = pp_in(g, x);
  }
  return primitive(c * g);
}

}  // namespace detail

// Primitive integral gcd with positive leading coefficient; gcd(0, 0) = 0.
inline Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) return Poly();
  return detail::gcd_rec(a, b);
}

// True when the polynomials share no nonconstant factor; cheap modular test first.
inline bool coprime(const Poly& den, const std::vector<const Poly*>& others) {
  if (den.is_constant()) return true;
  unsigned sup = den.support();
  bool all = true;
  for (int x = 0; x < kNumVars && all; ++x) {
    if (!(sup >> x & 1)) continue;
    bool settled = false;
    for (int attempt = 0; attempt < 4 && !settled; ++attempt) {
      auto id = modp::image(den, x, attempt);
      if (!id || id->size() != std::size_t(den.degree(x) + 1) || id->back() == 0) continue;
      modp::UPoly g = *id;
      bool bad = false;
      for (auto* o : others) {
        auto io = modp::image(*o, x, attempt);
        if (!io) {
          bad = true;
          break;
        }
        g = modp::gcd(g, *io);
        if (g.size() <= 1) break;
      }
      if (bad) continue;
      settled = true;
      if (g.size() > 1) all = false;
    }
    if (!settled) all = false;
  }
  return all;
}

}  // namespace dsred
