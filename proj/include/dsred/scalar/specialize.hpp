#pragma once

// Substitution of parameters and radical branches into scalars.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>

#include "dsred/scalar/scalar.hpp"

namespace dsred {

// Principal square root of a positive integer: sqrt(n) = outside * prod SQRTp.
inline Scalar sqrt_integer(const Integer& n) {
  if (n < 0) throw Error(ErrorCode::Unsupported, "sqrt_integer of a negative number");
  if (n == 0) return Scalar();
  Integer m = n, outside = 1;
  std::vector<Integer> free;
  for (unsigned long p = 2; p < 100000 && Integer(p) * p <= m; ++p) {
    int e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      m /= p;
      ++e;
    }
    for (int i = 0; i + 1 < e; i += 2) outside *= p;
    if (e % 2) free.push_back(Integer(p));
  }
  if (m > 1) {
    if (mpz_perfect_square_p(m.get_mpz_t())) {
      Integer r;
      mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
      outside *= r;
    } else {
      // Either prime or a product of large primes; treated as a single radical.
      free.push_back(m);
    }
  }
  Scalar s{Rational(outside)};
  for (auto& p : free) {
    if (!p.fits_slong_p()) throw Error(ErrorCode::Unsupported, "radicand too large");
    s *= Scalar::radical(RadicalRegistry::instance().prime(p.get_si()));
  }
  return s;
}

// Principal branch: sqrt(-q) = I * sqrt(q) for q > 0.
inline Scalar sqrt_rational(const Rational& q) {
  if (sgn(q) == 0) return Scalar();
  Rational a = abs(q);
  Integer nd = a.get_num() * a.get_den();
  Scalar r = sqrt_integer(nd) * Scalar(Rational(Integer(1), a.get_den()));
  if (sgn(q) < 0) r *= imag_unit();
  return r;
}

inline Scalar radicand_of(int r) {
  const auto& info = RadicalRegistry::instance().info(r);
  return Scalar::fraction(info.num, info.den);
}

struct Substitution {
  std::array<std::optional<Scalar>, kNumVars> vars;
  std::map<int, Scalar> radicals;  // explicit radical values, checked against the radicand
};

inline Scalar substitute(const Poly& p, const Substitution& s,
                         std::array<std::vector<Scalar>, kNumVars>& powers) {
  auto power = [&](int v, int e) -> const Scalar& {
    auto& pv = powers[v];
    if (pv.empty()) pv.push_back(Scalar(1));
    while (int(pv.size()) <= e) pv.push_back(pv.back() * (s.vars[v] ? *s.vars[v] : Scalar::var(v)));
    return pv[e];
  };
  std::vector<Poly::Term> plain;
  Scalar acc;
  for (auto& t : p.terms()) {
    Mono keep = 0;
    Scalar f{t.coef};
    bool touched = false;
    for (int v = 0; v < kNumVars; ++v) {
      int e = mono_exp(t.mono, v);
      if (!e) continue;
      if (s.vars[v]) {
        f *= power(v, e);
        touched = true;
      } else {
        keep += mono_var(v, e);
      }
    }
    if (!touched) {
      plain.push_back({t.mono, t.coef});
    } else {
      acc += f * Scalar(Poly::term(keep, Rational(1)));
    }
  }
  return acc + Scalar(Poly::from_terms(std::move(plain)));
}

inline Scalar radical_image(int r, const Substitution& s) {
  Scalar rq = radicand_of(r);
  std::array<std::vector<Scalar>, kNumVars> powers;
  Scalar nq = substitute(RadicalRegistry::instance().info(r).num, s, powers) /
              substitute(RadicalRegistry::instance().info(r).den, s, powers);
  auto it = s.radicals.find(r);
  if (it != s.radicals.end()) {
    if (it->second * it->second != nq)
      throw Error(ErrorCode::InconsistentRadical,
                  "value given for " + RadicalRegistry::instance().info(r).name + " does not square to its radicand");
    return it->second;
  }
  if (nq == rq) return Scalar::radical(r);
  if (nq.is_rational()) return sqrt_rational(nq.to_rational());
  if (!nq.is_radical_free()) throw Error(ErrorCode::Unsupported, "nested radical after substitution");
  return Scalar::radical(RadicalRegistry::instance().intern_radicand(nq.radical_free_num(), nq.den()));
}

inline Scalar substitute(const Scalar& x, const Substitution& s) {
  std::array<std::vector<Scalar>, kNumVars> powers;
  std::unordered_map<int, Scalar> rad;
  std::uint64_t m = x.radicals();
  for (int r = 0; r < kMaxRadicals; ++r)
    if (m >> r & 1) rad.emplace(r, radical_image(r, s));
  Scalar den = substitute(x.den(), s, powers);
  if (den.is_zero()) throw Error(ErrorCode::PoleAtPoint, "denominator vanishes at the point");
  Scalar num;
  for (auto& part : x.num()) {
    Scalar t = substitute(part.coef, s, powers);
    for (int r = 0; r < kMaxRadicals; ++r)
      if (part.rads >> r & 1) t *= rad.at(r);
    num += t;
  }
  return num / den;
}

// A parameter point: values for some of a, k, c, eps plus optional radical branches.
struct ParamPoint {
  std::array<std::optional<Scalar>, kNumVars> vars;
  std::map<std::string, Scalar> radical_values;

  static ParamPoint alpha_k(const Rational& a, const Rational& k) {
    ParamPoint p;
    p.vars[kA] = Scalar(a);
    p.vars[kK] = Scalar(k);
    return p;
  }
  Substitution substitution() const {
    Substitution s;
    s.vars = vars;
    for (auto& [name, v] : radical_values) {
      int r = RadicalRegistry::instance().find(name);
      if (r < 0) throw Error(ErrorCode::InconsistentRadical, "unknown radical " + name);
      s.radicals[r] = v;
    }
    return s;
  }
};

inline Scalar specialize(const Scalar& x, const ParamPoint& p) { return substitute(x, p.substitution()); }

}  // namespace dsred
