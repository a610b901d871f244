#pragma once

// Text form of field expressions and lambda-polynomials, e.g.
//   f1 + (1/3*a^2 - 1/3)*:Phi1 Phi2 Phi3: + :Phi1 h1: + k*d(Phi1)
//   1/3*c*lambda^2 + 2*L

#include <string>

#include "dsred/lca/engine.hpp"
#include "dsred/scalar/scalar_io.hpp"

namespace dsred {

struct CoefText {
  bool negative = false;
  std::string mag;
  bool one = false;
};

inline CoefText coef_text(const Scalar& x) {
  std::size_t nterms = 0;
  for (auto& p : x.num()) nterms += p.coef.size();
  CoefText t;
  if (nterms == 1) {
    t.negative = sgn(x.num()[0].coef.lead().coef) < 0;
    t.mag = to_string(t.negative ? -x : x);
  } else {
    t.mag = "(" + to_string(x) + ")";
  }
  t.one = t.mag == "1";
  return t;
}

inline CoefText coef_text(const Rational& q) {
  CoefText t;
  t.negative = sgn(q) < 0;
  t.mag = Rational(abs(q)).get_str();
  t.one = t.mag == "1";
  return t;
}

template <class C>
C coef_from_scalar(const Scalar& s) {
  if constexpr (std::is_same_v<C, Scalar>)
    return s;
  else
    return C(s.to_rational());
}

template <class C>
std::string letter_string(const Ambient<C>& amb, Letter l) {
  const std::string& n = amb.gen(letter_gen(l)).name;
  int d = letter_deriv(l);
  if (d == 0) return n;
  if (d == 1) return "d(" + n + ")";
  return "d^" + std::to_string(d) + "(" + n + ")";
}

template <class C>
std::string word_string(const Ambient<C>& amb, const Word& w) {
  if (w.empty()) return "";
  if (w.size() == 1) return letter_string(amb, w[0]);
  std::string s = ":";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + letter_string(amb, w[i]);
  return s + ":";
}

namespace detail {

template <class C>
void append_term(std::string& out, bool first, const C& c, int lambda_power, const std::string& word) {
  CoefText t = coef_text(c);
  std::vector<std::string> f;
  if (!t.one) f.push_back(t.mag);
  if (lambda_power == 1) f.push_back("lambda");
  if (lambda_power > 1) f.push_back("lambda^" + std::to_string(lambda_power));
  if (!word.empty()) f.push_back(word);
  if (f.empty()) f.push_back("1");
  if (first)
    out += t.negative ? "-" : "";
  else
    out += t.negative ? " - " : " + ";
  for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "*" : "") + f[i];
}

}  // namespace detail

template <class C>
std::string to_string(const Ambient<C>& amb, const FieldExpr<C>& e) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto& [w, c] : e.terms()) {
    detail::append_term(out, first, c, 0, word_string(amb, w));
    first = false;
  }
  return out;
}

template <class C>
std::string to_string(const Ambient<C>& amb, const LambdaPoly<C>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int n = p.degree(); n >= 0; --n)
    for (auto& [w, c] : p.coeff(n).terms()) {
      detail::append_term(out, first, c, n, word_string(amb, w));
      first = false;
    }
  return out;
}

// Expression backend evaluating into an engine; every value is a lambda-polynomial.
template <class C>
struct EngineBackend {
  Engine<C>& eng;
  using LPoly = LambdaPoly<C>;
  using Expr = FieldExpr<C>;

  static bool scalar_like(const LPoly& p) {
    for (auto& e : p.coeffs())
      if (!e.is_vacuum_multiple()) return false;
    return true;
  }
  static bool lambda_free(const LPoly& p) { return p.degree() <= 0; }
  static const C& vac(const LPoly& p) {
    static const C zero(0);
    auto& t = p.coeff(0).terms();
    return t.empty() ? zero : t.begin()->second;
  }

  LPoly number(const Rational& q) { return LPoly(Expr::vacuum(C(q))); }
  LPoly symbol(const std::string& name, std::size_t) {
    if (name == "lambda") return LPoly(Expr::vacuum()).shifted(1);
    int g = eng.ambient().find(name);
    if (g >= 0) return LPoly(eng.letter(g));
    Scalar s;
    if (scalar_symbol(name, s)) return LPoly(Expr::vacuum(coef_from_scalar<C>(s)));
    throw Error(ErrorCode::SyntaxError, "unknown symbol '" + name + "'");
  }
  LPoly add(const LPoly& a, const LPoly& b) { return a + b; }
  LPoly sub(const LPoly& a, const LPoly& b) { return a - b; }
  LPoly neg(const LPoly& a) { return a * C(-1); }
  LPoly mul(const LPoly& a, const LPoly& b) {
    const LPoly* s = &a;
    const LPoly* f = &b;
    if (!scalar_like(*s)) std::swap(s, f);
    if (!scalar_like(*s)) throw Error(ErrorCode::SyntaxError, "product of two fields; use :A B:");
    LPoly r;
    for (int n = 0; n <= s->degree(); ++n) {
      auto& t = s->coeff(n).terms();
      if (t.empty()) continue;
      r.add(f->shifted(n), t.begin()->second);
    }
    return r;
  }
  LPoly div(const LPoly& a, const LPoly& b) {
    if (!scalar_like(b) || !lambda_free(b)) throw Error(ErrorCode::SyntaxError, "division by a non-scalar");
    if (b.is_zero()) throw Error(ErrorCode::ZeroDenominator, "division by zero");
    return a * inverse(vac(b));
  }
  LPoly pow(const LPoly& a, int n) {
    if (!scalar_like(a)) throw Error(ErrorCode::SyntaxError, "power of a field");
    if (n < 0) {
      if (!lambda_free(a)) throw Error(ErrorCode::SyntaxError, "negative power of lambda");
      C v(1);
      for (int i = 0; i < -n; ++i) v *= vac(a);
      return LPoly(Expr::vacuum(inverse(v)));
    }
    LPoly r(Expr::vacuum(C(1)));
    for (int i = 0; i < n; ++i) r = mul(r, a);
    return r;
  }
  LPoly normal_product(std::vector<LPoly> xs) {
    for (auto& x : xs)
      if (!lambda_free(x)) throw Error(ErrorCode::SyntaxError, "lambda inside a normal product");
    Expr cur = xs.back().coeff(0);
    for (int i = int(xs.size()) - 2; i >= 0; --i) cur = eng.normal_product(xs[i].coeff(0), cur);
    return LPoly(cur);
  }
  LPoly derive(const LPoly& x, int n) {
    if (!lambda_free(x)) throw Error(ErrorCode::SyntaxError, "derivative of lambda");
    return LPoly(eng.derive(x.coeff(0), n));
  }
};

template <class C>
LambdaPoly<C> parse_lambda_poly(Engine<C>& eng, std::string_view text) {
  EngineBackend<C> b{eng};
  return expr::evaluate(*expr::parse(text), b);
}

template <class C>
FieldExpr<C> parse_field(Engine<C>& eng, std::string_view text) {
  auto p = parse_lambda_poly(eng, text);
  if (p.degree() > 0) throw Error(ErrorCode::SyntaxError, "unexpected lambda in field expression");
  return p.coeff(0);
}

}  // namespace dsred
