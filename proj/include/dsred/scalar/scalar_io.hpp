#pragma once

// Text form of scalars: a*k, 3/2*I*SQRT6, (a^2 - 1)/(a + 1), ...

#include <sstream>
#include <string>
#include <vector>

#include "dsred/expr/parse.hpp"
#include "dsred/scalar/specialize.hpp"

namespace dsred {

namespace detail {

inline std::string rational_str(const Rational& q) { return q.get_str(); }

// Radical factors of one numerator part; square roots of primes are merged (SQRT2*SQRT3 -> SQRT6).
inline std::vector<std::string> radical_factors(std::uint64_t rads) {
  std::vector<std::string> out;
  Integer merged = 1;
  auto& reg = RadicalRegistry::instance();
  for (int r = 0; r < kMaxRadicals; ++r) {
    if (!(rads >> r & 1)) continue;
    const auto& info = reg.info(r);
    if (info.prime > 0)
      merged *= info.prime;
    else
      out.push_back(info.name);
  }
  if (merged != 1) out.push_back("SQRT" + merged.get_str());
  return out;
}

inline std::string mono_str(Mono m) {
  std::string s;
  for (int v = 0; v < kNumVars; ++v) {
    int e = mono_exp(m, v);
    if (!e) continue;
    if (!s.empty()) s += "*";
    s += var_name(v);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

// Terms as (negative, magnitude) pairs.
inline std::vector<std::pair<bool, std::string>> term_strings(const std::vector<Scalar::Part>& parts) {
  std::vector<std::pair<bool, std::string>> out;
  for (auto& p : parts) {
    auto rf = radical_factors(p.rads);
    for (auto& t : p.coef.terms()) {
      std::vector<std::string> f = rf;
      std::string ms = mono_str(t.mono);
      if (!ms.empty()) f.push_back(ms);
      Rational mag = abs(t.coef);
      std::string s;
      if (mag != 1 || f.empty()) s = rational_str(mag);
      for (auto& x : f) s += (s.empty() ? "" : "*") + x;
      out.emplace_back(sgn(t.coef) < 0, s);
    }
  }
  return out;
}

inline std::string join_terms(const std::vector<std::pair<bool, std::string>>& ts) {
  if (ts.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i == 0)
      s += ts[i].first ? "-" : "";
    else
      s += ts[i].first ? " - " : " + ";
    s += ts[i].second;
  }
  return s;
}

}  // namespace detail

inline std::string to_string(const Poly& p) {
  std::vector<Scalar::Part> parts;
  if (!p.is_zero()) parts.push_back({0, p});
  return detail::join_terms(detail::term_strings(parts));
}

inline std::string to_string(const Scalar& x) {
  auto ts = detail::term_strings(x.num());
  std::string num = detail::join_terms(ts);
  if (x.den().is_one()) return num;
  std::string den = to_string(x.den());
  if (ts.size() > 1) num = "(" + num + ")";
  if (den.find_first_of("*+- ") != std::string::npos) den = "(" + den + ")";
  return num + "/" + den;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << to_string(x); }

// True when the rendering of x needs parentheses as a factor in a product.
inline bool needs_parens(const Scalar& x) {
  if (!x.den().is_one()) return true;
  std::size_t n = 0;
  for (auto& p : x.num()) n += p.coef.size();
  return n > 1;
}

// Resolves scalar symbols; returns false for names that are not scalars.
inline bool scalar_symbol(const std::string& name, Scalar& out) {
  if (name == "a" || name == "alpha") return out = Scalar::var(kA), true;
  if (name == "k") return out = Scalar::var(kK), true;
  if (name == "c") return out = Scalar::var(kC), true;
  if (name == "eps" || name == "epsilon") return out = Scalar::var(kEps), true;
  int r = RadicalRegistry::instance().find(name);
  if (r >= 0) return out = Scalar::radical(r), true;
  if (name.size() > 4 && name.compare(0, 4, "SQRT") == 0 &&
      name.find_first_not_of("0123456789", 4) == std::string::npos) {
    out = sqrt_integer(Integer(name.substr(4)));
    return true;
  }
  return false;
}

struct ScalarBackend {
  Scalar number(const Rational& q) { return Scalar(q); }
  Scalar symbol(const std::string& name, std::size_t) {
    Scalar s;
    if (!scalar_symbol(name, s)) throw Error(ErrorCode::SyntaxError, "unknown scalar symbol '" + name + "'");
    return s;
  }
  Scalar add(const Scalar& a, const Scalar& b) { return a + b; }
  Scalar sub(const Scalar& a, const Scalar& b) { return a - b; }
  Scalar neg(const Scalar& a) { return -a; }
  Scalar mul(const Scalar& a, const Scalar& b) { return a * b; }
  Scalar div(const Scalar& a, const Scalar& b) { return a / b; }
  Scalar pow(const Scalar& a, int n) { return a.pow(n); }
  Scalar normal_product(std::vector<Scalar>) {
    throw Error(ErrorCode::SyntaxError, "normal product in a scalar expression");
  }
  Scalar derive(const Scalar&, int) { throw Error(ErrorCode::SyntaxError, "derivative in a scalar expression"); }
};

inline Scalar parse_scalar(std::string_view text) {
  ScalarBackend b;
  return expr::evaluate(*expr::parse(text), b);
}

}  // namespace dsred
