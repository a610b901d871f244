#pragma once

// Coefficient maps, transport of expressions between ambients, graded word enumeration.

#include <algorithm>
#include <functional>

#include "dsred/lca/engine.hpp"
#include "dsred/scalar/specialize.hpp"

namespace dsred {

template <class D, class C, class F>
FieldExpr<D> map_coeffs(const FieldExpr<C>& e, F&& f) {
  FieldExpr<D> r;
  for (auto& [w, c] : e.terms()) r.add(w, f(c));
  return r;
}

template <class D, class C, class F>
LambdaPoly<D> map_coeffs(const LambdaPoly<C>& p, F&& f) {
  LambdaPoly<D> r;
  for (int n = 0; n <= p.degree(); ++n) r.add(n, map_coeffs<D>(p.coeff(n), f));
  return r;
}

inline FieldExpr<Scalar> specialize(const FieldExpr<Scalar>& e, const ParamPoint& p) {
  auto s = p.substitution();
  return map_coeffs<Scalar>(e, [&](const Scalar& c) { return substitute(c, s); });
}
inline LambdaPoly<Scalar> specialize(const LambdaPoly<Scalar>& e, const ParamPoint& p) {
  auto s = p.substitution();
  return map_coeffs<Scalar>(e, [&](const Scalar& c) { return substitute(c, s); });
}

// Rewrites every word letter by letter through an engine of the target ambient; letters
// map to arbitrary target expressions (images of derivatives are derived there).
template <class C>
class WordMap {
 public:
  using Expr = FieldExpr<C>;
  WordMap(Engine<C>& target, std::function<Expr(int gen)> image) : eng_(target), image_(std::move(image)) {}

  Expr operator()(const FieldExpr<C>& e) {
    Expr r;
    for (auto& [w, c] : e.terms()) r.add(word(w), c);
    return r;
  }
  const Expr& word(const Word& w) {
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
    Expr cur = Expr::vacuum();
    for (int i = int(w.size()) - 1; i >= 0; --i) cur = eng_.normal_product(letter(w[i]), cur);
    return memo_.emplace(w, std::move(cur)).first->second;
  }
  const Expr& letter(Letter l) {
    auto it = letters_.find(l);
    if (it != letters_.end()) return it->second;
    Expr base = image_(letter_gen(l));
    Expr r = eng_.derive(base, letter_deriv(l));
    return letters_.emplace(l, std::move(r)).first->second;
  }

 private:
  Engine<C>& eng_;
  std::function<Expr(int)> image_;
  std::unordered_map<Word, Expr, WordHash> memo_;
  std::unordered_map<Letter, Expr> letters_;
};

// Canonical words of a given conformal weight whose generators pass the filter and whose
// total charge is as given. Odd letters are never repeated.
template <class C>
std::vector<Word> words_of_weight(const Ambient<C>& amb, const Rational& weight, int charge,
                                  const std::function<bool(int)>& allow) {
  std::vector<Letter> letters;
  std::vector<Rational> lw;
  Rational half(1, 2);
  for (int g = 0; g < amb.size(); ++g) {
    const auto& s = amb.gen(g);
    if (s.marker || !allow(g)) continue;
    if (sgn(s.weight) <= 0) throw Error(ErrorCode::Unsupported, "enumeration needs positive weights");
    for (int d = 0; s.weight + d <= weight; ++d) {
      letters.push_back(make_letter(g, d));
      lw.push_back(s.weight + d);
    }
  }
  std::vector<std::size_t> order(letters.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return letters[a] < letters[b]; });
  std::vector<Word> out;
  Word cur;
  std::function<void(std::size_t, Rational, int)> rec = [&](std::size_t from, Rational left, int q) {
    if (sgn(left) == 0) {
      if (q == charge) out.push_back(cur);
      return;
    }
    for (std::size_t oi = from; oi < order.size(); ++oi) {
      std::size_t i = order[oi];
      if (lw[i] > left) continue;
      const auto& s = amb.gen(letter_gen(letters[i]));
      cur.push_back(letters[i]);
      rec(s.odd ? oi + 1 : oi, left - lw[i], q + s.charge);
      cur.pop_back();
    }
  };
  rec(0, weight, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dsred
