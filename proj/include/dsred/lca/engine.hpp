#pragma once

// Normal products and lambda-brackets of arbitrary words in the universal enveloping
// vertex algebra of an ambient Lie conformal superalgebra.  Words are kept in PBW
// canonical form; brackets of composite words are reduced to the generator table with
// the Wick formulas.  An Engine memoizes every word-level result and is not thread-safe:
// use one engine per thread.

#include <memory>
#include <unordered_map>

#include "dsred/lca/ambient.hpp"

namespace dsred {

template <class C>
class Engine {
 public:
  using Expr = FieldExpr<C>;
  using LPoly = LambdaPoly<C>;

  explicit Engine(std::shared_ptr<const Ambient<C>> amb) : amb_(std::move(amb)) {
    bool seen_marker = false;
    for (int i = 0; i < amb_->size(); ++i) {
      if (amb_->gen(i).marker) {
        seen_marker = true;
        if (amb_->gen(i).odd) throw Error(ErrorCode::Unsupported, "module markers must be even");
      } else if (seen_marker) {
        throw Error(ErrorCode::Unsupported, "module markers must come after all other generators");
      }
    }
  }

  const Ambient<C>& ambient() const { return *amb_; }
  std::shared_ptr<const Ambient<C>> ambient_ptr() const { return amb_; }

  Expr letter(int g, int deriv = 0) const { return Expr::letter(make_letter(g, deriv)); }
  Expr gen(const std::string& name, int deriv = 0) const { return letter(amb_->index(name), deriv); }

  bool odd(Letter l) const { return amb_->gen(letter_gen(l)).odd; }
  bool marker(Letter l) const { return amb_->gen(letter_gen(l)).marker; }
  bool odd(const Word& w) const {
    bool p = false;
    for (Letter l : w) p ^= odd(l);
    return p;
  }
  Rational weight(const Word& w) const {
    Rational r = 0;
    for (Letter l : w) r += amb_->gen(letter_gen(l)).weight + letter_deriv(l);
    return r;
  }
  int charge(const Word& w) const {
    int q = 0;
    for (Letter l : w) q += amb_->gen(letter_gen(l)).charge;
    return q;
  }

  Expr derive(const Expr& e, int n = 1) {
    Expr cur = e;
    for (int i = 0; i < n; ++i) {
      Expr next;
      for (auto& [w, c] : cur.terms()) next.add(derive_word(w), c);
      cur = std::move(next);
    }
    return cur;
  }

  Expr normal_product(const Expr& a, const Expr& b) {
    Expr r;
    for (auto& [wa, ca] : a.terms())
      for (auto& [wb, cb] : b.terms()) r.add(np_words(wa, wb), ca * cb);
    return r;
  }

  LPoly bracket(const Expr& a, const Expr& b) {
    LPoly r;
    for (auto& [wa, ca] : a.terms())
      for (auto& [wb, cb] : b.terms()) r.add(br_words(wa, wb), ca * cb);
    return r;
  }

  Expr zero_mode(const Expr& a, const Expr& b) { return bracket(a, b).coeff(0); }

  // a_(n) b for any integer n.
  Expr nth_product(const Expr& a, const Expr& b, int n) {
    if (n >= 0) return bracket(a, b).coeff(n) * C(factorial(n));
    int j = -n - 1;
    return normal_product(derive(a, j) * C(Rational(1) / factorial(j)), b);
  }

  // Given [a_lambda b] = p, returns [b_lambda a] = -(-1)^{p(a)p(b)} p(-lambda - d).
  LPoly skew(const LPoly& p, bool both_odd) {
    LPoly r;
    C s(both_odd ? 1 : -1);
    for (int n = 0; n <= p.degree(); ++n) {
      Expr d = p.coeff(n);
      for (int i = 0; i <= n; ++i) {
        if (i > 0) d = derive(d);
        Rational f = binomial(n, i) * ((n % 2) ? -1 : 1);
        r.add(n - i, d, s * C(f));
      }
    }
    return r;
  }

  // Bracket computed through skew-symmetry from the opposite order; an independent route.
  LPoly bracket_by_skew(const Expr& a, const Expr& b) {
    LPoly r;
    for (auto& [wa, ca] : a.terms())
      for (auto& [wb, cb] : b.terms()) {
        if (wa.empty() || wb.empty()) continue;
        r.add(skew(br_words(wb, wa), odd(wa) && odd(wb)), ca * cb);
      }
    return r;
  }

  // Right-nested product of letters in arbitrary order, brought to canonical form.
  Expr canonicalize(const std::vector<Letter>& seq) {
    if (seq.empty()) return Expr::vacuum();
    Expr cur = Expr::letter(seq.back());
    for (int j = int(seq.size()) - 2; j >= 0; --j) cur = np_letter(seq[j], cur);
    return cur;
  }

  void clear_caches() {
    insert_memo_.clear();
    derive_memo_.clear();
    np_memo_.clear();
    br_memo_.clear();
  }
  std::size_t cache_size() const {
    return insert_memo_.size() + derive_memo_.size() + np_memo_.size() + br_memo_.size();
  }

 private:
  static Word pair_key(const Word& a, const Word& b) {
    Word k;
    k.reserve(a.size() + b.size() + 1);
    k.insert(k.end(), a.begin(), a.end());
    k.push_back(0xFFFFFFFFu);
    k.insert(k.end(), b.begin(), b.end());
    return k;
  }
  static Word tail(const Word& w) { return Word(w.begin() + 1, w.end()); }
  static Word cons(Letter x, const Word& w) {
    Word r;
    r.reserve(w.size() + 1);
    r.push_back(x);
    r.insert(r.end(), w.begin(), w.end());
    return r;
  }
  int sign(bool a, bool b) const { return a && b ? -1 : 1; }

  Expr np_letter(Letter x, const Expr& e) {
    Expr r;
    for (auto& [w, c] : e.terms()) r.add(insert(x, w), c);
    return r;
  }
  Expr np_expr_word(const Expr& e, const Word& w) {
    Expr r;
    for (auto& [v, c] : e.terms()) r.add(np_words(v, w), c);
    return r;
  }
  LPoly br_expr_word(const Expr& e, const Word& w) {
    LPoly r;
    for (auto& [v, c] : e.terms()) r.add(br_words(v, w), c);
    return r;
  }

  // Integral of [x_lambda y] over lambda from -d to 0.
  Expr qc(Letter x, Letter y) {
    const LPoly& e = br_words(Word{x}, Word{y});
    Expr r;
    for (int n = 0; n <= e.degree(); ++n)
      r.add(derive(e.coeff(n), n + 1), C(Rational((n % 2) ? -1 : 1, n + 1)));
    return r;
  }

  // :x w: for a canonical word w.
  const Expr& insert(Letter x, const Word& w) {
    Word key = cons(x, w);
    auto it = insert_memo_.find(key);
    if (it != insert_memo_.end()) return it->second;
    Expr r;
    if (marker(x) && !w.empty()) throw Error(ErrorCode::Unsupported, "marker inserted to the left");
    if (w.empty() || x < w[0] || (x == w[0] && !odd(x))) {
      r.add(key, C(1));
    } else {
      Letter y = w[0];
      Word R = tail(w);
      if (x == y) {
        // :x:xR:: = 1/2 :(integral [x x]) R: for odd x.
        r.add(np_expr_word(qc(x, x), R), C(Rational(1, 2)));
      } else {
        r.add(np_letter(y, insert(x, R)), C(sign(odd(x), odd(y))));
        r.add(np_expr_word(qc(x, y), R), C(1));
      }
    }
    return insert_memo_.emplace(std::move(key), std::move(r)).first->second;
  }

  const Expr& derive_word(const Word& w) {
    auto it = derive_memo_.find(w);
    if (it != derive_memo_.end()) return it->second;
    Expr r;
    for (std::size_t i = 0; i < w.size(); ++i) {
      Letter l = w[i];
      if (marker(l)) {
        Expr cur = amb_->marker_derivative(letter_gen(l));
        for (int j = int(i) - 1; j >= 0; --j) cur = np_letter(w[j], cur);
        r += cur;
        continue;
      }
      Letter nl = letter_d(l);
      if (i == 0 || w[i - 1] < nl || (w[i - 1] == nl && !odd(nl))) {
        Word nw = w;
        nw[i] = nl;
        r.add(nw, C(1));
      } else {
        std::vector<Letter> seq(w.begin(), w.end());
        seq[i] = nl;
        r += canonicalize(seq);
      }
    }
    return derive_memo_.emplace(w, std::move(r)).first->second;
  }

  const Expr& np_words(const Word& a, const Word& b) {
    static const Expr empty;
    if (a.empty() && b.empty()) {
      thread_local Expr vac = Expr::vacuum();
      return vac;
    }
    Word key = pair_key(a, b);
    auto it = np_memo_.find(key);
    if (it != np_memo_.end()) return it->second;
    Expr r;
    if (a.empty()) {
      r.add(b, C(1));
    } else if (b.empty()) {
      r.add(a, C(1));
    } else if (a.size() == 1 && !marker(a[0])) {
      r = insert(a[0], b);
    } else if (a.size() == 1) {
      // Marker on the left: :G b: = :b G: + integral_{-d}^0 [G_lambda b].
      r.add(np_words(b, a), C(sign(odd(a), odd(b))));
      const LPoly& e = br_words(a, b);
      for (int n = 0; n <= e.degree(); ++n)
        r.add(derive(e.coeff(n), n + 1), C(Rational((n % 2) ? -1 : 1, n + 1)));
    } else {
      // Quasi-associativity with a = :l R:.
      Letter l = a[0];
      Word R = tail(a);
      r = np_letter(l, np_words(R, b));
      LPoly cr = br_words(R, b);
      for (int n = 0; n <= cr.degree(); ++n)
        if (!cr.coeff(n).is_zero()) r.add(np_letter(letter_d(l, n + 1), cr.coeff(n)), C(Rational(1, n + 1)));
      LPoly dl = br_words(Word{l}, b);
      Expr dR = Expr::word(R);
      C s(sign(odd(l), odd(R)));
      for (int n = 0; n <= dl.degree(); ++n) {
        dR = derive(dR);
        if (!dl.coeff(n).is_zero()) r.add(normal_product(dR, dl.coeff(n)), s * C(Rational(1, n + 1)));
      }
    }
    (void)empty;
    return np_memo_.emplace(std::move(key), std::move(r)).first->second;
  }

  LPoly br_letters(Letter x, Letter y) {
    LPoly p = amb_->bracket(letter_gen(x), letter_gen(y));
    for (int i = 0; i < letter_deriv(y); ++i) {
      LPoly q = p.shifted(1);
      for (int n = 0; n <= p.degree(); ++n) q.add(n, derive(p.coeff(n)));
      p = std::move(q);
    }
    int m = letter_deriv(x);
    if (m) {
      p = p.shifted(m);
      if (m % 2) p *= C(-1);
    }
    return p;
  }

  const LPoly& br_words(const Word& a, const Word& b) {
    static const LPoly zero;
    if (a.empty() || b.empty()) return zero;
    Word key = pair_key(a, b);
    auto it = br_memo_.find(key);
    if (it != br_memo_.end()) return it->second;
    LPoly r;
    if (a.size() == 1 && b.size() == 1) {
      r = br_letters(a[0], b[0]);
    } else if (a.size() == 1) {
      // Right Wick formula, b = :y R:.
      Letter x = a[0], y = b[0];
      Word R = tail(b);
      LPoly e = br_words(a, Word{y});
      LPoly f = br_words(a, R);
      for (int n = 0; n <= e.degree(); ++n) r.add(n, np_expr_word(e.coeff(n), R));
      C s(sign(odd(x), odd(y)));
      for (int n = 0; n <= f.degree(); ++n) r.add(n, np_letter(y, f.coeff(n)), s);
      for (int n = 0; n <= e.degree(); ++n) {
        if (e.coeff(n).is_zero()) continue;
        LPoly g = br_expr_word(e.coeff(n), R);
        for (int m = 0; m <= g.degree(); ++m) r.add(n + m + 1, g.coeff(m), C(Rational(1, m + 1)));
      }
    } else {
      // Left Wick formula, a = :y R:.
      Letter y = a[0];
      Word R = tail(a);
      LPoly p = br_words(R, b);
      LPoly q = br_words(Word{y}, b);
      C s(sign(odd(y), odd(R)));
      for (int n = 0; n <= p.degree(); ++n) {
        if (p.coeff(n).is_zero()) continue;
        for (int j = 0; j <= n; ++j) r.add(n - j, np_letter(letter_d(y, j), p.coeff(n)), C(binomial(n, j)));
      }
      std::vector<Expr> dR{Expr::word(R)};
      for (int n = 0; n <= q.degree(); ++n) {
        if (q.coeff(n).is_zero()) continue;
        while (int(dR.size()) <= n) dR.push_back(derive(dR.back()));
        for (int j = 0; j <= n; ++j) r.add(n - j, normal_product(dR[j], q.coeff(n)), s * C(binomial(n, j)));
      }
      for (int n = 0; n <= q.degree(); ++n) {
        if (q.coeff(n).is_zero()) continue;
        LPoly t = bracket(Expr::word(R), q.coeff(n));
        for (int m = 0; m <= t.degree(); ++m)
          r.add(n + m + 1, t.coeff(m), s * C(factorial(n) * factorial(m) / factorial(n + m + 1)));
      }
    }
    return br_memo_.emplace(std::move(key), std::move(r)).first->second;
  }

  std::shared_ptr<const Ambient<C>> amb_;
  std::unordered_map<Word, Expr, WordHash> insert_memo_, derive_memo_, np_memo_;
  std::unordered_map<Word, LPoly, WordHash> br_memo_;
};

}  // namespace dsred
