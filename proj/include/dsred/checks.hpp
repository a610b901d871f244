#pragma once

// Property suites: the structure of D(2,1;alpha) and the axioms of the lambda-bracket engine.
// Each check yields a named record; a record fails with a short description of the first
// counterexample.

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "dsred/lca/io.hpp"
#include "dsred/lca/transform.hpp"
#include "dsred/superalg.hpp"

namespace dsred {

struct CheckRecord {
  std::string id;
  bool pass = true;
  std::string detail;  // first counterexample, or a count of cases
  double seconds = 0;
};

namespace detail {

template <class F>
CheckRecord timed(const std::string& id, F&& body) {
  auto t0 = std::chrono::steady_clock::now();
  CheckRecord r{id};
  body(r);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace detail

inline std::vector<CheckRecord> structure_checks(const SuperAlgebra& g) {
  using SA = SuperAlgebra;
  const int n = SA::kDim;
  std::vector<CheckRecord> out;
  out.push_back(detail::timed("super-antisymmetry", [&](CheckRecord& r) {
    for (int a = 0; a < n && r.pass; ++a)
      for (int b = 0; b < n && r.pass; ++b) {
        Vec s = g.bracket(SA::unit(a), SA::unit(b)), t = g.bracket(SA::unit(b), SA::unit(a));
        Scalar sg(g.odd(a) && g.odd(b) ? -1 : 1);
        for (int i = 0; i < n; ++i)
          if (!(s[i] + sg * t[i]).is_zero()) {
            r.pass = false;
            r.detail = "[" + g.name(a) + "," + g.name(b) + "]";
            break;
          }
      }
    if (r.pass) r.detail = std::to_string(n * n) + " pairs";
  }));
  out.push_back(detail::timed("super-jacobi", [&](CheckRecord& r) {
    for (int a = 0; a < n && r.pass; ++a)
      for (int b = 0; b < n && r.pass; ++b)
        for (int c = 0; c < n && r.pass; ++c) {
          // [a,[b,c]] = [[a,b],c] + (-1)^{p(a)p(b)} [b,[a,c]]
          Vec l = g.bracket(SA::unit(a), g.bracket(b, c));
          Vec r1 = g.bracket(g.bracket(a, b), SA::unit(c));
          Vec r2 = g.bracket(SA::unit(b), g.bracket(a, c));
          Scalar s2(g.odd(a) && g.odd(b) ? -1 : 1);
          for (int i = 0; i < n; ++i)
            if (!(l[i] - r1[i] - s2 * r2[i]).is_zero()) {
              r.pass = false;
              r.detail = g.name(a) + " " + g.name(b) + " " + g.name(c);
              break;
            }
        }
    if (r.pass) r.detail = std::to_string(n * n * n) + " triples";
  }));
  out.push_back(detail::timed("form-invariance", [&](CheckRecord& r) {
    for (int x = 0; x < n && r.pass; ++x)
      for (int y = 0; y < n && r.pass; ++y) {
        Scalar sg(g.odd(x) && g.odd(y) ? -1 : 1);
        if (!(g.form(x, y) - sg * g.form(y, x)).is_zero()) {
          r.pass = false;
          r.detail = "supersymmetry at " + g.name(x) + " " + g.name(y);
        }
        for (int z = 0; z < n && r.pass; ++z)
          if (!(g.form(g.bracket(x, y), SA::unit(z)) - g.form(SA::unit(x), g.bracket(y, z))).is_zero()) {
            r.pass = false;
            r.detail = g.name(x) + " " + g.name(y) + " " + g.name(z);
          }
      }
    if (r.pass && g.form_matrix().rank() != n) {
      r.pass = false;
      r.detail = "degenerate form";
    }
  }));
  out.push_back(detail::timed("killing-vanishes", [&](CheckRecord& r) {
    for (int x = 0; x < n && r.pass; ++x)
      for (int y = 0; y < n && r.pass; ++y)
        if (!g.killing(SA::unit(x), SA::unit(y)).is_zero()) {
          r.pass = false;
          r.detail = g.name(x) + " " + g.name(y);
        }
  }));
  return out;
}

// Axioms of an engine on all generator pairs and triples, and on random normally ordered
// words of bounded weight (drawn with the given seed). The ambient must not have markers
// among the generators used.
template <class C>
class AxiomSuite {
 public:
  using Expr = FieldExpr<C>;
  using LPoly = LambdaPoly<C>;

  AxiomSuite(Engine<C>& eng, std::uint64_t seed, int random_words = 100, Rational max_weight = Rational(5, 2))
      : eng_(eng) {
    const auto& amb = eng.ambient();
    for (int g = 0; g < amb.size(); ++g)
      if (!amb.gen(g).marker) gens_.push_back(eng.letter(g));
    std::vector<Word> pool;
    auto allow = [&](int g) { return !amb.gen(g).marker && sgn(amb.gen(g).weight) > 0; };
    std::set<int> charges;
    for (int g = 0; g < amb.size(); ++g) charges.insert(amb.gen(g).charge);
    int qmax = 0;
    for (int q : charges) qmax = std::max(qmax, std::abs(q));
    for (Rational w(1, 2); w <= max_weight; w += Rational(1, 2))
      for (int q = -3 * qmax; q <= 3 * qmax; ++q)
        for (auto& wd : words_of_weight(amb, w, q, allow))
          if (wd.size() > 1) pool.push_back(wd);
    std::mt19937_64 rng(seed);
    for (int i = 0; i < random_words && !pool.empty(); ++i) words_.push_back(Expr::word(pool[rng() % pool.size()]));
    for (std::size_t i = 0; i < words_.size(); ++i)
      partner_.push_back({int(rng() % gens_.size()), int(rng() % gens_.size()), int(rng() % words_.size())});
  }

  std::vector<CheckRecord> run() {
    std::vector<CheckRecord> out;
    out.push_back(detail::timed("sesquilinearity", [&](CheckRecord& r) {
      pairs(r, [&](const Expr& a, const Expr& b) { return sesquilinear(a, b); });
    }));
    out.push_back(detail::timed("skew-symmetry", [&](CheckRecord& r) {
      pairs(r, [&](const Expr& a, const Expr& b) { return eng_.bracket(a, b) == eng_.bracket_by_skew(a, b); });
    }));
    out.push_back(detail::timed("jacobi", [&](CheckRecord& r) {
      triples(r, [&](const Expr& a, const Expr& b, const Expr& c) { return jacobi(a, b, c); });
    }));
    out.push_back(detail::timed("wick", [&](CheckRecord& r) {
      triples(r, [&](const Expr& a, const Expr& b, const Expr& c) { return wick(a, b, c); });
    }));
    out.push_back(detail::timed("quasi-commutativity", [&](CheckRecord& r) {
      pairs(r, [&](const Expr& a, const Expr& b) { return quasi_commutative(a, b); });
    }));
    out.push_back(detail::timed("quasi-associativity", [&](CheckRecord& r) {
      triples(r, [&](const Expr& a, const Expr& b, const Expr& c) { return quasi_associative(a, b, c); });
    }));
    return out;
  }

  std::size_t random_word_count() const { return words_.size(); }

 private:
  struct Partner {
    int g1, g2, w;
  };

  bool odd(const Expr& e) const {
    for (auto& [w, c] : e.terms()) return eng_.odd(w);
    return false;
  }
  C psign(const Expr& a, const Expr& b) const { return C(odd(a) && odd(b) ? -1 : 1); }
  std::string show(const Expr& e) const { return to_string(eng_.ambient(), e); }

  void pairs(CheckRecord& r, const std::function<bool(const Expr&, const Expr&)>& f) {
    int n = 0;
    auto one = [&](const Expr& a, const Expr& b) {
      if (!r.pass) return;
      ++n;
      if (!f(a, b)) {
        r.pass = false;
        r.detail = show(a) + " , " + show(b);
      }
    };
    for (auto& a : gens_)
      for (auto& b : gens_) one(a, b);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      one(gens_[partner_[i].g1], words_[i]);
      one(words_[i], gens_[partner_[i].g2]);
      one(words_[i], words_[partner_[i].w]);
    }
    if (r.pass) r.detail = std::to_string(n) + " pairs";
  }

  void triples(CheckRecord& r, const std::function<bool(const Expr&, const Expr&, const Expr&)>& f) {
    int n = 0;
    auto one = [&](const Expr& a, const Expr& b, const Expr& c) {
      if (!r.pass) return;
      ++n;
      if (!f(a, b, c)) {
        r.pass = false;
        r.detail = show(a) + " , " + show(b) + " , " + show(c);
      }
    };
    for (auto& a : gens_)
      for (auto& b : gens_)
        for (auto& c : gens_) one(a, b, c);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      auto& a = gens_[partner_[i].g1];
      auto& b = gens_[partner_[i].g2];
      one(a, b, words_[i]);
      one(a, words_[i], b);
      one(words_[i], a, b);
    }
    if (r.pass) r.detail = std::to_string(n) + " triples";
  }

  // [d a_lambda b] = -lambda [a_lambda b],  [a_lambda d b] = (lambda + d)[a_lambda b]
  bool sesquilinear(const Expr& a, const Expr& b) {
    LPoly p = eng_.bracket(a, b);
    LPoly l1 = eng_.bracket(eng_.derive(a), b), r1 = p.shifted(1) * C(-1);
    LPoly l2 = eng_.bracket(a, eng_.derive(b)), r2 = p.shifted(1);
    for (int n = 0; n <= p.degree(); ++n) r2.add(n, eng_.derive(p.coeff(n)));
    return l1 == r1 && l2 == r2;
  }

  // [a_l [b_m c]] - p(a,b) [b_m [a_l c]] - [[a_l b]_{l+m} c] as a polynomial in (l, m).
  bool jacobi(const Expr& a, const Expr& b, const Expr& c) {
    std::map<std::pair<int, int>, Expr> m;
    C pab = psign(a, b);
    auto bc = eng_.bracket(b, c);
    for (int j = 0; j <= bc.degree(); ++j) {
      auto q = eng_.bracket(a, bc.coeff(j));
      for (int i = 0; i <= q.degree(); ++i) m[{i, j}].add(q.coeff(i), C(1));
    }
    auto ac = eng_.bracket(a, c);
    for (int i = 0; i <= ac.degree(); ++i) {
      auto q = eng_.bracket(b, ac.coeff(i));
      for (int j = 0; j <= q.degree(); ++j) m[{i, j}].add(q.coeff(j), -pab);
    }
    auto ab = eng_.bracket(a, b);
    for (int n = 0; n <= ab.degree(); ++n) {
      auto q = eng_.bracket(ab.coeff(n), c);
      for (int j = 0; j <= q.degree(); ++j)
        for (int i = 0; i <= j; ++i) m[{n + i, j - i}].add(q.coeff(j), C(-binomial(j, i)));
    }
    for (auto& [k, e] : m)
      if (!e.is_zero()) return false;
    return true;
  }

  // [a_lambda :bc:] = :[a_lambda b] c: + p(a,b) :b [a_lambda c]: + int_0^lambda [[a_lambda b]_mu c] dmu
  bool wick(const Expr& a, const Expr& b, const Expr& c) {
    LPoly lhs = eng_.bracket(a, eng_.normal_product(b, c));
    LPoly rhs;
    auto ab = eng_.bracket(a, b);
    auto ac = eng_.bracket(a, c);
    for (int n = 0; n <= ab.degree(); ++n) {
      rhs.add(n, eng_.normal_product(ab.coeff(n), c));
      auto q = eng_.bracket(ab.coeff(n), c);
      for (int m = 0; m <= q.degree(); ++m) rhs.add(n + m + 1, q.coeff(m), C(Rational(1, m + 1)));
    }
    for (int n = 0; n <= ac.degree(); ++n) rhs.add(n, eng_.normal_product(b, ac.coeff(n)), psign(a, b));
    return lhs == rhs;
  }

  // :ab: - p(a,b) :ba: = int_{-d}^0 [a_lambda b] dlambda
  bool quasi_commutative(const Expr& a, const Expr& b) {
    Expr lhs = eng_.normal_product(a, b);
    lhs.add(eng_.normal_product(b, a), -psign(a, b));
    auto p = eng_.bracket(a, b);
    Expr rhs;
    for (int n = 0; n <= p.degree(); ++n)
      rhs.add(eng_.derive(p.coeff(n), n + 1), C(Rational(n % 2 ? -1 : 1, n + 1)));
    return lhs == rhs;
  }

  // ::ab:c: - :a:bc:: = :(int_0^d a)[b_lambda c]: + p(a,b) :(int_0^d b)[a_lambda c]:
  bool quasi_associative(const Expr& a, const Expr& b, const Expr& c) {
    Expr lhs = eng_.normal_product(eng_.normal_product(a, b), c);
    lhs.add(eng_.normal_product(a, eng_.normal_product(b, c)), C(-1));
    Expr rhs;
    auto bc = eng_.bracket(b, c);
    for (int n = 0; n <= bc.degree(); ++n)
      rhs.add(eng_.normal_product(eng_.derive(a, n + 1), bc.coeff(n)), C(Rational(1, n + 1)));
    auto ac = eng_.bracket(a, c);
    for (int n = 0; n <= ac.degree(); ++n)
      rhs.add(eng_.normal_product(eng_.derive(b, n + 1), ac.coeff(n)), psign(a, b) * C(Rational(1, n + 1)));
    return lhs == rhs;
  }

  Engine<C>& eng_;
  std::vector<Expr> gens_;
  std::vector<Expr> words_;
  std::vector<Partner> partner_;
};

}  // namespace dsred
