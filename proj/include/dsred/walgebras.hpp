#pragma once

// Abstract W-algebra presentations by lambda-bracket tables, and checks that concrete
// fields satisfy them, possibly modulo an ideal.
//
// Table files:
//   # comment
//   gen NAME odd|even WEIGHT
//   [A _ B] = <lambda-polynomial in the generators>
// An entry may continue on following lines that start with whitespace. Right sides use
// the expression language of the parser: ':A d(B):' is a (right-nested) normal product,
// 'lambda' the bracket variable, and coefficients are scalars in c, eps, MU, SQRTn, I.
// Words on the right are formal: they are kept as written, not normally ordered.

#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "dsred/lca/io.hpp"
#include "dsred/lca/transform.hpp"
#include "dsred/linalg.hpp"

namespace dsred {

using SExpr = FieldExpr<Scalar>;
using SPoly = LambdaPoly<Scalar>;

// Leibniz rule on formal words.
inline SExpr formal_derive(const SExpr& e, int n = 1) {
  SExpr cur = e;
  for (int t = 0; t < n; ++t) {
    SExpr next;
    for (auto& [w, c] : cur.terms())
      for (std::size_t i = 0; i < w.size(); ++i) {
        Word v = w;
        v[i] = letter_d(v[i]);
        next.add(v, c);
      }
    cur = std::move(next);
  }
  return cur;
}

namespace detail {

struct FormalBackend {
  const Ambient<Scalar>& amb;
  using LPoly = SPoly;

  static bool scalar_like(const LPoly& p) { return EngineBackend<Scalar>::scalar_like(p); }
  static const Scalar& vac(const LPoly& p) { return EngineBackend<Scalar>::vac(p); }

  LPoly number(const Rational& q) { return LPoly(SExpr::vacuum(Scalar(q))); }
  LPoly symbol(const std::string& name, std::size_t) {
    if (name == "lambda") return LPoly(SExpr::vacuum()).shifted(1);
    int g = amb.find(name);
    if (g >= 0) return LPoly(SExpr::word(Word{make_letter(g)}));
    Scalar s;
    if (scalar_symbol(name, s)) return LPoly(SExpr::vacuum(s));
    throw Error(ErrorCode::SyntaxError, "unknown symbol '" + name + "'");
  }
  LPoly add(const LPoly& a, const LPoly& b) { return a + b; }
  LPoly sub(const LPoly& a, const LPoly& b) { return a - b; }
  LPoly neg(const LPoly& a) { return a * Scalar(-1); }
  LPoly mul(const LPoly& a, const LPoly& b) {
    const LPoly* s = &a;
    const LPoly* f = &b;
    if (!scalar_like(*s)) std::swap(s, f);
    if (!scalar_like(*s)) throw Error(ErrorCode::SyntaxError, "product of two fields; use :A B:");
    LPoly r;
    for (int n = 0; n <= s->degree(); ++n) {
      auto& t = s->coeff(n).terms();
      if (!t.empty()) r.add(f->shifted(n), t.begin()->second);
    }
    return r;
  }
  LPoly div(const LPoly& a, const LPoly& b) {
    if (!scalar_like(b) || b.degree() > 0) throw Error(ErrorCode::SyntaxError, "division by a non-scalar");
    if (b.is_zero()) throw Error(ErrorCode::ZeroDenominator, "division by zero");
    return a * inverse(vac(b));
  }
  LPoly pow(const LPoly& a, int n) {
    if (!scalar_like(a)) throw Error(ErrorCode::SyntaxError, "power of a field");
    if (a.degree() == 0) return LPoly(SExpr::vacuum(vac(a).pow(n)));
    if (n < 0) throw Error(ErrorCode::SyntaxError, "negative power of lambda");
    LPoly r(SExpr::vacuum());
    for (int i = 0; i < n; ++i) r = mul(r, a);
    return r;
  }
  LPoly normal_product(std::vector<LPoly> xs) {
    SExpr cur = SExpr::vacuum();
    for (int i = int(xs.size()) - 1; i >= 0; --i) {
      if (xs[i].degree() > 0) throw Error(ErrorCode::SyntaxError, "lambda inside a normal product");
      SExpr next;
      for (auto& [u, a] : xs[i].coeff(0).terms())
        for (auto& [v, b] : cur.terms()) {
          Word w = u;
          w.insert(w.end(), v.begin(), v.end());
          next.add(w, a * b);
        }
      cur = std::move(next);
    }
    return LPoly(cur);
  }
  LPoly derive(const LPoly& x, int n) {
    if (x.degree() > 0) throw Error(ErrorCode::SyntaxError, "derivative of lambda");
    return LPoly(formal_derive(x.coeff(0), n));
  }
};

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

class BracketTable {
 public:
  struct Entry {
    int a, b;
    SPoly rhs;
  };

  BracketTable() : amb_(std::make_shared<Ambient<Scalar>>()) {}

  int add_generator(const std::string& name, bool odd, const Rational& weight) {
    return amb_->add_generator(GeneratorSymbol{name, odd, weight});
  }
  const Ambient<Scalar>& ambient() const { return *amb_; }
  std::shared_ptr<const Ambient<Scalar>> ambient_ptr() const { return amb_; }
  int size() const { return amb_->size(); }
  const std::vector<Entry>& entries() const { return entries_; }

  SPoly parse_poly(std::string_view text) const {
    detail::FormalBackend b{*amb_};
    return expr::evaluate(*expr::parse(text), b);
  }
  SExpr parse_expr(std::string_view text) const {
    auto p = parse_poly(text);
    if (p.degree() > 0) throw Error(ErrorCode::SyntaxError, "unexpected lambda");
    return p.coeff(0);
  }

  // Declares [a_lambda b]; a second declaration of the same unordered pair must agree
  // with the skew transform of the first.
  void declare(int a, int b, SPoly rhs) {
    if (auto* q = find(b, a); q && !(skew(*q, b, a) == rhs))
      throw Error(ErrorCode::ConsistencyError, "[" + name(a) + " _ " + name(b) + "] is not the skew of [" +
                                                   name(b) + " _ " + name(a) + "]");
    if (find(a, b)) throw Error(ErrorCode::ConsistencyError, "duplicate entry [" + name(a) + " _ " + name(b) + "]");
    if (a == b && !(skew(rhs, a, a) == rhs))
      throw Error(ErrorCode::ConsistencyError, "[" + name(a) + " _ " + name(a) + "] is not skew-symmetric");
    index_[{a, b}] = entries_.size();
    entries_.push_back({a, b, std::move(rhs)});
  }

  const SPoly* find(int a, int b) const {
    auto it = index_.find({a, b});
    return it == index_.end() ? nullptr : &entries_[it->second].rhs;
  }
  // [a_lambda b], from the declaration or by skew-symmetry.
  std::optional<SPoly> bracket(int a, int b) const {
    if (auto* p = find(a, b)) return *p;
    if (auto* q = find(b, a)) return skew(*q, b, a);
    return std::nullopt;
  }

  // [b_lambda a] = -(-1)^{p(a)p(b)} [a_{-lambda-d} b] with d acting formally.
  SPoly skew(const SPoly& p, int a, int b) const {
    bool both_odd = amb_->gen(a).odd && amb_->gen(b).odd;
    Scalar s(both_odd ? 1 : -1);
    SPoly r;
    for (int n = 0; n <= p.degree(); ++n)
      for (int i = 0; i <= n; ++i) {
        Scalar f = s * Scalar(binomial(n, i) * ((n % 2) ? -1 : 1));
        r.add(n - i, formal_derive(p.coeff(n), i), f);
      }
    return r;
  }

  const std::string& name(int g) const { return amb_->gen(g).name; }

  std::string render() const {
    std::ostringstream os;
    for (int g = 0; g < size(); ++g)
      os << "gen " << name(g) << (amb_->gen(g).odd ? " odd " : " even ") << amb_->gen(g).weight.get_str() << "\n";
    for (auto& e : entries_) os << "[" << name(e.a) << " _ " << name(e.b) << "] = " << to_string(*amb_, e.rhs) << "\n";
    return os.str();
  }

  // Substitutes scalars in every entry (c, eps, MU, ...).
  BracketTable substituted(const Substitution& s) const {
    BracketTable t;
    t.amb_ = amb_;
    t.index_ = index_;
    for (auto& e : entries_)
      t.entries_.push_back({e.a, e.b, map_coeffs<Scalar>(e.rhs, [&](const Scalar& x) { return substitute(x, s); })});
    return t;
  }

 private:
  std::shared_ptr<Ambient<Scalar>> amb_;
  std::vector<Entry> entries_;
  std::map<std::pair<int, int>, std::size_t> index_;
};

inline BracketTable parse_table(std::istream& in) {
  BracketTable t;
  std::vector<std::pair<int, std::string>> lines;
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    auto h = line.find('#');
    if (h != std::string::npos) line.erase(h);
    if (detail::trim(line).empty()) continue;
    if (std::isspace(static_cast<unsigned char>(line[0]))) {
      if (lines.empty()) throw Error(ErrorCode::SyntaxError, "line " + std::to_string(no) + ": stray continuation");
      lines.back().second += " " + detail::trim(line);
    } else {
      lines.emplace_back(no, detail::trim(line));
    }
  }
  for (auto& [ln, text] : lines) {
    auto where = [&, ln = ln](const std::string& m) { return "line " + std::to_string(ln) + ": " + m; };
    try {
      if (text.rfind("gen ", 0) == 0) {
        std::istringstream is(text.substr(4));
        std::string name, parity, weight, extra;
        is >> name >> parity >> weight;
        if (name.empty() || weight.empty() || (is >> extra) || (parity != "odd" && parity != "even"))
          throw Error(ErrorCode::SyntaxError, where("expected 'gen NAME odd|even WEIGHT'"));
        Rational wq(weight);
        wq.canonicalize();
        t.add_generator(name, parity == "odd", wq);
        continue;
      }
      if (text[0] != '[') throw Error(ErrorCode::SyntaxError, where("expected 'gen' or '['"));
      auto close = text.find(']');
      auto eq = text.find('=', close == std::string::npos ? 0 : close);
      if (close == std::string::npos || eq == std::string::npos)
        throw Error(ErrorCode::SyntaxError, where("expected '[A _ B] = ...'"));
      std::istringstream is(text.substr(1, close - 1));
      std::string a, us, b, extra;
      is >> a >> us >> b;
      if (us != "_" || b.empty() || (is >> extra)) throw Error(ErrorCode::SyntaxError, where("expected '[A _ B]'"));
      if (!detail::trim(text.substr(close + 1, eq - close - 1)).empty())
        throw Error(ErrorCode::SyntaxError, where("junk before '='"));
      int ia = t.ambient().find(a), ib = t.ambient().find(b);
      if (ia < 0 || ib < 0) throw Error(ErrorCode::SyntaxError, where("unknown generator in [" + a + " _ " + b + "]"));
      t.declare(ia, ib, t.parse_poly(text.substr(eq + 1)));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SyntaxError && std::string(e.what()).find("line ") != std::string::npos) throw;
      throw Error(e.code(), where(std::string(e.what())));
    }
  }
  return t;
}

inline BracketTable parse_table_string(const std::string& s) {
  std::istringstream in(s);
  return parse_table(in);
}

inline BracketTable parse_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigParse, "cannot open " + path);
  return parse_table(in);
}

#ifndef DSRED_DATA_DIR
#define DSRED_DATA_DIR "data"
#endif

inline std::string data_path(const std::string& rel) { return std::string(DSRED_DATA_DIR) + "/" + rel; }

inline Scalar mu_of(const Scalar& c, const Scalar& eps) {
  if ((Scalar(27) - Scalar(2) * c).is_zero()) throw Error(ErrorCode::PoleAtC, "mu has a pole at c = 27/2");
  Substitution s;
  s.vars[kC] = c;
  s.vars[kEps] = eps;
  return substitute(Scalar::radical(kMu), s);
}

// A table in c, eps, MU specialized at (c, eps). MU takes the principal branch unless a
// value is given, which must square to the radicand.
inline BracketTable sw_table(const BracketTable& formal, const Scalar& c, const Scalar& eps,
                             const std::optional<Scalar>& mu = std::nullopt) {
  Scalar m = mu_of(c, eps);
  if (mu) {
    if (!(*mu * *mu == m * m)) throw Error(ErrorCode::InconsistentRadical, "mu does not square to its radicand");
    m = *mu;
  }
  Substitution s;
  s.vars[kC] = c;
  s.vars[kEps] = eps;
  s.radicals[kMu] = m;
  return formal.substituted(s);
}

inline BracketTable sw_table(const Scalar& c, const Scalar& eps, const std::optional<Scalar>& mu = std::nullopt) {
  static const BracketTable formal = parse_table_file(data_path("tables/sw.table"));
  return sw_table(formal, c, eps, mu);
}

inline BracketTable sv_table() { return parse_table_file(data_path("tables/sv_g2.table")); }

// ---------------------------------------------------------------------------
// Verification

using Assignment = std::map<std::string, SExpr>;

// Images of formal expressions of a table in a concrete engine.
class Evaluator {
 public:
  Evaluator(const BracketTable& t, const Assignment& images, Engine<Scalar>& eng)
      : map_(eng, [&t, &images](int g) -> SExpr {
          auto it = images.find(t.name(g));
          if (it == images.end()) throw Error(ErrorCode::ConsistencyError, "no image for " + t.name(g));
          return it->second;
        }) {}
  SExpr operator()(const SExpr& e) { return map_(e); }
  SPoly operator()(const SPoly& p) {
    SPoly r;
    for (int n = 0; n <= p.degree(); ++n) r.add(n, map_(p.coeff(n)));
    return r;
  }

 private:
  WordMap<Scalar> map_;
};

// The ideal generated by one element, cut at a weight bound. Components are spanned by
// closing under d, under X_(n) for n >= 0 and under :d^m X .: for the assigned generators X.
struct IdealSpec {
  std::string generator;  // formal expression over the table generators
  Rational cutoff{5};
};

inline IdealSpec sv_ideal(const Rational& cutoff = 5) {
  return IdealSpec{"2*SQRT14*:G W: - 3*:H Mt: + 2*:L G: - 2*SQRT14*d(U)", cutoff};
}

class IdealComponents {
 public:
  struct Reduced {
    SExpr residue;
    std::vector<std::pair<std::string, Scalar>> certificate;  // descendant description, coefficient
  };

  IdealComponents(const IdealSpec& spec, const BracketTable& table, const Assignment& images, Engine<Scalar>& eng)
      : eng_(eng), cutoff_(spec.cutoff) {
    Evaluator ev(table, images, eng);
    for (int g = 0; g < table.size(); ++g)
      gens_.push_back({table.name(g), images.at(table.name(g)), table.ambient().gen(g).weight});
    generator_ = ev(table.parse_expr(spec.generator));
    if (generator_.is_zero()) return;
    generator_weight_ = weight_of(generator_);
    std::vector<std::pair<SExpr, std::string>> work;
    offer(generator_, "I", work);
    while (!work.empty()) {
      auto [x, desc] = std::move(work.back());
      work.pop_back();
      Rational w = weight_of(x);
      if (w + 1 <= cutoff_) offer(eng_.derive(x), "d(" + desc + ")", work);
      for (auto& X : gens_) {
        for (int m = 0; X.weight + m + w <= cutoff_; ++m)
          offer(eng_.normal_product(eng_.derive(X.image, m), x),
                ":" + (m ? "d^" + std::to_string(m) + "(" + X.name + ")" : X.name) + " " + desc + ":", work);
        SPoly p = eng_.bracket(X.image, x);
        for (int n = 0; n <= p.degree(); ++n)
          if (weight_of_bracket(X.weight, w, n) <= cutoff_)
            offer(p.coeff(n), X.name + "_(" + std::to_string(n) + ")" + desc, work);
      }
    }
  }

  const SExpr& generator() const { return generator_; }
  const Rational& cutoff() const { return cutoff_; }

  std::vector<SExpr> basis(const Rational& w) const {
    auto it = spans_.find(w);
    return it == spans_.end() ? std::vector<SExpr>{} : it->second.basis();
  }
  int dim(const Rational& w) const {
    auto it = spans_.find(w);
    return it == spans_.end() ? 0 : it->second.dim();
  }
  std::vector<Rational> weights() const {
    std::vector<Rational> out;
    for (auto& [w, s] : spans_) out.push_back(w);
    return out;
  }

  // e must be homogeneous of weight <= cutoff.
  Reduced reduce(const SExpr& e) const {
    Reduced r;
    if (e.is_zero()) return r;
    Rational w = weight_of(e);
    if (w > cutoff_) throw Error(ErrorCode::Unsupported, "weight above the ideal cutoff");
    auto it = spans_.find(w);
    if (it == spans_.end()) {
      r.residue = e;
      return r;
    }
    LinearSpan<Scalar>::Combo used;
    r.residue = it->second.reduce(e, &used);
    for (auto& [id, c] : used) r.certificate.emplace_back(descriptions_.at(w).at(id), c);
    return r;
  }

 private:
  struct Gen {
    std::string name;
    SExpr image;
    Rational weight;
  };

  static Rational weight_of_bracket(const Rational& a, const Rational& b, int n) { return a + b - 1 - n; }

  Rational weight_of(const SExpr& e) const {
    std::optional<Rational> w;
    for (auto& [word, c] : e.terms()) {
      Rational x = eng_.weight(word);
      if (w && *w != x) throw Error(ErrorCode::Unsupported, "inhomogeneous expression");
      w = x;
    }
    return w ? *w : Rational(0);
  }

  void offer(const SExpr& x, const std::string& desc, std::vector<std::pair<SExpr, std::string>>& work) {
    if (x.is_zero()) return;
    Rational w = weight_of(x);
    if (w > cutoff_) return;
    auto& span = spans_[w];
    auto& d = descriptions_[w];
    d.push_back(desc);
    if (span.insert(x)) work.emplace_back(x, desc);
  }

  Engine<Scalar>& eng_;
  Rational cutoff_;
  std::vector<Gen> gens_;
  SExpr generator_;
  Rational generator_weight_;
  std::map<Rational, LinearSpan<Scalar>> spans_;
  std::map<Rational, std::vector<std::string>> descriptions_;
};

struct PairCheck {
  std::string a, b;
  enum Status { Pass, Fail, ReducedToIdeal } status = Pass;
  SPoly residual;
  std::vector<std::vector<std::pair<std::string, Scalar>>> certificates;  // per lambda power
};

inline const char* status_name(PairCheck::Status s) {
  switch (s) {
    case PairCheck::Pass: return "pass";
    case PairCheck::Fail: return "fail";
    case PairCheck::ReducedToIdeal: return "reduced-to-ideal";
  }
  return "?";
}

struct VerifyReport {
  std::vector<PairCheck> pairs;
  bool ok() const {
    for (auto& p : pairs)
      if (p.status == PairCheck::Fail) return false;
    return true;
  }
};

// For each declared pair: ambient bracket of the images minus the image of the table's
// right side. With an ideal, nonzero residuals are reduced modulo it coefficient-wise.
inline VerifyReport verify_homomorphism(const BracketTable& table, const Assignment& images, Engine<Scalar>& eng,
                                        const IdealComponents* ideal = nullptr,
                                        const std::function<void(const PairCheck&)>& progress = {}) {
  for (int g = 0; g < table.size(); ++g)
    if (!images.count(table.name(g))) throw Error(ErrorCode::ConsistencyError, "no image for " + table.name(g));
  Evaluator ev(table, images, eng);
  VerifyReport rep;
  struct Entry {
    int a, b;
    const SPoly* rhs;
  };
  std::vector<Entry> order;
  for (auto& e : table.entries()) order.push_back({e.a, e.b, &e.rhs});
  std::sort(order.begin(), order.end(), [&](const Entry& x, const Entry& y) {
    return std::tie(table.name(x.a), table.name(x.b)) < std::tie(table.name(y.a), table.name(y.b));
  });
  for (auto& e : order) {
    PairCheck pc;
    pc.a = table.name(e.a);
    pc.b = table.name(e.b);
    pc.residual = eng.bracket(images.at(pc.a), images.at(pc.b)) - ev(*e.rhs);
    if (!pc.residual.is_zero()) {
      pc.status = PairCheck::Fail;
      if (ideal) {
        bool all = true;
        for (int n = 0; n <= pc.residual.degree(); ++n) {
          auto r = ideal->reduce(pc.residual.coeff(n));
          all = all && r.residue.is_zero();
          pc.certificates.push_back(std::move(r.certificate));
        }
        if (all) pc.status = PairCheck::ReducedToIdeal;
      }
    }
    if (progress) progress(pc);
    rep.pairs.push_back(std::move(pc));
  }
  return rep;
}

}  // namespace dsred
