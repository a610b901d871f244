#pragma once

// Quantum Hamiltonian reduction of D(2,1;alpha) for the grading x and nilpotent
// f = f12 + f13 + f23.
//
// Two ambients are used. The small one holds what the W-algebra lives in: the currents
// J^(v) for v in g_<= (written simply as v) and the neutral fermions. The fermion letters
// Phi1, Phi2, Phi3 are the dual fermions Phi^i; the fermions Phi_i attached to e_i are the
// combinations Phi_i = sum_j <Phi_i|Phi_j> Phi^j. The full complex adds the currents of
// g_+ and the charged fermions phi_a (named phi_<root>) and phi^a (named phis_<root>);
// small expressions are carried into it by v -> J^(v).

#include <memory>
#include <optional>
#include <random>

#include "dsred/lca/io.hpp"
#include "dsred/lca/transform.hpp"
#include "dsred/superalg.hpp"

namespace dsred {

using SExpr = FieldExpr<Scalar>;
using SPoly = LambdaPoly<Scalar>;

// [b_lambda a] for a table entry p = [a_lambda b] that is linear in generators.
template <class C>
LambdaPoly<C> skew_linear(const Ambient<C>& amb, const LambdaPoly<C>& p, bool both_odd) {
  LambdaPoly<C> r;
  C s(both_odd ? 1 : -1);
  for (int n = 0; n <= p.degree(); ++n) {
    for (int i = 0; i <= n; ++i) {
      FieldExpr<C> d;
      for (auto& [w, c] : p.coeff(n).terms()) {
        if (w.empty()) {
          if (i == 0) d.add(w, c);
          continue;
        }
        if (amb.gen(letter_gen(w[0])).marker) throw Error(ErrorCode::Unsupported, "skew of a marker entry");
        d.add(Word{letter_d(w[0], i)}, c);
      }
      r.add(n - i, d, s * C(binomial(n, i) * ((n % 2) ? -1 : 1)));
    }
  }
  return r;
}

template <class C>
void set_pair(Ambient<C>& amb, int a, int b, const LambdaPoly<C>& p) {
  amb.set_bracket(a, b, p);
  if (a != b) amb.set_bracket(b, a, skew_linear(amb, p, amb.gen(a).odd && amb.gen(b).odd));
}

inline Scalar central_charge_closed(const Scalar& a, const Scalar& k) {
  return Scalar(Rational(9, 2)) - Scalar(6) * k * (Scalar(1) + a + a * a) / (a * (Scalar(1) + a));
}

class Reduction {
 public:
  static inline const char* kSmall[13] = {"Phi1", "Phi2", "Phi3", "h1",  "h2",  "h3",  "f1",
                                          "f2",   "f3",   "f12",  "f13", "f23", "f123"};

  Reduction(const Scalar& alpha, const Scalar& k) : g_(alpha), k_(k), gr_(grading_of(g_)) {
    if (k.is_zero()) throw Error(ErrorCode::CriticalLevel, "k = 0 is the critical level");
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) ne_(i, j) = g_.form(g_.f(), g_.bracket(SuperAlgebra::E1 + i, SuperAlgebra::E1 + j));
    ne_inv_ = ne_.inverse_matrix();
    build_small();
    build_full();
  }

  const SuperAlgebra& algebra() const { return g_; }
  const Grading& grading() const { return gr_; }
  const Scalar& alpha() const { return g_.alpha(); }
  const Scalar& k() const { return k_; }
  // <Phi_i|Phi_j> = (f|[e_i,e_j])
  const Scalar& neutral_form(int i, int j) const { return ne_(i, j); }
  // [Phi^i_lambda Phi^j]
  const Scalar& neutral_form_inverse(int i, int j) const { return ne_inv_(i, j); }

  Engine<Scalar>& small() { return *small_; }
  Engine<Scalar>& full() { return *full_; }
  std::shared_ptr<const Ambient<Scalar>> small_ambient() const { return small_amb_; }

  // Fermion Phi^i (upper) and Phi_i (lower) in either ambient (same generator names).
  SExpr phi_upper(int i) const { return SExpr::letter(make_letter(i)); }
  SExpr phi_lower(int i) const {
    SExpr r;
    for (int j = 0; j < 3; ++j) r.add(phi_upper(j), ne_(i, j));
    return r;
  }
  // Phi_u for u in g: projection of u to g_{1/2} written in the lower fermions.
  SExpr phi_of(const Vec& u) const {
    SExpr r;
    for (int i = 0; i < 3; ++i)
      if (!u[SuperAlgebra::E1 + i].is_zero()) r.add(phi_lower(i), u[SuperAlgebra::E1 + i]);
    return r;
  }
  // A current of g_<= in the small ambient, or of g in the full complex.
  SExpr current(const Vec& v, bool in_full = false) const {
    const auto& amb = in_full ? *full_amb_ : *small_amb_;
    SExpr r;
    for (int i = 0; i < SuperAlgebra::kDim; ++i) {
      if (v[i].is_zero()) continue;
      int gi = amb.find(g_.name(i));
      if (gi < 0) throw Error(ErrorCode::Unsupported, g_.name(i) + " is not a current of this ambient");
      r.add(Word{make_letter(gi)}, v[i]);
    }
    return r;
  }

  // J^(v) = v + sum (-1)^{p(u_a)} c^a_b(v) :phi_a phi^b: in the full complex.
  SExpr current_J(const Vec& v) {
    SExpr r = current(v, true);
    for (int b : gr_.positive()) {
      Vec vb = g_.bracket(v, SuperAlgebra::unit(b));
      for (int a : gr_.positive()) {
        if (vb[a].is_zero()) continue;
        Scalar s = g_.odd(a) ? -vb[a] : vb[a];
        r.add(full_->normal_product(ghost(a), ghost_dual(b)), s);
      }
    }
    return r;
  }

  // Carries a small-ambient expression into the full complex.
  SExpr embed(const SExpr& e) { return (*embed_)(e); }

  const SExpr& d() { return d_; }
  SExpr d0(const SExpr& full_expr) { return full_->zero_mode(d_, full_expr); }

  // L = L^g + dx + L^ch + L^ne in the full complex.
  SExpr virasoro_full() {
    SExpr Lg;
    std::vector<Vec> basis;
    for (int i = 0; i < SuperAlgebra::kDim; ++i) basis.push_back(SuperAlgebra::unit(i));
    auto dual = dual_basis(g_, basis);
    for (int i = 0; i < SuperAlgebra::kDim; ++i) {
      SExpr t = full_->normal_product(current(basis[i], true), current(dual[i], true));
      Lg.add(t, g_.odd(i) ? Scalar(-1) : Scalar(1));
    }
    Lg *= Scalar(1) / (Scalar(2) * k_);
    SExpr L = Lg + full_->derive(current(g_.x(), true));
    for (int a : gr_.positive()) {
      Scalar m(gr_.degree[a]);
      L.add(full_->normal_product(ghost_dual(a), full_->derive(ghost(a))), -m);
      L.add(full_->normal_product(full_->derive(ghost_dual(a)), ghost(a)), Scalar(1) - m);
    }
    for (int i = 0; i < 3; ++i)
      L.add(full_->normal_product(full_->derive(phi_upper(i)), phi_lower(i)), Scalar(Rational(1, 2)));
    return L;
  }

  // The general central charge formula evaluated term by term.
  Scalar central_charge_formula() const {
    int sdim = 0;
    for (int i = 0; i < SuperAlgebra::kDim; ++i) sdim += g_.odd(i) ? -1 : 1;
    Scalar c(sdim);  // k sdim g / (k + h^vee) with h^vee = 0
    c -= Scalar(12) * k_ * g_.form(g_.x(), g_.x());
    for (int a : gr_.positive()) {
      Rational m = gr_.degree[a];
      Rational t = 12 * m * m - 12 * m + 2;
      c -= Scalar(g_.odd(a) ? Rational(-t) : t);
    }
    int sdim_half = 0;
    for (int a : gr_.of(Rational(1, 2))) sdim_half += g_.odd(a) ? -1 : 1;
    c -= Scalar(Rational(sdim_half, 2));
    return c;
  }

  // The weight-3/2 field G^{v}; linear in v, d-closed when v lies in g^f_{-1/2}.
  SExpr reconstruct(const Vec& v) {
    auto& E = *small_;
    SExpr r = current(v);
    bool pv = false;
    for (int i = 0; i < SuperAlgebra::kDim; ++i)
      if (!v[i].is_zero()) pv = g_.odd(i);
    std::vector<int> half = gr_.of(Rational(1, 2));
    auto plus = gr_.positive();
    for (std::size_t bi = 0; bi < half.size(); ++bi) {
      Vec vb = g_.bracket(v, SuperAlgebra::unit(half[bi]));
      r += E.normal_product(current(vb), phi_upper(int(bi)));
    }
    Scalar third = Scalar(Rational(pv ? 1 : -1, 3));
    for (std::size_t ai = 0; ai < half.size(); ++ai)
      for (std::size_t bi = 0; bi < half.size(); ++bi) {
        Vec t = g_.bracket(SuperAlgebra::unit(half[bi]), g_.bracket(SuperAlgebra::unit(half[ai]), v));
        SExpr p = phi_of(t);
        if (p.is_zero()) continue;
        r.add(E.normal_product(phi_upper(int(ai)), E.normal_product(phi_upper(int(bi)), p)), third);
      }
    for (std::size_t bi = 0; bi < half.size(); ++bi) {
      Vec ub = SuperAlgebra::unit(half[bi]);
      Scalar coef = k_ * g_.form(v, ub) + g_.supertrace(v, ub, plus);
      r.add(E.derive(phi_upper(int(bi))), -coef);
    }
    return r;
  }
  SExpr reconstruct_weight_3_2(const Vec& v) {
    if (!in_centralizer(g_, v)) throw Error(ErrorCode::NotInCentralizer, "v is not in the centralizer of f");
    for (int i = 0; i < SuperAlgebra::kDim; ++i)
      if (!v[i].is_zero() && gr_.degree[i] != Rational(-1, 2))
        throw Error(ErrorCode::NotInCentralizer, "v is not of degree -1/2");
    return reconstruct(v);
  }
  SExpr J_f(int i) { return reconstruct(SuperAlgebra::unit(SuperAlgebra::F1 + i)); }

  struct ClosedSolution {
    SExpr field;                 // particular solution
    std::vector<SExpr> kernel;   // d-closed combinations of lower words (ambiguity)
    std::vector<Word> ansatz;
  };

  // d-closed field J^(leading) + (lower terms) of weight 1 + j, j = -deg(leading).
  ClosedSolution solve_closed(const Vec& leading) {
    if (!in_centralizer(g_, leading)) throw Error(ErrorCode::NotInCentralizer, "leading term is not in g^f");
    std::optional<Rational> deg;
    for (int i = 0; i < SuperAlgebra::kDim; ++i)
      if (!leading[i].is_zero()) {
        if (deg && *deg != gr_.degree[i]) throw Error(ErrorCode::NotInCentralizer, "leading term is not homogeneous");
        deg = gr_.degree[i];
      }
    if (!deg) throw Error(ErrorCode::NotInCentralizer, "zero leading term");
    Rational j = -*deg;
    ClosedSolution out;
    auto allow = [&](int gen) {
      if (gen < 3) return true;
      int b = g_.index(kSmall[gen]);
      return -gr_.degree[b] < j;
    };
    out.ansatz = words_of_weight(*small_amb_, Rational(1) + j, 0, allow);
    // Columns: ansatz words; right-hand side: -d(J^(leading)).
    std::vector<SExpr> images;
    for (auto& w : out.ansatz) images.push_back(d0(embed(SExpr::word(w))));
    SExpr rhs = d0(embed(current(leading))) * Scalar(-1);
    std::map<Word, int> rows;
    auto row_of = [&](const Word& w) {
      auto it = rows.find(w);
      if (it != rows.end()) return it->second;
      int r = int(rows.size());
      rows.emplace(w, r);
      return r;
    };
    for (auto& im : images)
      for (auto& [w, c] : im.terms()) row_of(w);
    for (auto& [w, c] : rhs.terms()) row_of(w);
    Matrix<Scalar> m(int(rows.size()), int(out.ansatz.size()));
    std::vector<Scalar> b(rows.size(), Scalar(0));
    for (std::size_t c = 0; c < images.size(); ++c)
      for (auto& [w, x] : images[c].terms()) m(rows[w], int(c)) = x;
    for (auto& [w, x] : rhs.terms()) b[rows[w]] = x;
    auto sol = m.solve(b);
    if (!sol) throw Error(ErrorCode::NoSolution, "no d-closed completion of the leading term");
    out.field = current(leading);
    for (std::size_t c = 0; c < out.ansatz.size(); ++c) out.field.add(out.ansatz[c], (*sol)[c]);
    for (auto& n : m.nullspace()) {
      SExpr z;
      for (std::size_t c = 0; c < out.ansatz.size(); ++c) z.add(out.ansatz[c], n[c]);
      out.kernel.push_back(std::move(z));
    }
    return out;
  }

 private:
  SExpr ghost(int a) const { return SExpr::letter(make_letter(ghost_[a])); }
  SExpr ghost_dual(int a) const { return SExpr::letter(make_letter(ghost_dual_[a])); }

  void set_currents(Ambient<Scalar>& amb, const std::vector<int>& basis) {
    for (int a : basis)
      for (int b : basis) {
        int ga = amb.index(g_.name(a)), gb = amb.index(g_.name(b));
        if (gb < ga) continue;
        SPoly p;
        Vec v = g_.bracket(a, b);
        SExpr c0;
        for (int t = 0; t < SuperAlgebra::kDim; ++t)
          if (!v[t].is_zero()) c0.add(Word{make_letter(amb.index(g_.name(t)))}, v[t]);
        p.add(0, c0);
        p.add(1, SExpr::vacuum(k_ * g_.form(a, b)));
        set_pair(amb, ga, gb, p);
      }
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) set_pair(amb, i, j, SPoly(SExpr::vacuum(ne_inv_(i, j))));
  }

  void add_fermions(Ambient<Scalar>& amb) {
    for (int i = 0; i < 3; ++i) amb.add_generator({"Phi" + std::to_string(i + 1), true, Rational(1, 2)});
  }
  void add_currents(Ambient<Scalar>& amb, const std::vector<int>& basis) {
    for (int a : basis) amb.add_generator({g_.name(a), g_.odd(a), Rational(1) - gr_.degree[a]});
  }

  std::vector<int> small_basis() const {
    std::vector<int> b;
    for (int i = 3; i < 13; ++i) b.push_back(g_.index(kSmall[i]));
    return b;
  }

  void build_small() {
    auto amb = std::make_shared<Ambient<Scalar>>();
    add_fermions(*amb);
    auto basis = small_basis();
    add_currents(*amb, basis);
    set_currents(*amb, basis);
    small_amb_ = amb;
    small_ = std::make_unique<Engine<Scalar>>(amb);
  }

  void build_full() {
    auto amb = std::make_shared<Ambient<Scalar>>();
    add_fermions(*amb);
    auto basis = small_basis();
    for (int a : gr_.positive()) basis.push_back(a);
    add_currents(*amb, basis);
    set_currents(*amb, basis);
    ghost_.fill(-1);
    ghost_dual_.fill(-1);
    for (int a : gr_.positive()) {
      Rational m = gr_.degree[a];
      ghost_[a] = amb->add_generator({"phi_" + g_.name(a), !g_.odd(a), Rational(1) - m, false, 1});
    }
    for (int a : gr_.positive()) {
      Rational m = gr_.degree[a];
      ghost_dual_[a] = amb->add_generator({"phis_" + g_.name(a), !g_.odd(a), m, false, -1});
    }
    for (int a : gr_.positive()) set_pair(*amb, ghost_[a], ghost_dual_[a], SPoly(SExpr::vacuum()));
    full_amb_ = amb;
    full_ = std::make_unique<Engine<Scalar>>(amb);

    // d = sum (-1)^{p(u_a)} :u_a phi^a: - 1/2 sum (-1)^{p(u_a)p(u_c)} c^c_ab :phi_c phi^a phi^b:
    //     + sum (f|u_a) phi^a + sum_{S_1/2} :phi^a Phi_a:
    auto& E = *full_;
    auto plus = gr_.positive();
    d_ = SExpr();
    for (int a : plus) {
      d_.add(E.normal_product(current(SuperAlgebra::unit(a), true), ghost_dual(a)), Scalar(g_.odd(a) ? -1 : 1));
      d_.add(ghost_dual(a), g_.form(g_.f(), SuperAlgebra::unit(a)));
    }
    for (int a : plus)
      for (int b : plus) {
        const Vec& v = g_.bracket(a, b);
        for (int c : plus) {
          if (v[c].is_zero()) continue;
          Scalar s = v[c] * Scalar(Rational(g_.odd(a) && g_.odd(c) ? 1 : -1, 2));
          d_.add(E.normal_product(ghost(c), E.normal_product(ghost_dual(a), ghost_dual(b))), s);
        }
      }
    auto half = gr_.of(Rational(1, 2));
    for (std::size_t i = 0; i < half.size(); ++i) d_ += E.normal_product(ghost_dual(half[i]), phi_lower(int(i)));

    embed_ = std::make_unique<WordMap<Scalar>>(E, [this](int gen) -> SExpr {
      if (gen < 3) return phi_upper(gen);
      return current_J(SuperAlgebra::unit(g_.index(kSmall[gen])));
    });
  }

  SuperAlgebra g_;
  Scalar k_;
  Grading gr_;
  Matrix<Scalar> ne_{3, 3}, ne_inv_;
  std::shared_ptr<Ambient<Scalar>> small_amb_, full_amb_;
  std::unique_ptr<Engine<Scalar>> small_, full_;
  std::array<int, SuperAlgebra::kDim> ghost_{}, ghost_dual_{};
  SExpr d_;
  std::unique_ptr<WordMap<Scalar>> embed_;
};


// The SW(3/2,3/2,2) generators of the reduction and their parameters.
struct GeneratorSet {
  SExpr G, L, H, Mt, W, U;
  Scalar c, eps, mu, rho, sqrt_k;
  std::array<Scalar, 3> a_prime;
};

// The radical branches used for a parameter pair (symbolic parameters keep the formal
// radicals SQRTK and RHO; numeric ones take principal values unless overridden).
struct Branches {
  std::map<int, Scalar> values;  // explicit values for kSqrtK, kRho, kMu
};

inline Scalar rho_squared(const Scalar& a, const Scalar& k) {
  return Scalar(Rational(-3, 2)) * (Scalar(2) * k - Scalar(1)) * a * a * (Scalar(1) + a) * (Scalar(1) + a) *
         (Scalar(2) * k + Scalar(4) * k * k - a * (Scalar(1) + a));
}

inline GeneratorSet build_generators(Reduction& R, const Branches& br = {}) {
  const Scalar& a = R.alpha();
  const Scalar& k = R.k();
  Scalar one(1), two(2);
  Substitution sub;
  sub.vars[kA] = a;
  sub.vars[kK] = k;
  sub.radicals = br.values;
  if (rho_squared(a, k).is_zero()) throw Error(ErrorCode::RadicandZero, "the rescaling radicand vanishes");
  GeneratorSet gs;
  gs.sqrt_k = substitute(Scalar::radical(kSqrtK), sub);
  gs.rho = substitute(Scalar::radical(kRho), sub);
  const Scalar& s = gs.sqrt_k;
  const Scalar& I = imag_unit();
  gs.c = central_charge_closed(a, k);
  gs.eps = Scalar(-4) * I * k * s * (one + two * a) * (a * a + a - two) / (Scalar(3) * gs.rho);
  if ((Scalar(27) - two * gs.c).is_zero()) throw Error(ErrorCode::PoleAtC, "c = 27/2");
  if (gs.c.is_zero()) throw Error(ErrorCode::DegenerateParameter, "c = 0 makes mu vanish");
  Substitution csub;
  csub.vars[kC] = gs.c;
  csub.vars[kEps] = gs.eps;
  auto mu_branch = br.values.find(kMu);
  gs.mu = mu_branch != br.values.end() ? mu_branch->second : substitute(Scalar::radical(kMu), csub);
  if (mu_branch != br.values.end() && !(gs.mu * gs.mu == substitute(radicand_of(kMu), csub)))
    throw Error(ErrorCode::InconsistentRadical, "the given mu does not square to its radicand");
  if (gs.mu.is_zero()) throw Error(ErrorCode::DegenerateParameter, "mu vanishes");

  auto& E = R.small();
  std::array<SExpr, 3> J{R.J_f(0), R.J_f(1), R.J_f(2)};
  gs.G = (J[0] + J[1] + J[2]) * (I / s);
  gs.L = E.zero_mode(gs.G, gs.G) * Scalar(Rational(1, 2));
  gs.a_prime = {a * (a - one) * (one + two * k + a), -(two * k - a) * (two + a) * (one + a),
                a * (two * k - one) * (one + two * a) * (one + a)};
  gs.H = SExpr();
  for (int i = 0; i < 3; ++i) gs.H.add(J[i], gs.a_prime[i] / gs.rho);
  gs.Mt = E.zero_mode(gs.G, gs.H);
  // [H_l H] = c/3 l^2 + eps Mt + 2L + 4/3 mu W
  SExpr hh = E.zero_mode(gs.H, gs.H) - gs.Mt * gs.eps - gs.L * two;
  gs.W = hh * (Scalar(3) / (Scalar(4) * gs.mu));
  gs.U = E.zero_mode(gs.G, gs.W);
  return gs;
}

// Seeded rational (alpha, k) with small numerators and denominators at which the
// generators exist (no critical level, no vanishing radicand, c away from 0 and 27/2).
inline std::vector<std::pair<Rational, Rational>> random_parameter_points(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  auto draw = [&] {
    Rational q(int(rng() % 19) - 9, int(rng() % 8) + 2);
    q.canonicalize();
    return q;
  };
  std::vector<std::pair<Rational, Rational>> out;
  while (int(out.size()) < n) {
    Rational a = draw(), k = draw();
    if (sgn(a) == 0 || a == -1 || sgn(k) == 0) continue;
    if (central_charge_closed(Scalar(a), Scalar(k)) == Scalar(Rational(21, 2))) continue;  // the special member
    try {
      Reduction R{Scalar(a), Scalar(k)};
      build_generators(R);
    } catch (const Error&) {
      continue;
    }
    out.emplace_back(a, k);
  }
  return out;
}

}  // namespace dsred
