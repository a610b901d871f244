#pragma once

// Free field realization: W-algebra fields projected to the Heisenberg algebra of the
// rescaled Cartan currents hb_i = h_i/sqrt(k) tensored with the neutral fermions, and the
// screening operators Q_i = :Phi_i Gamma_i:, whose zero modes cut it out.
//
// Gamma_j is a module marker: [hb_i lambda Gamma_j] = -(a_ij/sqrt k) Gamma_j and
// d(Gamma_j) = -(1/sqrt k) :hb_j Gamma_j:, where a_ij = (h_i|h_j).

#include "dsred/reduction.hpp"
#include "dsred/walgebras.hpp"

namespace dsred {

class FreeField {
 public:
  static inline const char* kNames[9] = {"Phi1", "Phi2", "Phi3", "hb1", "hb2", "hb3", "Gamma1", "Gamma2", "Gamma3"};

  // sqrt_k must be the square root of k used for the generators being projected.
  FreeField(const Reduction& R, const Scalar& sqrt_k) : sqrt_k_(sqrt_k) {
    if (!(sqrt_k * sqrt_k == R.k())) throw Error(ErrorCode::InconsistentRadical, "sqrt_k^2 != k");
    const auto& g = R.algebra();
    auto amb = std::make_shared<Ambient<Scalar>>();
    for (int i = 0; i < 3; ++i) amb->add_generator({kNames[i], true, Rational(1, 2)});
    for (int i = 0; i < 3; ++i) amb->add_generator({kNames[3 + i], false, Rational(1)});
    for (int i = 0; i < 3; ++i) amb->add_generator({kNames[6 + i], false, Rational(0), true});
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        amb->set_bracket(i, j, SPoly(SExpr::vacuum(R.neutral_form_inverse(i, j))));
        a_[i][j] = g.form(SuperAlgebra::H1 + i, SuperAlgebra::H1 + j);
        amb->set_bracket(3 + i, 3 + j, SPoly(SExpr::vacuum(a_[i][j])).shifted(1));
      }
    Scalar inv = inverse(sqrt_k);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        SExpr gam = SExpr::letter(make_letter(6 + j));
        amb->set_bracket(3 + i, 6 + j, SPoly(gam * (-a_[i][j] * inv)));
        amb->set_bracket(6 + j, 3 + i, SPoly(gam * (a_[i][j] * inv)));
      }
    for (int j = 0; j < 3; ++j)
      amb->set_marker_derivative(6 + j, SExpr::word(Word{make_letter(3 + j), make_letter(6 + j)}, -inv));
    amb_ = amb;
    eng_ = std::make_unique<Engine<Scalar>>(amb);

    small_amb_ = R.small_ambient();
    for (int i = 0; i < 3; ++i) {
      SExpr phi_low;
      for (int j = 0; j < 3; ++j) phi_low.add(SExpr::letter(make_letter(j)), R.neutral_form(i, j));
      Q_[i] = eng_->normal_product(phi_low, SExpr::letter(make_letter(6 + i)));
    }
  }

  Engine<Scalar>& engine() { return *eng_; }
  const Ambient<Scalar>& ambient() const { return *amb_; }
  const SExpr& screening(int i) const { return Q_[i]; }
  const Scalar& sqrt_k() const { return sqrt_k_; }

  // Drops every word containing a current outside g_0 and rewrites h_i -> sqrt(k) hb_i.
  SExpr project(const SExpr& e) const {
    SExpr r;
    for (auto& [w, c] : e.terms()) {
      Word out;
      Scalar s = c;
      bool keep = true;
      for (Letter l : w) {
        const std::string& n = small_amb_->gen(letter_gen(l)).name;
        int d = letter_deriv(l);
        if (n.size() == 4 && n.compare(0, 3, "Phi") == 0) {
          out.push_back(make_letter(n[3] - '1', d));
        } else if (n.size() == 2 && n[0] == 'h') {
          out.push_back(make_letter(3 + (n[1] - '1'), d));
          s *= sqrt_k_;
        } else {
          keep = false;
          break;
        }
      }
      // The small and free orders agree on these letters, so words stay canonical.
      if (keep) r.add(out, s);
    }
    return r;
  }

  // Drops the f-words but keeps h_i: the display form of the free field realization.
  SExpr drop_f(const SExpr& e) const {
    SExpr r;
    for (auto& [w, c] : e.terms()) {
      bool keep = true;
      for (Letter l : w) {
        const std::string& n = small_amb_->gen(letter_gen(l)).name;
        if (!(n.compare(0, 3, "Phi") == 0 || n[0] == 'h')) keep = false;
      }
      if (keep) r.add(w, c);
    }
    return r;
  }

  // The lambda^0 coefficient of [Q_i lambda x]; x must be Gamma-free.
  SExpr screen(int i, const SExpr& x) {
    for (auto& [w, c] : x.terms())
      for (Letter l : w)
        if (amb_->gen(letter_gen(l)).marker) throw Error(ErrorCode::Unsupported, "screening of a marked field");
    return eng_->bracket(Q_[i], x).coeff(0);
  }

  struct KernelRow {
    Rational weight;
    int space_dim = 0;
    int kernel_dim = 0;
    int generated_dim = 0;
  };

  // Joint kernel of the three screening zero modes on each weight space up to max_weight,
  // against the span of ordered monomials in the given generator images.
  std::vector<KernelRow> kernel_dims(const Rational& max_weight, const BracketTable& table, const Assignment& images) {
    std::vector<KernelRow> rows;
    Evaluator ev(table, images, *eng_);
    for (Rational w = 0; w <= max_weight; w += Rational(1, 2)) {
      KernelRow row;
      row.weight = w;
      std::vector<Word> basis;
      if (sgn(w) == 0)
        basis.push_back(Word{});
      else
        basis = words_of_weight(*amb_, w, 0, [](int) { return true; });
      row.space_dim = int(basis.size());
      // Screening images, one column per basis word.
      std::map<Word, int> rows_index;
      std::vector<std::vector<std::pair<int, Scalar>>> cols(basis.size());
      for (std::size_t b = 0; b < basis.size(); ++b)
        for (int i = 0; i < 3; ++i) {
          SExpr img = screen(i, SExpr::word(basis[b]));
          for (auto& [word, c] : img.terms()) {
            Word key = word;
            key.insert(key.begin(), Letter(i));  // tag by screening
            auto [it, fresh] = rows_index.try_emplace(key, int(rows_index.size()));
            cols[b].emplace_back(it->second, c);
          }
        }
      Matrix<Scalar> m(int(rows_index.size()), int(basis.size()));
      for (std::size_t b = 0; b < basis.size(); ++b)
        for (auto& [r, c] : cols[b]) m(r, int(b)) += c;
      row.kernel_dim = int(basis.size()) - m.rank();
      // Monomials in the generators.
      LinearSpan<Scalar> span;
      std::vector<Word> mono;
      if (sgn(w) == 0)
        mono.push_back(Word{});
      else
        mono = words_of_weight(table.ambient(), w, 0, [](int) { return true; });
      for (auto& wd : mono) span.insert(ev(SExpr::word(wd)));
      row.generated_dim = span.dim();
      rows.push_back(row);
    }
    return rows;
  }

 private:
  Scalar sqrt_k_;
  Scalar a_[3][3];
  std::shared_ptr<const Ambient<Scalar>> amb_;
  std::shared_ptr<const Ambient<Scalar>> small_amb_;
  std::unique_ptr<Engine<Scalar>> eng_;
  std::array<SExpr, 3> Q_;
};

inline Assignment sw_images(const GeneratorSet& gs) {
  return {{"G", gs.G}, {"L", gs.L}, {"H", gs.H}, {"Mt", gs.Mt}, {"W", gs.W}, {"U", gs.U}};
}

// Change of basis to the G2 generators at c = 21/2, eps = 0, where sqrt(14) = 2 mu / 3
// (so the sign follows the chosen branch of mu).
inline Assignment sv_images(Engine<Scalar>& eng, const Assignment& sw, const Scalar& mu) {
  Scalar i = imag_unit(), r14 = Scalar(Rational(2, 3)) * mu;
  return {{"L", sw.at("L")},
          {"G", sw.at("G")},
          {"Phi", sw.at("H") * i},
          {"K", sw.at("Mt") * i},
          {"X", (sw.at("L") + sw.at("W") * r14) * Scalar(Rational(-1, 3))},
          {"M", (eng.derive(sw.at("G")) + sw.at("U") * (Scalar(2) * r14)) * Scalar(Rational(-1, 6))}};
}

inline Assignment project_images(const FreeField& F, const Assignment& a) {
  Assignment r;
  for (auto& [n, e] : a) r[n] = F.project(e);
  return r;
}

}  // namespace dsred
