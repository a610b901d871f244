#pragma once

// D(2,1;alpha) as the contragredient Lie superalgebra of the Cartan matrix
//   0      1      a
//   1      0   -1-a
//   a   -1-a      0
// with odd simple roots. Every structure constant is derived from the Chevalley relations
// and the definitions e12 = [e1,e2], e13 = [e1,e3], e23 = [e2,e3], e123 = [e1,e23] (and the
// same for f), either by the super Jacobi identity or, for pairs of positive (negative)
// elements outside the definitions, by comparing the action of the opposite simple
// generators. The invariant form is obtained from (h_i|h_j) = a_ij and (e_i|f_i) = 1.

#include <array>
#include <map>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dsred/linalg.hpp"
#include "dsred/scalar/scalar_io.hpp"

namespace dsred {

using Vec = std::vector<Scalar>;

class SuperAlgebra {
 public:
  static constexpr int kDim = 17;
  enum Basis { H1, H2, H3, E1, E2, E3, F1, F2, F3, E12, E13, E23, E123, F12, F13, F23, F123 };

  explicit SuperAlgebra(const Scalar& alpha) : alpha_(alpha) {
    if (alpha.is_zero() || (alpha + Scalar(1)).is_zero())
      throw Error(ErrorCode::DegenerateParameter, "alpha must avoid 0 and -1");
    Scalar a = alpha, b = -(alpha + Scalar(1));
    cartan_ = {{{Scalar(0), Scalar(1), a}, {Scalar(1), Scalar(0), b}, {a, b, Scalar(0)}}};
    static const char* names[kDim] = {"h1", "h2", "h3", "e1", "e2", "e3", "f1", "f2", "f3",
                                      "e12", "e13", "e23", "e123", "f12", "f13", "f23", "f123"};
    static const int roots[kDim][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}, {1, 0, 0},   {0, 1, 0},   {0, 0, 1},
                                       {-1, 0, 0}, {0, -1, 0}, {0, 0, -1}, {1, 1, 0}, {1, 0, 1},   {0, 1, 1},
                                       {1, 1, 1}, {-1, -1, 0}, {-1, 0, -1}, {0, -1, -1}, {-1, -1, -1}};
    for (int i = 0; i < kDim; ++i) {
      names_[i] = names[i];
      root_[i] = {roots[i][0], roots[i][1], roots[i][2]};
      int h = roots[i][0] + roots[i][1] + roots[i][2];
      odd_[i] = h % 2 != 0;
    }
    def_[E12] = {E1, E2};
    def_[E13] = {E1, E3};
    def_[E23] = {E2, E3};
    def_[E123] = {E1, E23};
    def_[F12] = {F1, F2};
    def_[F13] = {F1, F3};
    def_[F23] = {F2, F3};
    def_[F123] = {F1, F23};
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) table_[i][j] = compute(i, j);
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) form_(i, j) = compute_form(i, j);
  }

  const Scalar& alpha() const { return alpha_; }
  const Scalar& cartan(int i, int j) const { return cartan_[i][j]; }
  const std::string& name(int i) const { return names_[i]; }
  int index(const std::string& n) const {
    for (int i = 0; i < kDim; ++i)
      if (names_[i] == n) return i;
    throw Error(ErrorCode::ConsistencyError, "no basis element " + n);
  }
  bool odd(int i) const { return odd_[i]; }
  const std::array<int, 3>& root(int i) const { return root_[i]; }
  int height(int i) const { return root_[i][0] + root_[i][1] + root_[i][2]; }

  static Vec unit(int i) {
    Vec v(kDim, Scalar(0));
    v[i] = Scalar(1);
    return v;
  }
  const Vec& bracket(int i, int j) const { return table_[i][j]; }
  Vec bracket(const Vec& x, const Vec& y) const {
    Vec r(kDim, Scalar(0));
    for (int i = 0; i < kDim; ++i) {
      if (x[i].is_zero()) continue;
      for (int j = 0; j < kDim; ++j) {
        if (y[j].is_zero()) continue;
        Scalar s = x[i] * y[j];
        for (int t = 0; t < kDim; ++t)
          if (!table_[i][j][t].is_zero()) r[t] += s * table_[i][j][t];
      }
    }
    return r;
  }
  const Scalar& form(int i, int j) const { return form_(i, j); }
  Scalar form(const Vec& x, const Vec& y) const {
    Scalar s;
    for (int i = 0; i < kDim; ++i)
      if (!x[i].is_zero())
        for (int j = 0; j < kDim; ++j)
          if (!y[j].is_zero() && !form_(i, j).is_zero()) s += x[i] * y[j] * form_(i, j);
    return s;
  }
  const Matrix<Scalar>& form_matrix() const { return form_; }

  // Supertrace of (ad x)(ad y) restricted to the span of the given basis elements
  // (components outside the span are discarded).
  Scalar supertrace(const Vec& x, const Vec& y, const std::vector<int>& span) const {
    Scalar s;
    for (int b : span) {
      Vec t = bracket(x, bracket(y, unit(b)));
      if (t[b].is_zero()) continue;
      s += odd_[b] ? -t[b] : t[b];
    }
    return s;
  }
  Scalar killing(const Vec& x, const Vec& y) const {
    std::vector<int> all(kDim);
    for (int i = 0; i < kDim; ++i) all[i] = i;
    return supertrace(x, y, all);
  }

  // The good grading pair and the sl2 partner.
  Vec x() const {
    const Scalar& a = alpha_;
    Vec v(kDim, Scalar(0));
    v[H1] = (a + Scalar(1)) / (Scalar(2) * a);
    v[H2] = a / (Scalar(2) * (a + Scalar(1)));
    v[H3] = Scalar(1) / (Scalar(2) * a * (a + Scalar(1)));
    return v;
  }
  Vec f() const {
    Vec v(kDim, Scalar(0));
    v[F12] = v[F13] = v[F23] = Scalar(1);
    return v;
  }
  Vec e() const {
    const Scalar& a = alpha_;
    Vec v(kDim, Scalar(0));
    v[E12] = Scalar(Rational(-1, 2));
    v[E13] = Scalar(-1) / (Scalar(2) * a * a);
    v[E23] = Scalar(-1) / (Scalar(2) * (a + Scalar(1)) * (a + Scalar(1)));
    return v;
  }

  std::string render(const Vec& v) const {
    std::string s;
    for (int i = 0; i < kDim; ++i) {
      if (v[i].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + to_string(v[i]) + ")*" + names_[i];
    }
    return s.empty() ? "0" : s;
  }

 private:
  int root_index(const std::array<int, 3>& r) const {
    for (int i = 3; i < kDim; ++i)
      if (root_[i] == r) return i;
    return -1;
  }
  bool positive(int i) const { return height(i) > 0; }
  bool cartan_elt(int i) const { return i <= H3; }
  int sign(int i, int j) const { return odd_[i] && odd_[j] ? -1 : 1; }

  Vec scaled(const Vec& v, const Scalar& s) const {
    Vec r = v;
    for (auto& x : r) x *= s;
    return r;
  }
  static void axpy(Vec& y, const Vec& x, const Scalar& s) {
    for (int i = 0; i < kDim; ++i)
      if (!x[i].is_zero()) y[i] += x[i] * s;
  }
  static bool zero(const Vec& v) {
    for (auto& x : v)
      if (!x.is_zero()) return false;
    return true;
  }

  // Bracket of a basis element with a vector, through the recursive rules.
  Vec br(int i, const Vec& v) {
    Vec r(kDim, Scalar(0));
    for (int j = 0; j < kDim; ++j)
      if (!v[j].is_zero()) axpy(r, get(i, j), v[j]);
    return r;
  }
  Vec br(const Vec& u, int j) {
    Vec r(kDim, Scalar(0));
    for (int i = 0; i < kDim; ++i)
      if (!u[i].is_zero()) axpy(r, get(i, j), u[i]);
    return r;
  }
  const Vec& get(int i, int j) {
    auto key = std::make_pair(i, j);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    if (!busy_.insert(key).second) throw Error(ErrorCode::ConsistencyError, "cyclic structure-constant recursion");
    Vec v = rule(i, j);
    busy_.erase(key);
    return memo_.emplace(key, std::move(v)).first->second;
  }
  Vec compute(int i, int j) { return get(i, j); }

  Vec rule(int i, int j) {
    Vec zero_v(kDim, Scalar(0));
    if (cartan_elt(i)) {
      if (cartan_elt(j)) return zero_v;
      Scalar ev;
      for (int t = 0; t < 3; ++t)
        if (root_[j][t]) ev += Scalar(root_[j][t]) * cartan_[i][t];
      return scaled(unit(j), ev);
    }
    if (cartan_elt(j)) return scaled(get(j, i), Scalar(-1));
    std::array<int, 3> sum{root_[i][0] + root_[j][0], root_[i][1] + root_[j][1], root_[i][2] + root_[j][2]};
    bool to_cartan = sum == std::array<int, 3>{0, 0, 0};
    int target = to_cartan ? -1 : root_index(sum);
    if (!to_cartan && target < 0) return zero_v;
    if (positive(i) == positive(j)) {
      if (def_.count(target)) {
        auto [y, z] = def_.at(target);
        if (y == i && z == j) return unit(target);
        if (y == j && z == i) return scaled(unit(target), Scalar(-sign(i, j)));
      }
      // Compare [g, [u_i, u_j]] with [g, E_target] for a simple g of opposite sign.
      for (int s = 0; s < 3; ++s) {
        int g = positive(i) ? F1 + s : E1 + s;
        Vec ref = get(g, target);
        if (zero(ref)) continue;
        Vec lhs = br(get(g, i), j);
        axpy(lhs, br(i, get(g, j)), Scalar(sign(g, i)));
        int p = 0;
        while (ref[p].is_zero()) ++p;
        Scalar c = lhs[p] / ref[p];
        Vec chk = lhs;
        axpy(chk, ref, -c);
        if (!zero(chk)) throw Error(ErrorCode::ConsistencyError, "inconsistent structure constant");
        return scaled(unit(target), c);
      }
      return zero_v;
    }
    // Mixed signs: expand a composite through its definition, else use super antisymmetry.
    if (def_.count(i)) {
      auto [y, z] = def_.at(i);
      Vec r = br(y, get(z, j));
      axpy(r, br(z, get(y, j)), Scalar(-sign(y, z)));
      return r;
    }
    if (def_.count(j)) return scaled(get(j, i), Scalar(-sign(i, j)));
    // Simple generators: [e_a, f_b] = delta_ab h_a.
    int a = positive(i) ? i - E1 : j - E1;
    int b = positive(i) ? j - F1 : i - F1;
    if (a != b) return zero_v;
    Vec h = unit(H1 + a);
    return positive(i) ? h : scaled(h, Scalar(-sign(i, j)));
  }

  Scalar compute_form(int i, int j) {
    if (cartan_elt(i) || cartan_elt(j)) return cartan_elt(i) && cartan_elt(j) ? cartan_[i][j] : Scalar(0);
    for (int t = 0; t < 3; ++t)
      if (root_[i][t] + root_[j][t] != 0) return Scalar(0);
    if (!positive(i)) return Scalar(sign(i, j)) * compute_form(j, i);
    if (!def_.count(i)) return Scalar(1);  // (e_a | f_a)
    // ([y, z] | w) = (y | [z, w])
    auto [y, z] = def_.at(i);
    Vec zw = get(z, j);
    Scalar s;
    for (int t = 0; t < kDim; ++t)
      if (!zw[t].is_zero()) s += zw[t] * compute_form(y, t);
    return s;
  }

  Scalar alpha_;
  std::array<std::array<Scalar, 3>, 3> cartan_;
  std::array<std::string, kDim> names_;
  std::array<std::array<int, 3>, kDim> root_;
  std::array<bool, kDim> odd_;
  std::map<int, std::pair<int, int>> def_;
  std::map<std::pair<int, int>, Vec> memo_;
  std::set<std::pair<int, int>> busy_;
  std::array<std::array<Vec, kDim>, kDim> table_;
  Matrix<Scalar> form_{kDim, kDim};
};

// ad x eigenvalues of the basis; the grading element must act diagonally on the basis.
struct Grading {
  std::array<Rational, SuperAlgebra::kDim> degree;

  std::vector<int> with(const std::function<bool(const Rational&)>& pred) const {
    std::vector<int> out;
    for (int i = 0; i < SuperAlgebra::kDim; ++i)
      if (pred(degree[i])) out.push_back(i);
    return out;
  }
  std::vector<int> positive() const { return with([](const Rational& d) { return sgn(d) > 0; }); }
  std::vector<int> negative() const { return with([](const Rational& d) { return sgn(d) < 0; }); }
  std::vector<int> zero() const { return with([](const Rational& d) { return sgn(d) == 0; }); }
  std::vector<int> nonpositive() const { return with([](const Rational& d) { return sgn(d) <= 0; }); }
  std::vector<int> of(const Rational& j) const { return with([&](const Rational& d) { return d == j; }); }
};

inline Grading grading_of(const SuperAlgebra& g, const Vec& x) {
  Grading gr;
  for (int i = 0; i < SuperAlgebra::kDim; ++i) {
    Vec v = g.bracket(x, SuperAlgebra::unit(i));
    for (int j = 0; j < SuperAlgebra::kDim; ++j)
      if (j != i && !v[j].is_zero())
        throw Error(ErrorCode::NotDiagonalizable, "basis element " + g.name(i) + " is not an eigenvector");
    if (!v[i].is_rational())
      throw Error(ErrorCode::NotDiagonalizable, "eigenvalue on " + g.name(i) + " is not a constant");
    gr.degree[i] = v[i].to_rational();
  }
  return gr;
}
inline Grading grading_of(const SuperAlgebra& g) { return grading_of(g, g.x()); }

struct CentralizerPart {
  Rational degree;
  std::vector<Vec> basis;
};

// Kernel of ad f on each graded component.
inline std::vector<CentralizerPart> centralizer_f(const SuperAlgebra& g, const Grading& gr) {
  std::map<Rational, std::vector<int>> comps;
  for (int i = 0; i < SuperAlgebra::kDim; ++i) comps[gr.degree[i]].push_back(i);
  Vec f = g.f();
  std::vector<CentralizerPart> out;
  for (auto& [deg, idx] : comps) {
    Matrix<Scalar> m(SuperAlgebra::kDim, int(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) {
      Vec v = g.bracket(f, SuperAlgebra::unit(idx[c]));
      for (int r = 0; r < SuperAlgebra::kDim; ++r) m(r, int(c)) = v[r];
    }
    CentralizerPart part{deg, {}};
    for (auto& n : m.nullspace()) {
      Vec v(SuperAlgebra::kDim, Scalar(0));
      for (std::size_t c = 0; c < idx.size(); ++c) v[idx[c]] = n[c];
      part.basis.push_back(std::move(v));
    }
    if (!part.basis.empty()) out.push_back(std::move(part));
  }
  return out;
}

inline bool in_centralizer(const SuperAlgebra& g, const Vec& v) {
  for (auto& x : g.bracket(g.f(), v))
    if (!x.is_zero()) return false;
  return true;
}

// Dual basis within the span of vs: (vs[i] | out[j]) = delta_ij.
inline std::vector<Vec> dual_basis(const SuperAlgebra& g, const std::vector<Vec>& vs) {
  int n = int(vs.size());
  Matrix<Scalar> gram(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gram(i, j) = g.form(vs[i], vs[j]);
  Matrix<Scalar> x = gram.transpose().inverse_matrix();
  std::vector<Vec> out(n, Vec(SuperAlgebra::kDim, Scalar(0)));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (!x(j, k).is_zero())
        for (int t = 0; t < SuperAlgebra::kDim; ++t)
          if (!vs[k][t].is_zero()) out[j][t] += x(j, k) * vs[k][t];
  return out;
}

}  // namespace dsred
