#pragma once

// Exact linear algebra over a field C (Scalar or Rational): dense matrices for the small
// superalgebra computations and a sparse echelon basis for spans of field expressions.

#include <map>
#include <optional>
#include <vector>

#include "dsred/error.hpp"
#include "dsred/lca/field.hpp"

namespace dsred {

template <class C>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : r_(rows), c_(cols), a_(std::size_t(rows) * cols, C(0)) {}
  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = C(1);
    return m;
  }
  int rows() const { return r_; }
  int cols() const { return c_; }
  C& operator()(int i, int j) { return a_[std::size_t(i) * c_ + j]; }
  const C& operator()(int i, int j) const { return a_[std::size_t(i) * c_ + j]; }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    Matrix z(x.r_, y.c_);
    for (int i = 0; i < x.r_; ++i)
      for (int k = 0; k < x.c_; ++k) {
        if (is_zero(x(i, k))) continue;
        for (int j = 0; j < y.c_; ++j)
          if (!is_zero(y(k, j))) z(i, j) += x(i, k) * y(k, j);
      }
    return z;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) { return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_; }
  Matrix transpose() const {
    Matrix t(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  // Reduced row echelon form in place; returns pivot columns.
  std::vector<int> rref() {
    std::vector<int> piv;
    int row = 0;
    for (int col = 0; col < c_ && row < r_; ++col) {
      int p = -1;
      for (int i = row; i < r_; ++i)
        if (!is_zero((*this)(i, col))) {
          p = i;
          break;
        }
      if (p < 0) continue;
      if (p != row)
        for (int j = 0; j < c_; ++j) std::swap((*this)(p, j), (*this)(row, j));
      C inv = inverse((*this)(row, col));
      for (int j = col; j < c_; ++j) (*this)(row, j) *= inv;
      for (int i = 0; i < r_; ++i) {
        if (i == row || is_zero((*this)(i, col))) continue;
        C f = (*this)(i, col);
        for (int j = col; j < c_; ++j)
          if (!is_zero((*this)(row, j))) (*this)(i, j) -= f * (*this)(row, j);
      }
      piv.push_back(col);
      ++row;
    }
    return piv;
  }

  int rank() const {
    Matrix m = *this;
    return int(m.rref().size());
  }

  // Basis of {v : M v = 0}, as columns of the returned vector list.
  std::vector<std::vector<C>> nullspace() const {
    Matrix m = *this;
    auto piv = m.rref();
    std::vector<bool> is_piv(c_, false);
    for (int p : piv) is_piv[p] = true;
    std::vector<std::vector<C>> out;
    for (int free = 0; free < c_; ++free) {
      if (is_piv[free]) continue;
      std::vector<C> v(c_, C(0));
      v[free] = C(1);
      for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m(int(i), free);
      out.push_back(std::move(v));
    }
    return out;
  }

  Matrix inverse_matrix() const {
    if (r_ != c_) throw Error(ErrorCode::SingularGram, "inverse of a non-square matrix");
    Matrix aug(r_, 2 * c_);
    for (int i = 0; i < r_; ++i) {
      for (int j = 0; j < c_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, c_ + i) = C(1);
    }
    auto piv = aug.rref();
    if (int(piv.size()) < r_ || piv.back() >= c_) throw Error(ErrorCode::SingularGram, "matrix is singular");
    Matrix inv(r_, c_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) inv(i, j) = aug(i, c_ + j);
    return inv;
  }

  // Some solution of M v = b, or nullopt.
  std::optional<std::vector<C>> solve(const std::vector<C>& b) const {
    Matrix aug(r_, c_ + 1);
    for (int i = 0; i < r_; ++i) {
      for (int j = 0; j < c_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, c_) = b[i];
    }
    auto piv = aug.rref();
    if (!piv.empty() && piv.back() == c_) return std::nullopt;
    std::vector<C> v(c_, C(0));
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = aug(int(i), c_);
    return v;
  }

 private:
  int r_ = 0, c_ = 0;
  std::vector<C> a_;
};

// Incremental echelon basis of a span of field expressions. Each stored vector has a
// pivot word (its largest word) with coefficient 1, and no other stored vector mentions
// that pivot. Every stored vector also remembers its expression in the inserted inputs.
template <class C>
class LinearSpan {
 public:
  using Expr = FieldExpr<C>;
  using Combo = std::map<int, C>;

  // Reduces e against the basis; returns the residue and accumulates the combination
  // of inserted inputs that was subtracted.
  Expr reduce(Expr e, Combo* used = nullptr) const {
    Expr out;
    while (!e.is_zero()) {
      auto it = std::prev(e.terms().end());
      const Word w = it->first;
      const C c = it->second;
      auto b = basis_.find(w);
      if (b == basis_.end()) {
        out.add(w, c);
        Expr t = Expr::word(w, c);
        e -= t;
        continue;
      }
      e.add(b->second.vec, -c);
      if (used)
        for (auto& [i, x] : b->second.combo) add_to(*used, i, x * c);
    }
    return out;
  }

  // Inserts e; returns true if it enlarged the span.
  bool insert(const Expr& e) {
    int id = inputs_++;
    Combo used;
    Expr r = reduce(e, &used);
    if (r.is_zero()) return false;
    Combo combo;
    combo[id] = C(1);
    for (auto& [i, x] : used) add_to(combo, i, -x);
    auto it = std::prev(r.terms().end());
    Word pw = it->first;
    C inv = inverse(it->second);
    r *= inv;
    for (auto& [i, x] : combo) x *= inv;
    // Keep the basis fully reduced: clear pw from the other vectors.
    for (auto& [w, v] : basis_) {
      C k = v.vec.coeff(pw);
      if (is_zero(k)) continue;
      v.vec.add(r, -k);
      for (auto& [i, x] : combo) add_to(v.combo, i, -x * k);
    }
    basis_.emplace(pw, Entry{std::move(r), std::move(combo)});
    return true;
  }

  int dim() const { return int(basis_.size()); }
  bool contains(const Expr& e) const { return reduce(e).is_zero(); }
  std::vector<Expr> basis() const {
    std::vector<Expr> out;
    for (auto& [w, v] : basis_) out.push_back(v.vec);
    return out;
  }

 private:
  static void add_to(Combo& m, int i, const C& x) {
    if (is_zero(x)) return;
    auto [it, fresh] = m.try_emplace(i, x);
    if (!fresh) {
      it->second += x;
      if (is_zero(it->second)) m.erase(it);
    }
  }
  struct Entry {
    Expr vec;
    Combo combo;
  };
  std::map<Word, Entry> basis_;
  int inputs_ = 0;
};

}  // namespace dsred
