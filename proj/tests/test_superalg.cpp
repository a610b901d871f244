#include <gtest/gtest.h>

#include "dsred/superalg.hpp"

using namespace dsred;
using SA = SuperAlgebra;

namespace {

Scalar A() { return Scalar::var(kA); }

const SA& alg() {
  static SA g(A());
  return g;
}

Vec combo(std::initializer_list<std::pair<int, Scalar>> xs) {
  Vec v(SA::kDim, Scalar(0));
  for (auto& [i, c] : xs) v[i] += c;
  return v;
}

bool is_zero_vec(const Vec& v) {
  for (auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

}  // namespace

TEST(Superalg, ChevalleyRelations) {
  auto& g = alg();
  EXPECT_EQ(g.bracket(SA::E1, SA::F1), SA::unit(SA::H1));
  EXPECT_EQ(g.bracket(SA::E1, SA::F2), Vec(SA::kDim, Scalar(0)));
  EXPECT_EQ(g.bracket(SA::H1, SA::E3), combo({{SA::E3, A()}}));
  EXPECT_EQ(g.bracket(SA::H3, SA::F2), combo({{SA::F2, A() + Scalar(1)}}));
  EXPECT_EQ(g.bracket(SA::E1, SA::E23), SA::unit(SA::E123));
  EXPECT_EQ(g.bracket(SA::F2, SA::F3), SA::unit(SA::F23));
  int even = 0;
  for (int i = 0; i < SA::kDim; ++i) even += !g.odd(i);
  EXPECT_EQ(even, 9);
}

TEST(Superalg, DegenerateAlpha) {
  EXPECT_THROW(SA(Scalar(0)), Error);
  EXPECT_THROW(SA(Scalar(-1)), Error);
}

TEST(Superalg, SuperJacobiAndAntisymmetry) {
  auto& g = alg();
  for (int a = 0; a < SA::kDim; ++a)
    for (int b = 0; b < SA::kDim; ++b) {
      Vec s = g.bracket(a, b);
      Vec t = g.bracket(b, a);
      int sg = g.odd(a) && g.odd(b) ? 1 : -1;
      for (int i = 0; i < SA::kDim; ++i) EXPECT_TRUE((s[i] - Scalar(sg) * t[i]).is_zero()) << g.name(a) << g.name(b);
      for (int c = 0; c < SA::kDim; ++c) {
        // [a,[b,c]] = [[a,b],c] + (-1)^{p(a)p(b)} [b,[a,c]]
        Vec l = g.bracket(SA::unit(a), g.bracket(b, c));
        Vec r1 = g.bracket(g.bracket(a, b), SA::unit(c));
        Vec r2 = g.bracket(SA::unit(b), g.bracket(a, c));
        Scalar s2(g.odd(a) && g.odd(b) ? -1 : 1);
        for (int i = 0; i < SA::kDim; ++i)
          ASSERT_TRUE((l[i] - r1[i] - s2 * r2[i]).is_zero()) << g.name(a) << " " << g.name(b) << " " << g.name(c);
      }
    }
}

TEST(Superalg, FormTableAndInvariance) {
  auto& g = alg();
  Scalar a = A();
  EXPECT_EQ(g.form(SA::E12, SA::F12), Scalar(-1));
  EXPECT_EQ(g.form(SA::F12, SA::E12), Scalar(-1));
  EXPECT_EQ(g.form(SA::E13, SA::F13), -a);
  EXPECT_EQ(g.form(SA::E23, SA::F23), a + Scalar(1));
  EXPECT_EQ(g.form(SA::E123, SA::F123), (a + Scalar(1)) * (a + Scalar(1)));
  EXPECT_EQ(g.form(SA::F123, SA::E123), -(a + Scalar(1)) * (a + Scalar(1)));
  EXPECT_EQ(g.form(SA::E2, SA::F2), Scalar(1));
  EXPECT_EQ(g.form(SA::F2, SA::E2), Scalar(-1));
  EXPECT_EQ(g.form(SA::H1, SA::H3), a);
  for (int x = 0; x < SA::kDim; ++x)
    for (int y = 0; y < SA::kDim; ++y)
      for (int z = 0; z < SA::kDim; ++z)
        ASSERT_TRUE((g.form(g.bracket(x, y), SA::unit(z)) - g.form(SA::unit(x), g.bracket(y, z))).is_zero())
            << g.name(x) << g.name(y) << g.name(z);
}

TEST(Superalg, KillingFormVanishes) {
  auto& g = alg();
  for (int x = 0; x < SA::kDim; ++x)
    for (int y = 0; y < SA::kDim; ++y) EXPECT_TRUE(g.killing(SA::unit(x), SA::unit(y)).is_zero());
}

TEST(Superalg, Sl2TripleAndGrading) {
  auto& g = alg();
  Vec x = g.x(), e = g.e(), f = g.f();
  Vec xf = g.bracket(x, f), xe = g.bracket(x, e);
  for (int i = 0; i < SA::kDim; ++i) {
    EXPECT_TRUE((xf[i] + f[i]).is_zero());
    EXPECT_TRUE((xe[i] - e[i]).is_zero());
  }
  EXPECT_EQ(g.bracket(e, f), x);
  Grading gr = grading_of(g);
  EXPECT_EQ(gr.degree[SA::F123], Rational(-3, 2));
  EXPECT_EQ(gr.degree[SA::F13], Rational(-1));
  EXPECT_EQ(gr.degree[SA::F2], Rational(-1, 2));
  EXPECT_EQ(gr.degree[SA::H2], Rational(0));
  EXPECT_EQ(gr.degree[SA::E3], Rational(1, 2));
  EXPECT_EQ(gr.degree[SA::E23], Rational(1));
  EXPECT_EQ(gr.degree[SA::E123], Rational(3, 2));
  EXPECT_EQ(gr.zero(), (std::vector<int>{SA::H1, SA::H2, SA::H3}));
  // additivity on nonzero brackets
  for (int a = 0; a < SA::kDim; ++a)
    for (int b = 0; b < SA::kDim; ++b) {
      Vec v = g.bracket(a, b);
      for (int t = 0; t < SA::kDim; ++t)
        if (!v[t].is_zero()) EXPECT_EQ(gr.degree[t], gr.degree[a] + gr.degree[b]);
    }
  EXPECT_THROW(grading_of(g, SA::unit(SA::E1)), Error);
}

TEST(Superalg, CentralizerOfF) {
  auto& g = alg();
  auto parts = centralizer_f(g, grading_of(g));
  std::map<Rational, std::size_t> dims;
  for (auto& p : parts) dims[p.degree] = p.basis.size();
  EXPECT_EQ(dims[Rational(-1, 2)], 2u);
  EXPECT_EQ(dims[Rational(-1)], 3u);
  EXPECT_EQ(dims[Rational(-3, 2)], 1u);
  EXPECT_EQ(dims.count(Rational(0)), 0u);
  Scalar a = A();
  // a1 f1 + a2 f2 + a3 f3 is in g^f iff a1 - a2 a/(a+1) - a3/(a+1) = 0
  Scalar a2(3), a3(-5);
  Scalar a1 = a2 * a / (a + Scalar(1)) + a3 / (a + Scalar(1));
  EXPECT_TRUE(in_centralizer(g, combo({{SA::F1, a1}, {SA::F2, a2}, {SA::F3, a3}})));
  EXPECT_FALSE(in_centralizer(g, combo({{SA::F1, a1 + Scalar(1)}, {SA::F2, a2}, {SA::F3, a3}})));
  EXPECT_TRUE(in_centralizer(g, g.f()));
}

TEST(Superalg, DualBases) {
  auto& g = alg();
  std::vector<Vec> all;
  for (int i = 0; i < SA::kDim; ++i) all.push_back(SA::unit(i));
  auto dual = dual_basis(g, all);
  EXPECT_EQ(dual[SA::E1], SA::unit(SA::F1));
  for (int i = 0; i < SA::kDim; ++i)
    for (int j = 0; j < SA::kDim; ++j) EXPECT_EQ(g.form(all[i], dual[j]), Scalar(i == j ? 1 : 0));
  // Cartan part: dual = A^{-1} h
  std::vector<Vec> hs{SA::unit(SA::H1), SA::unit(SA::H2), SA::unit(SA::H3)};
  auto hd = dual_basis(g, hs);
  Matrix<Scalar> cm(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) cm(i, j) = g.cartan(i, j);
  auto inv = cm.inverse_matrix();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(hd[i][j], inv(i, j));
  EXPECT_THROW(dual_basis(g, {SA::unit(SA::E1)}), Error);
  EXPECT_TRUE(is_zero_vec(g.bracket(g.f(), g.f())));
}
