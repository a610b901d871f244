#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "dsred/freefield.hpp"

using namespace dsred;

namespace {

std::string golden(const std::string& f) {
  std::ifstream in(data_path("golden/" + f));
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Point {
  Reduction R;
  GeneratorSet gs;
  FreeField F;
  Point(const Rational& a, const Rational& k)
      : R(Scalar(a), Scalar(k)), gs(build_generators(R)), F(R, gs.sqrt_k) {}
};

Point& sv_point() {
  static Point p(1, Rational(-2, 3));
  return p;
}

}  // namespace

TEST(FreeField, GammaRules) {
  auto& P = sv_point();
  auto& E = P.F.engine();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      SExpr hb = E.gen("hb" + std::to_string(i + 1));
      SExpr gam = E.gen("Gamma" + std::to_string(j + 1));
      auto p = E.bracket(hb, gam);
      auto q = E.bracket(hb, E.derive(gam));
      // sesquilinearity: [a_lambda d b] = (lambda + d)[a_lambda b]
      SPoly expect;
      for (int n = 0; n <= p.degree(); ++n) {
        expect.add(n + 1, p.coeff(n));
        expect.add(n, E.derive(p.coeff(n)));
      }
      EXPECT_EQ(q, expect) << i << j;
    }
  Reduction bad{Scalar(1), Scalar(Rational(-2, 3))};
  EXPECT_THROW(FreeField(bad, Scalar(Rational(2, 3))), Error);
}

TEST(FreeField, GoldenProjections) {
  auto& P = sv_point();
  auto& E = P.R.small();
  EXPECT_EQ(to_string(E.ambient(), P.F.drop_f(P.gs.G)), to_string(E.ambient(), parse_field(E, golden("free_g.txt"))));
  EXPECT_EQ(to_string(E.ambient(), P.F.drop_f(P.gs.H * imag_unit())),
            to_string(E.ambient(), parse_field(E, golden("free_phi.txt"))));
}

TEST(FreeField, ProjectionFixesFreeFields) {
  auto& P = sv_point();
  auto& S = P.R.small();
  auto& E = P.F.engine();
  SExpr x = S.normal_product(S.gen("Phi1"), S.derive(S.gen("Phi2"))) + S.gen("h3") * Scalar(2);
  SExpr y = E.normal_product(E.gen("Phi1"), E.derive(E.gen("Phi2"))) + E.gen("hb3") * (Scalar(2) * P.F.sqrt_k());
  EXPECT_EQ(P.F.project(x), y);
  EXPECT_TRUE(P.F.project(S.gen("f1") + S.normal_product(S.gen("h1"), S.gen("f123"))).is_zero());
}

TEST(FreeField, ScreeningsOnSmallFields) {
  auto& P = sv_point();
  auto& E = P.F.engine();
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(P.F.screen(i, SExpr::vacuum()).is_zero());
  // a_11 = 0, so Q1 commutes with hb1; Q1 hb2 is a multiple of Phi_1 Gamma_1.
  EXPECT_TRUE(P.F.screen(0, E.gen("hb1")).is_zero());
  EXPECT_FALSE(P.F.screen(0, E.gen("hb2")).is_zero());
  EXPECT_THROW(P.F.screen(0, E.gen("Gamma1")), Error);
}

TEST(FreeField, GeneratorsAreScreened) {
  auto pts = random_parameter_points(7, 3);
  pts.emplace_back(1, Rational(-2, 3));
  for (auto [a, k] : pts) {
    Point P(a, k);
    auto img = project_images(P.F, sw_images(P.gs));
    for (auto& [n, e] : img) {
      EXPECT_FALSE(e.is_zero()) << n;
      for (int i = 0; i < 3; ++i) EXPECT_TRUE(P.F.screen(i, e).is_zero()) << n << " Q" << i + 1 << " at " << a << "," << k;
    }
  }
}

TEST(FreeField, ProjectionIsHomomorphic) {
  Point P(Rational(3, 7), Rational(5, 11));
  auto A = sw_images(P.gs);
  auto& S = P.R.small();
  auto& E = P.F.engine();
  for (const char* a : {"G", "H", "L"})
    for (const char* b : {"G", "H", "Mt", "W"}) {
      auto small = S.bracket(A.at(a), A.at(b));
      auto free = E.bracket(P.F.project(A.at(a)), P.F.project(A.at(b)));
      SPoly proj;
      for (int n = 0; n <= small.degree(); ++n) proj.add(n, P.F.project(small.coeff(n)));
      EXPECT_EQ(free, proj) << a << " " << b;
    }
}

TEST(FreeField, KernelDimensions) {
  Point P(Rational(3, 7), Rational(5, 11));
  auto img = project_images(P.F, sw_images(P.gs));
  auto rows = P.F.kernel_dims(3, sw_table(P.gs.c, P.gs.eps), img);
  ASSERT_EQ(rows.size(), 7u);
  int space[] = {1, 3, 6, 13, 27, 51, 91};
  int kernel[] = {1, 0, 0, 2, 3, 3, 4};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].weight, Rational(int(i)) / 2);
    EXPECT_EQ(rows[i].space_dim, space[i]);
    EXPECT_EQ(rows[i].kernel_dim, kernel[i]);
    EXPECT_EQ(rows[i].generated_dim, rows[i].kernel_dim) << rows[i].weight;
  }
}
