#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "dsred/reduction.hpp"
#include "dsred/walgebras.hpp"

using namespace dsred;
using SA = SuperAlgebra;

namespace {

Reduction& sym() {
  static Reduction R(Scalar::var(kA), Scalar::var(kK));
  return R;
}
const GeneratorSet& sym_gens() {
  static GeneratorSet gs = build_generators(sym());
  return gs;
}

std::string golden(const std::string& f) {
  std::ifstream in(data_path("golden/" + f));
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Vec unit_sum(std::initializer_list<int> idx) {
  Vec v(SA::kDim, Scalar(0));
  for (int i : idx) v[i] = Scalar(1);
  return v;
}

}  // namespace

TEST(Reduction, CentralCharge) {
  auto& R = sym();
  EXPECT_EQ(R.central_charge_formula(), central_charge_closed(R.alpha(), R.k()));
  std::pair<Rational, Rational> pts[] = {{1, Rational(-2, 3)}, {-2, Rational(-2, 3)}, {Rational(-1, 2), Rational(1, 3)}};
  for (auto [a, k] : pts) {
    Reduction P{Scalar(a), Scalar(k)};
    EXPECT_EQ(P.central_charge_formula(), Scalar(Rational(21, 2)));
    EXPECT_TRUE(build_generators(P).eps.is_zero());
  }
}

TEST(Reduction, Parameters) {
  EXPECT_THROW(Reduction(Scalar::var(kA), Scalar(0)), Error);
  EXPECT_THROW(Reduction(Scalar(-1), Scalar::var(kK)), Error);
  Reduction half{Scalar::var(kA), Scalar(Rational(1, 2))};
  try {
    build_generators(half);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RadicandZero);
  }
  EXPECT_THROW(sym().reconstruct_weight_3_2(SA::unit(SA::E1)), Error);
  EXPECT_THROW(sym().reconstruct_weight_3_2(SA::unit(SA::F1)), Error);  // f1 alone is not in g^f
}

TEST(Reduction, NeutralFermions) {
  auto& R = sym();
  auto& E = R.small();
  Scalar a = R.alpha();
  // <Phi_1|Phi_1> = (f|[e1,e1]) = 2(f|e11...) vanishes except through f12,f13,f23
  EXPECT_TRUE(R.neutral_form(0, 0).is_zero());
  // [Phi_i lambda Phi^j] = delta_ij
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      auto p = E.bracket(R.phi_lower(i), R.phi_upper(j));
      EXPECT_EQ(p, SPoly(SExpr::vacuum(Scalar(i == j ? 1 : 0))));
    }
  EXPECT_EQ(E.bracket(R.phi_upper(0), R.phi_upper(0)), SPoly(SExpr::vacuum(-(Scalar(1) + a) / (Scalar(2) * a))));
}

TEST(Reduction, CurrentIdentity) {
  auto& R = sym();
  auto& F = R.full();
  for (int a : R.grading().nonpositive())
    for (int b : R.grading().nonpositive()) {
      auto lhs = F.bracket(R.current_J(SA::unit(a)), R.current_J(SA::unit(b)));
      SPoly rhs;
      rhs.add(0, R.current_J(R.algebra().bracket(a, b)));
      rhs.add(1, SExpr::vacuum(R.k() * R.algebra().form(a, b)));
      EXPECT_EQ(lhs, rhs) << R.algebra().name(a) << " " << R.algebra().name(b);
    }
}

TEST(Reduction, DifferentialSquaresToZero) {
  auto& R = sym();
  auto& F = R.full();
  EXPECT_TRUE(F.bracket(R.d(), R.d()).is_zero());
  auto& amb = F.ambient();
  auto allow = [&](int g) { return sgn(amb.gen(g).weight) > 0; };
  int n = 0;
  for (Rational w(1, 2); w <= Rational(2); w += Rational(1, 2))
    for (int q = -3; q <= 2; ++q)
      for (auto& word : words_of_weight(amb, w, q, allow)) {
        SExpr x = SExpr::word(word);
        EXPECT_TRUE(R.d0(R.d0(x)).is_zero()) << word_string(amb, word);
        ++n;
      }
  EXPECT_GT(n, 100);
}

TEST(Reduction, GeneratorsAreClosed) {
  auto& R = sym();
  auto& gs = sym_gens();
  for (const SExpr* x : {&gs.G, &gs.L, &gs.H, &gs.Mt, &gs.W, &gs.U}) EXPECT_TRUE(R.d0(R.embed(*x)).is_zero());
  EXPECT_TRUE(R.d0(R.virasoro_full()).is_zero());
}

TEST(Reduction, VirasoroOfTheComplex) {
  auto& R = sym();
  auto& F = R.full();
  SExpr L = R.virasoro_full();
  auto p = F.bracket(L, L);
  EXPECT_EQ(p.coeff(3), SExpr::vacuum(R.central_charge_formula() / Scalar(12)));
  EXPECT_EQ(p.coeff(1), L * Scalar(2));
  EXPECT_EQ(p.coeff(0), F.derive(L));
  // Its restriction to W-fields is the L built from G.
  auto q = F.bracket(L, R.embed(sym_gens().G));
  EXPECT_EQ(q.coeff(1), R.embed(sym_gens().G) * Scalar(Rational(3, 2)));
}

TEST(Reduction, WeightThreeHalvesSolutionIsUnique) {
  auto& R = sym();
  Vec v = unit_sum({SA::F1, SA::F2, SA::F3});
  auto sol = R.solve_closed(v);
  EXPECT_TRUE(sol.kernel.empty());
  EXPECT_EQ(sol.field, R.reconstruct_weight_3_2(v));
}

TEST(Reduction, GoldenJf1) {
  auto& E = sym().small();
  EXPECT_EQ(to_string(E.ambient(), sym().J_f(0)), to_string(E.ambient(), parse_field(E, golden("jf1.txt"))));
}

TEST(Reduction, Jf2CubicCoefficient) {
  auto& R = sym();
  Word w{make_letter(0), make_letter(1), make_letter(2)};
  Scalar a = R.alpha();
  EXPECT_EQ(R.J_f(1).coeff(w), -a * (a + Scalar(2)) / Scalar(3));
  EXPECT_EQ(R.J_f(2).coeff(w), (Scalar(2) * a + Scalar(1)) / Scalar(3));
  // The cubic terms of G cancel.
  EXPECT_TRUE(sym_gens().G.coeff(w).is_zero());
}

TEST(Reduction, GoldenGLH) {
  auto& E = sym().small();
  auto& amb = E.ambient();
  EXPECT_EQ(to_string(amb, sym_gens().G), to_string(amb, parse_field(E, golden("g.txt"))));
  EXPECT_EQ(to_string(amb, sym_gens().L), to_string(amb, parse_field(E, golden("l.txt"))));
  EXPECT_EQ(to_string(amb, sym_gens().H), to_string(amb, parse_field(E, golden("h.txt"))));
}

TEST(Reduction, N1AndMultiplets) {
  auto& E = sym().small();
  auto& gs = sym_gens();
  auto GG = E.bracket(gs.G, gs.G);
  EXPECT_EQ(GG.coeff(2), SExpr::vacuum(gs.c / Scalar(3)));
  EXPECT_TRUE(GG.coeff(1).is_zero());
  EXPECT_EQ(GG.coeff(0), gs.L * Scalar(2));
  auto GH = E.bracket(gs.G, gs.H);
  EXPECT_EQ(GH, SPoly(gs.Mt));
  auto LH = E.bracket(gs.L, gs.H);
  EXPECT_EQ(LH.coeff(1), gs.H * Scalar(Rational(3, 2)));
  EXPECT_EQ(LH.coeff(0), E.derive(gs.H));
  EXPECT_EQ(LH.degree(), 1);
  EXPECT_EQ(E.bracket(gs.H, gs.H).coeff(2), SExpr::vacuum(gs.c / Scalar(3)));
}

TEST(Reduction, SignFlipOfRho) {
  Reduction R{Scalar(Rational(3, 7)), Scalar(Rational(5, 11))};
  auto g1 = build_generators(R);
  Branches br;
  br.values[kRho] = -g1.rho;
  auto g2 = build_generators(R, br);
  EXPECT_EQ(g2.H, g1.H * Scalar(-1));
  EXPECT_EQ(g2.Mt, g1.Mt * Scalar(-1));
  EXPECT_EQ(g2.eps, -g1.eps);
  EXPECT_EQ(g2.W, g1.W);
  EXPECT_EQ(g2.L, g1.L);
}
