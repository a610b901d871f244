#include <gtest/gtest.h>

#include "dsred/freefield.hpp"

using namespace dsred;

namespace {

SPoly entry(const BracketTable& t, const std::string& a, const std::string& b) {
  auto p = t.bracket(t.ambient().find(a), t.ambient().find(b));
  EXPECT_TRUE(p.has_value()) << a << " " << b;
  return p ? *p : SPoly();
}

const char* kMini =
    "# N=1 only\n"
    "gen G odd 3/2\n"
    "gen L even 2\n"
    "[G _ G] = c/3*lambda^2 + 2*L\n"
    "[L _ G] = 3/2*lambda*G\n"
    "  + d(G)\n"
    "[L _ L] = c/12*lambda^3 + 2*lambda*L + d(L)\n";

struct SvPoint {
  Reduction R{Scalar(1), Scalar(Rational(-2, 3))};
  GeneratorSet gs = build_generators(R);
  FreeField F{R, gs.sqrt_k};
  Assignment sw = project_images(F, sw_images(gs));
  Assignment sv = sv_images(F.engine(), sw, gs.mu);
};

SvPoint& sv_point() {
  static SvPoint p;
  return p;
}

}  // namespace

TEST(Table, ParseAndRoundTrip) {
  auto t = parse_table_string(kMini);
  EXPECT_EQ(t.size(), 2);
  EXPECT_EQ(t.entries().size(), 3u);
  auto again = parse_table_string(t.render());
  EXPECT_EQ(again.render(), t.render());
  for (auto* f : {"tables/sw.table", "tables/sv_g2.table"}) {
    auto u = parse_table_file(data_path(f));
    EXPECT_EQ(parse_table_string(u.render()).render(), u.render()) << f;
  }
}

TEST(Table, EmptyFile) {
  auto t = parse_table_string("");
  EXPECT_EQ(t.size(), 0);
  EXPECT_TRUE(t.entries().empty());
  EXPECT_EQ(parse_table_string("# nothing\n\n").size(), 0);
}

TEST(Table, Errors) {
  try {
    parse_table_string("gen G odd 3/2\n[G _ X] = 0\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(parse_table_string("gen G odd\n"), Error);
  EXPECT_THROW(parse_table_string("  d(G)\n"), Error);
  EXPECT_THROW(parse_table_string("gen G odd 3/2\n[G _ G] = 2*L\n"), Error);
  try {
    parse_table_file("/nonexistent/x.table");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigParse);
  }
}

TEST(Table, SkewConsistency) {
  std::string base = kMini;
  // [G_lambda L] = -[L_{-lambda-d} G]
  EXPECT_NO_THROW(parse_table_string(base + "[G _ L] = 3/2*lambda*G + 1/2*d(G)\n"));
  try {
    parse_table_string(base + "[G _ L] = 3/2*lambda*G + d(G)\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConsistencyError);
    EXPECT_NE(std::string(e.what()).find("[G _ L]"), std::string::npos);
  }
  try {
    parse_table_string("gen W even 2\n[W _ W] = lambda^3 + 2*lambda*W\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConsistencyError);
  }
  // The shipped [W U] against its skew.
  auto sw = parse_table_file(data_path("tables/sw.table"));
  int W = sw.ambient().find("W"), U = sw.ambient().find("U");
  auto uw = sw.skew(*sw.find(W, U), W, U);
  EXPECT_EQ(sw.skew(uw, U, W), *sw.find(W, U));
}

TEST(Table, SwEntries) {
  auto t = sw_table(Scalar::var(kC), Scalar::var(kEps));
  Scalar c = Scalar::var(kC), eps = Scalar::var(kEps), mu = mu_of(c, eps);
  EXPECT_EQ(mu * mu, Scalar(9) * c * (Scalar(4) + eps * eps) / (Scalar(2) * (Scalar(27) - Scalar(2) * c)));
  auto HW = entry(t, "H", "W");
  EXPECT_EQ(HW, t.parse_poly("MU*lambda*H + eps/2*U + MU/3*d(H)"));
  EXPECT_EQ(entry(t, "U", "U").degree(), 4);
  EXPECT_EQ(entry(t, "U", "U").coeff(4), SExpr::vacuum(-c / Scalar(12)));
  EXPECT_EQ(entry(t, "G", "G"), t.parse_poly("c/3*lambda^2 + 2*L"));
  EXPECT_THROW(sw_table(Scalar(Rational(27, 2)), Scalar(0)), Error);
}

TEST(Table, SvEntries) {
  auto t = sv_table();
  EXPECT_EQ(t.size(), 6);
  EXPECT_EQ(t.entries().size(), 21u);
  EXPECT_EQ(entry(t, "X", "X"), t.parse_poly("35/24*lambda^3 - 10*lambda*X - 5*d(X)"));
  EXPECT_EQ(entry(t, "G", "Phi"), t.parse_poly("K"));
  EXPECT_EQ(entry(t, "L", "X").coeff(3), SExpr::vacuum(Scalar(Rational(-7, 24))));
  EXPECT_EQ(entry(t, "Phi", "Phi"), t.parse_poly("-7/2*lambda^2 + 6*X"));
}

TEST(Verify, ZeroAssignment) {
  Reduction R{Scalar(Rational(3, 7)), Scalar(Rational(5, 11))};
  auto t = parse_table_string(kMini);
  Assignment zero{{"G", SExpr()}, {"L", SExpr()}};
  auto rep = verify_homomorphism(t, zero, R.small());
  EXPECT_FALSE(rep.ok());
  ASSERT_EQ(rep.pairs.size(), 3u);
  EXPECT_EQ(rep.pairs[0].a, "G");
  EXPECT_EQ(rep.pairs[0].status, PairCheck::Fail);
  // residual = bracket of images - right side
  SPoly expect;
  expect.add(2, SExpr::vacuum(-Scalar::var(kC) / Scalar(3)));
  EXPECT_EQ(rep.pairs[0].residual, expect);
  Assignment partial{{"G", SExpr()}};
  EXPECT_THROW(verify_homomorphism(t, partial, R.small()), Error);
}

TEST(Verify, N1SubalgebraSymbolic) {
  Reduction R{Scalar::var(kA), Scalar::var(kK)};
  auto gs = build_generators(R);
  auto t = parse_table_string(kMini).substituted([&] {
    Substitution s;
    s.vars[kC] = gs.c;
    return s;
  }());
  auto rep = verify_homomorphism(t, {{"G", gs.G}, {"L", gs.L}}, R.small());
  EXPECT_TRUE(rep.ok());
}

TEST(Verify, SwAtRationalPoints) {
  std::pair<Rational, Rational> pts[] = {{Rational(3, 7), Rational(5, 11)}, {Rational(-5, 3), Rational(2, 9)}};
  for (auto [a, k] : pts) {
    Reduction R{Scalar(a), Scalar(k)};
    auto gs = build_generators(R);
    auto rep = verify_homomorphism(sw_table(gs.c, gs.eps), sw_images(gs), R.small());
    for (auto& p : rep.pairs) EXPECT_EQ(p.status, PairCheck::Pass) << p.a << " " << p.b;
    // Flipping rho flips H, Mt and eps; flipping mu flips W and U.
    Branches br;
    br.values[kRho] = -gs.rho;
    auto g2 = build_generators(R, br);
    EXPECT_TRUE(verify_homomorphism(sw_table(g2.c, g2.eps), sw_images(g2), R.small()).ok());
    br.values[kMu] = -gs.mu;
    auto g3 = build_generators(R, br);
    EXPECT_EQ(g3.W, gs.W * Scalar(-1));
    EXPECT_TRUE(verify_homomorphism(sw_table(g3.c, g3.eps, g3.mu), sw_images(g3), R.small()).ok());
    EXPECT_FALSE(verify_homomorphism(sw_table(g3.c, g3.eps), sw_images(g3), R.small()).ok());
    // The wrong sign of eps is caught.
    auto bad = verify_homomorphism(sw_table(gs.c, -gs.eps), sw_images(gs), R.small());
    EXPECT_FALSE(bad.ok());
  }
}

TEST(Ideal, Components) {
  auto& P = sv_point();
  IdealComponents I(sv_ideal(4), sw_table(P.gs.c, P.gs.eps), P.sw, P.F.engine());
  EXPECT_FALSE(I.generator().is_zero());
  EXPECT_EQ(I.dim(Rational(7, 2)), 1);
  EXPECT_EQ(I.dim(4), 3);
  EXPECT_EQ(I.dim(3), 0);
  EXPECT_EQ(I.dim(0), 0);
  EXPECT_TRUE(I.basis(3).empty());
  auto r = I.reduce(I.generator());
  EXPECT_TRUE(r.residue.is_zero());
  ASSERT_EQ(r.certificate.size(), 1u);
  EXPECT_EQ(r.certificate[0].first, "I");
  auto l = I.reduce(P.sw.at("L"));
  EXPECT_EQ(l.residue, P.sw.at("L"));
  EXPECT_TRUE(l.certificate.empty());
  EXPECT_THROW(I.reduce(P.F.engine().derive(P.sw.at("L"), 3)), Error);
}

TEST(Ideal, SvVerification) {
  auto& P = sv_point();
  IdealComponents I(sv_ideal(5), sw_table(P.gs.c, P.gs.eps), P.sw, P.F.engine());
  auto rep = verify_homomorphism(sv_table(), P.sv, P.F.engine(), &I);
  EXPECT_TRUE(rep.ok());
  int reduced = 0;
  for (auto& p : rep.pairs) {
    EXPECT_NE(p.status, PairCheck::Fail) << p.a << " " << p.b;
    if (p.status == PairCheck::ReducedToIdeal) ++reduced;
  }
  EXPECT_EQ(reduced, 2);
}
