#include <gtest/gtest.h>

#include <complex>
#include <random>
#include <thread>

#include "dsred/scalar/scalar_io.hpp"

using namespace dsred;
using cd = std::complex<double>;

namespace {

Scalar S(const char* s) { return parse_scalar(s); }

// Numeric evaluation used as an oracle: each radical takes one fixed square root of its
// radicand at the point, so r^2 = radicand holds by construction.
struct NumPoint {
  cd v[kNumVars];
};

cd eval_poly(const Poly& p, const NumPoint& pt) {
  cd s = 0;
  for (auto& t : p.terms()) {
    cd m = t.coef.get_d();
    for (int v = 0; v < kNumVars; ++v) m *= std::pow(pt.v[v], mono_exp(t.mono, v));
    s += m;
  }
  return s;
}

cd eval_scalar(const Scalar& x, const NumPoint& pt) {
  auto& reg = RadicalRegistry::instance();
  cd num = 0;
  for (auto& part : x.num()) {
    cd t = eval_poly(part.coef, pt);
    for (int r = 0; r < reg.size(); ++r)
      if (part.rads >> r & 1) t *= std::sqrt(eval_poly(reg.info(r).num, pt) / eval_poly(reg.info(r).den, pt));
    num += t;
  }
  return num / eval_poly(x.den(), pt);
}

Poly random_poly(std::mt19937_64& rng, int terms, int maxdeg) {
  std::vector<Poly::Term> ts;
  std::uniform_int_distribution<int> c(-5, 5), e(0, maxdeg), var(0, kNumVars - 1);
  for (int i = 0; i < terms; ++i) {
    Mono m = 0;
    for (int j = 0; j < 2; ++j) m += mono_var(var(rng), e(rng));
    ts.push_back({m, Rational(c(rng))});
  }
  return Poly::from_terms(ts);
}

}  // namespace

TEST(Scalar, RadicalReductions) {
  EXPECT_EQ(S("I*I"), Scalar(-1));
  EXPECT_EQ(S("SQRTK*SQRTK"), Scalar::var(kK));
  EXPECT_EQ(S("MU^2"), S("9*c*(4 + eps^2)/(2*(27 - 2*c))"));
  EXPECT_EQ(S("RHO^2"), S("-3/2*(2*k - 1)*a^2*(1 + a)^2*(4*k^2 + 2*k - a*(1 + a))"));
  EXPECT_EQ(S("SQRT6"), S("SQRT2*SQRT3"));
  EXPECT_EQ(S("SQRT12"), S("2*SQRT3"));
  EXPECT_EQ(S("SQRT2*SQRT6"), S("2*SQRT3"));
}

TEST(Scalar, ZeroTesting) {
  EXPECT_TRUE(S("(a + 1)^2 - a^2 - 2*a - 1").is_zero());
  EXPECT_TRUE(S("1/(a - 1) - 1/(a + 1) - 2/(a^2 - 1)").is_zero());
  EXPECT_TRUE(S("I*SQRTK*I*SQRTK + k").is_zero());
  EXPECT_FALSE(S("I + SQRTK").is_zero());
  EXPECT_FALSE(S("a - k").is_zero());
}

TEST(Scalar, Cancellation) {
  EXPECT_EQ(S("(a^2 - 1)/(a - 1)"), S("a + 1"));
  EXPECT_EQ(S("(a*k - a*c + k^2 - k*c)/(a^2 - c^2)"), S("(k - c + 0)*(a + k)/(a^2 - c^2)"));
  Scalar q = S("(k^2 - 1)/(2*k + 2)");
  EXPECT_EQ(q, S("(k - 1)/2"));
  EXPECT_TRUE(S("(k - 1)/(a + 1)").den().lead().coef == 1);
}

TEST(Scalar, Inverse) {
  EXPECT_EQ(S("1/(1 + I)"), S("(1 - I)/2"));
  EXPECT_EQ(S("1/(SQRT2 + SQRT3)"), S("SQRT3 - SQRT2"));
  EXPECT_EQ(S("1/SQRTK"), S("SQRTK/k"));
  EXPECT_EQ(S("(a + SQRTK)*(1/(a + SQRTK))"), Scalar(1));
  EXPECT_THROW(S("1/(a - a)"), Error);
}

TEST(Scalar, RenderParseRoundTrip) {
  for (const char* t : {"3/2*I*SQRT6", "(a^2 - 1)/(a + 2*k)", "-a*k/(c + 1)", "MU*RHO - 1/3*I*SQRTK*a",
                        "(3*a^2*k - 1)/(2*(a + 1))", "0", "-7/3"}) {
    Scalar x = S(t);
    EXPECT_EQ(parse_scalar(to_string(x)), x) << t << " -> " << to_string(x);
  }
  EXPECT_EQ(to_string(S("I*SQRT2*SQRT3")), "I*SQRT6");
  EXPECT_EQ(to_string(S("k*a")), "a*k");
}

TEST(Scalar, SyntaxErrors) {
  EXPECT_THROW(S("a +"), Error);
  EXPECT_THROW(S("foo"), Error);
  EXPECT_THROW(S(":a b:"), Error);
}

TEST(Scalar, GcdOracle) {
  std::mt19937_64 rng(12345);
  for (int it = 0; it < 40; ++it) {
    Poly f = random_poly(rng, 3, 2) + Poly::var(kA);
    Poly g = random_poly(rng, 3, 2) + Poly::var(kK) + Poly(1);
    Poly h = random_poly(rng, 2, 2) + Poly::var(kC);
    Poly g1 = gcd(f * h, g * h);
    // g1 must divide both and be divisible by h.
    ASSERT_TRUE(divide_exact(f * h, g1).has_value());
    ASSERT_TRUE(divide_exact(g * h, g1).has_value());
    ASSERT_TRUE(divide_exact(g1, primitive(h)).has_value());
  }
}

TEST(Scalar, ArithmeticAgainstNumericOracle) {
  NumPoint pt{{cd(0.37, 0.11), cd(-1.29, 0.4), cd(2.3, -0.7), cd(0.61, 0.25)}};
  const char* xs[] = {"a + I*SQRTK", "MU/(a - k) + RHO", "SQRT2*a - SQRT3/k", "(I + MU)*(eps - c)/(a*k + 1)"};
  for (auto* xa : xs)
    for (auto* xb : xs) {
      Scalar x = S(xa), y = S(xb);
      cd vx = eval_scalar(x, pt), vy = eval_scalar(y, pt);
      EXPECT_NEAR(std::abs(eval_scalar(x * y, pt) - vx * vy), 0, 1e-9 * (1 + std::abs(vx * vy)));
      EXPECT_NEAR(std::abs(eval_scalar(x + y, pt) - (vx + vy)), 0, 1e-9 * (1 + std::abs(vx + vy)));
      EXPECT_NEAR(std::abs(eval_scalar(x / y, pt) - vx / vy), 0, 1e-9 * (1 + std::abs(vx / vy)));
    }
}

TEST(Scalar, Specialize) {
  Scalar cc = S("9/2 - 6*k*(1 + a + a^2)/(a*(1 + a))");
  EXPECT_EQ(specialize(cc, ParamPoint::alpha_k(1, Rational(-2, 3))), Scalar(Rational(21, 2)));
  EXPECT_EQ(specialize(S("RHO^2"), ParamPoint::alpha_k(1, Rational(-2, 3))), Scalar(Rational(-196, 9)));
  // Principal branch: sqrt(-2/3) = I*sqrt(6)/3.
  EXPECT_EQ(specialize(S("SQRTK"), ParamPoint::alpha_k(1, Rational(-2, 3))), S("I*SQRT6/3"));
  EXPECT_EQ(specialize(S("RHO"), ParamPoint::alpha_k(1, Rational(-2, 3))), S("14/3*I"));
  auto p = ParamPoint::alpha_k(1, Rational(-2, 3));
  p.radical_values["RHO"] = S("-14/3*I");
  EXPECT_EQ(specialize(S("RHO"), p), S("-14/3*I"));
  p.radical_values["RHO"] = S("2");
  EXPECT_THROW(specialize(S("RHO"), p), Error);
  EXPECT_THROW(specialize(S("1/(a - 1)"), ParamPoint::alpha_k(1, 3)), Error);
  // Partial substitution interns a new radical when the radicand changes symbolically.
  ParamPoint q;
  q.vars[kC] = S("a + 1");
  Scalar mu = specialize(S("MU"), q);
  EXPECT_EQ(mu * mu, S("9*(a + 1)*(4 + eps^2)/(2*(25 - 2*a))"));
}

TEST(Scalar, ThreadedArithmetic) {
  std::vector<std::thread> th;
  std::vector<Scalar> out(4);
  for (int i = 0; i < 4; ++i)
    th.emplace_back([i, &out] {
      Scalar x = parse_scalar("SQRT" + std::to_string(5 + 2 * i));
      out[i] = x * x;
    });
  for (auto& t : th) t.join();
  for (int i = 0; i < 4; ++i) EXPECT_EQ(out[i], Scalar(5 + 2 * i));
}
