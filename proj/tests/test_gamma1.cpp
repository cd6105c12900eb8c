#include <gtest/gtest.h>

#include <random>

#include "printers.hpp"
#include "mmf/errors.hpp"
#include "mmf/gamma1.hpp"

using namespace mmf;

namespace {

BigRational R(long n, long d = 1) {
  BigRational x(n, d);
  x.canonicalize();
  return x;
}

const GtildeFamily& family() {
  static const GtildeFamily f(16, R(6));
  return f;
}

}  // namespace

TEST(Gamma1, DivisorSum) {
  EXPECT_EQ(divisor_chi4(1), 1);
  EXPECT_EQ(divisor_chi4(3), 0);
  EXPECT_EQ(divisor_chi4(5), 2);
  EXPECT_EQ(divisor_chi4(25), 3);
  EXPECT_THROW(divisor_chi4(0), DomainError);
}

TEST(Gamma1, BaseTriple) {
  CuspTriple b = base_eisenstein_triple({R(6), R(3), R(6)});
  std::vector<long> u = {-1, -4, -4, 0, -4, -8};
  for (long n = 0; n < 6; ++n) EXPECT_EQ(b.U.coeff(R(n)), u[n]);
  EXPECT_EQ(b.V.coeff(0), 1);
  EXPECT_EQ(b.V.coeff(R(1, 4)), 4);
  EXPECT_EQ(b.W.valuation(), R(1, 2));
  EXPECT_EQ(b.W.coeff(R(1, 2)), -4);
  EXPECT_EQ(b.W.coeff(R(3, 2)), 0);
  EXPECT_EQ(b.W.coeff(R(5, 2)), -8);
}

TEST(Gamma1, SieveOfBaseVIsMinusBaseU) {
  CuspTriple b = base_eisenstein_triple({R(10), R(10), R(10)});
  PuiseuxSeries s = b.V.sieved(0, 4);
  for (long n = 0; n < 10; ++n) EXPECT_EQ(s.coeff(R(n)), -b.U.coeff(R(n))) << n;
}

TEST(Gamma1, Hauptmodul) {
  HauptTriple h = hauptmodul_triple(R(4), R(2), R(4));
  EXPECT_EQ(h.at_inf.coeff(0), 16);
  EXPECT_EQ(h.at_S.valuation(), R(-1, 4));
  EXPECT_EQ(h.at_S.coeff(R(-1, 4)), 1);
  EXPECT_EQ(h.at_S.coeff(0), 8);
  EXPECT_EQ(h.at_ST2S.valuation(), 1);
  EXPECT_EQ(h.at_ST2S.leading_coeff(), -256);
}

TEST(Gamma1, Polynomials) {
  EXPECT_EQ(family().polynomial(0), (std::vector<BigInt>{1}));
  EXPECT_EQ(family().polynomial(1), (std::vector<BigInt>{-12, 1}));
  EXPECT_EQ(family().polynomial(2), (std::vector<BigInt>{68, -20, 1}));
  EXPECT_EQ(family().polynomial(3), (std::vector<BigInt>{-256, 208, -28, 1}));
}

TEST(Gamma1, SecondPolynomialFromTwoByTwoSystem) {
  // Solve for P = x^2 + a x + b with V(g0 P) free of q^{-1/4}, q^0, using at_S directly.
  HauptTriple h = hauptmodul_triple(R(1), R(2), R(1));
  CuspTriple b0 = base_eisenstein_triple({R(1), R(2), R(1)});
  PuiseuxSeries v1 = b0.V * h.at_S, v2 = v1 * h.at_S;
  BigRational a = -v2.coeff(R(-1, 4)) / v1.coeff(R(-1, 4));
  BigRational b = -(v2.coeff(0) + a * v1.coeff(0)) / b0.V.coeff(0);
  auto p = family().polynomial(2);
  EXPECT_EQ(BigRational(p[1]), a);
  EXPECT_EQ(BigRational(p[0]), b);
}

TEST(Gamma1, GtildeOneIsBaseTimesHauptmodulMinusTwelve) {
  CuspTriple g1 = family().gtilde(1);
  CuspTriple b = family().power(0);
  HauptTriple h = hauptmodul_triple(R(8), R(12), R(8));
  PuiseuxSeries twelve = PuiseuxSeries::constant(12);
  EXPECT_TRUE(g1.U.agrees_with(b.U * (h.at_inf - twelve)));
  EXPECT_TRUE(g1.V.agrees_with(b.V * (h.at_S - twelve)));
  EXPECT_TRUE(g1.W.agrees_with(b.W * (h.at_ST2S - twelve)));
}

TEST(Gamma1, PrincipalPartAtS) {
  for (long m = 0; m <= 16; ++m) {
    CuspTriple g = family().gtilde(m);
    EXPECT_EQ(g.V.valuation(), R(-m, 4)) << m;
    EXPECT_EQ(g.V.leading_coeff(), 1) << m;
    for (long n = -m + 1; n < 1; ++n) EXPECT_EQ(g.V.coeff(R(n, 4)), 0) << m << " " << n;
  }
}

TEST(Gamma1, IntegralCusps) {
  for (long m = 0; m <= 16; ++m) {
    CuspTriple g = family().gtilde(m);
    EXPECT_TRUE(g.U.all_integral()) << m;
    EXPECT_TRUE(g.W.all_integral()) << m;
    EXPECT_TRUE(g.V.all_integral()) << m;
  }
}

TEST(Gamma1, ComponentwiseMultiplicativity) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<long> c(-9, 9);
  HauptTriple h = hauptmodul_triple(R(8), R(12), R(8));
  CuspTriple b = base_eisenstein_triple({R(8), R(12), R(8)});
  for (int i = 0; i < 10; ++i) {
    std::vector<BigRational> p(4);
    for (auto& x : p) x = c(rng);
    auto eval = [&](const PuiseuxSeries& base, const PuiseuxSeries& t) {
      PuiseuxSeries acc = PuiseuxSeries::zero(), pw = base;
      for (const auto& x : p) {
        acc += pw * x;
        pw = pw * t;
      }
      return acc;
    };
    CuspTriple g = family().combine(p);
    EXPECT_TRUE(g.U.agrees_with(eval(b.U, h.at_inf)));
    EXPECT_TRUE(g.V.agrees_with(eval(b.V, h.at_S)));
    EXPECT_TRUE(g.W.agrees_with(eval(b.W, h.at_ST2S)));
  }
}

TEST(Gamma1, DualPolynomials) {
  auto p0 = family().dual_polynomial(0);
  EXPECT_EQ(p0, (std::vector<BigRational>{1}));
  EXPECT_THROW(family().dual_polynomial(1), DomainError);
  for (long m : {2, 3, 4, 6, 7, 8}) {
    auto p = family().dual_polynomial(m);
    EXPECT_EQ(p[m], mod(m, 4) == 3 ? 1 : 2) << m;
    CuspTriple g = family().gtilde_dual(m);
    EXPECT_EQ(g.V.valuation(), R(-m, 4)) << m;
    for (long n = -m + 1; n < 0; ++n) {
      if (mod(n, 4) == 3) continue;
      EXPECT_EQ(g.V.coeff(R(n, 4)), 0) << m << " " << n;
    }
    EXPECT_EQ((g.V.coeff(0) - g.U.coeff(0)) / 2, 0) << m;
  }
}

TEST(Gamma1, FamilyBounds) {
  EXPECT_THROW(family().gtilde(17), PrecisionError);
  EXPECT_THROW(family().gtilde(-1), DomainError);
}
