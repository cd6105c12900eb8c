#include <gtest/gtest.h>

#include <random>

#include "printers.hpp"
#include "mmf/errors.hpp"
#include "mmf/qseries.hpp"

using namespace mmf;

namespace {

BigRational R(long n, long d = 1) {
  BigRational x(n, d);
  x.canonicalize();
  return x;
}

PuiseuxSeries poly(const std::vector<long>& c, std::optional<BigRational> trunc = std::nullopt) {
  std::vector<BigRational> v(c.begin(), c.end());
  return PuiseuxSeries::from_coeffs(1, 0, v, trunc);
}

// prod_{n>=1} (1 - q^n)^e up to q^{N-1}, by repeated multiplication.
std::vector<BigInt> product_oracle(int e, int N) {
  std::vector<BigInt> c(N, 0);
  c[0] = 1;
  for (int n = 1; n < N; ++n)
    for (int rep = 0; rep < e; ++rep)
      for (int k = N - 1; k >= n; --k) c[k] -= c[k - n];
  return c;
}

// Random series on the 1/denom lattice, known below q^(top/denom).
PuiseuxSeries random_series(std::mt19937& rng, long denom, long top) {
  std::uniform_int_distribution<long> num(-20, 20), den(1, 3), val(-3, 2);
  std::vector<std::pair<long, BigRational>> terms;
  for (long k = val(rng); k < top; ++k)
    if (rng() % 3 != 0) terms.emplace_back(k, R(num(rng), den(rng)));
  return PuiseuxSeries::from_terms(denom, terms, R(top, denom));
}

BigRational min_trunc(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  return std::min(*a.trunc_order(), *b.trunc_order());
}

void expect_same_below(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  BigRational t = min_trunc(a, b);
  EXPECT_EQ(a.truncated(t), b.truncated(t)) << a.str() << "\n" << b.str();
}

}  // namespace

TEST(Series, PolynomialProduct) {
  EXPECT_EQ(poly({1, -1}) * poly({1, 1}), poly({1, 0, -1}));
}

TEST(Series, FractionalExponentsAdd) {
  PuiseuxSeries x = PuiseuxSeries::monomial(1, R(1, 8));
  EXPECT_EQ(x * x, PuiseuxSeries::monomial(1, R(1, 4)));
}

TEST(Series, EtaTimesInverseIsOne) {
  PuiseuxSeries eta = eta_quotient({{{1, 1}}, 1}, R(20));
  PuiseuxSeries prod = eta * eta.inverse(R(20));
  EXPECT_GE(*prod.trunc_order(), R(19));
  EXPECT_EQ(prod.truncated(R(19)), PuiseuxSeries::constant(1, R(19)));
}

TEST(Series, GeometricInverse) {
  PuiseuxSeries inv = poly({1, -1}).inverse(R(12));
  for (long n = 0; n < 12; ++n) EXPECT_EQ(inv.coeff(R(n)), 1);
  EXPECT_EQ(*inv.trunc_order(), R(12));
}

TEST(Series, MonomialInverse) {
  EXPECT_EQ(PuiseuxSeries::monomial(1, R(1)).inverse(), PuiseuxSeries::monomial(1, R(-1)));
  EXPECT_EQ(PuiseuxSeries::monomial(R(2, 3), R(3, 8)).inverse(), PuiseuxSeries::monomial(R(3, 2), R(-3, 8)));
}

TEST(Series, InverseOfOnePlusPsi) {
  PuiseuxSeries psi2 = eta_quotient({{{1, 8}, {4, 16}, {2, -24}}, 1}, R(10)).rescaled(2);
  PuiseuxSeries x = (PuiseuxSeries::constant(1) + psi2 * R(16)).inverse(R(20));
  EXPECT_EQ(x.valuation(), 0);
  EXPECT_EQ(x.leading_coeff(), 1);
}

TEST(Series, Rescale) {
  PuiseuxSeries psi = eta_quotient({{{1, 8}, {4, 16}, {2, -24}}, 1}, R(10));
  EXPECT_EQ(psi.valuation(), 1);
  EXPECT_EQ(psi.leading_coeff(), 1);
  EXPECT_EQ(psi.rescaled(2).valuation(), 2);
  EXPECT_EQ(*psi.rescaled(2).trunc_order(), R(20));
  PuiseuxSeries eta = eta_quotient({{{1, 1}}, 1}, R(5));
  EXPECT_EQ(eta.rescaled(R(1, 4)).valuation(), R(1, 96));
  EXPECT_EQ(eta.rescaled(1), eta);
}

TEST(Series, Sieve) {
  PuiseuxSeries f = PuiseuxSeries::from_coeffs(4, 0, {R(1), R(4), R(3)}, std::nullopt);
  EXPECT_EQ(f.sieved(0, 4), PuiseuxSeries::constant(1));
  EXPECT_EQ(f.sieved(2, 4), PuiseuxSeries::monomial(3, R(1, 2)));
}

TEST(Series, EtaPentagonal) {
  PuiseuxSeries eta = eta_quotient({{{1, 1}}, 1}, R(60));
  EXPECT_EQ(eta.valuation(), R(1, 24));
  std::vector<long> expected(60, 0);
  for (long k = -10; k <= 10; ++k) {
    long e = k * (3 * k - 1) / 2;
    if (e < 60) expected[e] = k % 2 == 0 ? 1 : -1;
  }
  for (long n = 0; n < 59; ++n) EXPECT_EQ(eta.coeff(R(24 * n + 1, 24)), expected[n]) << n;
}

TEST(Series, HauptmodulAtInfinity) {
  PuiseuxSeries t = eta_quotient({{{1, -16}, {2, 24}, {4, -8}}, 16}, R(4));
  EXPECT_EQ(t.valuation(), 0);
  EXPECT_EQ(t.leading_coeff(), 16);
}

TEST(Series, DeltaAgainstDirectProduct) {
  const int N = 40;
  PuiseuxSeries delta = eta_quotient({{{1, 24}}, 1}, R(N));
  auto oracle = product_oracle(24, N);
  EXPECT_EQ(delta.coeff(R(1)), 1);
  EXPECT_EQ(delta.coeff(R(2)), -24);
  EXPECT_EQ(delta.coeff(R(3)), 252);
  for (int n = 1; n < N; ++n) EXPECT_EQ(delta.coeff(R(n)), BigRational(oracle[n - 1])) << n;
}

TEST(Series, PsiLeadingTerm) {
  PuiseuxSeries psi = eta_quotient({{{1, 8}, {4, 16}, {2, -24}}, 1}, R(6));
  EXPECT_EQ(psi.valuation(), R(8 + 64 - 48, 24));
  EXPECT_EQ(psi.coeff(R(1)), 1);
  EXPECT_EQ(psi.coeff(R(2)), -8);
  EXPECT_EQ(psi.coeff(R(3)), 44);
}

TEST(Series, EtaQuotientConcatenation) {
  EtaQuotientSpec a{{{1, 3}, {2, -5}}, 2}, b{{{4, 7}, {1, -1}}, R(1, 3)};
  EtaQuotientSpec ab{{{1, 3}, {2, -5}, {4, 7}, {1, -1}}, R(2, 3)};
  expect_same_below(eta_quotient(a, R(15)) * eta_quotient(b, R(15)), eta_quotient(ab, R(15)));
}

TEST(Series, RingLaws) {
  std::mt19937 rng(21);
  for (int i = 0; i < 60; ++i) {
    long L = std::vector<long>{1, 4, 8}[i % 3];
    auto a = random_series(rng, L, 3 * L), b = random_series(rng, L, 4 * L), c = random_series(rng, 8, 20);
    expect_same_below((a * b) * c, a * (b * c));
    expect_same_below(a * (b + c), a * b + a * c);
    expect_same_below(a * b, b * a);
    expect_same_below((a + b) + c, a + (b + c));
  }
}

TEST(Series, InverseIsTwoSided) {
  std::mt19937 rng(22);
  for (int i = 0; i < 40; ++i) {
    auto a = random_series(rng, 8, 30);
    if (a.is_zero()) continue;
    auto inv = a.inverse();
    PuiseuxSeries one = PuiseuxSeries::constant(1, R(100));
    expect_same_below(a * inv, one);
    expect_same_below(inv * a, one);
  }
}

TEST(Series, CoefficientBeyondTruncationThrows) {
  PuiseuxSeries s = poly({1, 2, 3}, R(3));
  EXPECT_EQ(s.coeff(R(2)), 3);
  EXPECT_THROW(s.coeff(R(3)), PrecisionError);
  EXPECT_THROW(s.coeff(R(7, 2)), PrecisionError);
  EXPECT_EQ(poly({1, 2, 3}).coeff(R(50)), 0);
}

TEST(Series, TruncationRules) {
  PuiseuxSeries a = poly({1, 1}, R(5)), b = PuiseuxSeries::monomial(1, R(-2));
  EXPECT_EQ(*(a * b).trunc_order(), R(3));
  EXPECT_EQ(*(a + poly({1}, R(2))).trunc_order(), R(2));
  EXPECT_TRUE((poly({1}) * poly({2})).is_exact());
}

TEST(Series, JsonRoundTrip) {
  std::mt19937 rng(23);
  for (int i = 0; i < 20; ++i) {
    auto a = random_series(rng, 8, 25);
    EXPECT_EQ(PuiseuxSeries::from_json(a.to_json()), a);
  }
  auto exact = PuiseuxSeries::monomial(R(-7, 3), R(5, 4));
  EXPECT_EQ(PuiseuxSeries::from_json(exact.to_json()), exact);
  EXPECT_TRUE(exact.to_json()["trunc_order"].is_null());
}
