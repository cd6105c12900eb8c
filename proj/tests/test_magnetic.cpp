#include <gtest/gtest.h>

#include "printers.hpp"
#include "mmf/errors.hpp"
#include "mmf/magnetic.hpp"

using namespace mmf;

namespace {

BigRational R(long n, long d = 1) {
  BigRational x(n, d);
  x.canonicalize();
  return x;
}

BasisBuilder& builder() {
  static BasisBuilder b(std::make_shared<const GtildeFamily>(12, family_order_for_index(100 * 100)));
  return b;
}

// Coefficients of 64 Delta / E4^2 from prod (1 - q^n)^24 and 1 + 240 sigma_3, by naive
// power-series division.
std::vector<BigInt> scalar_oracle(int N) {
  std::vector<BigInt> delta(N, 0), e4(N, 0), e4sq(N, 0), out(N, 0);
  std::vector<BigInt> prod(N, 0);
  prod[0] = 1;
  for (int n = 1; n < N; ++n)
    for (int rep = 0; rep < 24; ++rep)
      for (int k = N - 1; k >= n; --k) prod[k] -= prod[k - n];
  for (int k = 1; k < N; ++k) delta[k] = prod[k - 1];
  e4[0] = 1;
  for (int n = 1; n < N; ++n) {
    BigInt s = 0;
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) s += BigInt(d) * d * d;
    e4[n] = 240 * s;
  }
  for (int i = 0; i < N; ++i)
    for (int j = 0; i + j < N; ++j) e4sq[i + j] += e4[i] * e4[j];
  for (int n = 0; n < N; ++n) {
    BigInt s = 64 * delta[n];
    for (int k = 1; k <= n; ++k) s -= e4sq[k] * out[n - k];
    out[n] = s;
  }
  return out;
}

}  // namespace

TEST(Phi, Coefficients) {
  PuiseuxSeries phi = phi_series(R(12));
  EXPECT_EQ(phi.coeff(1), 1);
  EXPECT_EQ(phi.coeff(3), -132);
  EXPECT_EQ(phi.coeff(5), 5630);
  EXPECT_EQ(phi.coeff(7), -189672);
  EXPECT_EQ(phi.coeff(9), 5768181);
}

TEST(Phi, OddExponentsOnly) {
  PuiseuxSeries phi = phi_series(R(200));
  for (long n = 0; n < 200; n += 2) EXPECT_EQ(phi.coeff(R(n)), 0) << n;
  EXPECT_TRUE(phi.all_integral());
}

TEST(Phi, LiftOfFirstBasisElement) {
  LiftSeries a = lift_Phi(builder().G(1).form, 99, "G_1");
  EXPECT_EQ(a.at(1), -4);
  EXPECT_EQ(a.at(3), 528);
  EXPECT_EQ(a.at(5), -22520);
  EXPECT_EQ(a.at(7), 758688);
  EXPECT_EQ(a.at(9), -23072724);
  PuiseuxSeries phi = phi_series(R(100));
  for (long n = 1; n < 100; n += 2) EXPECT_EQ(BigRational(a.at(n)), -4 * phi.coeff(R(n))) << n;
  EXPECT_THROW(a.at(101), PrecisionError);
}

TEST(Phi, LiftNeedsPrecision) {
  EXPECT_THROW(lift_Phi(builder().G(1).form, 101), PrecisionError);
}

TEST(Magnetic, ScalarFormAgainstOracle) {
  const int N = 30;
  PuiseuxSeries s = scalar_magnetic_series(R(N));
  auto oracle = scalar_oracle(N);
  EXPECT_EQ(s.coeff(1), 64);
  EXPECT_EQ(s.coeff(2), -32256);
  for (int n = 0; n < N; ++n) EXPECT_EQ(s.coeff(R(n)), BigRational(oracle[n])) << n;
}

TEST(Magnetic, Divisibility) {
  Report phi = verify_magnetic(phi_series(R(10)), 9, "phi");
  EXPECT_TRUE(phi.pass);
  Report delta = verify_magnetic(eta_quotient({{{1, 24}}, 1}, R(12)), 11, "Delta");
  EXPECT_FALSE(delta.pass);
  EXPECT_EQ(delta.failures, std::vector<long>{11});
  EXPECT_TRUE(verify_magnetic(PuiseuxSeries::zero(R(50)), 49, "zero").pass);
  EXPECT_TRUE(verify_magnetic(scalar_magnetic_series(R(60)), 59, "64 Delta / E4^2").pass);
}

TEST(Magnetic, NonIntegralIsAnError) {
  PuiseuxSeries half = PuiseuxSeries::monomial(R(1, 2), R(1), R(5));
  EXPECT_THROW(verify_magnetic(half, 4, "half"), IntegralityError);
}

TEST(Congruence, PhiAtSmallPrimes) {
  Report r = verify_phi_p3(phi_series(R(40)), 39);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.details[0]["p"], 3);
  EXPECT_EQ(r.details[0]["a"], "-132");
}

TEST(Congruence, LiftAtPrimes) {
  // a_1(3) = 528 = 3 (1/3) (-4) mod 27
  EXPECT_EQ((528 + 12) % 27, 0);
  for (long d : {1, 3, 7, 11}) EXPECT_TRUE(verify_lift_p3(builder().G(d).form, d, 97).pass) << d;
}

TEST(Congruence, BasisCoefficients) {
  const VVForm& g1 = builder().G(1).form;
  BigInt lhs = g1.coeff(9).get_num() - BigInt(3 * (kronecker(-1, 3) - kronecker(1, 3))) * g1.coeff(1).get_num();
  EXPECT_EQ(lhs, -540);
  for (long d : {1, 3, 7, 11, 15, 17, 19, 23})
    for (long p : {3, 5, 7}) EXPECT_TRUE(verify_prop_congruence(builder().G(d).form, d, p, 50).pass) << d << " " << p;
}

TEST(Family, DivisibilityForSmallN) {
  for (long d : {1, 3, 7, 11, 15, 19, 23}) {
    LiftSeries a = lift_Phi(builder().G(d).form, 99);
    EXPECT_TRUE(verify_magnetic(a, 99, "a_d").pass) << d;
  }
}
