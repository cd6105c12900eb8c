#pragma once

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

#include "mmf/qseries.hpp"
#include "mmf/vvforms.hpp"

namespace mmf {

// a(n) for odd n <= nmax, from the divisor-sum formula applied to a varrho form.
struct LiftSeries {
  std::map<long, BigInt> a;
  long nmax = 0;
  std::string source;

  const BigInt& at(long n) const;
  // The same numbers as a q-series (even exponents zero), justified up to nmax.
  PuiseuxSeries as_series() const;
};

// (eta(2z) eta(4z))^4 (1 - 96 x + 256 x^2) / (1 + 16 x)^2, x = psi(2z),
// psi = eta(z)^8 eta(4z)^16 / eta(2z)^24.
PuiseuxSeries phi_series(const BigRational& order);
PuiseuxSeries psi_series(const BigRational& order);
// 1 + 240 sum sigma_3(n) q^n.
PuiseuxSeries eisenstein_E4(const BigRational& order);
// 64 Delta / E4^2.
PuiseuxSeries scalar_magnetic_series(const BigRational& order);

// a(n) = (-1)^((n-1)/2) sum_{r | n} r c(G, (n/r)^2), odd n <= nmax.
LiftSeries lift_Phi(const VVForm& G, long nmax, const std::string& source = "");

struct Report {
  std::string target;
  long nmax = 0;
  std::vector<long> failures;
  bool pass = false;
  double runtime_ms = 0;
  nlohmann::json details;  // optional extra data, omitted when null

  nlohmann::json to_json() const;
};

// n | a(n) for 1 <= n <= nmax. Non-integral coefficients throw IntegralityError.
Report verify_magnetic(const PuiseuxSeries& s, long nmax, const std::string& target);
Report verify_magnetic(const LiftSeries& s, long nmax, const std::string& target);

// p^3 | (a(p) - p) for the coefficients of phi, odd primes p <= pmax.
Report verify_phi_p3(const PuiseuxSeries& phi, long pmax);
// a_d(p) = p (d/p) B(1, d) mod p^3 for odd primes p <= pmax.
Report verify_lift_p3(const VVForm& Gd, long d, long pmax);
// B(p^2 n, d) = p ((-d/p) - (n/p)) B(n, d) mod p^3 for 1 <= n <= nmax.
Report verify_prop_congruence(const VVForm& Gd, long d, long p, long nmax);
// m | B(m^2, d) for 1 <= m <= mmax.
Report verify_square_divisibility(const VVForm& Gd, long d, long mmax);

}  // namespace mmf
