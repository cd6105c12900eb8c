#include "mmf/magnetic.hpp"

#include <chrono>

#include "mmf/errors.hpp"

namespace mmf {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

BigInt integral(const BigRational& x, const std::string& what) {
  if (!is_integer(x)) throw IntegralityError(what + " = " + x.get_str() + " is not an integer");
  return x.get_num();
}

bool divides(long m, const BigInt& x) { return mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(m)) != 0; }

}  // namespace

const BigInt& LiftSeries::at(long n) const {
  auto it = a.find(n);
  if (it == a.end()) {
    if (n > nmax) throw PrecisionError("a(" + std::to_string(n) + ") beyond the computed range " + std::to_string(nmax));
    static const BigInt zero = 0;
    return zero;
  }
  return it->second;
}

PuiseuxSeries LiftSeries::as_series() const {
  std::vector<std::pair<long, BigRational>> terms;
  for (const auto& [n, v] : a) terms.emplace_back(n, BigRational(v));
  return PuiseuxSeries::from_terms(1, terms, BigRational(nmax + 1));
}

PuiseuxSeries psi_series(const BigRational& order) {
  return eta_quotient({{{1, 8}, {4, 16}, {2, -24}}, 1}, order);
}

PuiseuxSeries phi_series(const BigRational& order) {
  PuiseuxSeries lead = eta_quotient({{{2, 4}, {4, 4}}, 1}, order);
  PuiseuxSeries x = psi_series(BigRational(order / 2)).rescaled(2);
  PuiseuxSeries one = PuiseuxSeries::constant(1);
  PuiseuxSeries num = one - x * BigRational(96) + x * x * BigRational(256);
  PuiseuxSeries den = (one + x * BigRational(16)).pow(2).inverse(order);
  return (lead * num * den).truncated(order);
}

PuiseuxSeries eisenstein_E4(const BigRational& order) {
  BigInt c;
  mpz_cdiv_q(c.get_mpz_t(), order.get_num_mpz_t(), order.get_den_mpz_t());
  long n = c.get_si();
  intpoly::Coeffs e(static_cast<std::size_t>(std::max(n, 0L)));
  if (n > 0) e[0] = 1;
  for (long d = 1; d < n; ++d) {
    BigInt d3 = BigInt(d) * d * d * 240;
    for (long k = d; k < n; k += d) e[k] += d3;
  }
  return PuiseuxSeries::from_int_coeffs(1, 0, 1, std::move(e), order);
}

PuiseuxSeries scalar_magnetic_series(const BigRational& order) {
  PuiseuxSeries delta = eta_quotient({{{1, 24}}, 1}, order);
  PuiseuxSeries e4 = eisenstein_E4(order);
  return (delta * (e4 * e4).inverse(order) * BigRational(64)).truncated(order);
}

LiftSeries lift_Phi(const VVForm& G, long nmax, const std::string& source) {
  if (G.rep != Rep::Varrho) throw DomainError("lift_Phi expects a varrho form");
  long top = nmax % 2 == 0 ? nmax - 1 : nmax;
  if (top >= 1 && top * top >= G.index_bound())
    throw PrecisionError("lift up to n = " + std::to_string(nmax) + " needs index " + std::to_string(top * top) +
                         ", form known below " + std::to_string(G.index_bound()));
  LiftSeries out;
  out.nmax = nmax;
  out.source = source;
  for (long n = 1; n <= nmax; n += 2) {
    BigRational s = 0;
    for (long r = 1; r <= n; ++r) {
      if (n % r != 0) continue;
      long k = n / r;
      s += BigRational(r) * G.coeff(k * k);
    }
    if (((n - 1) / 2) % 2 == 1) s = -s;
    BigInt v = integral(s, "a(" + std::to_string(n) + ")");
    if (sgn(v) != 0) out.a[n] = v;
  }
  return out;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j{{"target", target}, {"nmax", nmax}, {"failures", failures}, {"pass", pass}, {"runtime_ms", runtime_ms}};
  if (!details.is_null()) j["details"] = details;
  return j;
}

Report verify_magnetic(const PuiseuxSeries& s, long nmax, const std::string& target) {
  auto t0 = Clock::now();
  Report r;
  r.target = target;
  r.nmax = nmax;
  for (long n = 1; n <= nmax; ++n) {
    BigInt a = integral(s.coeff(n), "coefficient of q^" + std::to_string(n));
    if (!divides(n, a)) r.failures.push_back(n);
  }
  r.pass = r.failures.empty();
  r.runtime_ms = ms_since(t0);
  return r;
}

Report verify_magnetic(const LiftSeries& s, long nmax, const std::string& target) {
  auto t0 = Clock::now();
  Report r;
  r.target = target;
  r.nmax = nmax;
  if (nmax > s.nmax) throw PrecisionError("lift only computed up to n = " + std::to_string(s.nmax));
  for (long n = 1; n <= nmax; n += 2)
    if (!divides(n, s.at(n))) r.failures.push_back(n);
  r.pass = r.failures.empty();
  r.runtime_ms = ms_since(t0);
  return r;
}

Report verify_phi_p3(const PuiseuxSeries& phi, long pmax) {
  auto t0 = Clock::now();
  Report r;
  r.target = "phi p^3 | a(p) - p";
  r.nmax = pmax;
  r.details = nlohmann::json::array();
  for (long p = 3; p <= pmax; p += 2) {
    if (!is_prime(p)) continue;
    BigInt a = integral(phi.coeff(p), "a(" + std::to_string(p) + ")");
    bool ok = divides(p * p * p, a - p);
    r.details.push_back({{"p", p}, {"a", a.get_str()}, {"pass", ok}});
    if (!ok) r.failures.push_back(p);
  }
  r.pass = r.failures.empty();
  r.runtime_ms = ms_since(t0);
  return r;
}

Report verify_lift_p3(const VVForm& Gd, long d, long pmax) {
  auto t0 = Clock::now();
  Report r;
  r.target = "a_d(p) = p (d/p) B(1,d) mod p^3, d = " + std::to_string(d);
  r.nmax = pmax;
  LiftSeries a = lift_Phi(Gd, pmax);
  BigInt b1 = integral(Gd.coeff(1), "B(1, d)");
  for (long p = 3; p <= pmax; p += 2) {
    if (!is_prime(p)) continue;
    BigInt diff = a.at(p) - BigInt(p * kronecker(d, p)) * b1;
    if (!divides(p * p * p, diff)) r.failures.push_back(p);
  }
  r.pass = r.failures.empty();
  r.runtime_ms = ms_since(t0);
  return r;
}

Report verify_prop_congruence(const VVForm& Gd, long d, long p, long nmax) {
  auto t0 = Clock::now();
  Report r;
  r.target = "B(p^2 n, d) = p((-d/p) - (n/p)) B(n, d) mod p^3, d = " + std::to_string(d) + ", p = " + std::to_string(p);
  r.nmax = nmax;
  for (long n = 1; n <= nmax; ++n) {
    BigInt lhs = integral(Gd.coeff(p * p * n), "B(p^2 n, d)");
    BigInt bn = integral(Gd.coeff(n), "B(n, d)");
    BigInt diff = lhs - BigInt(p * (kronecker(-d, p) - kronecker(n, p))) * bn;
    if (!divides(p * p * p, diff)) r.failures.push_back(n);
  }
  r.pass = r.failures.empty();
  r.runtime_ms = ms_since(t0);
  return r;
}

Report verify_square_divisibility(const VVForm& Gd, long d, long mmax) {
  auto t0 = Clock::now();
  Report r;
  r.target = "m | B(m^2, d), d = " + std::to_string(d);
  r.nmax = mmax;
  for (long m = 1; m <= mmax; ++m)
    if (!divides(m, integral(Gd.coeff(m * m), "B(m^2, d)"))) r.failures.push_back(m);
  r.pass = r.failures.empty();
  r.runtime_ms = ms_since(t0);
  return r;
}

}  // namespace mmf
