#include "mmf/gamma1.hpp"

#include "mmf/errors.hpp"

namespace mmf {

namespace {

// Margin of 8 steps on the finest (1/4) cusp lattice.
const BigRational kMargin = 2;

int chi4(long m) {
  switch (mod(m, 4)) {
    case 1: return 1;
    case 3: return -1;
    default: return 0;
  }
}

std::vector<long> divisor_chi4_table(long n_max) {
  std::vector<long> r(static_cast<std::size_t>(std::max(n_max, 0L) + 1), 0);
  for (long m = 1; m <= n_max; m += 2)
    for (long k = m; k <= n_max; k += m) r[k] += chi4(m);
  return r;
}

long count_integers_below(const BigRational& x) {
  if (x <= 0) return 0;
  BigInt c;
  mpz_cdiv_q(c.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return c.get_si();
}

}  // namespace

CuspTriple CuspTriple::truncated(const BigRational& order) const {
  return {U.truncated(order), V.truncated(order), W.truncated(order)};
}

long divisor_chi4(long n) {
  if (n <= 0) throw DomainError("divisor_chi4 needs n >= 1");
  long s = 0;
  for (long m = 1; m <= n; m += 2)
    if (n % m == 0) s += chi4(m);
  return s;
}

CuspTriple base_eisenstein_triple(const TripleOrders& order) {
  long nu = count_integers_below(order.U);
  long nv = count_integers_below(order.V * 4);
  long nw = count_integers_below(order.W * 2);
  std::vector<long> r = divisor_chi4_table(std::max({nu, nv, nw}));

  intpoly::Coeffs u(static_cast<std::size_t>(std::max(nu, 0L)));
  if (nu > 0) u[0] = -1;
  for (long n = 1; n < nu; ++n) u[n] = -4 * r[n];

  intpoly::Coeffs v(static_cast<std::size_t>(std::max(nv, 0L)));
  if (nv > 0) v[0] = 1;
  for (long n = 1; n < nv; ++n) v[n] = 4 * r[n];

  intpoly::Coeffs w(static_cast<std::size_t>(std::max(nw, 0L)));
  for (long n = 1; n < nw; n += 2) w[n] = -4 * r[n];

  return {PuiseuxSeries::from_int_coeffs(1, 0, 1, std::move(u), order.U),
          PuiseuxSeries::from_int_coeffs(4, 0, 1, std::move(v), order.V),
          PuiseuxSeries::from_int_coeffs(2, 0, 1, std::move(w), order.W)};
}

HauptTriple hauptmodul_triple(const BigRational& inf_order, const BigRational& s_order, const BigRational& st2s_order) {
  HauptTriple h;
  h.at_inf = eta_quotient({{{1, -16}, {2, 24}, {4, -8}}, 16}, inf_order);
  h.at_S = eta_quotient({{{1, -16}, {BigRational(1, 2), 24}, {BigRational(1, 4), -8}}, 1}, s_order);
  h.at_ST2S = eta_quotient({{{1, -8}, {4, 8}}, -256}, st2s_order);
  return h;
}

GtildeFamily::GtildeFamily(long max_m, const BigRational& order) : max_m_(max_m), order_(order) {
  if (max_m < 0) throw DomainError("max_m must be non-negative");
  BigRational tv = order + frac(max_m, 4) + kMargin;
  BigRational t = order + kMargin;
  CuspTriple base = base_eisenstein_triple({t, tv, t});
  HauptTriple h = hauptmodul_triple(t, tv, t);
  CuspTriple cur = base;
  powers_.push_back(cur.truncated(order));
  for (long k = 1; k <= max_m; ++k) {
    cur = {cur.U * h.at_inf, cur.V * h.at_S, cur.W * h.at_ST2S};
    powers_.push_back(cur.truncated(order));
  }
}

void GtildeFamily::check_m(long m) const {
  if (m < 0) throw DomainError("m must be non-negative");
  if (m > max_m_)
    throw PrecisionError("m = " + std::to_string(m) + " exceeds the precomputed family (max " + std::to_string(max_m_) + ")");
}

std::vector<BigInt> GtildeFamily::polynomial(long m) const {
  check_m(m);
  std::vector<BigInt> p(static_cast<std::size_t>(m + 1));
  p[m] = 1;
  for (long n = -m + 1; n <= 0; ++n) {
    BigRational e = frac(n, 4);
    BigRational s = 0;
    for (long k = -n + 1; k <= m; ++k)
      if (sgn(p[k]) != 0) s += p[k] * power(k).V.coeff(e);
    if (!is_integer(s)) throw IntegralityError("non-integral Hauptmodul elimination");
    p[-n] = -s.get_num();
  }
  return p;
}

std::vector<BigRational> GtildeFamily::dual_polynomial(long m) const {
  check_m(m);
  if (mod(m, 4) == 1) throw DomainError("dual family is not defined for m = 1 mod 4");
  std::vector<BigRational> p(static_cast<std::size_t>(m + 1));
  p[m] = (m > 0 && mod(m, 4) != 3) ? 2 : 1;
  for (long n = -m + 1; n < 0; ++n) {
    if (mod(n, 4) == 3) continue;
    BigRational e = frac(n, 4);
    BigRational s = 0;
    for (long k = -n + 1; k <= m; ++k)
      if (p[k] != 0) s += p[k] * power(k).V.coeff(e);
    p[-n] = -s;
  }
  BigRational s = 0;
  for (long k = 1; k <= m; ++k)
    if (p[k] != 0) s += p[k] * (power(k).V.coeff(0) - power(k).U.coeff(0));
  // The k = 0 term contributes p_0 * (1 - (-1)).
  p[0] = (BigRational(m == 0 ? 2 : 0) - s) / 2;
  return p;
}

CuspTriple GtildeFamily::combine(const std::vector<BigRational>& p) const {
  if (static_cast<long>(p.size()) > max_m_ + 1) throw PrecisionError("polynomial degree exceeds the precomputed family");
  CuspTriple acc{PuiseuxSeries::zero(), PuiseuxSeries::zero(), PuiseuxSeries::zero()};
  for (std::size_t k = 0; k < p.size(); ++k)
    if (p[k] != 0) acc = acc + powers_[k] * p[k];
  return acc.truncated(order_);
}

CuspTriple GtildeFamily::gtilde(long m) const {
  std::vector<BigInt> p = polynomial(m);
  return combine(std::vector<BigRational>(p.begin(), p.end()));
}

CuspTriple GtildeFamily::gtilde_dual(long m) const { return combine(dual_polynomial(m)); }

CuspTriple build_gtilde(long m, const BigRational& order) { return GtildeFamily(m, order).gtilde(m); }

CuspTriple build_gtilde_dual(long m, const BigRational& order) { return GtildeFamily(m, order).gtilde_dual(m); }

}  // namespace mmf
