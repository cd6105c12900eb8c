#include "mmf/intpoly.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace mmf::intpoly {

namespace {

constexpr std::size_t kSchoolbookCutoff = 40;

std::size_t max_bits(const Coeffs& a, std::size_t len) {
  std::size_t b = 0;
  for (std::size_t i = 0; i < len; ++i)
    if (sgn(a[i]) != 0) b = std::max(b, mpz_sizeinbase(a[i].get_mpz_t(), 2));
  return b;
}

// Evaluate sum a_i 2^(64 s i) as one signed integer.
void pack(const Coeffs& a, std::size_t len, std::size_t s, mpz_class& out) {
  std::vector<mp_limb_t> pos(len * s, 0), neg(len * s, 0);
  bool any_neg = false;
  for (std::size_t i = 0; i < len; ++i) {
    const mpz_srcptr z = a[i].get_mpz_t();
    std::size_t sz = mpz_size(z);
    if (sz == 0) continue;
    mp_limb_t* dst = (mpz_sgn(z) > 0 ? pos.data() : neg.data()) + i * s;
    std::memcpy(dst, mpz_limbs_read(z), sz * sizeof(mp_limb_t));
    if (mpz_sgn(z) < 0) any_neg = true;
  }
  auto load = [](mpz_class& dst, const std::vector<mp_limb_t>& limbs) {
    std::size_t n = limbs.size();
    while (n > 0 && limbs[n - 1] == 0) --n;
    if (n == 0) {
      dst = 0;
      return;
    }
    mp_limb_t* w = mpz_limbs_write(dst.get_mpz_t(), n);
    std::memcpy(w, limbs.data(), n * sizeof(mp_limb_t));
    mpz_limbs_finish(dst.get_mpz_t(), n);
  };
  load(out, pos);
  if (any_neg) {
    mpz_class m;
    load(m, neg);
    out -= m;
  }
}

Coeffs schoolbook(const Coeffs& a, std::size_t la, const Coeffs& b, std::size_t lb, std::size_t n) {
  Coeffs r(n);
  for (std::size_t i = 0; i < la && i < n; ++i) {
    if (sgn(a[i]) == 0) continue;
    std::size_t jmax = std::min(lb, n - i);
    for (std::size_t j = 0; j < jmax; ++j)
      if (sgn(b[j]) != 0) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  return r;
}

}  // namespace

Coeffs mul_trunc(const Coeffs& a, const Coeffs& b, std::size_t n) {
  std::size_t la = std::min(a.size(), n), lb = std::min(b.size(), n);
  while (la > 0 && sgn(a[la - 1]) == 0) --la;
  while (lb > 0 && sgn(b[lb - 1]) == 0) --lb;
  if (la == 0 || lb == 0) return Coeffs(n);
  if (std::min(la, lb) < kSchoolbookCutoff) return schoolbook(a, la, b, lb, n);

  std::size_t ba = max_bits(a, la), bb = max_bits(b, lb);
  std::size_t terms = std::min(la, lb);
  std::size_t log_terms = 1;
  while ((std::size_t{1} << log_terms) < terms) ++log_terms;
  std::size_t bits = ba + bb + log_terms + 2;
  std::size_t s = (bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;

  mpz_class A, B, C;
  pack(a, la, s, A);
  pack(b, lb, s, B);
  C = A * B;
  A = 0;
  B = 0;
  bool flip = sgn(C) < 0;
  if (flip) C = -C;

  Coeffs r(n);
  const mp_limb_t* limbs = mpz_limbs_read(C.get_mpz_t());
  std::size_t sz = mpz_size(C.get_mpz_t());
  const std::size_t k = s * GMP_NUMB_BITS;
  mpz_class full, slot;
  mpz_ui_pow_ui(full.get_mpz_t(), 2, k);
  bool carry = false;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t lo = i * s;
    if (lo >= sz && !carry) break;
    if (lo < sz) {
      std::size_t cnt = std::min(s, sz - lo);
      mpz_t view;
      mpz_roinit_n(view, limbs + lo, static_cast<mp_size_t>(cnt));
      slot = mpz_class(view);
    } else {
      slot = 0;
    }
    if (carry) slot += 1;
    if (mpz_sizeinbase(slot.get_mpz_t(), 2) >= k && sgn(slot) != 0) {
      // slot >= 2^(k-1) exactly when its bit length reaches k.
      slot -= full;
      carry = true;
    } else {
      carry = false;
    }
    if (flip) slot = -slot;
    r[i].swap(slot);
  }
  return r;
}

Coeffs mul(const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  return mul_trunc(a, b, a.size() + b.size() - 1);
}

Coeffs inverse_unit(const Coeffs& a, std::size_t n) {
  if (n == 0) return {};
  if (a.empty() || abs(a[0]) != 1) throw std::invalid_argument("inverse_unit: constant term must be +-1");
  Coeffs g{a[0]};
  std::size_t prec = 1;
  while (prec < n) {
    std::size_t np = std::min(2 * prec, n);
    Coeffs e = mul_trunc(a, g, np);
    e[0] -= 1;
    for (auto& x : e) x = -x;
    Coeffs d = mul_trunc(g, e, np);
    g.resize(np);
    for (std::size_t i = 0; i < np; ++i) g[i] += d[i];
    prec = np;
  }
  return g;
}

Coeffs power_unit(const Coeffs& a, long e, std::size_t n) {
  if (n == 0) return {};
  if (a.empty() || a[0] != 1) throw std::invalid_argument("power_unit: constant term must be 1");
  std::vector<std::size_t> nz;
  for (std::size_t k = 1; k < std::min(a.size(), n); ++k)
    if (sgn(a[k]) != 0) nz.push_back(k);
  Coeffs g(n);
  g[0] = 1;
  if (e == 0) return g;
  mpz_class acc, tmp;
  for (std::size_t m = 1; m < n; ++m) {
    acc = 0;
    for (std::size_t k : nz) {
      if (k > m) break;
      const mpz_class& gk = g[m - k];
      if (sgn(gk) == 0) continue;
      long f = (e + 1) * static_cast<long>(k) - static_cast<long>(m);
      if (f == 0) continue;
      if (a[k].fits_slong_p() && std::abs(a[k].get_si()) < (1L << 20) && std::abs(f) < (1L << 40)) {
        long ff = f * a[k].get_si();
        if (ff > 0)
          mpz_addmul_ui(acc.get_mpz_t(), gk.get_mpz_t(), static_cast<unsigned long>(ff));
        else
          mpz_submul_ui(acc.get_mpz_t(), gk.get_mpz_t(), static_cast<unsigned long>(-ff));
      } else {
        tmp = a[k] * gk;
        tmp *= f;
        acc += tmp;
      }
    }
    mpz_divexact_ui(g[m].get_mpz_t(), acc.get_mpz_t(), m);
  }
  return g;
}

}  // namespace mmf::intpoly
