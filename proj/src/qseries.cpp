#include "mmf/qseries.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "mmf/errors.hpp"

namespace mmf {

namespace {

void check_lattice(long L) {
  if (L <= 0 || PuiseuxSeries::kLatticeBound % L != 0)
    throw DomainError("exponent lattice denominator " + std::to_string(L) + " does not divide " +
                      std::to_string(PuiseuxSeries::kLatticeBound));
}

long lattice_lcm(long a, long b) {
  long L = std::lcm(a, b);
  check_lattice(L);
  return L;
}

long to_long(const BigInt& x) {
  if (!x.fits_slong_p()) throw DomainError("exponent out of range");
  return x.get_si();
}

// Number of j >= 0 with start + step*j < T.
long count_below(long start, long step, const BigRational& T) {
  BigRational x = (T - start) / step;
  if (x <= 0) return 0;
  BigInt c;
  mpz_cdiv_q(c.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return to_long(c);
}

std::optional<BigRational> min_trunc(const std::optional<BigRational>& a, const std::optional<BigRational>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

std::string exponent_str(const BigRational& e) {
  if (e == 0) return "";
  if (e == 1) return "q";
  if (is_integer(e)) return "q^" + e.get_str();
  return "q^(" + e.get_str() + ")";
}

intpoly::Coeffs pentagonal(long cnt) {
  intpoly::Coeffs c(static_cast<std::size_t>(std::max(cnt, 0L)));
  for (long k = 0;; ++k) {
    long g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
    if (g1 >= cnt) break;
    int sign = (k % 2 == 0) ? 1 : -1;
    c[g1] = sign;
    if (k > 0 && g2 < cnt) c[g2] = sign;
  }
  return c;
}

}  // namespace

PuiseuxSeries PuiseuxSeries::zero(std::optional<BigRational> trunc) {
  PuiseuxSeries s;
  if (trunc) {
    s.exact_ = false;
    s.trunc_ = *trunc;
  }
  return s;
}

PuiseuxSeries PuiseuxSeries::constant(BigRational c, std::optional<BigRational> trunc) {
  return monomial(std::move(c), 0, std::move(trunc));
}

PuiseuxSeries PuiseuxSeries::monomial(BigRational c, const BigRational& exponent, std::optional<BigRational> trunc) {
  long L = to_long(exponent.get_den());
  long k = to_long(exponent.get_num());
  return from_int_coeffs(L, k, 1, {c.get_num()}, std::move(trunc), c.get_den());
}

PuiseuxSeries PuiseuxSeries::from_coeffs(long denom, long val, const std::vector<BigRational>& c,
                                         std::optional<BigRational> trunc) {
  BigInt den = 1;
  for (const auto& x : c) den = lcm(den, BigInt(x.get_den()));
  intpoly::Coeffs nums(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) nums[i] = c[i].get_num() * (den / c[i].get_den());
  return from_int_coeffs(denom, val, 1, std::move(nums), std::move(trunc), den);
}

PuiseuxSeries PuiseuxSeries::from_int_coeffs(long denom, long val, long step, intpoly::Coeffs nums,
                                             std::optional<BigRational> trunc, BigInt den) {
  if (denom <= 0 || step <= 0) throw DomainError("lattice denominator and step must be positive");
  if (den == 0) throw DomainError("zero coefficient denominator");
  PuiseuxSeries s;
  s.denom_ = denom;
  s.val_ = val;
  s.step_ = step;
  s.nums_ = std::move(nums);
  if (den < 0) {
    den = -den;
    for (auto& x : s.nums_) x = -x;
  }
  s.den_ = std::move(den);
  if (trunc) {
    s.exact_ = false;
    s.trunc_ = *trunc;
  }
  s.canonicalize();
  return s;
}

PuiseuxSeries PuiseuxSeries::from_terms(long denom, const std::vector<std::pair<long, BigRational>>& terms,
                                        std::optional<BigRational> trunc) {
  if (terms.empty()) return zero(std::move(trunc));
  long lo = terms.front().first, hi = lo;
  for (const auto& [k, c] : terms) {
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }
  std::vector<BigRational> dense(static_cast<std::size_t>(hi - lo + 1));
  for (const auto& [k, c] : terms) dense[k - lo] += c;
  return from_coeffs(denom, lo, dense, std::move(trunc));
}

void PuiseuxSeries::canonicalize() {
  if (!exact_) {
    trunc_.canonicalize();
    long keep = count_below(val_, step_, trunc_ * denom_);
    if (static_cast<long>(nums_.size()) > keep) nums_.resize(static_cast<std::size_t>(std::max(keep, 0L)));
  }
  std::size_t i0 = 0;
  while (i0 < nums_.size() && sgn(nums_[i0]) == 0) ++i0;
  if (i0 == nums_.size()) {
    nums_.clear();
    denom_ = 1;
    val_ = 0;
    step_ = 1;
    den_ = 1;
    return;
  }
  std::size_t i1 = nums_.size();
  while (sgn(nums_[i1 - 1]) == 0) --i1;
  if (i0 > 0 || i1 < nums_.size()) {
    nums_.erase(nums_.begin() + static_cast<long>(i1), nums_.end());
    nums_.erase(nums_.begin(), nums_.begin() + static_cast<long>(i0));
    val_ += static_cast<long>(i0) * step_;
  }
  if (nums_.size() == 1) {
    step_ = denom_;
  } else {
    long g = 0;
    for (std::size_t j = 1; j < nums_.size() && g != 1; ++j)
      if (sgn(nums_[j]) != 0) g = std::gcd(g, static_cast<long>(j));
    if (g > 1) {
      std::size_t m = (nums_.size() - 1) / static_cast<std::size_t>(g) + 1;
      for (std::size_t j = 1; j < m; ++j) nums_[j].swap(nums_[j * static_cast<std::size_t>(g)]);
      nums_.resize(m);
      step_ *= g;
    }
  }
  long h = std::gcd(denom_, std::gcd(std::abs(val_), step_));
  if (h > 1) {
    denom_ /= h;
    val_ /= h;
    step_ /= h;
  }
  check_lattice(denom_);
  if (den_ != 1) {
    BigInt g = den_;
    for (const auto& x : nums_) {
      if (sgn(x) == 0) continue;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      if (g == 1) break;
    }
    if (g != 1) {
      for (auto& x : nums_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
  }
}

intpoly::Coeffs PuiseuxSeries::spread(long L, long start, long step, std::size_t count) const {
  intpoly::Coeffs out(count);
  long f = L / denom_;
  for (std::size_t j = 0; j < nums_.size(); ++j) {
    if (sgn(nums_[j]) == 0) continue;
    long pos = (val_ + step_ * static_cast<long>(j)) * f - start;
    if (pos < 0 || pos % step != 0) throw std::logic_error("spread: misaligned lattice");
    std::size_t slot = static_cast<std::size_t>(pos / step);
    if (slot < count) out[slot] = nums_[j];
  }
  return out;
}

const std::optional<BigRational> PuiseuxSeries::trunc_order() const {
  if (exact_) return std::nullopt;
  return trunc_;
}

std::size_t PuiseuxSeries::num_terms() const {
  return static_cast<std::size_t>(std::count_if(nums_.begin(), nums_.end(), [](const BigInt& x) { return sgn(x) != 0; }));
}

BigRational PuiseuxSeries::valuation() const {
  if (is_zero()) throw DomainError("valuation of the zero series");
  return frac(val_, denom_);
}

BigRational PuiseuxSeries::leading_coeff() const {
  if (is_zero()) throw DomainError("leading coefficient of the zero series");
  BigRational r(nums_[0], den_);
  r.canonicalize();
  return r;
}

BigRational PuiseuxSeries::coeff(const BigRational& exponent) const {
  if (!exact_ && exponent >= trunc_)
    throw PrecisionError("coefficient at q^" + exponent.get_str() + " requested, series known below q^" +
                         trunc_.get_str());
  BigRational k = exponent * denom_;
  if (!is_integer(k)) return 0;
  long idx = to_long(k.get_num()) - val_;
  if (idx < 0 || idx % step_ != 0) return 0;
  std::size_t j = static_cast<std::size_t>(idx / step_);
  if (j >= nums_.size()) return 0;
  BigRational r(nums_[j], den_);
  r.canonicalize();
  return r;
}

BigRational PuiseuxSeries::coeff_at(long k, long lattice) const { return coeff(frac(k, lattice)); }

std::vector<std::pair<BigRational, BigRational>> PuiseuxSeries::terms() const {
  std::vector<std::pair<BigRational, BigRational>> out;
  for_each_term([&](long k, const BigRational& c) { out.emplace_back(BigRational(k, denom_), c); });
  for (auto& t : out) t.first.canonicalize();
  return out;
}

void PuiseuxSeries::for_each_term(const std::function<void(long, const BigRational&)>& f) const {
  for (std::size_t j = 0; j < nums_.size(); ++j) {
    if (sgn(nums_[j]) == 0) continue;
    BigRational c(nums_[j], den_);
    c.canonicalize();
    f(val_ + step_ * static_cast<long>(j), c);
  }
}

PuiseuxSeries PuiseuxSeries::operator-() const {
  PuiseuxSeries r = *this;
  for (auto& x : r.nums_) x = -x;
  return r;
}

PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  std::optional<BigRational> t = min_trunc(a.trunc_order(), b.trunc_order());
  if (a.is_zero()) return PuiseuxSeries::from_int_coeffs(b.denom_, b.val_, b.step_, b.nums_, t, b.den_);
  if (b.is_zero()) return PuiseuxSeries::from_int_coeffs(a.denom_, a.val_, a.step_, a.nums_, t, a.den_);
  long L = lattice_lcm(a.denom_, b.denom_);
  long fa = L / a.denom_, fb = L / b.denom_;
  long va = a.val_ * fa, vb = b.val_ * fb;
  long la = (a.val_ + a.step_ * static_cast<long>(a.nums_.size() - 1)) * fa;
  long lb = (b.val_ + b.step_ * static_cast<long>(b.nums_.size() - 1)) * fb;
  long start = std::min(va, vb), last = std::max(la, lb);
  long g = std::gcd(std::gcd(a.step_ * fa, b.step_ * fb), std::gcd(va - start, vb - start));
  std::size_t count = static_cast<std::size_t>((last - start) / g + 1);
  BigInt den = lcm(a.den_, b.den_);
  intpoly::Coeffs x = a.spread(L, start, g, count), y = b.spread(L, start, g, count);
  BigInt ma = den / a.den_, mb = den / b.den_;
  for (std::size_t i = 0; i < count; ++i) {
    if (ma != 1) x[i] *= ma;
    if (sgn(y[i]) == 0) continue;
    if (mb != 1)
      mpz_addmul(x[i].get_mpz_t(), y[i].get_mpz_t(), mb.get_mpz_t());
    else
      x[i] += y[i];
  }
  return PuiseuxSeries::from_int_coeffs(L, start, g, std::move(x), t, den);
}

PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b) { return a + (-b); }

PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  if ((a.is_zero() && a.exact_) || (b.is_zero() && b.exact_)) return PuiseuxSeries::zero();
  BigRational lead_a = a.is_zero() ? a.trunc_ : a.valuation();
  BigRational lead_b = b.is_zero() ? b.trunc_ : b.valuation();
  std::optional<BigRational> t;
  if (!a.exact_) t = a.trunc_ + lead_b;
  if (!b.exact_) t = min_trunc(t, b.trunc_ + lead_a);
  if (a.is_zero() || b.is_zero()) return PuiseuxSeries::zero(t);

  long L = lattice_lcm(a.denom_, b.denom_);
  long fa = L / a.denom_, fb = L / b.denom_;
  long g = std::gcd(a.step_ * fa, b.step_ * fb);
  long va = a.val_ * fa, vb = b.val_ * fb;
  long ca = ((a.val_ + a.step_ * static_cast<long>(a.nums_.size() - 1)) * fa - va) / g + 1;
  long cb = ((b.val_ + b.step_ * static_cast<long>(b.nums_.size() - 1)) * fb - vb) / g + 1;
  long start = va + vb;
  long n = ca + cb - 1;
  if (t) n = std::min(n, count_below(start, g, *t * L));
  if (n <= 0) return PuiseuxSeries::zero(t);
  std::size_t un = static_cast<std::size_t>(n);
  intpoly::Coeffs x = a.spread(L, va, g, std::min<std::size_t>(static_cast<std::size_t>(ca), un));
  intpoly::Coeffs y = b.spread(L, vb, g, std::min<std::size_t>(static_cast<std::size_t>(cb), un));
  intpoly::Coeffs prod = intpoly::mul_trunc(x, y, un);
  return PuiseuxSeries::from_int_coeffs(L, start, g, std::move(prod), t, a.den_ * b.den_);
}

PuiseuxSeries operator*(const PuiseuxSeries& a, const BigRational& s) {
  if (s == 0) return PuiseuxSeries::zero(a.trunc_order());
  PuiseuxSeries r = a;
  if (s.get_num() != 1)
    for (auto& x : r.nums_) x *= s.get_num();
  r.den_ *= s.get_den();
  if (r.den_ < 0) {
    r.den_ = -r.den_;
    for (auto& x : r.nums_) x = -x;
  }
  r.canonicalize();
  return r;
}

PuiseuxSeries PuiseuxSeries::inverse(std::optional<BigRational> order) const {
  if (is_zero()) throw DomainError("inverse of the zero series");
  BigRational v = valuation();
  BigRational t;
  if (exact_) {
    if (nums_.size() == 1) {
      PuiseuxSeries m = monomial(1 / leading_coeff(), -v);
      return order ? m.truncated(*order) : m;
    }
    if (!order) throw PrecisionError("inverse of an exact non-monomial series needs an explicit order");
    t = *order;
  } else {
    t = trunc_ - 2 * v;
    if (order && *order < t) t = *order;
  }
  long cnt = count_below(-val_, step_, t * denom_);
  if (cnt <= 0) return zero(t);
  std::size_t n = static_cast<std::size_t>(cnt);
  intpoly::Coeffs N(n);
  for (std::size_t j = 0; j < std::min(n, nums_.size()); ++j) N[j] = nums_[j];
  const BigInt n0 = N[0];
  intpoly::Coeffs out;
  BigInt out_den = 1;
  if (abs(n0) == 1) {
    out = intpoly::inverse_unit(N, n);
  } else {
    // b_j = c_j / n0^(j+1) with c_0 = 1, c_j = -sum_i N_i c_(j-i) n0^(i-1).
    intpoly::Coeffs c(n);
    c[0] = 1;
    std::vector<BigInt> pw(n);
    pw[0] = 1;
    for (std::size_t i = 1; i < n; ++i) pw[i] = pw[i - 1] * n0;
    for (std::size_t j = 1; j < n; ++j) {
      BigInt acc = 0;
      for (std::size_t i = 1; i <= j; ++i)
        if (sgn(N[i]) != 0) acc += N[i] * c[j - i] * pw[i - 1];
      c[j] = -acc;
    }
    out.resize(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = c[j] * pw[n - 1 - j];
    out_den = pw[n - 1] * n0;
  }
  if (den_ != 1)
    for (auto& x : out) x *= den_;
  return from_int_coeffs(denom_, -val_, step_, std::move(out), t, out_den);
}

PuiseuxSeries PuiseuxSeries::pow(long e, std::optional<BigRational> order) const {
  if (e == 0) return constant(1);
  PuiseuxSeries base = (e < 0) ? inverse(order) : *this;
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  PuiseuxSeries result = constant(1);
  bool have = false;
  while (k > 0) {
    if (k & 1UL) {
      result = have ? result * base : base;
      have = true;
    }
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

PuiseuxSeries PuiseuxSeries::rescaled(const BigRational& c) const {
  if (c <= 0) throw DomainError("rescale factor must be positive");
  long cn = to_long(c.get_num()), cd = to_long(c.get_den());
  std::optional<BigRational> t;
  if (!exact_) t = trunc_ * c;
  if (is_zero()) return zero(t);
  return from_int_coeffs(denom_ * cd, val_ * cn, step_ * cn, nums_, t, den_);
}

PuiseuxSeries PuiseuxSeries::sieved(long r, long M) const {
  if (M <= 0) throw DomainError("sieve modulus must be positive");
  PuiseuxSeries s = *this;
  for (std::size_t j = 0; j < s.nums_.size(); ++j) {
    long k = val_ + step_ * static_cast<long>(j);
    bool keep = (k * M) % denom_ == 0 && mod((k * M) / denom_, M) == mod(r, M);
    if (!keep) s.nums_[j] = 0;
  }
  s.canonicalize();
  return s;
}

PuiseuxSeries PuiseuxSeries::shifted(const BigRational& e) const {
  std::optional<BigRational> t;
  if (!exact_) t = trunc_ + e;
  if (is_zero()) return zero(t);
  long L = lattice_lcm(denom_, to_long(e.get_den()));
  long f = L / denom_;
  BigRational ek = e * L;
  return from_int_coeffs(L, val_ * f + to_long(ek.get_num()), step_ * f, nums_, t, den_);
}

PuiseuxSeries PuiseuxSeries::truncated(const BigRational& order) const {
  PuiseuxSeries s = *this;
  if (s.exact_ || order < s.trunc_) {
    s.exact_ = false;
    s.trunc_ = order;
  }
  s.canonicalize();
  return s;
}

bool PuiseuxSeries::agrees_with(const PuiseuxSeries& o) const { return (*this - o).is_zero(); }

bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  return a.exact_ == b.exact_ && (a.exact_ || a.trunc_ == b.trunc_) && a.denom_ == b.denom_ && a.val_ == b.val_ &&
         a.step_ == b.step_ && a.den_ == b.den_ && a.nums_ == b.nums_;
}

nlohmann::json PuiseuxSeries::to_json() const {
  nlohmann::json j;
  j["denom"] = denom_;
  j["trunc_order"] = exact_ ? nlohmann::json(nullptr) : nlohmann::json(trunc_.get_str());
  nlohmann::json terms = nlohmann::json::array();
  for_each_term([&](long k, const BigRational& c) { terms.push_back({k, c.get_str()}); });
  j["terms"] = std::move(terms);
  return j;
}

PuiseuxSeries PuiseuxSeries::from_json(const nlohmann::json& j) {
  long L = j.at("denom").get<long>();
  std::optional<BigRational> t;
  if (!j.at("trunc_order").is_null()) t = parse_rational(j.at("trunc_order").get<std::string>());
  std::vector<std::pair<long, BigRational>> terms;
  for (const auto& term : j.at("terms")) terms.emplace_back(term.at(0).get<long>(), parse_rational(term.at(1).get<std::string>()));
  return from_terms(L, terms, t);
}

std::string PuiseuxSeries::str(std::size_t max_terms) const {
  std::ostringstream os;
  std::size_t shown = 0;
  bool more = false;
  for_each_term([&](long k, const BigRational& c) {
    if (shown == max_terms) {
      more = true;
      return;
    }
    BigRational e(k, denom_);
    e.canonicalize();
    std::string q = exponent_str(e);
    if (shown == 0)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    BigRational a = abs(c);
    if (q.empty())
      os << a.get_str();
    else if (a == 1)
      os << q;
    else
      os << a.get_str() << "*" << q;
    ++shown;
  });
  if (shown == 0) os << "0";
  if (more) os << " + ...";
  if (!exact_) os << " + O(" << (trunc_ == 0 ? std::string("1") : exponent_str(trunc_)) << ")";
  return os.str();
}

PuiseuxSeries euler_function(const BigRational& order) {
  long cnt = count_below(0, 1, order);
  return PuiseuxSeries::from_int_coeffs(1, 0, 1, pentagonal(cnt), order);
}

PuiseuxSeries eta_quotient(const EtaQuotientSpec& spec, const BigRational& order) {
  if (spec.factors.empty()) throw DomainError("eta quotient needs at least one factor");
  BigRational lead = 0;
  for (const auto& f : spec.factors) {
    if (f.scale <= 0) throw DomainError("eta scale must be positive");
    lead += f.scale * f.exponent;
  }
  lead /= 24;
  BigRational rel = order - lead;
  if (spec.prefactor == 0) return PuiseuxSeries::zero(order);
  if (rel <= 0) return PuiseuxSeries::zero(order);
  PuiseuxSeries prod = PuiseuxSeries::constant(1);
  for (const auto& f : spec.factors) {
    if (f.exponent == 0) continue;
    BigRational tf = rel / f.scale;
    long cnt = count_below(0, 1, tf);
    intpoly::Coeffs c = intpoly::power_unit(pentagonal(cnt), f.exponent, static_cast<std::size_t>(cnt));
    prod *= PuiseuxSeries::from_int_coeffs(1, 0, 1, std::move(c), tf).rescaled(f.scale);
  }
  return prod.truncated(rel).shifted(lead) * spec.prefactor;
}

}  // namespace mmf
