#include "mmf/exact_arith.hpp"

#include <ostream>
#include <sstream>

#include "mmf/errors.hpp"

namespace mmf {

BigRational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw DomainError("empty rational literal");
  if (s.front() == '+') s.erase(s.begin());
  BigRational r;
  if (r.set_str(s, 10) != 0) throw DomainError("bad rational literal: " + std::string(text));
  if (r.get_den() == 0) throw DomainError("zero denominator: " + std::string(text));
  r.canonicalize();
  return r;
}

std::string to_string(const BigInt& x) { return x.get_str(); }

std::string to_string(const BigRational& x) { return x.get_str(); }

BigRational frac(long n, long d) {
  if (d == 0) throw DomainError("zero denominator");
  BigRational r(n, d);
  r.canonicalize();
  return r;
}

bool is_integer(const BigRational& x) { return mpz_divisible_p(x.get_num_mpz_t(), x.get_den_mpz_t()) != 0; }

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long ceil_div(long a, long b) { return -floor_div(-a, b); }

long ceil_on_lattice(const BigRational& x, long denom) {
  BigInt num = x.get_num() * denom;
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), x.get_den().get_mpz_t());
  if (!q.fits_slong_p()) throw DomainError("exponent out of range");
  return q.get_si();
}

CycEight CycEight::zeta(long k) {
  long r = mod(k, 8);
  CycEight z;
  z.c_[r % 4] = (r < 4) ? 1 : -1;
  return z;
}

bool CycEight::is_zero() const {
  for (const auto& c : c_)
    if (c != 0) return false;
  return true;
}

CycEight CycEight::conj() const { return {c_[0], -c_[3], -c_[2], -c_[1]}; }

CycEight CycEight::galois(long k) const {
  if (k % 2 == 0) throw DomainError("galois exponent must be odd");
  CycEight out;
  for (int i = 0; i < 4; ++i) {
    if (c_[i] == 0) continue;
    out += CycEight::zeta(i * k) * c_[i];
  }
  return out;
}

CycEight CycEight::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero in Q(zeta8)");
  // x * (product of the other three conjugates) is the norm, a rational.
  CycEight others = galois(3) * galois(5) * galois(7);
  CycEight norm = *this * others;
  return others * BigRational(1 / norm.c_[0]);
}

CycEight& CycEight::operator+=(const CycEight& o) {
  for (int i = 0; i < 4; ++i) c_[i] += o.c_[i];
  return *this;
}

CycEight& CycEight::operator-=(const CycEight& o) {
  for (int i = 0; i < 4; ++i) c_[i] -= o.c_[i];
  return *this;
}

CycEight& CycEight::operator*=(const CycEight& o) {
  std::array<BigRational, 4> r{};
  for (int i = 0; i < 4; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < 4; ++j) {
      if (o.c_[j] == 0) continue;
      int k = i + j;
      if (k < 4)
        r[k] += c_[i] * o.c_[j];
      else
        r[k - 4] -= c_[i] * o.c_[j];
    }
  }
  c_ = std::move(r);
  return *this;
}

CycEight& CycEight::operator*=(const BigRational& s) {
  for (auto& c : c_) c *= s;
  return *this;
}

CycEight CycEight::operator-() const { return {-c_[0], -c_[1], -c_[2], -c_[3]}; }

std::string CycEight::str() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < 4; ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << (c_[i] > 0 ? " + " : " - ");
    else if (c_[i] < 0) os << "-";
    BigRational a = abs(c_[i]);
    if (i == 0 || a != 1) os << a.get_str();
    if (i > 0) os << (a != 1 ? "*" : "") << "z" << (i > 1 ? "^" + std::to_string(i) : "");
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const CycEight& x) { return os << x.str(); }

int kronecker(const BigInt& a, long n) {
  if (n < 1 || n % 2 == 0) throw DomainError("kronecker: lower argument must be odd and positive");
  return mpz_jacobi(a.get_mpz_t(), BigInt(n).get_mpz_t());
}

int kronecker(long a, long n) { return kronecker(BigInt(a), n); }

bool is_prime(long n) {
  if (n < 2) return false;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

bool is_squarefree(long n) {
  if (n == 0) return false;
  if (n < 0) n = -n;
  for (long p = 2; p * p <= n; ++p)
    if (n % (p * p) == 0) return false;
  return true;
}

}  // namespace mmf
