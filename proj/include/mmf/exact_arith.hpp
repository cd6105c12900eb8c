#pragma once

#include <gmpxx.h>

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>

namespace mmf {

using BigInt = mpz_class;
using BigRational = mpq_class;

BigRational parse_rational(std::string_view text);
std::string to_string(const BigInt& x);
std::string to_string(const BigRational& x);
bool is_integer(const BigRational& x);
// n/d in lowest terms.
BigRational frac(long n, long d);

// Non-negative residue of a modulo m (m > 0).
constexpr long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

long floor_div(long a, long b);
long ceil_div(long a, long b);

// Smallest integer k with k / denom >= x.
long ceil_on_lattice(const BigRational& x, long denom);

// Element c0 + c1 z + c2 z^2 + c3 z^3 of Q(z), z a primitive 8th root of unity
// (z^4 = -1).
class CycEight {
 public:
  CycEight() = default;
  CycEight(long c) : c_{BigRational(c), 0, 0, 0} {}  // NOLINT: implicit by design of literals
  CycEight(BigRational c0, BigRational c1, BigRational c2, BigRational c3)
      : c_{std::move(c0), std::move(c1), std::move(c2), std::move(c3)} {}

  static CycEight rational(BigRational c) { return {std::move(c), 0, 0, 0}; }
  // z^k for any integer k.
  static CycEight zeta(long k);

  const BigRational& operator[](int i) const { return c_[i]; }

  bool is_zero() const;
  // Complex conjugation z -> z^{-1}.
  CycEight conj() const;
  // Galois automorphism z -> z^k, k odd.
  CycEight galois(long k) const;
  CycEight inverse() const;

  CycEight& operator+=(const CycEight& o);
  CycEight& operator-=(const CycEight& o);
  CycEight& operator*=(const CycEight& o);
  CycEight& operator*=(const BigRational& s);

  friend CycEight operator+(CycEight a, const CycEight& b) { return a += b; }
  friend CycEight operator-(CycEight a, const CycEight& b) { return a -= b; }
  friend CycEight operator*(CycEight a, const CycEight& b) { return a *= b; }
  friend CycEight operator*(CycEight a, const BigRational& s) { return a *= s; }
  friend CycEight operator*(const BigRational& s, CycEight a) { return a *= s; }
  CycEight operator-() const;

  friend bool operator==(const CycEight& a, const CycEight& b) { return a.c_ == b.c_; }

  std::string str() const;

 private:
  std::array<BigRational, 4> c_{};
};

std::ostream& operator<<(std::ostream& os, const CycEight& x);

// Kronecker symbol (a / n) for odd n >= 1.
int kronecker(const BigInt& a, long n);
int kronecker(long a, long n);

bool is_prime(long n);
bool is_squarefree(long n);

}  // namespace mmf
