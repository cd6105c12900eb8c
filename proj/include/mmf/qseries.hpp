#pragma once

#include <json.hpp>

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "mmf/exact_arith.hpp"
#include "mmf/intpoly.hpp"

namespace mmf {

// Truncated q-expansion sum c_k q^(k/denom) with exact rational exponents and
// coefficients. Coefficients are exact for exponents below trunc_order(); an
// exact series (no trunc order) is a finite Laurent polynomial.
//
// Storage: integer numerators nums_[j] at lattice index val_ + step_*j, all
// over the common positive denominator den_.
class PuiseuxSeries {
 public:
  static constexpr long kLatticeBound = 96;

  PuiseuxSeries() = default;

  static PuiseuxSeries zero(std::optional<BigRational> trunc = std::nullopt);
  static PuiseuxSeries constant(BigRational c, std::optional<BigRational> trunc = std::nullopt);
  static PuiseuxSeries monomial(BigRational c, const BigRational& exponent,
                                std::optional<BigRational> trunc = std::nullopt);
  // Coefficients c[j] at exponent (val + j) / denom.
  static PuiseuxSeries from_coeffs(long denom, long val, const std::vector<BigRational>& c,
                                   std::optional<BigRational> trunc);
  static PuiseuxSeries from_int_coeffs(long denom, long val, long step, intpoly::Coeffs nums,
                                       std::optional<BigRational> trunc, BigInt den = 1);
  // Sparse (lattice index, coefficient) pairs; duplicates are summed.
  static PuiseuxSeries from_terms(long denom, const std::vector<std::pair<long, BigRational>>& terms,
                                  std::optional<BigRational> trunc);

  long denom() const { return denom_; }
  bool is_exact() const { return exact_; }
  const std::optional<BigRational> trunc_order() const;
  bool is_zero() const { return nums_.empty(); }
  std::size_t num_terms() const;

  // Exponent of the lowest nonzero term. Throws on the zero series.
  BigRational valuation() const;
  BigRational leading_coeff() const;
  BigRational coeff(const BigRational& exponent) const;
  // Coefficient of q^(k/lattice).
  BigRational coeff_at(long k, long lattice) const;
  // Nonzero terms as (exponent, coefficient), increasing exponent.
  std::vector<std::pair<BigRational, BigRational>> terms() const;
  void for_each_term(const std::function<void(long k, const BigRational& c)>& f) const;

  bool all_integral() const { return den_ == 1; }
  const BigInt& common_denominator() const { return den_; }

  PuiseuxSeries operator-() const;
  friend PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b);
  friend PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b);
  friend PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b);
  friend PuiseuxSeries operator*(const PuiseuxSeries& a, const BigRational& s);
  friend PuiseuxSeries operator*(const BigRational& s, const PuiseuxSeries& a) { return a * s; }
  PuiseuxSeries& operator+=(const PuiseuxSeries& o) { return *this = *this + o; }
  PuiseuxSeries& operator-=(const PuiseuxSeries& o) { return *this = *this - o; }
  PuiseuxSeries& operator*=(const PuiseuxSeries& o) { return *this = *this * o; }

  // Multiplicative inverse. An exact non-monomial input needs an explicit
  // order; otherwise the justified order is trunc - 2*valuation, optionally
  // lowered to `order`.
  PuiseuxSeries inverse(std::optional<BigRational> order = std::nullopt) const;
  PuiseuxSeries pow(long e, std::optional<BigRational> order = std::nullopt) const;
  // q -> q^c.
  PuiseuxSeries rescaled(const BigRational& c) const;
  // Terms at exponents n/M with n = r mod M.
  PuiseuxSeries sieved(long r, long M) const;
  // Multiply by q^e.
  PuiseuxSeries shifted(const BigRational& e) const;
  PuiseuxSeries truncated(const BigRational& order) const;

  // Coefficients agree on all exponents below both truncation orders.
  bool agrees_with(const PuiseuxSeries& o) const;
  // Same terms and same truncation data.
  friend bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b);

  nlohmann::json to_json() const;
  static PuiseuxSeries from_json(const nlohmann::json& j);
  std::string str(std::size_t max_terms = 12) const;

 private:
  void canonicalize();
  // Numerators re-expressed on lattice `L` with stride `step`, starting at
  // lattice index `start` and spanning `count` slots.
  intpoly::Coeffs spread(long L, long start, long step, std::size_t count) const;
  long end_index() const { return val_ + step_ * static_cast<long>(nums_.size()); }

  long denom_ = 1;
  long val_ = 0;
  long step_ = 1;
  intpoly::Coeffs nums_;
  BigInt den_ = 1;
  bool exact_ = true;
  BigRational trunc_ = 0;
};

struct EtaFactor {
  BigRational scale;
  long exponent;
};

// prefactor * prod eta(scale * tau)^exponent.
struct EtaQuotientSpec {
  std::vector<EtaFactor> factors;
  BigRational prefactor = 1;
};

// prod_{n>=1} (1 - q^n), justified below `order`.
PuiseuxSeries euler_function(const BigRational& order);
PuiseuxSeries eta_quotient(const EtaQuotientSpec& spec, const BigRational& order);

}  // namespace mmf
