#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace mmf::intpoly {

using Coeffs = std::vector<mpz_class>;

// First n coefficients of a*b. Large operands go through Kronecker
// substitution (one GMP integer product), small ones through schoolbook.
Coeffs mul_trunc(const Coeffs& a, const Coeffs& b, std::size_t n);

// Full product, length a.size() + b.size() - 1.
Coeffs mul(const Coeffs& a, const Coeffs& b);

// First n coefficients of 1/a. Requires a[0] = +1 or -1.
Coeffs inverse_unit(const Coeffs& a, std::size_t n);

// First n coefficients of a^e for a[0] = 1, any integer e. Uses the
// recurrence from a * (a^e)' = e * a' * a^e, which is cheap when a is sparse.
Coeffs power_unit(const Coeffs& a, long e, std::size_t n);

}  // namespace mmf::intpoly
