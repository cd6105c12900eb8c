#pragma once

#include <vector>

#include "mmf/qseries.hpp"

namespace mmf {

// A weight-one form on Gamma_1(4) through its expansions at the three cusps,
// with the scalars folded in so everything is rational:
//   U = 2i g,  V = 4 g|S,  W = 2i g|ST^2S^{-1}.
struct CuspTriple {
  PuiseuxSeries U, V, W;

  CuspTriple operator+(const CuspTriple& o) const { return {U + o.U, V + o.V, W + o.W}; }
  CuspTriple operator*(const BigRational& s) const { return {U * s, V * s, W * s}; }
  CuspTriple truncated(const BigRational& order) const;
};

// The Hauptmodul of X_1(4) at the same three cusps.
struct HauptTriple {
  PuiseuxSeries at_inf, at_S, at_ST2S;
};

// Justified orders for each cusp component.
struct TripleOrders {
  BigRational U, V, W;
};

// r(n) = sum_{m | n} (-4/m).
long divisor_chi4(long n);

CuspTriple base_eisenstein_triple(const TripleOrders& order);
// Orders of the three eta quotients are given separately.
HauptTriple hauptmodul_triple(const BigRational& inf_order, const BigRational& s_order, const BigRational& st2s_order);

// Products g0 * hauptmodul^k for k <= max_m, all justified below `order` on
// every component, and the polynomial eliminations on top of them.
class GtildeFamily {
 public:
  GtildeFamily(long max_m, const BigRational& order);

  long max_m() const { return max_m_; }
  const BigRational& order() const { return order_; }
  const CuspTriple& power(long k) const { return powers_.at(static_cast<std::size_t>(k)); }

  // Monic P of degree m with V(g0 P) = q^{-m/4} + O(q^{1/4}).
  std::vector<BigInt> polynomial(long m) const;
  // Rational P of degree m for the dual side: leading coefficient 1 if
  // m = 3 mod 4 and 2 otherwise, V coefficients on residues 0, 1, 2 mod 4 in
  // (-m/4, 0) zeroed, residue-3 coefficients set to zero, and the constant
  // of (-U + V)/2 equal to [m == 0].
  std::vector<BigRational> dual_polynomial(long m) const;

  CuspTriple combine(const std::vector<BigRational>& p) const;
  CuspTriple gtilde(long m) const;
  CuspTriple gtilde_dual(long m) const;

 private:
  void check_m(long m) const;

  long max_m_;
  BigRational order_;
  std::vector<CuspTriple> powers_;
};

CuspTriple build_gtilde(long m, const BigRational& order);
CuspTriple build_gtilde_dual(long m, const BigRational& order);

}  // namespace mmf
