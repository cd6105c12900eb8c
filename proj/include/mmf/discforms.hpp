#pragma once

#include <json.hpp>

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "mmf/exact_arith.hpp"

namespace mmf {

// Element (a, b, c) of (Z/4)^3, the discriminant form with Q = (b^2 - 2ac)/8.
struct FqmElement {
  int a = 0, b = 0, c = 0;

  static FqmElement from_index(int i) { return {(i >> 4) & 3, (i >> 2) & 3, i & 3}; }
  int index() const { return 16 * a + 4 * b + c; }
  FqmElement operator+(const FqmElement& o) const { return {(a + o.a) & 3, (b + o.b) & 3, (c + o.c) & 3}; }
  FqmElement operator-() const { return {(4 - a) & 3, (4 - b) & 3, (4 - c) & 3}; }
  FqmElement scaled(long k) const {
    int m = static_cast<int>(mod(k, 4));
    return {(m * a) & 3, (m * b) & 3, (m * c) & 3};
  }
  friend bool operator==(const FqmElement&, const FqmElement&) = default;
  std::string str() const;
};

// Q(h) as a numerator n in [0, 8), meaning n/8 mod 1.
int qform_num(const FqmElement& h);
BigRational qform(const FqmElement& h);
// (h, h') = Q(h + h') - Q(h) - Q(h') as a numerator mod 8 (so value n/8).
int bilinear_num(const FqmElement& x, const FqmElement& y);

std::vector<FqmElement> all_elements();
std::vector<FqmElement> isotropic_set();

// 3x3 matrix mod 4 acting on column vectors (a, b, c).
struct OrthMap {
  std::array<int, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  FqmElement apply(const FqmElement& h) const;
  OrthMap compose(const OrthMap& o) const;  // this after o
  int det() const;                           // mod 4
  bool preserves_q() const;
  friend bool operator==(const OrthMap&, const OrthMap&) = default;
  friend bool operator<(const OrthMap& x, const OrthMap& y) { return x.m < y.m; }
  std::string str() const;

  static OrthMap identity() { return {}; }
  static OrthMap R();
  static OrthMap W();
  static OrthMap U();
  static OrthMap mu();
  static OrthMap nu();
  // Multiplication by k.
  static OrthMap scalar(long k);
};

struct OrthGroup {
  std::vector<OrthMap> elements;
  std::vector<bool> special;  // det = 1 mod 4
  std::size_t so_size() const;
  bool contains(const OrthMap& s) const;
};

// Exhaustive search over all 4^9 matrices.
const OrthGroup& orth_group();

// The order-two character with chi(R) = chi(U) = chi(W) = chi(mu) = -1 and
// chi(nu) = 1, extended multiplicatively; consistency is verified when built.
int chi(const OrthMap& s);

struct ChiOrbits {
  std::vector<FqmElement> A;
  // A[l] is the orbit containing (1, 1, l).
  std::array<std::vector<FqmElement>, 3> orbit;
};
const ChiOrbits& chi_orbits();

using CycVector = std::vector<CycEight>;

// |O|^{-1} sum_s chi(s) s(v) on vectors indexed by FqmElement::index().
CycVector project_chi(const CycVector& v);

// e_l = sum_s chi(s) e_{s(1,1,l)} as integer vectors of length 64.
const std::array<std::vector<long>, 3>& chi_basis();

// l(m) with 1 - m = 2 l(m) mod 8, defined for m = 1, 5, 7 mod 8.
int ell_index(long m);

class CycMatrix {
 public:
  CycMatrix() = default;
  CycMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), d_(rows * cols) {}
  static CycMatrix identity(std::size_t n);
  static CycMatrix diag(const std::vector<CycEight>& d);
  static CycMatrix from_rows(const std::vector<std::vector<CycEight>>& rows);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  CycEight& operator()(std::size_t i, std::size_t j) { return d_[i * c_ + j]; }
  const CycEight& operator()(std::size_t i, std::size_t j) const { return d_[i * c_ + j]; }

  CycMatrix operator*(const CycMatrix& o) const;
  CycMatrix operator*(const CycEight& s) const;
  CycMatrix pow(unsigned n) const;
  CycMatrix conj_transpose() const;
  // Kronecker product.
  CycMatrix tensor(const CycMatrix& o) const;
  friend bool operator==(const CycMatrix&, const CycMatrix&) = default;
  nlohmann::json to_json() const;

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<CycEight> d_;
};

// Weil representation on C[A] and its restrictions. Matrices act on column
// vectors: column j is the image of the j-th basis vector.
struct WeilRepMatrices {
  CycMatrix rho_T, rho_S;          // 64-dim, basis e_h ordered by index()
  CycMatrix varrho_T, varrho_S;    // on e_0, e_1, e_2
  CycMatrix varrho1_T, varrho1_S;  // on b_0, b_1, b_2 in C[A1], A1 = {(a, 0, c)}
  CycMatrix varrho2_T, varrho2_S;  // on e = e_(0,1,0) - e_(0,3,0) in C[A2], A2 = {(0, b, 0)}
  CycMatrix rho1_T, rho1_S;        // full 16-dim rep on C[A1]

  static CycMatrix dual(const CycMatrix& m) { return m.conj_transpose(); }
};
const WeilRepMatrices& weil_rep();

// Coordinates of rep*v in an orthogonal integral basis, with exact membership
// checked. Throws std::logic_error if the span is not invariant.
CycMatrix restrict_to_span(const CycMatrix& rep, const std::vector<std::vector<long>>& basis);

nlohmann::json dump_discform();

struct NamedCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Group structure, orbit lists, metaplectic relations, rescaled unitarity,
// the restriction of the 64-dim representation, and O(A)-equivariance.
std::vector<NamedCheck> representation_checks();

}  // namespace mmf
