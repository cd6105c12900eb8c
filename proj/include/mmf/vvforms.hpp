#pragma once

#include <json.hpp>

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mmf/gamma1.hpp"
#include "mmf/qseries.hpp"

namespace mmf {

enum class Rep { Varrho, VarrhoDual, Varrho1, Varrho1Dual };

std::string rep_name(Rep r);
Rep rep_from_name(const std::string& s);

// Three components indexed by l = 0, 1, 2.
//   Varrho:     q^(n/8) on component l(n)   (the expansion index n is "frak q^n")
//   VarrhoDual: q^(n/8) on component l(-n)
// The Varrho1 reps are the weight-one forms before tensoring with eta^3; their
// components live on the (1/4)Z lattice.
struct VVForm {
  std::array<PuiseuxSeries, 3> comp;
  Rep rep = Rep::Varrho;
  BigRational weight = 0;

  // Coefficient at expansion index n (Varrho / VarrhoDual only).
  BigRational coeff(long n) const;
  // Indices n < index_bound() are justified (Varrho / VarrhoDual only).
  std::optional<BigRational> trunc_order() const;
  long index_bound() const;
  // Nonzero terms with negative exponent as (index, coefficient).
  std::vector<std::pair<long, BigRational>> negative_part() const;
  bool all_integral() const;
  bool is_zero() const;
  // Every component supported on its T-eigenvalue residue class.
  bool residues_ok() const;
  bool agrees_with(const VVForm& o) const;

  VVForm operator+(const VVForm& o) const;
  VVForm operator-(const VVForm& o) const;
  VVForm operator*(const BigRational& s) const;
  VVForm truncated(const BigRational& order) const;

  nlohmann::json to_json() const;
  static VVForm from_json(const nlohmann::json& j);
};

// eta^3 = sum_{k>=0} (-1)^k (2k+1) q^((2k+1)^2/8).
PuiseuxSeries theta_series(const BigRational& order);

VVForm lift_B(const CuspTriple& t);
// Dual lift, in the basis dual to b_l.
VVForm lift_B_dual(const CuspTriple& t);
// Multiply every component by eta^3 (Varrho1 -> Varrho, VarrhoDual -> Varrho1Dual).
VVForm tensor_theta(const VVForm& f);
// Divide every component by eta^3 (Varrho -> Varrho1, Varrho1Dual -> VarrhoDual).
VVForm divide_theta(const VVForm& f);

struct Provenance {
  long m = 0;
  std::vector<BigRational> polynomial;
  // Basis elements subtracted during elimination: (index, multiplier).
  std::vector<std::pair<long, BigRational>> combination;
  nlohmann::json to_json() const;
  static Provenance from_json(const nlohmann::json& j);
};

struct BasisEntry {
  char kind = 'G';
  long index = 0;
  VVForm form;
  Provenance provenance;
};

bool valid_G_index(long d);
bool valid_F_index(long D);

enum class EliminationOrder { Ascending, Descending };

// Canonical bases G_d and F_D built on one g~ family, memoized.
class BasisBuilder {
 public:
  explicit BasisBuilder(std::shared_ptr<const GtildeFamily> family);

  const GtildeFamily& family() const { return *family_; }
  bool supports_G(long d) const { return valid_G_index(d) && (d + 1) / 2 <= family_->max_m(); }
  bool supports_F(long D) const { return valid_F_index(D) && (D - 1) / 2 <= family_->max_m(); }

  // eta^3 * B(g~_m), m = (d + 1) / 2, before elimination.
  VVForm raw_G(long d) const;
  // B*(f~_m) / eta^3, m = (D - 1) / 2, before elimination.
  VVForm raw_F(long D) const;

  const BasisEntry& G(long d);
  const BasisEntry& F(long D);

  // Remove every negative-index term except the principal one using lower
  // basis elements. Records the subtracted multiples in `combination`.
  VVForm reduce(VVForm f, char kind, long principal, EliminationOrder order,
                std::vector<std::pair<long, BigRational>>* combination);

 private:
  BasisEntry finish(char kind, long index, VVForm raw, Provenance prov);

  std::shared_ptr<const GtildeFamily> family_;
  std::recursive_mutex mu_;
  std::map<long, std::unique_ptr<BasisEntry>> g_, f_;
};

// Several builders; each request is served by the most precise one that can.
class BasisLibrary {
 public:
  void add(std::shared_ptr<BasisBuilder> b) { builders_.push_back(std::move(b)); }
  const BasisEntry& G(long d);
  const BasisEntry& F(long D);

 private:
  std::vector<std::shared_ptr<BasisBuilder>> builders_;
};

// Orders needed so that G_d / F_D are known at expansion indices n < n_bound.
BigRational family_order_for_index(long n_bound);

// b(n) = c(p^2 n) + p (n/p) c(n) + p^3 c(n/p^2). Output is justified below
// the input order / p^2; `min_index_bound`, if given, is enforced up front.
VVForm hecke_Tp2(const VVForm& f, long p, std::optional<long> min_index_bound = std::nullopt);

struct HeckeCheck {
  bool pass = false;
  long compared = 0;  // positive indices compared
  long index_bound = 0;
  std::vector<long> mismatches;
};
// G_d | T_{p^2} = p^3 G_{p^2 d} + p (-d/p) G_d + G_{d/p^2}.
// Gdp2 may be null unless p^2 | d.
HeckeCheck hecke_identity_check(const VVForm& Gd, const VVForm& Gp2d, const VVForm* Gdp2, long d, long p);
HeckeCheck hecke_identity_check(BasisLibrary& lib, long d, long p);

}  // namespace mmf
