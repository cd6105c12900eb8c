#include "mmf/vvforms.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

#include "mmf/discforms.hpp"
#include "mmf/errors.hpp"

namespace mmf {

namespace {

bool is_eight_rep(Rep r) { return r == Rep::Varrho || r == Rep::VarrhoDual; }

long ceil_long(const BigRational& x) {
  BigInt c;
  mpz_cdiv_q(c.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  if (!c.fits_slong_p()) throw DomainError("index out of range");
  return c.get_si();
}

// Lowest exponent that can carry a nonzero coefficient.
BigRational effective_lead(const PuiseuxSeries& s) {
  if (!s.is_zero()) return s.valuation();
  if (s.trunc_order()) return *s.trunc_order();
  return 0;
}

// Component l for a Varrho1/Varrho1Dual form lives on exponents = residue/4 mod 1.
long quarter_residue(Rep r, int l) {
  static const long primal[3] = {0, 3, 2}, dual[3] = {0, 1, 2};
  return r == Rep::Varrho1 ? primal[l] : dual[l];
}

}  // namespace

std::string rep_name(Rep r) {
  switch (r) {
    case Rep::Varrho: return "varrho";
    case Rep::VarrhoDual: return "varrho*";
    case Rep::Varrho1: return "varrho1";
    case Rep::Varrho1Dual: return "varrho1*";
  }
  return "?";
}

Rep rep_from_name(const std::string& s) {
  for (Rep r : {Rep::Varrho, Rep::VarrhoDual, Rep::Varrho1, Rep::Varrho1Dual})
    if (rep_name(r) == s) return r;
  throw DomainError("unknown representation tag " + s);
}

BigRational VVForm::coeff(long n) const {
  if (!is_eight_rep(rep)) throw DomainError("expansion indices are only defined for varrho and its dual");
  long bound = index_bound();
  if (n >= bound)
    throw PrecisionError("coefficient at index " + std::to_string(n) + " requested, form known below " +
                         std::to_string(bound));
  long key = rep == Rep::Varrho ? n : -n;
  long r = mod(key, 8);
  if (r != 1 && r != 5 && r != 7) return 0;
  return comp[ell_index(key)].coeff(frac(n, 8));
}

std::optional<BigRational> VVForm::trunc_order() const {
  std::optional<BigRational> t;
  for (const auto& c : comp) {
    auto tc = c.trunc_order();
    if (tc && (!t || *tc < *t)) t = tc;
  }
  return t;
}

long VVForm::index_bound() const {
  auto t = trunc_order();
  if (!t) return LONG_MAX;
  return ceil_long(*t * 8);
}

std::vector<std::pair<long, BigRational>> VVForm::negative_part() const {
  std::vector<std::pair<long, BigRational>> out;
  for (const auto& c : comp) {
    long L = c.denom();
    c.for_each_term([&](long k, const BigRational& v) {
      if (k >= 0) return;
      if ((8 * k) % L != 0) throw std::logic_error("negative term off the 1/8 lattice");
      out.emplace_back(8 * k / L, v);
    });
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

bool VVForm::all_integral() const {
  return std::all_of(comp.begin(), comp.end(), [](const PuiseuxSeries& c) { return c.all_integral(); });
}

bool VVForm::is_zero() const {
  return std::all_of(comp.begin(), comp.end(), [](const PuiseuxSeries& c) { return c.is_zero(); });
}

bool VVForm::residues_ok() const {
  for (int l = 0; l < 3; ++l) {
    bool ok = true;
    const long L = comp[l].denom();
    comp[l].for_each_term([&](long k, const BigRational&) {
      if (is_eight_rep(rep)) {
        if ((8 * k) % L != 0) {
          ok = false;
          return;
        }
        long n = 8 * k / L;
        long key = rep == Rep::Varrho ? n : -n;
        long r = mod(key, 8);
        if ((r != 1 && r != 5 && r != 7) || ell_index(key) != l) ok = false;
      } else {
        if ((4 * k) % L != 0 || mod(4 * k / L, 4) != quarter_residue(rep, l)) ok = false;
      }
    });
    if (!ok) return false;
  }
  return true;
}

bool VVForm::agrees_with(const VVForm& o) const {
  for (int l = 0; l < 3; ++l)
    if (!comp[l].agrees_with(o.comp[l])) return false;
  return true;
}

VVForm VVForm::operator+(const VVForm& o) const {
  if (rep != o.rep) throw DomainError("adding forms of different representations");
  return {{comp[0] + o.comp[0], comp[1] + o.comp[1], comp[2] + o.comp[2]}, rep, weight};
}

VVForm VVForm::operator-(const VVForm& o) const {
  if (rep != o.rep) throw DomainError("subtracting forms of different representations");
  return {{comp[0] - o.comp[0], comp[1] - o.comp[1], comp[2] - o.comp[2]}, rep, weight};
}

VVForm VVForm::operator*(const BigRational& s) const { return {{comp[0] * s, comp[1] * s, comp[2] * s}, rep, weight}; }

VVForm VVForm::truncated(const BigRational& order) const {
  return {{comp[0].truncated(order), comp[1].truncated(order), comp[2].truncated(order)}, rep, weight};
}

nlohmann::json VVForm::to_json() const {
  return {{"rep", rep_name(rep)},
          {"weight", weight.get_str()},
          {"components", {comp[0].to_json(), comp[1].to_json(), comp[2].to_json()}}};
}

VVForm VVForm::from_json(const nlohmann::json& j) {
  VVForm f;
  f.rep = rep_from_name(j.at("rep").get<std::string>());
  f.weight = parse_rational(j.at("weight").get<std::string>());
  for (int l = 0; l < 3; ++l) f.comp[l] = PuiseuxSeries::from_json(j.at("components").at(l));
  return f;
}

PuiseuxSeries theta_series(const BigRational& order) {
  std::vector<std::pair<long, BigRational>> terms;
  for (long k = 0;; ++k) {
    long e = (2 * k + 1) * (2 * k + 1);
    if (frac(e, 8) >= order) break;
    terms.emplace_back(e, BigRational((k % 2 == 0 ? 1 : -1) * (2 * k + 1)));
  }
  return PuiseuxSeries::from_terms(8, terms, order);
}

VVForm lift_B(const CuspTriple& t) {
  VVForm f;
  f.rep = Rep::Varrho1;
  f.weight = 1;
  f.comp[0] = t.U + t.V.sieved(0, 4);
  f.comp[1] = t.V.sieved(3, 4);
  f.comp[2] = t.W + t.V.sieved(2, 4);
  return f;
}

VVForm lift_B_dual(const CuspTriple& t) {
  const BigRational half(1, 2);
  VVForm f;
  f.rep = Rep::Varrho1Dual;
  f.weight = 1;
  f.comp[0] = (t.V.sieved(0, 4) - t.U) * half;
  f.comp[1] = t.V.sieved(1, 4);
  f.comp[2] = (t.V.sieved(2, 4) - t.W) * half;
  return f;
}

VVForm tensor_theta(const VVForm& f) {
  Rep out;
  if (f.rep == Rep::Varrho1)
    out = Rep::Varrho;
  else if (f.rep == Rep::VarrhoDual)
    out = Rep::Varrho1Dual;
  else
    throw DomainError("tensor_theta expects a varrho1 or varrho* form");
  BigRational need = BigRational(1, 8);
  for (const auto& c : f.comp)
    if (c.trunc_order()) need = std::max(need, BigRational(*c.trunc_order() + BigRational(1, 8) - effective_lead(c)));
  PuiseuxSeries theta = theta_series(need);
  VVForm g;
  g.rep = out;
  g.weight = f.weight + BigRational(3, 2);
  for (int l = 0; l < 3; ++l) g.comp[l] = f.comp[l] * theta;
  return g;
}

VVForm divide_theta(const VVForm& f) {
  Rep out;
  if (f.rep == Rep::Varrho)
    out = Rep::Varrho1;
  else if (f.rep == Rep::Varrho1Dual)
    out = Rep::VarrhoDual;
  else
    throw DomainError("divide_theta expects a varrho or varrho1* form");
  BigRational need = 0;
  for (const auto& c : f.comp)
    if (c.trunc_order()) need = std::max(need, BigRational(*c.trunc_order() - BigRational(1, 8) - effective_lead(c)));
  PuiseuxSeries inv = eta_quotient({{{1, -3}}, 1}, need);
  VVForm g;
  g.rep = out;
  g.weight = f.weight - BigRational(3, 2);
  for (int l = 0; l < 3; ++l) g.comp[l] = f.comp[l] * inv;
  return g;
}

nlohmann::json Provenance::to_json() const {
  nlohmann::json poly = nlohmann::json::array(), comb = nlohmann::json::array();
  for (const auto& p : polynomial) poly.push_back(p.get_str());
  for (const auto& [i, c] : combination) comb.push_back({i, c.get_str()});
  return {{"m", m}, {"polynomial", poly}, {"combination", comb}};
}

Provenance Provenance::from_json(const nlohmann::json& j) {
  Provenance p;
  p.m = j.at("m").get<long>();
  for (const auto& x : j.at("polynomial")) p.polynomial.push_back(parse_rational(x.get<std::string>()));
  for (const auto& x : j.at("combination"))
    p.combination.emplace_back(x.at(0).get<long>(), parse_rational(x.at(1).get<std::string>()));
  return p;
}

bool valid_G_index(long d) {
  long r = mod(d, 8);
  return d > 0 && (r == 1 || r == 3 || r == 7);
}

bool valid_F_index(long D) {
  long r = mod(D, 8);
  return D > 0 && (r == 1 || r == 5 || r == 7);
}

BasisBuilder::BasisBuilder(std::shared_ptr<const GtildeFamily> family) : family_(std::move(family)) {}

VVForm BasisBuilder::raw_G(long d) const {
  if (!valid_G_index(d)) throw DomainError("G_d needs d > 0 with d = 1, 3, 7 mod 8; got " + std::to_string(d));
  long m = (d + 1) / 2;
  return tensor_theta(lift_B(family_->gtilde(m)));
}

VVForm BasisBuilder::raw_F(long D) const {
  if (!valid_F_index(D)) throw DomainError("F_D needs D > 0 with D = 1, 5, 7 mod 8; got " + std::to_string(D));
  long m = (D - 1) / 2;
  return divide_theta(lift_B_dual(family_->gtilde_dual(m)));
}

VVForm BasisBuilder::reduce(VVForm f, char kind, long principal, EliminationOrder order,
                            std::vector<std::pair<long, BigRational>>* combination) {
  for (;;) {
    auto neg = f.negative_part();
    neg.erase(std::remove_if(neg.begin(), neg.end(), [&](const auto& t) { return t.first == -principal; }), neg.end());
    if (neg.empty()) return f;
    const auto& [n, c] = order == EliminationOrder::Ascending ? neg.front() : neg.back();
    long idx = -n;
    const BasisEntry& b = kind == 'G' ? G(idx) : F(idx);
    BigRational mult = c;
    f = f - b.form * mult;
    if (combination) combination->emplace_back(idx, mult);
  }
}

BasisEntry BasisBuilder::finish(char kind, long index, VVForm raw, Provenance prov) {
  BasisEntry e;
  e.kind = kind;
  e.index = index;
  e.form = reduce(std::move(raw), kind, index, EliminationOrder::Ascending, &prov.combination);
  e.provenance = std::move(prov);
  std::string name = std::string(1, kind) + "_" + std::to_string(index);
  auto neg = e.form.negative_part();
  if (neg.size() != 1 || neg[0].first != -index || neg[0].second != 1)
    throw std::logic_error(name + " does not have principal part exactly q^-" + std::to_string(index));
  if (!e.form.all_integral()) throw IntegralityError(name + " has non-integral coefficients");
  if (!e.form.residues_ok()) throw std::logic_error(name + " violates the component residue pattern");
  return e;
}

const BasisEntry& BasisBuilder::G(long d) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = g_.find(d);
  if (it != g_.end()) return *it->second;
  if (!valid_G_index(d)) throw DomainError("G_d needs d > 0 with d = 1, 3, 7 mod 8; got " + std::to_string(d));
  long m = (d + 1) / 2;
  Provenance prov;
  prov.m = m;
  for (const auto& p : family_->polynomial(m)) prov.polynomial.emplace_back(p);
  auto e = std::make_unique<BasisEntry>(finish('G', d, raw_G(d), std::move(prov)));
  return *(g_[d] = std::move(e));
}

const BasisEntry& BasisBuilder::F(long D) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = f_.find(D);
  if (it != f_.end()) return *it->second;
  if (!valid_F_index(D)) throw DomainError("F_D needs D > 0 with D = 1, 5, 7 mod 8; got " + std::to_string(D));
  long m = (D - 1) / 2;
  Provenance prov;
  prov.m = m;
  prov.polynomial = family_->dual_polynomial(m);
  auto e = std::make_unique<BasisEntry>(finish('F', D, raw_F(D), std::move(prov)));
  return *(f_[D] = std::move(e));
}

const BasisEntry& BasisLibrary::G(long d) {
  if (!valid_G_index(d)) throw DomainError("G_d needs d > 0 with d = 1, 3, 7 mod 8; got " + std::to_string(d));
  for (auto& b : builders_)
    if (b->supports_G(d)) return b->G(d);
  throw PrecisionError("no basis builder reaches G_" + std::to_string(d));
}

const BasisEntry& BasisLibrary::F(long D) {
  if (!valid_F_index(D)) throw DomainError("F_D needs D > 0 with D = 1, 5, 7 mod 8; got " + std::to_string(D));
  for (auto& b : builders_)
    if (b->supports_F(D)) return b->F(D);
  throw PrecisionError("no basis builder reaches F_" + std::to_string(D));
}

BigRational family_order_for_index(long n_bound) {
  BigRational t(n_bound + 1, 8);
  t.canonicalize();
  return t;
}

VVForm hecke_Tp2(const VVForm& f, long p, std::optional<long> min_index_bound) {
  if (f.rep != Rep::Varrho) throw DomainError("hecke_Tp2 acts on varrho forms");
  if (p < 3 || !is_prime(p)) throw DomainError("hecke_Tp2 needs an odd prime");
  const long p2 = p * p;
  auto t_in = f.trunc_order();
  if (!t_in) throw PrecisionError("hecke_Tp2 needs a truncation order");
  BigRational t_out = *t_in / p2;
  long out_bound = ceil_long(t_out * 8);
  if (min_index_bound && out_bound < *min_index_bound)
    throw PrecisionError("T_" + std::to_string(p2) + " output known below index " + std::to_string(out_bound) +
                         ", need " + std::to_string(*min_index_bound) + "; input order too small");
  long lo = 0;
  bool any = false;
  for (const auto& c : f.comp)
    if (!c.is_zero()) {
      long v = ceil_long(c.valuation() * 8);
      lo = any ? std::min(lo, v) : v;
      any = true;
    }
  VVForm g;
  g.rep = Rep::Varrho;
  g.weight = f.weight;
  std::array<std::vector<std::pair<long, BigRational>>, 3> terms;
  if (any) {
    for (long n = std::min(lo, p2 * lo); n < out_bound; ++n) {
      long r = mod(n, 8);
      if (r != 1 && r != 5 && r != 7) continue;
      BigRational b = f.coeff(p2 * n);
      int k = kronecker(n, p);
      if (k != 0) b += BigRational(p * k) * f.coeff(n);
      if (n % p2 == 0) b += BigRational(p2 * p) * f.coeff(n / p2);
      if (b != 0) terms[ell_index(n)].emplace_back(n, b);
    }
  }
  for (int l = 0; l < 3; ++l) g.comp[l] = PuiseuxSeries::from_terms(8, terms[l], t_out);
  return g;
}

HeckeCheck hecke_identity_check(const VVForm& Gd, const VVForm& Gp2d, const VVForm* Gdp2, long d, long p) {
  const long p2 = p * p;
  VVForm lhs = hecke_Tp2(Gd, p);
  VVForm rhs = Gp2d * BigRational(p2 * p) + Gd * BigRational(p * kronecker(-d, p));
  if (d % p2 == 0) {
    if (Gdp2 == nullptr) throw DomainError("G_{d/p^2} is required when p^2 | d");
    rhs = rhs + *Gdp2;
  }
  VVForm diff = lhs - rhs;
  HeckeCheck r;
  r.index_bound = diff.index_bound();
  for (long n = 1; n < r.index_bound; ++n) {
    long m = mod(n, 8);
    if (m == 1 || m == 5 || m == 7) ++r.compared;
  }
  for (const auto& c : diff.comp)
    c.for_each_term([&](long k, const BigRational&) { r.mismatches.push_back(8 * k / c.denom()); });
  std::sort(r.mismatches.begin(), r.mismatches.end());
  r.pass = r.mismatches.empty() && r.compared > 0;
  return r;
}

HeckeCheck hecke_identity_check(BasisLibrary& lib, long d, long p) {
  const long p2 = p * p;
  const VVForm* low = d % p2 == 0 ? &lib.G(d / p2).form : nullptr;
  return hecke_identity_check(lib.G(d).form, lib.G(p2 * d).form, low, d, p);
}

}  // namespace mmf
