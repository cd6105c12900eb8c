#include "mmf/discforms.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

#include "mmf/errors.hpp"

namespace mmf {

std::string FqmElement::str() const {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

int qform_num(const FqmElement& h) { return static_cast<int>(mod(h.b * h.b - 2 * h.a * h.c, 8)); }

BigRational qform(const FqmElement& h) {
  BigRational q(qform_num(h), 8);
  q.canonicalize();
  return q;
}

int bilinear_num(const FqmElement& x, const FqmElement& y) {
  return static_cast<int>(mod(qform_num(x + y) - qform_num(x) - qform_num(y), 8));
}

std::vector<FqmElement> all_elements() {
  std::vector<FqmElement> out;
  for (int i = 0; i < 64; ++i) out.push_back(FqmElement::from_index(i));
  return out;
}

std::vector<FqmElement> isotropic_set() {
  std::vector<FqmElement> out;
  for (const auto& h : all_elements())
    if (qform_num(h) == 0) out.push_back(h);
  return out;
}

FqmElement OrthMap::apply(const FqmElement& h) const {
  int v[3] = {h.a, h.b, h.c};
  int r[3];
  for (int i = 0; i < 3; ++i) r[i] = static_cast<int>(mod(m[3 * i] * v[0] + m[3 * i + 1] * v[1] + m[3 * i + 2] * v[2], 4));
  return {r[0], r[1], r[2]};
}

OrthMap OrthMap::compose(const OrthMap& o) const {
  OrthMap r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int s = 0;
      for (int k = 0; k < 3; ++k) s += m[3 * i + k] * o.m[3 * k + j];
      r.m[3 * i + j] = static_cast<int>(mod(s, 4));
    }
  return r;
}

int OrthMap::det() const {
  long d = m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) + m[2] * (m[3] * m[7] - m[4] * m[6]);
  return static_cast<int>(mod(d, 4));
}

bool OrthMap::preserves_q() const {
  for (int i = 0; i < 64; ++i) {
    FqmElement h = FqmElement::from_index(i);
    if (qform_num(apply(h)) != qform_num(h)) return false;
  }
  return true;
}

std::string OrthMap::str() const {
  std::ostringstream os;
  os << "[[" << m[0] << "," << m[1] << "," << m[2] << "],[" << m[3] << "," << m[4] << "," << m[5] << "],[" << m[6]
     << "," << m[7] << "," << m[8] << "]]";
  return os.str();
}

OrthMap OrthMap::R() { return {{1, 0, 0, 2, 1, 0, 2, 2, 1}}; }
OrthMap OrthMap::W() { return {{0, 0, 1, 0, 3, 0, 1, 0, 0}}; }
OrthMap OrthMap::U() { return W().compose(R()).compose(W()); }
OrthMap OrthMap::mu() { return {{1, 0, 0, 0, 3, 0, 0, 0, 1}}; }
OrthMap OrthMap::nu() { return scalar(-1); }
OrthMap OrthMap::scalar(long k) {
  int s = static_cast<int>(mod(k, 4));
  return {{s, 0, 0, 0, s, 0, 0, 0, s}};
}

std::size_t OrthGroup::so_size() const { return static_cast<std::size_t>(std::count(special.begin(), special.end(), true)); }

bool OrthGroup::contains(const OrthMap& s) const { return std::find(elements.begin(), elements.end(), s) != elements.end(); }

const OrthGroup& orth_group() {
  static const OrthGroup group = [] {
    OrthGroup g;
    int qn[64];
    for (int i = 0; i < 64; ++i) qn[i] = qform_num(FqmElement::from_index(i));
    for (int code = 0; code < (1 << 18); ++code) {
      OrthMap s;
      for (int k = 0; k < 9; ++k) s.m[k] = (code >> (2 * k)) & 3;
      if (s.det() % 2 == 0) continue;
      bool ok = true;
      for (int i = 0; i < 64 && ok; ++i) ok = qform_num(s.apply(FqmElement::from_index(i))) == qn[i];
      if (!ok) continue;
      g.elements.push_back(s);
      g.special.push_back(s.det() == 1);
    }
    return g;
  }();
  return group;
}

namespace {

const std::map<OrthMap, int>& chi_table() {
  static const std::map<OrthMap, int> table = [] {
    const OrthGroup& G = orth_group();
    const std::vector<std::pair<OrthMap, int>> gens = {
        {OrthMap::R(), -1}, {OrthMap::U(), -1}, {OrthMap::W(), -1}, {OrthMap::mu(), -1}, {OrthMap::nu(), 1}};
    std::map<OrthMap, int> t;
    t[OrthMap::identity()] = 1;
    std::deque<OrthMap> queue{OrthMap::identity()};
    while (!queue.empty()) {
      OrthMap x = queue.front();
      queue.pop_front();
      for (const auto& [g, v] : gens) {
        if (!G.contains(g)) throw std::logic_error("generator " + g.str() + " does not preserve Q");
        OrthMap y = g.compose(x);
        int val = v * t[x];
        auto it = t.find(y);
        if (it == t.end()) {
          t[y] = val;
          queue.push_back(y);
        } else if (it->second != val) {
          throw std::logic_error("character values on generators are inconsistent at " + y.str());
        }
      }
    }
    if (t.size() != G.elements.size())
      throw std::logic_error("generators span a proper subgroup of O(A)");
    return t;
  }();
  return table;
}

CycEight zeta_pow(long k) { return CycEight::zeta(k); }

// Weil representation on C[elems] with Q restricted from A.
std::pair<CycMatrix, CycMatrix> weil_on(const std::vector<FqmElement>& elems) {
  std::size_t n = elems.size();
  CycEight gauss;
  for (const auto& h : elems) gauss += zeta_pow(qform_num(h));
  if (!(gauss * gauss.conj() == CycEight(static_cast<long>(n))))
    throw std::logic_error("Gauss sum has the wrong absolute value; form is degenerate");
  CycEight pref = gauss.conj() * BigRational(1, static_cast<long>(n));
  CycMatrix T(n, n), S(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    T(j, j) = zeta_pow(qform_num(elems[j]));
    for (std::size_t i = 0; i < n; ++i) S(i, j) = pref * zeta_pow(-bilinear_num(elems[j], elems[i]));
  }
  return {T, S};
}

std::vector<FqmElement> a1_elements() {
  std::vector<FqmElement> out;
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 4; ++c) out.push_back({a, 0, c});
  return out;
}

std::vector<FqmElement> a2_elements() {
  std::vector<FqmElement> out;
  for (int b = 0; b < 4; ++b) out.push_back({0, b, 0});
  return out;
}

// b_l = sum over O(A1) of chi1(s) e_{s(1, l)}, chi1(s) = chi(s + id on A2).
std::vector<std::vector<long>> varrho1_basis() {
  auto elems = a1_elements();
  auto pos = [](const FqmElement& h) { return 4 * h.a + h.c; };
  std::vector<std::pair<OrthMap, int>> o1;
  for (int code = 0; code < 256; ++code) {
    OrthMap s{{code & 3, 0, (code >> 2) & 3, 0, 1, 0, (code >> 4) & 3, 0, (code >> 6) & 3}};
    if (s.det() % 2 == 0) continue;
    bool ok = true;
    for (const auto& h : elems) ok = ok && qform_num(s.apply(h)) == qform_num(h);
    if (ok) o1.emplace_back(s, chi(s));
  }
  std::vector<std::vector<long>> basis(3, std::vector<long>(16, 0));
  for (int l = 0; l < 3; ++l)
    for (const auto& [s, v] : o1) basis[l][pos(s.apply({1, 0, l}))] += v;
  return basis;
}

}  // namespace

int chi(const OrthMap& s) {
  const auto& t = chi_table();
  auto it = t.find(s);
  if (it == t.end()) throw DomainError("chi: " + s.str() + " is not in O(A)");
  return it->second;
}

const ChiOrbits& chi_orbits() {
  static const ChiOrbits orbits = [] {
    const OrthGroup& G = orth_group();
    ChiOrbits o;
    for (const auto& h : all_elements()) {
      bool in_kernel = true;
      for (const auto& s : G.elements)
        if (s.apply(h) == h && chi(s) != 1) in_kernel = false;
      if (in_kernel) o.A.push_back(h);
    }
    for (int l = 0; l < 3; ++l) {
      FqmElement rep{1, 1, l};
      std::vector<int> seen(64, 0);
      for (const auto& s : G.elements) seen[s.apply(rep).index()] = 1;
      for (int i = 0; i < 64; ++i)
        if (seen[i]) o.orbit[l].push_back(FqmElement::from_index(i));
    }
    return o;
  }();
  return orbits;
}

CycVector project_chi(const CycVector& v) {
  if (v.size() != 64) throw DomainError("project_chi expects a vector of length 64");
  const OrthGroup& G = orth_group();
  CycVector out(64);
  for (const auto& s : G.elements) {
    int c = chi(s);
    for (int i = 0; i < 64; ++i) {
      if (v[i].is_zero()) continue;
      int j = s.apply(FqmElement::from_index(i)).index();
      if (c > 0)
        out[j] += v[i];
      else
        out[j] -= v[i];
    }
  }
  BigRational inv(1, static_cast<long>(G.elements.size()));
  for (auto& x : out) x *= inv;
  return out;
}

const std::array<std::vector<long>, 3>& chi_basis() {
  static const std::array<std::vector<long>, 3> basis = [] {
    std::array<std::vector<long>, 3> b;
    for (int l = 0; l < 3; ++l) {
      b[l].assign(64, 0);
      for (const auto& s : orth_group().elements) b[l][s.apply({1, 1, l}).index()] += chi(s);
    }
    return b;
  }();
  return basis;
}

int ell_index(long m) {
  switch (mod(m, 8)) {
    case 1: return 0;
    case 7: return 1;
    case 5: return 2;
    default: throw DomainError("index " + std::to_string(m) + " is not 1, 5 or 7 mod 8");
  }
}

CycMatrix CycMatrix::identity(std::size_t n) {
  CycMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

CycMatrix CycMatrix::diag(const std::vector<CycEight>& d) {
  CycMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

CycMatrix CycMatrix::from_rows(const std::vector<std::vector<CycEight>>& rows) {
  CycMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < m.r_; ++i) {
    if (rows[i].size() != m.c_) throw DomainError("ragged matrix rows");
    for (std::size_t j = 0; j < m.c_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

CycMatrix CycMatrix::operator*(const CycMatrix& o) const {
  if (c_ != o.r_) throw DomainError("matrix shape mismatch");
  CycMatrix r(r_, o.c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      const CycEight& x = (*this)(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < o.c_; ++j) {
        const CycEight& y = o(k, j);
        if (!y.is_zero()) r(i, j) += x * y;
      }
    }
  return r;
}

CycMatrix CycMatrix::operator*(const CycEight& s) const {
  CycMatrix r = *this;
  for (auto& x : r.d_) x *= s;
  return r;
}

CycMatrix CycMatrix::pow(unsigned n) const {
  CycMatrix result = identity(r_), base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

CycMatrix CycMatrix::conj_transpose() const {
  CycMatrix r(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) r(j, i) = (*this)(i, j).conj();
  return r;
}

CycMatrix CycMatrix::tensor(const CycMatrix& o) const {
  CycMatrix r(r_ * o.r_, c_ * o.c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j)
      for (std::size_t k = 0; k < o.r_; ++k)
        for (std::size_t l = 0; l < o.c_; ++l) r(i * o.r_ + k, j * o.c_ + l) = (*this)(i, j) * o(k, l);
  return r;
}

nlohmann::json CycMatrix::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < r_; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < c_; ++j) row.push_back((*this)(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

CycMatrix restrict_to_span(const CycMatrix& rep, const std::vector<std::vector<long>>& basis) {
  std::size_t k = basis.size(), n = rep.rows();
  CycMatrix out(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    CycVector w(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (basis[j][c] != 0) w[r] += rep(r, c) * BigRational(basis[j][c]);
    CycVector recon(n);
    for (std::size_t i = 0; i < k; ++i) {
      CycEight dot;
      long norm = 0;
      for (std::size_t r = 0; r < n; ++r) {
        if (basis[i][r] == 0) continue;
        dot += w[r] * BigRational(basis[i][r]);
        norm += basis[i][r] * basis[i][r];
      }
      out(i, j) = dot * BigRational(1, norm);
      for (std::size_t r = 0; r < n; ++r)
        if (basis[i][r] != 0) recon[r] += out(i, j) * BigRational(basis[i][r]);
    }
    if (recon != w) throw std::logic_error("span is not invariant under the representation");
  }
  return out;
}

const WeilRepMatrices& weil_rep() {
  static const WeilRepMatrices w = [] {
    WeilRepMatrices m;
    std::tie(m.rho_T, m.rho_S) = weil_on(all_elements());
    const auto& eb = chi_basis();
    std::vector<std::vector<long>> e(eb.begin(), eb.end());
    m.varrho_T = restrict_to_span(m.rho_T, e);
    m.varrho_S = restrict_to_span(m.rho_S, e);
    std::tie(m.rho1_T, m.rho1_S) = weil_on(a1_elements());
    auto b = varrho1_basis();
    m.varrho1_T = restrict_to_span(m.rho1_T, b);
    m.varrho1_S = restrict_to_span(m.rho1_S, b);
    auto [t2, s2] = weil_on(a2_elements());
    std::vector<std::vector<long>> e2 = {{0, 1, 0, -1}};
    m.varrho2_T = restrict_to_span(t2, e2);
    m.varrho2_S = restrict_to_span(s2, e2);
    return m;
  }();
  return w;
}

nlohmann::json dump_discform() {
  nlohmann::json j;
  const OrthGroup& G = orth_group();
  nlohmann::json group = nlohmann::json::array();
  for (std::size_t i = 0; i < G.elements.size(); ++i)
    group.push_back({{"matrix", G.elements[i].str()}, {"det", G.elements[i].det()}, {"special", static_cast<bool>(G.special[i])},
                     {"chi", chi(G.elements[i])}});
  j["orthogonal_group"] = group;
  j["order"] = G.elements.size();
  j["so_order"] = G.so_size();
  auto list = [](const std::vector<FqmElement>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& h : v) a.push_back(h.str());
    return a;
  };
  j["isotropic"] = list(isotropic_set());
  const ChiOrbits& o = chi_orbits();
  j["A"] = list(o.A);
  j["orbits"] = {list(o.orbit[0]), list(o.orbit[1]), list(o.orbit[2])};
  const WeilRepMatrices& w = weil_rep();
  j["varrho"] = {{"T", w.varrho_T.to_json()}, {"S", w.varrho_S.to_json()}};
  j["varrho_dual"] = {{"T", WeilRepMatrices::dual(w.varrho_T).to_json()}, {"S", WeilRepMatrices::dual(w.varrho_S).to_json()}};
  j["varrho1"] = {{"T", w.varrho1_T.to_json()}, {"S", w.varrho1_S.to_json()}};
  j["varrho2"] = {{"T", w.varrho2_T.to_json()}, {"S", w.varrho2_S.to_json()}};
  return j;
}

namespace {

std::vector<FqmElement> sorted(std::vector<FqmElement> v) {
  std::sort(v.begin(), v.end(), [](const FqmElement& x, const FqmElement& y) { return x.index() < y.index(); });
  return v;
}

// M = [[1,2,1],[1,0,-1],[1,-2,1]].
CycMatrix varrho_S_shape() {
  return CycMatrix::from_rows({{1, 2, 1}, {1, 0, -1}, {1, -2, 1}});
}

bool commutes_with(const OrthMap& s, const CycMatrix& m) {
  int perm[64];
  for (int i = 0; i < 64; ++i) perm[i] = s.apply(FqmElement::from_index(i)).index();
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j)
      if (!(m(static_cast<std::size_t>(perm[i]), static_cast<std::size_t>(perm[j])) == m(static_cast<std::size_t>(i), static_cast<std::size_t>(j))))
        return false;
  return true;
}

}  // namespace

std::vector<NamedCheck> representation_checks() {
  std::vector<NamedCheck> out;
  auto add = [&](std::string name, bool pass, std::string detail = "") {
    out.push_back({std::move(name), pass, std::move(detail)});
  };
  const OrthGroup& G = orth_group();
  add("|O(A)| = 32", G.elements.size() == 32, std::to_string(G.elements.size()));
  add("|SO(A)| = 16", G.so_size() == 16, std::to_string(G.so_size()));

  const std::vector<FqmElement> iso_expected = {{0, 0, 0}, {0, 0, 1}, {0, 0, 2}, {0, 0, 3}, {1, 0, 0}, {1, 2, 2},
                                                {2, 0, 0}, {2, 0, 2}, {2, 2, 1}, {2, 2, 3}, {3, 0, 0}, {3, 2, 2}};
  add("isotropic set", sorted(isotropic_set()) == sorted(iso_expected), std::to_string(isotropic_set().size()) + " elements");

  const ChiOrbits& o = chi_orbits();
  const std::array<std::vector<FqmElement>, 3> orbit_expected = {
      std::vector<FqmElement>{{0, 1, 1}, {3, 3, 0}, {0, 3, 3}, {1, 1, 0}, {0, 3, 1}, {1, 3, 0}, {0, 1, 3}, {3, 1, 0}},
      std::vector<FqmElement>{{1, 1, 1}, {1, 3, 1}, {3, 3, 3}, {3, 1, 3}},
      std::vector<FqmElement>{{1, 1, 2}, {2, 1, 1}, {3, 3, 2}, {2, 3, 3}, {3, 1, 2}, {2, 3, 1}, {1, 3, 2}, {2, 1, 3}}};
  bool orbits_ok = o.A.size() == 20;
  for (int l = 0; l < 3; ++l) orbits_ok = orbits_ok && sorted(o.orbit[l]) == sorted(orbit_expected[l]);
  add("orbits A0/A1/A2 of sizes 8/4/8", orbits_ok,
      std::to_string(o.orbit[0].size()) + "/" + std::to_string(o.orbit[1].size()) + "/" + std::to_string(o.orbit[2].size()));

  const WeilRepMatrices& w = weil_rep();
  const CycMatrix I3 = CycMatrix::identity(3);
  const CycMatrix S2 = w.varrho_S.pow(2);
  const CycMatrix S4 = w.varrho_S.pow(4);
  std::string s4_detail = S4 == I3 ? "identity" : (S4 == I3 * CycEight(-1) ? "equals -I" : "other");
  add("varrho(S)^4 = I", S4 == I3, s4_detail);
  add("(varrho(S) varrho(T))^3 = varrho(S)^2", (w.varrho_S * w.varrho_T).pow(3) == S2);
  add("varrho(S)^2 = -i I", S2 == I3 * CycEight::zeta(6));

  CycEight sqrt2 = CycEight::zeta(1) - CycEight::zeta(3);
  CycMatrix D = CycMatrix::diag({1, sqrt2, 1});
  CycMatrix Dinv = CycMatrix::diag({1, sqrt2.inverse(), 1});
  CycMatrix U = D * w.varrho_S * Dinv;
  add("D varrho(S) D^-1 is unitary", U * U.conj_transpose() == I3);

  CycMatrix T_expected = CycMatrix::diag({CycEight::zeta(1), CycEight::zeta(7), CycEight::zeta(5)});
  CycMatrix S_expected = varrho_S_shape() * (CycEight::zeta(-1) * BigRational(1, 2));
  add("restriction of the 64-dim representation to span{e0,e1,e2}",
      w.varrho_T == T_expected && w.varrho_S == S_expected);

  bool all_commute = true;
  for (const auto& s : G.elements) all_commute = all_commute && commutes_with(s, w.rho_T) && commutes_with(s, w.rho_S);
  add("O(A) commutes with rho(T), rho(S)", all_commute);
  return out;
}

}  // namespace mmf
