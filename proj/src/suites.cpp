#include "mmf/suites.hpp"

#include <algorithm>
#include <chrono>

#include "mmf/discforms.hpp"
#include "mmf/errors.hpp"
#include "mmf/golden.hpp"

namespace mmf {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

long top_odd(long n) { return n % 2 == 0 ? n - 1 : n; }

long m_for(char kind, long index) { return kind == 'G' ? (index + 1) / 2 : (index - 1) / 2; }

std::string form_name(char kind, long index) { return std::string(1, kind) + "_" + std::to_string(index); }

std::vector<long> valid_up_to(char kind, long bound) {
  std::vector<long> out;
  for (long n = 1; n <= bound; ++n)
    if (kind == 'G' ? valid_G_index(n) : valid_F_index(n)) out.push_back(n);
  return out;
}

Report start(const std::string& target, long nmax) {
  Report r;
  r.target = target;
  r.nmax = nmax;
  r.details = nlohmann::json::array();
  return r;
}

void finish(Report& r, Clock::time_point t0) {
  r.pass = r.failures.empty();
  r.runtime_ms = ms_since(t0);
}

}  // namespace

Workspace::Workspace(std::optional<std::filesystem::path> cache_dir) {
  if (cache_dir) cache_ = std::make_unique<BasisCache>(*cache_dir);
}

BasisBuilder& Workspace::builder(long max_m, long index_bound) {
  for (auto& s : slots_)
    if (s.max_m >= max_m && s.index_bound >= index_bound) return *s.builder;
  auto fam = std::make_shared<const GtildeFamily>(max_m, family_order_for_index(index_bound));
  slots_.push_back({max_m, index_bound, std::make_shared<BasisBuilder>(fam)});
  return *slots_.back().builder;
}

void Workspace::reserve(long max_m, long index_bound) { builder(max_m, index_bound); }

const GtildeFamily& Workspace::family(long max_m, long index_bound) { return builder(max_m, index_bound).family(); }

const BasisEntry& Workspace::get(char kind, long index, long index_bound) {
  if (kind == 'G' && !valid_G_index(index))
    throw DomainError("G_d needs d > 0 with d = 1, 3, 7 mod 8; got " + std::to_string(index));
  if (kind == 'F' && !valid_F_index(index))
    throw DomainError("F_D needs D > 0 with D = 1, 5, 7 mod 8; got " + std::to_string(index));
  if (index_bound > kMaxIndexBound)
    throw PrecisionError("requested index bound " + std::to_string(index_bound) + " exceeds the supported maximum " +
                         std::to_string(kMaxIndexBound));
  auto key = std::make_pair(kind, index);
  auto it = best_.find(key);
  if (it != best_.end() && it->second->form.index_bound() >= index_bound) return *it->second;
  if (cache_) {
    if (auto e = cache_->load(kind, index, index_bound)) {
      loaded_.push_back(std::move(*e));
      return *(best_[key] = &loaded_.back());
    }
  }
  BasisBuilder& b = builder(m_for(kind, index), index_bound);
  const BasisEntry& e = kind == 'G' ? b.G(index) : b.F(index);
  if (e.form.index_bound() < index_bound)
    throw PrecisionError(form_name(kind, index) + " known below " + std::to_string(e.form.index_bound()) + ", need " +
                         std::to_string(index_bound));
  if (cache_) cache_->store(e);
  return *(best_[key] = &e);
}

const BasisEntry& Workspace::G(long d, long index_bound) { return get('G', d, index_bound); }
const BasisEntry& Workspace::F(long D, long index_bound) { return get('F', D, index_bound); }

bool square_free_G_index(long d) { return valid_G_index(d) && is_squarefree(d); }

Report suite_tables(Workspace& ws) {
  auto t0 = Clock::now();
  Report r = start("golden tables", 15);
  long max_m = 0;
  for (const auto& row : golden_tables()) max_m = std::max(max_m, m_for(row.kind, row.index));
  ws.reserve(max_m, 16);
  for (const auto& row : golden_tables()) {
    const VVForm& f = (row.kind == 'G' ? ws.G(row.index, 16) : ws.F(row.index, 16)).form;
    for (const auto& [n, expected] : row.coeffs) {
      BigRational got = f.coeff(n);
      bool ok = got == BigRational(expected);
      r.details.push_back({{"form", form_name(row.kind, row.index)},
                           {"n", n},
                           {"expected", expected.get_str()},
                           {"computed", got.get_str()},
                           {"match", ok}});
      if (!ok) r.failures.push_back(row.index);
    }
  }
  finish(r, t0);
  return r;
}

Report suite_phi_lift(Workspace& ws, long nmax) {
  auto t0 = Clock::now();
  Report r = start("Phi(G_1) = -4 phi", nmax);
  long top = top_odd(nmax);
  const VVForm& G1 = ws.G(1, top * top + 1).form;
  LiftSeries a = lift_Phi(G1, nmax, "G_1");
  PuiseuxSeries phi = phi_series(BigRational(nmax + 1));
  for (long n = 1; n <= nmax; n += 2) {
    BigRational expected = phi.coeff(n) * BigRational(-4);
    if (BigRational(a.at(n)) != expected) r.failures.push_back(n);
    if (n <= 9) r.details.push_back({{"n", n}, {"a", a.at(n).get_str()}, {"minus_4_phi", expected.get_str()}});
  }
  finish(r, t0);
  return r;
}

Report suite_phi_divisibility(long nmax) {
  PuiseuxSeries phi = phi_series(BigRational(nmax + 1));
  Report r = verify_magnetic(phi, nmax, "n | a(n) for phi");
  return r;
}

Report suite_family(Workspace& ws, const std::vector<long>& ds, long nmax) {
  auto t0 = Clock::now();
  Report r = start("n | a_d(n)", nmax);
  long top = top_odd(nmax);
  long max_m = 1;
  for (long d : ds) max_m = std::max(max_m, m_for('G', d));
  ws.reserve(max_m, top * top + 1);
  for (long d : ds) {
    LiftSeries a = lift_Phi(ws.G(d, top * top + 1).form, nmax, form_name('G', d));
    Report one = verify_magnetic(a, nmax, form_name('G', d));
    r.details.push_back({{"d", d}, {"pass", one.pass}, {"failures", one.failures}, {"a1", a.at(1).get_str()}});
    if (!one.pass) r.failures.push_back(d);
  }
  finish(r, t0);
  return r;
}

Report suite_hecke(Workspace& ws, long d, long p, long min_compared) {
  auto t0 = Clock::now();
  if (p < 3 || !is_prime(p)) throw DomainError("hecke needs an odd prime p, got " + std::to_string(p));
  if (!valid_G_index(d)) throw DomainError("G_d needs d > 0 with d = 1, 3, 7 mod 8; got " + std::to_string(d));
  const long p2 = p * p;
  Report r = start("G_d | T_p^2 identity, d = " + std::to_string(d) + ", p = " + std::to_string(p), min_compared);
  long bound = 1, count = 0;
  while (count < min_compared) {
    long m = mod(bound, 8);
    if (m == 1 || m == 5 || m == 7) ++count;
    ++bound;
  }
  ws.reserve(m_for('G', d), p2 * (bound + 1));
  const VVForm& Gd = ws.G(d, p2 * (bound + 1)).form;
  const VVForm& Gp2d = ws.G(p2 * d, bound).form;
  const VVForm* low = d % p2 == 0 ? &ws.G(d / p2, bound).form : nullptr;
  HeckeCheck h = hecke_identity_check(Gd, Gp2d, low, d, p);
  r.failures = h.mismatches;
  r.details = {{"d", d}, {"p", p}, {"compared", h.compared}, {"index_bound", h.index_bound}};
  if (h.compared < min_compared) r.failures.push_back(-1);
  finish(r, t0);
  return r;
}

Report suite_congruences(Workspace& ws, long dmax, const std::vector<long>& ps, long nmax, long pmax) {
  auto t0 = Clock::now();
  Report r = start("mod p^3 congruences", nmax);
  std::vector<long> ds;
  for (long d : valid_up_to('G', dmax))
    if (is_squarefree(d)) ds.push_back(d);
  long pm = 3;
  for (long p : ps) pm = std::max(pm, p);
  long max_m = 1;
  for (long d : ds) max_m = std::max(max_m, m_for('G', d));
  ws.reserve(max_m, pm * pm * nmax + 1);
  for (long d : ds)
    for (long p : ps) {
      Report one = verify_prop_congruence(ws.G(d, p * p * nmax + 1).form, d, p, nmax);
      r.details.push_back({{"d", d}, {"p", p}, {"pass", one.pass}, {"failures", one.failures}});
      if (!one.pass) r.failures.push_back(d);
    }
  Report phi = verify_phi_p3(phi_series(BigRational(pmax + 1)), pmax);
  r.details.push_back({{"phi_p3", phi.pass}, {"pmax", pmax}, {"failures", phi.failures}});
  for (long p : phi.failures) r.failures.push_back(p);
  finish(r, t0);
  return r;
}

Report suite_duality(Workspace& ws, long Dmax, long dmax) {
  auto t0 = Clock::now();
  Report r = start("A(D, d) + B(D, d) = 0", std::max(Dmax, dmax));
  auto Ds = valid_up_to('F', Dmax);
  auto ds = valid_up_to('G', dmax);
  long max_m = 0;
  for (long D : Ds) max_m = std::max(max_m, m_for('F', D));
  for (long d : ds) max_m = std::max(max_m, m_for('G', d));
  ws.reserve(std::max(max_m, 1L), std::max(Dmax, dmax) + 1);
  long pairs = 0;
  nlohmann::json bad = nlohmann::json::array();
  for (long D : Ds)
    for (long d : ds) {
      BigRational A = ws.F(D, dmax + 1).form.coeff(d);
      BigRational B = ws.G(d, Dmax + 1).form.coeff(D);
      ++pairs;
      if (A + B != 0) {
        bad.push_back({{"D", D}, {"d", d}, {"A", A.get_str()}, {"B", B.get_str()}});
        r.failures.push_back(D);
      }
    }
  // Pairs readable directly off the golden rows.
  long golden_pairs = 0;
  for (const auto& g : golden_tables()) {
    if (g.kind != 'G' || g.index > dmax) continue;
    for (const auto& [D, b] : g.coeffs) {
      if (D > Dmax) continue;
      for (const auto& f : golden_tables()) {
        if (f.kind != 'F' || f.index != D) continue;
        for (const auto& [n, a] : f.coeffs) {
          if (n != g.index) continue;
          ++golden_pairs;
          if (a + b != 0) {
            bad.push_back({{"D", D}, {"d", g.index}, {"A", a.get_str()}, {"B", b.get_str()}, {"golden", true}});
            r.failures.push_back(D);
          }
        }
      }
    }
  }
  r.details = {{"pairs", pairs}, {"golden_pairs", golden_pairs}, {"mismatches", bad}};
  finish(r, t0);
  return r;
}

Report suite_scalar64(long nmax) {
  auto t0 = Clock::now();
  Report r = verify_magnetic(scalar_magnetic_series(BigRational(nmax + 1)), nmax, "n | a(n) for 64 Delta / E4^2");
  PuiseuxSeries delta = eta_quotient({{{1, 24}}, 1}, BigRational(nmax + 1));
  Report control = verify_magnetic(delta, nmax, "Delta");
  long first = control.failures.empty() ? 0 : control.failures.front();
  r.details = {{"delta_first_failure", first}};
  if (first != 11) r.failures.push_back(-first);
  finish(r, t0);
  return r;
}

Report suite_representation() {
  auto t0 = Clock::now();
  Report r = start("representation", 0);
  auto checks = representation_checks();
  for (std::size_t i = 0; i < checks.size(); ++i) {
    r.details.push_back({{"check", checks[i].name}, {"pass", checks[i].pass}, {"detail", checks[i].detail}});
    if (!checks[i].pass) r.failures.push_back(static_cast<long>(i));
  }
  finish(r, t0);
  return r;
}

Report suite_structural(Workspace& ws, long mmax, long dmax, long Dmax) {
  auto t0 = Clock::now();
  Report r = start("structure", std::max(dmax, Dmax));
  const GtildeFamily& fam = ws.family(std::max(mmax, 1L), 16);
  for (long m = 0; m <= mmax; ++m) {
    if (m != 0 && m % 4 != 3) continue;
    bool zero = lift_B(fam.gtilde(m)).is_zero();
    r.details.push_back({{"check", "B(g~_" + std::to_string(m) + ") = 0"}, {"pass", zero}});
    if (!zero) r.failures.push_back(m);
  }
  auto check_form = [&](char kind, long index) {
    std::string name = form_name(kind, index);
    bool ok = false;
    std::string why;
    try {
      const VVForm& f = (kind == 'G' ? ws.G(index, index + 1) : ws.F(index, index + 1)).form;
      auto neg = f.negative_part();
      bool principal = neg.size() == 1 && neg[0].first == -index && neg[0].second == 1;
      bool integral = f.all_integral();
      bool residues = f.residues_ok();
      ok = principal && integral && residues;
      if (!principal) why += "principal part; ";
      if (!integral) why += "integrality; ";
      if (!residues) why += "residues; ";
    } catch (const std::exception& e) {
      why = e.what();
    }
    if (!ok) {
      r.details.push_back({{"check", name}, {"pass", false}, {"detail", why}});
      r.failures.push_back(index);
    }
  };
  for (long d : valid_up_to('G', dmax)) check_form('G', d);
  for (long D : valid_up_to('F', Dmax)) check_form('F', D);
  r.details.push_back({{"forms_checked", valid_up_to('G', dmax).size() + valid_up_to('F', Dmax).size()}});
  finish(r, t0);
  return r;
}

}  // namespace mmf
