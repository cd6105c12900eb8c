#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <sstream>

#include "mmf/basis_cache.hpp"
#include "mmf/discforms.hpp"
#include "mmf/errors.hpp"
#include "mmf/golden.hpp"
#include "mmf/suites.hpp"

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kPrecision = 3 };

struct Config {
  long terms = 16;
  std::string cache_dir;
  std::string format = "pretty";
};

std::optional<std::filesystem::path> cache_path(const Config& c) {
  if (c.cache_dir.empty()) return std::nullopt;
  return std::filesystem::path(c.cache_dir);
}

// Pretty polynomial text: "q^-1 - 4q + 112q^5".
std::string series_str(const std::vector<std::pair<long, mmf::BigRational>>& rows, const std::string& var) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, c] : rows) {
    mmf::BigRational a = abs(c);
    if (first) os << (sgn(c) < 0 ? "-" : "");
    else os << (sgn(c) < 0 ? " - " : " + ");
    first = false;
    if (a != 1 || n == 0) os << a.get_str();
    if (n != 0) os << var << (n == 1 ? "" : "^" + std::to_string(n));
  }
  return first ? "0" : os.str();
}

void print_basis(const mmf::BasisEntry& e, long terms, const std::string& format) {
  std::vector<std::pair<long, mmf::BigRational>> rows;
  for (long n = -e.index; n < terms; ++n) {
    mmf::BigRational c = e.form.coeff(n);
    if (c != 0) rows.emplace_back(n, c);
  }
  std::string name = std::string(1, e.kind) + "_" + std::to_string(e.index);
  if (format == "json") {
    nlohmann::json j = mmf::basis_entry_to_json(e);
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& [n, c] : rows) coeffs.push_back({n, c.get_str()});
    j["coefficients"] = coeffs;
    j["terms"] = terms;
    std::cout << j.dump() << "\n";
  } else if (format == "csv") {
    std::cout << "form,n,coefficient\n";
    for (const auto& [n, c] : rows) std::cout << name << "," << n << "," << c.get_str() << "\n";
  } else {
    std::string var = e.kind == 'G' ? "q" : "Q";
    std::cout << name << " = " << series_str(rows, var) << " + O(" << var << "^" << terms << ")\n";
    if (e.kind == 'G')
      std::cout << "q^n stands for q^(n/8) on component l(n), 1 - n = 2 l(n) mod 8\n";
    else
      std::cout << "Q^n stands for q^(n/8) on component l(-n), 1 + n = 2 l(-n) mod 8\n";
  }
}

void print_report(const mmf::Report& r, const std::string& format) {
  if (format == "json") {
    std::cout << r.to_json().dump() << "\n";
  } else if (format == "csv") {
    std::cout << "target,nmax,pass,failures,runtime_ms\n";
    std::cout << '"' << r.target << "\"," << r.nmax << "," << (r.pass ? "true" : "false") << "," << r.failures.size()
              << "," << r.runtime_ms << "\n";
  } else {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.target << " (nmax " << r.nmax << ", " << r.runtime_ms << " ms)\n";
    if (!r.failures.empty()) {
      std::cout << "  failures:";
      for (long f : r.failures) std::cout << " " << f;
      std::cout << "\n";
    }
    if (!r.details.is_null()) std::cout << "  " << r.details.dump() << "\n";
  }
}

int run_tables(mmf::Workspace& ws, const std::string& format) {
  mmf::Report r = mmf::suite_tables(ws);
  if (format == "json") {
    std::cout << r.to_json().dump() << "\n";
  } else {
    bool csv = format == "csv";
    std::cout << (csv ? "form,n,golden,computed,match\n" : "form      n   golden                computed\n");
    for (const auto& d : r.details) {
      std::string form = d["form"], expected = d["expected"], computed = d["computed"];
      bool match = d["match"];
      long n = d["n"];
      if (csv) {
        std::cout << form << "," << n << "," << expected << "," << computed << "," << (match ? "true" : "false") << "\n";
      } else {
        std::string pad_form = form + std::string(form.size() < 8 ? 8 - form.size() : 1, ' ');
        std::string pad_exp = expected + std::string(expected.size() < 22 ? 22 - expected.size() : 1, ' ');
        std::cout << pad_form << "  " << (n < 10 ? " " : "") << n << "  " << pad_exp << computed
                  << (match ? "" : "   <-- DIFF") << "\n";
      }
    }
    if (!csv) std::cout << (r.pass ? "0 diffs\n" : std::to_string(r.failures.size()) + " diffs\n");
  }
  return r.pass ? kPass : kFail;
}

struct VerifyOpts {
  std::string target;
  std::optional<long> nmax, d, p, dmax, Dmax, pmax, mmax;
};

std::vector<long> square_free_up_to(long dmax) {
  std::vector<long> ds;
  for (long d = 1; d <= dmax; ++d)
    if (mmf::square_free_G_index(d)) ds.push_back(d);
  return ds;
}

mmf::Report run_verify(mmf::Workspace& ws, const VerifyOpts& o) {
  const std::string& t = o.target;
  if (t == "conjecture1") return mmf::suite_phi_divisibility(o.nmax.value_or(499));
  if (t == "scalar64") return mmf::suite_scalar64(o.nmax.value_or(300));
  if (t == "phi-lift") return mmf::suite_phi_lift(ws, o.nmax.value_or(199));
  if (t == "family") {
    std::vector<long> ds = o.d ? std::vector<long>{*o.d} : square_free_up_to(o.dmax.value_or(23));
    for (long d : ds)
      if (!mmf::square_free_G_index(d))
        throw mmf::DomainError("family needs square-free d = 1, 3, 7 mod 8; got " + std::to_string(d));
    return mmf::suite_family(ws, ds, o.nmax.value_or(199));
  }
  if (t == "hecke") return mmf::suite_hecke(ws, o.d.value_or(1), o.p.value_or(3), o.nmax.value_or(20));
  if (t == "duality") return mmf::suite_duality(ws, o.Dmax.value_or(15), o.dmax.value_or(15));
  if (t == "p3") {
    std::vector<long> ps = o.p ? std::vector<long>{*o.p} : std::vector<long>{3, 5};
    for (long p : ps)
      if (p < 3 || !mmf::is_prime(p)) throw mmf::DomainError("p must be an odd prime; got " + std::to_string(p));
    return mmf::suite_congruences(ws, o.dmax.value_or(23), ps, o.nmax.value_or(50), o.pmax.value_or(99));
  }
  if (t == "representation") return mmf::suite_representation();
  if (t == "structure") return mmf::suite_structural(ws, o.mmax.value_or(15), o.dmax.value_or(31), o.Dmax.value_or(31));
  throw mmf::DomainError("unknown verify target " + t);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact q-expansions of vector-valued modular forms and magnetic divisibility checks"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--terms", cfg.terms, "Justified coefficients to print (indices below N)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--cache-dir", cfg.cache_dir, "Directory for cached basis elements");
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "pretty"}))
      ->capture_default_str();

  std::string kind;
  long index = 0;
  auto* basis = app.add_subcommand("basis", "Print G_d or F_D");
  basis->fallthrough();
  basis->add_option("kind", kind, "G or F")->required()->check(CLI::IsMember({"G", "F"}));
  basis->add_option("index", index, "d for G_d, D for F_D")->required();

  VerifyOpts vo;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->fallthrough();
  verify->add_option("target", vo.target, "Suite to run")
      ->required()
      ->check(CLI::IsMember({"conjecture1", "scalar64", "family", "hecke", "duality", "p3", "representation",
                             "phi-lift", "structure"}));
  verify->add_option("--nmax", vo.nmax, "Coefficient bound (hecke: minimum compared coefficients)")
      ->check(CLI::PositiveNumber);
  verify->add_option("--d", vo.d, "Single index d")->check(CLI::PositiveNumber);
  verify->add_option("--p", vo.p, "Prime p")->check(CLI::PositiveNumber);
  verify->add_option("--dmax", vo.dmax, "Largest d")->check(CLI::PositiveNumber);
  verify->add_option("--Dmax", vo.Dmax, "Largest D")->check(CLI::PositiveNumber);
  verify->add_option("--pmax", vo.pmax, "Largest prime for p^3 | a(p) - p")->check(CLI::PositiveNumber);
  verify->add_option("--mmax", vo.mmax, "Largest m for the vanishing lifts")->check(CLI::PositiveNumber);

  auto* tables = app.add_subcommand("tables", "Recompute the reference tables and diff them");
  tables->fallthrough();
  auto* dump = app.add_subcommand("dump-discform", "Discriminant form, O(A), orbits and matrices as JSON");
  dump->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    mmf::Workspace ws(cache_path(cfg));
    if (*basis) {
      const mmf::BasisEntry& e = kind == "G" ? ws.G(index, cfg.terms) : ws.F(index, cfg.terms);
      print_basis(e, cfg.terms, cfg.format);
      return kPass;
    }
    if (*verify) {
      mmf::Report r = run_verify(ws, vo);
      print_report(r, cfg.format);
      return r.pass ? kPass : kFail;
    }
    if (*tables) return run_tables(ws, cfg.format);
    if (*dump) {
      std::cout << mmf::dump_discform().dump(cfg.format == "pretty" ? 2 : -1) << "\n";
      return kPass;
    }
  } catch (const mmf::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const mmf::PrecisionError& e) {
    std::cerr << "precision error: " << e.what() << "\n";
    return kPrecision;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
