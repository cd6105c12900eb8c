// One line per acceptance criterion. All comparisons are exact (tolerance 0).
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "mmf/suites.hpp"

using namespace mmf;

namespace {

struct Outcome {
  bool pass = false;
  std::string summary;
};

std::string join(const std::vector<long>& v, std::size_t max = 10) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size() && i < max; ++i) os << (i ? "," : "") << v[i];
  if (v.size() > max) os << ",...";
  return os.str();
}

Outcome from_report(const Report& r, const std::string& what) {
  Outcome o{r.pass, what};
  if (!r.pass) o.summary += "; failures at " + join(r.failures);
  return o;
}

int failed = 0;

void run(int number, const std::string& name, const std::function<Outcome()>& f) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = f();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failed;
  std::printf("[%s] %2d %s: %s (tol 0, %.1f s)\n", o.pass ? "PASS" : "FAIL", number, name.c_str(), o.summary.c_str(), s);
  std::fflush(stdout);
}

}  // namespace

int main() {
  Workspace ws;
  auto t0 = std::chrono::steady_clock::now();

  run(1, "table reproduction", [&] {
    Report r = suite_tables(ws);
    return from_report(r, std::to_string(r.details.size()) + " printed coefficients of 12 forms compared");
  });

  // One deep family for the lifts, one wide family for the high indices.
  ws.reserve(12, 199 * 199 + 1);
  ws.reserve(113, 105);

  run(2, "Phi(G_1) = -4 phi", [&] {
    Report r = suite_phi_lift(ws, 199);
    std::string a;
    for (const auto& d : r.details) a += (a.empty() ? "" : ", ") + d["a"].get<std::string>();
    return from_report(r, "odd n <= 199; a(1..9) = (" + a + ")");
  });

  run(3, "n | a(n) for phi", [&] { return from_report(suite_phi_divisibility(499), "n <= 499"); });

  run(4, "n | a_d(n) for the family", [&] {
    return from_report(suite_family(ws, {1, 3, 7, 11, 15, 19, 23}, 199), "d in {1,3,7,11,15,19,23}, odd n <= 199");
  });

  run(5, "Hecke identities", [&] {
    Outcome o{true, ""};
    long least = -1;
    for (long d : {1, 3, 7, 9})
      for (long p : {3, 5}) {
        Report r = suite_hecke(ws, d, p, 20);
        long compared = r.details["compared"];
        least = least < 0 ? compared : std::min(least, compared);
        if (!r.pass) {
          o.pass = false;
          o.summary += "(" + std::to_string(d) + "," + std::to_string(p) + ") failed at " + join(r.failures) + "; ";
        }
      }
    o.summary += "(d, p) in {1,3,7,9} x {3,5}, at least " + std::to_string(least) + " coefficients each";
    return o;
  });

  run(6, "mod p^3 congruences", [&] {
    return from_report(suite_congruences(ws, 23, {3, 5}, 50, 99),
                       "square-free d <= 23, p in {3,5}, n <= 50; p^3 | a(p) - p for odd p < 100");
  });

  run(7, "Zagier duality", [&] {
    Report r = suite_duality(ws, 97, 95);
    return from_report(r, std::to_string(r.details["pairs"].get<long>()) + " pairs with D <= 97, d <= 95");
  });

  run(8, "n | a(n) for 64 Delta / E4^2", [&] {
    Report r = suite_scalar64(300);
    return from_report(r, "n <= 300; Delta first fails at n = " + std::to_string(r.details["delta_first_failure"].get<long>()));
  });

  run(9, "representation suite", [&] {
    Report r = suite_representation();
    Outcome o{r.pass, ""};
    for (const auto& c : r.details) {
      std::printf("       %s %s%s\n", c["pass"].get<bool>() ? "ok  " : "FAIL", c["check"].get<std::string>().c_str(),
                  c["detail"].get<std::string>().empty() ? "" : (" (" + c["detail"].get<std::string>() + ")").c_str());
      if (!c["pass"].get<bool>()) o.summary += (o.summary.empty() ? "" : "; ") + c["check"].get<std::string>();
    }
    o.summary = o.pass ? std::to_string(r.details.size()) + " checks" : "failed: " + o.summary;
    return o;
  });

  run(10, "structural checks", [&] {
    Report r = suite_structural(ws, 15, 95, 97);
    return from_report(r, "B(g~_m) = 0 for m = 0 and m = 3 mod 4 <= 15; principal part, integrality, residues of "
                           "G_d (d <= 95) and F_D (D <= 97)");
  });

  double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d of 10 criteria failed (%.1f s)\n", failed, total);
  return failed == 0 ? 0 : 1;
}
