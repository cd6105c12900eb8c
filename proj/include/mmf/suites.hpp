#pragma once

#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "mmf/basis_cache.hpp"
#include "mmf/magnetic.hpp"
#include "mmf/vvforms.hpp"

namespace mmf {

// Largest expansion index bound a Workspace will try to reach.
inline constexpr long kMaxIndexBound = 1000000;

// Basis builders keyed by (max_m, index bound), reused whenever an existing
// one is precise enough, with an optional on-disk cache in front.
class Workspace {
 public:
  explicit Workspace(std::optional<std::filesystem::path> cache_dir = std::nullopt);

  // Make sure a builder covering m <= max_m below `index_bound` exists.
  void reserve(long max_m, long index_bound);
  // Basis elements justified at least below `index_bound`.
  const BasisEntry& G(long d, long index_bound);
  const BasisEntry& F(long D, long index_bound);
  // g~ family serving m <= max_m below `index_bound`.
  const GtildeFamily& family(long max_m, long index_bound);

 private:
  struct Slot {
    long max_m;
    long index_bound;
    std::shared_ptr<BasisBuilder> builder;
  };
  BasisBuilder& builder(long max_m, long index_bound);
  const BasisEntry& get(char kind, long index, long index_bound);

  std::vector<Slot> slots_;
  std::unique_ptr<BasisCache> cache_;
  std::deque<BasisEntry> loaded_;
  std::map<std::pair<char, long>, const BasisEntry*> best_;
};

bool square_free_G_index(long d);

// Each suite returns a Report; `details` carries per-item data.
Report suite_tables(Workspace& ws);
// Phi(G_1) = -4 phi for odd n <= nmax.
Report suite_phi_lift(Workspace& ws, long nmax);
Report suite_phi_divisibility(long nmax);
// n | a_d(n), odd n <= nmax, for each d.
Report suite_family(Workspace& ws, const std::vector<long>& ds, long nmax);
Report suite_hecke(Workspace& ws, long d, long p, long min_compared);
// Prop congruences for square-free d <= dmax, p in ps, n <= nmax; p^3 | a(p) - p for phi, p <= pmax.
Report suite_congruences(Workspace& ws, long dmax, const std::vector<long>& ps, long nmax, long pmax);
// A(D, d) + B(D, d) = 0 for valid D <= Dmax, d <= dmax, computed and from the golden tables.
Report suite_duality(Workspace& ws, long Dmax, long dmax);
// n | a(n) for 64 Delta / E4^2, n <= nmax; plain Delta must first fail at n = 11.
Report suite_scalar64(long nmax);
Report suite_representation();
// B(g~_0) = 0, B(g~_m) = 0 for m = 3 mod 4 up to mmax, and principal part,
// integrality and residues of G_d, F_D up to dmax, Dmax.
Report suite_structural(Workspace& ws, long mmax, long dmax, long Dmax);

}  // namespace mmf
