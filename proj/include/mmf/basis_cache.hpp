#pragma once

#include <filesystem>
#include <mutex>
#include <optional>

#include <json.hpp>

#include "mmf/vvforms.hpp"

namespace mmf {

inline constexpr int kCacheFormatVersion = 1;

nlohmann::json basis_entry_to_json(const BasisEntry& e);
BasisEntry basis_entry_from_json(const nlohmann::json& j);

// One JSON file per basis element. Entries with another format version are
// ignored (and overwritten on the next store), never migrated.
class BasisCache {
 public:
  explicit BasisCache(std::filesystem::path dir);

  std::filesystem::path path_for(char kind, long index) const;
  // Cached entry whose expansion is justified at least below `index_bound`.
  std::optional<BasisEntry> load(char kind, long index, long index_bound) const;
  void store(const BasisEntry& e);

 private:
  std::filesystem::path dir_;
  std::mutex write_mu_;
};

}  // namespace mmf
