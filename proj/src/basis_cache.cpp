#include "mmf/basis_cache.hpp"

#include <fstream>

#include "mmf/errors.hpp"

namespace mmf {

nlohmann::json basis_entry_to_json(const BasisEntry& e) {
  return {{"kind", std::string(1, e.kind)},
          {"index", e.index},
          {"order", e.form.index_bound()},
          {"components", e.form.to_json()},
          {"provenance", e.provenance.to_json()},
          {"format_version", kCacheFormatVersion}};
}

BasisEntry basis_entry_from_json(const nlohmann::json& j) {
  if (j.at("format_version").get<int>() != kCacheFormatVersion) throw DomainError("cache format version mismatch");
  BasisEntry e;
  std::string kind = j.at("kind").get<std::string>();
  if (kind != "G" && kind != "F") throw DomainError("bad cache kind " + kind);
  e.kind = kind[0];
  e.index = j.at("index").get<long>();
  e.form = VVForm::from_json(j.at("components"));
  e.provenance = Provenance::from_json(j.at("provenance"));
  return e;
}

BasisCache::BasisCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path BasisCache::path_for(char kind, long index) const {
  return dir_ / (std::string(1, kind) + "_" + std::to_string(index) + ".json");
}

std::optional<BasisEntry> BasisCache::load(char kind, long index, long index_bound) const {
  std::ifstream in(path_for(kind, index));
  if (!in) return std::nullopt;
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.value("format_version", -1) != kCacheFormatVersion) return std::nullopt;
    if (j.at("order").get<long>() < index_bound) return std::nullopt;
    BasisEntry e = basis_entry_from_json(j);
    if (e.kind != kind || e.index != index) return std::nullopt;
    return e;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void BasisCache::store(const BasisEntry& e) {
  std::lock_guard<std::mutex> lock(write_mu_);
  std::filesystem::create_directories(dir_);
  auto target = path_for(e.kind, e.index);
  if (auto existing = load(e.kind, e.index, e.form.index_bound()); existing && existing->form.index_bound() > e.form.index_bound())
    return;
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << basis_entry_to_json(e).dump() << "\n";
    if (!out) throw std::runtime_error("failed to write " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace mmf
