#include "mmf/golden.hpp"

#include <map>
#include <sstream>
#include <string>

#include "mmf/errors.hpp"

namespace mmf {

namespace detail {
extern const char* const kGoldenTables;
}

std::vector<GoldenRow> parse_golden(std::string_view text) {
  std::map<char, std::vector<long>> indices;
  std::vector<GoldenRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "indices") {
      std::string kind;
      ls >> kind;
      if (kind.size() != 2 || kind[1] != ':') throw DomainError("bad indices line: " + line);
      long n;
      while (ls >> n) indices[kind[0]].push_back(n);
      continue;
    }
    if (head != "G" && head != "F") throw DomainError("bad golden line: " + line);
    GoldenRow row;
    row.kind = head[0];
    std::string idx;
    ls >> idx;
    if (idx.empty() || idx.back() != ':') throw DomainError("bad golden line: " + line);
    row.index = std::stol(idx.substr(0, idx.size() - 1));
    const auto& cols = indices.at(row.kind);
    std::string tok;
    for (long n : cols) {
      if (!(ls >> tok)) throw DomainError("short golden row: " + line);
      row.coeffs.emplace_back(n, BigInt(tok));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

const std::vector<GoldenRow>& golden_tables() {
  static const std::vector<GoldenRow> rows = parse_golden(detail::kGoldenTables);
  return rows;
}

const GoldenRow& golden_row(char kind, long index) {
  for (const auto& r : golden_tables())
    if (r.kind == kind && r.index == index) return r;
  throw DomainError(std::string("no reference row for ") + kind + std::to_string(index));
}

}  // namespace mmf
