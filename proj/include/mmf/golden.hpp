#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "mmf/exact_arith.hpp"

namespace mmf {

struct GoldenRow {
  char kind = 'G';
  long index = 0;
  // (expansion index, coefficient)
  std::vector<std::pair<long, BigInt>> coeffs;
};

// Reference tables embedded at build time.
const std::vector<GoldenRow>& golden_tables();
std::vector<GoldenRow> parse_golden(std::string_view text);
const GoldenRow& golden_row(char kind, long index);

}  // namespace mmf
