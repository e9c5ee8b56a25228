#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "charsupp/group.hpp"

namespace charsupp {

struct ParseError : std::runtime_error {
  ParseError(uint32_t line, uint32_t col, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + message),
        line(line),
        col(col) {}
  uint32_t line;
  uint32_t col;
};

struct PcTerm {
  uint32_t gen = 0;  // 1-based generator index
  uint32_t exp = 1;  // 1 .. p-1
  friend bool operator==(const PcTerm&, const PcTerm&) = default;
  friend auto operator<=>(const PcTerm&, const PcTerm&) = default;
};
// Normal-form word: strictly ascending generator indices.
using PcWord = std::vector<PcTerm>;

struct PermSpecData {
  uint32_t degree = 0;
  std::vector<Perm> generators;  // 0-based images
  friend bool operator==(const PermSpecData&, const PermSpecData&) = default;
};

// Power/conjugate relations in normal form; relations equal to the
// defaults (g_i^p = 1; generators commute) are not stored.
struct PcSpecData {
  uint32_t ngens = 0;
  uint32_t prime = 0;
  std::map<uint32_t, PcWord> power;                        // i -> word for g_i^p
  std::map<std::pair<uint32_t, uint32_t>, PcWord> conj;    // (i, j), i < j -> word for g_j^{g_i}
  friend bool operator==(const PcSpecData&, const PcSpecData&) = default;
};

struct GroupSpec {
  enum class Kind { perm, pc };
  Kind kind = Kind::perm;
  PermSpecData perm;
  PcSpecData pc;
  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

// Line-based UTF-8 format with '#' comments:
//   group perm degree=<d>          followed by `gen <i1> ... <id>` lines
//   group pc ngens=<n> prime=<p>   followed by power/conj relation lines
GroupSpec parse_group_file(std::string_view text);

// Canonical serialization; parse(emit(s)) == s and emit(parse(t)) is
// idempotent on any valid document.
std::string emit_group_file(const GroupSpec& spec);

struct RealizeOptions {
  GroupConfig config;
  // Realize a pc spec through the left-regular permutation representation
  // instead of the collector (slow but independent; used as an oracle).
  bool via_regular_representation = false;
};

// perm: closure of the generators. pc: group on normal-form exponent
// vectors multiplied by collection from the left; the presentation is
// rejected loudly unless the collected group has order prime^ngens.
Group realize(const GroupSpec& spec, const RealizeOptions& opts = {});

// Exports a concrete p-group as a pc presentation along a chief series
// (deterministic generator choice), suitable for emit_group_file.
GroupSpec to_pc_spec(const Group& g);

}  // namespace charsupp
