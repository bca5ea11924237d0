#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "zetalab/hp/real.hpp"

namespace zetalab {

// Positive ordinates of nontrivial zeta zeros in increasing order, kept as
// decimal text so that each consumer parses at its own precision.
struct ZeroTable {
  std::vector<std::string> ordinates;
  std::string source;
  std::string sha256;  // of the raw bytes, when known

  std::size_t size() const { return ordinates.size(); }
  // First `count` ordinates (all if count == 0) at `bits`.
  std::vector<hp::Real> values(hp::Precision bits, std::size_t count = 0) const;
};

// One ordinate per line; blank lines and lines starting with '#' are skipped.
// Throws ParseError on malformed lines or an empty table, ValidationError if
// the ordinates do not increase or the first one is outside (14, 15).
ZeroTable parse_zero_table(std::string_view text, std::string source = {});
// Reads and parses a local file. Throws Error if the file is unreadable.
ZeroTable load_zero_table(const std::string& path);

}  // namespace zetalab
