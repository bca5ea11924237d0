#include "zetalab/zero_table.hpp"

#include <fstream>
#include <sstream>

#include "zetalab/error.hpp"

namespace zetalab {

std::vector<hp::Real> ZeroTable::values(hp::Precision bits, std::size_t count) const {
  if (count == 0 || count > ordinates.size()) count = ordinates.size();
  std::vector<hp::Real> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(hp::Real::parse(ordinates[i], bits));
  return out;
}

ZeroTable parse_zero_table(std::string_view text, std::string source) {
  ZeroTable t;
  t.source = std::move(source);
  std::size_t line_no = 0;
  double prev = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (line.empty() || line.front() == '#') continue;
    hp::Real v;
    try {
      v = hp::Real::parse(line, 128);
    } catch (const ParseError&) {
      throw ParseError("zero table line " + std::to_string(line_no) + ": not a number");
    }
    const double d = v.to_double();
    if (!(d > prev))
      throw ValidationError("zero table line " + std::to_string(line_no) + ": ordinates must increase");
    prev = d;
    t.ordinates.emplace_back(line);
  }
  if (t.ordinates.empty()) throw ParseError("zero table is empty");
  // The first zeta zero is 14.1347...; anything else is not a zeta table.
  const double first = hp::Real::parse(t.ordinates.front(), 64).to_double();
  if (!(first > 14 && first < 15))
    throw ValidationError("zero table: first ordinate " + t.ordinates.front() + " is not in (14, 15)");
  return t;
}

ZeroTable load_zero_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read zero table " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_zero_table(ss.str(), path);
}

}  // namespace zetalab
