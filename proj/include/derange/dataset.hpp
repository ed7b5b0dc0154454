#pragma once

#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "blocks.hpp"
#include "group.hpp"

namespace derange {

/// One `group ... end` stanza of a group dataset file.
struct GroupDatasetEntry {
  unsigned degree = 0;
  std::string label;
  std::vector<std::string> generator_strings;
  std::optional<std::size_t> claimed_order;
  std::optional<bool> claimed_primitive;
  std::size_t line = 0;  // line of the `group` keyword
};

class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IngestedGroup {
  GroupDatasetEntry entry;
  PermutationGroup group;
};

/// Parses the line-oriented dataset format (see docs/group-dataset-format.md):
///
///   group <label>
///   degree <n>
///   order <m>            (optional)
///   primitive yes|no     (optional)
///   gen <cycle notation> (zero or more)
///   end
///
/// Blank lines and lines starting with '#' are ignored.
inline std::vector<GroupDatasetEntry> parse_group_dataset(std::istream& in, const std::string& source = "<input>") {
  std::vector<GroupDatasetEntry> entries;
  std::optional<GroupDatasetEntry> current;
  std::vector<std::pair<std::string, std::size_t>> pending_gens;
  std::string raw;
  std::size_t lineno = 0;

  auto fail = [&](const std::string& why) -> void {
    throw DatasetError(source + ":" + std::to_string(lineno) + ": " + why);
  };
  auto parse_count = [&](const std::string& value, const char* what) -> std::size_t {
    if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos) {
      fail(std::string("invalid ") + what + " '" + value + "'");
    }
    try {
      return std::stoull(value);
    } catch (const std::out_of_range&) {
      fail(std::string(what) + " out of range");
    }
    return 0;
  };

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    line = line.substr(first);

    const auto space = line.find_first_of(" \t");
    const std::string keyword = line.substr(0, space);
    std::string value;
    if (space != std::string::npos) {
      const auto v = line.find_first_not_of(" \t", space);
      if (v != std::string::npos) value = line.substr(v);
    }

    if (keyword == "group") {
      if (current) fail("'group' before 'end' of previous group");
      if (value.empty()) fail("'group' needs a label");
      current = GroupDatasetEntry{};
      current->label = value;
      current->line = lineno;
      pending_gens.clear();
      continue;
    }
    if (!current) fail("'" + keyword + "' outside a group stanza");

    if (keyword == "degree") {
      if (current->degree != 0) fail("duplicate 'degree'");
      const auto d = parse_count(value, "degree");
      if (d < 1 || d > kMaxDegree) fail("degree must be in 1..16");
      current->degree = static_cast<unsigned>(d);
    } else if (keyword == "order") {
      if (current->claimed_order) fail("duplicate 'order'");
      current->claimed_order = parse_count(value, "order");
    } else if (keyword == "primitive") {
      if (value != "yes" && value != "no") fail("'primitive' must be yes or no");
      current->claimed_primitive = value == "yes";
    } else if (keyword == "gen") {
      pending_gens.emplace_back(value, lineno);
    } else if (keyword == "end") {
      if (current->degree == 0) fail("group '" + current->label + "' has no degree");
      for (const auto& [text, at] : pending_gens) {
        try {
          (void)parse_cycles(text, current->degree);
        } catch (const ParseError& e) {
          lineno = at;
          fail(e.what());
        }
        current->generator_strings.push_back(text);
      }
      entries.push_back(std::move(*current));
      current.reset();
    } else {
      fail("unknown keyword '" + keyword + "'");
    }
  }
  if (current) {
    ++lineno;
    fail("missing 'end' for group '" + current->label + "'");
  }
  return entries;
}

/// Closes every entry's generators and re-validates the file's claims.
inline std::vector<IngestedGroup> ingest_group_dataset(std::istream& in, const std::string& source = "<input>",
                                                      std::size_t order_cap = kDefaultOrderCap) {
  std::vector<IngestedGroup> out;
  for (auto& entry : parse_group_dataset(in, source)) {
    const std::string where = source + ":" + std::to_string(entry.line) + ": group '" + entry.label + "': ";
    std::vector<Permutation> gens;
    for (const auto& s : entry.generator_strings) gens.push_back(parse_cycles(s, entry.degree));
    PermutationGroup g;
    try {
      g = PermutationGroup::closure(entry.degree, std::move(gens), order_cap);
    } catch (const ClosureCapExceeded& e) {
      throw DatasetError(where + e.what());
    }
    if (entry.claimed_order && *entry.claimed_order != g.order()) {
      throw DatasetError(where + "claimed order " + std::to_string(*entry.claimed_order) +
                         " but generators give " + std::to_string(g.order()));
    }
    if (entry.claimed_primitive && *entry.claimed_primitive != is_primitive(g)) {
      throw DatasetError(where + "primitivity claim does not hold");
    }
    out.push_back({std::move(entry), std::move(g)});
  }
  return out;
}

inline std::vector<IngestedGroup> ingest_group_file(const std::string& path, std::size_t order_cap = kDefaultOrderCap) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open group dataset '" + path + "'");
  return ingest_group_dataset(in, path, order_cap);
}

}  // namespace derange
