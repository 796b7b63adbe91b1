#pragma once

#include <cstdint>
#include <vector>

namespace decmon {

// A conjunction of literals over num_vars variables: a variable is in the
// term iff its mask bit is set; its polarity is then the value bit.
struct Term {
  std::uint32_t mask = 0;
  std::uint32_t value = 0;

  bool matches(std::uint32_t letter) const { return (letter & mask) == value; }
  friend bool operator==(const Term&, const Term&) = default;
};

// Minimal disjunction of conjunctive terms covering exactly the given set of
// letters (Quine-McCluskey prime implicants + exact minimum cover).
// `letters[l]` says whether letter l is in the set; letters.size() == 2^num_vars.
std::vector<Term> minimize_dnf(const std::vector<bool>& letters, int num_vars);

}  // namespace decmon
