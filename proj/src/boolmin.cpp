#include "decmon/boolmin.hpp"

#include <algorithm>
#include <set>

namespace decmon {

namespace {

// Expands a term into the letters it covers.
std::vector<std::uint32_t> covered(const Term& t, int num_vars) {
  std::vector<std::uint32_t> out;
  std::uint32_t free_mask = ~t.mask & ((1u << num_vars) - 1);
  // Enumerate subsets of the free bits.
  std::uint32_t sub = 0;
  do {
    out.push_back(t.value | sub);
    sub = (sub - free_mask) & free_mask;
  } while (sub != 0);
  return out;
}

}  // namespace

std::vector<Term> minimize_dnf(const std::vector<bool>& letters, int num_vars) {
  std::vector<std::uint32_t> minterms;
  for (std::uint32_t l = 0; l < letters.size(); ++l)
    if (letters[l]) minterms.push_back(l);
  if (minterms.empty()) return {};
  if (minterms.size() == letters.size()) return {Term{0, 0}};  // tautology

  // Quine-McCluskey merging: combine terms differing in one cared bit.
  std::set<std::pair<std::uint32_t, std::uint32_t>> cur;  // (mask, value)
  for (std::uint32_t m : minterms) cur.insert({(1u << num_vars) - 1, m});
  std::vector<Term> primes;
  while (!cur.empty()) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> next;
    std::set<std::pair<std::uint32_t, std::uint32_t>> merged;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> v(cur.begin(), cur.end());
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        if (v[i].first != v[j].first) continue;
        std::uint32_t diff = v[i].second ^ v[j].second;
        if (diff == 0 || (diff & (diff - 1)) != 0) continue;
        next.insert({v[i].first & ~diff, v[i].second & ~diff});
        merged.insert(v[i]);
        merged.insert(v[j]);
      }
    }
    for (const auto& t : v)
      if (!merged.count(t)) primes.push_back(Term{t.first, t.second});
    cur = std::move(next);
  }

  // Exact cover: essential primes first, then branch and bound.
  std::vector<std::vector<std::uint32_t>> cover(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) cover[i] = covered(primes[i], num_vars);

  std::vector<std::uint32_t> remaining = minterms;
  std::vector<int> chosen;
  for (;;) {
    bool found = false;
    for (std::uint32_t m : remaining) {
      int only = -1;
      for (std::size_t i = 0; i < primes.size(); ++i) {
        if (std::find(cover[i].begin(), cover[i].end(), m) != cover[i].end()) {
          if (only == -1)
            only = static_cast<int>(i);
          else {
            only = -2;
            break;
          }
        }
      }
      if (only >= 0 && std::find(chosen.begin(), chosen.end(), only) == chosen.end()) {
        chosen.push_back(only);
        found = true;
      }
    }
    std::vector<std::uint32_t> still;
    for (std::uint32_t m : remaining) {
      bool cov = false;
      for (int i : chosen)
        cov = cov || std::find(cover[i].begin(), cover[i].end(), m) != cover[i].end();
      if (!cov) still.push_back(m);
    }
    remaining = std::move(still);
    if (!found || remaining.empty()) break;
  }

  if (!remaining.empty()) {
    // Branch and bound over the non-essential primes.
    std::vector<int> best;
    bool have_best = false;
    std::vector<int> pick;
    auto recurse = [&](auto&& self, std::vector<std::uint32_t> todo) -> void {
      if (todo.empty()) {
        if (!have_best || pick.size() < best.size()) {
          best = pick;
          have_best = true;
        }
        return;
      }
      if (have_best && pick.size() + 1 >= best.size()) return;  // cannot improve
      std::uint32_t m = todo.front();
      for (std::size_t i = 0; i < primes.size(); ++i) {
        if (std::find(cover[i].begin(), cover[i].end(), m) == cover[i].end()) continue;
        if (std::find(pick.begin(), pick.end(), static_cast<int>(i)) != pick.end()) continue;
        pick.push_back(static_cast<int>(i));
        std::vector<std::uint32_t> rest;
        for (std::uint32_t x : todo)
          if (std::find(cover[i].begin(), cover[i].end(), x) == cover[i].end()) rest.push_back(x);
        self(self, std::move(rest));
        pick.pop_back();
      }
    };
    recurse(recurse, remaining);
    for (int i : best) chosen.push_back(i);
  }

  std::sort(chosen.begin(), chosen.end());
  std::vector<Term> out;
  for (int i : chosen) out.push_back(primes[i]);
  // Deterministic order: by mask, then value.
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
    return a.mask != b.mask ? a.mask < b.mask : a.value < b.value;
  });
  return out;
}

}  // namespace decmon
