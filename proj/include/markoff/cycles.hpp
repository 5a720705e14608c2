#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "markoff/action.hpp"
#include "markoff/surface.hpp"

namespace markoff {

/// Cycle type of a permutation.
struct CycleSummary {
  std::size_t n = 0;
  std::map<std::uint64_t, std::uint64_t> histogram;  // cycle length -> multiplicity
  std::uint64_t longest = 0;
  std::uint64_t fixed_count = 0;
  std::uint64_t cycle_count = 0;
  int sign = 1;
};

/// Iterative visited-bitmap walk; no recursion, O(n) time.
inline CycleSummary decompose(const Permutation& perm) {
  CycleSummary out;
  out.n = perm.size();
  std::vector<bool> visited(perm.size(), false);
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (visited[start]) continue;
    std::uint64_t len = 0;
    std::size_t i = start;
    do {
      visited[i] = true;
      i = perm(i);
      ++len;
    } while (i != start);
    ++out.histogram[len];
    ++out.cycle_count;
    if (len > out.longest) out.longest = len;
  }
  auto it = out.histogram.find(1);
  out.fixed_count = it == out.histogram.end() ? 0 : it->second;
  out.sign = (out.n - out.cycle_count) % 2 == 0 ? 1 : -1;
  return out;
}

inline std::uint64_t longest_orbit(const GenWord& w, const PointTable& table, unsigned threads = 0) {
  if (table.empty()) return 0;
  return decompose(compile(w, table, threads)).longest;
}

inline std::uint64_t longest_orbit(const GenWord& w, const PrimeModulus& mod, i64 kappa, Space space,
                                   unsigned threads = 0) {
  return longest_orbit(w, enumerate(mod, kappa, space), threads);
}

/// Points of the table fixed by w, in table (lexicographic) order.
inline std::vector<SurfacePoint> fixed_points(const GenWord& w, const PointTable& table) {
  std::vector<SurfacePoint> out;
  const Permutation perm = compile(w, table, 1);
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm(i) == i) out.push_back(table[i]);
  return out;
}

inline std::vector<SurfacePoint> fixed_points(const GenWord& w, const PrimeModulus& mod, i64 kappa, Space space) {
  return fixed_points(w, enumerate(mod, kappa, space));
}

/// Signs of m1 and of the transposition (1 2) on the N-orbit quotient.
struct ParityProfile {
  int m_sign = 1;
  int swap_sign = 1;
  bool all_even = true;
};

inline ParityProfile parity_profile(const PointTable& quotient) {
  if (quotient.space() != Space::NOrbitQuotient) throw std::invalid_argument("parity profile needs the quotient table");
  ParityProfile out;
  out.m_sign = decompose(compile({Generator::M1}, quotient)).sign;
  out.swap_sign = decompose(compile({Generator::Swap12}, quotient)).sign;
  out.all_even = out.m_sign == 1 && out.swap_sign == 1;
  return out;
}

inline ParityProfile parity_profile(const PrimeModulus& mod) {
  if (mod.value() <= 3) throw std::invalid_argument("parity profile requires p > 3");
  return parity_profile(enumerate(mod, -2, Space::NOrbitQuotient));
}

}  // namespace markoff
