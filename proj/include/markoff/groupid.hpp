#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "markoff/action.hpp"
#include "markoff/cycles.hpp"
#include "markoff/modarith.hpp"
#include "markoff/parallel.hpp"
#include "markoff/surface.hpp"

namespace markoff {

enum class Certification { ContainsAlternating, Unknown };
enum class GroupClass { A_n, S_n, Unknown };

inline std::string_view certification_name(Certification c) {
  return c == Certification::ContainsAlternating ? "ContainsAlternating" : "Unknown";
}
inline std::string_view group_class_name(GroupClass g) {
  switch (g) {
    case GroupClass::A_n: return "A_n";
    case GroupClass::S_n: return "S_n";
    default: return "Unknown";
  }
}

/// Generators of the action on the N-orbit quotient.
inline constexpr std::array<Generator, 6> kQuotientGenerators{
    Generator::M1, Generator::M2, Generator::M3, Generator::Swap12, Generator::Swap13, Generator::Swap23};

/// Union-find over {0, ..., n-1}.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }
  std::uint32_t find(std::uint32_t a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::uint32_t> parent_;
};

inline bool is_transitive(const std::vector<Permutation>& gens, std::size_t n) {
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> queue{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& g : gens) {
      std::uint32_t j = g(queue[head]);
      if (!seen[j]) {
        seen[j] = 1;
        queue.push_back(j);
      }
    }
  }
  return queue.size() == n;
}

/// The smallest block of imprimitivity containing alpha and beta, as a
/// sorted list (Atkinson's union-find refinement).
inline std::vector<std::uint32_t> minimal_block(const std::vector<Permutation>& gens, std::size_t n,
                                                std::uint32_t alpha, std::uint32_t beta) {
  UnionFind uf(n);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pending;
  if (uf.unite(alpha, beta)) pending.emplace_back(alpha, beta);
  while (!pending.empty()) {
    auto [a, b] = pending.back();
    pending.pop_back();
    for (const auto& g : gens) {
      std::uint32_t ga = uf.find(g(a)), gb = uf.find(g(b));
      if (ga != gb) {
        uf.unite(ga, gb);
        pending.emplace_back(ga, gb);
      }
    }
  }
  std::vector<std::uint32_t> block;
  const std::uint32_t root = uf.find(alpha);
  for (std::uint32_t i = 0; i < n; ++i)
    if (uf.find(i) == root) block.push_back(i);
  return block;
}

/// For a transitive group: every pair {0, beta} generates the whole set.
inline bool is_primitive(const std::vector<Permutation>& gens, std::size_t n) {
  for (std::uint32_t beta = 1; beta < n; ++beta)
    if (minimal_block(gens, n, 0, beta).size() != n) return false;
  return true;
}

/// A prime q such that some power of a permutation with this cycle type is a
/// single q-cycle: exactly one cycle has length q and no other length is
/// divisible by q. Returns the largest such q <= n - 3.
inline std::optional<std::uint64_t> jordan_prime(const CycleSummary& cs) {
  if (cs.n < 5) return std::nullopt;
  std::optional<std::uint64_t> best;
  for (const auto& [len, mult] : cs.histogram) {
    if (mult != 1 || len + 3 > cs.n || !is_prime(len)) continue;
    bool unique = true;
    for (const auto& [other, c] : cs.histogram)
      if (other != len && other % len == 0) unique = false;
    if (unique && (!best || len > *best)) best = len;
  }
  return best;
}

struct GroupReport {
  std::uint64_t p = 0;
  std::size_t n = 0;
  bool transitive = false;
  bool primitive = false;
  bool all_generators_even = false;
  Certification certified = Certification::Unknown;
  GroupClass classification = GroupClass::Unknown;
  std::string jordan_word;       // empty unless certified
  std::uint64_t jordan_prime = 0;  // 0 unless certified
  std::size_t words_examined = 0;
};

namespace detail {

inline PointTable quotient_table(std::uint64_t p) {
  if (p <= 3) throw std::invalid_argument("group identification requires p > 3");
  return enumerate(PrimeModulus(p), -2, Space::NOrbitQuotient);
}

inline std::vector<Permutation> quotient_generators(const PointTable& table) {
  std::vector<Permutation> gens;
  for (Generator g : kQuotientGenerators) gens.push_back(compile({g}, table, 1));
  return gens;
}

// Relabelings of the generators induced by conjugating with a permutation
// of the coordinates: sigma m_i sigma^-1 = m_sigma(i), and likewise for the
// transpositions. Indices follow kQuotientGenerators.
inline const std::array<std::array<std::uint8_t, 6>, 6>& coordinate_relabelings() {
  static const auto table = [] {
    std::array<std::array<std::uint8_t, 6>, 6> out{};
    std::array<int, 3> sigma{0, 1, 2};
    auto swap_index = [](int i, int j) -> std::uint8_t {
      if (i > j) std::swap(i, j);
      return i == 0 ? (j == 1 ? 3 : 4) : 5;  // s12, s13, s23
    };
    const std::array<std::pair<int, int>, 3> swaps{{{0, 1}, {0, 2}, {1, 2}}};
    for (int k = 0; k < 6; ++k) {
      for (int i = 0; i < 3; ++i) out[k][i] = static_cast<std::uint8_t>(sigma[i]);
      for (int s = 0; s < 3; ++s) out[k][3 + s] = swap_index(sigma[swaps[s].first], sigma[swaps[s].second]);
      std::next_permutation(sigma.begin(), sigma.end());
    }
    return out;
  }();
  return table;
}

// Whether w is the least word among its rotations, its reversal's rotations
// and their coordinate relabelings. All generators are involutions, so these
// are conjugates of w or of its inverse and share its cycle type.
inline bool is_least_in_class(const std::vector<std::uint8_t>& w) {
  const std::size_t n = w.size();
  const std::vector<std::uint8_t> rev(w.rbegin(), w.rend());
  for (const auto& relabel : coordinate_relabelings()) {
    for (const auto* src : {&w, &rev}) {
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t i = 0; i < n; ++i) {
          const std::uint8_t a = relabel[(*src)[(r + i) % n]];
          const std::uint8_t b = w[i];
          if (a < b) return false;
          if (a > b) break;
        }
      }
    }
  }
  return true;
}

// Cyclically reduced words over the six involutions, one per class of
// rotations, reversals and coordinate relabelings, by length and then
// lexicographically.
inline std::vector<std::vector<std::uint8_t>> word_schedule(std::size_t budget) {
  std::vector<std::vector<std::uint8_t>> out;
  std::vector<std::vector<std::uint8_t>> layer{{}};
  const auto k = static_cast<std::uint8_t>(kQuotientGenerators.size());
  while (out.size() < budget && !layer.empty()) {
    std::vector<std::vector<std::uint8_t>> next;
    for (const auto& w : layer) {
      for (std::uint8_t g = 0; g < k; ++g) {
        if (!w.empty() && w.back() == g) continue;
        auto v = w;
        v.push_back(g);
        if ((v.size() == 1 || v.front() != v.back()) && is_least_in_class(v)) {
          out.push_back(v);
          if (out.size() == budget) return out;
        }
        next.push_back(std::move(v));
      }
    }
    layer = std::move(next);
  }
  return out;
}

}  // namespace detail

inline bool transitivity(std::uint64_t p) {
  const PointTable table = detail::quotient_table(p);
  return is_transitive(detail::quotient_generators(table), table.size());
}

struct JordanWitness {
  GenWord word;
  std::uint64_t prime;
  std::size_t examined;
};

/// First word in schedule order whose permutation has a power that is a
/// q-cycle with q prime and q <= n - 3. Candidates are evaluated in
/// parallel batches; the reduction keeps schedule order.
inline std::optional<JordanWitness> find_jordan_element(const std::vector<Permutation>& gens, std::size_t budget,
                                                        unsigned threads = 0) {
  const auto schedule = detail::word_schedule(budget);
  const std::size_t batch = 256;
  for (std::size_t start = 0; start < schedule.size(); start += batch) {
    const std::size_t stop = std::min(schedule.size(), start + batch);
    std::vector<std::uint64_t> found(stop - start, 0);
    parallel_for(
        stop - start, threads,
        [&](std::size_t b, std::size_t e) {
          for (std::size_t i = b; i < e; ++i) {
            const auto& w = schedule[start + i];
            Permutation perm = gens[w.back()];
            for (std::size_t k = w.size() - 1; k-- > 0;) perm = compose(gens[w[k]], perm);
            if (auto q = jordan_prime(decompose(perm))) found[i] = *q;
          }
        },
        16);
    for (std::size_t i = 0; i < found.size(); ++i) {
      if (found[i] == 0) continue;
      GenWord word;
      for (auto g : schedule[start + i]) word.push_back(kQuotientGenerators[g]);
      return JordanWitness{std::move(word), found[i], start + i + 1};
    }
  }
  return std::nullopt;
}

inline Certification certify_alternating(std::uint64_t p, std::size_t budget = 5000, unsigned threads = 0) {
  const PointTable table = detail::quotient_table(p);
  const auto gens = detail::quotient_generators(table);
  if (!is_transitive(gens, table.size()) || !is_primitive(gens, table.size())) return Certification::Unknown;
  return find_jordan_element(gens, budget, threads) ? Certification::ContainsAlternating : Certification::Unknown;
}

inline GroupReport classify(std::uint64_t p, std::size_t budget = 5000, unsigned threads = 0) {
  const PointTable table = detail::quotient_table(p);
  const auto gens = detail::quotient_generators(table);
  GroupReport r;
  r.p = p;
  r.n = table.size();
  r.transitive = is_transitive(gens, r.n);
  r.all_generators_even = true;
  for (const auto& g : gens) r.all_generators_even = r.all_generators_even && decompose(g).sign == 1;
  if (!r.transitive) return r;
  r.primitive = is_primitive(gens, r.n);
  if (!r.primitive) return r;
  auto witness = find_jordan_element(gens, budget, threads);
  r.words_examined = witness ? witness->examined : budget;
  if (!witness) return r;
  r.certified = Certification::ContainsAlternating;
  r.jordan_word = format_word(witness->word);
  r.jordan_prime = witness->prime;
  r.classification = r.all_generators_even ? GroupClass::A_n : GroupClass::S_n;
  return r;
}

}  // namespace markoff
