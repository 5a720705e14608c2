#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "markoff/action.hpp"
#include "markoff/cycles.hpp"
#include "markoff/fricke.hpp"
#include "markoff/groupid.hpp"
#include "markoff/modarith.hpp"
#include "markoff/surface.hpp"
#include "markoff/words.hpp"

namespace markoff {

/// Odd primes in [lo, hi], ascending.
inline std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = std::max<std::uint64_t>(lo, 3); p <= hi; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

/// Runs job(i) for i in [0, n) on a pool pulling indices from a shared
/// counter. Exceptions are rethrown on the caller.
template <class Job>
void run_pool(std::size_t n, unsigned threads, Job&& job) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        job(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------
// Longest-orbit records

struct SweepRecord {
  std::string word;
  std::uint64_t p = 0;
  std::uint64_t n = 0;
  std::uint64_t longest = 0;
  double ratio_p = 0;
  double ratio_p2 = 0;
  bool ambiguous = false;
  std::uint64_t elapsed_ms = 0;
};

/// Ambiguity of the conjugacy class of the word's matrix; false for words
/// that are not hyperbolic or contain sign changes.
inline bool word_is_ambiguous(const GenWord& w) {
  if (std::any_of(w.begin(), w.end(), is_sign_change)) return false;
  const MatrixClass mc = classify_matrix(word_to_matrix(w));
  return mc.ambiguous.value_or(false);
}

inline SweepRecord measure(const GenWord& w, std::uint64_t p, i64 kappa = -2, Space space = Space::NOrbitQuotient,
                           unsigned threads = 1, bool timing = false) {
  const auto t0 = std::chrono::steady_clock::now();
  const PointTable table = enumerate(PrimeModulus(p), kappa, space);
  SweepRecord r;
  r.word = format_word(w);
  r.p = p;
  r.n = table.size();
  r.longest = longest_orbit(w, table, threads);
  r.ratio_p = static_cast<double>(r.longest) / static_cast<double>(p);
  r.ratio_p2 = static_cast<double>(r.longest) / (static_cast<double>(p) * static_cast<double>(p) / 4.0);
  r.ambiguous = word_is_ambiguous(w);
  if (timing)
    r.elapsed_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count());
  return r;
}

/// One record per prime in [pmin, pmax], ascending, computed in parallel
/// across primes.
inline std::vector<SweepRecord> sweep(const GenWord& w, std::uint64_t pmin, std::uint64_t pmax, i64 kappa = -2,
                                      Space space = Space::NOrbitQuotient, unsigned threads = 0, bool timing = false) {
  if (pmin > pmax) throw std::invalid_argument("sweep needs pmin <= pmax");
  const auto primes = primes_in(pmin, pmax);
  std::vector<SweepRecord> out(primes.size());
  run_pool(primes.size(), threads, [&](std::size_t i) { out[i] = measure(w, primes[i], kappa, space, 1, timing); });
  return out;
}

inline constexpr const char* kSweepCsvHeader = "word,p,n,longest,ratio_p,ratio_p2,ambiguous,elapsed_ms";

inline std::string format_ratio(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline void write_sweep_csv_row(std::ostream& os, const SweepRecord& r) {
  os << '"' << r.word << '"' << ',' << r.p << ',' << r.n << ',' << r.longest << ',' << format_ratio(r.ratio_p) << ','
     << format_ratio(r.ratio_p2) << ',' << (r.ambiguous ? "true" : "false") << ',' << r.elapsed_ms << '\n';
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& rows) {
  os << kSweepCsvHeader << '\n';
  for (const auto& r : rows) write_sweep_csv_row(os, r);
}

// ---------------------------------------------------------------------------
// Reference table at p = 727

struct Table1Row {
  const char* label;  // as printed, e.g. "V1 U1 V3 U1 V2 U2"
  std::uint64_t expected;
  bool ambiguous;
};

inline constexpr std::uint64_t kTable1Prime = 727;

inline constexpr std::array<Table1Row, 34> kTable1{{
    {"V1 U1 V3 U1 V2 U2", 87928, false},  {"V3 U2 V1 U2 V2 U2", 77996, false},
    {"V1 U1 V2 U1 V2 U3", 75289, false},  {"V2 U1 V1 U2 V1 U2", 95183, false},
    {"V2 U1 V1 U1 V3 U1", 42238, false},  {"V2 U1 V1 U2 V2 U3", 62702, false},
    {"V1 U1 V1 U3 V2 U1", 51981, false},  {"V1 U1 V3 U4 V1 U1", 75716, false},
    {"V1 U4 V2 U1 V1 U1", 79495, false},  {"V1 U3 V2 U2 V3 U1", 86897, false},
    {"V3 U1 V1 U2 V1 U3", 108710, false}, {"V2 U3 V1 U1 V3 U1", 61549, false},
    {"V1 U1 V2 U4 V3 U1", 87870, false},  {"V1 U1 V2 U1 V3 U2", 82633, false},
    {"V2 U4 V1 U1 V1 U1", 79495, false},  {"V4 U1 V1 U1 V1 U4", 130737, false},
    {"V3 U4 V1 U1 V2 U1", 72046, false},

    {"V1 U1 V1 U1 V1 U2", 3193, true},    {"V1 U1 V3 U1 V1 U2", 2018, true},
    {"V2 U1 V2 U3 V2 U1", 2780, true},    {"V4 U1 V1 U2 V1 U1", 3748, true},
    {"V1 U2 V1 U2 V3 U2", 2780, true},    {"V1 U1 V1 U1 V1 U4", 2894, true},
    {"V1 U1 V1 U2 V1 U2", 4591, true},    {"V1 U3 V1 U1 V1 U1", 3285, true},
    {"V1 U2 V1 U2 V1 U2", 3331, true},    {"V2 U2 V2 U1 V2 U2", 3350, true},
    {"V1 U4 V1 U1 V4 U1", 1756, true},    {"V2 U1 V2 U4 V2 U1", 2022, true},
    {"V2 U1 V1 U1 V2 U4", 2937, true},    {"V1 U2 V1 U1 V1 U1", 3193, true},
    {"V1 U2 V2 U2 V1 U1", 3680, true},    {"V1 U2 V3 U2 V1 U2", 2780, true},
    {"V1 U2 V1 U1 V4 U1", 3748, true},
}};

/// The word a table label denotes: each printed exponent k stands for the
/// power k + 1 (a label "V1 U1 V3 ..." is the word V^2 U^2 V^4 ...).
inline GenWord table1_word(const Table1Row& row) {
  GenWord printed = parse_word(row.label);
  GenWord out;
  for (std::size_t i = 0; i < printed.size();) {
    std::size_t j = i;
    while (j < printed.size() && printed[j] == printed[i]) ++j;
    out.insert(out.end(), j - i + 1, printed[i]);
    i = j;
  }
  return out;
}

struct Table1Result {
  Table1Row row;
  std::uint64_t longest = 0;
  bool ambiguous = false;
  bool matches() const { return longest == row.expected && ambiguous == row.ambiguous; }
};

inline std::vector<Table1Result> run_table1(unsigned threads = 0) {
  const PointTable table = enumerate(PrimeModulus(kTable1Prime), -2, Space::NOrbitQuotient);
  std::vector<Table1Result> out(kTable1.size());
  run_pool(kTable1.size(), threads, [&](std::size_t i) {
    const GenWord w = table1_word(kTable1[i]);
    out[i] = {kTable1[i], longest_orbit(w, table, 1), word_is_ambiguous(w)};
  });
  return out;
}

// ---------------------------------------------------------------------------
// Identity suite over small primes

struct VerifyCheck {
  std::string name;
  std::size_t primes_tested = 0;
  std::vector<std::uint64_t> failures{};
  bool passed() const { return failures.empty(); }
};

struct VerifyOptions {
  std::uint64_t pmax = 200;
  bool groupid = false;
  std::size_t budget = 5000;
  std::uint64_t seed = 1;
  std::size_t samples = 200;
};

namespace detail {

inline bool no_two_zero_points(const PointTable& punctured) {
  for (const auto& q : punctured) {
    int zeros = (q.x == 0) + (q.y == 0) + (q.z == 0);
    if (zeros == 2) return false;
  }
  return true;
}

inline bool orbits_have_four_points(const PointTable& punctured) {
  for (const auto& q : punctured) {
    auto orbit = sign_change_orbit(punctured.modulus(), q);
    std::sort(orbit.begin(), orbit.end());
    if (std::adjacent_find(orbit.begin(), orbit.end()) != orbit.end()) return false;
  }
  return true;
}

}  // namespace detail

/// Runs every identity for the primes 3 < p <= pmax and reports the primes
/// at which each one fails.
inline std::vector<VerifyCheck> run_verify(const VerifyOptions& opt) {
  if (opt.pmax < 5) throw std::invalid_argument("verify needs pmax >= 5");
  enum { kCounts, kTwoZeros, kOrbitSize, kResidues, kFixed, kMoveParity, kSwapParity, kAllParity, kWordAction, kGroup };
  std::vector<VerifyCheck> checks{{"point_counts"},        {"no_two_zero_coordinates"}, {"orbit_size_four"},
                                  {"consecutive_residues"}, {"move_fixed_points"},       {"move_parity"},
                                  {"swap_parity"},          {"generator_parity"},        {"fricke_word_action"}};
  if (opt.groupid) checks.push_back({"group_identification"});

  const GenWord sample_word = parse_word("U2 V U V");
  const FreeAutomorphism sample_auto = point_map_automorphism(sample_word);

  for (std::uint64_t p : primes_in(5, opt.pmax)) {
    const PrimeModulus mod(p);
    auto record = [&](int idx, bool ok) {
      ++checks[idx].primes_tested;
      if (!ok) checks[idx].failures.push_back(p);
    };
    const bool p1 = p % 4 == 1;

    const CountCheck cc = count_check(mod);
    record(kCounts, cc.ok());

    const PointTable punctured = enumerate(mod, -2, Space::Punctured);
    record(kTwoZeros, detail::no_two_zero_points(punctured));
    record(kOrbitSize, detail::orbits_have_four_points(punctured));
    record(kResidues, consecutive_qr_count(mod) == (p1 ? (p - 5) / 4 : (p - 3) / 4));

    bool fixed_ok = true;
    for (Generator m : {Generator::M1, Generator::M2, Generator::M3})
      fixed_ok = fixed_ok && fixed_points({m}, punctured).size() == (p1 ? p - 5 : p - 3);
    record(kFixed, fixed_ok);

    const PointTable quotient = enumerate(mod, -2, Space::NOrbitQuotient);
    const ParityProfile parity = parity_profile(quotient);
    record(kMoveParity, (parity.m_sign == 1) == (p % 8 == 3));
    if (p % 8 == 3) record(kSwapParity, (parity.swap_sign == 1) == (p % 16 == 3));
    bool all_even = true;
    for (Generator g : kQuotientGenerators) all_even = all_even && decompose(compile({g}, quotient, 1)).sign == 1;
    record(kAllParity, all_even == (p % 16 == 3) && all_even == parity.all_even);

    if (p <= 101) {
      bool ok = verify_word_action(sample_auto.image_x, sample_word, mod, -2, opt.samples, 0, opt.seed + p) &&
                verify_word_action(sample_auto.image_y, sample_word, mod, -2, opt.samples, 1, opt.seed + p);
      record(kWordAction, ok);
    }

    if (opt.groupid && p <= 47) {
      const GroupReport r = classify(p, opt.budget);
      const GroupClass expected = p % 16 == 3 ? GroupClass::A_n : GroupClass::S_n;
      record(kGroup, r.transitive && r.certified == Certification::ContainsAlternating && r.classification == expected);
    }
  }
  return checks;
}

}  // namespace markoff
