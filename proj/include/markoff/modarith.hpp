#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace markoff {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

namespace detail {

inline u64 mulmod_u64(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 powmod_u64(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1u) result = mulmod_u64(result, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1u;
  }
  return result;
}

}  // namespace detail

/// Deterministic Miller-Rabin; the first twelve prime bases are exact for
/// every 64-bit input.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  constexpr std::array<u64, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 b : bases) {
    if (n % b == 0) return n == b;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1u) == 0) {
    d >>= 1u;
    ++s;
  }
  for (u64 a : bases) {
    u64 x = detail::powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// The two square roots of a residue, `lo <= hi`; equal only for zero.
struct SquareRoots {
  u64 lo;
  u64 hi;
};

/// An odd prime 3 <= p < 2^62 together with the arithmetic of F_p.
///
/// Residues are plain `u64` values held in canonical form [0, p). Every
/// operation takes and returns canonical residues and is a pure function, so
/// one modulus can be shared freely between threads.
class PrimeModulus {
 public:
  static constexpr u64 kLimit = u64{1} << 62;

  explicit PrimeModulus(u64 p) : p_(p) {
    if (p == 2) throw std::invalid_argument("p = 2 is not supported; the modulus must be an odd prime");
    if (p >= kLimit) throw std::invalid_argument("modulus must be below 2^62");
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    small_ = p < (u64{1} << 32);
    if (p % 4 == 1) {
      // Tonelli-Shanks needs one non-residue; scan upward from 2.
      u64 z = 2;
      while (legendre(z) != -1) ++z;
      nonresidue_ = z;
    }
  }

  u64 value() const { return p_; }

  u64 reduce(i64 a) const {
    i64 r = a % static_cast<i64>(p_);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(p_) : r);
  }
  u64 reduce_unsigned(u64 a) const { return a % p_; }

  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
  u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }
  u64 mul(u64 a, u64 b) const {
    if (small_) return a * b % p_;
    return detail::mulmod_u64(a, b, p_);
  }
  u64 pow(u64 a, u64 e) const { return detail::powmod_u64(a, e, p_); }

  /// Multiplicative inverse; throws for zero.
  u64 inv(u64 a) const {
    if (a == 0) throw std::domain_error("zero has no inverse");
    return pow(a, p_ - 2);
  }

  /// The signed residue of a, i.e. a representative in (-p/2, p/2].
  i64 centered(u64 a) const {
    return a > p_ / 2 ? -static_cast<i64>(p_ - a) : static_cast<i64>(a);
  }

  int legendre(u64 a) const {
    a %= p_;
    if (a == 0) return 0;
    return pow(a, (p_ - 1) / 2) == 1 ? 1 : -1;
  }

  /// Square roots of a, smaller root first; empty for a non-residue.
  std::optional<SquareRoots> sqrt(u64 a) const {
    a %= p_;
    if (a == 0) return SquareRoots{0, 0};
    if (legendre(a) != 1) return std::nullopt;
    u64 r = p_ % 4 == 3 ? pow(a, (p_ + 1) / 4) : tonelli_shanks(a);
    u64 other = neg(r);
    return r < other ? SquareRoots{r, other} : SquareRoots{other, r};
  }

  /// Roots of t^2 + b t + c, ascending and without repetition.
  std::vector<u64> solve_quadratic(u64 b, u64 c) const {
    const u64 inv2 = (p_ + 1) / 2;
    u64 disc = sub(mul(b, b), mul(4 % p_, c));
    auto roots = sqrt(disc);
    if (!roots) return {};
    u64 mb = neg(b);
    u64 t1 = mul(sub(mb, roots->lo), inv2);
    u64 t2 = mul(add(mb, roots->lo), inv2);
    if (t1 == t2) return {t1};
    if (t1 > t2) std::swap(t1, t2);
    return {t1, t2};
  }

  friend bool operator==(const PrimeModulus& a, const PrimeModulus& b) { return a.p_ == b.p_; }

 private:
  u64 tonelli_shanks(u64 a) const {
    u64 q = p_ - 1;
    u64 s = 0;
    while ((q & 1u) == 0) {
      q >>= 1u;
      ++s;
    }
    u64 m = s;
    u64 c = pow(nonresidue_, q);
    u64 t = pow(a, q);
    u64 r = pow(a, (q + 1) / 2);
    while (t != 1) {
      u64 i = 0;
      u64 t2 = t;
      while (t2 != 1) {
        t2 = mul(t2, t2);
        ++i;
      }
      u64 b = c;
      for (u64 j = 0; j + i + 1 < m; ++j) b = mul(b, b);
      m = i;
      c = mul(b, b);
      t = mul(t, c);
      r = mul(r, b);
    }
    return r;
  }

  u64 p_;
  u64 nonresidue_ = 0;
  bool small_ = false;
};

/// Table of square roots of every residue, for the O(p^2) enumeration loops.
/// Entry a holds the smaller root of a, or `kNoRoot`.
class SqrtTable {
 public:
  static constexpr std::uint32_t kNoRoot = 0xffffffffu;

  explicit SqrtTable(const PrimeModulus& mod) : root_(checked_size(mod), kNoRoot) {
    const u64 p = mod.value();
    for (u64 r = 0; r <= p / 2; ++r) root_[mod.mul(r, r)] = static_cast<std::uint32_t>(r);
  }

  std::uint32_t operator[](u64 a) const { return root_[a]; }

 private:
  static std::size_t checked_size(const PrimeModulus& mod) {
    if (mod.value() >= (u64{1} << 32)) throw std::invalid_argument("square-root table needs p < 2^32");
    return static_cast<std::size_t>(mod.value());
  }

  std::vector<std::uint32_t> root_;
};

}  // namespace markoff
