#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "markoff/modarith.hpp"

namespace markoff {

/// A point (x, y, z) of F_p^3. Whether it lies on a particular surface is a
/// property of the (p, kappa) context, checked with `on_surface`.
struct SurfacePoint {
  u64 x = 0;
  u64 y = 0;
  u64 z = 0;

  friend auto operator<=>(const SurfacePoint&, const SurfacePoint&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const SurfacePoint& q) {
  return os << '(' << q.x << ',' << q.y << ',' << q.z << ')';
}

enum class Space { FullSurface, Punctured, NOrbitQuotient };

inline std::string_view space_name(Space s) {
  switch (s) {
    case Space::FullSurface: return "X";
    case Space::Punctured: return "Xstar";
    case Space::NOrbitQuotient: return "Y";
  }
  return "?";
}

inline std::optional<Space> parse_space(std::string_view s) {
  if (s == "X") return Space::FullSurface;
  if (s == "Xstar") return Space::Punctured;
  if (s == "Y") return Space::NOrbitQuotient;
  return std::nullopt;
}

/// x^2 + y^2 + z^2 == xyz + 2 + kappa over F_p.
inline bool on_surface(const PrimeModulus& mod, i64 kappa, SurfacePoint q) {
  u64 lhs = mod.add(mod.add(mod.mul(q.x, q.x), mod.mul(q.y, q.y)), mod.mul(q.z, q.z));
  u64 rhs = mod.add(mod.mul(mod.mul(q.x, q.y), q.z), mod.reduce(kappa + 2));
  return lhs == rhs;
}

/// The four images of q under the even sign changes id, n1, n2, n3.
inline std::array<SurfacePoint, 4> sign_change_orbit(const PrimeModulus& mod, SurfacePoint q) {
  u64 nx = mod.neg(q.x), ny = mod.neg(q.y), nz = mod.neg(q.z);
  return {SurfacePoint{q.x, q.y, q.z}, SurfacePoint{q.x, ny, nz}, SurfacePoint{nx, q.y, nz},
          SurfacePoint{nx, ny, q.z}};
}

/// Lexicographically least point of the Klein four-group orbit of q.
inline SurfacePoint canonical_rep(const PrimeModulus& mod, SurfacePoint q) {
  auto orbit = sign_change_orbit(mod, q);
  return *std::min_element(orbit.begin(), orbit.end());
}

/// Dense, lexicographically ordered enumeration of X_kappa(F_p), of the
/// punctured Markoff surface, or of its quotient by even sign changes.
///
/// Ordinals are stable: point i is the i-th point in (x, y, z) order, and
/// `index_of` is the exact inverse of `operator[]`.
class PointTable {
 public:
  using Index = std::uint32_t;
  static constexpr Index kNotFound = 0xffffffffu;

  PointTable(PrimeModulus mod, i64 kappa, Space space) : mod_(mod), kappa_(kappa), space_(space) {
    if (space != Space::FullSurface && kappa != -2)
      throw std::invalid_argument("punctured and quotient spaces are only defined for kappa = -2");
    if (mod.value() > 65521) throw std::invalid_argument("point tables are limited to p <= 65521");
    build();
  }

  const PrimeModulus& modulus() const { return mod_; }
  u64 p() const { return mod_.value(); }
  i64 kappa() const { return kappa_; }
  Space space() const { return space_; }

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const SurfacePoint& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<SurfacePoint>& points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  /// Ordinal of q, or kNotFound. In quotient mode q must already be canonical.
  Index index_of(SurfacePoint q) const {
    if (q.x >= p() || q.y >= p()) return kNotFound;
    std::size_t key = static_cast<std::size_t>(q.x) * p() + q.y;
    for (Index i = offsets_[key]; i < offsets_[key + 1]; ++i) {
      if (points_[i].z == q.z) return i;
    }
    return kNotFound;
  }

  /// Ordinal of the table element containing q: q itself, or its canonical
  /// representative in quotient mode.
  Index locate(SurfacePoint q) const {
    return index_of(space_ == Space::NOrbitQuotient ? canonical_rep(mod_, q) : q);
  }

 private:
  void build() {
    const u64 p = mod_.value();
    const SqrtTable roots(mod_);
    const u64 c0 = mod_.reduce(-2 - kappa_);
    const u64 inv2 = (p + 1) / 2;
    const bool quotient = space_ == Space::NOrbitQuotient;
    const bool drop_origin = space_ != Space::FullSurface;

    offsets_.assign(p * p + 1, 0);
    std::vector<u64> sq(p);
    for (u64 a = 0; a < p; ++a) sq[a] = mod_.mul(a, a);

    for (u64 x = 0; x < p; ++x) {
      for (u64 y = 0; y < p; ++y) {
        std::size_t key = static_cast<std::size_t>(x) * p + y;
        offsets_[key] = static_cast<Index>(points_.size());
        if (quotient && (x > p / 2 || y > p / 2)) continue;
        // z^2 - xy z + (x^2 + y^2 - 2 - kappa) = 0
        u64 b = mod_.neg(mod_.mul(x, y));
        u64 c = mod_.add(mod_.add(sq[x], sq[y]), c0);
        u64 disc = mod_.sub(sq[b], mod_.mul(4, c));
        std::uint32_t r = roots[disc];
        if (r == SqrtTable::kNoRoot) continue;
        u64 mb = mod_.neg(b);
        u64 z1 = mod_.mul(mod_.sub(mb, r), inv2);
        u64 z2 = mod_.mul(mod_.add(mb, r), inv2);
        if (z1 > z2) std::swap(z1, z2);
        push(SurfacePoint{x, y, z1}, quotient, drop_origin);
        if (z2 != z1) push(SurfacePoint{x, y, z2}, quotient, drop_origin);
      }
    }
    offsets_[p * p] = static_cast<Index>(points_.size());
  }

  void push(SurfacePoint q, bool quotient, bool drop_origin) {
    if (drop_origin && q.x == 0 && q.y == 0 && q.z == 0) return;
    if (quotient && canonical_rep(mod_, q) != q) return;
    points_.push_back(q);
  }

  PrimeModulus mod_;
  i64 kappa_;
  Space space_;
  std::vector<SurfacePoint> points_;
  std::vector<Index> offsets_;
};

inline PointTable enumerate(PrimeModulus mod, i64 kappa, Space space) {
  return PointTable(mod, kappa, space);
}

/// Closed forms for the punctured Markoff surface and its quotient.
inline u64 punctured_count_formula(u64 p) { return p % 4 == 1 ? p * (p + 3) : p * (p - 3); }
inline u64 quotient_count_formula(u64 p) { return punctured_count_formula(p) / 4; }

struct CountCheck {
  u64 punctured_computed = 0;
  u64 punctured_formula = 0;
  u64 quotient_computed = 0;
  u64 quotient_formula = 0;

  bool ok() const { return punctured_computed == punctured_formula && quotient_computed == quotient_formula; }
};

inline CountCheck count_check(const PrimeModulus& mod) {
  CountCheck out;
  out.punctured_computed = enumerate(mod, -2, Space::Punctured).size();
  out.quotient_computed = enumerate(mod, -2, Space::NOrbitQuotient).size();
  out.punctured_formula = punctured_count_formula(mod.value());
  out.quotient_formula = quotient_count_formula(mod.value());
  return out;
}

/// Number of r with r and r + 1 both nonzero squares mod p.
inline u64 consecutive_qr_count(const PrimeModulus& mod) {
  const u64 p = mod.value();
  std::vector<char> square(p, 0);
  for (u64 r = 1; r < p; ++r) square[mod.mul(r, r)] = 1;
  u64 count = 0;
  for (u64 r = 1; r + 1 < p; ++r) count += square[r] && square[r + 1];
  return count;
}

/// CSV dump: a comment line with the parameters, then `x,y,z` rows.
inline void write_points_csv(std::ostream& os, const PointTable& table) {
  os << "# kappa=" << table.kappa() << " p=" << table.p() << " space=" << space_name(table.space()) << '\n';
  os << "x,y,z\n";
  for (const auto& q : table) os << q.x << ',' << q.y << ',' << q.z << '\n';
}

}  // namespace markoff
