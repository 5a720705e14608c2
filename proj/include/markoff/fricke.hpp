#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "markoff/action.hpp"
#include "markoff/free_word.hpp"
#include "markoff/modarith.hpp"
#include "markoff/surface.hpp"

namespace markoff {

using BigRational = boost::multiprecision::cpp_rational;

enum class Var : std::uint8_t { x = 0, y = 1, z = 2, kappa = 3 };

/// Exponents of x, y, z, kappa.
using Monomial = std::array<std::uint32_t, 4>;

/// Graded order, highest total degree first, ties broken lexicographically
/// with x > y > z > kappa.
struct GradedLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    auto total = [](const Monomial& m) { return m[0] + m[1] + m[2] + m[3]; };
    if (total(a) != total(b)) return total(a) > total(b);
    return a > b;
  }
};

/// Sparse polynomial in Z[x, y, z, kappa] (or Q[...] for scratch work).
/// No zero coefficients are stored, so the representation is unique.
template <class Coeff>
class BasicPoly {
 public:
  using Terms = std::map<Monomial, Coeff, GradedLexGreater>;

  BasicPoly() = default;
  BasicPoly(int c) { add_term({0, 0, 0, 0}, Coeff(c)); }  // NOLINT: implicit constants read naturally
  explicit BasicPoly(Coeff c) { add_term({0, 0, 0, 0}, std::move(c)); }

  static BasicPoly variable(Var v, std::uint32_t power = 1) {
    BasicPoly p;
    Monomial m{0, 0, 0, 0};
    m[static_cast<int>(v)] = power;
    p.add_term(m, Coeff(1));
    return p;
  }
  static BasicPoly monomial(const Monomial& m, Coeff c) {
    BasicPoly p;
    p.add_term(m, std::move(c));
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Monomial& m, const Coeff& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  BasicPoly& operator+=(const BasicPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  BasicPoly& operator-=(const BasicPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, Coeff(-c));
    return *this;
  }
  friend BasicPoly operator+(BasicPoly a, const BasicPoly& b) { return a += b; }
  friend BasicPoly operator-(BasicPoly a, const BasicPoly& b) { return a -= b; }
  friend BasicPoly operator-(const BasicPoly& a) { return BasicPoly() - a; }

  friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b) {
    BasicPoly out;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2], ma[3] + mb[3]};
        out.add_term(m, Coeff(ca * cb));
      }
    }
    return out;
  }

  BasicPoly scaled(const Coeff& k) const {
    BasicPoly out;
    if (k == 0) return out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, Coeff(c * k));
    return out;
  }

  /// Substitutes v -> factor * v.
  BasicPoly rescaled(Var v, const Coeff& factor) const {
    BasicPoly out;
    for (const auto& [m, c] : terms_) {
      Coeff k = c;
      for (std::uint32_t i = 0; i < m[static_cast<int>(v)]; ++i) k *= factor;
      out.add_term(m, k);
    }
    return out;
  }

  friend bool operator==(const BasicPoly& a, const BasicPoly& b) { return a.terms_ == b.terms_; }

  std::uint32_t degree_in(Var v) const {
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[static_cast<int>(v)]);
    return d;
  }

  /// Max of e_x + e_z over the monomials; 0 for the zero polynomial.
  std::uint32_t xz_degree() const {
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[0] + m[2]);
    return d;
  }

  /// Coefficient of v^k, as a polynomial in the other variables.
  BasicPoly coefficient_of(Var v, std::uint32_t k) const {
    BasicPoly out;
    for (const auto& [m, c] : terms_) {
      if (m[static_cast<int>(v)] != k) continue;
      Monomial r = m;
      r[static_cast<int>(v)] = 0;
      out.add_term(r, c);
    }
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    static constexpr const char* names[4] = {"x", "y", "z", "kappa"};
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      bool negative = c < 0;
      Coeff mag = negative ? Coeff(-c) : c;
      if (first) os << (negative ? "-" : "");
      else os << (negative ? " - " : " + ");
      first = false;
      bool constant = m == Monomial{0, 0, 0, 0};
      bool unit = mag == 1;
      if (!unit || constant) os << mag;
      bool need_star = !unit || constant;
      for (int i = 0; i < 4; ++i) {
        if (m[i] == 0) continue;
        if (need_star) os << '*';
        os << names[i];
        if (m[i] > 1) os << '^' << m[i];
        need_star = true;
      }
    }
    return os.str();
  }

 private:
  Terms terms_;
};

using SparsePoly = BasicPoly<BigInt>;
using RationalPoly = BasicPoly<BigRational>;

inline SparsePoly operator*(long long k, const SparsePoly& p) { return p.scaled(BigInt(k)); }

inline u64 reduce_coefficient(const PrimeModulus& mod, const BigInt& c) {
  BigInt r = c % mod.value();
  if (r < 0) r += mod.value();
  return r.convert_to<u64>();
}

/// Value of f at (x, y, z, kappa) over F_p.
inline u64 evaluate(const SparsePoly& f, const PrimeModulus& mod, const std::array<u64, 4>& at) {
  u64 acc = 0;
  for (const auto& [m, c] : f.terms()) {
    u64 term = reduce_coefficient(mod, c);
    for (int v = 0; v < 4; ++v) term = mod.mul(term, mod.pow(at[v], m[v]));
    acc = mod.add(acc, term);
  }
  return acc;
}

inline u64 evaluate(const SparsePoly& f, const PrimeModulus& mod, SurfacePoint q, i64 kappa = 0) {
  return evaluate(f, mod, {q.x, q.y, q.z, mod.reduce(kappa)});
}

inline RationalPoly to_rational(const SparsePoly& f) {
  RationalPoly out;
  for (const auto& [m, c] : f.terms()) out.add_term(m, BigRational(c));
  return out;
}

/// Integer polynomial equal to f; throws std::logic_error if some
/// coefficient is not an integer.
inline SparsePoly to_integral(const RationalPoly& f) {
  SparsePoly out;
  for (const auto& [m, c] : f.terms()) {
    if (boost::multiprecision::denominator(c) != 1) throw std::logic_error("polynomial is not integral");
    out.add_term(m, boost::multiprecision::numerator(c));
  }
  return out;
}

enum class ChebyshevKind { first, second };

/// T_n or U_n in the variable v, by the three-term recurrence.
inline SparsePoly chebyshev(ChebyshevKind kind, unsigned n, Var v = Var::x) {
  const SparsePoly t = SparsePoly::variable(v);
  SparsePoly prev = 1;
  SparsePoly cur = kind == ChebyshevKind::first ? t : 2 * t;
  if (n == 0) return prev;
  for (unsigned k = 1; k < n; ++k) {
    SparsePoly next = 2 * (t * cur) - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// P(v/2) for an integer polynomial P in v, in rational arithmetic.
inline RationalPoly at_half(const SparsePoly& f, Var v) {
  return to_rational(f).rescaled(v, BigRational(1, 2));
}

/// Fricke trace polynomials tr w(A, B) = P_w(tr A, tr B, tr AB), memoized
/// on cyclic words up to rotation and inversion.
class FrickeTraces {
 public:
  SparsePoly operator()(const FreeWord& w) { return trace(w.cyclically_reduced()); }

  std::size_t cache_size() const { return cache_.size(); }

 private:
  using Key = std::vector<Syllable>;

  static Key rotation(const std::vector<Syllable>& s, std::size_t r) {
    Key k(s.begin() + static_cast<std::ptrdiff_t>(r), s.end());
    k.insert(k.end(), s.begin(), s.begin() + static_cast<std::ptrdiff_t>(r));
    return k;
  }

  static Key canonical_key(const FreeWord& w) {
    Key best = w.syllables();
    const FreeWord inv = w.inverse();
    for (const FreeWord* src : {&w, &inv}) {
      const auto& s = src->syllables();
      for (std::size_t r = 0; r < s.size(); ++r) {
        Key k = rotation(s, r);
        if (k < best) best = std::move(k);
      }
    }
    return best;
  }

  // w must be cyclically reduced.
  SparsePoly trace(const FreeWord& w) {
    if (w.empty()) return 2;
    Key key = canonical_key(w);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    SparsePoly result = compute(FreeWord(key));
    cache_.emplace(std::move(key), result);
    return result;
  }

  SparsePoly reduce_and_trace(const FreeWord& w) { return trace(w.cyclically_reduced()); }

  SparsePoly compute(const FreeWord& w) {
    const auto& s = w.syllables();
    const SparsePoly x = SparsePoly::variable(Var::x), y = SparsePoly::variable(Var::y),
                     z = SparsePoly::variable(Var::z);

    // A syllable L^e with |e| >= 2: tr(L^e r) = tr(L) tr(L^{e-1} r) - tr(L^{e-2} r)
    // (signs mirrored for e <= -2).
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (std::llabs(s[i].exponent) < 2) continue;
      Key rot = rotation(s, i);
      Syllable head = rot.front();
      const SparsePoly& tr_letter = head.letter == Letter::X ? x : y;
      std::int64_t step = head.exponent > 0 ? 1 : -1;
      Key once = rot, twice = rot;
      once.front().exponent -= step;
      twice.front().exponent -= 2 * step;
      return tr_letter * reduce_and_trace(FreeWord(once)) - reduce_and_trace(FreeWord(twice));
    }

    // All exponents are +-1 and letters alternate.
    if (s.size() == 1) return s[0].letter == Letter::X ? x : y;
    if (s.size() == 2) {
      bool same_sign = (s[0].exponent > 0) == (s[1].exponent > 0);
      return same_sign ? z : x * y - z;
    }
    // tr(uv) = tr(u) tr(v) - tr(u^-1 v) with u the first two syllables.
    FreeWord u(Key(s.begin(), s.begin() + 2));
    FreeWord v(Key(s.begin() + 2, s.end()));
    return reduce_and_trace(u) * reduce_and_trace(v) - reduce_and_trace(u.inverse() * v);
  }

  std::map<Key, SparsePoly> cache_;
};

inline SparsePoly trace_poly(const FreeWord& w) {
  FrickeTraces traces;
  return traces(w);
}

/// f = u + v * z modulo the ideal of x^2 + y^2 + z^2 - xyz - 2 - kappa, with
/// u, v free of z.
struct LinearInZ {
  SparsePoly u;
  SparsePoly v;
};

/// Rewrites every monomial with z-degree >= 2 by
/// x^a y^b z^c -> x^a y^b z^(c-2) (xyz - x^2 - y^2 + 2 + kappa)
/// until the result is linear in z.
inline LinearInZ reduce_mod_I(SparsePoly f) {
  const SparsePoly x = SparsePoly::variable(Var::x), y = SparsePoly::variable(Var::y),
                   z = SparsePoly::variable(Var::z), kappa = SparsePoly::variable(Var::kappa);
  const SparsePoly z_squared = x * y * z - x * x - y * y + 2 + kappa;
  while (f.degree_in(Var::z) >= 2) {
    SparsePoly next;
    for (const auto& [m, c] : f.terms()) {
      if (m[2] < 2) {
        next.add_term(m, c);
        continue;
      }
      Monomial rest = m;
      rest[2] -= 2;
      next += SparsePoly::monomial(rest, c) * z_squared;
    }
    f = std::move(next);
  }
  return {f.coefficient_of(Var::z, 0), f.coefficient_of(Var::z, 1)};
}

/// The Cayley-cubic linearization of a good matrix column (a, c):
///   p = 2 T_a(x/2) T_c(y/2) - (1/2) x y U_{a-1}(x/2) U_{c-1}(y/2)
///   q = U_{a-1}(x/2) U_{c-1}(y/2)
/// computed over Q and checked to be integral.
struct CayleyPair {
  SparsePoly p;
  SparsePoly q;
};

inline CayleyPair cayley_linearization(unsigned a, unsigned c) {
  if (a < 2 || c < 2) throw std::invalid_argument("cayley_linearization needs a, c >= 2");
  if (std::gcd(a, c) != 1) throw std::invalid_argument("cayley_linearization needs gcd(a, c) = 1");
  const RationalPoly ta = at_half(chebyshev(ChebyshevKind::first, a, Var::x), Var::x);
  const RationalPoly tc = at_half(chebyshev(ChebyshevKind::first, c, Var::y), Var::y);
  const RationalPoly ua = at_half(chebyshev(ChebyshevKind::second, a - 1, Var::x), Var::x);
  const RationalPoly uc = at_half(chebyshev(ChebyshevKind::second, c - 1, Var::y), Var::y);
  const RationalPoly xy = RationalPoly::monomial({1, 1, 0, 0}, BigRational(1));
  RationalPoly p = (ta * tc).scaled(BigRational(2)) - (xy * ua * uc).scaled(BigRational(1, 2));
  RationalPoly q = ua * uc;
  return {to_integral(p), to_integral(q)};
}

/// D = det(p_ac - x, q_ac; p_bd - y, q_bd) for a good matrix (a b; c d).
inline SparsePoly cayley_determinant(unsigned a, unsigned b, unsigned c, unsigned d) {
  const CayleyPair col1 = cayley_linearization(a, c);
  const CayleyPair col2 = cayley_linearization(b, d);
  const SparsePoly x = SparsePoly::variable(Var::x), y = SparsePoly::variable(Var::y);
  return (col1.p - x) * col2.q - col1.q * (col2.p - y);
}

/// (delta + 1/delta, eta + 1/eta, delta*eta + 1/(delta*eta)), a point of X_2.
inline SurfacePoint torus_point(const PrimeModulus& mod, u64 delta, u64 eta) {
  if (delta % mod.value() == 0 || eta % mod.value() == 0)
    throw std::invalid_argument("torus coordinates must be invertible");
  u64 de = mod.mul(delta, eta);
  return {mod.add(delta, mod.inv(delta)), mod.add(eta, mod.inv(eta)), mod.add(de, mod.inv(de))};
}

/// g acting on the split torus: (delta, eta) -> (delta^a eta^c, delta^b eta^d).
inline std::pair<u64, u64> torus_action(const PrimeModulus& mod, const Mat2Z& g, u64 delta, u64 eta) {
  auto power = [&](u64 base, const BigInt& e) {
    BigInt r = e % (mod.value() - 1);
    if (r < 0) r += mod.value() - 1;
    return mod.pow(base, r.convert_to<u64>());
  };
  return {mod.mul(power(delta, g.a), power(eta, g.c)), mod.mul(power(delta, g.b), power(eta, g.d))};
}

/// Compares a coordinate of the point map of `word` with the Fricke
/// polynomial of `image` on random points of X_kappa(F_p). `coordinate` is
/// 0 for x and 1 for y.
inline bool verify_word_action(const FreeWord& image, const GenWord& word, const PrimeModulus& mod, i64 kappa,
                               std::size_t sample_size, int coordinate = 0, std::uint64_t seed = 1) {
  const PointTable table = enumerate(mod, kappa, Space::FullSurface);
  if (table.empty()) return true;
  const SparsePoly poly = trace_poly(image);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, table.size() - 1);
  for (std::size_t s = 0; s < sample_size; ++s) {
    SurfacePoint q = table[pick(rng)];
    SurfacePoint img = apply_word(mod, word, q);
    u64 expected = coordinate == 0 ? img.x : coordinate == 1 ? img.y : img.z;
    if (evaluate(poly, mod, q, kappa) != expected) return false;
  }
  return true;
}

}  // namespace markoff
