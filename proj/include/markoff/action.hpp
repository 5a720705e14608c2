#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "markoff/free_word.hpp"
#include "markoff/mat2z.hpp"
#include "markoff/modarith.hpp"
#include "markoff/parallel.hpp"
#include "markoff/surface.hpp"

namespace markoff {

/// Generators of Aut(X_kappa): the Out(F_2) generators U, V, their inverses,
/// the Markoff moves m_i, coordinate transpositions, and the even sign
/// changes n_i.
enum class Generator : std::uint8_t { U, Uinv, V, Vinv, M1, M2, M3, Swap12, Swap13, Swap23, N1, N2, N3 };

inline constexpr std::array<Generator, 13> kAllGenerators{
    Generator::U,      Generator::Uinv,   Generator::V,      Generator::Vinv, Generator::M1,
    Generator::M2,     Generator::M3,     Generator::Swap12, Generator::Swap13, Generator::Swap23,
    Generator::N1,     Generator::N2,     Generator::N3};

inline bool is_sign_change(Generator g) {
  return g == Generator::N1 || g == Generator::N2 || g == Generator::N3;
}

inline std::string_view generator_token(Generator g) {
  switch (g) {
    case Generator::U: return "U";
    case Generator::Uinv: return "u";
    case Generator::V: return "V";
    case Generator::Vinv: return "v";
    case Generator::M1: return "m1";
    case Generator::M2: return "m2";
    case Generator::M3: return "m3";
    case Generator::Swap12: return "s12";
    case Generator::Swap13: return "s13";
    case Generator::Swap23: return "s23";
    case Generator::N1: return "n1";
    case Generator::N2: return "n2";
    case Generator::N3: return "n3";
  }
  return "?";
}

/// A word in the generators. The word g1 g2 ... gk acts as g1 o g2 o ... o gk:
/// the rightmost letter is applied first.
using GenWord = std::vector<Generator>;

class WordSyntaxError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses e.g. "U2 V U V" or "V1 U1 V3 m1 s12". Each token is a generator
/// name with an optional positive exponent; exponents are expanded.
inline GenWord parse_word(std::string_view text) {
  GenWord out;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw WordSyntaxError("invalid word \"" + std::string(text) + "\": " + why);
  };
  while (i < text.size()) {
    char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    Generator g{};
    switch (ch) {
      case 'U': g = Generator::U; ++i; break;
      case 'u': g = Generator::Uinv; ++i; break;
      case 'V': g = Generator::V; ++i; break;
      case 'v': g = Generator::Vinv; ++i; break;
      case 'm':
      case 'n': {
        if (i + 1 >= text.size() || text[i + 1] < '1' || text[i + 1] > '3') fail("expected m1..m3 or n1..n3");
        int k = text[i + 1] - '1';
        g = static_cast<Generator>(static_cast<int>(ch == 'm' ? Generator::M1 : Generator::N1) + k);
        i += 2;
        break;
      }
      case 's': {
        std::string_view name = text.substr(i, 3);
        if (name == "s12") g = Generator::Swap12;
        else if (name == "s13") g = Generator::Swap13;
        else if (name == "s23") g = Generator::Swap23;
        else fail("expected s12, s13 or s23");
        i += 3;
        break;
      }
      default: fail(std::string("unexpected character '") + ch + "'");
    }
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    unsigned long exponent = 1;
    if (i > start) {
      if (i - start > 6) fail("exponent too large");
      exponent = std::stoul(std::string(text.substr(start, i - start)));
      if (exponent == 0) fail("exponents must be positive");
    }
    out.insert(out.end(), exponent, g);
  }
  return out;
}

/// Compact text form with exponents, e.g. "U2 V U V".
inline std::string format_word(const GenWord& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty()) out += ' ';
    out += generator_token(w[i]);
    if (j - i > 1) out += std::to_string(j - i);
    i = j;
  }
  return out;
}

inline SurfacePoint apply_generator(const PrimeModulus& m, Generator g, SurfacePoint q) {
  const u64 x = q.x, y = q.y, z = q.z;
  switch (g) {
    case Generator::U: return {z, y, m.sub(m.mul(z, y), x)};
    case Generator::Uinv: return {m.sub(m.mul(x, y), z), y, x};
    case Generator::V: return {x, z, m.sub(m.mul(x, z), y)};
    case Generator::Vinv: return {x, m.sub(m.mul(x, y), z), y};
    case Generator::M1: return {m.sub(m.mul(y, z), x), y, z};
    case Generator::M2: return {x, m.sub(m.mul(x, z), y), z};
    case Generator::M3: return {x, y, m.sub(m.mul(x, y), z)};
    case Generator::Swap12: return {y, x, z};
    case Generator::Swap13: return {z, y, x};
    case Generator::Swap23: return {x, z, y};
    case Generator::N1: return {x, m.neg(y), m.neg(z)};
    case Generator::N2: return {m.neg(x), y, m.neg(z)};
    case Generator::N3: return {m.neg(x), m.neg(y), z};
  }
  return q;
}

inline SurfacePoint apply_word(const PrimeModulus& m, const GenWord& w, SurfacePoint q) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) q = apply_generator(m, *it, q);
  return q;
}

/// Automorphism of F_2 inducing the generator's point map through the
/// trace coordinates x = tr A, y = tr B, z = tr AB.
inline FreeAutomorphism generator_automorphism(Generator g) {
  const FreeWord X = FreeWord::x(), Y = FreeWord::y();
  const FreeWord Xi = FreeWord::x(-1), Yi = FreeWord::y(-1);
  switch (g) {
    case Generator::U: return {X * Y, Y};
    case Generator::Uinv: return {X * Yi, Y};
    case Generator::V: return {X, X * Y};
    case Generator::Vinv: return {X, Xi * Y};
    case Generator::M1: return {Y * X * Y, Yi};
    case Generator::M2: return {Xi, X * Y * X};
    case Generator::M3: return {Xi, Y};
    case Generator::Swap12: return {Y, X};
    case Generator::Swap13: return {X * Y, Yi};
    case Generator::Swap23: return {Xi, X * Y};
    default: throw std::invalid_argument("sign changes are not induced by Out(F_2)");
  }
}

/// Matrix of a generator: the exponent-sum matrix of its automorphism.
inline Mat2Z generator_matrix(Generator g) {
  switch (g) {
    case Generator::U: return Mat2Z::of(1, 0, 1, 1);
    case Generator::Uinv: return Mat2Z::of(1, 0, -1, 1);
    case Generator::V: return Mat2Z::of(1, 1, 0, 1);
    case Generator::Vinv: return Mat2Z::of(1, -1, 0, 1);
    case Generator::M1: return Mat2Z::of(1, 0, 2, -1);
    case Generator::M2: return Mat2Z::of(-1, 2, 0, 1);
    case Generator::M3: return Mat2Z::of(-1, 0, 0, 1);
    case Generator::Swap12: return Mat2Z::of(0, 1, 1, 0);
    case Generator::Swap13: return Mat2Z::of(1, 0, 1, -1);
    case Generator::Swap23: return Mat2Z::of(-1, 1, 0, 1);
    default: throw std::invalid_argument("sign changes have no GL_2(Z) matrix");
  }
}

/// Product of the generator matrices in the order listed.
inline Mat2Z word_to_matrix(const GenWord& w) {
  Mat2Z out;
  for (Generator g : w) out = out * generator_matrix(g);
  return out;
}

inline GenWord reversed(GenWord w) {
  std::reverse(w.begin(), w.end());
  return w;
}

/// The automorphism theta whose induced point map is `apply_word(w, .)`:
/// the x- and y-coordinates of the image of (tr A, tr B, tr AB) are the
/// traces of theta(X) and theta(Y) at (A, B).
///
/// Point maps compose contravariantly, so theta = theta_k o ... o theta_1
/// and its exponent-sum matrix is word_to_matrix(reversed(w)).
inline FreeAutomorphism point_map_automorphism(const GenWord& w) {
  FreeAutomorphism acc;
  for (Generator g : w) acc = generator_automorphism(g).after(acc);
  return acc;
}

/// A word in U, V, their inverses and M3 whose matrix is exactly g.
inline GenWord decompose_matrix(const Mat2Z& g) {
  BigInt det = g.det();
  if (det != 1 && det != -1) throw std::invalid_argument("matrix is not in GL_2(Z)");
  Mat2Z h = g;
  GenWord out;
  auto emit = [&out](Generator pos, Generator neg, const BigInt& k) {
    if (k == 0) return;
    unsigned long n = static_cast<unsigned long>(boost::multiprecision::abs(k));
    out.insert(out.end(), n, k > 0 ? pos : neg);
  };
  using boost::multiprecision::abs;
  while (h.c != 0) {
    if (h.a == 0) {
      // h = (0 b; c d) with c = +-1: V^{c} h has a = c^2 = 1.
      BigInt k = -h.c;
      h = Mat2Z{h.a - k * h.c, h.b - k * h.d, h.c, h.d};
      emit(Generator::V, Generator::Vinv, k);
    } else if (abs(h.a) > abs(h.c)) {
      BigInt k = h.a / h.c;
      h = Mat2Z{h.a - k * h.c, h.b - k * h.d, h.c, h.d};
      emit(Generator::V, Generator::Vinv, k);
    } else {
      BigInt k = h.c / h.a;
      h = Mat2Z{h.a, h.b, h.c - k * h.a, h.d - k * h.b};
      emit(Generator::U, Generator::Uinv, k);
    }
  }
  // h = diag(a, d) * V^{a b}
  const GenWord minus_identity{Generator::V, Generator::Uinv, Generator::V,
                               Generator::V, Generator::Uinv, Generator::V};
  // diag(a, d) = (-I)^{[d = -1]} * M3^{[ad = -1]}
  if (h.d == -1) out.insert(out.end(), minus_identity.begin(), minus_identity.end());
  if (h.a * h.d == -1) out.push_back(Generator::M3);
  emit(Generator::V, Generator::Vinv, h.a * h.b);
  return out;
}

/// A word whose compiled point map is the action of the matrix g, i.e. the
/// map induced by any automorphism with exponent-sum matrix g.
inline GenWord realizing_word(const Mat2Z& g) { return reversed(decompose_matrix(g)); }

/// A bijection of {0, ..., n-1}, stored as its image array.
class Permutation {
 public:
  using Index = std::uint32_t;

  Permutation() = default;
  explicit Permutation(std::vector<Index> image) : image_(std::move(image)) {}

  static Permutation identity(std::size_t n) {
    std::vector<Index> img(n);
    for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Index>(i);
    return Permutation(std::move(img));
  }

  std::size_t size() const { return image_.size(); }
  Index operator()(std::size_t i) const { return image_[i]; }
  const std::vector<Index>& image() const { return image_; }

  bool is_bijection() const {
    std::vector<char> seen(image_.size(), 0);
    for (Index v : image_) {
      if (v >= image_.size() || seen[v]) return false;
      seen[v] = 1;
    }
    return true;
  }

  /// (f o g)(i) = f(g(i)).
  friend Permutation compose(const Permutation& f, const Permutation& g) {
    if (f.size() != g.size()) throw std::invalid_argument("composing permutations of different sizes");
    std::vector<Index> img(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) img[i] = f.image_[g.image_[i]];
    return Permutation(std::move(img));
  }

  Permutation inverse() const {
    std::vector<Index> img(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) img[image_[i]] = static_cast<Index>(i);
    return Permutation(std::move(img));
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Index> image_;
};

/// Compiles w into a permutation of the table's ordinals. In quotient mode
/// images are re-canonicalized; sign changes are rejected there since they
/// act trivially on N-orbits.
inline Permutation compile(const GenWord& w, const PointTable& table, unsigned threads = 0) {
  if (table.space() == Space::NOrbitQuotient && std::any_of(w.begin(), w.end(), is_sign_change))
    throw std::invalid_argument("sign changes n1, n2, n3 are not defined on the N-orbit quotient");
  const PrimeModulus& mod = table.modulus();
  std::vector<Permutation::Index> img(table.size());
  parallel_for(table.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      SurfacePoint q = apply_word(mod, w, table[i]);
      PointTable::Index j = table.locate(q);
      if (j == PointTable::kNotFound) throw std::runtime_error("image point is not in the table");
      img[i] = j;
    }
  });
  return Permutation(std::move(img));
}

}  // namespace markoff
