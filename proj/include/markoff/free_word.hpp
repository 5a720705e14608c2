#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "markoff/mat2z.hpp"

namespace markoff {

enum class Letter : std::uint8_t { X = 0, Y = 1 };

struct Syllable {
  Letter letter;
  std::int64_t exponent;

  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

/// A reduced word in the free group on X, Y, stored as syllables X^e / Y^e
/// with nonzero exponents and no two adjacent syllables on the same letter.
class FreeWord {
 public:
  FreeWord() = default;
  explicit FreeWord(std::vector<Syllable> syllables) {
    for (const auto& s : syllables) append(s);
  }

  static FreeWord x(std::int64_t e = 1) { return FreeWord({{Letter::X, e}}); }
  static FreeWord y(std::int64_t e = 1) { return FreeWord({{Letter::Y, e}}); }

  const std::vector<Syllable>& syllables() const { return syl_; }
  bool empty() const { return syl_.empty(); }
  std::size_t syllable_count() const { return syl_.size(); }

  std::int64_t letter_length() const {
    std::int64_t n = 0;
    for (const auto& s : syl_) n += std::llabs(s.exponent);
    return n;
  }

  std::int64_t exponent_sum(Letter l) const {
    std::int64_t n = 0;
    for (const auto& s : syl_)
      if (s.letter == l) n += s.exponent;
    return n;
  }

  /// Every exponent of each letter has one sign.
  bool is_monotone() const {
    int sign[2] = {0, 0};
    for (const auto& s : syl_) {
      int sg = s.exponent > 0 ? 1 : -1;
      int& slot = sign[static_cast<int>(s.letter)];
      if (slot != 0 && slot != sg) return false;
      slot = sg;
    }
    return true;
  }

  FreeWord inverse() const {
    FreeWord out;
    for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) out.syl_.push_back({it->letter, -it->exponent});
    return out;
  }

  friend FreeWord operator*(FreeWord lhs, const FreeWord& rhs) {
    for (const auto& s : rhs.syl_) lhs.append(s);
    return lhs;
  }

  /// Cyclically reduced conjugate: merges or cancels the ends until the
  /// first and last syllables are on different letters.
  FreeWord cyclically_reduced() const {
    std::vector<Syllable> s = syl_;
    while (s.size() >= 2 && s.front().letter == s.back().letter) {
      s.front().exponent += s.back().exponent;
      s.pop_back();
      if (s.front().exponent == 0) s.erase(s.begin());
    }
    FreeWord out;
    out.syl_ = std::move(s);
    return out;
  }

  /// The image of this word under X -> image_x, Y -> image_y.
  FreeWord substitute(const FreeWord& image_x, const FreeWord& image_y) const {
    FreeWord out;
    for (const auto& s : syl_) {
      const FreeWord& base = s.letter == Letter::X ? image_x : image_y;
      FreeWord piece = s.exponent > 0 ? base : base.inverse();
      for (std::int64_t k = 0; k < std::llabs(s.exponent); ++k) out = out * piece;
    }
    return out;
  }

  friend bool operator==(const FreeWord&, const FreeWord&) = default;
  friend auto operator<=>(const FreeWord& a, const FreeWord& b) { return a.syl_ <=> b.syl_; }

  std::string to_string() const {
    if (syl_.empty()) return "1";
    std::ostringstream os;
    for (const auto& s : syl_) {
      os << (s.letter == Letter::X ? 'X' : 'Y');
      if (s.exponent != 1) os << '^' << s.exponent;
    }
    return os.str();
  }

 private:
  void append(Syllable s) {
    if (s.exponent == 0) return;
    if (!syl_.empty() && syl_.back().letter == s.letter) {
      syl_.back().exponent += s.exponent;
      if (syl_.back().exponent == 0) syl_.pop_back();
    } else {
      syl_.push_back(s);
    }
  }

  std::vector<Syllable> syl_;
};

inline std::ostream& operator<<(std::ostream& os, const FreeWord& w) { return os << w.to_string(); }

/// An automorphism of F_2, given by the images of X and Y.
struct FreeAutomorphism {
  FreeWord image_x = FreeWord::x();
  FreeWord image_y = FreeWord::y();

  /// (this o other)(w) = this(other(w)).
  FreeAutomorphism after(const FreeAutomorphism& other) const {
    return {other.image_x.substitute(image_x, image_y), other.image_y.substitute(image_x, image_y)};
  }

  FreeWord apply(const FreeWord& w) const { return w.substitute(image_x, image_y); }
};

/// Exponent-sum matrix (a1 a2; b1 b2): column i holds the X and Y exponent
/// sums of the image of the i-th generator.
inline Mat2Z abelianization(const FreeWord& w1, const FreeWord& w2) {
  return Mat2Z{BigInt(w1.exponent_sum(Letter::X)), BigInt(w2.exponent_sum(Letter::X)),
               BigInt(w1.exponent_sum(Letter::Y)), BigInt(w2.exponent_sum(Letter::Y))};
}

inline Mat2Z abelianization(const FreeAutomorphism& phi) { return abelianization(phi.image_x, phi.image_y); }

}  // namespace markoff
