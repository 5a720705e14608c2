#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "markoff/action.hpp"
#include "markoff/free_word.hpp"
#include "markoff/mat2z.hpp"

namespace markoff {

/// A reduced UV-word U^{n1} V^{m1} ... U^{nk} V^{mk}, all exponents >= 1.
struct UVWord {
  struct Block {
    unsigned long long u;
    unsigned long long v;
    friend auto operator<=>(const Block&, const Block&) = default;
  };
  std::vector<Block> blocks;

  friend bool operator==(const UVWord&, const UVWord&) = default;

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& b : blocks) {
      for (auto [letter, e] : {std::pair{'U', b.u}, std::pair{'V', b.v}}) {
        if (!first) os << ' ';
        first = false;
        os << letter;
        if (e != 1) os << e;
      }
    }
    return os.str();
  }

  GenWord to_gen_word() const {
    GenWord w;
    for (const auto& b : blocks) {
      w.insert(w.end(), b.u, Generator::U);
      w.insert(w.end(), b.v, Generator::V);
    }
    return w;
  }
};

/// Equality of UV-words as cyclic words.
inline bool rotation_equal(const UVWord& a, const UVWord& b) {
  if (a.blocks.size() != b.blocks.size()) return false;
  const std::size_t k = a.blocks.size();
  for (std::size_t r = 0; r < k; ++r) {
    bool same = true;
    for (std::size_t i = 0; i < k && same; ++i) same = a.blocks[(i + r) % k] == b.blocks[i];
    if (same) return true;
  }
  return k == 0;
}

/// Reads a word in U and V alone as a cyclic word and rotates it to begin
/// with a U-block. Empty if other letters occur or only one of U, V does.
inline std::optional<UVWord> uv_word_from(const GenWord& w) {
  if (w.empty()) return std::nullopt;
  for (Generator g : w)
    if (g != Generator::U && g != Generator::V) return std::nullopt;
  std::size_t n = w.size();
  std::size_t start = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i] == Generator::U && w[(i + n - 1) % n] == Generator::V) {
      start = i;
      break;
    }
  }
  if (start == n) return std::nullopt;
  UVWord out;
  std::size_t i = 0;
  while (i < n) {
    UVWord::Block b{0, 0};
    while (i < n && w[(start + i) % n] == Generator::U) ++b.u, ++i;
    while (i < n && w[(start + i) % n] == Generator::V) ++b.v, ++i;
    out.blocks.push_back(b);
  }
  return out;
}

inline Mat2Z uv_to_matrix(const UVWord& w) { return word_to_matrix(w.to_gen_word()); }

/// Hyperbolicity of the PSL_2 class for det +1 (|trace| > 2), and of g^2
/// for det -1 (trace != 0).
inline bool is_hyperbolic(const Mat2Z& g) {
  BigInt det = g.det();
  BigInt t = g.trace();
  if (det == 1) return t > 2 || t < -2;
  if (det == -1) return t != 0;
  throw std::invalid_argument("determinant must be +1 or -1");
}

/// The exponent sequence [y1, ..., yk] of S R^{y1} ... S R^{yk}, with
/// yi in {1, 2}, as a cyclic sequence.
class SRSeq {
 public:
  SRSeq() = default;
  explicit SRSeq(std::vector<std::uint8_t> ys) : ys_(std::move(ys)) {
    if (ys_.empty()) throw std::invalid_argument("SR sequence must be nonempty");
    for (auto y : ys_)
      if (y != 1 && y != 2) throw std::invalid_argument("SR exponents must be 1 or 2");
  }

  const std::vector<std::uint8_t>& values() const { return ys_; }
  std::size_t size() const { return ys_.size(); }

  /// The lexicographically greatest rotation.
  SRSeq canonical_rotation() const {
    std::vector<std::uint8_t> best = ys_;
    std::vector<std::uint8_t> cur = ys_;
    for (std::size_t r = 1; r < ys_.size(); ++r) {
      std::rotate(cur.begin(), cur.begin() + 1, cur.end());
      if (cur > best) best = cur;
    }
    SRSeq out;
    out.ys_ = std::move(best);
    return out;
  }

  SRSeq reversed() const {
    SRSeq out;
    out.ys_.assign(ys_.rbegin(), ys_.rend());
    return out;
  }

  /// Whether `other` is a rotation of this sequence.
  bool is_rotation_of(const SRSeq& other) const {
    if (other.ys_.size() != ys_.size()) return false;
    std::vector<std::uint8_t> doubled = ys_;
    doubled.insert(doubled.end(), ys_.begin(), ys_.end());
    return std::search(doubled.begin(), doubled.end(), other.ys_.begin(), other.ys_.end()) != doubled.end();
  }

  /// Equality as cyclic sequences.
  friend bool operator==(const SRSeq& a, const SRSeq& b) { return a.is_rotation_of(b); }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < ys_.size(); ++i) {
      if (i) out += ',';
      out += static_cast<char>('0' + ys_[i]);
    }
    return out + "]";
  }

 private:
  std::vector<std::uint8_t> ys_;
};

namespace detail {

// A letter of Z/2 * Z/3: S (power 0) or R^e with e in {1, 2}.
struct SRLetter {
  bool is_s;
  int r;
};

inline void push_reduced(std::vector<SRLetter>& st, SRLetter l) {
  if (!st.empty() && st.back().is_s == l.is_s) {
    if (l.is_s) {
      st.pop_back();
    } else {
      int e = (st.back().r + l.r) % 3;
      if (e == 0) st.pop_back();
      else st.back().r = e;
    }
    return;
  }
  st.push_back(l);
}

}  // namespace detail

/// SR canonical form of the PSL_2(Z) conjugacy class of a hyperbolic g with
/// det +1. The matrix is factored into U^{+-1}, V^{+-1} by Euclidean column
/// reduction, rewritten with U = S R^2, V = S R, U^-1 = R S, V^-1 = R^2 S,
/// freely and cyclically reduced in Z/2 * Z/3, and returned as its
/// lexicographically greatest rotation.
inline SRSeq sr_canonical(const Mat2Z& g) {
  if (g.det() != 1) throw std::invalid_argument("sr_canonical needs det +1");
  if (!is_hyperbolic(g)) throw std::invalid_argument("sr_canonical needs a hyperbolic matrix");
  using detail::SRLetter;
  const SRLetter S{true, 0}, R1{false, 1}, R2{false, 2};
  std::vector<SRLetter> st;
  for (Generator gen : decompose_matrix(g)) {
    switch (gen) {
      case Generator::U: detail::push_reduced(st, S); detail::push_reduced(st, R2); break;
      case Generator::V: detail::push_reduced(st, S); detail::push_reduced(st, R1); break;
      case Generator::Uinv: detail::push_reduced(st, R1); detail::push_reduced(st, S); break;
      case Generator::Vinv: detail::push_reduced(st, R2); detail::push_reduced(st, S); break;
      default: throw std::logic_error("unexpected letter in det +1 factorization");
    }
  }
  // Cyclic reduction: fold the last letter into the first while they agree.
  std::vector<SRLetter> cyc(st.begin(), st.end());
  while (cyc.size() >= 2 && cyc.front().is_s == cyc.back().is_s) {
    SRLetter back = cyc.back();
    cyc.pop_back();
    if (back.is_s) {
      cyc.erase(cyc.begin());
    } else {
      int e = (cyc.front().r + back.r) % 3;
      if (e == 0) cyc.erase(cyc.begin());
      else cyc.front().r = e;
    }
  }
  if (cyc.size() < 2) throw std::logic_error("hyperbolic class reduced to an elliptic word");
  if (!cyc.front().is_s) std::rotate(cyc.begin(), cyc.begin() + 1, cyc.end());
  std::vector<std::uint8_t> ys;
  for (std::size_t i = 1; i < cyc.size(); i += 2) ys.push_back(static_cast<std::uint8_t>(cyc[i].r));
  return SRSeq(std::move(ys)).canonical_rotation();
}

/// Run-length reading: 2 -> U, 1 -> V, starting at the first U-run of the
/// given rotation.
inline UVWord sr_to_uvword(const SRSeq& s) {
  const auto& ys = s.values();
  const std::size_t n = ys.size();
  std::size_t start = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (ys[i] == 2 && ys[(i + n - 1) % n] == 1) {
      start = i;
      break;
    }
  }
  if (start == n) throw std::invalid_argument("constant SR sequence is a power of U or V, not hyperbolic");
  UVWord out;
  std::size_t i = 0;
  while (i < n) {
    UVWord::Block b{0, 0};
    while (i < n && ys[(start + i) % n] == 2) ++b.u, ++i;
    while (i < n && ys[(start + i) % n] == 1) ++b.v, ++i;
    out.blocks.push_back(b);
  }
  return out;
}

inline SRSeq uv_to_sr(const UVWord& w) {
  std::vector<std::uint8_t> ys;
  for (const auto& b : w.blocks) {
    ys.insert(ys.end(), b.u, 2);
    ys.insert(ys.end(), b.v, 1);
  }
  return SRSeq(std::move(ys));
}

/// Cyclic palindrome test: the reversed sequence is a rotation.
inline bool is_ambiguous(const SRSeq& s) { return s.is_rotation_of(s.reversed()); }
inline bool is_ambiguous(const UVWord& w) { return is_ambiguous(uv_to_sr(w)); }

/// Everything `classify-word` reports about a matrix.
struct MatrixClass {
  Mat2Z matrix;
  BigInt trace;
  BigInt det;
  bool hyperbolic = false;
  bool squared = false;  // det -1: sequence and ambiguity refer to g^2
  std::optional<SRSeq> sr;
  std::optional<UVWord> uv;
  std::optional<bool> ambiguous;
};

inline MatrixClass classify_matrix(const Mat2Z& g) {
  MatrixClass out;
  out.matrix = g;
  out.trace = g.trace();
  out.det = g.det();
  out.hyperbolic = is_hyperbolic(g);
  if (!out.hyperbolic) return out;
  Mat2Z h = g;
  if (out.det == -1) {
    h = g * g;
    out.squared = true;
  }
  out.sr = sr_canonical(h);
  out.uv = sr_to_uvword(*out.sr);
  out.ambiguous = is_ambiguous(*out.sr);
  return out;
}

}  // namespace markoff
