#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <cstring>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace derange {

inline constexpr unsigned kMaxDegree = 16;

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A bijection of {1..n}, n <= kMaxDegree.
///
/// Images are stored 0-based in a fixed 16-byte array; slots past the degree
/// always hold the identity so that whole-array comparisons and the word-wide
/// fixed-point test below stay valid. The public interface uses 1-based points.
///
/// Product convention: (a * b)(x) = a(b(x)), i.e. b acts first.
class Permutation {
 public:
  Permutation() : Permutation(0) {}
  explicit Permutation(unsigned degree) : degree_(static_cast<std::uint8_t>(degree)) {
    if (degree > kMaxDegree) throw std::invalid_argument("Permutation: degree exceeds 16");
    std::iota(images_.begin(), images_.end(), std::uint8_t{0});
  }

  /// From 1-based images: images[i-1] = sigma(i).
  static Permutation from_images(std::span<const unsigned> images) {
    Permutation p(static_cast<unsigned>(images.size()));
    std::array<bool, kMaxDegree> seen{};
    for (std::size_t i = 0; i < images.size(); ++i) {
      const unsigned y = images[i];
      if (y < 1 || y > images.size() || seen[y - 1]) {
        throw std::invalid_argument("Permutation::from_images: not a bijection");
      }
      seen[y - 1] = true;
      p.images_[i] = static_cast<std::uint8_t>(y - 1);
    }
    return p;
  }

  /// From 0-based images without validation; callers guarantee a bijection.
  static Permutation from_images0(std::span<const std::uint8_t> images) {
    Permutation p(static_cast<unsigned>(images.size()));
    std::copy(images.begin(), images.end(), p.images_.begin());
    return p;
  }

  unsigned degree() const { return degree_; }
  unsigned operator()(unsigned point) const { return images_[point - 1] + 1u; }
  unsigned image0(unsigned i) const { return images_[i]; }
  std::span<const std::uint8_t> images0() const { return {images_.data(), degree_}; }

  bool is_identity() const {
    for (unsigned i = 0; i < degree_; ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    Permutation r(degree_);
    for (unsigned i = 0; i < degree_; ++i) r.images_[images_[i]] = static_cast<std::uint8_t>(i);
    return r;
  }

  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.degree_ != b.degree_) throw std::invalid_argument("Permutation: degree mismatch");
    Permutation r(a.degree_);
    for (unsigned i = 0; i < a.degree_; ++i) r.images_[i] = a.images_[b.images_[i]];
    return r;
  }

  /// tau * this * tau^-1
  Permutation conjugated_by(const Permutation& tau) const {
    Permutation r(degree_);
    for (unsigned i = 0; i < degree_; ++i) r.images_[tau.images_[i]] = tau.images_[images_[i]];
    return r;
  }

  unsigned fixed_point_count() const {
    unsigned c = 0;
    for (unsigned i = 0; i < degree_; ++i) c += images_[i] == i;
    return c;
  }

  bool is_derangement() const { return agrees_nowhere(Permutation(degree_)); }

  /// True iff this(x) != other(x) for every point x. Compares eight image
  /// bytes per step with the classic zero-byte test on the XOR.
  bool agrees_nowhere(const Permutation& other) const {
    static_assert(std::endian::native == std::endian::little);
    std::uint64_t a[2], b[2];
    std::memcpy(a, images_.data(), sizeof a);
    std::memcpy(b, other.images_.data(), sizeof b);
    for (unsigned w = 0; w < 2; ++w) {
      const unsigned lanes = degree_ > 8 * w ? std::min(8u, degree_ - 8 * w) : 0u;
      if (lanes == 0) break;
      const std::uint64_t x = a[w] ^ b[w];
      const std::uint64_t zero_bytes = (x - 0x0101010101010101ULL) & ~x & 0x8080808080808080ULL;
      const std::uint64_t mask = lanes == 8 ? ~0ULL : ((1ULL << (8 * lanes)) - 1);
      if (zero_bytes & mask) return false;
    }
    return true;
  }

  /// +1 for even, -1 for odd permutations.
  int sign() const {
    const auto cycles = cycle_type();
    unsigned transpositions = 0;
    for (unsigned len : cycles) transpositions += len - 1;
    return transpositions % 2 == 0 ? 1 : -1;
  }

  /// Cycle lengths including 1-cycles, sorted descending.
  std::vector<unsigned> cycle_type() const {
    std::vector<unsigned> lengths;
    std::array<bool, kMaxDegree> seen{};
    for (unsigned i = 0; i < degree_; ++i) {
      if (seen[i]) continue;
      unsigned len = 0;
      for (unsigned j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        ++len;
      }
      lengths.push_back(len);
    }
    std::sort(lengths.rbegin(), lengths.rend());
    return lengths;
  }

  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (unsigned len : cycle_type()) o = std::lcm(o, std::uint64_t{len});
    return o;
  }

  /// Disjoint cycles, each starting at its least point, ordered by that point.
  /// 1-cycles are omitted.
  std::vector<std::vector<unsigned>> cycles() const {
    std::vector<std::vector<unsigned>> out;
    std::array<bool, kMaxDegree> seen{};
    for (unsigned i = 0; i < degree_; ++i) {
      if (seen[i] || images_[i] == i) continue;
      std::vector<unsigned> c;
      for (unsigned j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        c.push_back(j + 1);
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.degree_ == b.degree_ && a.images_ == b.images_;
  }
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    return a.images_ <=> b.images_;
  }

  std::size_t hash() const {
    std::uint64_t w[2];
    std::memcpy(w, images_.data(), sizeof w);
    std::uint64_t h = w[0] * 0x9E3779B97F4A7C15ULL ^ (w[1] + 0x632BE59BD9B4E019ULL + degree_);
    h ^= h >> 29;
    return static_cast<std::size_t>(h * 0xBF58476D1CE4E5B9ULL);
  }

 private:
  std::uint8_t degree_;
  std::array<std::uint8_t, kMaxDegree> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const { return p.hash(); }
};

/// Transposition (a b) on `degree` points.
inline Permutation transposition(unsigned degree, unsigned a, unsigned b) {
  std::vector<unsigned> img(degree);
  std::iota(img.begin(), img.end(), 1u);
  std::swap(img[a - 1], img[b - 1]);
  return Permutation::from_images(img);
}

/// The cycle (1 2 ... m) on `degree` points.
inline Permutation long_cycle(unsigned degree, unsigned m) {
  std::vector<unsigned> img(degree);
  std::iota(img.begin(), img.end(), 1u);
  for (unsigned i = 0; i < m; ++i) img[i] = (i + 1) % m + 1;
  return Permutation::from_images(img);
}

// ---------------------------------------------------------------------------
// Lehmer ranking: a bijection S_n -> [0, n!) that preserves lexicographic order
// of image sequences.
// ---------------------------------------------------------------------------

inline std::uint64_t factorial_u64(unsigned n) {
  std::uint64_t f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

inline std::uint64_t rank(const Permutation& p) {
  const unsigned n = p.degree();
  std::uint64_t r = 0;
  std::uint32_t used = 0;
  for (unsigned i = 0; i < n; ++i) {
    const unsigned y = p.image0(i);
    const unsigned smaller_unused = y - static_cast<unsigned>(std::popcount(used & ((1u << y) - 1)));
    r = r * (n - i) + smaller_unused;
    used |= 1u << y;
  }
  return r;
}

inline Permutation unrank(unsigned n, std::uint64_t r) {
  std::array<std::uint8_t, kMaxDegree> digits{};
  for (unsigned i = n; i-- > 0;) {
    digits[i] = static_cast<std::uint8_t>(r % (n - i));
    r /= (n - i);
  }
  std::vector<std::uint8_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::uint8_t{0});
  std::array<std::uint8_t, kMaxDegree> img{};
  for (unsigned i = 0; i < n; ++i) {
    img[i] = pool[digits[i]];
    pool.erase(pool.begin() + digits[i]);
  }
  return Permutation::from_images0({img.data(), n});
}

// ---------------------------------------------------------------------------
// Cycle notation
// ---------------------------------------------------------------------------

/// Parses disjoint-cycle notation such as "(1623)(45)" or "(1,10,3)(4 5)".
///
/// Inside a cycle, points are separated by commas or whitespace. For degree
/// <= 9 a separator-free cycle like "(1623)" reads one digit per point. The
/// empty string and "()" denote the identity. Points must lie in 1..degree
/// and may not repeat, within a cycle or across cycles.
inline Permutation parse_cycles(std::string_view text, unsigned degree) {
  if (degree > kMaxDegree) throw ParseError("degree exceeds 16");
  std::vector<unsigned> img(degree);
  std::iota(img.begin(), img.end(), 1u);
  std::vector<bool> used(degree + 1, false);

  auto fail = [&](const std::string& why) {
    throw ParseError("cycle notation '" + std::string(text) + "': " + why);
  };
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };

  std::size_t i = 0;
  while (i < text.size()) {
    if (is_space(text[i])) { ++i; continue; }
    if (text[i] != '(') fail("expected '('");
    const std::size_t close = text.find(')', i);
    if (close == std::string_view::npos) fail("unterminated cycle");
    const std::string_view body = text.substr(i + 1, close - i - 1);
    i = close + 1;

    std::vector<unsigned> cycle;
    const bool has_separator = body.find_first_of(", \t") != std::string_view::npos;
    if (!has_separator && degree <= 9) {
      for (char c : body) {
        if (c < '0' || c > '9') fail("unexpected character");
        cycle.push_back(static_cast<unsigned>(c - '0'));
      }
    } else {
      std::size_t j = 0;
      while (j < body.size()) {
        if (body[j] == ',' || is_space(body[j])) { ++j; continue; }
        if (body[j] < '0' || body[j] > '9') fail("unexpected character");
        unsigned v = 0;
        while (j < body.size() && body[j] >= '0' && body[j] <= '9') {
          v = v * 10 + static_cast<unsigned>(body[j] - '0');
          if (v > 1000) fail("point out of range");
          ++j;
        }
        cycle.push_back(v);
      }
    }
    for (unsigned v : cycle) {
      if (v < 1 || v > degree) fail("point " + std::to_string(v) + " outside 1.." + std::to_string(degree));
      if (used[v]) fail("repeated point " + std::to_string(v));
      used[v] = true;
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) img[cycle[k] - 1] = cycle[(k + 1) % cycle.size()];
  }
  return Permutation::from_images(img);
}

/// Canonical disjoint-cycle text: cycles start at their least point, are
/// ordered by it, and 1-cycles are omitted; the identity is "()". Points are
/// comma-separated when the degree exceeds 9.
inline std::string format_cycles(const Permutation& p) {
  const auto cs = p.cycles();
  if (cs.empty()) return "()";
  std::string out;
  const bool separate = p.degree() > 9;
  for (const auto& c : cs) {
    out += '(';
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (separate && k > 0) out += ',';
      out += std::to_string(c[k]);
    }
    out += ')';
  }
  return out;
}

}  // namespace derange

template <>
struct std::hash<derange::Permutation> {
  std::size_t operator()(const derange::Permutation& p) const { return p.hash(); }
};
