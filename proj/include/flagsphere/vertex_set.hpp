#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace flagsphere {

inline constexpr int kMaxVertices = 128;

/// Fixed-capacity set of vertex ids in [0, kMaxVertices), two machine words.
class VertexSet {
 public:
  constexpr VertexSet() = default;
  VertexSet(std::initializer_list<int> vs) {
    for (int v : vs) insert(v);
  }

  static VertexSet range(int n) {
    VertexSet s;
    for (int i = 0; i < 2; ++i) {
      int lo = 64 * i;
      if (n >= lo + 64) {
        s.words_[i] = ~0ULL;
      } else if (n > lo) {
        s.words_[i] = (1ULL << (n - lo)) - 1;
      }
    }
    return s;
  }

  void insert(int v) { words_[v >> 6] |= 1ULL << (v & 63); }
  void erase(int v) { words_[v >> 6] &= ~(1ULL << (v & 63)); }
  [[nodiscard]] bool contains(int v) const { return (words_[v >> 6] >> (v & 63)) & 1ULL; }

  [[nodiscard]] int size() const { return std::popcount(words_[0]) + std::popcount(words_[1]); }
  [[nodiscard]] bool empty() const { return (words_[0] | words_[1]) == 0; }

  /// Smallest element, or -1 when empty.
  [[nodiscard]] int first() const {
    if (words_[0]) return std::countr_zero(words_[0]);
    if (words_[1]) return 64 + std::countr_zero(words_[1]);
    return -1;
  }
  /// Smallest element strictly greater than v, or -1.
  [[nodiscard]] int next(int v) const {
    ++v;
    if (v >= kMaxVertices) return -1;
    int w = v >> 6;
    std::uint64_t bits = words_[w] & (~0ULL << (v & 63));
    if (bits) return 64 * w + std::countr_zero(bits);
    if (w == 0 && words_[1]) return 64 + std::countr_zero(words_[1]);
    return -1;
  }

  [[nodiscard]] bool is_subset_of(const VertexSet& o) const {
    return (words_[0] & ~o.words_[0]) == 0 && (words_[1] & ~o.words_[1]) == 0;
  }
  [[nodiscard]] bool intersects(const VertexSet& o) const {
    return (words_[0] & o.words_[0]) || (words_[1] & o.words_[1]);
  }

  VertexSet& operator&=(const VertexSet& o) {
    words_[0] &= o.words_[0];
    words_[1] &= o.words_[1];
    return *this;
  }
  VertexSet& operator|=(const VertexSet& o) {
    words_[0] |= o.words_[0];
    words_[1] |= o.words_[1];
    return *this;
  }
  VertexSet& operator-=(const VertexSet& o) {
    words_[0] &= ~o.words_[0];
    words_[1] &= ~o.words_[1];
    return *this;
  }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
  friend bool operator==(const VertexSet&, const VertexSet&) = default;

  /// Orders sets by their ascending element sequences (lexicographic on sorted lists).
  friend bool lex_less(const VertexSet& a, const VertexSet& b) {
    int x = a.first(), y = b.first();
    while (x >= 0 && y >= 0) {
      if (x != y) return x < y;
      x = a.next(x);
      y = b.next(y);
    }
    return x < 0 && y >= 0;
  }

  [[nodiscard]] std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(size());
    for (int v = first(); v >= 0; v = next(v)) out.push_back(v);
    return out;
  }

  [[nodiscard]] std::uint64_t word(int i) const { return words_[i]; }

  template <class F>
  void for_each(F&& f) const {
    for (int i = 0; i < 2; ++i) {
      std::uint64_t bits = words_[i];
      while (bits) {
        f(64 * i + std::countr_zero(bits));
        bits &= bits - 1;
      }
    }
  }

 private:
  std::array<std::uint64_t, 2> words_{0, 0};
};

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const {
    return std::hash<std::uint64_t>{}(s.word(0) * 0x9E3779B97F4A7C15ULL ^ s.word(1));
  }
};

}  // namespace flagsphere
