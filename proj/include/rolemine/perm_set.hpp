// Copyright 2026 The rolemine Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace rolemine {

using PermIndex = std::uint32_t;
using UserIndex = std::uint32_t;

/// A set of permission indices stored as a growable bitset.
///
/// Two sets compare equal when they hold the same indices, regardless of
/// how many trailing zero words either one carries. Ordering helpers follow
/// the sorted-sequence (lexicographic) order of the held indices.
class PermSet {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  PermSet() = default;
  explicit PermSet(std::size_t universe) : words_((universe + kWordBits - 1) / kWordBits, 0) {}
  PermSet(std::initializer_list<PermIndex> perms) {
    for (PermIndex p : perms) insert(p);
  }

  static PermSet from_indices(std::span<const PermIndex> perms, std::size_t universe = 0) {
    PermSet s(universe);
    for (PermIndex p : perms) s.insert(p);
    return s;
  }

  void insert(PermIndex p) {
    const std::size_t w = p / kWordBits;
    if (w >= words_.size()) words_.resize(w + 1, 0);
    words_[w] |= Word{1} << (p % kWordBits);
  }

  void erase(PermIndex p) {
    const std::size_t w = p / kWordBits;
    if (w < words_.size()) words_[w] &= ~(Word{1} << (p % kWordBits));
  }

  bool contains(PermIndex p) const {
    const std::size_t w = p / kWordBits;
    return w < words_.size() && ((words_[w] >> (p % kWordBits)) & 1U) != 0;
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool empty() const {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
  }

  /// Largest held index plus one, or 0 when empty.
  std::size_t extent() const {
    for (std::size_t i = words_.size(); i-- > 0;) {
      if (words_[i] != 0) return i * kWordBits + kWordBits - static_cast<std::size_t>(std::countl_zero(words_[i]));
    }
    return 0;
  }

  bool is_subset_of(const PermSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if ((words_[i] & ~other.word(i)) != 0) return false;
    }
    return true;
  }

  bool intersects(const PermSet& other) const {
    const std::size_t n = std::min(words_.size(), other.words_.size());
    for (std::size_t i = 0; i < n; ++i) {
      if ((words_[i] & other.words_[i]) != 0) return true;
    }
    return false;
  }

  std::size_t intersection_size(const PermSet& other) const {
    const std::size_t n = std::min(words_.size(), other.words_.size());
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
    return c;
  }

  PermSet& operator|=(const PermSet& other) {
    if (other.words_.size() > words_.size()) words_.resize(other.words_.size(), 0);
    for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }

  PermSet& operator&=(const PermSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.word(i);
    return *this;
  }

  /// Removes every index held by `other`.
  PermSet& subtract(const PermSet& other) {
    const std::size_t n = std::min(words_.size(), other.words_.size());
    for (std::size_t i = 0; i < n; ++i) words_[i] &= ~other.words_[i];
    return *this;
  }

  friend PermSet operator|(PermSet a, const PermSet& b) { return a |= b; }
  friend PermSet operator&(PermSet a, const PermSet& b) { return a &= b; }
  friend PermSet operator-(PermSet a, const PermSet& b) { return a.subtract(b); }

  friend bool operator==(const PermSet& a, const PermSet& b) {
    const std::size_t n = std::max(a.words_.size(), b.words_.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (a.word(i) != b.word(i)) return false;
    }
    return true;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      Word w = words_[i];
      while (w != 0) {
        const int bit = std::countr_zero(w);
        f(static_cast<PermIndex>(i * kWordBits + static_cast<std::size_t>(bit)));
        w &= w - 1;
      }
    }
  }

  std::vector<PermIndex> to_vector() const {
    std::vector<PermIndex> out;
    out.reserve(size());
    for_each([&](PermIndex p) { out.push_back(p); });
    return out;
  }

  std::size_t hash() const {
    std::size_t h = 0x9E3779B97F4A7C15ULL;
    std::size_t last = words_.size();
    while (last > 0 && words_[last - 1] == 0) --last;
    for (std::size_t i = 0; i < last; ++i) {
      h ^= std::hash<Word>{}(words_[i]) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

 private:
  Word word(std::size_t i) const { return i < words_.size() ? words_[i] : 0; }

  std::vector<Word> words_;
};

/// Lexicographic comparison of the sorted index sequences.
inline bool lex_less(const PermSet& a, const PermSet& b) {
  const auto va = a.to_vector();
  const auto vb = b.to_vector();
  return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
}

/// Orders by size, then lexicographically. This is the canonical role order.
inline bool size_lex_less(const PermSet& a, const PermSet& b) {
  const std::size_t sa = a.size();
  const std::size_t sb = b.size();
  if (sa != sb) return sa < sb;
  return lex_less(a, b);
}

struct PermSetHash {
  std::size_t operator()(const PermSet& s) const { return s.hash(); }
};

}  // namespace rolemine
