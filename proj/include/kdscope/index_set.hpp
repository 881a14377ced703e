#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace kdscope {

/// Sorted, 0-based basis indices.
using IndexSet = std::vector<int>;

/// Bitmask form of an index set; bit i set <=> i in the set. d <= 32.
using Mask = std::uint32_t;

inline Mask to_mask(const IndexSet& s) {
  Mask m = 0;
  for (int i : s) m |= Mask{1} << i;
  return m;
}

inline IndexSet to_index_set(Mask m) {
  IndexSet s;
  s.reserve(std::popcount(m));
  for (int i = 0; m != 0; ++i, m >>= 1)
    if (m & 1u) s.push_back(i);
  return s;
}

inline int set_size(Mask m) { return std::popcount(m); }

inline Mask full_mask(int d) { return d >= 32 ? ~Mask{0} : (Mask{1} << d) - 1; }

/// All k-subsets of {0..d-1} in lexicographic order of their sorted index lists.
std::vector<Mask> lexicographic_subsets(int d, int k);

/// Lexicographic comparison of the sorted index lists of two masks.
bool lex_less(Mask a, Mask b);

}  // namespace kdscope
