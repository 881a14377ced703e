#include "kdscope/index_set.hpp"

#include <algorithm>

namespace kdscope {

std::vector<Mask> lexicographic_subsets(int d, int k) {
  std::vector<Mask> out;
  if (k < 0 || k > d) return out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    Mask m = 0;
    for (int i : idx) m |= Mask{1} << i;
    out.push_back(m);
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == d - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
  return out;
}

bool lex_less(Mask a, Mask b) {
  const auto sa = to_index_set(a), sb = to_index_set(b);
  return std::lexicographical_compare(sa.begin(), sa.end(), sb.begin(), sb.end());
}

}  // namespace kdscope
