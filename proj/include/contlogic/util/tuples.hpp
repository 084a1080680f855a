#pragma once

#include <cstddef>
#include <vector>

namespace contlogic {

/// Calls fn(tuple) for every tuple with 0 <= tuple[i] < sizes[i], last coordinate
/// fastest. Stops early when fn returns false; returns false in that case.
template <class Fn>
bool for_each_tuple(const std::vector<int>& sizes, Fn&& fn) {
  for (int s : sizes) {
    if (s <= 0) return true;
  }
  std::vector<int> t(sizes.size(), 0);
  while (true) {
    if (!fn(static_cast<const std::vector<int>&>(t))) return false;
    std::size_t k = sizes.size();
    while (true) {
      if (k == 0) return true;
      --k;
      if (++t[k] < sizes[k]) break;
      t[k] = 0;
    }
  }
}

}  // namespace contlogic
