#pragma once

#include <bit>
#include <cstddef>
#include <vector>

namespace rdperm::detail {

// Binary indexed tree over 1..n holding counts.
class Fenwick {
 public:
  explicit Fenwick(int n) : n_(n), tree_(static_cast<std::size_t>(n) + 1, 0) {}

  void add(int i, int delta) {
    for (; i <= n_; i += i & -i) tree_[static_cast<std::size_t>(i)] += delta;
  }

  // sum over 1..i
  int prefix(int i) const {
    int s = 0;
    for (; i > 0; i -= i & -i) s += tree_[static_cast<std::size_t>(i)];
    return s;
  }

  // smallest i with prefix(i) >= k; requires 1 <= k <= total
  int kth(int k) const {
    int pos = 0;
    for (int step = std::bit_floor(static_cast<unsigned>(n_)); step > 0; step >>= 1) {
      const int next = pos + step;
      if (next <= n_ && tree_[static_cast<std::size_t>(next)] < k) {
        pos = next;
        k -= tree_[static_cast<std::size_t>(next)];
      }
    }
    return pos + 1;
  }

  static Fenwick filled(int n) {
    Fenwick f(n);
    for (int i = 1; i <= n; ++i) {
      f.tree_[static_cast<std::size_t>(i)] += 1;
      const int parent = i + (i & -i);
      if (parent <= n) f.tree_[static_cast<std::size_t>(parent)] += f.tree_[static_cast<std::size_t>(i)];
    }
    return f;
  }

 private:
  int n_;
  std::vector<int> tree_;
};

}  // namespace rdperm::detail
