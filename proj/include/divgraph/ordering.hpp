#pragma once

// Orderings of a partitioned set in which consecutive elements always come
// from different blocks. One exists iff the largest block has at most
// (n + 1) / 2 elements.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace divgraph {

inline bool feasible(std::span<const std::size_t> block_sizes) {
  if (block_sizes.empty()) throw std::invalid_argument("feasible: no blocks");
  std::size_t n = std::accumulate(block_sizes.begin(), block_sizes.end(), std::size_t{0});
  std::size_t largest = *std::max_element(block_sizes.begin(), block_sizes.end());
  return 2 * largest <= n + 1;
}

template <class T>
struct Arrangement {
  std::optional<std::vector<T>> order;  // empty when infeasible
  std::vector<std::size_t> block_of;    // block index of each ordered element
  std::size_t total = 0;
  std::size_t largest = 0;  // size of the largest block

  [[nodiscard]] bool feasible() const { return order.has_value(); }
};

/// Repeatedly takes one element from each of the two largest blocks (ties by
/// block index) until at most two remain, then prepends the pairs back in
/// reverse, orienting each pair so that its second element and the element
/// after it lie in different blocks.
template <class T>
Arrangement<T> arrange(const std::vector<std::vector<T>>& blocks) {
  std::set<T> seen;
  Arrangement<T> out;
  for (const auto& b : blocks) {
    for (const auto& e : b) {
      if (!seen.insert(e).second) throw std::invalid_argument("arrange: blocks overlap");
    }
    out.total += b.size();
    out.largest = std::max(out.largest, b.size());
  }
  if (out.total == 0) throw std::invalid_argument("arrange: no elements");
  if (2 * out.largest > out.total + 1) return out;

  const std::size_t k = blocks.size();
  std::vector<std::size_t> left(k), pos(k, 0);
  for (std::size_t i = 0; i < k; ++i) left[i] = blocks[i].size();
  auto take = [&](std::size_t b) { return blocks[b][pos[b]++]; };

  struct Pair {
    T f, g;
    std::size_t bf, bg;
  };
  std::vector<Pair> pairs;
  std::size_t n = out.total;
  std::vector<std::size_t> idx(k);
  while (n > 2) {
    std::iota(idx.begin(), idx.end(), 0);
    std::partial_sort(idx.begin(), idx.begin() + 2, idx.end(),
                      [&](std::size_t a, std::size_t b) { return left[a] != left[b] ? left[a] > left[b] : a < b; });
    std::size_t b1 = idx[0], b2 = idx[1];
    T f = take(b1);
    T g = take(b2);
    --left[b1];
    --left[b2];
    pairs.push_back({f, g, b1, b2});
    n -= 2;
  }

  std::deque<T> seq;
  std::deque<std::size_t> seq_block;
  for (std::size_t b = 0; b < k; ++b) {
    while (left[b] > 0) {
      seq.push_back(take(b));
      seq_block.push_back(b);
      --left[b];
    }
  }
  for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
    bool g_first = !seq.empty() && seq_block.front() == it->bg;
    const T& second = g_first ? it->f : it->g;
    const T& first = g_first ? it->g : it->f;
    seq.push_front(second);
    seq_block.push_front(g_first ? it->bf : it->bg);
    seq.push_front(first);
    seq_block.push_front(g_first ? it->bg : it->bf);
  }
  out.order = std::vector<T>(seq.begin(), seq.end());
  out.block_of.assign(seq_block.begin(), seq_block.end());
  return out;
}

}  // namespace divgraph
