#pragma once

// Longest chains in the divisor graph on S(x, y) = { n <= x : P(n) <= y }.
//
// longest_chain_exact is a branch-and-bound DFS. Besides the reachable-set
// bound it uses a hub bound: call the small vertices n <= x/4 hubs. Once the
// hubs are deleted the remaining vertices fall into tiny components, so a
// path splits into hubs and short segments, each segment living in one
// component and attached on either side to a hub or to an end of the path.
// A hub has at most two path neighbours. Giving hub h a price pi_h >= 0 and
// charging each segment the prices of its attaching hubs yields
//
//   |P| <= sum_h (1 + 2 pi_h) + sum_components (best packing of disjoint
//          segments, each worth |segment| - prices of its attachments),
//
// valid for every pi >= 0. Prices are tuned once at the root by subgradient
// steps and reused at every node, where the current endpoint acts as an
// extra zero-price attachment point with a single slot.

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "divgraph/arith.hpp"
#include "divgraph/builder.hpp"
#include "divgraph/chain.hpp"
#include "divgraph/rational.hpp"

namespace divgraph {

enum class SearchStatus { Exact, LowerBound };

inline std::string_view to_string(SearchStatus s) { return s == SearchStatus::Exact ? "EXACT" : "LOWER_BOUND"; }

struct SearchResult {
  std::size_t best_length = 0;
  Chain best_chain;
  SearchStatus status = SearchStatus::LowerBound;
  u64 nodes_explored = 0;
  std::chrono::milliseconds budget_used{0};
  std::optional<std::size_t> upper_bound;  // root hub bound, when computed
};

struct SearchOptions {
  std::chrono::milliseconds budget{std::chrono::minutes(10)};
  std::optional<Chain> seed;  // extra incumbent besides the builder certificate
  unsigned threads = 1;
  bool hub_bound = true;
};

/// Largest floor(x) accepted by oracle_bruteforce.
inline constexpr u64 kBruteForceCap = 24;

/// Above this many vertices adjacency lists are not stored.
inline constexpr std::size_t kStoredAdjacencyLimit = 5000;

namespace detail {

/// The divisor graph on S(x, y), vertices indexed in ascending order.
class DivisorGraph {
 public:
  DivisorGraph(u64 N, u64 Y) : N_(N), index_(N + 1, -1) {
    for (u64 n = 1; n <= N; ++n) {
      if (largest_prime_factor(n) <= Y) {
        index_[n] = static_cast<int>(verts_.size());
        verts_.push_back(n);
      }
    }
    stored_ = verts_.size() <= kStoredAdjacencyLimit;
    degree_.assign(verts_.size(), 0);
    if (stored_) adj_.resize(verts_.size());
    for (std::size_t i = 0; i < verts_.size(); ++i) {
      u64 a = verts_[i];
      for (u64 b = 2 * a; b <= N; b += a) {
        int j = index_[b];
        if (j < 0) continue;
        ++degree_[i];
        ++degree_[j];
        if (stored_) {
          adj_[i].push_back(j);
          adj_[j].push_back(static_cast<int>(i));
        }
      }
    }
    // descending degree, then ascending integer (= ascending index)
    auto order = [this](int a, int b) { return degree_[a] != degree_[b] ? degree_[a] > degree_[b] : a < b; };
    if (stored_) {
      for (auto& list : adj_) std::sort(list.begin(), list.end(), order);
    }
    start_order_.resize(verts_.size());
    for (std::size_t i = 0; i < verts_.size(); ++i) start_order_[i] = static_cast<int>(i);
    std::sort(start_order_.begin(), start_order_.end(), order);
  }

  [[nodiscard]] std::size_t size() const { return verts_.size(); }
  [[nodiscard]] u64 value(int i) const { return verts_[i]; }
  [[nodiscard]] int index_of(u64 n) const { return n <= N_ ? index_[n] : -1; }
  [[nodiscard]] const std::vector<int>& start_order() const { return start_order_; }
  [[nodiscard]] bool stored() const { return stored_; }

  /// Neighbours of vertex i in DFS order.
  [[nodiscard]] std::vector<int> neighbors(int i) const {
    if (stored_) return adj_[i];
    std::vector<int> out;
    u64 a = verts_[i];
    for (u64 d : divisors(a)) {
      if (d != a && index_[d] >= 0) out.push_back(index_[d]);
    }
    for (u64 b = 2 * a; b <= N_; b += a) {
      if (index_[b] >= 0) out.push_back(index_[b]);
    }
    std::sort(out.begin(), out.end(), [this](int x, int y) {
      return degree_[x] != degree_[y] ? degree_[x] > degree_[y] : x < y;
    });
    return out;
  }

  [[nodiscard]] const std::vector<int>& stored_neighbors(int i) const { return adj_[i]; }

 private:
  u64 N_;
  std::vector<int> index_;
  std::vector<u64> verts_;
  std::vector<int> degree_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> start_order_;
  bool stored_ = true;
};

/// The hub bound described at the top of this file.
class HubBound {
 public:
  static constexpr std::size_t kMaxComponent = 10;

  HubBound(const DivisorGraph& g, u64 threshold) : g_(g), hub_(g.size(), 0), comp_of_(g.size(), -1),
                                                    local_of_(g.size(), -1), price_(g.size(), 0.0) {
    for (std::size_t i = 0; i < g.size(); ++i) hub_[i] = g.value(static_cast<int>(i)) <= threshold ? 1 : 0;
    build_components();
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (hub_[i] != 0) hubs_.push_back(static_cast<int>(i));
    }
  }

  /// Tunes prices by projected subgradient descent and returns the smallest
  /// bound seen (prices are left at the minimizer).
  double tune_root(int iterations = 400) {
    std::vector<char> all(g_.size(), 1);
    std::vector<double> best_price = price_;
    for (int h : hubs_) price_[h] = 0.5;
    double best = std::numeric_limits<double>::infinity();
    double step = 0.5;
    std::vector<int> use(g_.size(), 0);
    for (int it = 0; it < iterations; ++it) {
      std::fill(use.begin(), use.end(), 0);
      double val = evaluate(all, -1, &use);
      if (val < best) {
        best = val;
        best_price = price_;
      }
      double norm = 0;
      for (int h : hubs_) norm += static_cast<double>((2 - use[h]) * (2 - use[h]));
      if (norm == 0) break;
      norm = std::sqrt(norm);
      for (int h : hubs_) price_[h] = std::max(0.0, price_[h] - step * (2 - use[h]) / norm);
      step *= 0.985;
    }
    price_ = best_price;
    return best;
  }

  /// Bound on the number of vertices of a path that uses only vertices with
  /// avail set. With e < 0 the path is free (two ends); otherwise it is the
  /// continuation of a path ending at e and must start next to e.
  double evaluate(const std::vector<char>& avail, int e, std::vector<int>* use = nullptr) const {
    const int c0 = e >= 0 ? 1 : 0;
    const int cE = e >= 0 ? 1 : 2;
    double total = 0;
    for (int h : hubs_) {
      if (avail[h] != 0) total += 1 + 2 * price_[h];
    }
    // knapsack over (E0 slots, END slots) across components
    std::array<double, 6> acc{};  // index a0 * 3 + aE, "at most" semantics
    std::vector<std::array<double, 6>> per_comp;
    std::vector<CompWork> work;
    if (use != nullptr) work.reserve(comps_.size());
    for (std::size_t ci = 0; ci < comps_.size(); ++ci) {
      CompWork w;
      if (!solve_component(ci, avail, e, c0, cE, w)) continue;
      std::array<double, 6> next{};
      for (int a0 = 0; a0 <= c0; ++a0) {
        for (int aE = 0; aE <= cE; ++aE) {
          double best = -std::numeric_limits<double>::infinity();
          for (int b0 = 0; b0 <= a0; ++b0) {
            for (int bE = 0; bE <= aE; ++bE) {
              best = std::max(best, acc[(a0 - b0) * 3 + (aE - bE)] + w.value(b0, bE));
            }
          }
          next[a0 * 3 + aE] = best;
        }
      }
      acc = next;
      if (use != nullptr) {
        per_comp.push_back(acc);
        work.push_back(std::move(w));
      }
    }
    if (use != nullptr) {
      // walk the knapsack backwards to recover each component's slot share
      int a0 = c0, aE = cE;
      for (std::size_t k = work.size(); k-- > 0;) {
        const auto& w = work[k];
        double target = per_comp[k][a0 * 3 + aE];
        int pick0 = 0, pickE = 0;
        bool found = false;
        for (int b0 = 0; b0 <= a0 && !found; ++b0) {
          for (int bE = 0; bE <= aE && !found; ++bE) {
            double prev = k > 0 ? per_comp[k - 1][(a0 - b0) * 3 + (aE - bE)] : 0.0;
            if (std::abs(prev + w.value(b0, bE) - target) < 1e-9) {
              pick0 = b0;
              pickE = bE;
              found = true;
            }
          }
        }
        w.record_use(pick0, pickE, *use);
        a0 -= pick0;
        aE -= pickE;
      }
    }
    return total + acc[c0 * 3 + cE];
  }

  [[nodiscard]] std::size_t component_count() const { return comps_.size(); }
  [[nodiscard]] std::size_t hub_count() const { return hubs_.size(); }

 private:
  struct Path {
    unsigned mask;
    int u, v;  // local endpoints
  };
  struct Component {
    std::vector<int> verts;                 // graph indices
    std::vector<std::vector<int>> hub_nbr;  // per local vertex
    std::vector<Path> paths;
  };
  struct Option {
    unsigned mask;
    double profit;
    int d0, dE;
    int h1, h2;  // attaching hubs, -1 if none
  };
  struct CompWork {
    std::vector<Option> opts;
    unsigned full = 0;
    int c0 = 0, cE = 0;
    std::vector<std::array<double, 6>> f;  // per mask
    std::vector<std::array<int, 6>> choice;

    [[nodiscard]] double value(int a0, int aE) const { return f[full][a0 * 3 + aE]; }

    void record_use(int a0, int aE, std::vector<int>& use) const {
      unsigned mask = full;
      while (mask != 0) {
        int c = choice[mask][a0 * 3 + aE];
        unsigned low = mask & (~mask + 1);
        if (c < 0) {
          mask ^= low;
          continue;
        }
        const auto& o = opts[c];
        if (o.h1 >= 0) ++use[o.h1];
        if (o.h2 >= 0) ++use[o.h2];
        a0 -= o.d0;
        aE -= o.dE;
        mask ^= o.mask;
      }
    }
  };

  void build_components() {
    for (;;) {
      comps_.clear();
      std::fill(comp_of_.begin(), comp_of_.end(), -1);
      bool split = false;
      for (std::size_t s = 0; s < g_.size() && !split; ++s) {
        if (hub_[s] != 0 || comp_of_[s] >= 0) continue;
        Component c;
        std::vector<int> stack{static_cast<int>(s)};
        comp_of_[s] = static_cast<int>(comps_.size());
        while (!stack.empty()) {
          int u = stack.back();
          stack.pop_back();
          c.verts.push_back(u);
          for (int w : g_.stored_neighbors(u)) {
            if (hub_[w] == 0 && comp_of_[w] < 0) {
              comp_of_[w] = static_cast<int>(comps_.size());
              stack.push_back(w);
            }
          }
        }
        if (c.verts.size() > kMaxComponent) {
          // promote the best-connected vertex to a hub and start over
          int pick = *std::max_element(c.verts.begin(), c.verts.end(), [this](int a, int b) {
            return g_.stored_neighbors(a).size() < g_.stored_neighbors(b).size();
          });
          hub_[pick] = 1;
          split = true;
          break;
        }
        comps_.push_back(std::move(c));
      }
      if (!split) break;
    }
    for (auto& c : comps_) {
      std::sort(c.verts.begin(), c.verts.end());
      for (std::size_t l = 0; l < c.verts.size(); ++l) local_of_[c.verts[l]] = static_cast<int>(l);
      c.hub_nbr.resize(c.verts.size());
      for (std::size_t l = 0; l < c.verts.size(); ++l) {
        for (int w : g_.stored_neighbors(c.verts[l])) {
          if (hub_[w] != 0) c.hub_nbr[l].push_back(w);
        }
      }
      enumerate_paths(c);
    }
  }

  void enumerate_paths(Component& c) {
    const int n = static_cast<int>(c.verts.size());
    std::vector<std::vector<int>> local_adj(n);
    for (int l = 0; l < n; ++l) {
      for (int w : g_.stored_neighbors(c.verts[l])) {
        if (hub_[w] == 0 && local_of_[w] >= 0 && comp_of_[w] == comp_of_[c.verts[l]]) local_adj[l].push_back(local_of_[w]);
      }
    }
    std::vector<int> stack;
    auto dfs = [&](auto&& self, int start, int v, unsigned mask) -> void {
      c.paths.push_back({mask, start, v});
      for (int w : local_adj[v]) {
        if ((mask >> w) & 1U) continue;
        self(self, start, w, mask | (1U << w));
      }
    };
    for (int l = 0; l < n; ++l) dfs(dfs, l, l, 1U << l);
  }

  struct Cheapest {
    double p1 = kInf, p2 = kInf;
    int h1 = -1, h2 = -1;
  };
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  bool solve_component(std::size_t ci, const std::vector<char>& avail, int e, int c0, int cE, CompWork& w) const {
    const auto& c = comps_[ci];
    const int n = static_cast<int>(c.verts.size());
    unsigned amask = 0;
    unsigned eadj = 0;
    for (int l = 0; l < n; ++l) {
      if (avail[c.verts[l]] != 0) amask |= 1U << l;
    }
    if (amask == 0) return false;
    std::vector<Cheapest> cheap(n);
    for (int l = 0; l < n; ++l) {
      auto& ch = cheap[l];
      for (int h : c.hub_nbr[l]) {
        if (avail[h] == 0) continue;
        double p = price_[h];
        if (p < ch.p1) {
          ch.p2 = ch.p1;
          ch.h2 = ch.h1;
          ch.p1 = p;
          ch.h1 = h;
        } else if (p < ch.p2) {
          ch.p2 = p;
          ch.h2 = h;
        }
      }
      if (e >= 0 && related(g_.value(e), g_.value(c.verts[l]))) eadj |= 1U << l;
    }
    w.c0 = c0;
    w.cE = cE;
    w.full = amask;
    for (const auto& p : c.paths) {
      if ((p.mask & amask) != p.mask) continue;
      const double len = std::popcount(p.mask);
      const auto& cu = cheap[p.u];
      const auto& cv = cheap[p.v];
      // hub on both sides, distinct
      if (cu.h1 >= 0 && cv.h1 >= 0) {
        if (cu.h1 != cv.h1) {
          w.opts.push_back({p.mask, len - cu.p1 - cv.p1, 0, 0, cu.h1, cv.h1});
        } else {
          double a = cv.h2 >= 0 ? cu.p1 + cv.p2 : kInf;
          double b = cu.h2 >= 0 ? cu.p2 + cv.p1 : kInf;
          if (a <= b && a < kInf) w.opts.push_back({p.mask, len - a, 0, 0, cu.h1, cv.h2});
          else if (b < kInf) w.opts.push_back({p.mask, len - b, 0, 0, cu.h2, cv.h1});
        }
      }
      // u side special, v side hub (the reversed path covers the mirror case)
      if (cv.h1 >= 0) {
        if (c0 > 0 && ((eadj >> p.u) & 1U)) w.opts.push_back({p.mask, len - cv.p1, 1, 0, -1, cv.h1});
        if (cE > 0) w.opts.push_back({p.mask, len - cv.p1, 0, 1, -1, cv.h1});
      }
      // both sides special
      if (c0 > 0 && cE > 0 && ((eadj >> p.u) & 1U)) w.opts.push_back({p.mask, len, 1, 1, -1, -1});
      if (cE > 1) w.opts.push_back({p.mask, len, 0, 2, -1, -1});
    }
    const unsigned size = 1U << n;
    w.f.assign(size, std::array<double, 6>{});
    w.choice.assign(size, std::array<int, 6>{});
    for (unsigned mask = 1; mask < size; ++mask) {
      if ((mask & amask) != mask) continue;
      unsigned low = mask & (~mask + 1);
      for (int a0 = 0; a0 <= c0; ++a0) {
        for (int aE = 0; aE <= cE; ++aE) {
          int s = a0 * 3 + aE;
          double best = w.f[mask ^ low][s];
          int pick = -1;
          for (std::size_t oi = 0; oi < w.opts.size(); ++oi) {
            const auto& o = w.opts[oi];
            if ((o.mask & low) == 0 || (o.mask & mask) != o.mask || o.d0 > a0 || o.dE > aE) continue;
            double v = o.profit + w.f[mask ^ o.mask][(a0 - o.d0) * 3 + (aE - o.dE)];
            if (v > best + 1e-12) {
              best = v;
              pick = static_cast<int>(oi);
            }
          }
          w.f[mask][s] = best;
          w.choice[mask][s] = pick;
        }
      }
    }
    return true;
  }

  const DivisorGraph& g_;
  std::vector<char> hub_;
  std::vector<int> comp_of_, local_of_;
  std::vector<double> price_;
  std::vector<int> hubs_;
  std::vector<Component> comps_;
};

inline Chain chain_from_indices(const DivisorGraph& g, const std::vector<int>& path, const ChainContext& ctx) {
  std::vector<u64> e;
  e.reserve(path.size());
  for (int i : path) e.push_back(g.value(i));
  return Chain(std::move(e), ctx);
}

inline u64 graph_bound(const Rational& x) { return x < Rational(1) ? 0 : static_cast<u64>(x.floor()); }

}  // namespace detail

/// Exhaustive DFS from every start vertex with only the visited set as a
/// restriction. Independent of the pruned search; floor(x) <= 24.
inline SearchResult oracle_bruteforce(const Rational& x, const Rational& y) {
  if (x < Rational(1)) throw std::invalid_argument("oracle_bruteforce: need x >= 1");
  u64 N = detail::graph_bound(x);
  if (N > kBruteForceCap) throw std::invalid_argument("oracle_bruteforce: floor(x) above 24");
  u64 Y = y < Rational(1) ? 0 : static_cast<u64>(y.floor());
  std::vector<u64> verts;
  for (u64 n = 1; n <= N; ++n) {
    if (largest_prime_factor(n) <= Y) verts.push_back(n);
  }
  const std::size_t V = verts.size();
  std::vector<std::vector<std::size_t>> adj(V);
  for (std::size_t a = 0; a < V; ++a) {
    for (std::size_t b = a + 1; b < V; ++b) {
      if (verts[b] % verts[a] == 0) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
    }
  }
  auto t0 = std::chrono::steady_clock::now();
  SearchResult res;
  std::vector<char> seen(V, 0);
  std::vector<std::size_t> path, best;
  auto dfs = [&](auto&& self, std::size_t v) -> void {
    ++res.nodes_explored;
    if (path.size() > best.size()) best = path;
    for (std::size_t w : adj[v]) {
      if (seen[w] != 0) continue;
      seen[w] = 1;
      path.push_back(w);
      self(self, w);
      path.pop_back();
      seen[w] = 0;
    }
  };
  for (std::size_t s = 0; s < V; ++s) {
    seen[s] = 1;
    path.assign(1, s);
    dfs(dfs, s);
    seen[s] = 0;
  }
  std::vector<u64> chain;
  for (std::size_t i : best) chain.push_back(verts[i]);
  res.best_length = chain.size();
  res.best_chain = Chain(std::move(chain), ChainContext{x, y});
  res.status = SearchStatus::Exact;
  res.budget_used = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
  return res;
}

/// Branch-and-bound search for f(x, y). The incumbent starts from the
/// builder's certificate (and options.seed if given); running out of budget
/// returns LOWER_BOUND with the incumbent.
inline SearchResult longest_chain_exact(const Rational& x, const Rational& y, const SearchOptions& opt = {}) {
  if (x < Rational(1)) throw std::invalid_argument("longest_chain_exact: need x >= 1");
  if (y < Rational(2)) throw std::invalid_argument("longest_chain_exact: need y >= 2");
  const auto t0 = std::chrono::steady_clock::now();
  const auto deadline = t0 + opt.budget;
  const ChainContext ctx{x, y};
  auto elapsed = [&] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
  };

  SearchResult res;
  auto lb = lower_bound_f(x, y);
  res.best_chain = lb.certificate.with_context(ctx);
  res.best_length = lb.bound;
  if (opt.seed) {
    auto rep = verify_chain(opt.seed->entries(), ctx);
    if (!rep.ok()) throw std::invalid_argument("longest_chain_exact: seed chain invalid: " + rep.message());
    if (opt.seed->length() > res.best_length) {
      res.best_chain = opt.seed->with_context(ctx);
      res.best_length = opt.seed->length();
    }
  }

  const u64 N = detail::graph_bound(x);
  const u64 Y = static_cast<u64>(y.floor());
  detail::DivisorGraph g(N, Y);
  if (res.best_length >= g.size()) {
    res.status = SearchStatus::Exact;
    res.upper_bound = g.size();
    res.budget_used = elapsed();
    return res;
  }

  std::optional<detail::HubBound> hub;
  if (opt.hub_bound && g.stored()) {
    hub.emplace(g, N / 4);
    double root = hub->tune_root();
    auto ub = static_cast<std::size_t>(std::floor(root + 1e-6));
    res.upper_bound = std::min<std::size_t>(ub, g.size());
    if (*res.upper_bound <= res.best_length) {
      res.status = SearchStatus::Exact;
      res.budget_used = elapsed();
      return res;
    }
  }

  std::mutex mu;
  std::atomic<std::size_t> best_len{res.best_length};
  std::atomic<u64> nodes{0};
  std::atomic<bool> out_of_time{false};
  std::vector<int> best_path;
  const auto& starts = g.start_order();
  const std::size_t V = g.size();

  // One DFS pass. Branches that cannot exceed `floor` vertices are cut. With
  // a target the pass stops at the first chain of that length; without one
  // it is plain branch and bound and `floor` follows the incumbent.
  auto run = [&](std::size_t floor, std::optional<std::size_t> target) {
    std::atomic<std::size_t> cut{floor};
    std::atomic<bool> stop{false};
    std::atomic<std::size_t> next_start{0};
    auto worker = [&] {
      std::vector<char> visited(V, 0), reach(V, 0);
      std::vector<int> path, queue;
      u64 local_nodes = 0;
      auto reachable = [&](int e) {
        std::fill(reach.begin(), reach.end(), 0);
        queue.assign(1, e);
        std::size_t count = 0;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
          for (int w : g.neighbors(queue[qi])) {
            if (visited[w] == 0 && reach[w] == 0) {
              reach[w] = 1;
              ++count;
              queue.push_back(w);
            }
          }
        }
        return count;
      };
      auto dfs = [&](auto&& self, int v) -> void {
        if (++local_nodes % 4096 == 0) {
          nodes += 4096;
          if (std::chrono::steady_clock::now() >= deadline) out_of_time = true;
        }
        if (path.size() > best_len.load()) {
          std::lock_guard lock(mu);
          if (path.size() > best_len.load()) {
            best_len = path.size();
            best_path = path;
            if (!target) cut = std::max(cut.load(), path.size());
          }
        }
        if (target && path.size() >= *target) stop = true;
        if (stop || out_of_time) return;
        std::size_t r = reachable(v);
        if (path.size() + r <= cut.load()) return;
        if (hub) {
          double b = hub->evaluate(reach, v);
          if (path.size() + static_cast<std::size_t>(std::floor(b + 1e-6)) <= cut.load()) return;
        }
        for (int w : g.neighbors(v)) {
          if (visited[w] != 0) continue;
          visited[w] = 1;
          path.push_back(w);
          self(self, w);
          path.pop_back();
          visited[w] = 0;
          if (stop || out_of_time) return;
        }
      };
      for (std::size_t s = next_start++; s < V; s = next_start++) {
        int v = starts[s];
        visited[v] = 1;
        path.assign(1, v);
        dfs(dfs, v);
        visited[v] = 0;
        if (stop || out_of_time) break;
      }
      nodes += local_nodes % 4096;
    };
    const unsigned threads = std::max(1U, opt.threads);
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    return stop.load();
  };

  bool exact = false;
  if (res.upper_bound) {
    // Ask for chains of length L = bound, bound - 1, ...; a pass that ends
    // without finding one proves f < L.
    for (std::size_t L = *res.upper_bound; L > best_len.load() && !out_of_time; --L) {
      if (run(L - 1, L)) {
        exact = !out_of_time;
        break;
      }
      if (!out_of_time && L == best_len.load() + 1) exact = true;
    }
  } else {
    run(best_len.load(), std::nullopt);
    exact = !out_of_time;
  }

  if (!best_path.empty() && best_path.size() > res.best_length) {
    res.best_chain = detail::chain_from_indices(g, best_path, ctx);
    res.best_length = best_path.size();
  }
  res.status = exact ? SearchStatus::Exact : SearchStatus::LowerBound;
  res.nodes_explored = nodes.load();
  res.budget_used = elapsed();
  return res;
}

}  // namespace divgraph
