// Acceptance run: one PASS/FAIL line per criterion.
// Usage: divgraph_acceptance [AC1 AC2 ...]   (no arguments runs all)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "divgraph/builder.hpp"
#include "divgraph/chain_io.hpp"
#include "divgraph/counting.hpp"
#include "divgraph/ordering.hpp"
#include "divgraph/solver.hpp"
#include "oracles.hpp"

using namespace divgraph;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

Rational R(u64 n) { return Rational(static_cast<Rational::int_type>(n)); }

std::vector<u64> golden() {
  std::ifstream in(DIVGRAPH_GOLDEN_CHAIN);
  if (!in) throw std::runtime_error("cannot open golden chain file");
  return read_chain_text(in).entries();
}

std::vector<u64> divisors_sqrt(u64 n) {
  std::vector<u64> lo, hi;
  for (u64 d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    lo.push_back(d);
    if (d * d != n) hi.push_back(n / d);
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

Outcome ac1() {
  auto g = golden();
  const ChainContext ctx{100, 100};
  Outcome o;
  auto rep = verify_chain(g, ctx);
  if (g.size() != 77 || !rep.ok()) return {false, "golden chain rejected: " + rep.message()};
  auto in_range = [](const std::vector<u64>& e) {
    return std::all_of(e.begin(), e.end(), [](u64 n) { return n >= 1 && n <= 100; });
  };
  std::size_t valid_del = 0, valid_swap = 0, disagreements = 0;
  std::string example;
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto e = g;
    e.erase(e.begin() + static_cast<std::ptrdiff_t>(i));
    bool ok = verify_chain(e, ctx).ok();
    disagreements += ok != (oracle::is_chain(e) && in_range(e));
    if (ok) {
      ++valid_del;
      if (example.empty() && i > 0 && i + 1 < g.size()) example = "deleting " + std::to_string(g[i]);
    }
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      auto e = g;
      std::swap(e[i], e[j]);
      bool ok = verify_chain(e, ctx).ok();
      disagreements += ok != (oracle::is_chain(e) && in_range(e));
      valid_swap += ok;
    }
  }
  o.ok = valid_del == 0 && valid_swap == 0 && disagreements == 0;
  o.detail = "golden chain valid, length 77; " + std::to_string(valid_del) + "/77 deletion-splices and " +
             std::to_string(valid_swap) + "/" + std::to_string(77 * 76 / 2) + " swaps still verify";
  if (!example.empty()) o.detail += " (e.g. " + example + ")";
  o.detail += "; verifier/oracle disagreements " + std::to_string(disagreements);
  return o;
}

Outcome ac2() {
  auto r = longest_chain_exact(100, 100);
  Outcome o;
  o.ok = r.status == SearchStatus::Exact && r.best_length == 77 && verify_chain(r.best_chain).ok();
  o.detail = std::string(to_string(r.status)) + " " + std::to_string(r.best_length) + " in " +
             std::to_string(r.budget_used.count()) + " ms, " + std::to_string(r.nodes_explored) + " nodes";

  SearchOptions seeded;
  seeded.seed = Chain(golden());
  seeded.budget = std::chrono::milliseconds(0);
  auto s = longest_chain_exact(100, 100, seeded);
  o.ok = o.ok && s.best_length >= 77;
  o.detail += "; golden-seeded zero-budget run keeps " + std::to_string(s.best_length);
  return o;
}

Outcome ac3() {
  std::size_t cases = 0;
  for (u64 x = 1; x <= 20; ++x) {
    for (u64 y : std::initializer_list<u64>{2, 3, x}) {
      auto o = oracle_bruteforce(R(x), R(y));
      // the solver needs y >= 2; below that S(x, y) = {1}
      std::size_t got = 1;
      if (y >= 2) {
        auto r = longest_chain_exact(R(x), R(y));
        if (r.status != SearchStatus::Exact) return {false, "not EXACT at x=" + std::to_string(x)};
        got = r.best_length;
      }
      if (got != o.best_length) {
        return {false, "x=" + std::to_string(x) + " y=" + std::to_string(y) + ": " + std::to_string(got) +
                           " vs oracle " + std::to_string(o.best_length)};
      }
      ++cases;
    }
  }
  return {true, std::to_string(cases) + " (x,y) pairs agree"};
}

Outcome ac4() {
  // trial-division largest prime factor and S(n) for n <= 2500, computed once
  std::vector<u64> P(2501);
  std::vector<Rational> S(2501);
  for (u64 n = 1; n <= 2500; ++n) {
    P[n] = oracle::largest(n);
    S[n] = oracle::schinzel(n);
  }
  std::size_t cases = 0;
  for (u64 x = 2; x <= 5000; ++x) {
    u64 s = 1;
    while (s * s < x) ++s;
    auto table = prime_table(x);
    for (u64 y : std::initializer_list<u64>{2, 3, 5, 11, s, x}) {
      std::string where = " at x=" + std::to_string(x) + " y=" + std::to_string(y);
      if (y < 2) continue;
      auto c = build_chain(R(x), R(y));
      auto rep = verify_chain(c);
      if (!rep.ok()) return {false, rep.message() + where};
      auto idx = indices(R(x), R(y));
      u64 start = idx.j == 0 ? 1 : idx.j == 1 ? 4 : 2 * table.p(idx.j - 1);
      if (c.front() != start || c.back() != 2) return {false, "wrong endpoints" + where};
      std::vector<u64> have(c.begin(), c.end());
      std::sort(have.begin(), have.end());
      std::vector<u64> need;
      for (u64 n = 1; 2 * n <= x; ++n) {
        if (P[n] <= y && S[n] <= R(x) / Rational(2)) need.push_back(n);
      }
      if (!std::includes(have.begin(), have.end(), need.begin(), need.end())) return {false, "missing A(x/2,y)" + where};
      ++cases;
    }
  }
  return {true, std::to_string(cases) + " (x,y) pairs"};
}

Outcome ac5() {
  std::size_t cases = 0, failures = 0;
  std::string first;
  for (u64 x = 1; x <= 2000; x += 7) {
    u64 r = 1;
    while ((r + 1) * (r + 1) <= x) ++r;
    for (u64 y : std::initializer_list<u64>{2, 3, 5, r, x}) {
      for (u64 z : {1, 2, 4}) {
        for (u64 t : {1, 2, 8}) {
          auto b = buchstab_check(R(x), R(y), R(z), R(t));
          ++cases;
          if (!b.equal) {
            ++failures;
            if (first.empty()) first = " first at x=" + std::to_string(x) + " y=" + std::to_string(y);
          }
        }
      }
    }
  }
  return {failures == 0, std::to_string(cases) + " grid points, " + std::to_string(failures) + " failures" + first};
}

Outcome ac6() {
  for (u64 n = 1; n <= 100000; ++n) {
    auto d = divisors_sqrt(n);
    // S(n) = n * max d_{i+1}/d_i  <=>  S(n) * d_i = n * d_{i+1} for the maximizing pair
    u64 best_num = 1, best_den = 1;
    for (std::size_t i = 1; i < d.size(); ++i) {
      if (static_cast<u128>(d[i]) * best_den > static_cast<u128>(best_num) * d[i - 1]) {
        best_num = d[i];
        best_den = d[i - 1];
      }
    }
    u64 s = schinzel_szekeres(n);
    if (static_cast<u128>(s) * best_den != static_cast<u128>(n) * best_num)
      return {false, "mismatch at n=" + std::to_string(n)};
  }
  return {true, "n <= 100000"};
}

Outcome ac7() {
  std::size_t cases = 0;
  for (u64 x = 2; x <= 10000; ++x) {
    for (u64 y : {2, 3, 5, 10, 100}) {
      auto rep = inclusion_checks(R(x), R(y));
      ++cases;
      for (const auto& res : rep.results) {
        if (!res.holds()) {
          return {false, res.name + " fails at x=" + std::to_string(x) + " y=" + std::to_string(y) + " n=" +
                             std::to_string(*res.counterexample)};
        }
      }
    }
  }
  return {true, std::to_string(cases) + " (x,y) pairs, 3 inclusions each"};
}

Outcome ac8() {
  std::vector<Rational> xs{R(10000), R(100000), R(1000000)};
  auto d = estimate_ct(2, xs, false);
  auto dp = estimate_ct(2, xs, true);
  double r = RatioSeries::ratio(d.rows.back());
  double rp = RatioSeries::ratio(dp.rows.back());
  bool ok = r >= 0.857 && r <= 1.593 && rp >= 0.0686 * 0.7 && rp <= 0.0686 * 1.3;
  char buf[256];
  std::snprintf(buf, sizeof buf, "D ratio %.6f (target 1.2248), D' ratio %.6f (target 0.0686); by x:", r, rp);
  std::string detail = buf;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::snprintf(buf, sizeof buf, " %s:%.4f/%.4f", xs[i].str().c_str(), RatioSeries::ratio(d.rows[i]),
                  RatioSeries::ratio(dp.rows[i]));
    detail += buf;
  }
  return {ok, detail};
}

Outcome ac9() {
  std::size_t profiles = 0;
  std::function<bool(std::size_t, std::size_t, std::vector<std::size_t>&)> walk;
  auto check = [&](std::vector<std::size_t> sizes) {
    std::sort(sizes.begin(), sizes.end());
    do {
      std::vector<std::size_t> labels;
      std::vector<std::vector<u64>> blocks;
      u64 next = 0;
      for (std::size_t b = 0; b < sizes.size(); ++b) {
        labels.insert(labels.end(), sizes[b], b);
        blocks.emplace_back(sizes[b]);
        std::iota(blocks.back().begin(), blocks.back().end(), next);
        next += sizes[b];
      }
      bool exists = false;
      do {
        exists = true;
        for (std::size_t i = 1; i < labels.size() && exists; ++i) exists = labels[i] != labels[i - 1];
      } while (!exists && std::next_permutation(labels.begin(), labels.end()));
      auto arr = arrange(blocks);
      if (feasible(sizes) != exists || arr.feasible() != exists) return false;
      if (exists) {
        auto order = *arr.order;
        for (std::size_t i = 1; i < order.size(); ++i) {
          if (arr.block_of[i] == arr.block_of[i - 1]) return false;
        }
        std::sort(order.begin(), order.end());
        for (std::size_t i = 0; i < order.size(); ++i) {
          if (order[i] != i) return false;
        }
      }
      ++profiles;
    } while (std::next_permutation(sizes.begin(), sizes.end()));
    return true;
  };
  walk = [&](std::size_t n, std::size_t cap, std::vector<std::size_t>& cur) {
    if (n == 0) return check(cur);
    for (std::size_t s = std::min(n, cap); s >= 1; --s) {
      cur.push_back(s);
      bool ok = walk(n - s, s, cur);
      cur.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  for (std::size_t n = 1; n <= 10; ++n) {
    std::vector<std::size_t> cur;
    if (!walk(n, n, cur)) return {false, "disagreement at n=" + std::to_string(n)};
  }
  return {true, std::to_string(profiles) + " ordered size profiles, n <= 10"};
}

Outcome ac10() {
  Outcome o;
  auto worked = peel_chain(448, 2, 59049, 7);
  if (worked != Chain{448, 28672, 4096}) return {false, "worked instance gave " + worked.str()};
  std::mt19937_64 rng(2024);
  std::size_t done = 0, tries = 0;
  while (done < 100) {
    ++tries;
    u64 x = 59049 + rng() % 5'000'000;
    u64 q = 2 + rng() % 2;
    u64 y = 3 + rng() % 100;
    u64 A = 1 + rng() % (x / q);
    // admissibility from the definitions, with trial-division factorization
    u64 P = oracle::largest(A);
    if (P > y || P <= q || oracle::smallest(A) < q) continue;
    if (oracle::schinzel(A) > Rational(static_cast<Rational::int_type>(x))) continue;
    if (Rational(static_cast<Rational::int_type>(729 * P * P)) > R(x)) continue;
    if (static_cast<u128>(A) * A <= x) continue;  // A* requires A > sqrt(x)
    auto c = peel_chain(A, q, R(x), R(y));
    auto bad = check_peel_postconditions(c, A, q, R(x), R(y));
    if (!bad.empty()) return {false, "A=" + std::to_string(A) + " x=" + std::to_string(x) + ": " + bad.front()};
    ++done;
  }
  return {true, "448-28672-4096 reproduced; " + std::to_string(done) + " random inputs (" + std::to_string(tries) +
                    " draws) satisfy every clause"};
}

struct Criterion {
  std::function<Outcome()> run;
  double limit_s;
};

}  // namespace

int main(int argc, char** argv) {
  std::map<std::string, Criterion> all{
      {"AC1", {ac1, 1}},    {"AC2", {ac2, 600}}, {"AC3", {ac3, 60}},  {"AC4", {ac4, 120}},
      {"AC5", {ac5, 120}},  {"AC6", {ac6, 60}},  {"AC7", {ac7, 120}}, {"AC8", {ac8, 60}},
      {"AC9", {ac9, 60}},   {"AC10", {ac10, 10}},
  };
  std::vector<std::string> names;
  for (int i = 1; i < argc; ++i) names.emplace_back(argv[i]);
  if (names.empty()) {
    for (int i = 1; i <= 10; ++i) names.push_back("AC" + std::to_string(i));
  }
  int failed = 0;
  for (const auto& name : names) {
    auto it = all.find(name);
    if (it == all.end()) {
      std::fprintf(stderr, "unknown criterion %s\n", name.c_str());
      return 2;
    }
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = it->second.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    bool in_time = secs < it->second.limit_s;
    if (!in_time) o.detail += "; over the time limit";
    bool pass = o.ok && in_time;
    failed += !pass;
    std::printf("%s %s %.2fs (limit %.0fs) %s\n", pass ? "PASS" : "FAIL", name.c_str(), secs, it->second.limit_s,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
