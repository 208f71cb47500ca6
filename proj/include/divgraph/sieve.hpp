#pragma once

// Segmented factoring sieve. Each segment divides out every prime up to
// sqrt(hi); whatever cofactor remains is the largest prime factor. S(n) is
// accumulated on the fly: dividing an occurrence of p out of the current
// cofactor r contributes the candidate r * p, and the maximum over all
// occurrences equals max_k p_1 ... p_{k-1} p_k^2.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "divgraph/arith.hpp"

namespace divgraph {

struct SieveRecord {
  u64 n = 1;
  u64 largest = 1;
  u64 smallest = kInfinity;
  u64 schinzel = 1;
  bool squarefree = true;
};

/// Largest n the sieve accepts; keeps S(n) <= n^2 inside 64 bits.
inline constexpr u64 kSieveHardCap = 4'000'000'000ULL;

namespace detail {

inline std::vector<u64> small_primes_upto(u64 n) {
  if (n < 2) return {};
  PrimeTable table(n);
  return {table.primes().begin(), table.primes().end()};
}

inline void sieve_segment(u64 lo, u64 hi, const std::vector<u64>& primes, std::vector<SieveRecord>& out,
                          std::vector<u64>& rem) {
  const std::size_t len = hi - lo + 1;
  out.assign(len, SieveRecord{});
  rem.resize(len);
  for (std::size_t i = 0; i < len; ++i) {
    out[i].n = lo + i;
    rem[i] = lo + i;
  }
  for (u64 p : primes) {
    if (p * p > hi) break;
    u64 first = ((lo + p - 1) / p) * p;
    for (u64 m = first; m <= hi; m += p) {
      std::size_t i = m - lo;
      auto& rec = out[i];
      u64 r = rem[i];
      int exponent = 0;
      do {
        rec.schinzel = std::max(rec.schinzel, r * p);
        r /= p;
        ++exponent;
      } while (r % p == 0);
      rem[i] = r;
      if (rec.smallest == kInfinity) rec.smallest = p;
      rec.largest = p;
      if (exponent > 1) rec.squarefree = false;
    }
  }
  for (std::size_t i = 0; i < len; ++i) {
    u64 r = rem[i];
    if (r <= 1) continue;
    auto& rec = out[i];
    rec.schinzel = std::max(rec.schinzel, r * r);
    rec.largest = r;
    if (rec.smallest == kInfinity) rec.smallest = r;
  }
}

}  // namespace detail

/// Calls fn(const SieveRecord&) for every n in [lo, hi], ascending.
template <class Fn>
void sieve_for_each(u64 lo, u64 hi, Fn&& fn, u64 segment = 1U << 16) {
  if (lo == 0) lo = 1;
  if (hi < lo) return;
  if (hi > kSieveHardCap) throw std::out_of_range("sieve: upper end exceeds supported range");
  auto primes = detail::small_primes_upto(detail::isqrt(hi));
  std::vector<SieveRecord> records;
  std::vector<u64> rem;
  for (u64 a = lo; a <= hi; a += segment) {
    u64 b = std::min(hi, a + segment - 1);
    detail::sieve_segment(a, b, primes, records, rem);
    for (const auto& rec : records) fn(rec);
    if (b == hi) break;
  }
}

/// Number of n in [lo, hi] with pred(record); segments are spread over threads.
template <class Pred>
u64 sieve_count(u64 lo, u64 hi, Pred pred, unsigned threads = 1, u64 segment = 1U << 16) {
  if (lo == 0) lo = 1;
  if (hi < lo) return 0;
  if (hi > kSieveHardCap) throw std::out_of_range("sieve: upper end exceeds supported range");
  auto primes = detail::small_primes_upto(detail::isqrt(hi));
  const u64 segments = (hi - lo) / segment + 1;
  std::atomic<u64> next{0};
  std::atomic<u64> total{0};
  auto work = [&] {
    std::vector<SieveRecord> records;
    std::vector<u64> rem;
    u64 local = 0;
    for (u64 s = next++; s < segments; s = next++) {
      u64 a = lo + s * segment;
      u64 b = std::min(hi, a + segment - 1);
      detail::sieve_segment(a, b, primes, records, rem);
      for (const auto& rec : records) local += pred(rec) ? 1 : 0;
    }
    total += local;
  };
  threads = std::max(1U, threads);
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work);
  }
  return total.load();
}

/// Materialized records for 1..n (index 0 holds n = 1).
inline std::vector<SieveRecord> sieve_table(u64 n) {
  std::vector<SieveRecord> out;
  out.reserve(n);
  sieve_for_each(1, n, [&](const SieveRecord& r) { out.push_back(r); });
  return out;
}

}  // namespace divgraph
