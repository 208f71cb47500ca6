#pragma once

// Slow, definition-level reference implementations. Nothing here calls the
// sieve, the factorizer or the recursive generators of the library; only
// Rational is shared, for exact comparisons against real parameters.

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "divgraph/rational.hpp"

namespace oracle {

using divgraph::Rational;
using u64 = std::uint64_t;

inline Rational R(u64 n) { return Rational(static_cast<Rational::int_type>(n)); }

/// Prime factors by trial division, ascending with multiplicity.
inline std::vector<u64> factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    while (n % d == 0) {
      out.push_back(d);
      n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline u64 largest(u64 n) { return n == 1 ? 1 : factors(n).back(); }

/// 0 stands for +infinity (n = 1).
inline u64 smallest(u64 n) { return n == 1 ? 0 : factors(n).front(); }

inline bool squarefree(u64 n) {
  auto f = factors(n);
  return std::adjacent_find(f.begin(), f.end()) == f.end();
}

inline std::vector<u64> divisors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

/// Largest ratio of consecutive divisors as (num, den), read off the full list.
inline std::pair<u64, u64> max_ratio(u64 n) {
  auto ds = divisors(n);
  std::pair<u64, u64> best{1, 1};
  for (std::size_t i = 1; i < ds.size(); ++i) {
    if (ds[i] * best.second > best.first * ds[i - 1]) best = {ds[i], ds[i - 1]};
  }
  return best;
}

/// n times the largest consecutive-divisor ratio, as an exact rational.
inline Rational schinzel(u64 n) {
  auto [a, b] = max_ratio(n);
  return R(n) * R(a) / R(b);
}

inline bool t_dense(u64 n, const Rational& t) {
  auto [a, b] = max_ratio(n);
  return R(a) / R(b) <= t;
}

inline bool in_A(u64 n, const Rational& x, const Rational& y, const Rational& z, const Rational& t) {
  if (R(n) > x) return false;
  if (R(largest(n)) > y) return false;
  if (n != 1 && !(R(smallest(n)) > z)) return false;
  return schinzel(n) <= x * t;
}

/// { n <= x : in_A(n, x, y, z, t) } by scanning.
inline std::vector<u64> A_set(const Rational& x, const Rational& y, const Rational& z, const Rational& t,
                              bool sf = false) {
  std::vector<u64> out;
  for (u64 n = 1; R(n) <= x; ++n) {
    if (oracle::in_A(n, x, y, z, t) && (!sf || squarefree(n))) out.push_back(n);
  }
  return out;
}

inline std::vector<u64> smooth_set(const Rational& x, const Rational& y) {
  std::vector<u64> out;
  for (u64 n = 1; R(n) <= x; ++n) {
    if (R(largest(n)) <= y) out.push_back(n);
  }
  return out;
}

inline std::vector<u64> dense_set(const Rational& x, const Rational& t, bool sf = false) {
  std::vector<u64> out;
  for (u64 n = 1; R(n) <= x; ++n) {
    if (t_dense(n, t) && (!sf || squarefree(n))) out.push_back(n);
  }
  return out;
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Chain check written from the definition: distinct entries, each adjacent
/// pair related by divisibility.
inline bool is_chain(const std::vector<u64>& c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      if (c[i] == c[j]) return false;
    }
    if (i > 0) {
      u64 a = std::min(c[i - 1], c[i]), b = std::max(c[i - 1], c[i]);
      if (a == 0 || b % a != 0) return false;
    }
  }
  return true;
}

}  // namespace oracle
