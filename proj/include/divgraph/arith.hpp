#pragma once

// Primes, factorization and the arithmetic predicates of the divisor graph:
// largest / smallest prime factor, the Schinzel-Szekeres function S(n), the
// largest ratio of consecutive divisors, and membership in the A-sets.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "divgraph/rational.hpp"

namespace divgraph {

using u64 = std::uint64_t;

/// Stand-in for +infinity, used as P^-(1).
inline constexpr u64 kInfinity = std::numeric_limits<u64>::max();

namespace detail {

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

inline u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin for all 64-bit inputs.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2U, 3U, 5U, 7U, 11U, 13U, 17U, 19U, 23U, 29U, 31U, 37U}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    u64 x = detail::powmod(a, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s && composite; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

/// Primes up to a limit, indexed p_1 = 2 < p_2 = 3 < ...
///
/// The chain construction also refers to p_0 = 2 and p_{-1} = 1/2; those are
/// available through indexed().
class PrimeTable {
 public:
  explicit PrimeTable(u64 limit) : limit_(limit) {
    if (limit < 2) throw std::invalid_argument("prime_table: limit must be >= 2");
    std::vector<bool> composite(limit + 1, false);
    for (u64 i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      primes_.push_back(i);
      for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
  }

  [[nodiscard]] u64 limit() const { return limit_; }
  [[nodiscard]] std::span<const u64> primes() const { return primes_; }
  [[nodiscard]] std::size_t size() const { return primes_.size(); }

  /// p_j for j >= 1.
  [[nodiscard]] u64 p(std::size_t j) const {
    if (j == 0 || j > primes_.size()) throw std::out_of_range("PrimeTable::p: index " + std::to_string(j));
    return primes_[j - 1];
  }

  /// p_j for j >= -1 with the conventions p_0 = 2 and p_{-1} = 1/2.
  [[nodiscard]] Rational indexed(long j) const {
    if (j == -1) return {1, 2};
    if (j == 0) return 2;
    if (j < -1) throw std::out_of_range("PrimeTable::indexed: index below -1");
    return static_cast<Rational::int_type>(p(static_cast<std::size_t>(j)));
  }

  /// pi(x): number of primes <= x. Requires x <= limit() unless x is below every prime.
  [[nodiscard]] std::size_t pi(u64 x) const {
    if (x > limit_) throw std::out_of_range("PrimeTable::pi: argument above table limit");
    return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
  }

  [[nodiscard]] bool contains(u64 n) const { return std::binary_search(primes_.begin(), primes_.end(), n); }

 private:
  u64 limit_;
  std::vector<u64> primes_;
};

inline PrimeTable prime_table(u64 limit) { return PrimeTable(limit); }

/// n with its prime factors in descending order p_1(n) >= ... >= p_Omega(n).
struct FactoredInteger {
  u64 n = 1;
  std::vector<u64> factors;
  u64 largest = 1;           // P(n), with P(1) = 1
  u64 smallest = kInfinity;  // P^-(n), with P^-(1) = +inf
  u64 schinzel = 1;          // S(n)

  [[nodiscard]] bool squarefree() const { return std::adjacent_find(factors.begin(), factors.end()) == factors.end(); }
  [[nodiscard]] std::size_t omega_big() const { return factors.size(); }
};

/// S from a descending factor list: max_k p_1 ... p_{k-1} p_k^2, and 1 for the empty list.
inline u64 schinzel_szekeres_of(std::span<const u64> descending) {
  u128 prefix = 1;
  u128 best = 1;
  for (u64 p : descending) {
    best = std::max(best, prefix * p * p);
    prefix *= p;
  }
  if (best > std::numeric_limits<u64>::max()) throw std::overflow_error("S(n) exceeds 64 bits");
  return static_cast<u64>(best);
}

/// Smallest-prime-factor table below a limit; trial division plus
/// Miller-Rabin above it.
class Factorizer {
 public:
  explicit Factorizer(u64 sieve_limit = 1U << 20) : spf_(sieve_limit + 1, 0) {
    for (u64 i = 2; i <= sieve_limit; ++i) {
      if (spf_[i] != 0) continue;
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(i);
      for (u64 j = i * i; j <= sieve_limit; j += i) {
        if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
      }
    }
  }

  [[nodiscard]] u64 sieve_limit() const { return spf_.size() - 1; }

  /// Prime factors with multiplicity, ascending.
  [[nodiscard]] std::vector<u64> prime_factors(u64 n) const {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    std::vector<u64> out;
    if (n <= sieve_limit()) {
      while (n > 1) {
        u64 p = spf_[n];
        out.push_back(p);
        n /= p;
      }
      return out;
    }
    bool cofactor_prime = is_prime(n);
    for (u64 p : primes_) {
      if (cofactor_prime || p * p > n) break;
      if (n % p != 0) continue;
      do {
        out.push_back(p);
        n /= p;
      } while (n % p == 0);
      if (n <= sieve_limit()) {
        auto rest = prime_factors(n);
        out.insert(out.end(), rest.begin(), rest.end());
        return out;
      }
      cofactor_prime = is_prime(n);
    }
    if (n > 1 && !is_prime(n)) {
      // cofactor has every prime factor above the sieve limit
      for (u64 d = sieve_limit() | 1U; d * d <= n; d += 2) {
        while (n % d == 0) {
          out.push_back(d);
          n /= d;
        }
      }
    }
    if (n > 1) out.push_back(n);
    return out;
  }

  [[nodiscard]] FactoredInteger factorize(u64 n) const {
    FactoredInteger f;
    f.n = n;
    f.factors = prime_factors(n);
    std::reverse(f.factors.begin(), f.factors.end());
    if (!f.factors.empty()) {
      f.largest = f.factors.front();
      f.smallest = f.factors.back();
    }
    f.schinzel = schinzel_szekeres_of(f.factors);
    return f;
  }

 private:
  std::vector<std::uint32_t> spf_;
  std::vector<u64> primes_;
};

inline const Factorizer& default_factorizer() {
  static const Factorizer instance;
  return instance;
}

inline FactoredInteger factorize(u64 n) { return default_factorizer().factorize(n); }

inline u64 largest_prime_factor(u64 n) { return factorize(n).largest; }
inline u64 smallest_prime_factor(u64 n) { return factorize(n).smallest; }
inline u64 schinzel_szekeres(u64 n) { return factorize(n).schinzel; }

/// All divisors of n, ascending.
inline std::vector<u64> divisors(u64 n) {
  if (n == 0) throw std::invalid_argument("divisors: n must be positive");
  std::vector<u64> small, large;
  for (u64 d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// max d_{i+1}/d_i over consecutive divisors, computed from S(n)/n.
inline Rational max_divisor_ratio(u64 n) {
  auto f = factorize(n);
  return {static_cast<Rational::int_type>(f.schinzel), static_cast<Rational::int_type>(n)};
}

/// Same quantity read directly off the sorted divisor list (1 for n = 1).
inline Rational max_divisor_ratio_from_divisors(u64 n) {
  auto ds = divisors(n);
  u64 best_num = 1, best_den = 1;
  for (std::size_t i = 1; i < ds.size(); ++i) {
    if (static_cast<u128>(ds[i]) * best_den > static_cast<u128>(best_num) * ds[i - 1]) {
      best_num = ds[i];
      best_den = ds[i - 1];
    }
  }
  return {static_cast<Rational::int_type>(best_num), static_cast<Rational::int_type>(best_den)};
}

/// S(n) <= n t, i.e. every ratio of consecutive divisors is at most t.
inline bool is_t_dense(u64 n, const Rational& t) {
  auto s = schinzel_szekeres(n);
  return static_cast<i128>(s) <= t.floor_times(static_cast<i128>(n));
}

/// Integer thresholds equivalent to membership in A(x, y, z, t):
/// n <= x, P(n) <= y, P^-(n) > z, S(n) <= x t.
struct ABounds {
  i128 max_n;     // floor(x)
  i128 max_p;     // floor(y)
  i128 min_p_gt;  // floor(z): P^-(n) must exceed it
  i128 max_s;     // floor(x t)

  static ABounds from(const Rational& x, const Rational& y, const Rational& z, const Rational& t) {
    return {x.floor(), y.floor(), z.floor(), (x * t).floor()};
  }

  [[nodiscard]] bool admits(const FactoredInteger& f) const {
    if (static_cast<i128>(f.n) > max_n) return false;
    if (static_cast<i128>(f.largest) > max_p) return false;
    if (f.smallest != kInfinity && static_cast<i128>(f.smallest) <= min_p_gt) return false;
    return static_cast<i128>(f.schinzel) <= max_s;
  }
};

inline bool in_A(u64 n, const Rational& x, const Rational& y, const Rational& z, const Rational& t) {
  return ABounds::from(x, y, z, t).admits(factorize(n));
}

/// A*(x, y) = { n > sqrt(x) : P(n) <= min(y, sqrt(x)/27), S(n) <= x }.
inline bool in_A_star(u64 n, const Rational& x, const Rational& y) {
  auto f = factorize(n);
  i128 nn = static_cast<i128>(n);
  if (!(Rational(0) < x)) return false;
  if (!(nn * nn > x.floor())) return false;  // n > sqrt(x)
  if (static_cast<i128>(f.largest) > y.floor()) return false;
  if (729 * static_cast<i128>(f.largest) * f.largest > x.floor()) return false;  // 27 P <= sqrt(x)
  return static_cast<i128>(f.schinzel) <= x.floor();
}

}  // namespace divgraph
