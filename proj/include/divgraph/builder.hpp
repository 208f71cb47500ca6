#pragma once

// Constructive lower bounds.
//
// build_chain(x, y) is the recursive chain C(x, y): it lies in S(x, y), starts
// at 2 p_{j-1}, ends at 2 and contains A(x/2, y). Everything depends only on
// X = floor(x) and Y = floor(y): 2^r <= x, p <= x/2 and p <= sqrt(x/2) are
// integer conditions on X. The output depends on Y only through
// j = pi(min(Y, X/2)), so sub-chains are cached by (X, j).
//
// peel_chain and connect_astar build chains inside
// A*(x, y) = { n > sqrt(x) : P(n) <= min(y, sqrt(x)/27), S(n) <= x }.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "divgraph/arith.hpp"
#include "divgraph/chain.hpp"
#include "divgraph/rational.hpp"

namespace divgraph {

struct BuilderIndices {
  std::size_t j = 0;  // pi(min(y, x/2))
  std::size_t k = 0;  // pi(min(y, sqrt(x/2)))
};

namespace detail {

inline u64 floor_u64(const Rational& r) { return r < Rational(0) ? 0 : static_cast<u64>(r.floor()); }

// Primes p <= Y with 2 p^2 <= X.
inline std::size_t k_index(const PrimeTable& table, u64 X, u64 Y) {
  std::size_t k = 0;
  for (u64 p : table.primes()) {
    if (p > Y || 2 * p * p > X) break;
    ++k;
  }
  return k;
}

inline std::size_t j_index(const PrimeTable& table, u64 X, u64 Y) { return table.pi(std::min(Y, X / 2)); }

}  // namespace detail

inline BuilderIndices indices(const Rational& x, const Rational& y) {
  if (x < Rational(2) || y < Rational(2)) throw std::invalid_argument("indices: need x >= 2 and y >= 2");
  u64 X = detail::floor_u64(x), Y = detail::floor_u64(y);
  PrimeTable table(std::max<u64>(2, X / 2));
  return {detail::j_index(table, X, Y), detail::k_index(table, X, Y)};
}

/// Powers of two 2^m with 2 <= 2^m <= x, descending.
inline Chain power_chain(const Rational& x) {
  if (x < Rational(4)) throw std::invalid_argument("power_chain: need x >= 4");
  u64 X = detail::floor_u64(x);
  std::vector<u64> e;
  for (u64 v = 2; v <= X; v *= 2) {
    e.push_back(v);
    if (v > X / 2) break;
  }
  std::reverse(e.begin(), e.end());
  return Chain(std::move(e));
}

/// Recursive builder with a cache shared across calls on the same object.
class ChainBuilder {
 public:
  explicit ChainBuilder(u64 max_x) : table_(std::max<u64>(2, max_x / 2)) {}

  /// C(X, Y) for integer X >= 2, Y >= 2 with X <= the constructor bound.
  std::shared_ptr<const std::vector<u64>> build(u64 X, u64 Y) {
    if (X < 2 || Y < 2) throw std::invalid_argument("build_chain: need x >= 2 and y >= 2");
    if (X / 2 > table_.limit()) throw std::out_of_range("build_chain: x above builder bound");
    std::size_t j = detail::j_index(table_, X, Y);
    auto key = std::make_pair(X, j);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    auto result = std::make_shared<const std::vector<u64>>(assemble(X, Y, j));
    cache_.emplace(key, result);
    return result;
  }

  [[nodiscard]] const PrimeTable& primes() const { return table_; }

 private:
  std::vector<u64> assemble(u64 X, u64 Y, std::size_t j) {
    if (X < 4) return {1, 2};
    if (X < 8) return {4, 1, 2};
    const std::size_t k = detail::k_index(table_, X, Y);
    if (k < 1 || j < k) throw std::logic_error("build_chain: expected j >= k >= 1 for x >= 8");

    // D = p_1 C*(x/p_1, p_1) - p_2 C(x/p_2, p_2) - ... - p_{k-1} C(x/p_{k-1}, p_{k-1})
    std::vector<u64> D;
    for (u64 v = 2; 2 * v <= X; v *= 2) D.push_back(2 * v);
    std::reverse(D.begin(), D.end());
    for (std::size_t l = 2; l + 1 <= k; ++l) append_scaled(D, table_.p(l), X);
    std::vector<u64> E;
    if (k >= 2) append_scaled(E, table_.p(k), X);

    std::vector<u64> DE = D;
    DE.insert(DE.end(), E.begin(), E.end());
    require_chain(D, "D");
    require_chain(E, "E");
    require_chain(DE, "D-E");

    std::vector<u64> inv{2};
    if (j == k) {
      inv.insert(inv.end(), E.begin(), E.end());
      inv.push_back(1);
      inv.insert(inv.end(), D.begin(), D.end());
    } else if (j == k + 1) {
      inv.push_back(1);
      inv.insert(inv.end(), DE.begin(), DE.end());
    } else {
      inv.insert(inv.end(), DE.begin(), DE.end());
      inv.push_back(1);
      inv.push_back(2 * table_.p(j - 1));
    }
    std::reverse(inv.begin(), inv.end());

    if (std::count(inv.begin(), inv.end(), u64{1}) != 1) throw std::logic_error("build_chain: 1 must appear once");
    u64 expected_start = j >= 2 ? 2 * table_.p(j - 1) : 4;
    if (inv.front() != expected_start || inv.back() != 2) {
      throw std::logic_error("build_chain: endpoints differ from 2p_{j-1} ... 2");
    }
    require_chain(inv, "C");
    return inv;
  }

  void append_scaled(std::vector<u64>& out, u64 p, u64 X) {
    auto sub = build(X / p, p);
    for (u64 n : *sub) out.push_back(p * n);
  }

  static void require_chain(const std::vector<u64>& seq, const char* name) {
    auto rep = verify_chain(seq);
    if (!rep.ok()) throw std::logic_error(std::string("build_chain: ") + name + " is not a chain: " + rep.message());
  }

  PrimeTable table_;
  std::map<std::pair<u64, std::size_t>, std::shared_ptr<const std::vector<u64>>> cache_;
};

inline Chain build_chain(const Rational& x, const Rational& y) {
  if (x < Rational(2)) throw std::invalid_argument("build_chain: need x >= 2");
  if (y < Rational(2)) throw std::invalid_argument("build_chain: need y >= 2");
  u64 X = detail::floor_u64(x);
  ChainBuilder b(X);
  return Chain(*b.build(X, detail::floor_u64(y)), ChainContext{x, y});
}

struct LowerBound {
  std::size_t bound = 0;
  Chain certificate;
};

/// f(x, y) >= length of C(x, y); the singleton chain 1 below x = 2.
inline LowerBound lower_bound_f(const Rational& x, const Rational& y) {
  if (x < Rational(1)) throw std::invalid_argument("lower_bound_f: need x >= 1");
  if (y < Rational(2)) throw std::invalid_argument("lower_bound_f: need y >= 2");
  if (x < Rational(2)) return {1, Chain({1}, ChainContext{x, y})};
  auto c = build_chain(x, y);
  return {c.length(), c};
}

// ---------------------------------------------------------------------------
// A*(x, y) chains

class PreconditionError : public std::invalid_argument {
 public:
  PreconditionError(std::string clause, const std::string& what)
      : std::invalid_argument(what), clause_(std::move(clause)) {}
  [[nodiscard]] const std::string& clause() const { return clause_; }

 private:
  std::string clause_;
};

/// 3^10: lower limit on x for the A* constructions.
inline constexpr u64 kPeelMinX = 59049;

namespace detail {

inline void require(bool cond, const char* clause, const std::string& what) {
  if (!cond) throw PreconditionError(clause, what);
}

}  // namespace detail

/// Walks A = p_1 ... p_k q^alpha down to a power of q. Each step raises the
/// power of q to the unique A' with x/q^2 < A' <= x/q, then divides out the
/// smallest prime other than q. When A' equals the current entry the link is
/// a collage and A' is not repeated.
inline Chain peel_chain(u64 A, u64 q, const Rational& x, const Rational& y) {
  using detail::require;
  require(q == 2 || q == 3, "q", "peel: q must be 2 or 3");
  require(x >= Rational(static_cast<Rational::int_type>(kPeelMinX)), "x", "peel: need x >= 3^10");
  require(y >= Rational(3), "y", "peel: need y >= 3");
  require(A >= 1 && in_A_star(A, x, y), "A*", "peel: A = " + std::to_string(A) + " is not in A*(x, y)");
  auto fA = factorize(A);
  require(fA.largest > q, "P(A)>q", "peel: need P(A) > q");
  const i128 X = x.floor();
  require(729 * static_cast<i128>(fA.largest) * fA.largest <= X, "P(A)<=sqrt(x)/27", "peel: need P(A) <= sqrt(x)/27");
  require(fA.smallest >= q, "P-(A)>=q", "peel: need P^-(A) >= q");

  // non-q primes, ascending: the first one is removed first
  std::vector<u64> others;
  for (auto it = fA.factors.rbegin(); it != fA.factors.rend(); ++it) {
    if (*it != q) others.push_back(*it);
  }

  std::vector<u64> out{A};
  u64 cur = A;
  for (u64 p : others) {
    require(static_cast<i128>(cur) * q <= X, "A<=x/q", "peel: entry " + std::to_string(cur) + " exceeds x/q");
    u64 a1 = cur;
    while (static_cast<i128>(a1) * q * q <= X) a1 *= q;
    if (!(static_cast<i128>(a1) * q <= X && static_cast<i128>(a1) * q * q > X)) {
      throw std::logic_error("peel: A' not in (x/q^2, x/q]");
    }
    if (a1 != cur) out.push_back(a1);
    cur = a1 / p;
    out.push_back(cur);
  }
  return Chain(std::move(out), ChainContext{x, y});
}

/// Every failed clause of the peel postcondition; empty when all hold.
inline std::vector<std::string> check_peel_postconditions(const Chain& c, u64 A, u64 q, const Rational& x,
                                                          const Rational& y) {
  std::vector<std::string> bad;
  auto rep = verify_chain(c.entries(), ChainContext{x, y});
  if (!rep.ok()) bad.push_back("not a chain: " + rep.message());
  const auto& e = c.entries();
  if (e.size() < 2) {
    bad.emplace_back("fewer than two entries");
    return bad;
  }
  if (e.front() != A) bad.emplace_back("does not start at A");
  const u64 PA = largest_prime_factor(A);
  const std::size_t s = e.size();
  for (std::size_t i = 0; i < s; ++i) {
    auto f = factorize(e[i]);
    if (!in_A_star(e[i], x, y)) bad.push_back("a_" + std::to_string(i + 1) + " not in A*");
    if (i + 1 < s && f.largest != PA) bad.push_back("P(a_" + std::to_string(i + 1) + ") != P(A)");
    if (f.smallest < q) bad.push_back("P^-(a_" + std::to_string(i + 1) + ") < q");
  }
  if (largest_prime_factor(e[s - 1]) != q) bad.emplace_back("P(a_s) != q");
  const i128 X = x.floor();
  const u64 a = e[s - 2];
  const u64 Pa = largest_prime_factor(a);
  const i128 a2 = static_cast<i128>(a) * a;
  if (!(a2 > (x * Rational(static_cast<Rational::int_type>(Pa))).floor())) {
    bad.emplace_back("a_{s-1} <= sqrt(x P(a_{s-1}))");
  }
  const u64 Pb = largest_prime_factor(a / Pa);
  if (!(729 * static_cast<i128>(Pb) * Pb * Pa <= X)) bad.emplace_back("P(a_{s-1}/P(a_{s-1})) > sqrt(x/P(a_{s-1}))/27");
  const i128 as = static_cast<i128>(e[s - 1]);
  if (!(as * as > (x * Rational(9)).floor())) bad.emplace_back("a_s <= 3 sqrt(x)");
  return bad;
}

/// A chain in A*(x, y) from A to B (P(A) < P(B)): peel both ends down to
/// powers of two and join the first peel to the reversed second one.
inline Chain connect_astar(u64 A, u64 B, const Rational& x, const Rational& y) {
  using detail::require;
  require(x >= Rational(static_cast<Rational::int_type>(kPeelMinX)), "x", "connect: need x >= 3^10");
  require(y >= Rational(3), "y", "connect: need y >= 3");
  require(A >= 1 && in_A_star(A, x, y), "A*", "connect: A = " + std::to_string(A) + " is not in A*(x, y)");
  require(B >= 1 && in_A_star(B, x, y), "B*", "connect: B = " + std::to_string(B) + " is not in A*(x, y)");
  require(largest_prime_factor(A) < largest_prime_factor(B), "P(A)<P(B)", "connect: need P(A) < P(B)");
  Chain c1 = largest_prime_factor(A) == 2 ? Chain({A}, ChainContext{x, y}) : peel_chain(A, 2, x, y);
  Chain c2 = peel_chain(B, 2, x, y);
  try {
    return glue(c1, inverse(c2));
  } catch (const ChainError& e) {
    throw ChainError(std::string("connect: interior-entry collision: ") + e.what());
  }
}

}  // namespace divgraph
