#pragma once

// Chains: simple paths in the divisor graph, where two integers are adjacent
// when the smaller divides the larger. Length always counts vertices.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "divgraph/arith.hpp"
#include "divgraph/rational.hpp"

namespace divgraph {

/// Ambient set S(x, y): entries must satisfy n <= x and P(n) <= y.
struct ChainContext {
  Rational x;
  Rational y;

  friend bool operator==(const ChainContext&, const ChainContext&) = default;
};

class ChainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline bool divides(u64 a, u64 b) { return a != 0 && b % a == 0; }

/// Adjacent in the divisor graph (and distinct).
inline bool related(u64 a, u64 b) { return a != b && (a < b ? divides(a, b) : divides(b, a)); }

class Chain {
 public:
  Chain() = default;
  explicit Chain(std::vector<u64> entries, std::optional<ChainContext> context = std::nullopt)
      : entries_(std::move(entries)), context_(std::move(context)) {}
  Chain(std::initializer_list<u64> entries) : entries_(entries) {}

  [[nodiscard]] const std::vector<u64>& entries() const { return entries_; }
  [[nodiscard]] const std::optional<ChainContext>& context() const { return context_; }
  [[nodiscard]] std::size_t length() const { return entries_.size(); }
  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] u64 front() const { return entries_.at(0); }
  [[nodiscard]] u64 back() const { return entries_.at(entries_.size() - 1); }
  [[nodiscard]] u64 operator[](std::size_t i) const { return entries_[i]; }
  [[nodiscard]] auto begin() const { return entries_.begin(); }
  [[nodiscard]] auto end() const { return entries_.end(); }

  [[nodiscard]] Chain with_context(std::optional<ChainContext> ctx) const { return Chain(entries_, std::move(ctx)); }

  /// "a-b-c"
  [[nodiscard]] std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i > 0) out += '-';
      out += std::to_string(entries_[i]);
    }
    return out;
  }

  friend bool operator==(const Chain& a, const Chain& b) { return a.entries_ == b.entries_; }
  friend std::ostream& operator<<(std::ostream& os, const Chain& c) { return os << c.str(); }

 private:
  std::vector<u64> entries_;
  std::optional<ChainContext> context_;
};

enum class Violation { None, NonPositive, OutOfRange, NotSmooth, Duplicate, NotAdjacent };

inline std::string_view to_string(Violation v) {
  switch (v) {
    case Violation::None: return "ok";
    case Violation::NonPositive: return "non-positive entry";
    case Violation::OutOfRange: return "entry exceeds x";
    case Violation::NotSmooth: return "entry has a prime factor above y";
    case Violation::Duplicate: return "duplicate entry";
    case Violation::NotAdjacent: return "consecutive entries do not divide each other";
  }
  return "?";
}

struct ChainReport {
  Violation violation = Violation::None;
  std::size_t length = 0;
  std::size_t index = 0;  // position of the offending entry (second of a pair)
  u64 a = 0;              // offending entry, or first of the non-adjacent pair
  u64 b = 0;              // second of the pair

  [[nodiscard]] bool ok() const { return violation == Violation::None; }

  [[nodiscard]] std::string message() const {
    switch (violation) {
      case Violation::None: return "OK, length " + std::to_string(length);
      case Violation::NotAdjacent:
        return std::string(to_string(violation)) + " at (" + std::to_string(a) + "," + std::to_string(b) +
               "), position " + std::to_string(index);
      default:
        return std::string(to_string(violation)) + ": " + std::to_string(a) + " at position " + std::to_string(index);
    }
  }
};

/// Scans left to right and reports the first violation found.
inline ChainReport verify_chain(std::span<const u64> entries, const std::optional<ChainContext>& context = {}) {
  ChainReport rep;
  rep.length = entries.size();
  std::optional<i128> max_n, max_p;
  if (context) {
    max_n = context->x.floor();
    max_p = context->y.floor();
  }
  std::unordered_set<u64> seen;
  seen.reserve(entries.size() * 2);
  auto fail = [&](Violation v, std::size_t i, u64 a, u64 b = 0) {
    rep.violation = v;
    rep.index = i;
    rep.a = a;
    rep.b = b;
    return rep;
  };
  for (std::size_t i = 0; i < entries.size(); ++i) {
    u64 n = entries[i];
    if (n == 0) return fail(Violation::NonPositive, i, n);
    if (max_n && static_cast<i128>(n) > *max_n) return fail(Violation::OutOfRange, i, n);
    if (max_p && static_cast<i128>(largest_prime_factor(n)) > *max_p) return fail(Violation::NotSmooth, i, n);
    if (!seen.insert(n).second) return fail(Violation::Duplicate, i, n);
    if (i > 0 && !related(entries[i - 1], n)) return fail(Violation::NotAdjacent, i, entries[i - 1], n);
  }
  return rep;
}

inline ChainReport verify_chain(const Chain& c) { return verify_chain(c.entries(), c.context()); }

inline Chain inverse(const Chain& c) {
  std::vector<u64> e(c.entries().rbegin(), c.entries().rend());
  return Chain(std::move(e), c.context());
}

/// Multiplies every entry by m. The context is dropped: a scaled chain
/// generally leaves the original ambient set.
inline Chain scale(const Chain& c, u64 m) {
  if (m == 0) throw ChainError("scale: multiplier must be positive");
  std::vector<u64> e;
  e.reserve(c.length());
  for (u64 n : c) {
    if (static_cast<u128>(n) * m > kInfinity) throw std::overflow_error("scale: entry overflows 64 bits");
    e.push_back(n * m);
  }
  return Chain(std::move(e));
}

namespace detail {

inline std::optional<ChainContext> merge_context(const Chain& a, const Chain& b) {
  if (a.context() && b.context() && !(*a.context() == *b.context())) return std::nullopt;
  return a.context() ? a.context() : b.context();
}

inline void require_disjoint(std::span<const u64> left, std::span<const u64> right, const char* op) {
  std::unordered_set<u64> seen(left.begin(), left.end());
  for (u64 n : right) {
    if (seen.count(n) != 0) throw ChainError(std::string(op) + ": entry " + std::to_string(n) + " appears twice");
  }
}

}  // namespace detail

/// Concatenation when last(c1) and first(c2) are distinct and related,
/// collage when they are equal. The empty chain is the identity.
inline Chain glue(const Chain& c1, const Chain& c2) {
  if (c1.empty()) return c2;
  if (c2.empty()) return c1;
  std::span<const u64> tail(c2.entries());
  if (c1.back() == c2.front()) {
    tail = tail.subspan(1);
  } else if (!related(c1.back(), c2.front())) {
    throw ChainError("glue: endpoints " + std::to_string(c1.back()) + " and " + std::to_string(c2.front()) +
                     " are unrelated");
  }
  detail::require_disjoint(c1.entries(), tail, "glue");
  std::vector<u64> e(c1.entries());
  e.insert(e.end(), tail.begin(), tail.end());
  return Chain(std::move(e), detail::merge_context(c1, c2));
}

/// c1 - connector - c2, where the connector is a fresh vertex related to both
/// neighbouring endpoints.
inline Chain juxtapose(const Chain& c1, u64 connector, const Chain& c2) {
  if (connector == 0) throw ChainError("juxtapose: connector must be positive");
  if (!c1.empty() && !related(c1.back(), connector)) {
    throw ChainError("juxtapose: connector " + std::to_string(connector) + " unrelated to " + std::to_string(c1.back()));
  }
  if (!c2.empty() && !related(connector, c2.front())) {
    throw ChainError("juxtapose: connector " + std::to_string(connector) + " unrelated to " +
                     std::to_string(c2.front()));
  }
  std::vector<u64> right{connector};
  right.insert(right.end(), c2.begin(), c2.end());
  detail::require_disjoint(c1.entries(), right, "juxtapose");
  detail::require_disjoint(std::span<const u64>(&connector, 1), c2.entries(), "juxtapose");
  std::vector<u64> e(c1.entries());
  e.insert(e.end(), right.begin(), right.end());
  return Chain(std::move(e), detail::merge_context(c1, c2));
}

}  // namespace divgraph
