#pragma once

// Smooth numbers and the A / D counting functions.
//
// Parameters are exact rationals. Every membership condition compares an
// integer against x, y, z or x t, so the work is done on the floors
// X = floor(x), Y = floor(y), Z = floor(z), W = floor(x t). Dividing x by a
// prime p maps (X, W) to (floor(X/p), floor(W/p)), which keeps the recursive
// generator exact.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "divgraph/arith.hpp"
#include "divgraph/rational.hpp"
#include "divgraph/sieve.hpp"

namespace divgraph {

struct CountingLimits {
  u64 materialize = 10'000'000;  // largest floor(x) for enumerate_*
  u64 stream = 1'000'000'000;    // largest floor(x) for count_*
  unsigned threads = 1;
};

enum class CountKind { Psi, A, APrime, D, DPrime };

inline std::string_view to_string(CountKind k) {
  switch (k) {
    case CountKind::Psi: return "PSI";
    case CountKind::A: return "A";
    case CountKind::APrime: return "A_PRIME";
    case CountKind::D: return "D";
    case CountKind::DPrime: return "D_PRIME";
  }
  return "?";
}

inline CountKind parse_count_kind(std::string_view s) {
  std::string up(s);
  for (auto& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  std::replace(up.begin(), up.end(), '-', '_');
  if (up == "PSI") return CountKind::Psi;
  if (up == "A") return CountKind::A;
  if (up == "A_PRIME" || up == "A'") return CountKind::APrime;
  if (up == "D") return CountKind::D;
  if (up == "D_PRIME" || up == "D'") return CountKind::DPrime;
  throw std::invalid_argument("unknown count kind '" + std::string(s) + "'");
}

struct CountQuery {
  CountKind kind = CountKind::Psi;
  Rational x = 1;
  std::optional<Rational> y;  // defaults to x
  Rational z = 1;
  Rational t = 1;

  [[nodiscard]] Rational y_or_x() const { return y.value_or(x); }

  void validate() const {
    if (!(x > Rational(0))) throw std::invalid_argument("count: x must be > 0");
    if (y_or_x() < Rational(1)) throw std::invalid_argument("count: y must be >= 1");
    if (z < Rational(1)) throw std::invalid_argument("count: z must be >= 1");
    if (t < Rational(1)) throw std::invalid_argument("count: t must be >= 1");
  }
};

struct CountResult {
  CountQuery query;
  u64 count = 0;
};

namespace detail {

inline u64 checked_floor(const Rational& x, u64 limit, std::string_view what) {
  if (x < Rational(0)) return 0;
  auto f = static_cast<u64>(x.floor());
  if (f > limit) {
    throw std::out_of_range(std::string(what) + ": floor(x) = " + std::to_string(f) + " exceeds the configured limit " +
                            std::to_string(limit));
  }
  return f;
}

inline u64 clamp_u64(i128 v) {
  if (v < 0) return 0;
  if (v > static_cast<i128>(kInfinity)) return kInfinity;
  return static_cast<u64>(v);
}

struct IntBounds {
  u64 X, Y, Z, W;
  bool squarefree = false;

  [[nodiscard]] bool admits(const SieveRecord& r) const {
    if (r.n > X || r.largest > Y) return false;
    if (r.smallest != kInfinity && r.smallest <= Z) return false;
    if (squarefree && !r.squarefree) return false;
    return r.schinzel <= W;
  }
};

inline IntBounds int_bounds(const Rational& x, const Rational& y, const Rational& z, const Rational& t,
                            bool squarefree) {
  auto b = ABounds::from(x, y, z, t);
  return {clamp_u64(b.max_n), clamp_u64(b.max_p), clamp_u64(b.min_p_gt), clamp_u64(b.max_s), squarefree};
}

// Recursive generation: emit mult (the "1" term scaled back up) when X >= 1,
// then recurse on x/p for every prime z < p <= min(y, sqrt(x t)).
template <class Emit>
void generate_A(u64 X, u64 W, u64 Y, u64 Z, u64 mult, bool squarefree, u64 last_p, std::span<const u64> primes,
                Emit& emit) {
  if (X < 1) return;
  emit(mult);
  for (u64 p : primes) {
    if (p > Y || p * p > W) break;
    if (p <= Z) continue;
    if (squarefree && p == last_p) continue;
    generate_A(X / p, W / p, p, Z, mult * p, squarefree, p, primes, emit);
  }
}

inline std::vector<u64> primes_for(u64 W) {
  return small_primes_upto(std::max<u64>(2, isqrt(W)));
}

}  // namespace detail

/// S(x, y) = { n <= x : P(n) <= y }, ascending.
inline std::vector<u64> enumerate_smooth(const Rational& x, const Rational& y, const CountingLimits& lim = {}) {
  u64 X = detail::checked_floor(x, lim.materialize, "enumerate_smooth");
  u64 Y = detail::clamp_u64(y.floor());
  std::vector<u64> out;
  sieve_for_each(1, X, [&](const SieveRecord& r) {
    if (r.largest <= Y) out.push_back(r.n);
  });
  return out;
}

inline u64 count_psi(const Rational& x, const Rational& y, const CountingLimits& lim = {}) {
  u64 X = detail::checked_floor(x, lim.stream, "count_psi");
  u64 Y = detail::clamp_u64(y.floor());
  if (Y >= X) return X;
  return sieve_count(1, X, [Y](const SieveRecord& r) { return r.largest <= Y; }, lim.threads);
}

/// A(x, y, z, t) by recursive generation, ascending. With squarefree set the
/// recursion never repeats a prime, which yields exactly the squarefree members.
inline std::vector<u64> enumerate_A(const Rational& x, const Rational& y, const Rational& z, const Rational& t,
                                    bool squarefree = false, const CountingLimits& lim = {}) {
  if (!(x > Rational(0))) throw std::invalid_argument("enumerate_A: x must be > 0");
  detail::checked_floor(x, lim.materialize, "enumerate_A");
  auto b = detail::int_bounds(x, y, z, t, squarefree);
  auto primes = detail::primes_for(b.W);
  std::vector<u64> out;
  auto emit = [&](u64 n) { out.push_back(n); };
  detail::generate_A(b.X, b.W, b.Y, b.Z, 1, squarefree, 0, primes, emit);
  std::sort(out.begin(), out.end());
  return out;
}

/// |A(x, y, z, t)| by the same recursion, without storing members.
inline u64 count_A_recursive(const Rational& x, const Rational& y, const Rational& z, const Rational& t,
                             bool squarefree = false, const CountingLimits& lim = {}) {
  if (!(x > Rational(0))) return 0;
  detail::checked_floor(x, lim.stream, "count_A_recursive");
  auto b = detail::int_bounds(x, y, z, t, squarefree);
  auto primes = detail::primes_for(b.W);
  u64 count = 0;
  auto emit = [&](u64) { ++count; };
  detail::generate_A(b.X, b.W, b.Y, b.Z, 1, squarefree, 0, primes, emit);
  return count;
}

/// |A(x, y, z, t)| by sieving n <= x and testing each member condition.
inline u64 count_A(const Rational& x, const Rational& y, const Rational& z, const Rational& t,
                   bool squarefree = false, const CountingLimits& lim = {}) {
  if (!(x > Rational(0))) return 0;
  u64 X = detail::checked_floor(x, lim.stream, "count_A");
  auto b = detail::int_bounds(x, y, z, t, squarefree);
  return sieve_count(1, X, [b](const SieveRecord& r) { return b.admits(r); }, lim.threads);
}

/// D(x, t) = #{ n <= x : S(n) <= n t }; D'(x, t) adds mu^2(n) = 1.
inline u64 count_D(const Rational& x, const Rational& t, bool squarefree = false, const CountingLimits& lim = {}) {
  if (t < Rational(1)) throw std::invalid_argument("count_D: t must be >= 1");
  u64 X = detail::checked_floor(x, lim.stream, "count_D");
  auto pred = [&t, squarefree](const SieveRecord& r) {
    if (squarefree && !r.squarefree) return false;
    return static_cast<i128>(r.schinzel) <= t.floor_times(static_cast<i128>(r.n));
  };
  return sieve_count(1, X, pred, lim.threads);
}

inline u64 count_D_prime(const Rational& x, const Rational& t, const CountingLimits& lim = {}) {
  return count_D(x, t, true, lim);
}

/// Members of D(x, t) (or D'), ascending.
inline std::vector<u64> enumerate_D(const Rational& x, const Rational& t, bool squarefree = false,
                                    const CountingLimits& lim = {}) {
  u64 X = detail::checked_floor(x, lim.materialize, "enumerate_D");
  std::vector<u64> out;
  sieve_for_each(1, X, [&](const SieveRecord& r) {
    if (squarefree && !r.squarefree) return;
    if (static_cast<i128>(r.schinzel) <= t.floor_times(static_cast<i128>(r.n))) out.push_back(r.n);
  });
  return out;
}

inline CountResult count(const CountQuery& q, const CountingLimits& lim = {}) {
  q.validate();
  CountResult res{q, 0};
  switch (q.kind) {
    case CountKind::Psi: res.count = count_psi(q.x, q.y_or_x(), lim); break;
    case CountKind::A: res.count = count_A(q.x, q.y_or_x(), q.z, q.t, false, lim); break;
    case CountKind::APrime: res.count = count_A(q.x, q.y_or_x(), q.z, q.t, true, lim); break;
    case CountKind::D: res.count = count_D(q.x, q.t, false, lim); break;
    case CountKind::DPrime: res.count = count_D(q.x, q.t, true, lim); break;
  }
  return res;
}

struct BuchstabReport {
  u64 lhs = 0;
  u64 rhs = 0;
  bool equal = false;
};

/// Checks A(x,y,z,t) = 1[x >= 1] + sum_{z < p <= min(y, sqrt(x t))} A(x/p, p, z, t):
/// the left side by the sieve filter, each summand by the recursive generator.
inline BuchstabReport buchstab_check(const Rational& x, const Rational& y, const Rational& z, const Rational& t,
                                     const CountingLimits& lim = {}) {
  BuchstabReport rep;
  rep.lhs = count_A(x, y, z, t, false, lim);
  auto b = detail::int_bounds(x, y, z, t, false);
  rep.rhs = b.X >= 1 ? 1 : 0;
  if (b.X >= 1) {
    for (u64 p : detail::primes_for(b.W)) {
      if (p > b.Y || p * p > b.W) break;
      if (p <= b.Z) continue;
      Rational xp = x / Rational(static_cast<Rational::int_type>(p));
      rep.rhs += count_A_recursive(xp, Rational(static_cast<Rational::int_type>(p)), z, t, false, lim);
    }
  }
  rep.equal = rep.lhs == rep.rhs;
  return rep;
}

struct RatioRow {
  Rational x;
  u64 count = 0;
};

/// Counts against x together with a target constant; ratio = count log x / x.
struct RatioSeries {
  std::vector<RatioRow> rows;
  std::optional<double> target;

  [[nodiscard]] static double ratio(const RatioRow& r) {
    double x = r.x.to_double();
    return static_cast<double>(r.count) * std::log(x) / x;
  }
};

/// Known values of c_2 and c_2'; other t have no tabulated target.
inline std::optional<double> known_ct(const Rational& t, bool squarefree) {
  if (t == Rational(2)) return squarefree ? 0.0686 : 1.2248;
  return std::nullopt;
}

/// One sieve pass over [1, max xs], recording D(x, t) at each requested x.
inline RatioSeries estimate_ct(const Rational& t, const std::vector<Rational>& xs, bool squarefree,
                               const CountingLimits& lim = {}) {
  if (t < Rational(1)) throw std::invalid_argument("estimate_ct: t must be >= 1");
  if (xs.empty()) throw std::invalid_argument("estimate_ct: no x values");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] < Rational(2)) throw std::invalid_argument("estimate_ct: every x must be >= 2");
    if (i > 0 && !(xs[i - 1] < xs[i])) throw std::invalid_argument("estimate_ct: x values must be ascending");
  }
  RatioSeries series;
  series.target = known_ct(t, squarefree);
  u64 top = detail::checked_floor(xs.back(), lim.stream, "estimate_ct");
  std::size_t next = 0;
  u64 running = 0;
  auto flush = [&](u64 upto) {
    while (next < xs.size() && static_cast<u64>(xs[next].floor()) <= upto) {
      series.rows.push_back({xs[next], running});
      ++next;
    }
  };
  flush(0);
  sieve_for_each(1, top, [&](const SieveRecord& r) {
    if (!(squarefree && !r.squarefree) && static_cast<i128>(r.schinzel) <= t.floor_times(static_cast<i128>(r.n))) {
      ++running;
    }
    flush(r.n);
  });
  return series;
}

struct InclusionResult {
  std::string name;
  std::size_t left_size = 0;
  std::size_t right_size = 0;
  std::optional<u64> counterexample;  // first left member missing on the right

  [[nodiscard]] bool holds() const { return !counterexample.has_value(); }
};

struct InclusionReport {
  std::vector<InclusionResult> results;

  [[nodiscard]] bool all_hold() const {
    return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.holds(); });
  }
};

namespace detail {

inline InclusionResult check_subset(std::string name, const std::vector<u64>& left, const std::vector<u64>& right) {
  InclusionResult res{std::move(name), left.size(), right.size(), std::nullopt};
  for (u64 n : left) {
    if (!std::binary_search(right.begin(), right.end(), n)) {
      res.counterexample = n;
      break;
    }
  }
  return res;
}

}  // namespace detail

/// Element-by-element checks of
///   D(x/2, 2) subset of A(x),   D'(x/2, 2) subset of A'(x),   S(x/2y, y) subset of A(x/2, y).
inline InclusionReport inclusion_checks(const Rational& x, const Rational& y, const CountingLimits& lim = {}) {
  if (x < Rational(2) || y < Rational(2)) throw std::invalid_argument("inclusion_checks: need x >= 2 and y >= 2");
  const Rational one = 1, two = 2;
  InclusionReport rep;
  auto ax = enumerate_A(x, x, one, one, false, lim);
  auto ax_sf = enumerate_A(x, x, one, one, true, lim);
  rep.results.push_back(detail::check_subset("D(x/2,2) in A(x)", enumerate_D(x / two, two, false, lim), ax));
  rep.results.push_back(detail::check_subset("D'(x/2,2) in A'(x)", enumerate_D(x / two, two, true, lim), ax_sf));
  rep.results.push_back(detail::check_subset("S(x/2y,y) in A(x/2,y)", enumerate_smooth(x / (two * y), y, lim),
                                             enumerate_A(x / two, y, one, one, false, lim)));
  return rep;
}

inline void write_count_csv_header(std::ostream& os) { os << "kind,x,y,z,t,count\n"; }

inline void write_count_csv_row(std::ostream& os, const CountResult& r) {
  const auto& q = r.query;
  os << to_string(q.kind) << ',' << q.x << ',' << q.y_or_x() << ',' << q.z << ',' << q.t << ',' << r.count << '\n';
}

/// x,count,ratio,target with ratios to six decimals; target empty when unknown.
inline void write_ratio_csv(std::ostream& os, const RatioSeries& s) {
  os << "x,count,ratio,target\n";
  char buf[64];
  for (const auto& row : s.rows) {
    std::snprintf(buf, sizeof buf, "%.6f", RatioSeries::ratio(row));
    os << row.x << ',' << row.count << ',' << buf << ',';
    if (s.target) {
      std::snprintf(buf, sizeof buf, "%.6f", *s.target);
      os << buf;
    }
    os << '\n';
  }
}

}  // namespace divgraph
