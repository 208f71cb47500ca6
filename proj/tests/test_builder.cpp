#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "divgraph/builder.hpp"
#include "divgraph/counting.hpp"
#include "oracles.hpp"

using namespace divgraph;

namespace {

u64 expected_start(u64 x, u64 y) {
  auto idx = indices(x, y);
  if (idx.j == 0) return 1;
  if (idx.j == 1) return 4;
  return 2 * prime_table(x).p(idx.j - 1);
}

bool contains_all(const Chain& c, const std::vector<u64>& need) {
  std::vector<u64> have(c.begin(), c.end());
  std::sort(have.begin(), have.end());
  return std::includes(have.begin(), have.end(), need.begin(), need.end());
}

}  // namespace

TEST(Indices, Examples) {
  auto a = indices(100, 100);
  EXPECT_EQ(a.j, 15U);
  EXPECT_EQ(a.k, 4U);
  auto b = indices(18, 3);
  EXPECT_EQ(b.j, 2U);
  EXPECT_EQ(b.k, 2U);
  auto c = indices(2, 2);
  EXPECT_EQ(c.j, 0U);
  EXPECT_EQ(c.k, 0U);
  EXPECT_THROW(indices(1, 2), std::invalid_argument);
}

TEST(Indices, OrderedAndPositiveFromEight) {
  for (u64 x = 2; x <= 2000; ++x) {
    for (u64 y : std::initializer_list<u64>{2, 3, 7, x}) {
      auto idx = indices(x, y);
      ASSERT_GE(idx.j, idx.k);
      if (x >= 8) {
        ASSERT_GE(idx.k, 1U);
      }
    }
  }
}

TEST(PowerChain, Examples) {
  EXPECT_EQ(power_chain(10), (Chain{8, 4, 2}));
  EXPECT_EQ(power_chain(4), (Chain{4, 2}));
  EXPECT_EQ(power_chain(1 << 20).length(), 20U);
  EXPECT_THROW(power_chain(3), std::invalid_argument);
}

TEST(Build, BaseCases) {
  EXPECT_EQ(build_chain(2, 2), (Chain{1, 2}));
  EXPECT_EQ(build_chain(3, 5), (Chain{1, 2}));
  EXPECT_EQ(build_chain(5, 7), (Chain{4, 1, 2}));
  EXPECT_THROW(build_chain(Rational(3, 2), 2), std::invalid_argument);
}

TEST(Build, HundredStartsAt86AndContainsA50) {
  auto c = build_chain(100, 100);
  EXPECT_TRUE(verify_chain(c).ok()) << verify_chain(c).message();
  EXPECT_EQ(c.front(), 86U);
  EXPECT_EQ(c.back(), 2U);
  auto a = oracle::A_set(50, 100, 1, 1);
  EXPECT_TRUE(contains_all(c, a));
  EXPECT_GE(c.length(), a.size());
}

TEST(Build, ContractOnGrid) {
  for (u64 x = 2; x <= 700; ++x) {
    u64 s = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(x))));
    for (u64 y : std::initializer_list<u64>{2, 3, 5, 11, std::max<u64>(2, s), x}) {
      auto c = build_chain(x, y);
      auto rep = verify_chain(c);
      ASSERT_TRUE(rep.ok()) << x << " " << y << ": " << rep.message();
      ASSERT_EQ(c.front(), expected_start(x, y)) << x << " " << y;
      ASSERT_EQ(c.back(), 2U);
      ASSERT_EQ(std::count(c.begin(), c.end(), u64{1}), 1);
      ASSERT_TRUE(contains_all(c, enumerate_A(Rational(static_cast<Rational::int_type>(x)) / Rational(2), y, 1, 1)))
          << x << " " << y;
    }
  }
}

TEST(Build, DependsOnlyOnFloors) {
  EXPECT_EQ(build_chain(Rational(201, 2), Rational(43, 4)), build_chain(100, 10));
}

TEST(LowerBound, Examples) {
  auto a = lower_bound_f(4, 4);
  EXPECT_GE(a.bound, oracle::A_set(2, 4, 1, 1).size());
  EXPECT_TRUE(verify_chain(a.certificate).ok());
  auto b = lower_bound_f(100, 100);
  EXPECT_GE(b.bound, count_A(50, 100, 1, 1));
  EXPECT_EQ(b.bound, b.certificate.length());
  auto c = lower_bound_f(1, 2);
  EXPECT_EQ(c.bound, 1U);
  EXPECT_EQ(c.certificate, (Chain{1}));
}

TEST(Peel, WorkedInstance) {
  auto c = peel_chain(448, 2, 59049, 7);
  EXPECT_EQ(c, (Chain{448, 28672, 4096}));
  EXPECT_TRUE(check_peel_postconditions(c, 448, 2, 59049, 7).empty());
}

TEST(Peel, CollageWhenAAlreadyInWindow) {
  // 28672 = 7 * 2^12 lies in (x/4, x/2] for x = 3^10, so A' = A
  const u64 A = 28672;
  ASSERT_TRUE(A * 4 > 59049 && A * 2 <= 59049);
  auto c = peel_chain(A, 2, 59049, 7);
  EXPECT_EQ(c, (Chain{28672, 4096}));
  EXPECT_TRUE(check_peel_postconditions(c, A, 2, 59049, 7).empty());
}

TEST(Peel, PreconditionsReportedDistinctly) {
  auto clause = [](auto&& f) {
    try {
      f();
    } catch (const PreconditionError& e) {
      return e.clause();
    }
    return std::string("none");
  };
  EXPECT_EQ(clause([] { peel_chain(4096, 2, 59049, 7); }), "P(A)>q");
  EXPECT_EQ(clause([] { peel_chain(448, 5, 59049, 7); }), "q");
  EXPECT_EQ(clause([] { peel_chain(448, 2, 59048, 7); }), "x");
  EXPECT_EQ(clause([] { peel_chain(448, 2, 59049, 2); }), "y");
  EXPECT_EQ(clause([] { peel_chain(7, 2, 59049, 7); }), "A*");
  EXPECT_EQ(clause([] { peel_chain(448, 3, 59049, 7); }), "P-(A)>=q");
}

TEST(Peel, RandomAdmissibleInputs) {
  std::mt19937_64 rng(5);
  int done = 0;
  while (done < 150) {
    u64 x = 59049 + rng() % 2'000'000;
    u64 q = 2 + rng() % 2;
    u64 y = 3 + rng() % 60;
    u64 A = 1 + rng() % (x / q);
    if (!in_A_star(A, x, y)) continue;
    u64 P = oracle::largest(A);
    if (P <= q || 729 * P * P > x || oracle::smallest(A) < q) continue;
    auto c = peel_chain(A, q, x, y);
    auto bad = check_peel_postconditions(c, A, q, x, y);
    ASSERT_TRUE(bad.empty()) << A << " " << q << " " << x << " " << y << ": " << bad.front();
    ++done;
  }
}

TEST(Connect, PowerOfTwoStartIsSingletonPeel) {
  auto c = connect_astar(4096, 448, 59049, 7);
  EXPECT_EQ(c, (Chain{4096, 28672, 448}));
  EXPECT_TRUE(verify_chain(c).ok());
  for (u64 n : c) EXPECT_TRUE(in_A_star(n, 59049, 7));
}

TEST(Connect, RandomPairs) {
  std::mt19937_64 rng(9);
  int done = 0;
  while (done < 100) {
    u64 x = 59049 + rng() % 500'000;
    u64 y = 3 + rng() % 40;
    u64 A = 1 + rng() % x, B = 1 + rng() % x;
    if (!in_A_star(A, x, y) || !in_A_star(B, x, y)) continue;
    if (oracle::largest(A) >= oracle::largest(B)) continue;
    auto c = connect_astar(A, B, x, y);
    ASSERT_TRUE(verify_chain(c).ok());
    EXPECT_EQ(c.front(), A);
    EXPECT_EQ(c.back(), B);
    for (u64 n : c) ASSERT_TRUE(in_A_star(n, x, y));
    ++done;
  }
}

TEST(Connect, EqualLargestPrimeRejected) {
  EXPECT_THROW(connect_astar(448, 896, 59049, 7), PreconditionError);
}
