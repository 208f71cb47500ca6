#include <gtest/gtest.h>

#include <fstream>

#include "divgraph/builder.hpp"
#include "divgraph/chain_io.hpp"
#include "divgraph/counting.hpp"
#include "divgraph/solver.hpp"

using namespace divgraph;
using namespace std::chrono_literals;

TEST(Oracle, SmallValues) {
  EXPECT_EQ(oracle_bruteforce(1, 1).best_length, 1U);
  auto six = oracle_bruteforce(6, 6);
  EXPECT_EQ(six.best_length, 6U);
  EXPECT_TRUE(verify_chain(six.best_chain).ok());
  EXPECT_EQ(oracle_bruteforce(5, 5).best_length, 4U);
  EXPECT_EQ(oracle_bruteforce(5, 5).status, SearchStatus::Exact);
  EXPECT_THROW(oracle_bruteforce(25, 25), std::invalid_argument);
  // the example chain 4-2-6-3-1-5 is one of the optima
  EXPECT_TRUE(verify_chain(Chain{4, 2, 6, 3, 1, 5}.entries(), ChainContext{6, 6}).ok());
}

TEST(Exact, BelowTwoIsSingleton) {
  auto r = longest_chain_exact(Rational(3, 2), 2);
  EXPECT_EQ(r.best_length, 1U);
  EXPECT_EQ(r.best_chain, (Chain{1}));
  EXPECT_EQ(r.status, SearchStatus::Exact);
}

TEST(Exact, SixteenMatchesOracle) {
  auto r = longest_chain_exact(16, 16);
  EXPECT_EQ(r.status, SearchStatus::Exact);
  EXPECT_EQ(r.best_length, oracle_bruteforce(16, 16).best_length);
}

TEST(Exact, MatchesOracleOnSmallGrid) {
  for (u64 x = 2; x <= 20; ++x) {
    for (u64 y : std::initializer_list<u64>{2, 3, x}) {
      if (y < 2) continue;
      auto r = longest_chain_exact(x, y);
      auto o = oracle_bruteforce(x, y);
      ASSERT_EQ(r.status, SearchStatus::Exact);
      ASSERT_EQ(r.best_length, o.best_length) << x << " " << y;
      ASSERT_TRUE(verify_chain(r.best_chain).ok());
      ASSERT_EQ(r.best_chain.length(), r.best_length);
    }
  }
}

TEST(Exact, PlainBranchAndBoundAgrees) {
  SearchOptions opt;
  opt.hub_bound = false;
  for (u64 x = 2; x <= 24; ++x) {
    auto r = longest_chain_exact(x, x, opt);
    ASSERT_EQ(r.status, SearchStatus::Exact);
    ASSERT_EQ(r.best_length, oracle_bruteforce(x, x).best_length) << x;
  }
}

TEST(Exact, MonotoneAndBounded) {
  std::vector<std::size_t> prev_y(41, 0);
  std::size_t prev_x = 0;
  for (u64 x = 2; x <= 40; ++x) {
    auto full = longest_chain_exact(x, x);
    ASSERT_EQ(full.status, SearchStatus::Exact);
    EXPECT_GE(full.best_length, prev_x);
    prev_x = full.best_length;
    EXPECT_GE(full.best_length, lower_bound_f(x, x).bound) << x;
    std::size_t last = 0;
    for (u64 y : std::initializer_list<u64>{2, 3, 5, 7}) {
      if (y > x) break;
      auto r = longest_chain_exact(x, y);
      ASSERT_EQ(r.status, SearchStatus::Exact);
      EXPECT_GE(r.best_length, last);
      EXPECT_LE(r.best_length, full.best_length);
      EXPECT_LE(r.best_length, count_psi(x, y));
      EXPECT_GE(r.best_length, prev_y[y]);
      prev_y[y] = r.best_length;
      last = r.best_length;
    }
  }
}

TEST(Exact, ThreadsGiveSameLength) {
  SearchOptions opt;
  opt.threads = 3;
  for (u64 x : std::initializer_list<u64>{22, 33}) EXPECT_EQ(longest_chain_exact(x, x, opt).best_length, longest_chain_exact(x, x).best_length);
}

TEST(Exact, TinyBudgetKeepsBuilderIncumbent) {
  SearchOptions opt;
  opt.budget = 0ms;
  opt.hub_bound = false;
  auto r = longest_chain_exact(100, 100, opt);
  EXPECT_EQ(r.status, SearchStatus::LowerBound);
  EXPECT_GE(r.best_length, lower_bound_f(100, 100).bound);
  EXPECT_TRUE(verify_chain(r.best_chain).ok());
}

TEST(Exact, GoldenSeedAlwaysGives77) {
  std::ifstream in(DIVGRAPH_GOLDEN_CHAIN);
  SearchOptions opt;
  opt.seed = read_chain_text(in);
  opt.budget = 0ms;
  opt.hub_bound = false;
  auto r = longest_chain_exact(100, 100, opt);
  EXPECT_GE(r.best_length, 77U);
  EXPECT_THROW(longest_chain_exact(50, 50, opt), std::invalid_argument);  // seed leaves S(50, 50)
}
