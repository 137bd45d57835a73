#include <gtest/gtest.h>

#include <random>

#include "clusterlab/symmetry_cover.hpp"
#include "oracles.hpp"

using namespace clusterlab;

namespace {

// Random full-rank exchange matrix with m >= n.
ExchangeMatrix random_full_rank(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  for (;;) {
    auto b = oracle::random_exchange(rng, n, m, 2, 3);
    if (is_full_rank(b.mat())) return b;
  }
}

IntMatrix random_r(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  IntMatrix r = oracle::random_matrix(rng, n + m, n + m, 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n + m; ++j) r(i, j) = i == j ? 1 : 0;
  return r;
}

}  // namespace

TEST(Characters, RankOne) {
  ExchangeMatrix b(1, 1, IntMatrix{{0}, {3}});
  EXPECT_EQ(aut_characters(b).to_string(), "Z^1 + Z/3");
  EXPECT_EQ(locally_constant_characters(b).to_string(), "Z/3");
  EXPECT_EQ(cover_degree(b), 3);
  EXPECT_EQ(cover_degree(ExchangeMatrix(2, 0, IntMatrix{{0, 1}, {-1, 0}})), 1);
  EXPECT_THROW(cover_degree(ExchangeMatrix(1, 0, IntMatrix{{0}})), NotFullRank);
}

TEST(Cover, PostconditionsOnRandomMatrices) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + trial % 3, m = n + trial % 2;
    auto b = random_full_rank(rng, n, m);
    Integer d = cover_degree(b) * (1 + trial % 2);
    auto c = build_cover(b, d, 1 + trial);
    ASSERT_TRUE(c.block_form_ok());
    ASSERT_EQ(c.r * b.mat(), cover_target(b, d));
    ASSERT_NE(determinant(c.r), 0);
  }
}

TEST(Cover, RejectsBadDegreeAndShape) {
  ExchangeMatrix b(1, 1, IntMatrix{{0}, {3}});
  EXPECT_THROW(build_cover(b, 2), PreconditionViolated);
  EXPECT_THROW(build_cover(ExchangeMatrix(2, 0, IntMatrix{{0, 1}, {-1, 0}})), PreconditionViolated);
}

TEST(Cover, RMutationLemma) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + trial % 4, m = trial % 3;
    auto b = oracle::random_exchange(rng, n, m);
    CoverMatrix r{n, random_r(rng, n, m)};
    ExchangeMatrix c(n, m, r.r * b.mat());
    for (std::size_t k = 0; k < n; ++k) {
      auto r2 = mutate_cover(r, b, k);
      ASSERT_TRUE(r2.block_form_ok());
      ASSERT_EQ(mutate_matrix(c, k).mat(), r2.r * mutate_matrix(b, k).mat());
    }
  }
}

TEST(Gsv, PostconditionsOnRandomMatrices) {
  std::mt19937_64 rng(81);
  int done = 0;
  for (int trial = 0; done < 200; ++trial) {
    std::size_t n = 1 + trial % 4, m = n % 2 == 0 ? 2 * (trial % 2) : 1 + 2 * (trial % 2);
    auto b = oracle::random_exchange(rng, n, m);
    if (!is_full_rank(b.mat())) continue;
    auto g = complete_gsv(b, 1 + trial);
    ASSERT_TRUE(is_skew_symmetric(g.bhat));
    ASSERT_NE(determinant(g.bhat), 0);
    ASSERT_EQ(g.bhat.block(0, b.size(), 0, n), b.mat());
    ++done;
  }
}

TEST(Gsv, Errors) {
  EXPECT_THROW(complete_gsv(ExchangeMatrix(1, 0, IntMatrix{{0}})), OddDimension);
  EXPECT_THROW(complete_gsv(ExchangeMatrix(1, 1, IntMatrix{{0}, {0}})), NotFullRank);
}

TEST(Gsv, PullbackAlongCover) {
  ExchangeMatrix b(1, 1, IntMatrix{{0}, {3}});
  auto g = complete_gsv(b);
  auto c = build_cover(b);
  auto p = gsv_pullback(g, c);
  EXPECT_TRUE(is_skew_symmetric(p.bhat));
  EXPECT_EQ(p.bhat.block(0, 2, 0, 1), c.r * b.mat());
}
