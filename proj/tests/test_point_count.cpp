#include <gtest/gtest.h>

#include <random>

#include "clusterlab/finite_field.hpp"
#include "clusterlab/point_count.hpp"
#include "clusterlab/quiver_struct.hpp"
#include "oracles.hpp"

using namespace clusterlab;

namespace {

ExchangeMatrix stack_isolated(const IntMatrix& c) {
  const std::size_t n = c.cols();
  IntMatrix b(n + c.rows(), n);
  for (std::size_t r = 0; r < c.rows(); ++r)
    for (std::size_t j = 0; j < n; ++j) b(n + r, j) = c(r, j);
  return ExchangeMatrix(n, c.rows(), b);
}

Integer poly_at(const std::vector<long>& coeffs, long q) {
  Integer acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * q + coeffs[i];
  return acc;
}

}  // namespace

TEST(FiniteField, PrimeFieldArithmetic) {
  FiniteField f(7, 1);
  EXPECT_EQ(f.order(), 7u);
  EXPECT_EQ(f.mul(3, 5), 1u);
  EXPECT_EQ(f.inv(3), 5u);
  EXPECT_EQ(f.add(4, 5), 2u);
  EXPECT_EQ(f.neg(0), 0u);
  auto g = f.primitive_element();
  std::set<u64> seen;
  for (u64 k = 0; k < 6; ++k) seen.insert(f.pow(g, k));
  EXPECT_EQ(seen.size(), 6u);
}

TEST(FiniteField, ExtensionFieldsAreFields) {
  for (u64 q : {4ul, 8ul, 9ul, 25ul, 27ul, 49ul, 81ul}) {
    FiniteField f = field_of_order(q);
    ASSERT_EQ(f.order(), q);
    for (u64 x = 1; x < q; ++x) ASSERT_EQ(f.mul(x, f.inv(x)), f.one()) << q << " " << x;
    auto t = f.exp_table();
    std::set<u64> units(t.begin(), t.end());
    ASSERT_EQ(units.size(), q - 1);
    for (u64 x = 0; x < q; ++x)
      for (u64 y = 0; y < q; y += 3) ASSERT_EQ(f.mul(x, y), f.mul(y, x));
  }
}

TEST(FiniteField, Errors) {
  EXPECT_THROW(FiniteField(6, 1), NotPrime);
  EXPECT_THROW(field_of_order(12), InvalidInput);
  EXPECT_THROW(field_of_order(3 * 3 * 3 * 3 * 3), PreconditionViolated);
}

TEST(RankOne, ClosedFormAgainstBruteForce) {
  for (long d = 1; d <= 6; ++d)
    for (long p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
      ASSERT_EQ(rank1_count(d, p), oracle::rank1_brute(d, p)) << d << " " << p;
      IntMatrix c{{d}};
      ASSERT_EQ(count_isolated(c, field_of_order(p)), oracle::rank1_brute(d, p));
    }
}

TEST(Isolated, BothRoutesMatchStratifiedOracle) {
  std::mt19937_64 rng(131);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + trial % 2, m = 1 + trial % 3;
    IntMatrix c = oracle::random_matrix(rng, m, n, 3);
    long p = std::vector<long>{3, 5, 7}[trial % 3];
    Integer want = oracle::stratified_count(stack_isolated(c), p);
    ASSERT_EQ(count_isolated_enumerate(c, field_of_order(p)), want) << c << " p=" << p;
    ASSERT_EQ(count_isolated_congruence(c, p), want) << c << " p=" << p;
  }
}

TEST(Isolated, RoutesAgreeOnPrimePowers) {
  std::mt19937_64 rng(141);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + trial % 2, m = 1 + trial % 2;
    IntMatrix c = oracle::random_matrix(rng, m, n, 4);
    u64 q = std::vector<u64>{4, 8, 9, 25, 27}[trial % 5];
    ASSERT_EQ(count_isolated_enumerate(c, field_of_order(q), 1 + trial % 3), count_isolated_congruence(c, q))
        << c << " q=" << q;
  }
}

TEST(Louise, TriangleWithTail) {
  ExchangeMatrix b(4, 0, IntMatrix{{0, 1, 1, 0}, {-1, 0, 1, 0}, {-1, -1, 0, 1}, {0, 0, -1, 0}});
  auto cert = *louise_certificate(b).certificate;
  for (u64 q : {3, 4, 5, 7, 9, 11, 13}) EXPECT_EQ(count_louise(b, cert, field_of_order(q)), poly_at({1, 0, 0, 0, 1}, q));
}

TEST(Louise, A2AgainstStratifiedOracle) {
  ExchangeMatrix a2(2, 0, IntMatrix{{0, 1}, {-1, 0}});
  auto cert = *louise_certificate(a2).certificate;
  for (long p : {3, 5, 7, 11, 13}) {
    EXPECT_EQ(count_louise(a2, cert, field_of_order(p)), oracle::stratified_count(a2, p));
    EXPECT_EQ(oracle::stratified_count(a2, p), poly_at({1, 0, 1}, p));
  }
}

TEST(Louise, RandomAcyclicAgainstStratifiedOracle) {
  std::mt19937_64 rng(151);
  for (int trial = 0; trial < 200; ++trial) {
    auto b = oracle::random_acyclic(rng, 1 + trial % 4, trial % 3);
    auto res = louise_certificate(b);
    ASSERT_EQ(res.kind, SearchVerdict::Kind::Yes);
    long p = std::vector<long>{3, 5}[trial % 2];
    ASSERT_EQ(count_louise(b, *res.certificate, field_of_order(p)), oracle::stratified_count(b, p)) << b.mat();
  }
}

TEST(Louise, MutationInvariantCount) {
  // Counts do not depend on the seed used to present the variety.
  ExchangeMatrix b(3, 1, IntMatrix{{0, 1, 1}, {-1, 0, 1}, {-1, -1, 0}, {0, 0, -1}});
  for (std::size_t k = 0; k < 3; ++k) {
    auto mu = mutate_matrix(b, k);
    auto c1 = *louise_certificate(b).certificate, c2 = *louise_certificate(mu).certificate;
    for (u64 q : {3, 5, 7}) EXPECT_EQ(count_louise(b, c1, field_of_order(q)), count_louise(mu, c2, field_of_order(q)));
  }
}

TEST(Louise, MismatchedCertificateThrows) {
  ExchangeMatrix a2(2, 0, IntMatrix{{0, 1}, {-1, 0}});
  ExchangeMatrix a3(3, 0, IntMatrix{{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}});
  auto cert = *louise_certificate(a3).certificate;
  EXPECT_THROW(count_louise(a2, cert, field_of_order(5)), CertificateMismatch);
}

TEST(Samples, SuspectPrimes) {
  ExchangeMatrix b(1, 1, IntMatrix{{0}, {3}});
  EXPECT_EQ(suspect_bound(b), 3);
  EXPECT_TRUE(make_sample(b, 3, 0).suspect);
  EXPECT_TRUE(make_sample(b, 9, 0).suspect);
  EXPECT_FALSE(make_sample(b, 5, 0).suspect);
  EXPECT_THROW(make_sample(b, 6, 0), InvalidInput);
}
