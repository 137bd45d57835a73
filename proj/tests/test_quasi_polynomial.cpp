#include <gtest/gtest.h>

#include "clusterlab/grothendieck.hpp"
#include "clusterlab/quasi_polynomial.hpp"

using namespace clusterlab;

namespace {

std::vector<PointCountSample> samples_of(const std::vector<u64>& qs, Integer (*f)(u64)) {
  std::vector<PointCountSample> out;
  for (u64 q : qs) out.push_back({q, f(q), false});
  return out;
}

Integer quartic(u64 q) {
  Integer Q = static_cast<unsigned long>(q);
  return Q * Q * Q * Q + 1;
}

Integer rank1_d3(u64 q) { return rank1_count(3, q); }

const std::vector<u64> kOddPrimePowers{3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49, 81, 243};

}  // namespace

TEST(Fit, PolynomialCounts) {
  auto qp = fit_quasi_polynomial(samples_of({3, 5, 7, 9, 11, 13}, quartic), 6, 4);
  EXPECT_EQ(qp.modulus, 1u);
  EXPECT_EQ(QuasiPolynomial::poly_string(qp.classes.at(0)), "q^4 + 1");
  EXPECT_EQ(*qp.evaluate(101), quartic(101));
}

TEST(Fit, ConstantSamples) {
  std::vector<PointCountSample> s{{3, 7, false}, {5, 7, false}, {7, 7, false}};
  auto qp = fit_quasi_polynomial(s, 4, 1);
  EXPECT_EQ(qp.modulus, 1u);
  EXPECT_EQ(qp.classes.at(0), std::vector<Integer>{7});
}

TEST(Fit, RankOneDegreeThreeNeedsResidueClasses) {
  auto qp = fit_quasi_polynomial(samples_of(kOddPrimePowers, rank1_d3), 12, 2);
  EXPECT_EQ(qp.modulus, 3u);
  EXPECT_EQ(QuasiPolynomial::poly_string(qp.classes.at(1)), "q^2 + q + 1");
  EXPECT_EQ(QuasiPolynomial::poly_string(qp.classes.at(2)), "q^2 - q + 1");
  for (u64 q : {53ul, 59ul, 61ul, 67ul, 79ul, 81ul}) EXPECT_EQ(*qp.evaluate(q), rank1_count(3, q));
}

TEST(Fit, SuspectSamplesAreDropped) {
  auto s = samples_of({5, 7, 9, 11, 13, 17}, quartic);
  s.push_back({3, 0, true});
  EXPECT_EQ(fit_quasi_polynomial(s, 4, 4).modulus, 1u);
  EXPECT_THROW(fit_quasi_polynomial(s, 4, 4, true), NoFit);
}

TEST(Fit, TooFewSamples) {
  EXPECT_THROW(fit_quasi_polynomial(samples_of({3, 5}, quartic), 4, 4), NoFit);
}

TEST(Grothendieck, SignedSums) {
  HodgeTable t{4, 0, {}};
  t.add(0, 0, 1);
  t.add(2, 2, 1);
  t.add(4, 4, 1);
  t.add(3, 2, 1);
  for (u64 q : {3, 5, 7}) EXPECT_EQ(signed_weight_sum(t, q), quartic(q));
  auto rep = grothendieck_consistency(t, samples_of({3, 5, 7, 9}, quartic));
  EXPECT_TRUE(rep.ok);
  EXPECT_TRUE(rep.diff.empty());
  auto bad = grothendieck_consistency(t, {{3, 81, false}});
  EXPECT_FALSE(bad.ok);
  EXPECT_EQ(bad.diff, "q=3: table gives 82, sample 81\n");
  EXPECT_FALSE(grothendieck_consistency(t, samples_of({3}, quartic), false).ok);
}
