#include <gtest/gtest.h>

#include <Eigen/SVD>
#include <randsor/generators.hpp>

using namespace randsor;

namespace {

// Independent conditioning oracle: full SVD.
double cond2(const Eigen::MatrixXd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  return s(0) / s(s.size() - 1);
}

}  // namespace

TEST(Hilbert, Entries) {
  LinearSystem h3 = make_hilbert(3);
  EXPECT_DOUBLE_EQ(h3.a(0, 2), 1.0 / 3.0);
  LinearSystem h2 = make_hilbert(2);
  Eigen::MatrixXd expected(2, 2);
  expected << 1.0, 0.5, 0.5, 1.0 / 3.0;
  EXPECT_LE((h2.a - expected).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Hilbert, ConditionNumberN4) {
  // Frozen from the SVD oracle: cond_2(hilbert(4)) = 1.5514e4.
  EXPECT_NEAR(cond2(make_hilbert(4).a), 1.5514e4, 0.001e4);
}

TEST(Hilbert, ConsistentAndSeeded) {
  LinearSystem h = make_hilbert(5, 7);
  ASSERT_TRUE(h.x_star.has_value());
  EXPECT_LE((h.a * (*h.x_star) - h.b).norm(), 1e-12 * h.b.norm());
  LinearSystem h2 = make_hilbert(5, 7);
  EXPECT_EQ((*h.x_star - *h2.x_star).norm(), 0.0);
  LinearSystem h3 = make_hilbert(5, 8);
  EXPECT_GT((*h.x_star - *h3.x_star).norm(), 0.0);
}

TEST(Parter, Entries) {
  LinearSystem p = make_parter(3);
  EXPECT_DOUBLE_EQ(p.a(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(p.a(0, 1), -2.0);
}

TEST(Parter, FullRankN5) {
  LinearSystem p = make_parter(5);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(p.a);
  EXPECT_GT(svd.singularValues().minCoeff(), 1.0);  // Parter is well separated from 0
  EXPECT_TRUE(p.a.allFinite());
}

TEST(MakeRandom, UnitKappaGivesEqualSingularValues) {
  LinearSystem s = make_random(4, 4, 1.0, 3);
  EXPECT_NEAR(cond2(s.a), 1.0, 1e-10);
}

TEST(MakeRandom, HitsLargeConditionNumbersExactly) {
  EXPECT_NEAR(cond2(make_random(50, 50, 61705.3, 11).a) / 61705.3, 1.0, 0.01);
  EXPECT_NEAR(cond2(make_random(75, 50, 110.2, 12).a) / 110.2, 1.0, 0.01);
}

TEST(MakeRandom, ConditionWithinOnePercentAcrossSeeds) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const double kappa = 10.0 + 37.0 * static_cast<double>(seed);
    EXPECT_NEAR(cond2(make_random(9, 6, kappa, seed).a) / kappa, 1.0, 0.01)
        << "seed " << seed;
  }
}

TEST(MakeRandom, RejectsBadArguments) {
  EXPECT_THROW(make_random(3, 5, 10.0, 0), std::invalid_argument);  // m < n
  EXPECT_THROW(make_random(5, 5, 0.5, 0), std::invalid_argument);   // kappa < 1
}

TEST(MakeRandomSpd, SpectrumAndSymmetry) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    LinearSystem s = make_random_spd(6, 25.0, seed);
    EXPECT_LE((s.a - s.a.transpose()).cwiseAbs().maxCoeff(), 1e-15);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.a, Eigen::EigenvaluesOnly);
    EXPECT_GT(es.eigenvalues()(0), 0.0);
    EXPECT_NEAR(es.eigenvalues()(5) / es.eigenvalues()(0), 25.0, 0.25);
  }
}
