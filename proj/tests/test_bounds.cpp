#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <randsor/bounds.hpp>
#include <randsor/generators.hpp>
#include <randsor/rng.hpp>

using namespace randsor;

namespace {

LinearSystem gs_2x2_third() {
  Eigen::MatrixXd a(2, 2);
  a << 1, 1.0 / 3.0, 1.0 / 3.0, 1;
  return LinearSystem::from_solution(a, Eigen::Vector2d(2, -1), Method::gauss_seidel);
}

LinearSystem identity_kaczmarz(Eigen::Index n) {
  return LinearSystem::from_solution(Eigen::MatrixXd::Identity(n, n),
                                     Eigen::VectorXd::Ones(n), Method::kaczmarz);
}

Ingredients random_ingredients(std::mt19937_64& rng) {
  // Valid ingredient triples: 0 < mu1 <= mu2 <= 1, mu1^2 <= xi <= mu1.
  Ingredients ing;
  ing.mu1 = 0.01 + 0.5 * uniform01(rng);
  ing.mu2 = ing.mu1 + (1.0 - ing.mu1) * uniform01(rng);
  ing.xi = ing.mu1 * ing.mu1 + (ing.mu1 - ing.mu1 * ing.mu1) * uniform01(rng);
  return ing;
}

}  // namespace

TEST(Ingredients, KaczmarzIdentityOrthogonalCase) {
  Ingredients ing = ingredients(ensemble_from_system(normalize(identity_kaczmarz(2))));
  EXPECT_NEAR(ing.mu1, 0.5, 1e-14);
  EXPECT_NEAR(ing.mu2, 0.5, 1e-14);
  EXPECT_NEAR(ing.xi, 0.5, 1e-14);  // xi = mu1 for an orthogonal problem
  EXPECT_TRUE(ing.degenerate_mu1);
}

TEST(Ingredients, GaussSeidel2x2HandValues) {
  ProjectorEnsemble ens = ensemble_from_system(normalize(gs_2x2_third()));
  Ingredients ing = ingredients(ens);
  EXPECT_NEAR(ing.mu1, 1.0 / 3.0, 1e-13);
  EXPECT_NEAR(ing.mu2, 2.0 / 3.0, 1e-13);
  EXPECT_NEAR(ing.xi, 1.0 / 9.0, 1e-13);
  EXPECT_FALSE(ing.degenerate_mu1);
  const double s = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(ing.u1(0)), s, 1e-12);
  EXPECT_NEAR(std::abs(ing.u1(1)), s, 1e-12);
  EXPECT_NEAR(ing.u1(0) + ing.u1(1), 0.0, 1e-12);
  // Closed form nu m1^2 ||u1||_4^4 agrees with the generic expectation.
  EXPECT_NEAR(xi_closed_form(normalize(gs_2x2_third()), ing.u1, ing.mu1), ing.xi, 1e-13);
}

TEST(Ingredients, EigenpairResidualSmall) {
  LinearSystem sys = make_random_spd(7, 40.0, 5);
  ProjectorEnsemble ens = ensemble_from_system(normalize(sys));
  Ingredients ing = ingredients(ens);
  EXPECT_NEAR(ing.u1.norm(), 1.0, 1e-12);
  EXPECT_LE((expected_projector(ens) * ing.u1 - ing.mu1 * ing.u1).norm(), 1e-8);
}

TEST(Ingredients, XiBetweenMu1SquaredAndMu1OnRandomSystems) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    LinearSystem sys = seed % 2 ? make_random(9, 6, 25.0, seed)
                                : LinearSystem(make_random_spd(6, 25.0, seed));
    Ingredients ing = ingredients(ensemble_from_system(normalize(sys)));
    EXPECT_GE(ing.xi, ing.mu1 * ing.mu1 - 1e-12) << "seed " << seed;
    EXPECT_LE(ing.xi, ing.mu1 + 1e-12) << "seed " << seed;
    EXPECT_GT(ing.mu1, 0.0);
    EXPECT_LE(ing.mu1, ing.mu2);
    EXPECT_LE(ing.mu2, 1.0 + 1e-12);
  }
}

TEST(Ingredients, ClosedFormMatchesGenericXi) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    LinearSystem k = make_random(8, 5, 15.0, seed);
    NormalizedSystem ns = normalize(k);
    Ingredients ing = ingredients(ensemble_from_system(ns));
    EXPECT_NEAR(xi_closed_form(ns, ing.u1, ing.mu1), ing.xi, 1e-10) << "k seed " << seed;

    LinearSystem g = make_random_spd(6, 30.0, seed + 100);
    NormalizedSystem gns = normalize(g);
    Ingredients ging = ingredients(ensemble_from_system(gns));
    EXPECT_NEAR(xi_closed_form(gns, ging.u1, ging.mu1), ging.xi, 1e-10)
        << "gs seed " << seed;
  }
}

TEST(Ingredients, RejectsRankDeficientExpectedProjector) {
  // Two copies of the same row: E[P] is rank one in R^2.
  Eigen::MatrixXd a(2, 2);
  a << 1, 0, 1, 0;
  LinearSystem sys{a, a * Eigen::Vector2d(1, 0), Method::kaczmarz,
                   Eigen::VectorXd(Eigen::Vector2d(1, 0))};
  EXPECT_THROW(ingredients(ensemble_from_system(normalize(sys))),
               std::invalid_argument);
}

TEST(BBound, FormulaAndEndpoints) {
  Ingredients ing;
  ing.mu1 = 0.2;
  ing.mu2 = 0.4;
  ing.xi = 0.1;
  EXPECT_DOUBLE_EQ(b_bound(ing, 1.0), 0.8);
  EXPECT_DOUBLE_EQ(b_bound(ing, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(b_bound(ing, 2.0), 1.0);
  ing.mu1 = 1.0 / 3.0;
  EXPECT_NEAR(b_bound(ing, 1.0), 2.0 / 3.0, 1e-15);
  EXPECT_THROW(b_bound(ing, -0.1), std::invalid_argument);
  EXPECT_THROW(b_bound(ing, 2.1), std::invalid_argument);
}

TEST(BoundPair, OrthogonalCaseGammaZero) {
  Ingredients ing;
  ing.mu1 = 0.25;
  ing.mu2 = 0.5;
  ing.xi = 0.25;  // xi = mu1
  BoundPair bp = bound_pair(ing);
  EXPECT_DOUBLE_EQ(bp.c_star(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(bp.c_star(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(bp.c_star(1, 1), 0.25);
}

TEST(BoundPair, HandValuesForThirds) {
  Ingredients ing;
  ing.mu1 = 1.0 / 3.0;
  ing.mu2 = 2.0 / 3.0;
  ing.xi = 1.0 / 9.0;
  BoundPair bp = bound_pair(ing);
  // gamma = (1/2)(1 - 1/3) = 1/3, off-diagonal sqrt(gamma xi) = 1/(3 sqrt 3).
  EXPECT_NEAR(bp.c_star(0, 0), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(bp.c_star(0, 1), 1.0 / (3.0 * std::sqrt(3.0)), 1e-15);
  EXPECT_NEAR(bp.c_star(1, 1), 1.0 / 9.0, 1e-15);
  EXPECT_NEAR(bp.b_star(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(bp.b_star(1, 1), 2.0 / 3.0, 1e-15);
}

TEST(BoundPair, HalfBStarMinusCStarSingularPsd) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    Ingredients ing = random_ingredients(rng);
    BoundPair bp = bound_pair(ing);
    Eigen::Matrix2d half = 0.5 * bp.b_star - bp.c_star;
    const double det = half(0, 0) * half(1, 1) - half(0, 1) * half(1, 0);
    EXPECT_NEAR(det, 0.0, 1e-14);
    EXPECT_GE(half.trace(), -1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(half, Eigen::EigenvaluesOnly);
    EXPECT_NEAR(es.eigenvalues()(0), 0.0, 1e-12);
  }
}

TEST(CBound, OmegaZeroIsOne) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial)
    EXPECT_DOUBLE_EQ(c_bound(random_ingredients(rng), 0.0), 1.0);
}

TEST(CBound, CollapsesToBWhenDegenerate) {
  for (double w : {0.0, 0.3, 0.7, 1.0, 1.3, 1.7, 2.0}) {
    Ingredients orth;  // xi = mu1
    orth.mu1 = 0.2;
    orth.mu2 = 0.55;
    orth.xi = 0.2;
    EXPECT_NEAR(c_bound(orth, w), b_bound(orth, w), 1e-14) << "xi=mu1, w=" << w;

    Ingredients repeated;  // mu2 = mu1
    repeated.mu1 = 0.3;
    repeated.mu2 = 0.3;
    repeated.xi = 0.15;
    EXPECT_NEAR(c_bound(repeated, w), b_bound(repeated, w), 1e-14) << "mu2=mu1, w=" << w;
  }
}

TEST(CBound, FrozenValueAtOmegaOne) {
  Ingredients ing;
  ing.mu1 = 1.0 / 3.0;
  ing.mu2 = 2.0 / 3.0;
  ing.xi = 1.0 / 9.0;
  // Independent route: eigensolver on the explicit 2x2 instead of the
  // trace/determinant formula. Frozen value 0.5892.
  BoundPair bp = bound_pair(ing);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(bp.b_star - bp.c_star,
                                                    Eigen::EigenvaluesOnly);
  const double oracle = 1.0 - es.eigenvalues()(0);
  EXPECT_NEAR(c_bound(ing, 1.0), oracle, 1e-13);
  EXPECT_NEAR(c_bound(ing, 1.0), 0.5892, 1e-4);
}

TEST(CBound, EqualsOneAtOmegaTwo) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial)
    EXPECT_NEAR(c_bound(random_ingredients(rng), 2.0), 1.0, 1e-12);
}

TEST(CBound, NeverAboveBBound) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    Ingredients ing = random_ingredients(rng);
    const double w = 2.0 * uniform01(rng);
    EXPECT_LE(c_bound(ing, w), b_bound(ing, w) + 1e-12);
  }
}

TEST(CBound, ConvexInOmega) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 1000; ++trial) {
    Ingredients ing = random_ingredients(rng);
    double w1 = 2.0 * uniform01(rng);
    double w2 = 2.0 * uniform01(rng);
    if (w1 > w2) std::swap(w1, w2);
    const double mid = 0.5 * (w1 + w2);
    EXPECT_LE(c_bound(ing, mid),
              0.5 * (c_bound(ing, w1) + c_bound(ing, w2)) + 1e-10);
  }
}

TEST(OptimalOmega, OrthogonalCaseStaysAtOne) {
  Ingredients ing;
  ing.mu1 = 0.25;
  ing.mu2 = 0.6;
  ing.xi = 0.25;
  OptimalOmega opt = optimal_omega(ing);
  EXPECT_DOUBLE_EQ(opt.omega_star, 1.0);
  EXPECT_NEAR(opt.c_at_star, 0.75, 1e-14);
}

TEST(OptimalOmega, MatchesGridScanOracle) {
  Ingredients ing;
  ing.mu1 = 1.0 / 3.0;
  ing.mu2 = 2.0 / 3.0;
  ing.xi = 1.0 / 9.0;
  double best_w = 1.0, best_c = c_bound(ing, 1.0);
  for (int i = 0; i <= 100000; ++i) {
    const double w = 1.0 + 1e-5 * static_cast<double>(i);
    if (w >= 2.0) break;
    const double c = c_bound(ing, w);
    if (c < best_c) {
      best_c = c;
      best_w = w;
    }
  }
  OptimalOmega opt = optimal_omega(ing);
  EXPECT_NEAR(opt.omega_star, best_w, 1e-4);
  EXPECT_LE(opt.c_at_star, best_c + 1e-12);
}

TEST(OptimalOmega, NeverWorseThanNoRelaxation) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    Ingredients ing = random_ingredients(rng);
    OptimalOmega opt = optimal_omega(ing);
    EXPECT_GE(opt.omega_star, 1.0);
    EXPECT_LT(opt.omega_star, 2.0);
    EXPECT_LE(opt.c_at_star, c_bound(ing, 1.0) + 1e-12);
    EXPECT_LE(opt.c_at_star, 1.0 - ing.mu1 + 1e-12);
  }
}

TEST(OmegaGrid, BuildsInclusiveGrids) {
  std::vector<double> g = omega_grid(0.0, 2.0, 81);
  ASSERT_EQ(g.size(), 81u);
  EXPECT_DOUBLE_EQ(g.front(), 0.0);
  EXPECT_DOUBLE_EQ(g.back(), 2.0);
  EXPECT_NEAR(g[40], 1.0, 1e-15);
  EXPECT_THROW(omega_grid(-0.1, 2.0, 5), std::invalid_argument);
  EXPECT_THROW(omega_grid(0.0, 2.5, 5), std::invalid_argument);
  EXPECT_THROW(omega_grid(0.0, 2.0, 0), std::invalid_argument);
}

TEST(BoundCurve, MatchesPointwiseEvaluation) {
  Ingredients ing = ingredients(ensemble_from_system(normalize(gs_2x2_third())));
  BoundCurve curve = bound_curve(ing, omega_grid(0.0, 2.0, 21));
  ASSERT_EQ(curve.b_vals.size(), 21u);
  for (std::size_t i = 0; i < curve.omegas.size(); ++i) {
    EXPECT_DOUBLE_EQ(curve.b_vals[i], b_bound(ing, curve.omegas[i]));
    EXPECT_DOUBLE_EQ(curve.c_vals[i], c_bound(ing, curve.omegas[i]));
  }
  EXPECT_TRUE(curve.rho_vals.empty());
}
