#include <gtest/gtest.h>

#include <randsor/generators.hpp>
#include <randsor/linear_system.hpp>

using namespace randsor;

TEST(Normalize, KaczmarzRowScaling) {
  Eigen::MatrixXd a(2, 2);
  a << 3, 4, 1, 0;
  LinearSystem sys = LinearSystem::from_solution(a, Eigen::Vector2d(1.0, -2.0),
                                                 Method::kaczmarz);
  NormalizedSystem ns = normalize(sys);
  EXPECT_NEAR(ns.a_norm(0, 0), 0.6, 1e-15);
  EXPECT_NEAR(ns.a_norm(0, 1), 0.8, 1e-15);
  EXPECT_DOUBLE_EQ(ns.scaling(0), 5.0);
  // Scaled rows keep the same solution.
  EXPECT_NEAR((ns.a_norm * Eigen::Vector2d(1.0, -2.0) - ns.b_norm).norm(), 0.0, 1e-14);
}

TEST(Normalize, GaussSeidelDiagonalScaling) {
  Eigen::MatrixXd a(2, 2);
  a << 4, 2, 2, 9;
  LinearSystem sys =
      LinearSystem::from_solution(a, Eigen::Vector2d(0.5, 1.5), Method::gauss_seidel);
  NormalizedSystem ns = normalize(sys);
  EXPECT_NEAR(ns.a_norm(0, 0), 1.0, 1e-14);
  EXPECT_NEAR(ns.a_norm(1, 1), 1.0, 1e-14);
  EXPECT_NEAR(ns.a_norm(0, 1), 1.0 / 3.0, 1e-14);
  EXPECT_NEAR(ns.a_norm(1, 0), 1.0 / 3.0, 1e-14);
  ns.validate();
}

TEST(Normalize, KaczmarzIdentityUnchanged) {
  LinearSystem sys = LinearSystem::from_solution(
      Eigen::MatrixXd::Identity(3, 3), Eigen::Vector3d(1, 2, 3), Method::kaczmarz);
  NormalizedSystem ns = normalize(sys);
  EXPECT_NEAR((ns.a_norm - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff(), 0.0,
              1e-15);
  EXPECT_NEAR((ns.b_norm - sys.b).norm(), 0.0, 1e-15);
}

TEST(Normalize, IdempotentOnRandomSystems) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    LinearSystem k = make_random(7, 5, 50.0, seed);
    NormalizedSystem once = normalize(k);
    LinearSystem again{once.a_norm, once.b_norm, Method::kaczmarz, once.x_star_norm};
    NormalizedSystem twice = normalize(again);
    EXPECT_LE((twice.a_norm - once.a_norm).cwiseAbs().maxCoeff(), 1e-14);

    LinearSystem g = make_random_spd(6, 20.0, seed);
    NormalizedSystem gonce = normalize(g);
    LinearSystem gagain{gonce.a_norm, gonce.b_norm, Method::gauss_seidel,
                        gonce.x_star_norm};
    NormalizedSystem gtwice = normalize(gagain);
    EXPECT_LE((gtwice.a_norm - gonce.a_norm).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Normalize, GaussSeidelKeepsSymmetryAndPositivity) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    LinearSystem g = make_random_spd(8, 100.0, seed);
    NormalizedSystem ns = normalize(g);
    EXPECT_LE((ns.a_norm - ns.a_norm.transpose()).cwiseAbs().maxCoeff(), 1e-14);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ns.a_norm, Eigen::EigenvaluesOnly);
    EXPECT_GT(es.eigenvalues()(0), 0.0);
  }
}

TEST(Normalize, RejectsZeroRowWithIndex) {
  Eigen::MatrixXd a(3, 2);
  a << 1, 0, 0, 0, 0, 1;
  LinearSystem sys{a, Eigen::Vector3d::Zero(), Method::kaczmarz, std::nullopt};
  try {
    normalize(sys);
    FAIL() << "expected rejection";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("1"), std::string::npos);
  }
}

TEST(Normalize, RejectsNonpositiveDiagonal) {
  Eigen::MatrixXd a(2, 2);
  a << 1, 0, 0, -2;
  LinearSystem sys{a, Eigen::Vector2d::Zero(), Method::gauss_seidel, std::nullopt};
  EXPECT_THROW(normalize(sys), std::invalid_argument);
}

TEST(LinearSystem, ValidateRejectsAsymmetricGaussSeidel) {
  Eigen::MatrixXd a(2, 2);
  a << 1, 0.5, 0.4, 1;
  EXPECT_THROW(
      LinearSystem::from_solution(a, Eigen::Vector2d(1, 1), Method::gauss_seidel),
      std::invalid_argument);
}

TEST(LinearSystem, ValidateRejectsIndefiniteGaussSeidel) {
  Eigen::MatrixXd a(2, 2);
  a << 1, 2, 2, 1;  // eigenvalues 3, -1
  EXPECT_THROW(
      LinearSystem::from_solution(a, Eigen::Vector2d(1, 1), Method::gauss_seidel),
      std::invalid_argument);
}

TEST(LinearSystem, ValidateRejectsInconsistentKaczmarz) {
  Eigen::MatrixXd a(3, 2);
  a << 1, 0, 0, 1, 1, 1;
  LinearSystem sys{a, Eigen::Vector3d(1, 1, 5), Method::kaczmarz, std::nullopt};
  EXPECT_THROW(sys.validate(), std::invalid_argument);
}

TEST(LinearSystem, MethodNamesRoundTrip) {
  EXPECT_EQ(method_from_string("gauss-seidel"), Method::gauss_seidel);
  EXPECT_EQ(method_from_string("kaczmarz"), Method::kaczmarz);
  EXPECT_EQ(to_string(Method::gauss_seidel), "gauss-seidel");
  EXPECT_THROW(method_from_string("jacobi"), std::invalid_argument);
}
