#include "randsor/generators.hpp"

#include <Eigen/QR>
#include <cmath>
#include <stdexcept>

#include "randsor/rng.hpp"

namespace randsor {

namespace {

Eigen::VectorXd seeded_normal_vector(Eigen::Index n, std::mt19937_64& rng) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = standard_normal(rng);
  return v;
}

Eigen::MatrixXd seeded_normal_matrix(Eigen::Index rows, Eigen::Index cols,
                                     std::mt19937_64& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = standard_normal(rng);
  return m;
}

// Haar-ish orthonormal columns: QR of a Gaussian matrix with the sign of
// R's diagonal folded into Q so the factor is unique.
Eigen::MatrixXd random_orthonormal(Eigen::Index rows, Eigen::Index cols,
                                   std::mt19937_64& rng) {
  Eigen::MatrixXd g = seeded_normal_matrix(rows, cols, rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(rows, cols);
  Eigen::MatrixXd r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < cols; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

// Log-uniform values spanning exactly [1/kappa, 1].
Eigen::VectorXd log_uniform_spectrum(Eigen::Index n, double kappa) {
  Eigen::VectorXd s(n);
  if (n == 1) {
    s(0) = 1.0;
    return s;
  }
  const double lo = -std::log(kappa);
  for (Eigen::Index i = 0; i < n; ++i)
    s(i) = std::exp(lo + (0.0 - lo) * static_cast<double>(i) /
                             static_cast<double>(n - 1));
  s(0) = 1.0 / kappa;
  s(n - 1) = 1.0;
  return s;
}

}  // namespace

LinearSystem make_hilbert(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("make_hilbert requires n >= 2");
  Eigen::MatrixXd a(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) a(i - 1, j - 1) = 1.0 / (i + j - 1);
  std::mt19937_64 rng(seed);
  return LinearSystem::from_solution(std::move(a), seeded_normal_vector(n, rng),
                                     Method::gauss_seidel);
}

LinearSystem make_parter(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("make_parter requires n >= 2");
  Eigen::MatrixXd a(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) a(i - 1, j - 1) = 1.0 / (i - j + 0.5);
  std::mt19937_64 rng(seed);
  return LinearSystem::from_solution(std::move(a), seeded_normal_vector(n, rng),
                                     Method::kaczmarz);
}

LinearSystem make_random(Eigen::Index m, Eigen::Index n, double kappa,
                         std::uint64_t seed) {
  if (m < n || n < 1) throw std::invalid_argument("make_random requires m >= n >= 1");
  if (kappa < 1.0) throw std::invalid_argument("make_random requires kappa >= 1");
  std::mt19937_64 rng(seed);
  Eigen::MatrixXd u = random_orthonormal(m, n, rng);
  Eigen::MatrixXd v = random_orthonormal(n, n, rng);
  const Eigen::VectorXd sv = log_uniform_spectrum(n, kappa);
  Eigen::MatrixXd a = u * sv.asDiagonal() * v.transpose();
  return LinearSystem::from_solution(std::move(a), seeded_normal_vector(n, rng),
                                     Method::kaczmarz);
}

LinearSystem make_random_spd(Eigen::Index n, double kappa, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("make_random_spd requires n >= 1");
  if (kappa < 1.0) throw std::invalid_argument("make_random_spd requires kappa >= 1");
  std::mt19937_64 rng(seed);
  Eigen::MatrixXd q = random_orthonormal(n, n, rng);
  const Eigen::VectorXd ev = log_uniform_spectrum(n, kappa);
  Eigen::MatrixXd a = q * ev.asDiagonal() * q.transpose();
  a = 0.5 * (a + a.transpose()).eval();
  return LinearSystem::from_solution(std::move(a), seeded_normal_vector(n, rng),
                                     Method::gauss_seidel);
}

}  // namespace randsor
