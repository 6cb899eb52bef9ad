#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

namespace randsor {

enum class Method { gauss_seidel, kaczmarz };

std::string to_string(Method m);
Method method_from_string(const std::string& name);

/// A linear problem A x = b together with the iteration family it is
/// meant for. Gauss-Seidel systems are square symmetric positive definite;
/// Kaczmarz systems are consistent (b is manufactured from a known x_star).
struct LinearSystem {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Method method = Method::kaczmarz;
  std::optional<Eigen::VectorXd> x_star;

  Eigen::Index rows() const { return a.rows(); }
  Eigen::Index cols() const { return a.cols(); }

  /// Builds a consistent system with b = a * x_star and validates it.
  static LinearSystem from_solution(Eigen::MatrixXd a, Eigen::VectorXd x_star,
                                    Method method);

  /// Throws std::invalid_argument when an invariant is violated:
  /// gauss_seidel needs a square symmetric positive definite matrix with a
  /// positive diagonal; kaczmarz needs nonzero rows and a consistent b.
  void validate() const;
};

/// A system rescaled so the iteration's per-step denominators are 1:
/// unit Euclidean rows for Kaczmarz, unit diagonal (D^{-1/2} A D^{-1/2})
/// for Gauss-Seidel. `scaling` keeps the row norms (kaczmarz) or the
/// original diagonal (gauss_seidel) so iterates can be mapped back.
struct NormalizedSystem {
  Eigen::MatrixXd a_norm;
  Eigen::VectorXd b_norm;
  Eigen::VectorXd scaling;
  Method method = Method::kaczmarz;
  std::optional<Eigen::VectorXd> x_star_norm;

  Eigen::Index rows() const { return a_norm.rows(); }
  Eigen::Index cols() const { return a_norm.cols(); }

  /// Maps an iterate from normalized coordinates back to the original ones.
  /// Kaczmarz row scaling leaves the solution space untouched; Gauss-Seidel
  /// undoes the diagonal scaling (x = D^{-1/2} y).
  Eigen::VectorXd to_original(const Eigen::VectorXd& y) const;

  void validate() const;
};

NormalizedSystem normalize(const LinearSystem& sys);

}  // namespace randsor
