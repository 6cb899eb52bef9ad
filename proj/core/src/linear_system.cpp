#include "randsor/linear_system.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace randsor {

namespace {
constexpr double kSymmetryTol = 1e-12;
constexpr double kConsistencyTol = 1e-10;
}  // namespace

std::string to_string(Method m) {
  return m == Method::gauss_seidel ? "gauss-seidel" : "kaczmarz";
}

Method method_from_string(const std::string& name) {
  if (name == "gauss-seidel" || name == "gauss_seidel") return Method::gauss_seidel;
  if (name == "kaczmarz") return Method::kaczmarz;
  throw std::invalid_argument("unknown method '" + name +
                              "' (expected gauss-seidel or kaczmarz)");
}

LinearSystem LinearSystem::from_solution(Eigen::MatrixXd a, Eigen::VectorXd x_star,
                                         Method method) {
  if (a.cols() != x_star.size())
    throw std::invalid_argument("x_star size does not match matrix columns");
  LinearSystem sys;
  sys.b = a * x_star;
  sys.a = std::move(a);
  sys.x_star = std::move(x_star);
  sys.method = method;
  sys.validate();
  return sys;
}

void LinearSystem::validate() const {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  if (m == 0 || n == 0) throw std::invalid_argument("empty matrix");
  if (b.size() != m) throw std::invalid_argument("b size does not match rows");
  if (x_star && x_star->size() != n)
    throw std::invalid_argument("x_star size does not match columns");

  if (method == Method::gauss_seidel) {
    if (m != n) throw std::invalid_argument("gauss-seidel system must be square");
    const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
    if (asym > kSymmetryTol)
      throw std::invalid_argument("gauss-seidel matrix not symmetric (max |A - A^T| = " +
                                  std::to_string(asym) + ")");
    for (Eigen::Index i = 0; i < n; ++i) {
      if (a(i, i) <= 0.0)
        throw std::invalid_argument("nonpositive diagonal entry at row " +
                                    std::to_string(i));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) <= 0.0)
      throw std::invalid_argument("gauss-seidel matrix not positive definite");
  } else {
    for (Eigen::Index i = 0; i < m; ++i) {
      if (a.row(i).norm() == 0.0)
        throw std::invalid_argument("zero row at index " + std::to_string(i));
    }
  }

  if (x_star) {
    const double resid = (a * (*x_star) - b).norm();
    if (resid > kConsistencyTol * b.norm())
      throw std::invalid_argument("inconsistent system: ||A x_star - b|| = " +
                                  std::to_string(resid));
  } else if (method == Method::kaczmarz) {
    // No stored solution: fall back to the least-squares residual.
    Eigen::VectorXd xhat = a.completeOrthogonalDecomposition().solve(b);
    const double resid = (a * xhat - b).norm();
    if (resid > kConsistencyTol * b.norm())
      throw std::invalid_argument("inconsistent kaczmarz system: least-squares residual " +
                                  std::to_string(resid));
  }
}

Eigen::VectorXd NormalizedSystem::to_original(const Eigen::VectorXd& y) const {
  if (method == Method::kaczmarz) return y;
  return y.array() / scaling.array().sqrt();
}

void NormalizedSystem::validate() const {
  const Eigen::Index m = a_norm.rows();
  if (b_norm.size() != m) throw std::invalid_argument("b_norm size mismatch");
  if (method == Method::kaczmarz) {
    for (Eigen::Index i = 0; i < m; ++i) {
      if (std::abs(a_norm.row(i).norm() - 1.0) > kSymmetryTol)
        throw std::invalid_argument("row " + std::to_string(i) + " not unit norm");
    }
  } else {
    const double asym = (a_norm - a_norm.transpose()).cwiseAbs().maxCoeff();
    if (asym > kSymmetryTol)
      throw std::invalid_argument("normalized gauss-seidel matrix not symmetric");
    for (Eigen::Index i = 0; i < m; ++i) {
      if (std::abs(a_norm(i, i) - 1.0) > kSymmetryTol)
        throw std::invalid_argument("diagonal entry " + std::to_string(i) + " not 1");
    }
  }
}

NormalizedSystem normalize(const LinearSystem& sys) {
  NormalizedSystem ns;
  ns.method = sys.method;
  const Eigen::Index m = sys.a.rows();

  if (sys.method == Method::kaczmarz) {
    ns.scaling.resize(m);
    ns.a_norm = sys.a;
    ns.b_norm = sys.b;
    for (Eigen::Index i = 0; i < m; ++i) {
      const double rn = sys.a.row(i).norm();
      if (rn == 0.0)
        throw std::invalid_argument("zero row at index " + std::to_string(i));
      ns.scaling(i) = rn;
      ns.a_norm.row(i) /= rn;
      ns.b_norm(i) /= rn;
    }
    ns.x_star_norm = sys.x_star;
  } else {
    ns.scaling = sys.a.diagonal();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (ns.scaling(i) <= 0.0)
        throw std::invalid_argument("nonpositive diagonal entry at row " +
                                    std::to_string(i));
    }
    const Eigen::VectorXd dinv = ns.scaling.array().rsqrt();
    Eigen::MatrixXd t = dinv.asDiagonal() * sys.a * dinv.asDiagonal();
    ns.a_norm = 0.5 * (t + t.transpose());
    ns.b_norm = dinv.asDiagonal() * sys.b;
    if (sys.x_star)
      ns.x_star_norm = (sys.x_star->array() * ns.scaling.array().sqrt()).matrix();
  }
  return ns;
}

}  // namespace randsor
