#include "randsor/bounds.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace randsor {

namespace {

constexpr double kRankTol = 1e-12;
constexpr double kDegenerateTol = 1e-10;

void check_omega(double omega) {
  if (!(omega >= 0.0 && omega <= 2.0))
    throw std::invalid_argument("omega must lie in [0, 2], got " + std::to_string(omega));
}

double generic_xi(const ProjectorEnsemble& ens, const Eigen::VectorXd& u) {
  double xi = 0.0;
  for (const Projector& p : ens.items) {
    const double q = (p.basis.transpose() * u).squaredNorm();  // u^T P u
    xi += p.probability * q * q;
  }
  return xi;
}

// Deterministic sign: largest-magnitude coefficient positive.
void fix_sign(Eigen::VectorXd& v) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v(imax) < 0.0) v = -v;
}

// Smaller eigenvalue of a symmetric 2x2, X - sqrt(X^2 - Y) with X the half
// trace and Y the determinant; X^2 - Y is expanded to ((a-d)/2)^2 + b^2 so
// the discriminant never cancels. A zero off-diagonal short-circuits to the
// smaller diagonal entry, keeping the decoupled case exact.
double lambda1_2x2(const Eigen::Matrix2d& m) {
  if (m(0, 1) == 0.0) return std::min(m(0, 0), m(1, 1));
  const double x = 0.5 * (m(0, 0) + m(1, 1));
  const double half_gap = 0.5 * (m(0, 0) - m(1, 1));
  return x - std::sqrt(half_gap * half_gap + m(0, 1) * m(1, 0));
}

}  // namespace

Ingredients ingredients(const ProjectorEnsemble& ens) {
  const Eigen::MatrixXd ep = expected_projector(ens);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ep);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition of the expected projector failed");
  const Eigen::VectorXd& ev = es.eigenvalues();

  Ingredients ing;
  ing.mu1 = ev(0);
  ing.mu2 = ev.size() > 1 ? ev(1) : ev(0);
  if (ing.mu1 <= kRankTol)
    throw std::invalid_argument("rank-deficient expected projector (mu1 = " +
                                std::to_string(ing.mu1) + ")");

  // Collect the near-degenerate bottom eigenspace.
  Eigen::Index dim = 1;
  while (dim < ev.size() && ev(dim) - ev(0) <= kDegenerateTol) ++dim;

  if (dim == 1) {
    ing.u1 = es.eigenvectors().col(0);
  } else {
    // Repeated mu1: pick the direction in the eigenspace with the largest
    // generic xi, scanning the eigenbasis vectors and their pairwise pi/4
    // rotations. Heuristic stand-in for the maximizing u1.
    ing.degenerate_mu1 = true;
    double best = -1.0;
    Eigen::VectorXd best_u;
    const auto consider = [&](const Eigen::VectorXd& cand) {
      const double xi = generic_xi(ens, cand);
      if (xi > best) {
        best = xi;
        best_u = cand;
      }
    };
    for (Eigen::Index i = 0; i < dim; ++i) consider(es.eigenvectors().col(i));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = i + 1; j < dim; ++j) {
        consider(inv_sqrt2 * (es.eigenvectors().col(i) + es.eigenvectors().col(j)));
        consider(inv_sqrt2 * (es.eigenvectors().col(i) - es.eigenvectors().col(j)));
      }
    }
    ing.u1 = best_u;
  }
  fix_sign(ing.u1);
  ing.xi = generic_xi(ens, ing.u1);
  return ing;
}

double xi_closed_form(const NormalizedSystem& ns, const Eigen::VectorXd& u1,
                      double mu1) {
  if (ns.method == Method::gauss_seidel) {
    const double n = static_cast<double>(ns.cols());
    return n * mu1 * mu1 * u1.array().pow(4).sum();
  }
  const Eigen::VectorXd au = ns.a_norm * u1;
  return au.array().pow(4).sum() / static_cast<double>(ns.rows());
}

double b_bound(const Ingredients& ing, double omega) {
  check_omega(omega);
  return 1.0 - omega * (2.0 - omega) * ing.mu1;
}

BoundPair bound_pair(const Ingredients& ing) {
  BoundPair bp;
  bp.b_star << ing.mu1 + ing.mu2, 0.0, 0.0, 2.0 * ing.mu1;
  // gamma >= 0 by mu1^2 <= xi <= mu1; clamp against roundoff so the sqrt
  // stays real in the orthogonal (xi = mu1) case.
  const double gamma =
      std::max(0.0, 0.5 * (ing.mu1 + ing.mu2) * (1.0 - ing.xi / ing.mu1));
  const double off = std::sqrt(gamma * ing.xi);
  bp.c_star << gamma, off, off, ing.xi;
  return bp;
}

double surrogate_gap(const Ingredients& ing, double omega) {
  check_omega(omega);
  const BoundPair bp = bound_pair(ing);
  const Eigen::Matrix2d m = bp.b_star - omega * bp.c_star;
  return lambda1_2x2(m);
}

double c_bound(const Ingredients& ing, double omega) {
  // Degenerate ingredients collapse the surrogate: C(omega) = B(omega)
  // when xi = mu1 (orthogonal rows) or mu2 = mu1.
  if (ing.xi >= ing.mu1 || ing.mu2 <= ing.mu1) return b_bound(ing, omega);
  return 1.0 - omega * surrogate_gap(ing, omega);
}

OptimalOmega optimal_omega(const Ingredients& ing) {
  // c_bound is convex on [0, 2] and its minimum lies in [1, 2): golden
  // section over [1, 2] to 1e-10.
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = 1.0, b = 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = c_bound(ing, c);
  double fd = c_bound(ing, d);
  while (b - a > 1e-10) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = c_bound(ing, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = c_bound(ing, d);
    }
  }
  OptimalOmega result;
  result.omega_star = 0.5 * (a + b);
  result.c_at_star = c_bound(ing, result.omega_star);
  const double c1 = c_bound(ing, 1.0);
  if (c1 <= result.c_at_star) {
    result.omega_star = 1.0;
    result.c_at_star = c1;
  }
  return result;
}

BoundCurve bound_curve(const Ingredients& ing, const std::vector<double>& omegas) {
  BoundCurve curve;
  curve.omegas = omegas;
  curve.b_vals.reserve(omegas.size());
  curve.c_vals.reserve(omegas.size());
  for (double w : omegas) {
    curve.b_vals.push_back(b_bound(ing, w));
    curve.c_vals.push_back(c_bound(ing, w));
  }
  return curve;
}

std::vector<double> omega_grid(double start, double stop, int count) {
  if (count < 1) throw std::invalid_argument("grid count must be >= 1");
  if (!(start >= 0.0 && stop <= 2.0 && start <= stop))
    throw std::invalid_argument("grid must satisfy 0 <= start <= stop <= 2");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    grid.push_back(start);
    return grid;
  }
  for (int i = 0; i < count; ++i)
    grid.push_back(start + (stop - start) * static_cast<double>(i) /
                               static_cast<double>(count - 1));
  return grid;
}

}  // namespace randsor
