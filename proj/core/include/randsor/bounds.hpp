#pragma once

#include <utility>
#include <vector>

#include "randsor/projections.hpp"

namespace randsor {

/// Spectral ingredients of the expected projector: its two smallest
/// eigenvalues mu1 <= mu2, the bottom unit eigenvector u1, and the fourth
/// order moment xi = E[(u1^T P u1)^2]. They satisfy mu1^2 <= xi <= mu1.
struct Ingredients {
  double mu1 = 0.0;
  double mu2 = 0.0;
  Eigen::VectorXd u1;
  double xi = 0.0;
  /// Set when mu1 was repeated within 1e-10 and u1 was picked inside the
  /// eigenspace by the xi-maximizing scan. Treat downstream values with care.
  bool degenerate_mu1 = false;
};

/// Computes the ingredients from an ensemble. Throws when the expected
/// projector is rank deficient (mu1 <= 1e-12).
Ingredients ingredients(const ProjectorEnsemble& ens);

/// Method-specific closed form for xi on a normalized system:
/// n * mu1^2 * ||u1||_4^4 (gauss_seidel) or ||A u1||_4^4 / m (kaczmarz).
double xi_closed_form(const NormalizedSystem& ns, const Eigen::VectorXd& u1,
                      double mu1);

/// One-step expected-norm bound 1 - omega (2 - omega) mu1. omega in [0, 2].
double b_bound(const Ingredients& ing, double omega);

/// The 2x2 surrogate pair: b_star = diag(mu1+mu2, 2 mu1) and the rank-1
/// c_star = [[g, sqrt(g xi)], [sqrt(g xi), xi]] with
/// g = (mu1+mu2)/2 * (1 - xi/mu1), built so b_star/2 - c_star is singular PSD.
struct BoundPair {
  Eigen::Matrix2d b_star;
  Eigen::Matrix2d c_star;
};

BoundPair bound_pair(const Ingredients& ing);

/// lambda_1(b_star - omega c_star), evaluated with the explicit 2x2
/// eigenvalue formula. omega in [0, 2].
double surrogate_gap(const Ingredients& ing, double omega);

/// Covariance-analysis bound 1 - omega * surrogate_gap(ing, omega).
double c_bound(const Ingredients& ing, double omega);

struct OptimalOmega {
  double omega_star = 1.0;
  double c_at_star = 1.0;
};

/// Minimizes c_bound over [1, 2) by golden-section search (absolute
/// tolerance 1e-10; the bound is convex so the search is safe). Always
/// returns omega_star >= 1 with c_at_star <= c_bound(ing, 1).
OptimalOmega optimal_omega(const Ingredients& ing);

/// Sampled curves omega -> B(omega), C(omega); rho_vals is filled by
/// callers that also run the superoperator and stays empty otherwise.
struct BoundCurve {
  std::vector<double> omegas;
  std::vector<double> b_vals;
  std::vector<double> c_vals;
  std::vector<double> rho_vals;
};

BoundCurve bound_curve(const Ingredients& ing, const std::vector<double>& omegas);

/// Inclusive grid of `count` points from start to stop, validated to lie
/// inside [0, 2].
std::vector<double> omega_grid(double start, double stop, int count);

}  // namespace randsor
