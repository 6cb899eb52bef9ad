#pragma once

#include <vector>

#include "randsor/bounds.hpp"
#include "randsor/projections.hpp"

namespace randsor {

/// Hard cap on the ambient dimension for dense n^2 x n^2 assembly.
inline constexpr Eigen::Index kDefaultDimCap = 64;

enum class SuperOpLabel { a_of_omega, b, c, custom };

/// A symmetric linear map on n x n matrices, stored dense as n^2 x n^2
/// (column-major vec convention: kron(M, M') vec(X) = vec(M' X M^T)).
struct SuperOp {
  Eigen::MatrixXd mat;
  Eigen::Index n = 0;
  SuperOpLabel label = SuperOpLabel::custom;
};

/// B = I (x) E[P] + E[P] (x) I, i.e. B(X) = E[P] X + X E[P].
SuperOp build_b(const ProjectorEnsemble& ens, Eigen::Index dim_cap = kDefaultDimCap);

/// C = sum_i p_i P_i (x) P_i, i.e. C(X) = E[P X P].
SuperOp build_c(const ProjectorEnsemble& ens, Eigen::Index dim_cap = kDefaultDimCap);

/// A(omega) = I - omega B + omega^2 C = E[(I - omega P) (x) (I - omega P)],
/// the one-step map on the error covariance.
SuperOp build_a(const ProjectorEnsemble& ens, double omega,
                Eigen::Index dim_cap = kDefaultDimCap);
SuperOp build_a(const SuperOp& b_op, const SuperOp& c_op, double omega);

/// Spectral radius report for A(omega). The top eigenvector is reshaped to
/// n x n, symmetrized, sign-fixed (trace >= 0), and re-normalized; for an
/// irreducible ensemble it should be positive definite with a simple
/// eigenvalue, so psd_defect reports its most negative eigenvalue.
struct SpectralReport {
  double lam_max = 0.0;
  Eigen::MatrixXd top_eigvec_matrix;
  double psd_defect = 0.0;
  bool simple = false;
};

SpectralReport rho(const ProjectorEnsemble& ens, double omega,
                   Eigen::Index dim_cap = kDefaultDimCap);

/// lambda_max(A(omega)) only, via an eigenvalues-only solve.
double rho_value(const ProjectorEnsemble& ens, double omega,
                 Eigen::Index dim_cap = kDefaultDimCap);
double rho_value(const SuperOp& b_op, const SuperOp& c_op, double omega);

/// lambda_1(B - omega C). Satisfies
/// lambda_max(A(omega)) = 1 - omega * lambda1_gap(omega).
double lambda1_gap(const ProjectorEnsemble& ens, double omega,
                   Eigen::Index dim_cap = kDefaultDimCap);
double lambda1_gap(const SuperOp& b_op, const SuperOp& c_op, double omega);

/// Loewner order B >= 2C: lambda_min(B - 2C) should be >= -1e-10, and for
/// an irreducible ensemble the bottom eigenvector aligns with I/sqrt(n).
struct LoewnerReport {
  double lambda_min = 0.0;
  double identity_alignment = 0.0;
};

LoewnerReport check_loewner(const ProjectorEnsemble& ens,
                            Eigen::Index dim_cap = kDefaultDimCap);

/// One-sided finite differences of lambda1_gap at the interval endpoints
/// (step 1e-6) against the closed forms -xi at 0 and -tr(E[P])/n at 2.
struct DerivativeReport {
  double slope0 = 0.0, expected0 = 0.0, dev0 = 0.0;
  double slope2 = 0.0, expected2 = 0.0, dev2 = 0.0;
};

DerivativeReport derivative_checks(const ProjectorEnsemble& ens,
                                   Eigen::Index dim_cap = kDefaultDimCap);

/// Eclipse order of the 2x2 surrogate: lambda_1(b* - omega c*) <=
/// lambda_1(B - omega C) at every grid point, equivalently C(omega) >=
/// rho(omega). max_violation is the worst (surrogate - full) gap;
/// max_slack the largest strict margin.
struct EclipseReport {
  double max_violation = 0.0;
  double max_slack = 0.0;
  std::size_t points = 0;
  bool pass = false;
};

EclipseReport check_eclipse(const Ingredients& ing, const ProjectorEnsemble& ens,
                            const std::vector<double>& omegas,
                            Eigen::Index dim_cap = kDefaultDimCap);

/// lambda_max(A(1-t)) >= lambda_max(A(1+t)) for t in [0, 1]: over-relaxation
/// never loses to the matching under-relaxation.
struct DominanceReport {
  double max_violation = 0.0;
  bool pass = false;
};

DominanceReport check_overrelax_dominance(const ProjectorEnsemble& ens,
                                          const std::vector<double>& t_grid,
                                          Eigen::Index dim_cap = kDefaultDimCap);

}  // namespace randsor
