#include "randsor/superop.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace randsor {

namespace {

void check_cap(Eigen::Index n, Eigen::Index dim_cap) {
  if (n > dim_cap)
    throw std::invalid_argument(
        "superoperator dimension n = " + std::to_string(n) + " exceeds the cap " +
        std::to_string(dim_cap) + " (n^2 x n^2 dense assembly); reduce n");
}

// out += w * kron(x, y): block (i, j) of size n x n is w * x(i, j) * y.
void add_kron(Eigen::MatrixXd& out, double w, const Eigen::MatrixXd& x,
              const Eigen::MatrixXd& y) {
  const Eigen::Index n = x.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double s = w * x(i, j);
      if (s != 0.0) out.block(i * n, j * n, n, n) += s * y;
    }
  }
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("superoperator eigensolve failed");
  return es.eigenvalues();
}

}  // namespace

SuperOp build_b(const ProjectorEnsemble& ens, Eigen::Index dim_cap) {
  check_cap(ens.n, dim_cap);
  const Eigen::Index n = ens.n;
  const Eigen::MatrixXd ep = expected_projector(ens);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  SuperOp op;
  op.n = n;
  op.label = SuperOpLabel::b;
  op.mat = Eigen::MatrixXd::Zero(n * n, n * n);
  add_kron(op.mat, 1.0, id, ep);
  add_kron(op.mat, 1.0, ep, id);
  return op;
}

SuperOp build_c(const ProjectorEnsemble& ens, Eigen::Index dim_cap) {
  check_cap(ens.n, dim_cap);
  const Eigen::Index n = ens.n;
  SuperOp op;
  op.n = n;
  op.label = SuperOpLabel::c;
  op.mat = Eigen::MatrixXd::Zero(n * n, n * n);
  for (const Projector& p : ens.items) {
    const Eigen::MatrixXd pd = p.dense();
    add_kron(op.mat, p.probability, pd, pd);
  }
  return op;
}

SuperOp build_a(const SuperOp& b_op, const SuperOp& c_op, double omega) {
  SuperOp op;
  op.n = b_op.n;
  op.label = SuperOpLabel::a_of_omega;
  op.mat = omega * omega * c_op.mat - omega * b_op.mat;
  op.mat.diagonal().array() += 1.0;
  return op;
}

SuperOp build_a(const ProjectorEnsemble& ens, double omega, Eigen::Index dim_cap) {
  return build_a(build_b(ens, dim_cap), build_c(ens, dim_cap), omega);
}

SpectralReport rho(const ProjectorEnsemble& ens, double omega, Eigen::Index dim_cap) {
  const SuperOp a_op = build_a(ens, omega, dim_cap);
  const Eigen::Index n = a_op.n;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a_op.mat);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("superoperator eigensolve failed");
  const Eigen::Index last = es.eigenvalues().size() - 1;

  SpectralReport report;
  report.lam_max = es.eigenvalues()(last);
  const double gap =
      last > 0 ? report.lam_max - es.eigenvalues()(last - 1) : report.lam_max;
  report.simple = gap > 1e-10 * std::max(std::abs(report.lam_max), 1e-12);

  Eigen::MatrixXd v =
      Eigen::Map<const Eigen::MatrixXd>(es.eigenvectors().col(last).data(), n, n);
  v = 0.5 * (v + v.transpose()).eval();
  const double fn = v.norm();
  if (fn > 0.0) v /= fn;
  if (v.trace() < 0.0) {
    v = -v;
  } else if (v.trace() == 0.0) {
    Eigen::Index r = 0, c = 0;
    v.cwiseAbs().maxCoeff(&r, &c);
    if (v(r, c) < 0.0) v = -v;
  }
  report.top_eigvec_matrix = v;
  report.psd_defect = symmetric_eigenvalues(v)(0);
  return report;
}

double rho_value(const SuperOp& b_op, const SuperOp& c_op, double omega) {
  const SuperOp a_op = build_a(b_op, c_op, omega);
  const Eigen::VectorXd ev = symmetric_eigenvalues(a_op.mat);
  return ev(ev.size() - 1);
}

double rho_value(const ProjectorEnsemble& ens, double omega, Eigen::Index dim_cap) {
  return rho_value(build_b(ens, dim_cap), build_c(ens, dim_cap), omega);
}

double lambda1_gap(const SuperOp& b_op, const SuperOp& c_op, double omega) {
  return symmetric_eigenvalues(b_op.mat - omega * c_op.mat)(0);
}

double lambda1_gap(const ProjectorEnsemble& ens, double omega, Eigen::Index dim_cap) {
  return lambda1_gap(build_b(ens, dim_cap), build_c(ens, dim_cap), omega);
}

LoewnerReport check_loewner(const ProjectorEnsemble& ens, Eigen::Index dim_cap) {
  const SuperOp b_op = build_b(ens, dim_cap);
  const SuperOp c_op = build_c(ens, dim_cap);
  const Eigen::Index n = ens.n;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b_op.mat - 2.0 * c_op.mat);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("superoperator eigensolve failed");
  LoewnerReport report;
  report.lambda_min = es.eigenvalues()(0);
  // <v_1, vec(I)/sqrt(n)> picks out the trace of the reshaped eigenvector.
  double tr = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) tr += es.eigenvectors()(i * n + i, 0);
  report.identity_alignment = std::abs(tr) / std::sqrt(static_cast<double>(n));
  return report;
}

DerivativeReport derivative_checks(const ProjectorEnsemble& ens, Eigen::Index dim_cap) {
  const SuperOp b_op = build_b(ens, dim_cap);
  const SuperOp c_op = build_c(ens, dim_cap);
  const Ingredients ing = ingredients(ens);
  const double h = 1e-6;

  DerivativeReport report;
  report.slope0 = (lambda1_gap(b_op, c_op, h) - lambda1_gap(b_op, c_op, 0.0)) / h;
  report.expected0 = -ing.xi;
  report.dev0 = std::abs(report.slope0 - report.expected0);

  report.slope2 = (lambda1_gap(b_op, c_op, 2.0) - lambda1_gap(b_op, c_op, 2.0 - h)) / h;
  report.expected2 =
      -expected_projector(ens).trace() / static_cast<double>(ens.n);
  report.dev2 = std::abs(report.slope2 - report.expected2);
  return report;
}

EclipseReport check_eclipse(const Ingredients& ing, const ProjectorEnsemble& ens,
                            const std::vector<double>& omegas, Eigen::Index dim_cap) {
  const SuperOp b_op = build_b(ens, dim_cap);
  const SuperOp c_op = build_c(ens, dim_cap);
  EclipseReport report;
  report.points = omegas.size();
  double worst = -std::numeric_limits<double>::infinity();
  double slack = 0.0;
  for (double w : omegas) {
    const double full = lambda1_gap(b_op, c_op, w);
    const double sur = surrogate_gap(ing, w);
    worst = std::max(worst, sur - full);
    slack = std::max(slack, full - sur);
  }
  report.max_violation = omegas.empty() ? 0.0 : worst;
  report.max_slack = slack;
  report.pass = report.max_violation <= 1e-10;
  return report;
}

DominanceReport check_overrelax_dominance(const ProjectorEnsemble& ens,
                                          const std::vector<double>& t_grid,
                                          Eigen::Index dim_cap) {
  const SuperOp b_op = build_b(ens, dim_cap);
  const SuperOp c_op = build_c(ens, dim_cap);
  DominanceReport report;
  double worst = 0.0;
  for (double t : t_grid) {
    if (!(t >= 0.0 && t <= 1.0))
      throw std::invalid_argument("dominance t must lie in [0, 1]");
    const double under = rho_value(b_op, c_op, 1.0 - t);
    const double over = rho_value(b_op, c_op, 1.0 + t);
    worst = std::max(worst, over - under);
  }
  report.max_violation = worst;
  report.pass = worst <= 1e-10;
  return report;
}

}  // namespace randsor
