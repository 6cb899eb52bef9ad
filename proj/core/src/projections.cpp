#include "randsor/projections.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>
#include <stdexcept>

#include "randsor/rng.hpp"

namespace randsor {

namespace {

constexpr double kProbTol = 1e-12;
constexpr double kOrthoTol = 1e-12;

// Symmetric positive square root via eigendecomposition. Any square root
// spans the same row spaces; the symmetric one is deterministic.
Eigen::MatrixXd symmetric_sqrt(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed in matrix square root");
  if (es.eigenvalues()(0) <= 0.0)
    throw std::invalid_argument("matrix square root requires a positive definite input");
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
         es.eigenvectors().transpose();
}

// Rows that feed the projectors: a_norm itself for Kaczmarz, the symmetric
// square root of a_norm for Gauss-Seidel.
Eigen::MatrixXd projector_rows(const NormalizedSystem& ns) {
  if (ns.method == Method::kaczmarz) return ns.a_norm;
  return symmetric_sqrt(ns.a_norm);
}

}  // namespace

void ProjectorEnsemble::validate() const {
  if (items.empty()) throw std::invalid_argument("empty projector ensemble");
  double psum = 0.0;
  for (std::size_t k = 0; k < items.size(); ++k) {
    const Projector& p = items[k];
    if (p.probability < 0.0)
      throw std::invalid_argument("negative probability at item " + std::to_string(k));
    psum += p.probability;
    if (p.basis.rows() != n || p.basis.cols() < 1)
      throw std::invalid_argument("bad basis shape at item " + std::to_string(k));
    const Eigen::MatrixXd gram = p.basis.transpose() * p.basis;
    const double defect =
        (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    if (defect > kOrthoTol)
      throw std::invalid_argument("basis not orthonormal at item " + std::to_string(k) +
                                  " (defect " + std::to_string(defect) + ")");
  }
  if (std::abs(psum - 1.0) > kProbTol)
    throw std::invalid_argument("probabilities sum to " + std::to_string(psum));
}

ProjectorEnsemble ensemble_from_system(const NormalizedSystem& ns) {
  const Eigen::MatrixXd rows = projector_rows(ns);
  const Eigen::Index m = rows.rows();
  ProjectorEnsemble ens;
  ens.n = ns.cols();
  ens.items.reserve(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    Projector p;
    p.basis = rows.row(i).transpose() / rows.row(i).norm();
    p.probability = 1.0 / static_cast<double>(m);
    p.rows = {i};
    ens.items.push_back(std::move(p));
  }
  return ens;
}

ProjectorEnsemble ensemble_blocks(const NormalizedSystem& ns,
                                  const std::vector<std::vector<Eigen::Index>>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("empty block list");
  const Eigen::MatrixXd rows = projector_rows(ns);
  const Eigen::Index m = rows.rows();
  ProjectorEnsemble ens;
  ens.n = ns.cols();
  ens.items.reserve(blocks.size());
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const auto& block = blocks[k];
    if (block.empty())
      throw std::invalid_argument("empty block at index " + std::to_string(k));
    Eigen::MatrixXd cols(ens.n, static_cast<Eigen::Index>(block.size()));
    for (std::size_t j = 0; j < block.size(); ++j) {
      if (block[j] < 0 || block[j] >= m)
        throw std::invalid_argument("row index out of range in block " + std::to_string(k));
      cols.col(static_cast<Eigen::Index>(j)) = rows.row(block[j]).transpose();
    }
    // Rank-revealing QR; dependent rows are dropped at 1e-10 * ||block||.
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(cols);
    const double thresh = 1e-10 * cols.norm();
    Eigen::Index rank = 0;
    const auto& rdiag = qr.matrixQR().diagonal();
    for (Eigen::Index j = 0; j < rdiag.size(); ++j)
      if (std::abs(rdiag(j)) > thresh) ++rank;
    if (rank == 0)
      throw std::invalid_argument("block " + std::to_string(k) + " spans nothing");
    Projector p;
    p.basis = qr.householderQ() * Eigen::MatrixXd::Identity(ens.n, rank);
    p.probability = 1.0 / static_cast<double>(blocks.size());
    p.rows = block;
    ens.items.push_back(std::move(p));
  }
  return ens;
}

Eigen::MatrixXd expected_projector(const ProjectorEnsemble& ens) {
  Eigen::MatrixXd ep = Eigen::MatrixXd::Zero(ens.n, ens.n);
  for (const Projector& p : ens.items)
    ep.noalias() += p.probability * (p.basis * p.basis.transpose());
  return 0.5 * (ep + ep.transpose()).eval();
}

std::size_t sample(const ProjectorEnsemble& ens, std::mt19937_64& rng) {
  const double u = uniform01(rng);
  double cumulative = 0.0;
  for (std::size_t k = 0; k + 1 < ens.items.size(); ++k) {
    cumulative += ens.items[k].probability;
    if (u < cumulative) return k;
  }
  return ens.items.size() - 1;
}

bool irreducible(const ProjectorEnsemble& ens, double tol) {
  const std::size_t m = ens.items.size();
  if (m <= 1) return true;
  std::vector<char> seen(m, 0);
  std::vector<std::size_t> stack = {0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < m; ++j) {
      if (seen[j]) continue;
      // <P_i, P_j> = ||Q_i^T Q_j||_F^2
      const double overlap =
          (ens.items[i].basis.transpose() * ens.items[j].basis).squaredNorm();
      if (overlap > tol) {
        seen[j] = 1;
        ++reached;
        stack.push_back(j);
      }
    }
  }
  return reached == m;
}

bool irreducible(const ProjectorEnsemble& ens) {
  return irreducible(ens, 1e-12 * static_cast<double>(ens.n));
}

}  // namespace randsor
