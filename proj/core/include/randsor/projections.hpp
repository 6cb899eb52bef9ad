#pragma once

#include <random>
#include <vector>

#include "randsor/linear_system.hpp"

namespace randsor {

/// One orthogonal projector, stored by an orthonormal basis of its range
/// (n x r), so a rank-r block costs n*r rather than n*n. `rows` records the
/// originating row/coordinate indices when the projector came from a system,
/// which is what the solver needs to apply the matching update.
struct Projector {
  Eigen::MatrixXd basis;
  double probability = 0.0;
  std::vector<Eigen::Index> rows;

  Eigen::Index rank() const { return basis.cols(); }
  Eigen::MatrixXd dense() const { return basis * basis.transpose(); }
};

/// A finite family of orthogonal projectors with sampling probabilities.
struct ProjectorEnsemble {
  std::vector<Projector> items;
  Eigen::Index n = 0;

  std::size_t size() const { return items.size(); }

  /// Probabilities nonnegative summing to 1, bases orthonormal.
  void validate() const;
};

/// Rank-1 row ensemble of a normalized system: unit rows of a_norm for
/// Kaczmarz, unit rows of the symmetric square root of a_norm for
/// Gauss-Seidel, uniform probabilities.
ProjectorEnsemble ensemble_from_system(const NormalizedSystem& ns);

/// Block ensemble: each projector spans the given subset of (normalized)
/// rows, orthonormalized with dependent rows dropped. Uniform probabilities.
ProjectorEnsemble ensemble_blocks(const NormalizedSystem& ns,
                                  const std::vector<std::vector<Eigen::Index>>& blocks);

/// E[P] = sum_i p_i P_i.
Eigen::MatrixXd expected_projector(const ProjectorEnsemble& ens);

/// Draws an item index with the stored probabilities; deterministic given
/// the rng state (inverse-CDF over the cumulative probabilities).
std::size_t sample(const ProjectorEnsemble& ens, std::mt19937_64& rng);

/// Geometric irreducibility: builds a graph with one vertex per projector
/// and an edge when <P_i, P_j> = tr(P_i P_j) > tol, and reports whether it
/// is connected. A disconnected graph means the system splits into
/// mutually orthogonal sub-systems.
bool irreducible(const ProjectorEnsemble& ens, double tol);

/// Same with the scale-aware default tolerance 1e-12 * n.
bool irreducible(const ProjectorEnsemble& ens);

}  // namespace randsor
