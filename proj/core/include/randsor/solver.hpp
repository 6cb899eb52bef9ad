#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "randsor/projections.hpp"

namespace randsor {

enum class IterationMode { randomized, cyclic_forward };

struct SolveConfig {
  double omega = 1.0;  // strictly inside (0, 2)
  int max_iters = 1000;
  std::uint64_t seed = 0;
  int record_every = 1;
  IterationMode mode = IterationMode::randomized;

  void validate() const;
};

/// Squared errors ||eps_k||^2 at recorded steps (entry j is iteration
/// j * record_every), in the method's norm: Euclidean for Kaczmarz, the
/// A-induced norm (x - x_star)^T A (x - x_star) for Gauss-Seidel.
struct TrialRecord {
  std::vector<double> sq_errors;
  std::uint64_t seed = 0;
  double omega = 1.0;
  int record_every = 1;
};

/// One relaxed update of the iterate against row/coordinate i of the
/// normalized system: x + omega (b_i - a_i^T x) a_i for Kaczmarz and
/// x + omega (b_i - a_i^T x)/a_ii e_i for Gauss-Seidel.
Eigen::VectorXd step(const NormalizedSystem& ns, const Eigen::VectorXd& x,
                     Eigen::Index i, double omega);

/// Block variant: the residual restricted to the rows' span, i.e. a relaxed
/// least-squares correction (Kaczmarz) or a relaxed exact sub-solve
/// (Gauss-Seidel).
Eigen::VectorXd block_step(const NormalizedSystem& ns, const Eigen::VectorXd& x,
                           const std::vector<Eigen::Index>& rows, double omega);

/// Runs one randomized trial from x_0 = 0, sampling items from the ensemble;
/// deterministic given cfg.seed.
TrialRecord run_randomized(const LinearSystem& sys, const ProjectorEnsemble& ens,
                           const SolveConfig& cfg);

/// Same contract with items visited 1..m in order, repeatedly.
TrialRecord run_cyclic(const LinearSystem& sys, const ProjectorEnsemble& ens,
                       const SolveConfig& cfg);

/// Dispatches on cfg.mode.
TrialRecord run_trial(const LinearSystem& sys, const ProjectorEnsemble& ens,
                      const SolveConfig& cfg);

/// Monte-Carlo harness: n_trials independent trials with per-trial seed
/// cfg.seed + trial index, fanned out over `threads` workers. Results are
/// ordered by trial index regardless of thread count.
std::vector<TrialRecord> run_trials(const LinearSystem& sys,
                                    const ProjectorEnsemble& ens,
                                    const SolveConfig& cfg, int n_trials,
                                    int threads = 1);

/// Deterministic-sweep iteration matrix G = (I - w P_m) ... (I - w P_1) and
/// its spectral radius. For Gauss-Seidel the classical similarity
/// I - w (D - w E)^{-1} A must have the same eigenvalue multiset;
/// gs_similarity_gap reports the worst matched-pair distance.
struct IterationMatrix {
  Eigen::MatrixXd g;
  double spectral_radius = 0.0;
  std::optional<double> gs_similarity_gap;
};

IterationMatrix iteration_matrix_g(const NormalizedSystem& ns,
                                   const ProjectorEnsemble& ens, double omega,
                                   Eigen::Index dim_cap = 64);

/// Least-squares slope of log(mean over trials of sq_errors) against the
/// iteration index, restricted to the window [first, last] (iteration
/// units). exp(log_rate) estimates the asymptotic convergence rate.
struct RateEstimate {
  double log_rate = 0.0;
  double r_squared = 0.0;
  std::pair<int, int> window{0, 0};
  bool truncated = false;  // window cut at the first zero mean
};

RateEstimate estimate_rate(const std::vector<TrialRecord>& records,
                           std::pair<int, int> window);

}  // namespace randsor
