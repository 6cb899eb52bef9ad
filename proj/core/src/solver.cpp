#include "randsor/solver.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <thread>

#include "randsor/rng.hpp"

namespace randsor {

namespace {

double squared_error(const LinearSystem& sys, const NormalizedSystem& ns,
                     const Eigen::VectorXd& y) {
  const Eigen::VectorXd x = ns.to_original(y);
  const Eigen::VectorXd e = x - *sys.x_star;
  if (sys.method == Method::kaczmarz) return e.squaredNorm();
  return e.dot(sys.a * e);  // A-induced norm on the original system
}

Eigen::VectorXd apply_item(const NormalizedSystem& ns, const Projector& item,
                           const Eigen::VectorXd& y, double omega) {
  if (item.rows.empty())
    throw std::invalid_argument("ensemble item carries no source rows; "
                                "run the solver with a system-derived ensemble");
  if (item.rows.size() == 1) return step(ns, y, item.rows.front(), omega);
  return block_step(ns, y, item.rows, omega);
}

template <typename NextIndex>
TrialRecord run_impl(const LinearSystem& sys, const ProjectorEnsemble& ens,
                     const SolveConfig& cfg, NextIndex next_index) {
  cfg.validate();
  if (!sys.x_star)
    throw std::invalid_argument("running trials requires a known x_star");
  const NormalizedSystem ns = normalize(sys);

  TrialRecord record;
  record.seed = cfg.seed;
  record.omega = cfg.omega;
  record.record_every = cfg.record_every;

  Eigen::VectorXd y = Eigen::VectorXd::Zero(ns.cols());
  record.sq_errors.push_back(squared_error(sys, ns, y));
  for (int k = 1; k <= cfg.max_iters; ++k) {
    const std::size_t idx = next_index(k);
    y = apply_item(ns, ens.items[idx], y, cfg.omega);
    if (k % cfg.record_every == 0)
      record.sq_errors.push_back(squared_error(sys, ns, y));
  }
  return record;
}

// Greedy closest-pair matching between two eigenvalue multisets; returns the
// largest matched distance. Sizes here are small (n <= 64).
double multiset_distance(std::vector<std::complex<double>> a,
                         std::vector<std::complex<double>> b) {
  double worst = 0.0;
  while (!a.empty()) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        const double d = std::abs(a[i] - b[j]);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    worst = std::max(worst, best);
    a.erase(a.begin() + static_cast<std::ptrdiff_t>(bi));
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  return worst;
}

}  // namespace

void SolveConfig::validate() const {
  if (!(omega > 0.0 && omega < 2.0))
    throw std::invalid_argument("omega must lie strictly inside (0, 2)");
  if (max_iters < 0) throw std::invalid_argument("max_iters must be >= 0");
  if (record_every < 1) throw std::invalid_argument("record_every must be >= 1");
}

Eigen::VectorXd step(const NormalizedSystem& ns, const Eigen::VectorXd& x,
                     Eigen::Index i, double omega) {
  Eigen::VectorXd out = x;
  const double r = ns.b_norm(i) - ns.a_norm.row(i).dot(x);
  if (ns.method == Method::kaczmarz) {
    out += omega * r * ns.a_norm.row(i).transpose();  // unit rows: denominator 1
  } else {
    out(i) += omega * r / ns.a_norm(i, i);
  }
  return out;
}

Eigen::VectorXd block_step(const NormalizedSystem& ns, const Eigen::VectorXd& x,
                           const std::vector<Eigen::Index>& rows, double omega) {
  if (rows.empty()) throw std::invalid_argument("empty block");
  const Eigen::Index k = static_cast<Eigen::Index>(rows.size());
  Eigen::VectorXd out = x;
  if (ns.method == Method::kaczmarz) {
    Eigen::MatrixXd a_block(k, ns.cols());
    Eigen::VectorXd r(k);
    for (Eigen::Index j = 0; j < k; ++j) {
      a_block.row(j) = ns.a_norm.row(rows[static_cast<std::size_t>(j)]);
      r(j) = ns.b_norm(rows[static_cast<std::size_t>(j)]) - a_block.row(j).dot(x);
    }
    // Min-norm least-squares correction = projection onto the rows' span.
    out += omega * a_block.completeOrthogonalDecomposition().solve(r);
  } else {
    Eigen::MatrixXd a_sub(k, k);
    Eigen::VectorXd r(k);
    for (Eigen::Index j = 0; j < k; ++j) {
      const Eigen::Index row = rows[static_cast<std::size_t>(j)];
      r(j) = ns.b_norm(row) - ns.a_norm.row(row).dot(x);
      for (Eigen::Index l = 0; l < k; ++l)
        a_sub(j, l) = ns.a_norm(row, rows[static_cast<std::size_t>(l)]);
    }
    const Eigen::VectorXd delta = a_sub.llt().solve(r);
    for (Eigen::Index j = 0; j < k; ++j)
      out(rows[static_cast<std::size_t>(j)]) += omega * delta(j);
  }
  return out;
}

TrialRecord run_randomized(const LinearSystem& sys, const ProjectorEnsemble& ens,
                           const SolveConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  return run_impl(sys, ens, cfg, [&](int) { return sample(ens, rng); });
}

TrialRecord run_cyclic(const LinearSystem& sys, const ProjectorEnsemble& ens,
                       const SolveConfig& cfg) {
  const std::size_t m = ens.items.size();
  return run_impl(sys, ens, cfg,
                  [&](int k) { return static_cast<std::size_t>(k - 1) % m; });
}

TrialRecord run_trial(const LinearSystem& sys, const ProjectorEnsemble& ens,
                      const SolveConfig& cfg) {
  return cfg.mode == IterationMode::cyclic_forward ? run_cyclic(sys, ens, cfg)
                                                   : run_randomized(sys, ens, cfg);
}

std::vector<TrialRecord> run_trials(const LinearSystem& sys,
                                    const ProjectorEnsemble& ens,
                                    const SolveConfig& cfg, int n_trials,
                                    int threads) {
  if (n_trials < 1) throw std::invalid_argument("n_trials must be >= 1");
  std::vector<TrialRecord> records(static_cast<std::size_t>(n_trials));
  const auto worker = [&](int begin, int stride) {
    for (int t = begin; t < n_trials; t += stride) {
      SolveConfig trial_cfg = cfg;
      trial_cfg.seed = cfg.seed + static_cast<std::uint64_t>(t);
      records[static_cast<std::size_t>(t)] = run_trial(sys, ens, trial_cfg);
    }
  };
  if (threads <= 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w, threads);
    for (auto& th : pool) th.join();
  }
  return records;
}

IterationMatrix iteration_matrix_g(const NormalizedSystem& ns,
                                   const ProjectorEnsemble& ens, double omega,
                                   Eigen::Index dim_cap) {
  const Eigen::Index n = ens.n;
  if (n > dim_cap)
    throw std::invalid_argument("iteration matrix dimension exceeds cap; reduce n");

  IterationMatrix result;
  result.g = Eigen::MatrixXd::Identity(n, n);
  for (const Projector& p : ens.items) {
    // One sweep applies item 1 first, so it sits rightmost in the product.
    result.g = (result.g - omega * (p.basis * (p.basis.transpose() * result.g))).eval();
  }

  Eigen::EigenSolver<Eigen::MatrixXd> es(result.g, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("iteration matrix eigensolve failed");
  result.spectral_radius = es.eigenvalues().cwiseAbs().maxCoeff();

  if (ns.method == Method::gauss_seidel) {
    // D - w E with D = diag(a_norm) and E the strictly lower part of -a_norm.
    Eigen::MatrixXd dwe = ns.a_norm.triangularView<Eigen::StrictlyLower>();
    dwe *= omega;
    dwe.diagonal() = ns.a_norm.diagonal();
    const Eigen::MatrixXd sor =
        Eigen::MatrixXd::Identity(n, n) -
        omega * dwe.triangularView<Eigen::Lower>().solve(ns.a_norm);
    Eigen::EigenSolver<Eigen::MatrixXd> es2(sor, /*computeEigenvectors=*/false);
    if (es2.info() != Eigen::Success)
      throw std::runtime_error("SOR matrix eigensolve failed");
    std::vector<std::complex<double>> eg(es.eigenvalues().data(),
                                         es.eigenvalues().data() + n);
    std::vector<std::complex<double>> es_sor(es2.eigenvalues().data(),
                                             es2.eigenvalues().data() + n);
    result.gs_similarity_gap = multiset_distance(std::move(eg), std::move(es_sor));
  }
  return result;
}

RateEstimate estimate_rate(const std::vector<TrialRecord>& records,
                           std::pair<int, int> window) {
  if (records.empty()) throw std::invalid_argument("no trial records");
  const int record_every = records.front().record_every;
  std::size_t len = records.front().sq_errors.size();
  for (const TrialRecord& r : records) {
    if (r.record_every != record_every)
      throw std::invalid_argument("records disagree on record_every");
    len = std::min(len, r.sq_errors.size());
  }

  std::vector<double> ks, logs;
  RateEstimate est;
  est.truncated = false;
  for (std::size_t j = 0; j < len; ++j) {
    const int k = static_cast<int>(j) * record_every;
    if (k < window.first || k > window.second) continue;
    double mean = 0.0;
    for (const TrialRecord& r : records) mean += r.sq_errors[j];
    mean /= static_cast<double>(records.size());
    if (mean <= 0.0) {
      est.truncated = true;  // exact convergence: cut the window here
      break;
    }
    ks.push_back(static_cast<double>(k));
    logs.push_back(std::log(mean));
  }
  if (ks.size() < 2)
    throw std::invalid_argument("fewer than 2 positive recorded points in window");

  const double np = static_cast<double>(ks.size());
  double kbar = 0.0, ybar = 0.0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    kbar += ks[i];
    ybar += logs[i];
  }
  kbar /= np;
  ybar /= np;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    sxx += (ks[i] - kbar) * (ks[i] - kbar);
    sxy += (ks[i] - kbar) * (logs[i] - ybar);
    syy += (logs[i] - ybar) * (logs[i] - ybar);
  }
  est.log_rate = sxy / sxx;
  est.r_squared = syy > 0.0 ? std::min(1.0, (sxy * sxy) / (sxx * syy)) : 1.0;
  est.window = {static_cast<int>(ks.front()), static_cast<int>(ks.back())};
  return est;
}

}  // namespace randsor
