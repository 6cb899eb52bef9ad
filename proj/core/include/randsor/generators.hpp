#pragma once

#include <cstdint>

#include "randsor/linear_system.hpp"

namespace randsor {

/// Hilbert matrix A_ij = 1/(i+j-1) (1-based), a classic ill-conditioned SPD
/// test problem. x_star is drawn from a seeded standard normal.
LinearSystem make_hilbert(int n, std::uint64_t seed = 0);

/// Parter matrix A_ij = 1/(i-j+0.5) (1-based), a non-symmetric full-rank
/// test problem, solved with Kaczmarz.
LinearSystem make_parter(int n, std::uint64_t seed = 0);

/// Random m x n Kaczmarz system with a prescribed spectrum: A = U S V^T with
/// seeded orthogonal factors and log-uniform singular values spanning
/// exactly [1/kappa, 1], so the condition number is reproducible.
LinearSystem make_random(Eigen::Index m, Eigen::Index n, double kappa,
                         std::uint64_t seed);

/// Random n x n SPD Gauss-Seidel system, same prescribed-spectrum idea with
/// log-uniform eigenvalues in [1/kappa, 1].
LinearSystem make_random_spd(Eigen::Index n, double kappa, std::uint64_t seed);

}  // namespace randsor
