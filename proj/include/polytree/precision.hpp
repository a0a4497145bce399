#pragma once

#include "polytree/graph.hpp"
#include "polytree/matrix.hpp"
#include "polytree/sem.hpp"

namespace polytree {

/**
 * Exact inverse correlation matrix of a standardized polytree SEM, assembled
 * entry by entry: -beta_ij / omega_j on edges, beta_ik beta_jk / omega_k on
 * co-parent pairs, 1 / omega_j + sum over children beta_jk^2 / omega_k on the
 * diagonal. Throws InvalidModel when m is not standardized or not a forest.
 */
PrecisionMatrix true_inverse_correlation(const LinearSem& m);

/**
 * Plug-in estimate from a polytree CPDAG and pairwise correlations. Nodes
 * with an undirected edge use 1 / (1 - rho^2) terms, directed-only nodes use
 * omega_j = 1 - sum over parents rho_ij^2. Entries outside the skeleton and
 * the co-parent pairs are zero.
 *
 * Throws DimensionMismatch, InvalidCpdag, or DegenerateVariance when an
 * estimated variance is at or below 1e-10.
 */
PrecisionMatrix estimate_inverse_correlation(const Cpdag& cpdag, const CorrelationMatrix& corr);

struct L1Errors {
  double diagonal = 0.0;
  double off_diagonal = 0.0;  // over ordered pairs i != j
};

L1Errors l1_errors(const PrecisionMatrix& estimate, const PrecisionMatrix& truth);

}  // namespace polytree
