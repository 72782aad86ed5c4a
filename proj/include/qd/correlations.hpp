#pragma once

#include <array>
#include <vector>

#include "qd/channels.hpp"
#include "qd/densop.hpp"

namespace qd {

// 4x4 matrix of Pauli expectation values m_ij = Tr[rho (s_i (x) s_j)] over
// {I, sx, sy, sz}, plus its singular values in descending order. Raw
// expectation values, no overall 1/4, so m_00 = 1 and a classically
// correlated pair like rho1 comes out as [1, 1, 0, 0].
struct CorrelationMatrix {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  Eigen::Vector4d singular_values = Eigen::Vector4d::Zero();
};

struct ConditionalOutcome {
  double probability;
  DensityOperator state;  // state of the un-measured qubit
};

struct ClassicalCorrelation {
  double value;               // J in bits
  Eigen::Vector3d axis;       // optimal measurement direction
};

struct DiscordResult {
  double value;               // D = I - J in bits
  Qubit measured_side;
  Eigen::Vector3d optimal_axis;
  double mutual_information;
  double classical_correlation;
};

struct RankReport {
  Eigen::Vector4d singular_values;
  int rank;
  double tolerance;
  FanoForm fano;
};

// Knobs for the von Neumann measurement optimizer: a deterministic
// Fibonacci-sphere grid followed by compass pattern search in the tangent
// plane. Results are reproducible bit-for-bit for a fixed configuration.
struct OptimizerOptions {
  int grid_points = 312;
  double axis_tolerance = 1e-4;
};

double mutual_information(const DensityOperator& rho);

// Two-outcome von Neumann measurement of `side` along `axis` (must be unit
// norm). Returns the outcome probabilities and the conditioned states of the
// other qubit, + outcome first. An outcome with probability < 1e-12 is
// reported as (0, I/2).
std::array<ConditionalOutcome, 2> conditional_ensemble(
    const DensityOperator& rho, Qubit side, const Eigen::Vector3d& axis);

ClassicalCorrelation classical_correlation(
    const DensityOperator& rho, Qubit side,
    const OptimizerOptions& opts = {});

DiscordResult discord(const DensityOperator& rho, Qubit side,
                      const OptimizerOptions& opts = {});

// Squared concurrence via the spin-flip spectrum
// lambda_i = sqrt eig of rho (sy(x)sy) rho* (sy(x)sy), descending.
double tangle(const DensityOperator& rho);

CorrelationMatrix correlation_matrix(const DensityOperator& rho);

// Rank = number of singular values above tolerance * largest, cross-checked
// against 1 + rank(beta - r_a r_b^T) at the same absolute threshold;
// disagreement throws internal_inconsistency. tolerance must be in (0, 0.5).
RankReport correlation_rank(const DensityOperator& rho,
                            double tolerance = 1e-7);

// Predicted correlation rank after complete correlated dephasing about n,
// from the geometry of the state alone. Covers product states with nonzero
// marginal Bloch vectors and rank-2 states with maximally mixed marginals;
// anything else throws unsupported_state_class.
int predict_dephasing_rank(const FanoForm& f, const RotationAxis& n);

// J evaluated for one fixed measurement axis (used by the optimizer and
// exposed for validation against the conditional-ensemble route).
double classical_correlation_at_axis(const FanoForm& f, Qubit side,
                                     const Eigen::Vector3d& axis);

// Deterministic quasi-uniform axis grid (golden-angle spiral).
std::vector<Eigen::Vector3d> fibonacci_sphere(int n);

}  // namespace qd
