#pragma once

#include <complex>
#include <Eigen/Dense>

#include "qd/errors.hpp"

namespace qd {

using cxd = std::complex<double>;

// Basis ordering is |00>, |01>, |10>, |11> throughout, with qubit A as the
// left tensor factor.
enum class Qubit { A, B };

// Marginal Bloch vectors and the 3x3 correlation block of a two-qubit state:
//   rho = 1/4 (I(x)I + sum_i ra_i s_i(x)I + sum_j rb_j I(x)s_j
//              + sum_ij beta_ij s_i(x)s_j)
struct FanoForm {
  Eigen::Vector3d r_a = Eigen::Vector3d::Zero();
  Eigen::Vector3d r_b = Eigen::Vector3d::Zero();
  Eigen::Matrix3d beta = Eigen::Matrix3d::Zero();
};

/// Validated density operator of dimension 2 or 4. Construction enforces
/// hermiticity and unit trace to 1e-10 and eigenvalues >= -1e-10; anything
/// worse throws not_a_state (or std::invalid_argument for a bad dimension).
class DensityOperator {
public:
  explicit DensityOperator(Eigen::MatrixXcd m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXcd& mat() const { return m_; }

  // |psi><psi| for a normalized (or normalizable) state vector.
  static DensityOperator pure(const Eigen::VectorXcd& psi);

  static DensityOperator maximally_mixed(int dim);

private:
  Eigen::MatrixXcd m_;
};

// Pauli basis {I, sx, sy, sz} indexed 0..3.
Eigen::Matrix2cd pauli(int index);

// n . sigma for a real 3-vector n.
Eigen::Matrix2cd dot_sigma(const Eigen::Vector3d& n);

// Kronecker product, qubit A on the left.
Eigen::MatrixXcd tensor(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

DensityOperator partial_trace(const DensityOperator& rho, Qubit keep);

// S(rho) in bits. Eigenvalues in [-1e-10, 0) are clipped to zero before the
// logs; below -1e-8 the input is rejected as not a state.
double von_neumann_entropy(const DensityOperator& rho);

// Squared Uhlmann fidelity F = (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, so a
// pure target |psi> gives <psi|rho|psi>.
double fidelity(const DensityOperator& rho, const DensityOperator& sigma);

// Half trace norm of rho - sigma.
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);

FanoForm fano_decompose(const DensityOperator& rho);
DensityOperator fano_compose(const FanoForm& f);

// Bloch vector of a single-qubit state.
Eigen::Vector3d bloch_vector(const DensityOperator& rho);

// Entropy in bits of a qubit with Bloch norm r, i.e. eigenvalues (1 +- r)/2.
double qubit_entropy_from_bloch_norm(double r);

// Hermitian PSD square root via eigendecomposition; eigenvalues in
// [-1e-10, 0) are clipped to zero.
Eigen::MatrixXcd hermitian_sqrt(const Eigen::MatrixXcd& m);

}  // namespace qd
