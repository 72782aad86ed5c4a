#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "qd/densop.hpp"

namespace qd {

/// Completely positive trace-preserving map given as a finite Kraus list.
/// Construction checks completeness sum_i K_i^dag K_i = I to 1e-10.
struct KrausChannel {
  int dim;
  std::vector<Eigen::MatrixXcd> ops;

  KrausChannel(int dim_, std::vector<Eigen::MatrixXcd> ops_);

  static KrausChannel identity(int dim);
  static KrausChannel unitary(const Eigen::MatrixXcd& u);
};

// Unit-norm rotation axis. The constructor normalizes; a near-zero input is
// rejected.
class RotationAxis {
public:
  explicit RotationAxis(const Eigen::Vector3d& n);
  const Eigen::Vector3d& vec() const { return n_; }

  static RotationAxis x() { return RotationAxis({1, 0, 0}); }
  static RotationAxis y() { return RotationAxis({0, 1, 0}); }
  static RotationAxis z() { return RotationAxis({0, 0, 1}); }

private:
  Eigen::Vector3d n_;
};

// Probabilistic mixture of bilocal channels sum_i p_i eps_i^A (x) eps_i^B.
struct SeparableChannel {
  struct Term {
    double probability;
    KrausChannel channel_a;
    KrausChannel channel_b;
  };
  std::vector<Term> terms;

  explicit SeparableChannel(std::vector<Term> terms_);
};

DensityOperator apply_channel(const KrausChannel& ch,
                              const DensityOperator& rho);

// Kraus pair E0 = |0><0| + sqrt(1-p)|1><1|, E1 = sqrt(p)|0><1|.
KrausChannel amplitude_damping(double p);

// Lifts a single-qubit channel to the two-qubit space, acting on `which`
// and leaving the other qubit untouched.
KrausChannel on_qubit(const KrausChannel& ch, Qubit which);

// R_n(theta) = cos(theta/2) I - i sin(theta/2) n.sigma. Conjugation by
// R_n(theta) rotates Bloch vectors right-handedly by theta about n.
Eigen::Matrix2cd rotation(const RotationAxis& n, double theta);

// Correlated rotation K_n(theta) = R_n(theta) (x) R_n(theta).
Eigen::Matrix4cd correlated_rotation(const RotationAxis& n, double theta);

// Complete correlated dephasing about n: the uniform theta-average of
// K_n(theta) rho K_n(theta)^dag, in closed Kraus form
//   1/2 K1 rho K1 + 1/4 K2 rho K2 + 1/4 K3 rho K3,
//   K1 = (n.s (x) n.s - I(x)I)/sqrt(2),
//   K2 = (n.s (x) n.s + I(x)I)/sqrt(2),
//   K3 = (n.s (x) I + I (x) n.s)/sqrt(2).
KrausChannel correlated_dephasing(const RotationAxis& n);

// Riemann (midpoint) average of K_n(theta) rho K_n(theta)^dag over
// theta in [0, 2pi), with `steps` uniform angles. Serves as the independent
// route against the Kraus form above. steps < 4 is rejected.
std::function<DensityOperator(const DensityOperator&)>
correlated_dephasing_averaged(const RotationAxis& n, int steps);

DensityOperator apply_separable(const SeparableChannel& ch,
                                const DensityOperator& rho);

// exp(-i theta sx(x)sx)
Eigen::Matrix4cd ms_gate(double theta);

// exp(-i theta sj(x)sj) with sj = (sx + sy)/sqrt(2)
Eigen::Matrix4cd ms2_gate(double theta);

enum class ScenarioState {
  Rho1,        // 1/2 (|++><++| + |--><--|)
  Rho2,        // K_y(pi/8) rho1 K_y(pi/8)^dag
  PlusPlus,    // |++><++|
  Werner,      // p |phi+><phi+| + (1-p) I/4
  WernerInput, // p |00><00| + (1-p) I/4
  BellPhiPlus, // (|00> + |11>)/sqrt(2)
};

DensityOperator prepare(ScenarioState s, double p = 0.0);

std::optional<ScenarioState> scenario_state_from_name(std::string_view name);
std::string_view scenario_state_name(ScenarioState s);

}  // namespace qd
