#include "qd/channels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace qd {

namespace {

constexpr double kCompletenessTol = 1e-10;

Eigen::Vector4cd basis_ket(int i) {
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  v[i] = 1.0;
  return v;
}

}  // namespace

KrausChannel::KrausChannel(int dim_, std::vector<Eigen::MatrixXcd> ops_)
    : dim(dim_), ops(std::move(ops_)) {
  if (ops.empty()) {
    throw std::invalid_argument("KrausChannel: empty operator list");
  }
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& k : ops) {
    if (k.rows() != dim || k.cols() != dim) {
      throw std::invalid_argument("KrausChannel: operator dimension mismatch");
    }
    sum += k.adjoint() * k;
  }
  const double dev =
      (sum - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (dev > kCompletenessTol) {
    throw std::invalid_argument("KrausChannel: completeness violated by " +
                                std::to_string(dev));
  }
}

KrausChannel KrausChannel::identity(int dim) {
  return KrausChannel(dim, {Eigen::MatrixXcd::Identity(dim, dim)});
}

KrausChannel KrausChannel::unitary(const Eigen::MatrixXcd& u) {
  return KrausChannel(static_cast<int>(u.rows()), {u});
}

RotationAxis::RotationAxis(const Eigen::Vector3d& n) {
  const double norm = n.norm();
  if (norm < 1e-12) {
    throw std::invalid_argument("RotationAxis: zero vector");
  }
  n_ = n / norm;
}

SeparableChannel::SeparableChannel(std::vector<Term> terms_)
    : terms(std::move(terms_)) {
  if (terms.empty()) {
    throw std::invalid_argument("SeparableChannel: empty term list");
  }
  double psum = 0.0;
  for (const auto& t : terms) {
    if (t.probability < 0.0) {
      throw std::invalid_argument("SeparableChannel: negative probability");
    }
    psum += t.probability;
  }
  if (std::abs(psum - 1.0) > 1e-10) {
    throw std::invalid_argument("SeparableChannel: probabilities sum to " +
                                std::to_string(psum));
  }
}

DensityOperator apply_channel(const KrausChannel& ch,
                              const DensityOperator& rho) {
  if (ch.dim != rho.dim()) {
    throw std::invalid_argument("apply_channel: dimension mismatch");
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(ch.dim, ch.dim);
  for (const auto& k : ch.ops) out += k * rho.mat() * k.adjoint();
  return DensityOperator(out);
}

KrausChannel amplitude_damping(double p) {
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("amplitude_damping: p outside [0,1]");
  }
  Eigen::Matrix2cd e0, e1;
  e0 << 1, 0, 0, std::sqrt(1.0 - p);
  e1 << 0, std::sqrt(p), 0, 0;
  return KrausChannel(2, {e0, e1});
}

KrausChannel on_qubit(const KrausChannel& ch, Qubit which) {
  if (ch.dim != 2) {
    throw std::invalid_argument("on_qubit: channel must be single-qubit");
  }
  const Eigen::Matrix2cd id = pauli(0);
  std::vector<Eigen::MatrixXcd> ops;
  ops.reserve(ch.ops.size());
  for (const auto& k : ch.ops) {
    ops.push_back(which == Qubit::A ? tensor(k, id) : tensor(id, k));
  }
  return KrausChannel(4, std::move(ops));
}

Eigen::Matrix2cd rotation(const RotationAxis& n, double theta) {
  return std::cos(theta / 2.0) * pauli(0) -
         cxd(0, 1) * std::sin(theta / 2.0) * dot_sigma(n.vec());
}

Eigen::Matrix4cd correlated_rotation(const RotationAxis& n, double theta) {
  const Eigen::Matrix2cd r = rotation(n, theta);
  return tensor(r, r);
}

KrausChannel correlated_dephasing(const RotationAxis& n) {
  const Eigen::Matrix2cd id = pauli(0);
  const Eigen::Matrix2cd ns = dot_sigma(n.vec());
  const Eigen::MatrixXcd ii = tensor(id, id);
  const Eigen::MatrixXcd nn = tensor(ns, ns);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd k1 = inv_sqrt2 * (nn - ii);
  Eigen::MatrixXcd k2 = inv_sqrt2 * (nn + ii);
  Eigen::MatrixXcd k3 = inv_sqrt2 * (tensor(ns, id) + tensor(id, ns));
  return KrausChannel(4, {std::sqrt(0.5) * k1, std::sqrt(0.25) * k2,
                          std::sqrt(0.25) * k3});
}

std::function<DensityOperator(const DensityOperator&)>
correlated_dephasing_averaged(const RotationAxis& n, int steps) {
  if (steps < 4) {
    throw std::invalid_argument("correlated_dephasing_averaged: steps < 4");
  }
  return [n, steps](const DensityOperator& rho) {
    Eigen::Matrix4cd acc = Eigen::Matrix4cd::Zero();
    for (int k = 0; k < steps; ++k) {
      const double theta =
          2.0 * std::numbers::pi * (k + 0.5) / static_cast<double>(steps);
      const Eigen::Matrix4cd u = correlated_rotation(n, theta);
      acc += u * rho.mat() * u.adjoint();
    }
    return DensityOperator(acc / static_cast<double>(steps));
  };
}

DensityOperator apply_separable(const SeparableChannel& ch,
                                const DensityOperator& rho) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("apply_separable: input must be two-qubit");
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(4, 4);
  for (const auto& t : ch.terms) {
    for (const auto& ka : t.channel_a.ops) {
      for (const auto& kb : t.channel_b.ops) {
        const Eigen::MatrixXcd k = tensor(ka, kb);
        out += t.probability * (k * rho.mat() * k.adjoint());
      }
    }
  }
  return DensityOperator(out);
}

Eigen::Matrix4cd ms_gate(double theta) {
  const Eigen::MatrixXcd xx = tensor(pauli(1), pauli(1));
  return std::cos(theta) * Eigen::Matrix4cd::Identity() -
         cxd(0, 1) * std::sin(theta) * xx;
}

Eigen::Matrix4cd ms2_gate(double theta) {
  const Eigen::Matrix2cd sj = (pauli(1) + pauli(2)) / std::sqrt(2.0);
  const Eigen::MatrixXcd jj = tensor(sj, sj);
  return std::cos(theta) * Eigen::Matrix4cd::Identity() -
         cxd(0, 1) * std::sin(theta) * jj;
}

DensityOperator prepare(ScenarioState s, double p) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::Vector2cd plus, minus;
  plus << inv_sqrt2, inv_sqrt2;
  minus << inv_sqrt2, -inv_sqrt2;

  switch (s) {
    case ScenarioState::Rho1: {
      Eigen::Vector4cd pp, mm;
      pp = tensor(plus, plus);
      mm = tensor(minus, minus);
      Eigen::Matrix4cd m =
          0.5 * (pp * pp.adjoint() + mm * mm.adjoint());
      return DensityOperator(m);
    }
    case ScenarioState::Rho2: {
      const DensityOperator rho1 = prepare(ScenarioState::Rho1);
      const Eigen::Matrix4cd k =
          correlated_rotation(RotationAxis::y(), std::numbers::pi / 8.0);
      return DensityOperator(k * rho1.mat() * k.adjoint());
    }
    case ScenarioState::PlusPlus: {
      Eigen::Vector4cd pp = tensor(plus, plus);
      return DensityOperator::pure(pp);
    }
    case ScenarioState::Werner: {
      if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("prepare(werner): p outside [0,1]");
      }
      const DensityOperator bell = prepare(ScenarioState::BellPhiPlus);
      return DensityOperator(p * bell.mat() +
                             (1.0 - p) * Eigen::Matrix4cd::Identity() / 4.0);
    }
    case ScenarioState::WernerInput: {
      if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("prepare(werner_input): p outside [0,1]");
      }
      const Eigen::Vector4cd k00 = basis_ket(0);
      return DensityOperator(p * (k00 * k00.adjoint()) +
                             (1.0 - p) * Eigen::Matrix4cd::Identity() / 4.0);
    }
    case ScenarioState::BellPhiPlus: {
      Eigen::Vector4cd phi = (basis_ket(0) + basis_ket(3)) * inv_sqrt2;
      return DensityOperator::pure(phi);
    }
  }
  throw std::invalid_argument("prepare: unknown scenario state");
}

std::optional<ScenarioState> scenario_state_from_name(std::string_view name) {
  if (name == "rho1") return ScenarioState::Rho1;
  if (name == "rho2") return ScenarioState::Rho2;
  if (name == "plus_plus") return ScenarioState::PlusPlus;
  if (name == "werner") return ScenarioState::Werner;
  if (name == "werner_input") return ScenarioState::WernerInput;
  if (name == "bell_phi_plus") return ScenarioState::BellPhiPlus;
  return std::nullopt;
}

std::string_view scenario_state_name(ScenarioState s) {
  switch (s) {
    case ScenarioState::Rho1: return "rho1";
    case ScenarioState::Rho2: return "rho2";
    case ScenarioState::PlusPlus: return "plus_plus";
    case ScenarioState::Werner: return "werner";
    case ScenarioState::WernerInput: return "werner_input";
    case ScenarioState::BellPhiPlus: return "bell_phi_plus";
  }
  return "unknown";
}

}  // namespace qd
