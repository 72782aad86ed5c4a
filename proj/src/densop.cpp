#include "qd/densop.hpp"

#include <cmath>
#include <stdexcept>

namespace qd {

namespace {

constexpr double kHermTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kEigenFloor = -1e-10;
constexpr double kEntropyReject = -1e-8;

double log2_safe(double x) { return std::log2(x); }

}  // namespace

DensityOperator::DensityOperator(Eigen::MatrixXcd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || (m_.rows() != 2 && m_.rows() != 4)) {
    throw std::invalid_argument("DensityOperator: dimension must be 2 or 4");
  }
  const double herm_dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > kHermTol) {
    throw not_a_state("DensityOperator: not Hermitian (deviation " +
                      std::to_string(herm_dev) + ")");
  }
  m_ = 0.5 * (m_ + m_.adjoint().eval());  // exact symmetrization
  const double tr_dev = std::abs(m_.trace() - cxd(1.0, 0.0));
  if (tr_dev > kTraceTol) {
    throw not_a_state("DensityOperator: trace deviates from 1 by " +
                      std::to_string(tr_dev));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < kEigenFloor) {
    throw not_a_state("DensityOperator: negative eigenvalue " +
                      std::to_string(es.eigenvalues().minCoeff()));
  }
}

DensityOperator DensityOperator::pure(const Eigen::VectorXcd& psi) {
  const double n = psi.norm();
  if (n < 1e-12) throw std::invalid_argument("pure: zero vector");
  Eigen::VectorXcd v = psi / n;
  return DensityOperator(v * v.adjoint());
}

DensityOperator DensityOperator::maximally_mixed(int dim) {
  return DensityOperator(Eigen::MatrixXcd::Identity(dim, dim) / double(dim));
}

Eigen::Matrix2cd pauli(int index) {
  Eigen::Matrix2cd m;
  switch (index) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, cxd(0, -1), cxd(0, 1), 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli: index must be 0..3");
  }
  return m;
}

Eigen::Matrix2cd dot_sigma(const Eigen::Vector3d& n) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  for (int i = 0; i < 3; ++i) m += n[i] * pauli(i + 1);
  return m;
}

Eigen::MatrixXcd tensor(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const auto ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
  Eigen::MatrixXcd out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i)
    for (Eigen::Index j = 0; j < ca; ++j)
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho, Qubit keep) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("partial_trace: input must be two-qubit");
  }
  const auto& m = rho.mat();
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        if (keep == Qubit::A)
          out(i, j) += m(2 * i + k, 2 * j + k);
        else
          out(i, j) += m(2 * k + i, 2 * k + j);
      }
  return DensityOperator(out);
}

double von_neumann_entropy(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.mat(),
                                                     Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double lam = es.eigenvalues()[i];
    if (lam < kEntropyReject) {
      throw not_a_state("von_neumann_entropy: eigenvalue " +
                        std::to_string(lam));
    }
    if (lam <= 0.0) continue;
    s -= lam * log2_safe(lam);
  }
  return s;
}

Eigen::MatrixXcd hermitian_sqrt(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  Eigen::VectorXd lam = es.eigenvalues();
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    lam[i] = lam[i] > 0.0 ? std::sqrt(lam[i]) : 0.0;
  }
  return es.eigenvectors() * lam.asDiagonal() *
         es.eigenvectors().adjoint();
}

double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  Eigen::MatrixXcd sq = hermitian_sqrt(rho.mat());
  Eigen::MatrixXcd inner = sq * sigma.mat() * sq;
  inner = 0.5 * (inner + inner.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(inner,
                                                     Eigen::EigenvaluesOnly);
  double tr = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double lam = es.eigenvalues()[i];
    if (lam > 0.0) tr += std::sqrt(lam);
  }
  double f = tr * tr;
  return f > 1.0 ? std::min(f, 1.0 + 1e-9) : f;
}

double trace_distance(const DensityOperator& rho,
                      const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw std::invalid_argument("trace_distance: dimension mismatch");
  }
  Eigen::MatrixXcd d = rho.mat() - sigma.mat();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(d,
                                                     Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

FanoForm fano_decompose(const DensityOperator& rho) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("fano_decompose: input must be two-qubit");
  }
  FanoForm f;
  const Eigen::MatrixXcd& m = rho.mat();
  const Eigen::Matrix2cd id = pauli(0);
  for (int i = 0; i < 3; ++i) {
    f.r_a[i] = (tensor(pauli(i + 1), id) * m).trace().real();
    f.r_b[i] = (tensor(id, pauli(i + 1)) * m).trace().real();
    for (int j = 0; j < 3; ++j) {
      f.beta(i, j) = (tensor(pauli(i + 1), pauli(j + 1)) * m).trace().real();
    }
  }
  return f;
}

DensityOperator fano_compose(const FanoForm& f) {
  const Eigen::Matrix2cd id = pauli(0);
  Eigen::MatrixXcd m = tensor(id, id);
  for (int i = 0; i < 3; ++i) {
    m += f.r_a[i] * tensor(pauli(i + 1), id);
    m += f.r_b[i] * tensor(id, pauli(i + 1));
    for (int j = 0; j < 3; ++j) {
      m += f.beta(i, j) * tensor(pauli(i + 1), pauli(j + 1));
    }
  }
  return DensityOperator(0.25 * m);
}

Eigen::Vector3d bloch_vector(const DensityOperator& rho) {
  if (rho.dim() != 2) {
    throw std::invalid_argument("bloch_vector: input must be single-qubit");
  }
  Eigen::Vector3d r;
  for (int i = 0; i < 3; ++i) {
    r[i] = (pauli(i + 1) * rho.mat()).trace().real();
  }
  return r;
}

double qubit_entropy_from_bloch_norm(double r) {
  r = std::min(r, 1.0);
  const double lp = (1.0 + r) / 2.0;
  const double lm = (1.0 - r) / 2.0;
  double s = 0.0;
  if (lp > 0.0) s -= lp * log2_safe(lp);
  if (lm > 0.0) s -= lm * log2_safe(lm);
  return s;
}

}  // namespace qd
