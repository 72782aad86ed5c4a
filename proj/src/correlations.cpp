#include "qd/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qd {

namespace {

constexpr double kAxisUnitTol = 1e-9;
constexpr double kDiscordClip = -1e-9;
constexpr double kTieTol = 1e-9;

bool lex_less(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  for (int i = 0; i < 3; ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

Eigen::Vector3d canonical_sign(const Eigen::Vector3d& a) {
  return lex_less(-a, a) ? Eigen::Vector3d(-a) : a;
}

// Two orthonormal tangent directions at a point on the unit sphere.
void tangent_frame(const Eigen::Vector3d& a, Eigen::Vector3d& t1,
                   Eigen::Vector3d& t2) {
  int k = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(a[i]) < std::abs(a[k])) k = i;
  }
  Eigen::Vector3d e = Eigen::Vector3d::Zero();
  e[k] = 1.0;
  t1 = e.cross(a).normalized();
  t2 = a.cross(t1);
}

struct AxisSearchResult {
  double value;
  Eigen::Vector3d axis;
};

// Compass pattern search in the tangent plane, step-halving to the axis
// tolerance.
AxisSearchResult refine_axis(const FanoForm& f, Qubit side,
                             const Eigen::Vector3d& start,
                             const OptimizerOptions& opts) {
  Eigen::Vector3d a = start;
  double fa = classical_correlation_at_axis(f, side, a);
  double h = 0.25;
  while (h > opts.axis_tolerance) {
    Eigen::Vector3d t1, t2;
    tangent_frame(a, t1, t2);
    const Eigen::Vector3d candidates[4] = {
        (a + h * t1).normalized(), (a - h * t1).normalized(),
        (a + h * t2).normalized(), (a - h * t2).normalized()};
    double fbest = fa;
    int ibest = -1;
    for (int i = 0; i < 4; ++i) {
      const double fc = classical_correlation_at_axis(f, side, candidates[i]);
      if (fc > fbest) {
        fbest = fc;
        ibest = i;
      }
    }
    if (ibest >= 0) {
      a = candidates[ibest];
      fa = fbest;
    } else {
      h *= 0.5;
    }
  }
  return {fa, a};
}

// angular separation treating a and -a as the same measurement
double axis_distance(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return std::acos(std::min(1.0, std::abs(a.dot(b))));
}

// Grid stage + pattern search from the few best-separated grid basins.
// Deterministic: fixed grid order, stable sort, ties resolved toward the
// lexicographically smallest axis.
AxisSearchResult maximize_over_axes(const FanoForm& f, Qubit side,
                                    const OptimizerOptions& opts) {
  const auto grid = fibonacci_sphere(opts.grid_points);
  std::vector<AxisSearchResult> evals;
  evals.reserve(grid.size());
  for (const auto& a : grid) {
    evals.push_back({classical_correlation_at_axis(f, side, a), a});
  }
  std::stable_sort(evals.begin(), evals.end(),
                   [](const AxisSearchResult& x, const AxisSearchResult& y) {
                     if (x.value != y.value) return x.value > y.value;
                     return lex_less(canonical_sign(x.axis),
                                     canonical_sign(y.axis));
                   });

  std::vector<Eigen::Vector3d> seeds;
  for (const auto& e : evals) {
    bool separated = true;
    for (const auto& s : seeds) {
      if (axis_distance(e.axis, s) < 0.3) {
        separated = false;
        break;
      }
    }
    if (separated) seeds.push_back(e.axis);
    if (seeds.size() == 3) break;
  }

  AxisSearchResult best{-1.0, seeds.front()};
  for (const auto& s : seeds) {
    const AxisSearchResult r = refine_axis(f, side, s, opts);
    if (r.value > best.value + kTieTol) {
      best = r;
    } else if (r.value > best.value - kTieTol &&
               lex_less(canonical_sign(r.axis), canonical_sign(best.axis))) {
      best.value = std::max(best.value, r.value);
      best.axis = r.axis;
    }
  }
  return {best.value, canonical_sign(best.axis)};
}

}  // namespace

std::vector<Eigen::Vector3d> fibonacci_sphere(int n) {
  if (n < 1) throw std::invalid_argument("fibonacci_sphere: n < 1");
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(n);
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < n; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * k;
    pts.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return pts;
}

double mutual_information(const DensityOperator& rho) {
  const double sa = von_neumann_entropy(partial_trace(rho, Qubit::A));
  const double sb = von_neumann_entropy(partial_trace(rho, Qubit::B));
  return sa + sb - von_neumann_entropy(rho);
}

std::array<ConditionalOutcome, 2> conditional_ensemble(
    const DensityOperator& rho, Qubit side, const Eigen::Vector3d& axis) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("conditional_ensemble: input must be two-qubit");
  }
  if (std::abs(axis.norm() - 1.0) > kAxisUnitTol) {
    throw std::invalid_argument("conditional_ensemble: axis not unit norm");
  }
  const Eigen::Matrix2cd id = pauli(0);
  const Eigen::Matrix2cd ns = dot_sigma(axis);
  const Qubit other = (side == Qubit::A) ? Qubit::B : Qubit::A;

  auto outcome = [&](double sign) -> ConditionalOutcome {
    const Eigen::Matrix2cd proj = 0.5 * (id + sign * ns);
    const Eigen::MatrixXcd joint =
        (side == Qubit::A) ? tensor(proj, id) : tensor(id, proj);
    const Eigen::MatrixXcd collapsed = joint * rho.mat() * joint;
    const double p = collapsed.trace().real();
    if (p < 1e-12) {
      return {0.0, DensityOperator::maximally_mixed(2)};
    }
    return {p, partial_trace(DensityOperator(collapsed / p), other)};
  };
  return {outcome(+1.0), outcome(-1.0)};
}

double classical_correlation_at_axis(const FanoForm& f, Qubit side,
                                     const Eigen::Vector3d& axis) {
  const Eigen::Vector3d& r_meas = (side == Qubit::A) ? f.r_a : f.r_b;
  const Eigen::Vector3d& r_other = (side == Qubit::A) ? f.r_b : f.r_a;
  const Eigen::Vector3d beta_axis = (side == Qubit::A)
                                        ? Eigen::Vector3d(f.beta.transpose() * axis)
                                        : Eigen::Vector3d(f.beta * axis);
  double avg = 0.0;
  for (double sign : {+1.0, -1.0}) {
    const double p = 0.5 * (1.0 + sign * r_meas.dot(axis));
    if (p < 1e-12) continue;
    const Eigen::Vector3d u = (r_other + sign * beta_axis) / (2.0 * p);
    avg += p * qubit_entropy_from_bloch_norm(u.norm());
  }
  return qubit_entropy_from_bloch_norm(r_other.norm()) - avg;
}

ClassicalCorrelation classical_correlation(const DensityOperator& rho,
                                           Qubit side,
                                           const OptimizerOptions& opts) {
  const FanoForm f = fano_decompose(rho);
  const AxisSearchResult r = maximize_over_axes(f, side, opts);
  return {r.value, r.axis};
}

DiscordResult discord(const DensityOperator& rho, Qubit side,
                      const OptimizerOptions& opts) {
  const double mi = mutual_information(rho);
  const ClassicalCorrelation cc = classical_correlation(rho, side, opts);
  double d = mi - cc.value;
  if (d < 0.0 && d >= kDiscordClip) d = 0.0;
  return {d, side, cc.axis, mi, cc.value};
}

double tangle(const DensityOperator& rho) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("tangle: input must be two-qubit");
  }
  const Eigen::MatrixXcd yy = tensor(pauli(2), pauli(2));
  const Eigen::MatrixXcd flipped = yy * rho.mat().conjugate() * yy;
  const Eigen::MatrixXcd sq = hermitian_sqrt(rho.mat());
  Eigen::MatrixXcd m = sq * flipped * sq;
  m = 0.5 * (m + m.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  Eigen::Vector4d lam;
  for (int i = 0; i < 4; ++i) {
    lam[i] = std::sqrt(std::max(0.0, es.eigenvalues()[i]));
  }
  std::sort(lam.data(), lam.data() + 4, std::greater<double>());
  const double c = std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
  return c * c;
}

CorrelationMatrix correlation_matrix(const DensityOperator& rho) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("correlation_matrix: input must be two-qubit");
  }
  CorrelationMatrix cm;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      cm.m(i, j) =
          (tensor(pauli(i), pauli(j)) * rho.mat()).trace().real();
    }
  }
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(cm.m);
  cm.singular_values = svd.singularValues();
  return cm;
}

RankReport correlation_rank(const DensityOperator& rho, double tolerance) {
  if (!(tolerance > 0.0 && tolerance < 0.5)) {
    throw std::invalid_argument("correlation_rank: tolerance outside (0, 0.5)");
  }
  const CorrelationMatrix cm = correlation_matrix(rho);
  const FanoForm f = fano_decompose(rho);
  const double threshold = tolerance * cm.singular_values[0];

  int rank = 0;
  for (int i = 0; i < 4; ++i) {
    if (cm.singular_values[i] > threshold) ++rank;
  }

  // Independent route: L = 1 + rank(beta - r_a r_b^T) at the same absolute
  // threshold.
  const Eigen::Matrix3d reduced = f.beta - f.r_a * f.r_b.transpose();
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(reduced);
  int reduced_rank = 0;
  for (int i = 0; i < 3; ++i) {
    if (svd.singularValues()[i] > threshold) ++reduced_rank;
  }
  if (1 + reduced_rank != rank) {
    throw internal_inconsistency(
        "correlation_rank: SVD rank " + std::to_string(rank) +
        " disagrees with Fano-block rank " + std::to_string(1 + reduced_rank));
  }
  return {cm.singular_values, rank, tolerance, f};
}

int predict_dephasing_rank(const FanoForm& f, const RotationAxis& n) {
  constexpr double kClassTol = 1e-9;     // marginal norms, overlap classes
  constexpr double kAngularTol = 1e-6;   // axis-alignment test, rank-1 rule
  constexpr double kBetaRankTol = 1e-7;  // single-singular-value test

  const double na = f.r_a.norm();
  const double nb = f.r_b.norm();
  const Eigen::Matrix3d product_beta = f.r_a * f.r_b.transpose();
  const bool is_product =
      (f.beta - product_beta).cwiseAbs().maxCoeff() <= kClassTol;

  if (is_product) {
    if (na < kClassTol || nb < kClassTol) {
      throw unsupported_state_class(
          "predict_dephasing_rank: product state with a vanishing Bloch vector");
    }
    const Eigen::Vector3d ra_hat = f.r_a / na;
    const Eigen::Vector3d rb_hat = f.r_b / nb;
    const bool along_a = n.vec().cross(ra_hat).norm() <= kAngularTol;
    const bool along_b = n.vec().cross(rb_hat).norm() <= kAngularTol;
    return (along_a || along_b) ? 1 : 3;
  }

  if (na < kClassTol && nb < kClassTol) {
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(f.beta,
                                          Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Vector3d d = svd.singularValues();
    if (d[0] <= kClassTol || d[1] > kBetaRankTol * d[0]) {
      throw unsupported_state_class(
          "predict_dephasing_rank: beta is not rank one");
    }
    const Eigen::Vector3d v = svd.matrixU().col(0);
    const Eigen::Vector3d w = svd.matrixV().col(0);
    const double x = std::abs(n.vec().dot(v));
    const double y = std::abs(n.vec().dot(w));

    enum Overlap { kOne, kZero, kBetween };
    auto classify = [](double t) {
      if (t >= 1.0 - kClassTol) return kOne;
      if (t <= kClassTol) return kZero;
      return kBetween;
    };
    static const int table[3][3] = {
        // n.w = 1, = 0, in between   (rows indexed by the n.v class)
        {2, 1, 2},
        {1, 3, 3},
        {2, 3, 4},
    };
    return table[classify(x)][classify(y)];
  }

  throw unsupported_state_class(
      "predict_dephasing_rank: state is neither a product state nor rank-2 "
      "with maximally mixed marginals");
}

}  // namespace qd
