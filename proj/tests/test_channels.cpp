#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "qd/channels.hpp"
#include "qd/densop.hpp"
#include "testutil.hpp"

using namespace qd;
using qdtest::max_abs_diff;

namespace {

constexpr double kPi = std::numbers::pi;

DensityOperator plus_state() {
  Eigen::Vector2cd p;
  p << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  return DensityOperator::pure(p);
}

}  // namespace

TEST_CASE("amplitude damping fixtures") {
  Eigen::Vector2cd one;
  one << 0, 1;
  const DensityOperator exc = DensityOperator::pure(one);

  CHECK(max_abs_diff(apply_channel(amplitude_damping(0.0), exc).mat(),
                     exc.mat()) < 1e-14);

  Eigen::Matrix2cd ground = Eigen::Matrix2cd::Zero();
  ground(0, 0) = 1;
  CHECK(max_abs_diff(apply_channel(amplitude_damping(1.0), exc).mat(),
                     ground) < 1e-14);

  // p = 1/2 on |1><1|: apply E0, E1 by hand -> diag(1/2, 1/2)
  CHECK(max_abs_diff(apply_channel(amplitude_damping(0.5), exc).mat(),
                     0.5 * Eigen::Matrix2cd::Identity()) < 1e-14);

  // p = 1 on |+><+| -> |0><0|
  CHECK(max_abs_diff(apply_channel(amplitude_damping(1.0), plus_state()).mat(),
                     ground) < 1e-14);

  // general Bloch action x -> sqrt(1-p) x, z -> (1-p) z + p at p = 0.79
  const DensityOperator damped =
      apply_channel(amplitude_damping(0.79), plus_state());
  const Eigen::Vector3d r = bloch_vector(damped);
  CHECK(r.x() == doctest::Approx(std::sqrt(0.21)).epsilon(1e-12));
  CHECK(r.y() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.z() == doctest::Approx(0.79).epsilon(1e-12));

  CHECK_THROWS_AS(amplitude_damping(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(amplitude_damping(1.1), std::invalid_argument);
}

TEST_CASE("kraus channel validation and application") {
  // non-complete list rejected
  std::vector<Eigen::MatrixXcd> bad = {0.5 * pauli(0)};
  CHECK_THROWS_AS(KrausChannel(2, bad), std::invalid_argument);
  CHECK_THROWS_AS(KrausChannel(2, std::vector<Eigen::MatrixXcd>{}),
                  std::invalid_argument);

  std::mt19937_64 rng(21);
  const DensityOperator rho = qdtest::random_density(rng, 2);
  CHECK(max_abs_diff(apply_channel(KrausChannel::identity(2), rho).mat(),
                     rho.mat()) < 1e-14);
  CHECK_THROWS_AS(apply_channel(KrausChannel::identity(4), rho),
                  std::invalid_argument);

  // trace and positivity preserved for random channels (ctor re-validates)
  for (int i = 0; i < 50; ++i) {
    const KrausChannel ch = qdtest::random_qubit_channel(rng, 2 + i % 3);
    const DensityOperator out =
        apply_channel(ch, qdtest::random_density(rng, 2));
    CHECK(std::abs(out.mat().trace().real() - 1.0) < 1e-12);
  }
}

TEST_CASE("on_qubit locality") {
  CHECK(max_abs_diff(
            on_qubit(KrausChannel::identity(2), Qubit::B).ops[0],
            Eigen::Matrix4cd::Identity()) < 1e-15);

  // complete damping of qubit B in rho1 -> (I/2) (x) |0><0|
  const DensityOperator rho1 = prepare(ScenarioState::Rho1);
  const DensityOperator out =
      apply_channel(on_qubit(amplitude_damping(1.0), Qubit::B), rho1);
  Eigen::Matrix2cd ground = Eigen::Matrix2cd::Zero();
  ground(0, 0) = 1;
  CHECK(max_abs_diff(out.mat(),
                     tensor(0.5 * Eigen::Matrix2cd::Identity(), ground)) <
        1e-12);

  std::mt19937_64 rng(22);
  for (int i = 0; i < 30; ++i) {
    const DensityOperator rho = qdtest::random_density(rng, 4);
    const KrausChannel ch = qdtest::random_qubit_channel(rng);
    const DensityOperator touched =
        apply_channel(on_qubit(ch, Qubit::A), rho);
    CHECK(max_abs_diff(partial_trace(touched, Qubit::B).mat(),
                       partial_trace(rho, Qubit::B).mat()) < 1e-12);
    const DensityOperator touched_b =
        apply_channel(on_qubit(ch, Qubit::B), rho);
    CHECK(max_abs_diff(partial_trace(touched_b, Qubit::A).mat(),
                       partial_trace(rho, Qubit::A).mat()) < 1e-12);
  }
}

TEST_CASE("rotation convention") {
  CHECK(max_abs_diff(rotation(RotationAxis::z(), 0.0),
                     Eigen::Matrix2cd::Identity()) < 1e-15);
  CHECK(max_abs_diff(rotation(RotationAxis::z(), 2.0 * kPi),
                     -Eigen::Matrix2cd::Identity()) < 1e-12);

  // conjugating sx by R_y(pi/2) lands on -sz: Bloch x -> -z
  const Eigen::Matrix2cd r = rotation(RotationAxis::y(), kPi / 2.0);
  CHECK(max_abs_diff(r * pauli(1) * r.adjoint(), -pauli(3)) < 1e-12);

  std::mt19937_64 rng(23);
  for (int i = 0; i < 20; ++i) {
    const RotationAxis n(qdtest::random_unit_vec(rng));
    const Eigen::Matrix2cd u = rotation(n, 2.0 * kPi * (i + 1) / 20.0);
    CHECK(max_abs_diff(u * u.adjoint(), Eigen::Matrix2cd::Identity()) < 1e-12);
  }

  CHECK_THROWS_AS(RotationAxis(Eigen::Vector3d::Zero()), std::invalid_argument);
}

TEST_CASE("correlated dephasing: closed form fixtures") {
  const KrausChannel cd = correlated_dephasing(RotationAxis::z());
  CHECK(cd.ops.size() == 3);

  // unital
  const DensityOperator mixed = DensityOperator::maximally_mixed(4);
  CHECK(max_abs_diff(apply_channel(cd, mixed).mat(), mixed.mat()) < 1e-14);

  // rho1 dephased about z: the |00><11| coherence dies, the |01><10|
  // coherence survives, leaving beta = diag(1/2, 1/2, 0)
  const DensityOperator rho1 = prepare(ScenarioState::Rho1);
  const DensityOperator out = apply_channel(cd, rho1);
  CHECK(std::abs(out.mat()(0, 3)) < 1e-12);
  CHECK(out.mat()(1, 2).real() == doctest::Approx(0.25).epsilon(1e-12));
  const FanoForm f = fano_decompose(out);
  CHECK(f.r_a.norm() < 1e-12);
  CHECK(f.r_b.norm() < 1e-12);
  Eigen::Matrix3d beta = Eigen::Vector3d(0.5, 0.5, 0.0).asDiagonal();
  CHECK((f.beta - beta).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("correlated dephasing equals the theta average") {
  std::mt19937_64 rng(24);
  const auto check_axis = [&](const RotationAxis& n,
                              const DensityOperator& rho) {
    const auto averaged = correlated_dephasing_averaged(n, 720);
    const DensityOperator via_integral = averaged(rho);
    const DensityOperator via_kraus =
        apply_channel(correlated_dephasing(n), rho);
    CHECK(max_abs_diff(via_integral.mat(), via_kraus.mat()) < 1e-6);
  };
  for (int i = 0; i < 10; ++i) {
    check_axis(RotationAxis(qdtest::random_unit_vec(rng)),
               qdtest::random_density(rng, 4));
  }
  check_axis(RotationAxis::z(), prepare(ScenarioState::Rho1));

  // same beta through the averaged route
  const auto averaged = correlated_dephasing_averaged(RotationAxis::z(), 720);
  const FanoForm f = fano_decompose(averaged(prepare(ScenarioState::Rho1)));
  Eigen::Matrix3d beta = Eigen::Vector3d(0.5, 0.5, 0.0).asDiagonal();
  CHECK((f.beta - beta).cwiseAbs().maxCoeff() < 1e-9);

  CHECK_THROWS_AS(correlated_dephasing_averaged(RotationAxis::z(), 3),
                  std::invalid_argument);
}

TEST_CASE("correlated dephasing is idempotent") {
  std::mt19937_64 rng(25);
  for (int i = 0; i < 20; ++i) {
    const KrausChannel cd =
        correlated_dephasing(RotationAxis(qdtest::random_unit_vec(rng)));
    const DensityOperator rho = qdtest::random_density(rng, 4);
    const DensityOperator once = apply_channel(cd, rho);
    const DensityOperator twice = apply_channel(cd, once);
    CHECK(max_abs_diff(once.mat(), twice.mat()) < 1e-9);
  }
}

TEST_CASE("separable channels") {
  const KrausChannel id2 = KrausChannel::identity(2);
  const SeparableChannel single({{1.0, id2, id2}});
  std::mt19937_64 rng(26);
  const DensityOperator rho = qdtest::random_density(rng, 4);
  CHECK(max_abs_diff(apply_separable(single, rho).mat(), rho.mat()) < 1e-14);

  // two correlated rotation angles as a separable mixture reproduce the
  // two-angle discretized average
  const RotationAxis n(qdtest::random_unit_vec(rng));
  const double t1 = kPi / 2.0, t2 = 3.0 * kPi / 2.0;
  const SeparableChannel two_angle(
      {{0.5, KrausChannel::unitary(rotation(n, t1)),
        KrausChannel::unitary(rotation(n, t1))},
       {0.5, KrausChannel::unitary(rotation(n, t2)),
        KrausChannel::unitary(rotation(n, t2))}});
  const Eigen::Matrix4cd k1 = correlated_rotation(n, t1);
  const Eigen::Matrix4cd k2 = correlated_rotation(n, t2);
  const Eigen::Matrix4cd avg =
      0.5 * (k1 * rho.mat() * k1.adjoint() + k2 * rho.mat() * k2.adjoint());
  CHECK(max_abs_diff(apply_separable(two_angle, rho).mat(), avg) < 1e-13);

  CHECK_THROWS_AS(SeparableChannel({{0.7, id2, id2}}), std::invalid_argument);
  CHECK_THROWS_AS(SeparableChannel({{-0.5, id2, id2}, {1.5, id2, id2}}),
                  std::invalid_argument);
}

TEST_CASE("ms gate") {
  const Eigen::Matrix4cd ms = ms_gate(kPi / 4.0);
  Eigen::Vector4cd v00 = Eigen::Vector4cd::Zero();
  v00[0] = 1;
  Eigen::Vector4cd expect = Eigen::Vector4cd::Zero();
  expect[0] = 1.0 / std::sqrt(2.0);
  expect[3] = cxd(0, -1.0 / std::sqrt(2.0));
  CHECK((ms * v00 - expect).norm() < 1e-13);

  CHECK(max_abs_diff(ms_gate(0.0), Eigen::Matrix4cd::Identity()) < 1e-15);

  Eigen::Vector4cd full = ms_gate(kPi / 2.0) * v00;
  Eigen::Vector4cd expect_full = Eigen::Vector4cd::Zero();
  expect_full[3] = cxd(0, -1);
  CHECK((full - expect_full).norm() < 1e-13);

  for (double theta : {0.3, 1.1, 2.9}) {
    CHECK(max_abs_diff(ms_gate(theta) * ms_gate(-theta),
                       Eigen::Matrix4cd::Identity()) < 1e-13);
  }
}

TEST_CASE("ms2 gate and Werner preparation protocol") {
  // MS2(acos(sqrt(p)))|00> = sqrt(p)|00> + sqrt(1-p)|11>, relative phase +1
  Eigen::Vector4cd v00 = Eigen::Vector4cd::Zero();
  v00[0] = 1;
  for (double p : {0.0, 0.31, 0.7, 1.0}) {
    const Eigen::Vector4cd out = ms2_gate(std::acos(std::sqrt(p))) * v00;
    CHECK(std::abs(out[0] - cxd(std::sqrt(p), 0)) < 1e-12);
    CHECK(std::abs(out[3] - cxd(std::sqrt(1 - p), 0)) < 1e-12);
    CHECK(std::abs(out[1]) < 1e-14);
    CHECK(std::abs(out[2]) < 1e-14);
  }

  CHECK(max_abs_diff(ms2_gate(0.0), Eigen::Matrix4cd::Identity()) < 1e-15);

  const Eigen::Matrix2cd sj = (pauli(1) + pauli(2)) / std::sqrt(2.0);
  const Eigen::Matrix4cd gen = tensor(sj, sj);
  const Eigen::Matrix4cd u = ms2_gate(kPi / 4.0);
  CHECK(max_abs_diff(u * u.adjoint(), Eigen::Matrix4cd::Identity()) < 1e-13);
  CHECK(max_abs_diff(u * gen, gen * u) < 1e-13);

  // MS2(pi/4) maps |00> onto the phi+ Bell state, so conjugating the mixed
  // input p|00><00| + (1-p) I/4 lands exactly on the Werner state.
  for (double p : {0.0, 0.2, 0.5, 1.0}) {
    const DensityOperator in = prepare(ScenarioState::WernerInput, p);
    const DensityOperator out(u * in.mat() * u.adjoint());
    CHECK(max_abs_diff(out.mat(), prepare(ScenarioState::Werner, p).mat()) <
          1e-12);
  }
}

TEST_CASE("prepared scenario states") {
  CHECK(max_abs_diff(prepare(ScenarioState::Werner, 0.0).mat(),
                     DensityOperator::maximally_mixed(4).mat()) < 1e-15);
  CHECK(max_abs_diff(prepare(ScenarioState::Werner, 1.0).mat(),
                     prepare(ScenarioState::BellPhiPlus).mat()) < 1e-15);
  CHECK_THROWS_AS(prepare(ScenarioState::Werner, 1.2), std::invalid_argument);

  // rho2 = K_y(pi/8) rho1 K_y(pi/8)^dag has the tilted rank-one beta block
  const FanoForm f2 = fano_decompose(prepare(ScenarioState::Rho2));
  const double c = std::cos(kPi / 8.0), s = std::sin(kPi / 8.0);
  Eigen::Matrix3d expect = Eigen::Matrix3d::Zero();
  expect(0, 0) = c * c;
  expect(0, 2) = -c * s;
  expect(2, 0) = -c * s;
  expect(2, 2) = s * s;
  CHECK((f2.beta - expect).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(f2.r_a.norm() < 1e-12);
  CHECK(f2.r_b.norm() < 1e-12);

  // |++> marginals point along +x
  const FanoForm fp = fano_decompose(prepare(ScenarioState::PlusPlus));
  CHECK((fp.r_a - Eigen::Vector3d(1, 0, 0)).norm() < 1e-12);
  CHECK((fp.r_b - Eigen::Vector3d(1, 0, 0)).norm() < 1e-12);

  CHECK(scenario_state_from_name("werner").has_value());
  CHECK(!scenario_state_from_name("nope").has_value());
}
