// Copyright 2026 The modvar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "modvar/dense.hpp"
#include "modvar/gamma.hpp"
#include "modvar/gaussian.hpp"
#include "oracles.hpp"

using namespace modvar;

namespace {

CvMap as_map(const FiberOperator& op) {
  return [op](const CvState& psi) { return apply(op, psi); };
}

CvMap as_map(const GaussianGate& gate) {
  return [gate](const CvState& psi) { return apply_gaussian_gate(psi, gate); };
}

FiberOperator random_fiber_operator(const GridSpec& g, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  std::vector<Block2> blocks(g.fiber_count());
  for (Block2& b : blocks)
    for (int i = 0; i < 4; ++i) b.data()[i] = Complex(n(rng), n(rng));
  return {g, blocks};
}

// Z^dagger B Z with B assembled from the fiber blocks and Z built column by
// column from the direct-summation Zak oracle.
CMatrix reference_matrix(const FiberOperator& op) {
  const GridSpec& g = op.grid();
  const auto d = static_cast<Eigen::Index>(g.dimension());
  const auto ns = static_cast<Eigen::Index>(g.samples_per_period());
  CMatrix z(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    CVector e = CVector::Zero(d);
    e[j] = 1.0;
    z.col(j) = oracle::direct_zak(g, e).reshaped();
  }
  CMatrix b = CMatrix::Zero(d, d);
  const std::size_t half = g.half_samples();
  for (std::size_t m = 0; m < g.period_count(); ++m) {
    for (std::size_t s = 0; s < half; ++s) {
      const Eigen::Index idx[2] = {static_cast<Eigen::Index>(s) + ns * static_cast<Eigen::Index>(m),
                                   static_cast<Eigen::Index>(s + half) + ns * static_cast<Eigen::Index>(m)};
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) b(idx[r], idx[c]) = op.block(s, m)(r, c);
    }
  }
  return z.adjoint() * b * z;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

TEST(dense, half_period_shift_is_a_permutation) {
  const GridSpec g(8, 4);
  const DenseOperator p = materialize(g, as_map(GaussianGate::shift(kPi)));
  const auto d = static_cast<Eigen::Index>(g.dimension());
  CMatrix expect = CMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) expect((j + d - 4) % d, j) = 1.0;
  EXPECT_LE(compare(p.matrix, expect), 1e-12);
  EXPECT_LE(unitarity_defect(p), 1e-12);
}

TEST(dense, cosine_gamma_z_is_the_position_cosine) {
  const GridSpec g(16, 8);
  const GammaOperator gz = make_gamma(axis_z(), make_weight(WeightFamily::cos_theta, g));
  const DenseOperator a = materialize(g, as_map(gz.fiber_operator()));
  const DenseOperator b = position_diagonal(g, [](double theta) { return Complex(std::cos(theta)); });
  EXPECT_LE(compare(a, b), 1e-12);
}

TEST(dense, identity_and_shape_checks) {
  const GridSpec g(8, 2);
  const DenseOperator id = materialize(g, [](const CvState& psi) { return psi; });
  EXPECT_LE(compare(id.matrix, CMatrix::Identity(16, 16)), 0.0);
  EXPECT_LE(compare(materialize(g, as_map(FiberOperator::identity(g))).matrix, id.matrix), 1e-12);
  EXPECT_THROW((void)compare(CMatrix::Zero(2, 2), CMatrix::Zero(3, 3)), std::invalid_argument);
  EXPECT_THROW((void)unitarity_defect(CMatrix::Zero(2, 3)), std::invalid_argument);
  EXPECT_THROW((void)hermiticity_defect(CMatrix::Zero(3, 2)), std::invalid_argument);
}

TEST(dense, budget_is_enforced) {
  const GridSpec big = make_grid(128, 64, 1 << 14);
  EXPECT_THROW((void)materialize(big, [](const CvState& psi) { return psi; }), std::length_error);
  const GridSpec g(16, 4);
  EXPECT_THROW((void)materialize(g, g, [](const TwoModeState& s) { return s; }), std::length_error);
}

TEST(dense, gamma_operators_are_hermitian) {
  const GridSpec g(16, 8);
  for (WeightFamily fam : {WeightFamily::cos_theta, WeightFamily::cos_pi_k, WeightFamily::paper_mixed}) {
    for (const Axis& n : {axis_x(), axis_y(), axis_z(), Axis(Eigen::Vector3d(1.0, -2.0, 2.0) / 3.0)}) {
      const DenseOperator m = materialize(g, as_map(make_gamma(n, make_weight(fam, g)).fiber_operator()));
      EXPECT_LE(hermiticity_defect(m), 1e-12);
    }
  }
}

TEST(dense, rotations_are_unitary_only_for_unit_weight) {
  const GridSpec g(16, 8);
  const Axis n = Axis(1.0, 1.0, 0.0).normalized();
  const DenseOperator u = materialize(g, as_map(rotation_operator(n, 0.7, make_weight(WeightFamily::constant, g))));
  EXPECT_LE(unitarity_defect(u), 1e-12);
  const DenseOperator c = materialize(g, as_map(rotation_operator(n, 0.7, make_weight(WeightFamily::cos_theta, g))));
  EXPECT_GT(unitarity_defect(c), 0.1);
}

TEST(dense, povm_pair_is_complete) {
  const GridSpec g(16, 8);
  const auto [a, b] = povm_pair(make_gamma(axis_x(), make_weight(WeightFamily::paper_mixed, g)));
  const CMatrix ma = materialize(g, as_map(a.fiber_operator())).matrix;
  const CMatrix mb = materialize(g, as_map(b.fiber_operator())).matrix;
  EXPECT_LE(compare(ma.adjoint() * ma + mb.adjoint() * mb, CMatrix::Identity(ma.rows(), ma.cols())), 1e-12);
}

// Whole-period translations and even integer boosts act on every fiber as a
// scalar, so they commute with any fiber operator.
TEST(dense, fiber_operators_commute_with_lattice_symmetries) {
  std::mt19937_64 rng(51);
  const GridSpec g(16, 8);
  const CMatrix f = materialize(g, as_map(random_fiber_operator(g, rng))).matrix;
  for (const GaussianGate& gate : {GaussianGate::shift(kTwoPi), GaussianGate::shift(-kTwoPi), GaussianGate::boost(2.0)}) {
    const CMatrix s = materialize(g, as_map(gate)).matrix;
    EXPECT_LE(compare(f * s, s * f), 1e-12);
  }
  // A generic translation does not.
  const CMatrix t = materialize(g, as_map(GaussianGate::shift(1.0))).matrix;
  EXPECT_GT(compare(f * t, t * f), 1e-3);
}

TEST(dense, zak_matrix_is_unitary_and_matches_direct_sum) {
  const GridSpec g(16, 8);
  const CMatrix z = zak_matrix(g);
  EXPECT_LE(unitarity_defect(z), 1e-12);
  std::mt19937_64 rng(52);
  const CVector psi = oracle::random_vector(128, rng);
  const CMatrix direct = oracle::direct_zak(g, psi);
  const CVector via = z * psi;
  for (std::size_t s = 0; s < 16; ++s)
    for (std::size_t m = 0; m < 8; ++m)
      EXPECT_NEAR(std::abs(via[static_cast<Eigen::Index>(zak_flat_index(g, s, m))] -
                           direct(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(m))),
                  0.0, 1e-12);
}

TEST(dense, structured_application_matches_reference_matrix) {
  std::mt19937_64 rng(53);
  for (auto [ns, nn] : {std::pair<std::size_t, std::size_t>{4, 2}, {8, 4}, {16, 8}, {32, 16}}) {
    const GridSpec g(ns, nn);
    const FiberOperator op = random_fiber_operator(g, rng);
    const CMatrix fast = materialize(g, as_map(op)).matrix;
    EXPECT_LE(compare(fast, reference_matrix(op)), 1e-12) << ns << "x" << nn;
  }
}

TEST(dense, structured_application_is_linear) {
  std::mt19937_64 rng(54);
  const GridSpec g(16, 4);
  const FiberOperator op = random_fiber_operator(g, rng);
  const CMatrix m = materialize(g, as_map(op)).matrix;
  for (int i = 0; i < 5; ++i) {
    const CvState psi = oracle::random_state(g, rng);
    EXPECT_LE(oracle::max_abs(apply(op, psi).amplitudes(), m * psi.amplitudes()), 1e-12);
  }
}

TEST(dense, off_fiber_mass_detects_locality) {
  std::mt19937_64 rng(55);
  const GridSpec g(16, 4);
  EXPECT_LE(off_fiber_mass(g, materialize(g, as_map(random_fiber_operator(g, rng))).matrix), 1e-12);
  EXPECT_LE(off_fiber_mass(g, materialize(g, as_map(GaussianGate::shift(kPi))).matrix), 1e-12);
  EXPECT_GT(off_fiber_mass(g, materialize(g, as_map(GaussianGate::shift(1.0))).matrix), 1e-3);
  EXPECT_GT(off_fiber_mass(g, materialize(g, as_map(GaussianGate::boost(0.5))).matrix), 1e-3);
}

TEST(dense, two_mode_products_are_kronecker_products) {
  std::mt19937_64 rng(56);
  const GridSpec g(8, 2);
  const FiberOperator a = random_fiber_operator(g, rng);
  const FiberOperator b = random_fiber_operator(g, rng);
  const DenseOperator ab =
      materialize(g, g, [&](const TwoModeState& s) { return apply(TwoModeFiberOperator{{{a, b}}}, s); });
  const CMatrix expect = kron(materialize(g, as_map(a)).matrix, materialize(g, as_map(b)).matrix);
  EXPECT_LE(compare(ab.matrix, expect), 1e-12);

  const DenseOperator local = materialize(g, g, [&](const TwoModeState& s) { return apply_local(s, as_map(a), {}); });
  EXPECT_LE(compare(local.matrix, kron(materialize(g, as_map(a)).matrix, CMatrix::Identity(16, 16))), 1e-12);
}
