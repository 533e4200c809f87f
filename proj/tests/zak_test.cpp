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

#include "modvar/codec.hpp"
#include "modvar/gaussian.hpp"
#include "modvar/zak.hpp"
#include "oracles.hpp"

using namespace modvar;

TEST(zak_forward, position_delta_becomes_phase_ramp) {
  const GridSpec g(4, 2);
  const ModularField f = zak_forward(CvState::position_basis(g, g.flat_index(1, 1)));
  for (std::size_t s = 0; s < 4; ++s) {
    for (std::size_t m = 0; m < 2; ++m) {
      const Complex expect = s == 1 ? oracle::expi(-kPi * static_cast<double>(m)) / std::sqrt(2.0) : 0.0;
      EXPECT_NEAR(std::abs(f(s, m) - expect), 0.0, 1e-12);
    }
  }
  EXPECT_NEAR(std::abs(f(1, 0) - 1.0 / std::sqrt(2.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(f(1, 1) + 1.0 / std::sqrt(2.0)), 0.0, 1e-12);
}

TEST(zak_forward, uniform_comb_becomes_zero_quasi_momentum) {
  const GridSpec g(8, 5);
  CVector psi = CVector::Zero(40);
  for (std::size_t n = 0; n < 5; ++n) psi[static_cast<Eigen::Index>(g.flat_index(3, n))] = 1.0 / std::sqrt(5.0);
  const ModularField f = zak_forward(CvState(g, Representation::position, psi));
  for (std::size_t s = 0; s < 8; ++s) {
    for (std::size_t m = 0; m < 5; ++m) {
      EXPECT_NEAR(std::abs(f(s, m) - Complex(s == 3 && m == 0 ? 1.0 : 0.0)), 0.0, 1e-12);
    }
  }
}

TEST(zak_forward, matches_direct_summation_and_parseval) {
  std::mt19937_64 rng(21);
  for (auto [ns, nn] : {std::pair<std::size_t, std::size_t>{4, 2}, {8, 3}, {32, 16}, {6, 7}}) {
    const GridSpec g(ns, nn);
    const CvState psi = oracle::random_state(g, rng);
    const ModularField f = zak_forward(psi);
    EXPECT_LE(oracle::max_abs(f.values(), oracle::direct_zak(g, psi.amplitudes())), 1e-12);
    EXPECT_LE(std::abs(f.squared_norm() - psi.squared_norm()), 1e-12);
  }
}

TEST(zak_forward, accepts_momentum_input) {
  std::mt19937_64 rng(22);
  const GridSpec g(8, 4);
  const CvState psi = oracle::random_state(g, rng);
  EXPECT_LE(oracle::max_abs(zak_forward(to_momentum(psi)).values(), zak_forward(psi).values()), 1e-12);
}

TEST(zak_inverse, round_trip_on_random_states) {
  std::mt19937_64 rng(23);
  const GridSpec g(32, 16);
  for (int i = 0; i < 100; ++i) {
    const CvState psi = oracle::random_state(g, rng);
    const CvState back = zak_inverse(zak_forward(psi));
    EXPECT_EQ(back.representation(), Representation::position);
    EXPECT_LE((back.amplitudes() - psi.amplitudes()).norm(), 1e-12);
  }
}

TEST(zak_inverse, single_entry_gives_phased_comb) {
  const GridSpec g(8, 4);
  ModularField f = ModularField::zero(g);
  f(5, 3) = 1.0;
  const CvState psi = zak_inverse(f);
  for (std::size_t j = 0; j < g.dimension(); ++j) {
    const std::size_t s = j % 8, n = j / 8;
    const Complex expect = s == 5 ? oracle::expi(2.0 * kPi * static_cast<double>(n * 3) / 4.0) / 2.0 : 0.0;
    EXPECT_NEAR(std::abs(psi.amplitudes()[static_cast<Eigen::Index>(j)] - expect), 0.0, 1e-12);
  }
  EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
}

TEST(zak_inverse, zero_field_gives_zero_state) {
  const CvState psi = zak_inverse(ModularField::zero(GridSpec(4, 3)));
  EXPECT_EQ(psi.norm(), 0.0);
}

TEST(zak_columns, agree_with_single_state_transform) {
  std::mt19937_64 rng(24);
  const GridSpec g(8, 4);
  CMatrix cols(32, 3);
  for (int c = 0; c < 3; ++c) cols.col(c) = oracle::random_state(g, rng).amplitudes();
  const CMatrix z = zak_forward_columns(g, cols);
  for (int c = 0; c < 3; ++c) {
    const ModularField f = zak_forward(CvState(g, Representation::position, cols.col(c)));
    for (std::size_t s = 0; s < 8; ++s)
      for (std::size_t m = 0; m < 4; ++m)
        EXPECT_NEAR(std::abs(z(static_cast<Eigen::Index>(zak_flat_index(g, s, m)), c) - f(s, m)), 0.0, 1e-12);
  }
  EXPECT_LE(oracle::max_abs(zak_inverse_columns(g, z), cols), 1e-12);
}

TEST(fiber_view, logical_states_occupy_one_sector) {
  const GridSpec g(16, 4);
  const Envelope env = gaussian_envelope(g);
  const ModularField zero = zak_forward(logical_zero(env));
  const ModularField one = zak_forward(logical_one(env));
  for (std::size_t s = 0; s < 8; ++s) {
    for (std::size_t m = 0; m < 4; ++m) {
      EXPECT_LE(std::abs(fiber_view(zero, s, m).amplitude[1]), 1e-14);
      EXPECT_LE(std::abs(fiber_view(one, s, m).amplitude[0]), 1e-14);
    }
  }
  const FiberQubit q = fiber_view(zero, 2, 1);
  EXPECT_EQ(q.s, 2u);
  EXPECT_EQ(q.m, 1u);
  EXPECT_EQ(q.amplitude[0], zero(2, 1));
  EXPECT_EQ(q.amplitude[1], zero(10, 1));
}

TEST(fiber_view, rejects_shifted_sector_index) {
  const ModularField f = ModularField::zero(GridSpec(8, 2));
  try {
    (void)fiber_view(f, 4, 0);
    FAIL();
  } catch (const std::out_of_range& e) {
    EXPECT_STREQ(e.what(), "not a base-sector index");
  }
  EXPECT_THROW((void)fiber_view(f, 0, 2), std::out_of_range);
}

TEST(qubit_params, basis_and_superposition) {
  const GridSpec g(16, 4);
  const Envelope env = gaussian_envelope(g);
  const QubitParams zero = extract_qubit_params(zak_forward(logical_zero(env)));
  const QubitParams plus = extract_qubit_params(zak_forward(encode_logical(kPi / 2.0, 0.0, env)));
  EXPECT_NEAR(zero.weight.squaredNorm(), 1.0, 1e-12);
  for (Eigen::Index i = 0; i < zero.alpha.size(); ++i) {
    if (zero.zero_fiber.data()[i]) continue;
    EXPECT_NEAR(zero.alpha.data()[i], 0.0, 1e-12);
    EXPECT_NEAR(plus.alpha.data()[i], kPi / 2.0, 1e-12);
    const double phi = plus.phi.data()[i];
    EXPECT_LE(std::min(phi, kTwoPi - phi), 1e-12);
  }
}

TEST(qubit_params, zero_fibers_are_flagged) {
  const GridSpec g(8, 2);
  const QubitParams p = extract_qubit_params(zak_forward(logical_zero(single_fiber_envelope(g, 1, 1))));
  EXPECT_FALSE(p.zero_fiber(1, 1));
  EXPECT_TRUE(p.zero_fiber(0, 0));
  EXPECT_EQ(p.alpha(0, 0), 0.0);
  EXPECT_EQ(p.phi(0, 0), 0.0);
}

TEST(qubit_params, rebuild_is_exact) {
  std::mt19937_64 rng(25);
  const GridSpec g(16, 8);
  for (int i = 0; i < 10; ++i) {
    const ModularField f = zak_forward(oracle::random_state(g, rng));
    const ModularField r = rebuild_field(extract_qubit_params(f));
    EXPECT_LE((r.values() - f.values()).norm(), 1e-12);
  }
}

// A half-period shift exchanges the sectors of every fiber; the quasi-momentum
// phase lands on the component that wraps around one period.
TEST(zak_covariance, half_period_shift_acts_fiberwise) {
  std::mt19937_64 rng(26);
  const GridSpec g(16, 8);
  const std::size_t half = g.half_samples();
  const CvState psi = oracle::random_state(g, rng);
  const ModularField before = zak_forward(psi);
  const ModularField fwd = zak_forward(apply_gaussian_gate(psi, GaussianGate::shift(kPi)));
  const ModularField bwd = zak_forward(apply_gaussian_gate(psi, GaussianGate::shift(-kPi)));
  for (std::size_t s = 0; s < half; ++s) {
    for (std::size_t m = 0; m < g.period_count(); ++m) {
      const Complex e = oracle::expi(kTwoPi * g.k_bar(m));
      const Eigen::Vector2cd v = fiber_view(before, s, m).amplitude;
      Eigen::Matrix2cd t_plus, t_minus;
      t_plus << 0.0, 1.0, e, 0.0;
      t_minus << 0.0, std::conj(e), 1.0, 0.0;
      EXPECT_LE((fiber_view(fwd, s, m).amplitude - t_plus * v).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LE((fiber_view(bwd, s, m).amplitude - t_minus * v).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(zak_covariance, full_period_translation_is_quasi_momentum_phase) {
  std::mt19937_64 rng(27);
  const GridSpec g(8, 8);
  const CvState psi = oracle::random_state(g, rng);
  const ModularField before = zak_forward(psi);
  const ModularField after = zak_forward(apply_gaussian_gate(psi, GaussianGate::shift(-kTwoPi)));
  for (std::size_t s = 0; s < 8; ++s)
    for (std::size_t m = 0; m < 8; ++m)
      EXPECT_NEAR(std::abs(after(s, m) - oracle::expi(-kTwoPi * g.k_bar(m)) * before(s, m)), 0.0, 1e-12);
}

TEST(zak_covariance, periodic_position_phase_is_fiber_diagonal) {
  std::mt19937_64 rng(28);
  const GridSpec g(16, 4);
  const CvState psi = oracle::random_state(g, rng);
  const ModularField before = zak_forward(psi);
  const ModularField after = zak_forward(apply_gaussian_gate(psi, GaussianGate::boost(3.0)));
  for (std::size_t s = 0; s < 8; ++s) {
    for (std::size_t m = 0; m < 4; ++m) {
      const Complex d0 = oracle::expi(3.0 * g.theta_bar(s));
      const Complex d1 = oracle::expi(3.0 * (g.theta_bar(s) + kPi));
      EXPECT_NEAR(std::abs(after(s, m) - d0 * before(s, m)), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(after(s + 8, m) - d1 * before(s + 8, m)), 0.0, 1e-12);
    }
  }
}

TEST(zak_covariance, modular_multipliers_commute) {
  std::mt19937_64 rng(29);
  const GridSpec g(8, 4);
  const ModularField f = zak_forward(oracle::random_state(g, rng));
  Eigen::ArrayXXd theta_bar(8, 4), k_bar(8, 4);
  for (Eigen::Index s = 0; s < 8; ++s)
    for (Eigen::Index m = 0; m < 4; ++m) {
      theta_bar(s, m) = g.theta_bar(static_cast<std::size_t>(s));
      k_bar(s, m) = g.k_bar(static_cast<std::size_t>(m));
    }
  const CMatrix a = (theta_bar * (k_bar * f.values().array())).matrix();
  const CMatrix b = (k_bar * (theta_bar * f.values().array())).matrix();
  EXPECT_LE(oracle::max_abs(a, b), 1e-14);
}

TEST(modular_field, rejects_wrong_shape) {
  EXPECT_THROW(ModularField(GridSpec(4, 2), CMatrix::Zero(2, 4)), std::invalid_argument);
}
