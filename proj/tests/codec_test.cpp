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
#include "modvar/zak.hpp"
#include "oracles.hpp"

using namespace modvar;

namespace {

CMatrix pure(const Eigen::VectorXcd& v) { return v * v.adjoint(); }

Eigen::Vector3d expected_bloch(double chi, double phi) {
  return {std::sin(chi) * std::cos(phi), std::sin(chi) * std::sin(phi), std::cos(chi)};
}

std::vector<Envelope> all_envelopes(const GridSpec& g) {
  GaussianEnvelopeParams off;
  off.theta_center = 0.9;
  off.k_center = 0.2;
  off.theta_width = 0.3;
  Eigen::MatrixXcd table(static_cast<Eigen::Index>(g.half_samples()), static_cast<Eigen::Index>(g.period_count()));
  std::mt19937_64 rng(41);
  std::normal_distribution<double> n;
  for (Eigen::Index i = 0; i < table.size(); ++i) table.data()[i] = Complex(n(rng), n(rng));
  return {uniform_envelope(g), gaussian_envelope(g), gaussian_envelope(g, off), single_fiber_envelope(g, 1, 2),
          custom_envelope(g, table)};
}

}  // namespace

TEST(envelope, uniform_and_single_fiber) {
  const GridSpec g(8, 4);
  const Envelope u = uniform_envelope(g);
  EXPECT_EQ(u.values.size(), 16);
  EXPECT_LE((u.values.array() - Complex(0.25)).abs().maxCoeff(), 1e-15);
  EXPECT_EQ(u.family, EnvelopeFamily::uniform);

  const Envelope d = single_fiber_envelope(g, 0, 0);
  EXPECT_EQ(d.values(0, 0), Complex(1.0));
  EXPECT_NEAR(d.values.norm(), 1.0, 0.0);
  EXPECT_THROW((void)single_fiber_envelope(g, 4, 0), std::out_of_range);
}

TEST(envelope, gaussian_is_normalized_and_wrapped) {
  const GridSpec g(32, 8);
  GaussianEnvelopeParams p;
  p.theta_center = 0.05;  // close to the wrap point theta_bar = 0 ~ pi
  const Envelope e = gaussian_envelope(g, p);
  EXPECT_NEAR(e.values.squaredNorm(), 1.0, 1e-12);
  // Wrapping with period pi makes theta_bar = pi - dtheta a near neighbour of 0.05.
  EXPECT_GT(std::abs(e.values(15, 4)), 0.5 * std::abs(e.values(1, 4)));
  EXPECT_EQ(e.family, EnvelopeFamily::gaussian);
}

TEST(envelope, wide_gaussian_approaches_uniform_monotonically) {
  const GridSpec g(16, 8);
  const Envelope u = uniform_envelope(g);
  double previous = 1e300;
  for (double scale : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    GaussianEnvelopeParams p;
    p.theta_width = scale * kPi;
    p.k_width = scale;
    const double gap = (gaussian_envelope(g, p).values - u.values).cwiseAbs().maxCoeff();
    if (previous < 1e-9) break;  // saturated at roundoff
    EXPECT_LT(gap, previous);
    previous = gap;
  }
  EXPECT_LT(previous, 1e-3);
}

TEST(envelope, degenerate_and_invalid_parameters) {
  const GridSpec g(8, 4);
  GaussianEnvelopeParams p;
  p.theta_width = 0.0;
  EXPECT_THROW((void)gaussian_envelope(g, p), std::invalid_argument);
  p.theta_width = 1e-4;
  p.theta_center = 0.3;  // far from every sample relative to the width
  try {
    (void)gaussian_envelope(g, p);
    FAIL();
  } catch (const std::domain_error& e) {
    EXPECT_STREQ(e.what(), "degenerate envelope");
  }
  EXPECT_THROW((void)custom_envelope(g, Eigen::MatrixXcd::Zero(4, 4)), std::domain_error);
  EXPECT_THROW((void)custom_envelope(g, Eigen::MatrixXcd::Ones(3, 4)), std::invalid_argument);
}

TEST(encode, basis_states_are_normalized_and_orthogonal) {
  const GridSpec g(16, 4);
  for (const Envelope& env : all_envelopes(g)) {
    const CvState zero = logical_zero(env);
    const CvState one = logical_one(env);
    EXPECT_NEAR(zero.norm(), 1.0, 1e-12);
    EXPECT_NEAR(one.norm(), 1.0, 1e-12);
    EXPECT_LE(std::abs(inner_product(zero, one)), 1e-15);
  }
}

TEST(encode, zak_domain_construction) {
  const GridSpec g(8, 4);
  const Envelope env = gaussian_envelope(g);
  const double chi = 1.1, phi = 2.3;
  const ModularField f = zak_forward(encode_logical(chi, phi, env));
  for (std::size_t s = 0; s < 4; ++s) {
    for (std::size_t m = 0; m < 4; ++m) {
      const Complex fv = env.values(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(m));
      EXPECT_NEAR(std::abs(f(s, m) - std::cos(chi / 2.0) * fv), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(f(s + 4, m) - oracle::expi(phi) * std::sin(chi / 2.0) * fv), 0.0, 1e-12);
    }
  }
}

TEST(encode, equator_state_reads_out_along_y) {
  const GridSpec g(16, 4);
  const LogicalReadout r = decode_logical(encode_logical(kPi / 2.0, kPi / 2.0, gaussian_envelope(g)));
  EXPECT_LE((r.bloch - Eigen::Vector3d(0.0, 1.0, 0.0)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(decode, encode_decode_consistency) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, kPi);
  const GridSpec g(16, 4);
  for (const Envelope& env : all_envelopes(g)) {
    for (int i = 0; i < 5; ++i) {
      const double chi = u(rng), phi = 2.0 * u(rng);
      const LogicalReadout r = decode_logical(encode_logical(chi, phi, env));
      EXPECT_LE((r.bloch - expected_bloch(chi, phi)).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_NEAR(r.purity, 1.0, 1e-12);
      EXPECT_NEAR(r.trace, 1.0, 1e-12);
    }
  }
}

TEST(decode, zero_state_gives_ground_projector) {
  const GridSpec g(16, 4);
  const LogicalReadout r = decode_logical(logical_zero(gaussian_envelope(g)));
  EXPECT_LE(oracle::max_abs(r.density, pure(Eigen::Vector2cd(1.0, 0.0))), 1e-12);
  EXPECT_NEAR(r.input_norm, 1.0, 1e-12);
}

TEST(decode, weighted_flip_decodes_to_one_after_renormalization) {
  const GridSpec g(16, 4);
  const CvState flipped =
      apply_gamma(logical_zero(gaussian_envelope(g)), make_gamma(axis_x(), make_weight(WeightFamily::cos_theta, g)));
  ASSERT_LT(flipped.norm(), 0.9);
  const LogicalReadout r = decode_logical(flipped);
  EXPECT_LE(oracle::max_abs(r.density, pure(Eigen::Vector2cd(0.0, 1.0))), 1e-12);
  EXPECT_NEAR(r.input_norm, flipped.norm(), 1e-15);
}

TEST(decode, is_positive_and_trace_one_for_random_states) {
  std::mt19937_64 rng(43);
  const GridSpec g(8, 4);
  for (int i = 0; i < 20; ++i) {
    CvState psi = oracle::random_state(g, rng);
    psi.amplitudes() *= 3.0;
    const LogicalReadout r = decode_logical(psi);
    EXPECT_NEAR(r.density.trace().real(), 1.0, 1e-12);
    EXPECT_LE(oracle::max_abs(r.density, r.density.adjoint()), 1e-15);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(r.density);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12);
    EXPECT_NEAR(r.input_norm, 3.0, 1e-12);
  }
  EXPECT_THROW((void)decode_logical(CvState::zero(g)), std::domain_error);
}

TEST(decode, two_mode_products_and_bell_pairs) {
  const GridSpec g(8, 4);
  const Envelope env = gaussian_envelope(g);
  const TwoModeState zo = TwoModeState::product(logical_zero(env), logical_one(env));
  Eigen::Vector4cd e01(0.0, 1.0, 0.0, 0.0);
  EXPECT_LE(oracle::max_abs(decode_logical(zo).density, pure(e01)), 1e-12);

  const TwoModeState oo = TwoModeState::product(logical_one(env), logical_one(env));
  const TwoModeState zz = TwoModeState::product(logical_zero(env), logical_zero(env));
  const TwoModeState bell(g, g, (zz.amplitudes() + oo.amplitudes()) / std::sqrt(2.0));
  const LogicalReadout r = decode_logical(bell);
  Eigen::Vector4cd phi(1.0, 0.0, 0.0, 1.0);
  phi /= std::sqrt(2.0);
  EXPECT_LE(oracle::max_abs(r.density, pure(phi)), 1e-12);
  EXPECT_NEAR(entropy_bits(partial_trace_second(r.density)), 1.0, 1e-10);
  EXPECT_NEAR(entropy_bits(partial_trace_first(r.density)), 1.0, 1e-10);
  EXPECT_NEAR(entropy_bits(partial_trace_second(decode_logical(zo).density)), 0.0, 1e-10);
  EXPECT_THROW((void)decode_logical(TwoModeState::zero(g, g)), std::domain_error);
}

TEST(partial_trace, picks_the_right_factor) {
  const Eigen::Vector2cd a(0.6, Complex(0.0, 0.8));
  const Eigen::Vector2cd b(1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0));
  Eigen::Vector4cd ab;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) ab[2 * i + j] = a[i] * b[j];
  EXPECT_LE(oracle::max_abs(partial_trace_second(pure(ab)), pure(a)), 1e-15);
  EXPECT_LE(oracle::max_abs(partial_trace_first(pure(ab)), pure(b)), 1e-15);
}

TEST(fidelity, standard_values) {
  const CMatrix zero = pure(Eigen::Vector2cd(1.0, 0.0));
  const CMatrix one = pure(Eigen::Vector2cd(0.0, 1.0));
  const CMatrix mixed = CMatrix::Identity(2, 2) / 2.0;
  EXPECT_NEAR(logical_fidelity(zero, zero), 1.0, 1e-12);
  EXPECT_NEAR(logical_fidelity(zero, one), 0.0, 1e-12);
  EXPECT_NEAR(logical_fidelity(zero, mixed), 0.5, 1e-12);
  EXPECT_NEAR(logical_fidelity(mixed, zero), 0.5, 1e-12);
  EXPECT_NEAR(logical_fidelity(mixed, mixed), 1.0, 1e-12);
}

TEST(fidelity, symmetric_on_random_mixed_states) {
  std::mt19937_64 rng(44);
  for (int i = 0; i < 10; ++i) {
    CMatrix a = CMatrix::Zero(4, 4), b = CMatrix::Zero(4, 4);
    for (int k = 0; k < 3; ++k) {
      const CVector x = oracle::random_vector(4, rng), y = oracle::random_vector(4, rng);
      a += pure(x) / 3.0;
      b += pure(y) / 3.0;
    }
    const double fab = logical_fidelity(a, b);
    EXPECT_NEAR(fab, logical_fidelity(b, a), 1e-10);
    EXPECT_GE(fab, 0.0);
    EXPECT_LE(fab, 1.0 + 1e-12);
  }
}

TEST(fidelity, rejects_invalid_inputs) {
  CMatrix bad = CMatrix::Identity(2, 2);
  bad(1, 1) = -0.5;
  EXPECT_THROW((void)logical_fidelity(bad, CMatrix::Identity(2, 2) / 2.0), std::invalid_argument);
  EXPECT_THROW((void)logical_fidelity(CMatrix::Identity(2, 2), CMatrix::Identity(4, 4)), std::invalid_argument);
}

TEST(bloch_readout, unit_weight_examples) {
  const GridSpec g(16, 4);
  const Envelope env = gaussian_envelope(g);
  const WeightSpec one = make_weight(WeightFamily::constant, g);
  const auto z = bloch_readout(logical_zero(env), one);
  EXPECT_NEAR(z[0], 0.0, 1e-12);
  EXPECT_NEAR(z[1], 0.0, 1e-12);
  EXPECT_NEAR(z[2], 1.0, 1e-12);
  EXPECT_NEAR(z[3], 1.0, 1e-12);
  const auto x = bloch_readout(encode_logical(kPi / 2.0, 0.0, env), one);
  EXPECT_NEAR(x[0], 1.0, 1e-12);
  EXPECT_NEAR(x[1], 0.0, 1e-12);
  EXPECT_NEAR(x[2], 0.0, 1e-12);
  EXPECT_NEAR(x[3], 1.0, 1e-12);
}

TEST(bloch_readout, cosine_weight_expectation) {
  const GridSpec g(32, 8);
  const Envelope env = gaussian_envelope(g);
  const WeightSpec c = make_weight(WeightFamily::cos_theta, g);
  const auto r = bloch_readout(logical_zero(env), c);
  const double expect = (env.values.cwiseAbs2().array() * c.values.array()).sum();
  EXPECT_NEAR(r[2], expect, 1e-12);
  EXPECT_NEAR(r[3], expect, 1e-12);
  EXPECT_NEAR(r[0], 0.0, 1e-12);
  EXPECT_THROW((void)bloch_readout(logical_zero(env), make_weight(WeightFamily::constant, GridSpec(8, 8))),
               std::invalid_argument);
}

// |1'> = Gamma_x(zeta)|0> carries the envelope f * zeta; its normalized overlap
// with |1> is sum f^2 zeta / sqrt(sum f^2 * sum f^2 zeta^2).
TEST(primed_states, overlap_matches_closed_form_and_converges) {
  const GridSpec g(256, 4);
  const WeightSpec c = make_weight(WeightFamily::cos_theta, g);
  double previous = 0.0;
  for (double width : {kPi / 4.0, kPi / 8.0, kPi / 16.0, kPi / 32.0}) {
    GaussianEnvelopeParams p;
    p.theta_center = kPi / 8.0;
    p.theta_width = width;
    const Envelope env = gaussian_envelope(g, p);
    const CvState primed = apply_gamma(logical_zero(env), make_gamma(axis_x(), c));
    const CvState one = logical_one(env);
    const double overlap = std::abs(inner_product(one, primed)) / (primed.norm() * one.norm());
    const Eigen::ArrayXXd f2 = env.values.cwiseAbs2().array();
    const Eigen::ArrayXXd z = c.values.array();
    const double closed = (f2 * z).sum() / std::sqrt(f2.sum() * (f2 * z * z).sum());
    EXPECT_NEAR(overlap, closed, 1e-10);
    EXPECT_GT(overlap, previous);
    previous = overlap;
  }
  EXPECT_GT(previous, 0.99);
}
