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

#include "modvar/fiber_operator.hpp"

#include <algorithm>
#include <stdexcept>

namespace modvar {

namespace {

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
  if (!(a == b)) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

}  // namespace

FiberOperator::FiberOperator(GridSpec grid, std::vector<Block2> blocks) : grid_(grid), blocks_(std::move(blocks)) {
  if (blocks_.size() != grid_.fiber_count()) {
    throw std::invalid_argument("FiberOperator: block count does not match fiber count");
  }
}

FiberOperator FiberOperator::identity(const GridSpec& grid) { return uniform(grid, Block2::Identity()); }

FiberOperator FiberOperator::uniform(const GridSpec& grid, const Block2& block) {
  return FiberOperator(grid, std::vector<Block2>(grid.fiber_count(), block));
}

FiberOperator FiberOperator::adjoint() const {
  std::vector<Block2> out(blocks_.size());
  std::transform(blocks_.begin(), blocks_.end(), out.begin(), [](const Block2& b) { return b.adjoint().eval(); });
  return FiberOperator(grid_, std::move(out));
}

double FiberOperator::unitarity_defect() const {
  double worst = 0.0;
  for (const auto& b : blocks_) {
    worst = std::max(worst, (b.adjoint() * b - Block2::Identity()).cwiseAbs().maxCoeff());
  }
  return worst;
}

double FiberOperator::hermiticity_defect() const {
  double worst = 0.0;
  for (const auto& b : blocks_) {
    worst = std::max(worst, (b - b.adjoint()).cwiseAbs().maxCoeff());
  }
  return worst;
}

FiberOperator operator*(const FiberOperator& a, const FiberOperator& b) {
  require_same_grid(a.grid_, b.grid_, "FiberOperator product");
  std::vector<Block2> out(a.blocks_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.blocks_[i] * b.blocks_[i];
  return FiberOperator(a.grid_, std::move(out));
}

FiberOperator operator+(const FiberOperator& a, const FiberOperator& b) {
  require_same_grid(a.grid_, b.grid_, "FiberOperator sum");
  std::vector<Block2> out(a.blocks_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.blocks_[i] + b.blocks_[i];
  return FiberOperator(a.grid_, std::move(out));
}

FiberOperator operator-(const FiberOperator& a, const FiberOperator& b) { return a + Complex(-1.0) * b; }

FiberOperator operator*(Complex c, const FiberOperator& a) {
  std::vector<Block2> out(a.blocks_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = c * a.blocks_[i];
  return FiberOperator(a.grid_, std::move(out));
}

ModularField apply(const FiberOperator& op, const ModularField& field) {
  require_same_grid(op.grid(), field.grid(), "apply(FiberOperator)");
  const auto& grid = field.grid();
  const std::size_t half = grid.half_samples();
  ModularField out = field;
  for (std::size_t m = 0; m < grid.period_count(); ++m) {
    for (std::size_t s = 0; s < half; ++s) {
      const Eigen::Vector2cd v(field(s, m), field(s + half, m));
      const Eigen::Vector2cd w = op.block(s, m) * v;
      out(s, m) = w[0];
      out(s + half, m) = w[1];
    }
  }
  return out;
}

CvState apply(const FiberOperator& op, const CvState& state) {
  return zak_inverse(apply(op, zak_forward(state)));
}

Block4 TwoModeFiberOperator::block(std::size_t fiber_a, std::size_t fiber_b) const {
  Block4 out = Block4::Zero();
  for (const auto& t : terms) {
    const Block2& a = t.a.blocks()[fiber_a];
    const Block2& b = t.b.blocks()[fiber_b];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) += a(i, j) * b;
  }
  return out;
}

CMatrix zak_forward_two_mode(const TwoModeState& state) {
  const CMatrix rows_done = zak_forward_columns(state.grid_a(), state.amplitudes());
  return zak_forward_columns(state.grid_b(), rows_done.transpose()).transpose();
}

TwoModeState zak_inverse_two_mode(const GridSpec& grid_a, const GridSpec& grid_b, const CMatrix& g) {
  const CMatrix rows_done = zak_inverse_columns(grid_a, g);
  return TwoModeState(grid_a, grid_b, zak_inverse_columns(grid_b, rows_done.transpose()).transpose());
}

TwoModeState apply(const TwoModeFiberOperator& op, const TwoModeState& state) {
  if (op.terms.empty()) throw std::invalid_argument("apply(TwoModeFiberOperator): empty term list");
  const GridSpec& ga = state.grid_a();
  const GridSpec& gb = state.grid_b();
  for (const auto& t : op.terms) {
    require_same_grid(t.a.grid(), ga, "two-mode operator (mode a)");
    require_same_grid(t.b.grid(), gb, "two-mode operator (mode b)");
  }
  const CMatrix g = zak_forward_two_mode(state);
  CMatrix out = CMatrix::Zero(g.rows(), g.cols());
  const std::size_t half_a = ga.half_samples();
  const std::size_t half_b = gb.half_samples();
  for (std::size_t ma = 0; ma < ga.period_count(); ++ma) {
    for (std::size_t sa = 0; sa < half_a; ++sa) {
      const auto ra0 = static_cast<Eigen::Index>(zak_flat_index(ga, sa, ma));
      const auto ra1 = static_cast<Eigen::Index>(zak_flat_index(ga, sa + half_a, ma));
      const std::size_t fa = sa + half_a * ma;
      for (std::size_t mb = 0; mb < gb.period_count(); ++mb) {
        for (std::size_t sb = 0; sb < half_b; ++sb) {
          const auto cb0 = static_cast<Eigen::Index>(zak_flat_index(gb, sb, mb));
          const auto cb1 = static_cast<Eigen::Index>(zak_flat_index(gb, sb + half_b, mb));
          const std::size_t fb = sb + half_b * mb;
          const Eigen::Vector4cd v(g(ra0, cb0), g(ra0, cb1), g(ra1, cb0), g(ra1, cb1));
          const Eigen::Vector4cd w = op.block(fa, fb) * v;
          out(ra0, cb0) = w[0];
          out(ra0, cb1) = w[1];
          out(ra1, cb0) = w[2];
          out(ra1, cb1) = w[3];
        }
      }
    }
  }
  return zak_inverse_two_mode(ga, gb, out);
}

}  // namespace modvar
