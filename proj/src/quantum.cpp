// Copyright 2026 The qsteer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsteer/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsteer::quantum {

namespace {

constexpr double kFidelityNormTol = 1e-6;

double squared_norm(std::span<const Complex> amps) {
  double sum = 0.0;
  for (const auto& z : amps) sum += std::norm(z);
  return sum;
}

double overlap_abs(std::span<const Complex> a, std::span<const Complex> b) {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return std::clamp(std::abs(acc), 0.0, 1.0);
}

BlochAngles bloch_from(std::span<const Complex> amps) {
  const double r0 = std::abs(amps[0]);
  const double theta = 2.0 * std::acos(std::clamp(r0, 0.0, 1.0));
  const double r1 = std::abs(amps[1]);
  // At the poles one amplitude vanishes and the relative phase carries no information.
  if (r0 == 0.0 || r1 == 0.0) return {theta, 0.0};
  double phi = std::arg(amps[1]) - std::arg(amps[0]);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  phi = std::fmod(phi, two_pi);
  if (phi < 0.0) phi += two_pi;
  if (phi >= two_pi) phi = 0.0;
  return {theta, phi};
}

}  // namespace

QuantumState::QuantumState(ComplexVector amplitudes) : amps_(std::move(amplitudes)) {
  const double n2 = squared_norm(amps_.entries());
  if (std::abs(n2 - 1.0) > kNormTol) {
    throw std::invalid_argument("QuantumState: amplitudes not normalized (sum |c|^2 = " +
                                std::to_string(n2) + ")");
  }
}

QuantumState::QuantumState(std::initializer_list<Complex> amplitudes)
    : QuantumState(ComplexVector(amplitudes)) {}

QuantumState QuantumState::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::out_of_range("QuantumState::basis: index out of range");
  ComplexVector v(dim);
  v[index] = 1.0;
  return QuantumState(std::move(v));
}

Propagator::Propagator(ComplexMatrix matrix, std::string label)
    : matrix_(std::move(matrix)), label_(std::move(label)) {
  if (!linalg::is_unitary(matrix_, kUnitaryTol)) {
    throw std::invalid_argument("Propagator '" + label_ + "': matrix is not unitary");
  }
}

Propagator Propagator::identity(std::size_t dim) {
  return Propagator(ComplexMatrix::identity(dim), "identity");
}

double fidelity(const QuantumState& a, const QuantumState& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("fidelity: dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()) + ")");
  }
  for (const auto* s : {&a, &b}) {
    if (std::abs(s->amplitudes().norm() - 1.0) > kFidelityNormTol) {
      throw std::invalid_argument("fidelity: input state is not normalized");
    }
  }
  return overlap_abs(a.amplitudes().entries(), b.amplitudes().entries());
}

QuantumState bloch_to_state(BlochAngles angles) {
  const double half = 0.5 * angles.theta;
  return QuantumState{Complex(std::cos(half), 0.0), std::polar(std::sin(half), angles.phi)};
}

BlochAngles state_to_bloch(const QuantumState& psi) {
  if (psi.dim() != 2) {
    throw std::invalid_argument("state_to_bloch: expected a 2-level state, got dimension " +
                                std::to_string(psi.dim()));
  }
  return bloch_from(psi.amplitudes().entries());
}

QuantumState apply(const Propagator& u, const QuantumState& psi) {
  return QuantumState(linalg::mat_vec_mul(u.matrix(), psi.amplitudes()));
}

QuantumState apply_all(std::span<const Propagator> sequence, const QuantumState& psi) {
  StateBuffer buf(psi);
  for (const auto& u : sequence) buf.apply(u);
  return buf.state();
}

std::vector<double> populations(const QuantumState& psi) {
  std::vector<double> out;
  out.reserve(psi.dim());
  for (const auto& z : psi.amplitudes().entries()) out.push_back(std::norm(z));
  return out;
}

double transition_landscape(std::span<const Propagator> pulse_sequence, const QuantumState& psi0,
                            const QuantumState& psif) {
  if (pulse_sequence.empty()) throw std::invalid_argument("transition_landscape: empty pulse sequence");
  if (psi0.dim() != psif.dim()) {
    throw std::invalid_argument("transition_landscape: initial/target dimension mismatch");
  }
  const double f = fidelity(apply_all(pulse_sequence, psi0), psif);
  return f * f;
}

StateBuffer::StateBuffer(const QuantumState& initial)
    : current_(initial.amplitudes().entries().begin(), initial.amplitudes().entries().end()),
      scratch_(initial.dim()) {}

void StateBuffer::assign(const QuantumState& psi) {
  const auto src = psi.amplitudes().entries();
  current_.assign(src.begin(), src.end());
  scratch_.resize(current_.size());
}

void StateBuffer::apply(const Propagator& u) {
  linalg::mat_vec_mul_into(u.matrix(), current_, scratch_);
  current_.swap(scratch_);
}

QuantumState StateBuffer::state() const { return QuantumState(ComplexVector(current_)); }

double StateBuffer::fidelity_to(const QuantumState& target) const {
  if (target.dim() != current_.size()) throw std::invalid_argument("fidelity_to: dimension mismatch");
  return overlap_abs(current_, target.amplitudes().entries());
}

BlochAngles StateBuffer::bloch() const {
  if (current_.size() != 2) throw std::invalid_argument("StateBuffer::bloch: not a 2-level state");
  return bloch_from(current_);
}

double StateBuffer::norm() const { return std::sqrt(squared_norm(current_)); }

}  // namespace qsteer::quantum
