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

#pragma once

#include <span>
#include <string>
#include <vector>

#include "qsteer/linalg.hpp"

namespace qsteer::quantum {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::ComplexVector;

/// Pure state of an N-level system. Construction enforces unit norm within kNormTol.
class QuantumState {
 public:
  static constexpr double kNormTol = 1e-9;

  explicit QuantumState(ComplexVector amplitudes);
  QuantumState(std::initializer_list<Complex> amplitudes);

  /// Basis state |index> of an N-level system.
  static QuantumState basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amps_.dim(); }
  const ComplexVector& amplitudes() const { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

 private:
  ComplexVector amps_;
};

/// Polar/azimuthal angles on the Bloch sphere, theta in [0, pi], phi in [0, 2 pi).
struct BlochAngles {
  double theta = 0.0;
  double phi = 0.0;

  bool operator==(const BlochAngles&) const = default;
};

/// A unitary step operator tagged with the control that generated it.
class Propagator {
 public:
  static constexpr double kUnitaryTol = 1e-10;

  /// Throws std::invalid_argument if the matrix is not unitary within kUnitaryTol.
  Propagator(ComplexMatrix matrix, std::string label);

  static Propagator identity(std::size_t dim);

  const ComplexMatrix& matrix() const { return matrix_; }
  const std::string& label() const { return label_; }
  std::size_t dim() const { return matrix_.dim(); }

 private:
  ComplexMatrix matrix_;
  std::string label_;
};

/// |<a|b>|, clamped to [0, 1]. Throws on dimension mismatch or inputs off unit norm by > 1e-6.
double fidelity(const QuantumState& a, const QuantumState& b);

QuantumState bloch_to_state(BlochAngles angles);

/// Inverse of bloch_to_state with the global phase fixed so c0 is real and non-negative.
/// phi is reported as 0 at the poles. Throws unless dim == 2.
BlochAngles state_to_bloch(const QuantumState& psi);

QuantumState apply(const Propagator& u, const QuantumState& psi);

/// Apply a whole sequence U_1 first, U_L last.
QuantumState apply_all(std::span<const Propagator> sequence, const QuantumState& psi);

std::vector<double> populations(const QuantumState& psi);

/**
 * Transition probability |<psi_f| U_L ... U_1 |psi_0>|^2 of a pulse sequence.
 *
 * This is the trace form tr(U rho_0 U^dagger rho_f) restricted to pure
 * states; sequences must be non-empty.
 */
double transition_landscape(std::span<const Propagator> pulse_sequence, const QuantumState& psi0,
                            const QuantumState& psif);

/**
 * Mutable amplitude buffer for hot loops.
 *
 * Environments advance a state thousands of times per episode; this keeps
 * the two amplitude arrays alive and swaps between them instead of
 * allocating a fresh QuantumState per step.
 */
class StateBuffer {
 public:
  explicit StateBuffer(const QuantumState& initial);

  void assign(const QuantumState& psi);
  void apply(const Propagator& u);

  std::span<const Complex> amplitudes() const { return current_; }
  /// Snapshot as a validated QuantumState.
  QuantumState state() const;
  /// Fidelity against a target without materializing a QuantumState.
  double fidelity_to(const QuantumState& target) const;
  BlochAngles bloch() const;
  double norm() const;

 private:
  std::vector<Complex> current_;
  std::vector<Complex> scratch_;
};

}  // namespace qsteer::quantum
