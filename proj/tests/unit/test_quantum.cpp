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


#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qsteer/linalg.hpp"
#include "qsteer/quantum.hpp"
#include "qsteer/rng.hpp"
#include "qsteer/spin_env.hpp"

using namespace qsteer;
using quantum::BlochAngles;
using quantum::Complex;
using quantum::Propagator;
using quantum::QuantumState;

namespace {

constexpr Complex kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

QuantumState random_state(std::size_t n, Rng& rng) {
  std::vector<Complex> v(n);
  double norm = 0.0;
  for (auto& c : v) {
    c = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    norm += std::norm(c);
  }
  for (auto& c : v) c /= std::sqrt(norm);
  return QuantumState(linalg::ComplexVector(std::move(v)));
}

Propagator random_unitary(std::size_t n, Rng& rng) {
  linalg::ComplexMatrix h(n);
  for (std::size_t r = 0; r < n; ++r) {
    h(r, r) = rng.uniform(-1, 1);
    for (std::size_t c = r + 1; c < n; ++c) {
      h(r, c) = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
      h(c, r) = std::conj(h(r, c));
    }
  }
  return Propagator(linalg::expm_hermitian(h, 1.0), "random");
}

// tr(U rho U^dagger sigma) with explicit density matrices.
double density_matrix_overlap(const linalg::ComplexMatrix& u, const QuantumState& psi0, const QuantumState& psif) {
  const auto n = psi0.dim();
  linalg::ComplexMatrix rho(n);
  linalg::ComplexMatrix sigma(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      rho(i, j) = psi0[i] * std::conj(psi0[j]);
      sigma(i, j) = psif[i] * std::conj(psif[j]);
    }
  const auto evolved = linalg::mat_mul(linalg::mat_mul(u, rho), linalg::dagger(u));
  const auto prod = linalg::mat_mul(evolved, sigma);
  Complex tr = 0;
  for (std::size_t i = 0; i < n; ++i) tr += prod(i, i);
  return tr.real();
}

}  // namespace

TEST_CASE("states must be normalized") {
  CHECK_THROWS(QuantumState{1.0, 1.0});
  CHECK_NOTHROW(QuantumState{kInvSqrt2, kInvSqrt2 * kI});
  CHECK_THROWS(QuantumState::basis(3, 3));
}

TEST_CASE("fidelity") {
  Rng rng(1);
  const auto psi = random_state(3, rng);
  CHECK(quantum::fidelity(psi, psi) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(quantum::fidelity(QuantumState{1.0, 0.0}, QuantumState{0.0, 1.0}) == 0.0);
  CHECK(quantum::fidelity(QuantumState{1.0, 0.0}, QuantumState{kInvSqrt2, kInvSqrt2}) ==
        doctest::Approx(0.7071068).epsilon(1e-7));
  CHECK_THROWS(quantum::fidelity(QuantumState{1.0, 0.0}, QuantumState::basis(3, 0)));
}

TEST_CASE("Bloch parametrization") {
  auto close = [](const QuantumState& a, std::initializer_list<Complex> b) {
    std::size_t i = 0;
    for (auto c : b) CHECK(std::abs(a[i++] - c) < 1e-15);
  };
  close(quantum::bloch_to_state({0.0, 0.0}), {1.0, 0.0});
  close(quantum::bloch_to_state({std::numbers::pi, 0.0}), {0.0, 1.0});
  close(quantum::bloch_to_state({std::numbers::pi / 2, 0.0}), {kInvSqrt2, kInvSqrt2});

  const auto north = quantum::state_to_bloch(QuantumState{1.0, 0.0});
  CHECK(north.theta == 0.0);
  CHECK(north.phi == 0.0);
  const auto east = quantum::state_to_bloch(QuantumState{kInvSqrt2, kInvSqrt2 * kI});
  CHECK(east.theta == doctest::Approx(std::numbers::pi / 2));
  CHECK(east.phi == doctest::Approx(std::numbers::pi / 2));

  // Global phase does not move the Bloch point.
  const auto phased = quantum::state_to_bloch(QuantumState{kInvSqrt2 * kI, -kInvSqrt2});
  CHECK(phased.theta == doctest::Approx(std::numbers::pi / 2));
  CHECK(phased.phi == doctest::Approx(std::numbers::pi / 2));

  Rng rng(2);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const BlochAngles a{rng.uniform(0.01, std::numbers::pi - 0.01), rng.uniform(0.0, 2 * std::numbers::pi)};
    const auto back = quantum::state_to_bloch(quantum::bloch_to_state(a));
    double dphi = std::abs(back.phi - a.phi);
    dphi = std::min(dphi, 2 * std::numbers::pi - dphi);
    worst = std::max({worst, std::abs(back.theta - a.theta), dphi});
  }
  CHECK(worst < 1e-9);
  CHECK_THROWS(quantum::state_to_bloch(QuantumState::basis(3, 0)));
}

TEST_CASE("propagators") {
  CHECK_THROWS(Propagator(linalg::ComplexMatrix::identity(2) * 2.0, "bad"));
  Rng rng(3);
  const auto psi = random_state(3, rng);
  const auto same = quantum::apply(Propagator::identity(3), psi);
  for (std::size_t i = 0; i < 3; ++i) CHECK(same[i] == psi[i]);

  const auto u1 = env::build_spin_propagators()[0];
  const auto out = quantum::apply(u1, QuantumState{1.0, 0.0});
  CHECK(std::abs(out[0] - std::exp(-kI * (std::numbers::pi / 30))) < 1e-14);
  CHECK(std::abs(out[1]) < 1e-15);
  CHECK(quantum::populations(out)[0] == doctest::Approx(1.0));

  std::vector<Propagator> seq;
  for (int i = 0; i < 100; ++i) seq.push_back(random_unitary(3, rng));
  const auto end = quantum::apply_all(seq, psi);
  CHECK(std::abs(end.amplitudes().norm() - 1.0) < 1e-8);
  CHECK_THROWS(quantum::apply(u1, psi));
}

TEST_CASE("apply_all applies the first pulse first") {
  Rng rng(4);
  const auto a = random_unitary(2, rng);
  const auto b = random_unitary(2, rng);
  const auto psi = random_state(2, rng);
  const std::vector<Propagator> seq{a, b};
  const auto expected = quantum::apply(b, quantum::apply(a, psi));
  const auto got = quantum::apply_all(seq, psi);
  for (std::size_t i = 0; i < 2; ++i) CHECK(std::abs(got[i] - expected[i]) < 1e-15);
}

TEST_CASE("populations") {
  const auto p = quantum::populations(QuantumState::basis(3, 0));
  CHECK(p == std::vector<double>{1.0, 0.0, 0.0});
  const auto q = quantum::populations(QuantumState{kInvSqrt2, kInvSqrt2});
  CHECK(q[0] == doctest::Approx(0.5));
  CHECK(q[1] == doctest::Approx(0.5));
}

TEST_CASE("transition landscape") {
  const std::vector<Propagator> id{Propagator::identity(3)};
  CHECK(quantum::transition_landscape(id, QuantumState::basis(3, 1), QuantumState::basis(3, 1)) ==
        doctest::Approx(1.0));
  CHECK(quantum::transition_landscape(id, QuantumState::basis(3, 0), QuantumState::basis(3, 2)) == 0.0);

  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Propagator> seq;
    auto total = linalg::ComplexMatrix::identity(3);
    for (int i = 0; i < 10; ++i) {
      seq.push_back(random_unitary(3, rng));
      total = linalg::mat_mul(seq.back().matrix(), total);
    }
    const auto psi0 = random_state(3, rng);
    const auto psif = random_state(3, rng);
    const double j = quantum::transition_landscape(seq, psi0, psif);
    CHECK(std::abs(j - density_matrix_overlap(total, psi0, psif)) < 1e-10);
    const double f = quantum::fidelity(quantum::apply_all(seq, psi0), psif);
    CHECK(std::abs(j - f * f) < 1e-12);
  }
}

TEST_CASE("StateBuffer tracks apply") {
  Rng rng(6);
  const auto psi = random_state(3, rng);
  quantum::StateBuffer buf(psi);
  auto ref = psi;
  for (int i = 0; i < 200; ++i) {
    const auto u = random_unitary(3, rng);
    buf.apply(u);
    ref = quantum::apply(u, ref);
  }
  const auto got = buf.state();
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(got[i] - ref[i]) < 1e-12);
  CHECK(std::abs(buf.norm() - 1.0) < 1e-12);
  CHECK(buf.fidelity_to(ref) == doctest::Approx(1.0));
}
