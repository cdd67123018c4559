// Copyright 2025-2026 The evoqk developers.
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
#include "evoqk/errors.hpp"
#include "evoqk/kernels.hpp"
#include "fixtures.hpp"
#include "reference.hpp"

using namespace evoqk;
using std::numbers::pi;

namespace {

CircuitGenome rx_1q() {
  CircuitGenome g = CircuitGenome::identity(1, 1);
  g.at(0, 0) = {GateKind::Rx, -1};
  return g;
}

Matrix random_samples(int m, int f, RngStream& rng) {
  Matrix x(m, f);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < f; ++j) x(i, j) = rng.next_unit() * pi;
  return x;
}

}  // namespace

TEST_CASE("fqk equals one for identical points and zero for orthogonal states") {
  const std::vector<double> a{0.0}, b{pi};
  CHECK(fqk(rx_1q(), a, a) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fqk(rx_1q(), a, b) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("fqk matches the compute-uncompute oracle") {
  RngStream rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + rng.next_int(4);
    const CircuitGenome g = fixtures::random_genome(n, 1 + rng.next_int(5), rng);
    const auto xi = fixtures::random_angles(n, rng);
    const auto xj = fixtures::random_angles(n, rng);
    CHECK(fqk(g, xi, xj) == doctest::Approx(refq::fqk_uncompute(g, xi, xj)).epsilon(1e-10));
  }
}

TEST_CASE("pqk closed-form value on one qubit") {
  const std::vector<double> a{0.0}, b{pi};
  // RDMs are |0><0| and |1><1|: squared Frobenius distance 2, so exp(-2).
  CHECK(pqk(rx_1q(), a, b, 1.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
  CHECK(pqk(rx_1q(), a, a, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("doubling pqk gamma squares the entry") {
  RngStream rng(103);
  const CircuitGenome g = fixtures::random_genome(3, 4, rng);
  const auto xi = fixtures::random_angles(3, rng);
  const auto xj = fixtures::random_angles(3, rng);
  const double k1 = pqk(g, xi, xj, 0.7);
  const double k2 = pqk(g, xi, xj, 1.4);
  CHECK(k2 == doctest::Approx(k1 * k1).epsilon(1e-12));
}

TEST_CASE("pqk matches the brute-force density-matrix oracle") {
  RngStream rng(107);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + rng.next_int(4);
    const CircuitGenome g = fixtures::random_genome(n, 1 + rng.next_int(5), rng);
    const auto xi = fixtures::random_angles(n, rng);
    const auto xj = fixtures::random_angles(n, rng);
    const double gamma = 0.25 + rng.next_unit() * 2.0;
    CHECK(pqk(g, xi, xj, gamma) ==
          doctest::Approx(refq::pqk_ref(g, xi, xj, gamma)).epsilon(1e-10));
  }
}

TEST_CASE("rbf closed forms and symmetry") {
  const std::vector<double> a{0.0}, b{1.0};
  CHECK(rbf(a, a, 1.0) == doctest::Approx(1.0));
  CHECK(rbf(a, b, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  RngStream rng(109);
  const auto u = fixtures::random_angles(4, rng);
  const auto v = fixtures::random_angles(4, rng);
  CHECK(rbf(u, v, 0.8) == rbf(v, u, 0.8));
  CHECK_THROWS_AS(rbf(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}, 1.0),
                  InternalError);
}

TEST_CASE("gram on a single sample is the 1x1 identity") {
  const GramMatrix g = gram(KernelSpec::rbf(1.0), Matrix(1, 2, 0.5));
  CHECK(g.size() == 1);
  CHECK(g.entries(0, 0) == 1.0);
}

TEST_CASE("duplicated sample rows give unit off-diagonal entries") {
  RngStream rng(113);
  const CircuitGenome circ = fixtures::random_genome(2, 3, rng);
  Matrix x(3, 2);
  for (int j = 0; j < 2; ++j) x(0, j) = x(2, j) = 0.4 + 0.1 * j;
  x(1, 0) = 1.9;
  x(1, 1) = 2.4;
  const GramMatrix g = gram(KernelSpec::fqk(circ), x);
  CHECK(g.entries(0, 2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g.entries(2, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gram matches the naive double loop entrywise") {
  RngStream rng(127);
  const CircuitGenome circ = fixtures::random_genome(3, 4, rng);
  const Matrix x = random_samples(10, 3, rng);
  for (const KernelSpec& spec :
       {KernelSpec::fqk(circ), KernelSpec::pqk(circ, 0.9), KernelSpec::rbf(0.6)}) {
    const GramMatrix g = gram(spec, x);
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) {
        std::span<const double> xi{x.row_ptr(i), 3};
        std::span<const double> xj{x.row_ptr(j), 3};
        double expect = 0.0;
        switch (spec.kind) {
          case KernelKind::Fqk: expect = fqk(circ, xi, xj); break;
          case KernelKind::Pqk: expect = pqk(circ, xi, xj, spec.gamma); break;
          case KernelKind::Rbf: expect = rbf(xi, xj, spec.gamma); break;
        }
        if (i == j) CHECK(g.entries(i, j) == 1.0);  // pinned exactly
        else CHECK(g.entries(i, j) == doctest::Approx(expect).epsilon(1e-12));
        CHECK(g.entries(i, j) == g.entries(j, i));
      }
    }
  }
}

TEST_CASE("quantum grams are positive semidefinite") {
  RngStream rng(131);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + rng.next_int(3);
    const CircuitGenome circ = fixtures::random_genome(n, 1 + rng.next_int(4), rng);
    const Matrix x = random_samples(12, n, rng);
    for (const KernelSpec& spec : {KernelSpec::fqk(circ), KernelSpec::pqk(circ, 1.3)}) {
      const GramMatrix g = gram(spec, x);
      CHECK(min_eigenvalue(g.entries) >= -1e-8);
      assert_psd_guard(g);
    }
  }
}

TEST_CASE("permuting samples permutes the gram identically") {
  RngStream rng(137);
  const CircuitGenome circ = fixtures::random_genome(2, 3, rng);
  const Matrix x = random_samples(6, 2, rng);
  const std::vector<int> perm{3, 0, 5, 1, 4, 2};
  Matrix xp(6, 2);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 2; ++j) xp(i, j) = x(perm[i], j);
  const GramMatrix g = gram(KernelSpec::fqk(circ), x);
  const GramMatrix gp = gram(KernelSpec::fqk(circ), xp);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      CHECK(gp.entries(i, j) == doctest::Approx(g.entries(perm[i], perm[j])).epsilon(1e-14));
}

TEST_CASE("gram_cross agrees with per-entry kernels") {
  RngStream rng(139);
  const CircuitGenome circ = fixtures::random_genome(2, 3, rng);
  const Matrix xtr = random_samples(4, 2, rng);
  const Matrix xte = random_samples(3, 2, rng);
  const Matrix k = gram_cross(KernelSpec::fqk(circ), xtr, xte);
  REQUIRE(k.rows() == 4);
  REQUIRE(k.cols() == 3);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(k(i, j) == doctest::Approx(fqk(circ, {xtr.row_ptr(i), 2}, {xte.row_ptr(j), 2}))
                           .epsilon(1e-14));
}

TEST_CASE("z feature map layout") {
  const CircuitGenome g1 = z_feature_map(1, 1);
  CHECK(g1.depth == 2);
  CHECK(g1.at(0, 0).kind == GateKind::H);
  CHECK(g1.at(1, 0).kind == GateKind::Rz);

  const CircuitGenome g = z_feature_map(3, 2);
  CHECK(g.depth == 4);
  const GateCounts c = gate_counts(g);
  CHECK(c.h == 6);
  CHECK(c.rz == 6);
  CHECK(c.cx == 0);
}

TEST_CASE("zz feature map entangles every adjacent pair twice per rep") {
  const CircuitGenome g = zz_feature_map(2, 1);
  CHECK(cx_count(g) == 2);
  CHECK(!validate(g));
  const CircuitGenome g3 = zz_feature_map(3, 2);
  CHECK(cx_count(g3) == 8);  // 2 reps x 2 pairs x 2 CX
  CHECK(gate_counts(g3).h == 6);
}

TEST_CASE("psd guard raises on a matrix with a real negative eigenvalue") {
  GramMatrix g{Matrix(2, 2), KernelSpec::rbf(1.0)};
  g.entries(0, 0) = g.entries(1, 1) = 1.0;
  g.entries(0, 1) = g.entries(1, 0) = 1.1;  // eigenvalues 2.1 and -0.1
  CHECK_THROWS_AS(assert_psd_guard(g), InternalError);
}

TEST_CASE("rbf gamma scale convention") {
  Matrix x(3, 2);
  x(0, 0) = 0.0; x(0, 1) = 1.0;
  x(1, 0) = 2.0; x(1, 1) = 3.0;
  x(2, 0) = 4.0; x(2, 1) = 5.0;
  double mean = 2.5, var = 0.0;
  for (double v : x.data()) var += (v - mean) * (v - mean);
  var /= 6.0;
  CHECK(rbf_gamma_scale(x) == doctest::Approx(1.0 / (2 * var)).epsilon(1e-12));
  CHECK(rbf_gamma_scale(Matrix(3, 2, 1.0)) == 1.0);  // constant data
}

TEST_CASE("gram csv is full, row-major, 17 significant digits") {
  GramMatrix g{Matrix(2, 2), KernelSpec::rbf(1.0)};
  g.entries(0, 0) = g.entries(1, 1) = 1.0;
  g.entries(0, 1) = g.entries(1, 0) = 1.0 / 3.0;
  CHECK(gram_to_csv(g) == "1,0.33333333333333331\n0.33333333333333331,1\n");
}

TEST_CASE("kernel spec invariants are enforced") {
  CHECK_THROWS_AS(KernelSpec::pqk(CircuitGenome::identity(2, 1), -1.0).check(), ConfigError);
  KernelSpec bad = KernelSpec::rbf(1.0);
  bad.genome = CircuitGenome::identity(1, 1);
  CHECK_THROWS_AS(bad.check(), ConfigError);
  CHECK_THROWS_AS(parse_kernel_kind("linear"), ConfigError);
}
