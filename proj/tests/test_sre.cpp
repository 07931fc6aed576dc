// Copyright 2026 The dsre authors
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

#include "dsre/sre.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <random>

#include "dsre/eigensolver.hpp"
#include "dsre/hamiltonians.hpp"
#include "test_util.hpp"

using namespace dsre;

namespace {

StateVector t_state() {
  StateVector t(1);
  t.amps[0] = 1.0 / std::sqrt(2.0);
  t.amps[1] = std::polar(1.0 / std::sqrt(2.0), M_PI / 4);
  return t;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  StateVector out(a.length + b.length);
  for (size_t j = 0; j < b.dim(); ++j) {
    for (size_t i = 0; i < a.dim(); ++i) {
      out.amps[(j << a.length) | i] = a.amps[i] * b.amps[j];
    }
  }
  return out;
}

}  // namespace

TEST_CASE("bell index packing round-trips") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 100; ++rep) {
    const uint64_t x = rng() & 0xFFFFFF, z = rng() & 0xFFFFFF;
    const auto [ux, uz] = bell_unpack(bell_index(x, z));
    CHECK(ux == x);
    CHECK(uz == z);
  }
}

TEST_CASE("|0> Bell distribution: half identity, half Z") {
  const auto d = bell_distribution(StateVector::basis_state(1, 0));
  REQUIRE(d.probabilities.size() == 4);
  CHECK(d.probabilities[bell_index(0, 0)] == Catch::Approx(0.5));
  CHECK(d.probabilities[bell_index(0, 1)] == Catch::Approx(0.5));
  CHECK(d.probabilities[bell_index(1, 0)] == Catch::Approx(0.0).margin(1e-15));
  CHECK(d.probabilities[bell_index(1, 1)] == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("stabilizer states occupy exactly 2^L uniform entries") {
  std::mt19937_64 rng(11);
  for (int L : {2, 4, 6}) {
    const auto psi = dsre_test::random_stabilizer_state(L, 30, rng);
    const auto d = bell_distribution(psi);
    const double uniform = 1.0 / static_cast<double>(uint64_t{1} << L);
    uint64_t support = 0;
    for (double p : d.probabilities) {
      if (p > 1e-12) {
        CHECK(p == Catch::Approx(uniform).epsilon(1e-9));
        ++support;
      }
    }
    CHECK(support == (uint64_t{1} << L));
  }
}

TEST_CASE("Bell distribution equals squared per-string expectations") {
  std::mt19937_64 rng(13);
  for (int L : {2, 3, 4, 5}) {
    const auto psi = dsre_test::random_state(L, rng);
    const auto d = bell_distribution(psi);
    const double denom = static_cast<double>(uint64_t{1} << L);
    for (uint64_t m = 0; m < d.probabilities.size(); ++m) {
      const auto [x, z] = bell_unpack(m);
      const PauliString p{L, x, z, static_cast<uint8_t>(std::popcount(x & z) & 3)};
      const double want = expectation(psi, p);
      CHECK(d.probabilities[m] == Catch::Approx(want * want / denom).margin(1e-12));
    }
  }
}

TEST_CASE("ground-state distribution matches the expectation oracle at L = 4") {
  const auto h = build(DefectSpec{}, 4);
  const auto gs = ground_state(h).states[0];
  const auto d = bell_distribution(gs);
  for (uint64_t m = 0; m < d.probabilities.size(); ++m) {
    const auto [x, z] = bell_unpack(m);
    const PauliString p{4, x, z, static_cast<uint8_t>(std::popcount(x & z) & 3)};
    const double e = expectation(gs, p);
    CHECK(d.probabilities[m] == Catch::Approx(e * e / 16.0).margin(1e-12));
  }
}

TEST_CASE("SRE of named states") {
  SECTION("|+>^L is a stabilizer state") {
    StateVector plus(3);
    for (auto& a : plus.amps) a = 1.0 / std::sqrt(8.0);
    CHECK(std::abs(sre(plus, 2.0).value) < 1e-12);
    CHECK(is_stabilizer(plus));
  }
  SECTION("T state carries -ln(3/4) at alpha = 2") {
    CHECK(sre(t_state(), 2.0).value == Catch::Approx(-std::log(0.75)).epsilon(1e-12));
    CHECK_FALSE(is_stabilizer(t_state()));
  }
  SECTION("GHZ is a stabilizer state") {
    StateVector ghz(3);
    ghz.amps[0] = ghz.amps[7] = 1.0 / std::sqrt(2.0);
    CHECK(is_stabilizer(ghz));
  }
  SECTION("random Clifford orbit of |0...0> stays at zero magic") {
    std::mt19937_64 rng(17);
    const auto psi = dsre_test::random_stabilizer_state(6, 40, rng);
    CHECK(std::abs(sre(psi, 2.0).value) < 1e-12);
  }
}

TEST_CASE("additivity on product states") {
  std::mt19937_64 rng(19);
  for (int rep = 0; rep < 5; ++rep) {
    const auto a = dsre_test::random_state(2, rng);
    const auto b = dsre_test::random_state(3, rng);
    const auto ab = tensor(a, b);
    for (double alpha : {2.0, 3.0}) {
      CHECK(sre(ab, alpha).value ==
            Catch::Approx(sre(a, alpha).value + sre(b, alpha).value).margin(1e-10));
    }
  }
  // T state padded with stabilizer qubits keeps its single-qubit value.
  const auto padded = tensor(t_state(), StateVector::basis_state(2, 0));
  CHECK(sre(padded, 2.0).value == Catch::Approx(-std::log(0.75)).margin(1e-10));
}

TEST_CASE("direct enumeration oracle cross-validates the transform") {
  std::mt19937_64 rng(23);
  for (int L : {2, 3, 4, 5, 6}) {
    for (int rep = 0; rep < (L <= 4 ? 4 : 2); ++rep) {
      const auto psi = dsre_test::random_state(L, rng);
      for (double alpha : {2.0, 3.0}) {
        CHECK(sre(psi, alpha).value ==
              Catch::Approx(sre_direct_oracle(psi, alpha).value).margin(1e-10));
      }
    }
  }
  CHECK(std::abs(sre_direct_oracle(StateVector::basis_state(3, 0), 2.0).value) < 1e-12);
}

TEST_CASE("fractional alpha is accepted and consistent with the oracle") {
  std::mt19937_64 rng(27);
  const auto psi = dsre_test::random_state(3, rng);
  CHECK(sre(psi, 2.5).value == Catch::Approx(sre_direct_oracle(psi, 2.5).value).margin(1e-10));
  CHECK_THROWS_AS(sre(psi, 1.0), std::domain_error);
  CHECK_THROWS_AS(sre(psi, 0.0), std::domain_error);
}

TEST_CASE("Clifford invariance of the SRE") {
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 10; ++rep) {
    const int L = 4 + static_cast<int>(rng() % 3);  // 4..6
    const auto psi = dsre_test::random_state(L, rng);
    const auto gates = dsre_test::random_gates(L, 25, rng);
    const auto moved = dsre_test::apply_gates_dense(psi, gates);
    CHECK(sre(moved, 2.0).value == Catch::Approx(sre(psi, 2.0).value).margin(1e-9));
  }
}

TEST_CASE("real fast path agrees with the complex path") {
  std::mt19937_64 rng(31);
  StateVector psi(5);
  std::normal_distribution<double> g(0.0, 1.0);
  for (auto& a : psi.amps) a = g(rng);  // real amplitudes
  psi.normalize();
  StateVector forced = psi;
  forced.amps[0] += std::complex<double>(0, 1e-13);  // break exact realness
  forced.normalize();
  const auto dr = bell_distribution(psi);
  const auto dc = bell_distribution(forced);
  for (size_t i = 0; i < dr.probabilities.size(); ++i) {
    CHECK(dr.probabilities[i] == Catch::Approx(dc.probabilities[i]).margin(1e-10));
  }
}

TEST_CASE("memory cap raises a resource error carrying the byte count") {
  SreOptions opts;
  opts.max_sites = 3;
  const auto psi = StateVector::basis_state(4, 0);
  try {
    bell_distribution(psi, opts);
    FAIL("expected resource_error");
  } catch (const resource_error& e) {
    CHECK(e.required_bytes == (uint64_t{1} << 8) * 8);
  }
}

TEST_CASE("fusion SRE identity: two duality defects vs the shorter chain") {
  for (int L : {6, 8}) {
    const auto hdd = build_named(NamedHamiltonian::DualityDuality, L);
    const auto ht = remove_site(build_named(NamedHamiltonian::TMinus, L), 1);
    const auto a = sre(ground_state(hdd).states[0], 2.0).value;
    const auto b = sre(ground_state(ht).states[0], 2.0).value;
    CHECK(a == Catch::Approx(b).margin(1e-7));
  }
}

TEST_CASE("magic density of the critical chain grows toward saturation") {
  std::vector<double> density;
  for (int L : {6, 8, 10}) {
    SolveOptions opts;
    opts.force_lanczos = L > 8;
    const auto gs = ground_state(build(DefectSpec{}, L), opts).states[0];
    density.push_back(sre(gs, 2.0).value / L);
  }
  CHECK(density[1] > density[0]);
  CHECK(density[2] > density[1]);
}

TEST_CASE("SREP dump round-trips") {
  std::mt19937_64 rng(37);
  const auto psi = dsre_test::random_state(3, rng);
  const auto d = bell_distribution(psi);
  const std::string path = "/tmp/dsre_test_dump.srep";
  write_bell_dump(path, d);
  const auto back = read_bell_dump(path);
  REQUIRE(back.length == 3);
  for (size_t i = 0; i < d.probabilities.size(); ++i) {
    CHECK(back.probabilities[i] == d.probabilities[i]);
  }
  std::remove(path.c_str());
  CHECK_THROWS(read_bell_dump("/tmp/definitely_missing.srep"));
}

TEST_CASE("normalization guard rejects unnormalized states") {
  StateVector bad(2);
  bad.amps[0] = 1.0;
  bad.amps[1] = 0.5;
  CHECK_THROWS(bell_distribution(bad));
}
