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

#include "dsre/bcft.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "dsre/theta.hpp"

using namespace dsre;

TEST_CASE("eta and theta series against their product forms") {
  for (double q : {0.02, 0.1, 0.3, 0.55}) {
    CHECK(dedekind_eta(q) == Catch::Approx(dedekind_eta_product(q)).epsilon(1e-13));
    CHECK(theta2(q) == Catch::Approx(theta2_product(q)).epsilon(1e-13));
    CHECK(theta3(q) == Catch::Approx(theta3_product(q)).epsilon(1e-13));
    CHECK(theta4(q) == Catch::Approx(theta4_product(q)).epsilon(1e-13));
  }
}

TEST_CASE("leading small-q behavior of eta") {
  const double q = 1e-8;
  CHECK(dedekind_eta(q) / std::pow(q, 1.0 / 24) == Catch::Approx(1.0).margin(1e-7));
}

TEST_CASE("classical identity theta2 theta3 theta4 = 2 eta^3") {
  for (double q : {0.1, 0.3}) {
    const double lhs = theta2(q) * theta3(q) * theta4(q);
    const double rhs = 2.0 * std::pow(dedekind_eta(q), 3);
    CHECK(lhs == Catch::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("two-argument thetas reduce to the constants at y = 1") {
  for (double q : {0.1, 0.4}) {
    CHECK(theta2_arg(1.0, q) == Catch::Approx(theta2(q)).epsilon(1e-13));
    CHECK(theta4_arg(1.0, q) == Catch::Approx(theta4(q)).epsilon(1e-13));
  }
}

TEST_CASE("nome domain and truncation guards") {
  CHECK_THROWS_AS(dedekind_eta(0.0), std::domain_error);
  CHECK_THROWS_AS(dedekind_eta(1.0), std::domain_error);
  CHECK_THROWS_AS(theta2(-0.1), std::domain_error);
  CHECK_THROWS_AS(dedekind_eta(0.99999), std::runtime_error);
  CHECK_THROWS_AS(theta2_arg(-1.0, 0.1), std::domain_error);
}

TEST_CASE("corner exponent formula") {
  CHECK(corner_exponent(4.0, M_PI / 2, 1.0 / 16) == Catch::Approx(-0.125).margin(1e-15));
  for (int alpha : {2, 3, 4}) {
    const double c = 2.0 * alpha;
    CHECK(corner_exponent(c, M_PI / 2, 1.0 / 16) ==
          Catch::Approx((1.0 - alpha) / 8.0).margin(1e-14));
    CHECK(corner_exponent(c, M_PI / 2, alpha / 16.0) == Catch::Approx(0.0).margin(1e-14));
  }
  CHECK(corner_exponent(7.3, M_PI, 0.0) == Catch::Approx(0.0).margin(1e-15));
  CHECK_THROWS_AS(corner_exponent(1.0, 0.0, 0.0), std::domain_error);
}

TEST_CASE("Casimir energy and g-factors") {
  CHECK(casimir_energy(4, 1.0) == Catch::Approx(-2.0 * M_PI / 3.0).margin(1e-15));
  CHECK(casimir_energy(1, 2.0) == Catch::Approx(-M_PI / 12.0).margin(1e-15));
  CHECK(g_factor_dirichlet(1, 1.0) == Catch::Approx(std::pow(4.0, -0.25)).margin(1e-15));
  CHECK(g_factor_neumann(1.0) == Catch::Approx(1.0));
  CHECK(g_factor_neumann(2.0) == Catch::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(casimir_energy(0, 1.0), std::domain_error);
}

TEST_CASE("modular self-consistency of the Dirichlet-Neumann block") {
  // z_DN(q) = sqrt(eta(q)/theta2(q)) equals eta(qt)^{-1} sum qt^{(n-1/2)^2/4}
  // at the matched nome pair.
  for (double t : {0.8, 1.0, 1.3}) {
    const double q = std::exp(-2.0 * M_PI * t);
    const double qt = qtilde_from_q(q);
    CHECK(qt == Catch::Approx(std::exp(-2.0 * M_PI / t)).epsilon(1e-12));
    const double lhs = z_dn_block(q);
    double series = 0.0;
    for (int n = 1; n < 40; ++n) series += std::pow(qt, (n - 0.5) * (n - 0.5) / 4.0);
    const double rhs = series / dedekind_eta(qt);
    CHECK(lhs == Catch::Approx(rhs).margin(1e-10));
  }
  // and the quoted form sqrt(eta/theta4)(qt) = theta2(qt^{1/2}) / (2 eta(qt))
  for (double qt : {0.05, 0.2}) {
    CHECK(std::sqrt(dedekind_eta(qt) / theta4(qt)) ==
          Catch::Approx(theta2(std::sqrt(qt)) / (2.0 * dedekind_eta(qt))).epsilon(1e-12));
  }
}

TEST_CASE("amplitudes are finite and positive at alpha = 1..3") {
  for (int alpha : {1, 2, 3}) {
    const auto f = amplitude_z1f(0.1, alpha);
    const auto u = amplitude_z1up(0.1, alpha);
    CHECK(f.value > 0.0);
    CHECK(u.value > 0.0);
    CHECK(std::isfinite(f.value));
    CHECK(std::isfinite(u.value));
  }
}

TEST_CASE("leading weight extraction on constructed input") {
  // Z = qt^{1/16 - c/24} (1 + qt) with c = 4
  const double c = 4.0;
  std::vector<std::pair<double, double>> samples;
  for (double qt : {1e-4, 1e-5, 1e-6, 1e-7}) {
    samples.emplace_back(qt, std::pow(qt, 1.0 / 16 - c / 24.0) * (1.0 + qt));
  }
  const auto w = leading_weight(samples, c);
  CHECK(w.h_estimate == Catch::Approx(1.0 / 16).margin(1e-6));

  // constant Z has weight c/24 exactly
  std::vector<std::pair<double, double>> flat = {{1e-4, 2.0}, {1e-5, 2.0}, {1e-6, 2.0}};
  CHECK(leading_weight(flat, c).h_estimate == Catch::Approx(c / 24.0).margin(1e-12));

  const std::vector<std::pair<double, double>> two = {{1e-4, 1.0}, {1e-5, 1.0}};
  CHECK_THROWS_AS(leading_weight(two, c), std::invalid_argument);
  const std::vector<std::pair<double, double>> neg = {{1e-4, -1.0}, {1e-5, 1.0}, {1e-6, 1.0}};
  CHECK_THROWS_AS(leading_weight(neg, c), std::invalid_argument);
}

TEST_CASE("h = 1/16 from the orbifold amplitudes at alpha = 2") {
  const int alpha = 2;
  const double c = 2.0 * alpha;  // N free bosons
  std::vector<std::pair<real50, real50>> f_samples, u_samples;
  for (int k = 10; k <= 22; k += 4) {
    const real50 qt = pow(real50(10), -k);
    f_samples.emplace_back(qt, amplitude_z1f(qt, alpha).value);
    u_samples.emplace_back(qt, amplitude_z1up(qt, alpha).value);
  }
  const auto hf = leading_weight(f_samples, c);
  const auto hu = leading_weight(u_samples, c);
  CHECK(hf.h_estimate == Catch::Approx(1.0 / 16).margin(1e-4));
  CHECK(hu.h_estimate == Catch::Approx(1.0 / 16).margin(1e-4));
}

TEST_CASE("Cardy consistency: character coefficients are nonnegative integers") {
  for (auto which : {BoundaryAmplitude::Z1Free, BoundaryAmplitude::Z1Up}) {
    const auto levels = character_levels(which, 1, 5);
    REQUIRE(levels.size() == 5);
    CHECK(levels.front().h == Catch::Approx(1.0 / 16).margin(1e-12));
    for (const auto& lvl : levels) {
      const double nearest = std::round(lvl.coefficient);
      INFO("h = " << lvl.h << " coeff = " << lvl.coefficient);
      CHECK(std::abs(lvl.coefficient - nearest) < 1e-8);
      CHECK(nearest >= -1e-8);
    }
  }
}

TEST_CASE("amplitude truncation bound is tracked") {
  const auto f = amplitude_z1f(0.3, 1);
  CHECK(f.terms > 0);
  CHECK(f.truncation_bound >= 0.0);
  CHECK(f.truncation_bound < 1e-10 * f.value);
}
