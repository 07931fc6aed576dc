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

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "dsre/pauli.hpp"

namespace dsre {

struct SolveOptions {
  double tol = 1e-10;       // residual tolerance ||Hv - Ev||
  int max_iter = 500;       // Lanczos iteration cap per eigenpair
  uint64_t seed = 0x5eed;   // deterministic start vector
  int max_sites = 14;       // refuse larger problems unless overridden
  int dense_max_sites = 8;  // dense path for small chains
  bool force_dense = false;
  bool force_lanczos = false;
  // Restrict to an eigensector of the global spin flip prod_j X_j (+1 or -1).
  // Requires a Hamiltonian commuting with the flip.
  std::optional<int> spin_flip_sector;
};

struct SpectrumResult {
  std::vector<double> energies;     // ascending
  std::vector<StateVector> states;  // gauge-fixed, orthonormal
  double gap = 0.0;                 // E_1 - E_0 (0 when k == 1)
  bool degenerate = false;          // gap < 1e-8 * max(1, |E_0|)
  int iterations = 0;
  double max_residual = 0.0;
};

namespace detail {

// Largest-magnitude amplitude made real positive, so runs are reproducible.
inline void gauge_fix(StateVector& v) {
  size_t best = 0;
  double best_mag = 0.0;
  for (size_t i = 0; i < v.amps.size(); ++i) {
    const double m = std::abs(v.amps[i]);
    if (m > best_mag + 1e-15) {
      best_mag = m;
      best = i;
    }
  }
  if (best_mag < 1e-300) return;
  const std::complex<double> phase = std::conj(v.amps[best]) / best_mag;
  for (auto& a : v.amps) a *= phase;
  v.real_valued = v.check_real(1e-12);
  if (v.real_valued) {
    for (auto& a : v.amps) a = std::complex<double>(a.real(), 0.0);
  }
}

inline void spin_flip_project(std::vector<double>& v, int sector) {
  const size_t dim = v.size();
  const size_t mask = dim - 1;
  for (size_t i = 0; i < dim; ++i) {
    const size_t j = (~i) & mask;
    if (j < i) continue;
    const double a = v[i], b = v[j];
    if (sector > 0) {
      const double s = 0.5 * (a + b);
      v[i] = s;
      v[j] = s;
    } else {
      const double s = 0.5 * (a - b);
      v[i] = s;
      v[j] = -s;
    }
  }
}

struct LanczosConfig {
  double tol;
  int max_iter;
  std::optional<int> sector;
  double scale;
};

// Lowest eigenpair of h on the orthogonal complement of `deflate`.
// Full reorthogonalization against both the Krylov basis and the deflated
// vectors keeps the iteration exact in the presence of degeneracies.
inline std::pair<double, std::vector<double>> lanczos_lowest(
    const PauliSum& h, const std::vector<std::vector<double>>& deflate,
    const std::vector<double>& start, const LanczosConfig& cfg, int* iterations_out) {
  const size_t dim = size_t{1} << h.length;
  const auto project = [&](std::vector<double>& w) {
    if (cfg.sector) spin_flip_project(w, *cfg.sector);
    for (const auto& u : deflate) {
      double d = 0.0;
      for (size_t i = 0; i < dim; ++i) d += u[i] * w[i];
      for (size_t i = 0; i < dim; ++i) w[i] -= d * u[i];
    }
  };

  std::vector<std::vector<double>> basis;
  std::vector<double> alpha, beta;
  std::vector<double> v = start;
  project(v);
  double n2 = 0.0;
  for (double x : v) n2 += x * x;
  if (n2 < 1e-12) throw std::runtime_error("Lanczos start vector vanished under projection");
  for (auto& x : v) x /= std::sqrt(n2);
  basis.push_back(v);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
  std::vector<double> w(dim);
  const auto tridiag = [&](int m) {
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      T(i, i) = alpha[static_cast<size_t>(i)];
      if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[static_cast<size_t>(i)];
    }
    tri.compute(T);
  };

  int it = 0;
  while (it < cfg.max_iter) {
    ++it;
    std::fill(w.begin(), w.end(), 0.0);
    apply_sum_real(h, basis.back().data(), w.data(), dim);
    double a = 0.0;
    for (size_t i = 0; i < dim; ++i) a += basis.back()[i] * w[i];
    alpha.push_back(a);
    project(w);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : basis) {
        double d = 0.0;
        for (size_t i = 0; i < dim; ++i) d += u[i] * w[i];
        for (size_t i = 0; i < dim; ++i) w[i] -= d * u[i];
      }
    }
    double b2 = 0.0;
    for (double x : w) b2 += x * x;
    double b = std::sqrt(b2);

    const int m = static_cast<int>(alpha.size());
    const bool exhausted = b < 1e-13 * cfg.scale ||
                           basis.size() + deflate.size() >= dim;
    if (m % 5 == 0 || exhausted || it == cfg.max_iter) {
      tridiag(m);
      const double est = b * std::abs(tri.eigenvectors().col(0)[m - 1]);
      if (est < cfg.tol * cfg.scale || exhausted) break;
    }
    beta.push_back(b);
    for (auto& x : w) x /= b;
    basis.push_back(w);
  }

  const int m = static_cast<int>(alpha.size());
  tridiag(m);
  if (iterations_out) *iterations_out += m;
  std::vector<double> out(dim, 0.0);
  for (int j = 0; j < m; ++j) {
    const double cj = tri.eigenvectors().col(0)[j];
    const auto& u = basis[static_cast<size_t>(j)];
    for (size_t r = 0; r < dim; ++r) out[r] += cj * u[r];
  }
  double on2 = 0.0;
  for (double x : out) on2 += x * x;
  for (auto& x : out) x /= std::sqrt(on2);
  return {tri.eigenvalues()[0], std::move(out)};
}

}  // namespace detail

/// k lowest eigenpairs of a PauliSum, matrix-free. Real-symmetric sums use
/// Lanczos with full reorthogonalization and sequential deflation; small or
/// complex-Hermitian sums fall back to dense Eigen diagonalization.
inline SpectrumResult low_spectrum(const PauliSum& h, int k, const SolveOptions& opts = {}) {
  if (h.terms.empty()) throw std::invalid_argument("empty Hamiltonian");
  if (k < 1) throw std::invalid_argument("need k >= 1 eigenpairs");
  if (h.length > opts.max_sites) {
    throw std::invalid_argument("chain of " + std::to_string(h.length) +
                                " sites exceeds the solver cap of " +
                                std::to_string(opts.max_sites));
  }
  const size_t dim = size_t{1} << h.length;
  if (static_cast<size_t>(k) > dim) throw std::invalid_argument("k exceeds Hilbert dimension");
  if (opts.spin_flip_sector) {
    if (*opts.spin_flip_sector != 1 && *opts.spin_flip_sector != -1) {
      throw std::invalid_argument("spin_flip_sector must be +1 or -1");
    }
    // prod_j X_j flips each term by (-1)^{z count}
    for (const auto& t : h.terms) {
      if (std::popcount(t.z_bits) & 1) {
        throw std::invalid_argument(
            "Hamiltonian does not commute with the global spin flip; sector selection is "
            "not available");
      }
    }
  }
  const bool real_matrix = is_real_matrix(h);
  const bool use_dense = !opts.force_lanczos && !opts.spin_flip_sector &&
                         (opts.force_dense || h.length <= opts.dense_max_sites || !real_matrix);
  SpectrumResult res;

  if (use_dense) {
    if (!real_matrix && h.length > opts.dense_max_sites) {
      throw std::invalid_argument("complex-Hermitian sums are limited to the dense path");
    }
    Eigen::MatrixXcd m(dim, dim);
    for (size_t c = 0; c < dim; ++c) {
      StateVector col = apply_sum(h, StateVector::basis_state(h.length, c));
      for (size_t r = 0; r < dim; ++r) {
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = col.amps[r];
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    if (es.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
    for (int i = 0; i < k; ++i) {
      res.energies.push_back(es.eigenvalues()[i]);
      StateVector v(h.length);
      for (size_t r = 0; r < dim; ++r) {
        v.amps[r] = es.eigenvectors().col(i)[static_cast<Eigen::Index>(r)];
      }
      detail::gauge_fix(v);
      res.states.push_back(std::move(v));
    }
  } else {
    if (!real_matrix) throw std::invalid_argument("Lanczos path requires a real-symmetric sum");
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double scale = 0.0;
    for (const auto& t : h.terms) scale += std::abs(t.coeff);
    detail::LanczosConfig cfg{opts.tol, opts.max_iter, opts.spin_flip_sector,
                              std::max(scale, 1.0)};
    std::vector<std::vector<double>> found;
    for (int i = 0; i < k; ++i) {
      std::vector<double> start(dim);
      for (auto& x : start) x = gauss(rng);
      auto [e, vec] = detail::lanczos_lowest(h, found, start, cfg, &res.iterations);
      res.energies.push_back(e);
      found.push_back(std::move(vec));
    }
    for (int i = 0; i < k; ++i) {
      StateVector sv(h.length);
      for (size_t r = 0; r < dim; ++r) sv.amps[r] = found[static_cast<size_t>(i)][r];
      sv.real_valued = true;
      detail::gauge_fix(sv);
      res.states.push_back(std::move(sv));
    }
    // Deflation returns ascending energies by construction; enforce order.
    for (int i = 1; i < k; ++i) {
      if (res.energies[static_cast<size_t>(i)] < res.energies[static_cast<size_t>(i - 1)] - 1e-9) {
        throw std::runtime_error("Lanczos deflation produced out-of-order energies");
      }
    }
  }

  double worst = 0.0;
  for (int i = 0; i < k; ++i) {
    StateVector hv = apply_sum(h, res.states[static_cast<size_t>(i)]);
    double r2 = 0.0;
    for (size_t j = 0; j < dim; ++j) {
      r2 += std::norm(hv.amps[j] -
                      res.energies[static_cast<size_t>(i)] * res.states[static_cast<size_t>(i)].amps[j]);
    }
    worst = std::max(worst, std::sqrt(r2));
  }
  res.max_residual = worst;
  if (worst > 1e-8 * std::max(1.0, std::abs(res.energies[0]))) {
    throw std::runtime_error("eigensolver did not converge: residual " + std::to_string(worst));
  }
  if (k >= 2) {
    res.gap = res.energies[1] - res.energies[0];
    res.degenerate = res.gap < 1e-8 * std::max(1.0, std::abs(res.energies[0]));
  }
  return res;
}

/// Ground state plus the first excitation (k = 2), exposing gap/degeneracy.
inline SpectrumResult ground_state(const PauliSum& h, const SolveOptions& opts = {}) {
  const size_t dim = size_t{1} << h.length;
  return low_spectrum(h, dim >= 2 ? 2 : 1, opts);
}

}  // namespace dsre
