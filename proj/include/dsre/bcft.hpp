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

// Boundary-CFT oracle for the N = 2 alpha component orbifold boson: the
// mixed Dirichlet/Neumann boundary amplitudes whose leading exponents give
// the boundary-operator weights, the corner-exponent formula, Casimir
// energy, and the Dirichlet/Neumann g-factors.
//
// Conventions. The compactification lattice is a square lattice of constant
// R (default 1). The Gamma_1 boundary keeps the center-of-mass direction
// d = (1,...,1) Neumann and the differences Dirichlet, so the dual-lattice
// sum runs over P_D Z^N, represented by vectors (n_1..n_{N-1}, 0), with
// P_D u = u - (sum u / N) d. The Z2 orbifold group G = {+-1}^N acts by
// component sign flips; its elements shift the lattice sum by P_D(a d)/4.

#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "dsre/theta.hpp"

namespace dsre {

using real50 = boost::multiprecision::cpp_bin_float_50;

/// Corner contribution gamma^{ab} = (c/24)(theta/pi - pi/theta) +
/// (pi/theta) h_ab for a corner of opening angle theta.
inline double corner_exponent(double central_charge, double theta, double h) {
  if (theta <= 0) throw std::domain_error("corner angle must be positive");
  const double pi = M_PI;
  return central_charge / 24.0 * (theta / pi - pi / theta) + pi / theta * h;
}

/// Ground-state (Casimir) energy of N free bosons on a ring: -pi N / (6 L).
inline double casimir_energy(int n_components, double circumference) {
  if (n_components < 1 || circumference <= 0) {
    throw std::domain_error("casimir_energy wants N >= 1, L > 0");
  }
  return -M_PI * n_components / (6.0 * circumference);
}

/// g_D = 4^{-N/4} v0^{-1/2} for a fully Dirichlet boundary state.
inline double g_factor_dirichlet(int n_components, double unit_cell_volume) {
  if (n_components < 1 || unit_cell_volume <= 0) {
    throw std::domain_error("g_factor_dirichlet wants N >= 1, v0 > 0");
  }
  return std::pow(4.0, -n_components / 4.0) / std::sqrt(unit_cell_volume);
}

/// g_N = v0^{1/2} for a fully Neumann boundary state.
inline double g_factor_neumann(double unit_cell_volume) {
  if (unit_cell_volume <= 0) throw std::domain_error("g_factor_neumann wants v0 > 0");
  return std::sqrt(unit_cell_volume);
}

template <class T>
struct Amplitude {
  T qtilde;
  T value;
  int terms = 0;          // lattice/series terms accumulated
  T truncation_bound{0};  // magnitude of the last discarded shell
};

namespace detail {

// sum_{n >= 1} qt^{(2n-1)^2/16}
template <class T>
T half_integer_block(const T& qt) {
  const T eps = series_eps<T>();
  using std::abs;
  using std::pow;
  T sum(0);
  for (int n = 1; n <= kSeriesMaxTerms; ++n) {
    const T term = pow(qt, T((2 * n - 1) * (2 * n - 1)) / 16);
    sum += term;
    if (abs(term) < eps * abs(sum)) return sum;
  }
  truncation_failure("half_integer_block");
}

// Lattice block sum_{v in P_D Z^N} qt^{2 | R P_D v - P_D(a d)/4 |^2} for a
// sign vector a, enumerated over representatives (n_1..n_{N-1}, 0) in
// max-norm shells until a shell falls below the truncation bound.
template <class T>
T lattice_block(const T& qt, int n_comp, uint32_t sign_bits, const T& radius, T* bound_out,
                int* terms_out) {
  const T eps = series_eps<T>();
  using std::abs;
  using std::pow;
  const int dims = n_comp - 1;
  std::vector<double> a(static_cast<size_t>(n_comp));
  for (int i = 0; i < n_comp; ++i) a[static_cast<size_t>(i)] = (sign_bits >> i) & 1 ? -1.0 : 1.0;

  T total(0);
  std::vector<int> v(static_cast<size_t>(dims), 0);
  const auto point_term = [&](const std::vector<int>& n) {
    // u = R v - a/4 with v_N = 0; E = 2(|u|^2 - (sum u)^2 / N)
    T norm2(0), usum(0);
    for (int i = 0; i < n_comp; ++i) {
      const T vi = (i < dims) ? radius * T(n[static_cast<size_t>(i)]) : T(0);
      const T ui = vi - T(a[static_cast<size_t>(i)]) / 4;
      norm2 += ui * ui;
      usum += ui;
    }
    const T expo = 2 * (norm2 - usum * usum / n_comp);
    return pow(qt, expo);
  };

  for (int shell = 0; shell <= 48; ++shell) {
    T shell_sum(0);
    int shell_terms = 0;
    if (dims == 0) {
      if (shell == 0) {
        shell_sum = point_term(v);
        shell_terms = 1;
      }
    } else {
      // odometer over the box [-shell, shell]^dims, keeping max-norm == shell
      std::vector<int> idx(static_cast<size_t>(dims), -shell);
      while (true) {
        int maxabs = 0;
        for (int i = 0; i < dims; ++i) maxabs = std::max(maxabs, std::abs(idx[static_cast<size_t>(i)]));
        if (maxabs == shell) {
          shell_sum += point_term(idx);
          ++shell_terms;
        }
        int pos = 0;
        while (pos < dims) {
          if (++idx[static_cast<size_t>(pos)] <= shell) break;
          idx[static_cast<size_t>(pos)] = -shell;
          ++pos;
        }
        if (pos == dims) break;
      }
    }
    total += shell_sum;
    if (terms_out) *terms_out += shell_terms;
    if (shell >= 1 && (shell_terms == 0 || abs(shell_sum) < eps * abs(total))) {
      if (bound_out) *bound_out = abs(shell_sum);
      return total;
    }
  }
  truncation_failure("lattice_block");
}

}  // namespace detail

/// Amplitude between the Bell-projection boundary Gamma_1 and the free-free
/// Cardy stack Gamma_f of the N = 2 alpha orbifold theory, as a function of
/// the open-string nome qtilde:
///   Z_1f = (1/2) sum_{a in G} eta^{-N} (sum_{n>=1} qt^{(n-1/2)^2/4})
///          sum_{v} qt^{2 (R P_D v - P_D(a d)/4)^2}.
/// Its leading exponent is h_1f - N/24 with h_1f = 1/16.
template <class T>
Amplitude<T> amplitude_z1f(const T& qtilde, int alpha, const T& radius = T(1)) {
  if (alpha < 1 || alpha > 3) throw std::domain_error("alpha must be 1, 2, or 3");
  detail::check_nome(qtilde);
  const int n_comp = 2 * alpha;
  Amplitude<T> out;
  out.qtilde = qtilde;
  const T eta_n = [&] {
    using std::pow;
    return pow(dedekind_eta(qtilde), n_comp);
  }();
  const T half_block = detail::half_integer_block(qtilde);
  T lattice_total(0);
  for (uint32_t a = 0; a < (uint32_t{1} << n_comp); ++a) {
    T bound(0);
    lattice_total += detail::lattice_block(qtilde, n_comp, a, radius, &bound, &out.terms);
    out.truncation_bound = std::max(out.truncation_bound, bound);
  }
  out.value = half_block * lattice_total / (2 * eta_n);
  return out;
}

/// Amplitude between Gamma_1 and the spin-up Cardy stack: the untwisted
/// block plus the twisted-sector block
///   (1/2) qt^{1/16} eta^{-N} theta4(qt^{1/2}, qt^2) theta4(qt^2)^{N-1}.
/// Both blocks open at h = 1/16.
template <class T>
Amplitude<T> amplitude_z1up(const T& qtilde, int alpha, const T& radius = T(1)) {
  if (alpha < 1 || alpha > 3) throw std::domain_error("alpha must be 1, 2, or 3");
  detail::check_nome(qtilde);
  const int n_comp = 2 * alpha;
  using std::pow;
  using std::sqrt;
  Amplitude<T> out;
  out.qtilde = qtilde;
  const T eta_n = pow(dedekind_eta(qtilde), n_comp);
  const T half_block = detail::half_integer_block(qtilde);
  T bound(0);
  const T untwisted_lattice =
      detail::lattice_block(qtilde, n_comp, 0u, radius, &bound, &out.terms);
  out.truncation_bound = bound;
  const T untwisted = half_block * untwisted_lattice / (2 * eta_n);
  const T qt2 = qtilde * qtilde;
  const T twisted = pow(qtilde, T(1) / 16) * theta4_arg(sqrt(qtilde), qt2) *
                    pow(theta4(qt2), n_comp - 1) / (2 * eta_n);
  out.value = untwisted + twisted;
  return out;
}

struct WeightEstimate {
  double h_estimate = 0.0;
  double drift = 0.0;  // spread of successive slope estimates
};

/// Leading conformal weight from amplitude samples: h = lim d ln Z / d ln qt
/// + c/24, estimated by successive log-log slopes with one Aitken
/// extrapolation step when three or more slopes are available.
template <class T>
WeightEstimate leading_weight(std::vector<std::pair<T, T>> samples, double central_charge) {
  if (samples.size() < 3) throw std::invalid_argument("leading_weight wants >= 3 samples");
  for (const auto& [q, z] : samples) {
    if (!(q > T(0)) || !(z > T(0))) {
      throw std::invalid_argument("leading_weight wants positive (qtilde, Z) samples");
    }
  }
  std::sort(samples.begin(), samples.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  using std::log;
  std::vector<T> slopes;
  for (size_t i = 0; i + 1 < samples.size(); ++i) {
    const T dlnz = log(samples[i + 1].second) - log(samples[i].second);
    const T dlnq = log(samples[i + 1].first) - log(samples[i].first);
    slopes.push_back(dlnz / dlnq);
  }
  T est = slopes.back();
  T drift = slopes.size() >= 2 ? slopes[slopes.size() - 1] - slopes[slopes.size() - 2] : T(0);
  if (slopes.size() >= 3) {
    const T s1 = slopes[slopes.size() - 3], s2 = slopes[slopes.size() - 2],
            s3 = slopes[slopes.size() - 1];
    const T denom = (s3 - s2) - (s2 - s1);
    using std::abs;
    if (abs(denom) > T(1e-300)) {
      const T aitken = s3 - (s3 - s2) * (s3 - s2) / denom;
      // Guard against a wild extrapolation when the sequence is not settling.
      if (abs(aitken - s3) < abs(s2 - s1) + abs(s3 - s2)) {
        drift = aitken - est;
        est = aitken;
      }
    }
  }
  WeightEstimate w;
  w.h_estimate = static_cast<double>(est) + central_charge / 24.0;
  using std::abs;
  w.drift = static_cast<double>(abs(drift));
  return w;
}

/// z_DN(q) = sqrt(eta(q)/theta2(q)), the Dirichlet-Neumann strip block of a
/// single component. Modular covariance makes it equal to
/// eta(qt)^{-1} sum_{n>=1} qt^{(n-1/2)^2/4} at the matched nome.
template <class T>
T z_dn_block(const T& q) {
  using std::sqrt;
  return sqrt(dedekind_eta(q) / theta2(q));
}

// --- exact q-series with rational exponents, for Cardy-consistency checks ---

/// Sparse series sum_k c_k qt^{num_k / den}, exponents stored as integer
/// numerators over a fixed denominator.
struct QSeriesExact {
  int64_t den = 1;
  std::map<int64_t, double> coeffs;  // numerator -> coefficient

  QSeriesExact& add_term(int64_t num, double c) {
    coeffs[num] += c;
    return *this;
  }
};

namespace detail {

inline QSeriesExact series_mul(const QSeriesExact& a, const QSeriesExact& b, int64_t cutoff_num) {
  QSeriesExact out;
  out.den = a.den;
  for (const auto& [na, ca] : a.coeffs) {
    for (const auto& [nb, cb] : b.coeffs) {
      const int64_t n = na + nb;
      if (n > cutoff_num) break;  // map is ordered by numerator
      out.coeffs[n] += ca * cb;
    }
  }
  return out;
}

// Pi (1 - q^n)^{+-N} as a series in integer exponents scaled by `den`.
inline QSeriesExact euler_product_power(int n_comp, bool inverse, int64_t den,
                                        int64_t cutoff_num) {
  QSeriesExact acc;
  acc.den = den;
  acc.add_term(0, 1.0);
  const int64_t max_n = cutoff_num / den + 1;
  for (int64_t n = 1; n <= max_n; ++n) {
    QSeriesExact factor;
    factor.den = den;
    if (!inverse) {
      // (1 - x)^N with x = q^n
      double binom = 1.0;
      for (int k = 0; k <= n_comp; ++k) {
        factor.add_term(n * den * k, (k % 2 ? -1.0 : 1.0) * binom);
        binom = binom * (n_comp - k) / (k + 1);
      }
    } else {
      // (1 - x)^{-N} = sum_k C(k + N - 1, N - 1) x^k
      double c = 1.0;
      for (int64_t k = 0; n * den * k <= cutoff_num; ++k) {
        factor.add_term(n * den * k, c);
        c = c * static_cast<double>(k + n_comp) / static_cast<double>(k + 1);
      }
    }
    acc = series_mul(acc, factor, cutoff_num);
  }
  return acc;
}

inline int64_t rational_num(double value, int64_t den, const char* what) {
  const double scaled = value * static_cast<double>(den);
  const int64_t num = std::llround(scaled);
  if (std::abs(scaled - static_cast<double>(num)) > 1e-6) {
    throw std::runtime_error(std::string(what) + ": exponent " + std::to_string(value) +
                             " is not a multiple of 1/" + std::to_string(den));
  }
  return num;
}

}  // namespace detail

struct CharacterLevel {
  double h;            // conformal weight of the level
  double coefficient;  // multiplicity appearing in the character expansion
};

enum class BoundaryAmplitude { Z1Free, Z1Up };

/// Builds the amplitude as an exact q-series (at R = 1), divides out the
/// eta^{-N} prefactor by multiplying with the eta^N series, and returns the
/// lowest `levels` coefficients of sum_h n_h qt^h. Cardy consistency demands
/// every n_h be a nonnegative integer.
inline std::vector<CharacterLevel> character_levels(BoundaryAmplitude which, int alpha,
                                                    int levels = 5) {
  if (alpha < 1 || alpha > 3) throw std::domain_error("alpha must be 1, 2, or 3");
  if (levels < 1 || levels > 32) throw std::domain_error("levels must be in [1, 32]");
  const int n_comp = 2 * alpha;
  const int64_t den = 48 * n_comp;
  // Character exponents here step in units of 1/16 and a few levels span
  // about 1/4 each; keep a generous window.
  const double h_window = 0.0625 + 0.55 * levels;
  const int64_t cutoff = static_cast<int64_t>(h_window * static_cast<double>(den)) + 2 * den;

  // half-integer block
  QSeriesExact half;
  half.den = den;
  for (int n = 1;; ++n) {
    const int64_t num = detail::rational_num((2.0 * n - 1) * (2.0 * n - 1) / 16.0, den, "half");
    if (num > cutoff) break;
    half.add_term(num, 1.0);
  }

  // lattice blocks
  QSeriesExact lattice;
  lattice.den = den;
  const int dims = n_comp - 1;
  const uint32_t group = (which == BoundaryAmplitude::Z1Free) ? (uint32_t{1} << n_comp) : 1;
  const int box = 3 + static_cast<int>(std::sqrt(h_window));
  for (uint32_t a_bits = 0; a_bits < group; ++a_bits) {
    std::vector<int> idx(static_cast<size_t>(dims), -box);
    while (true) {
      double norm2 = 0.0, usum = 0.0;
      for (int i = 0; i < n_comp; ++i) {
        const double vi = (i < dims) ? static_cast<double>(idx[static_cast<size_t>(i)]) : 0.0;
        const double ai = ((a_bits >> i) & 1) ? -1.0 : 1.0;
        const double ui = vi - ai / 4.0;
        norm2 += ui * ui;
        usum += ui;
      }
      const double expo = 2.0 * (norm2 - usum * usum / n_comp);
      const int64_t num = detail::rational_num(expo, den, "lattice");
      if (num <= cutoff) lattice.add_term(num, 1.0);
      int pos = 0;
      while (pos < dims) {
        if (++idx[static_cast<size_t>(pos)] <= box) break;
        idx[static_cast<size_t>(pos)] = -box;
        ++pos;
      }
      if (pos == dims) break;
    }
    if (dims == 0) break;
  }

  QSeriesExact z = detail::series_mul(half, lattice, cutoff);
  for (auto& [n, c] : z.coeffs) c *= 0.5;

  if (which == BoundaryAmplitude::Z1Up) {
    // twisted block: (1/2) qt^{1/16} theta4(qt^{1/2}, qt^2) theta4(qt^2)^{N-1}
    QSeriesExact tw;
    tw.den = den;
    tw.add_term(0, 1.0);
    QSeriesExact t4a;  // sum (-1)^n qt^{n^2 + n/2}
    t4a.den = den;
    t4a.add_term(0, 1.0);
    for (int n = 1;; ++n) {
      const int64_t plus = detail::rational_num(n * n + n / 2.0, den, "twist");
      const int64_t minus = detail::rational_num(n * n - n / 2.0, den, "twist");
      if (minus > cutoff && plus > cutoff) break;
      const double sgn = (n % 2) ? -1.0 : 1.0;
      if (plus <= cutoff) t4a.add_term(plus, sgn);
      if (minus <= cutoff) t4a.add_term(minus, sgn);
    }
    QSeriesExact t4;  // sum (-1)^n qt^{n^2}
    t4.den = den;
    t4.add_term(0, 1.0);
    for (int n = 1;; ++n) {
      const int64_t num = static_cast<int64_t>(n) * n * den;
      if (num > cutoff) break;
      t4.add_term(num, (n % 2) ? -2.0 : 2.0);
    }
    tw = detail::series_mul(tw, t4a, cutoff);
    for (int k = 0; k < n_comp - 1; ++k) tw = detail::series_mul(tw, t4, cutoff);
    const int64_t shift = den / 16;
    QSeriesExact shifted;
    shifted.den = den;
    for (const auto& [n, c] : tw.coeffs) {
      if (n + shift <= cutoff) shifted.add_term(n + shift, 0.5 * c);
    }
    for (const auto& [n, c] : shifted.coeffs) z.coeffs[n] += c;
  }

  // full amplitude carries eta^{-N}; multiply by the eta^N series so that
  // what remains is sum_h n_h qt^h (the division by characters).
  const auto eta_inv = detail::euler_product_power(n_comp, true, den, cutoff);
  const auto eta_fwd = detail::euler_product_power(n_comp, false, den, cutoff);
  QSeriesExact full = detail::series_mul(z, eta_inv, cutoff);  // qt^{+N/24} implicit shifts cancel
  QSeriesExact reduced = detail::series_mul(full, eta_fwd, cutoff);

  std::vector<CharacterLevel> out;
  for (const auto& [n, c] : reduced.coeffs) {
    if (out.size() >= static_cast<size_t>(levels)) break;
    if (std::abs(c) < 1e-9 && out.empty()) continue;  // leading numerical dust
    out.push_back(CharacterLevel{static_cast<double>(n) / static_cast<double>(den), c});
  }
  if (out.size() < static_cast<size_t>(levels)) {
    throw std::runtime_error("character window too small for the requested levels");
  }
  return out;
}

}  // namespace dsre
