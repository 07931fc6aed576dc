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

// Dedekind eta and Jacobi theta constants at real nome q in (0, 1), plus the
// two-argument theta series used by twisted-sector amplitudes. Each function
// carries both a sum form (returned) and a product form (cross-checks). The
// scalar type is a template parameter so the same series run in double and
// in extended precision.

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dsre {

inline constexpr int kSeriesMaxTerms = 200;

namespace detail {

template <class T>
T series_eps() {
  return T(10) * std::numeric_limits<T>::epsilon();
}

template <class T>
void check_nome(const T& q) {
  if (!(q > T(0)) || !(q < T(1))) {
    throw std::domain_error("nome q must lie in (0, 1)");
  }
}

[[noreturn]] inline void truncation_failure(const char* what) {
  throw std::runtime_error(std::string(what) + ": series did not reach the truncation bound in " +
                           std::to_string(kSeriesMaxTerms) + " terms (q too close to 1?)");
}

}  // namespace detail

/// eta(q) = q^{1/24} prod (1 - q^n), evaluated through the pentagonal-number
/// sum q^{1/24} sum_k (-1)^k q^{k(3k-1)/2}.
template <class T>
T dedekind_eta(const T& q) {
  detail::check_nome(q);
  const T eps = detail::series_eps<T>();
  T sum(1);
  for (int k = 1; k <= kSeriesMaxTerms; ++k) {
    using std::pow;
    const T t1 = pow(q, T(k) * (3 * k - 1) / 2);
    const T t2 = pow(q, T(k) * (3 * k + 1) / 2);
    const T term = (k % 2 ? T(-1) : T(1)) * (t1 + t2);
    sum += term;
    using std::abs;
    if (abs(term) < eps * abs(sum)) {
      using std::pow;
      return pow(q, T(1) / 24) * sum;
    }
  }
  detail::truncation_failure("dedekind_eta");
}

template <class T>
T dedekind_eta_product(const T& q) {
  detail::check_nome(q);
  const T eps = detail::series_eps<T>();
  T prod(1);
  T qn(1);
  for (int n = 1; n <= kSeriesMaxTerms; ++n) {
    qn *= q;
    prod *= (T(1) - qn);
    if (qn < eps) {
      using std::pow;
      return pow(q, T(1) / 24) * prod;
    }
  }
  detail::truncation_failure("dedekind_eta_product");
}

/// theta2(q) = sum_n q^{(n+1/2)^2/2}.
template <class T>
T theta2(const T& q) {
  detail::check_nome(q);
  const T eps = detail::series_eps<T>();
  T sum(0);
  for (int n = 0; n <= kSeriesMaxTerms; ++n) {
    using std::pow;
    const T term = pow(q, (T(2 * n + 1) * (2 * n + 1)) / 8);
    sum += term;
    if (term < eps * sum) return T(2) * sum;
  }
  detail::truncation_failure("theta2");
}

template <class T>
T theta2_product(const T& q) {
  detail::check_nome(q);
  const T eps = detail::series_eps<T>();
  T prod(1);
  T qn(1);
  for (int n = 1; n <= kSeriesMaxTerms; ++n) {
    qn *= q;
    prod *= (T(1) - qn) * (T(1) + qn) * (T(1) + qn);
    if (qn < eps) {
      using std::pow;
      return T(2) * pow(q, T(1) / 8) * prod;
    }
  }
  detail::truncation_failure("theta2_product");
}

/// theta3(q) = 1 + 2 sum_{n>=1} q^{n^2/2}.
template <class T>
T theta3(const T& q) {
  detail::check_nome(q);
  const T eps = detail::series_eps<T>();
  T sum(1);
  for (int n = 1; n <= kSeriesMaxTerms; ++n) {
    using std::pow;
    const T term = T(2) * pow(q, T(n) * n / 2);
    sum += term;
    if (term < eps * sum) return sum;
  }
  detail::truncation_failure("theta3");
}

template <class T>
T theta3_product(const T& q) {
  detail::check_nome(q);
  const T eps = detail::series_eps<T>();
  T prod(1);
  T qn(1);
  for (int n = 1; n <= kSeriesMaxTerms; ++n) {
    qn *= q;
    using std::pow;
    const T half = pow(q, T(n) - T(1) / 2);
    prod *= (T(1) - qn) * (T(1) + half) * (T(1) + half);
    if (qn < eps) return prod;
  }
  detail::truncation_failure("theta3_product");
}

/// theta4(q) = 1 + 2 sum_{n>=1} (-1)^n q^{n^2/2}.
template <class T>
T theta4(const T& q) {
  detail::check_nome(q);
  const T eps = detail::series_eps<T>();
  T sum(1);
  for (int n = 1; n <= kSeriesMaxTerms; ++n) {
    using std::abs;
    using std::pow;
    const T term = T(2) * pow(q, T(n) * n / 2);
    sum += (n % 2 ? -term : term);
    if (term < eps * abs(sum)) return sum;
  }
  detail::truncation_failure("theta4");
}

template <class T>
T theta4_product(const T& q) {
  detail::check_nome(q);
  const T eps = detail::series_eps<T>();
  T prod(1);
  T qn(1);
  for (int n = 1; n <= kSeriesMaxTerms; ++n) {
    qn *= q;
    using std::pow;
    const T half = pow(q, T(n) - T(1) / 2);
    prod *= (T(1) - qn) * (T(1) - half) * (T(1) - half);
    if (qn < eps) return prod;
  }
  detail::truncation_failure("theta4_product");
}

/// theta2(y, q) = sum_n y^{n+1/2} q^{(n-1/2)^2/2} for real y > 0.
template <class T>
T theta2_arg(const T& y, const T& q) {
  detail::check_nome(q);
  if (!(y > T(0))) throw std::domain_error("theta2_arg expects y > 0");
  const T eps = detail::series_eps<T>();
  using std::abs;
  using std::pow;
  T sum(0);
  // indices n = k and n = 1-k share the exponent (2k-1)^2/8
  for (int k = 1; k <= kSeriesMaxTerms; ++k) {
    const T qe = pow(q, (T(2 * k - 1) * (2 * k - 1)) / 8);
    const T term = (pow(y, T(k) + T(1) / 2) + pow(y, T(3) / 2 - T(k))) * qe;
    sum += term;
    if (abs(term) < eps * abs(sum)) return sum;
  }
  detail::truncation_failure("theta2_arg");
}

/// theta4(y, q) = sum_n (-1)^n y^n q^{n^2/2} for real y > 0.
template <class T>
T theta4_arg(const T& y, const T& q) {
  detail::check_nome(q);
  if (!(y > T(0))) throw std::domain_error("theta4_arg expects y > 0");
  const T eps = detail::series_eps<T>();
  using std::abs;
  using std::pow;
  T sum(1);
  for (int n = 1; n <= kSeriesMaxTerms; ++n) {
    const T qe = pow(q, T(n) * n / 2);
    const T term = (pow(y, T(n)) + pow(y, T(-n))) * qe;
    sum += (n % 2 ? -term : term);
    if (abs(term) < eps * abs(sum)) return sum;
  }
  detail::truncation_failure("theta4_arg");
}

/// Matched modular pair: tau = i beta / L purely imaginary, q = e^{2 pi i
/// tau}; the S transform sends ln qtilde = (2 pi)^2 / ln q.
template <class T>
T qtilde_from_q(const T& q) {
  detail::check_nome(q);
  using std::atan;
  using std::exp;
  using std::log;
  const T pi = T(4) * atan(T(1));
  return exp(T(4) * pi * pi / log(q));
}

}  // namespace dsre
