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

// Test-only dense linear-algebra oracle. Everything here is built from
// explicit 2x2 matrices and Kronecker products so it shares no code path
// with the bit-mask kernels it cross-checks.

#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <complex>
#include <vector>

#include "dsre/pauli.hpp"

namespace dsre_test {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat pauli_2x2(char op) {
  Mat m(2, 2);
  const Cplx i(0.0, 1.0);
  switch (op) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("bad pauli label");
  }
  return m;
}

// Kronecker chain with site 1 as the *least significant* qubit, matching the
// StateVector convention (site j <-> bit j-1 of the basis index).
inline Mat kron_sites(const std::vector<char>& ops) {
  Mat m = Mat::Identity(1, 1);
  for (char op : ops) m = Eigen::kroneckerProduct(pauli_2x2(op), m).eval();
  return m;
}

// Builds i^phase_exp * prod_j X_j^x Z_j^z from literal 2x2 factors.
inline Mat dense_string(const dsre::PauliString& p) {
  Mat m = Mat::Identity(1, 1);
  for (int j = 1; j <= p.length; ++j) {
    const bool x = (p.x_bits >> (j - 1)) & 1, z = (p.z_bits >> (j - 1)) & 1;
    Mat site = Mat::Identity(2, 2);
    if (x) site = pauli_2x2('X') * site;
    if (z) site = site * pauli_2x2('Z');
    m = Eigen::kroneckerProduct(site, m).eval();
  }
  const Cplx i(0.0, 1.0);
  Cplx phase = 1.0;
  for (int k = 0; k < (p.phase_exp & 3); ++k) phase *= i;
  return phase * m;
}

inline Mat dense_sum(const dsre::PauliSum& h) {
  const Eigen::Index dim = Eigen::Index(1) << h.length;
  Mat m = Mat::Zero(dim, dim);
  for (const auto& t : h.terms) m += t.coeff * dense_string(t.to_string_op(h.length));
  return m;
}

inline Vec dense_state(const dsre::StateVector& v) {
  Vec out(static_cast<Eigen::Index>(v.dim()));
  for (size_t i = 0; i < v.dim(); ++i) out[static_cast<Eigen::Index>(i)] = v.amps[i];
  return out;
}

inline dsre::StateVector state_from_dense(int length, const Vec& v) {
  dsre::StateVector out(length);
  for (size_t i = 0; i < out.dim(); ++i) out.amps[i] = v[static_cast<Eigen::Index>(i)];
  return out;
}

}  // namespace dsre_test
