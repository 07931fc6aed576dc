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

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dsre {

// Bit masks fit one 64-bit word and the Bell index (2L bits) must fit another.
inline constexpr int kMaxSites = 24;

inline constexpr double kCoeffDrop = 1e-14;
inline constexpr double kSumEqualTol = 1e-12;

namespace detail {
inline void check_sites(int length) {
  if (length < 1 || length > kMaxSites) {
    throw std::invalid_argument("site count must be in [1, " + std::to_string(kMaxSites) +
                                "], got " + std::to_string(length));
  }
}
inline void check_site_index(int site, int length) {
  if (site < 1 || site > length) {
    throw std::invalid_argument("site " + std::to_string(site) + " out of range [1, " +
                                std::to_string(length) + "]");
  }
}
inline uint64_t low_mask(int length) {
  return length >= 64 ? ~uint64_t{0} : (uint64_t{1} << length) - 1;
}
}  // namespace detail

/// An L-site Pauli operator stored as i^phase_exp * prod_j X_j^{x_j} Z_j^{z_j}.
///
/// Bit j of x_bits/z_bits refers to site j+1 (sites are 1-based throughout).
/// The per-site labels follow (x, z) = (0,0) -> I, (1,0) -> X, (0,1) -> Z,
/// (1,1) -> XZ = -iY, so a Hermitian string carries phase_exp equal (mod 2)
/// to its Y count.
struct PauliString {
  int length = 0;
  uint64_t x_bits = 0;
  uint64_t z_bits = 0;
  uint8_t phase_exp = 0;  // power of i, mod 4

  static PauliString identity(int length) {
    detail::check_sites(length);
    return PauliString{length, 0, 0, 0};
  }

  /// Single-site Hermitian Pauli; op is one of 'I', 'X', 'Y', 'Z'.
  static PauliString single(int length, char op, int site) {
    detail::check_sites(length);
    detail::check_site_index(site, length);
    PauliString p{length, 0, 0, 0};
    const uint64_t bit = uint64_t{1} << (site - 1);
    switch (op) {
      case 'I': break;
      case 'X': p.x_bits = bit; break;
      case 'Z': p.z_bits = bit; break;
      case 'Y': p.x_bits = bit; p.z_bits = bit; p.phase_exp = 1; break;  // Y = i XZ
      default:
        throw std::invalid_argument(std::string("unknown Pauli label '") + op + "'");
    }
    return p;
  }

  /// Hermitian string from an op-string such as "ZZII"; first character is site 1.
  static PauliString from_ops(std::string_view ops) {
    const int length = static_cast<int>(ops.size());
    detail::check_sites(length);
    PauliString p{length, 0, 0, 0};
    int y_count = 0;
    for (int j = 0; j < length; ++j) {
      const uint64_t bit = uint64_t{1} << j;
      switch (ops[j]) {
        case 'I': break;
        case 'X': p.x_bits |= bit; break;
        case 'Z': p.z_bits |= bit; break;
        case 'Y': p.x_bits |= bit; p.z_bits |= bit; ++y_count; break;
        default:
          throw std::invalid_argument(std::string("unknown Pauli label '") + ops[j] + "'");
      }
    }
    p.phase_exp = static_cast<uint8_t>(y_count & 3);
    return p;
  }

  int y_count() const { return std::popcount(x_bits & z_bits); }

  bool is_identity_bits() const { return x_bits == 0 && z_bits == 0; }

  /// True iff the operator (including its phase) is Hermitian.
  bool hermitian() const { return ((phase_exp + y_count()) & 1) == 0; }

  /// For a Hermitian string, the sign s = +-1 such that the operator equals
  /// s times the canonical Hermitian Pauli (the one with Y rather than XZ).
  int hermitian_sign() const {
    const int r = (phase_exp - y_count()) & 3;
    if (r == 0) return +1;
    if (r == 2) return -1;
    throw std::invalid_argument("string is not Hermitian");
  }

  std::string ops() const {
    std::string s(static_cast<size_t>(length), 'I');
    for (int j = 0; j < length; ++j) {
      const bool x = (x_bits >> j) & 1, z = (z_bits >> j) & 1;
      s[static_cast<size_t>(j)] = x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
    }
    return s;
  }

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.length == b.length && a.x_bits == b.x_bits && a.z_bits == b.z_bits &&
           a.phase_exp == b.phase_exp;
  }
};

/// Exact product a*b as 2^L x 2^L matrices; phases tracked mod 4.
inline PauliString multiply(const PauliString& a, const PauliString& b) {
  if (a.length != b.length) {
    throw std::invalid_argument("Pauli string length mismatch: " + std::to_string(a.length) +
                                " vs " + std::to_string(b.length));
  }
  PauliString c;
  c.length = a.length;
  c.x_bits = a.x_bits ^ b.x_bits;
  c.z_bits = a.z_bits ^ b.z_bits;
  // Commuting a's Z factors across b's X factors costs (-1) per overlap.
  c.phase_exp = static_cast<uint8_t>(
      (a.phase_exp + b.phase_exp + 2 * (std::popcount(a.z_bits & b.x_bits) & 1)) & 3);
  return c;
}

/// True iff ab = ba, via the symplectic form <a.x, b.z> + <a.z, b.x> mod 2.
inline bool commutes(const PauliString& a, const PauliString& b) {
  if (a.length != b.length) {
    throw std::invalid_argument("Pauli string length mismatch");
  }
  const int s = std::popcount(a.x_bits & b.z_bits) + std::popcount(a.z_bits & b.x_bits);
  return (s & 1) == 0;
}

/// Pure state of L qubits: 2^L amplitudes, site j <-> bit j-1 of the index.
struct StateVector {
  int length = 0;
  std::vector<std::complex<double>> amps;
  bool real_valued = false;  // set by producers that guarantee real amplitudes

  StateVector() = default;
  explicit StateVector(int length_)
      : length(length_), amps(size_t{1} << length_, std::complex<double>(0.0, 0.0)) {
    detail::check_sites(length_);
  }
  StateVector(int length_, std::vector<std::complex<double>> amplitudes)
      : length(length_), amps(std::move(amplitudes)) {
    detail::check_sites(length_);
    if (amps.size() != (size_t{1} << length_)) {
      throw std::invalid_argument("amplitude count does not match 2^L");
    }
  }

  static StateVector basis_state(int length, uint64_t index) {
    StateVector v(length);
    if (index >= v.amps.size()) throw std::invalid_argument("basis index out of range");
    v.amps[index] = 1.0;
    v.real_valued = true;
    return v;
  }

  size_t dim() const { return amps.size(); }

  double norm() const {
    double s = 0.0;
    for (const auto& a : amps) s += std::norm(a);
    return std::sqrt(s);
  }

  void normalize() {
    const double n = norm();
    if (n < 1e-300) throw std::runtime_error("cannot normalize a zero vector");
    for (auto& a : amps) a /= n;
  }

  /// True when every amplitude has negligible imaginary part.
  bool check_real(double tol = 1e-14) const {
    for (const auto& a : amps) {
      if (std::abs(a.imag()) > tol) return false;
    }
    return true;
  }
};

inline std::complex<double> inner(const StateVector& a, const StateVector& b) {
  if (a.length != b.length) throw std::invalid_argument("state length mismatch");
  std::complex<double> s = 0.0;
  for (size_t i = 0; i < a.amps.size(); ++i) s += std::conj(a.amps[i]) * b.amps[i];
  return s;
}

/// <psi| p |psi> for Hermitian p; O(2^L), no dense matrices.
inline double expectation(const StateVector& psi, const PauliString& p) {
  if (psi.length != p.length) throw std::invalid_argument("state/string length mismatch");
  if (!p.hermitian()) throw std::invalid_argument("expectation requires a Hermitian string");
  static constexpr std::complex<double> kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const std::complex<double> phase = kIPow[p.phase_exp & 3];
  std::complex<double> acc = 0.0;
  const size_t dim = psi.dim();
  for (size_t i = 0; i < dim; ++i) {
    // (X^x Z^z)|i> = (-1)^{|z & i|} |i ^ x>
    const double sgn = (std::popcount(p.z_bits & i) & 1) ? -1.0 : 1.0;
    acc += std::conj(psi.amps[i ^ p.x_bits]) * (sgn * psi.amps[i]);
  }
  acc *= phase;
  if (std::abs(acc.imag()) > 1e-12) {
    throw std::runtime_error("expectation of Hermitian string has imaginary residue " +
                             std::to_string(acc.imag()));
  }
  return acc.real();
}

/// One term of a PauliSum: coeff times the canonical Hermitian Pauli with
/// bit masks (x, z). The string phase is folded into the coefficient sign.
struct PauliTerm {
  double coeff = 0.0;
  uint64_t x_bits = 0;
  uint64_t z_bits = 0;

  PauliString to_string_op(int length) const {
    PauliString p{length, x_bits, z_bits,
                  static_cast<uint8_t>(std::popcount(x_bits & z_bits) & 3)};
    return p;
  }
};

inline bool term_bits_less(const PauliTerm& a, const PauliTerm& b) {
  return a.x_bits != b.x_bits ? a.x_bits < b.x_bits : a.z_bits < b.z_bits;
}

/// Real-weighted sum of Hermitian Pauli strings, kept in canonical form:
/// terms sorted by (x_bits, z_bits), duplicates merged, near-zeros dropped.
struct PauliSum {
  int length = 0;
  std::vector<PauliTerm> terms;

  PauliSum() = default;
  explicit PauliSum(int length_) : length(length_) { detail::check_sites(length_); }

  /// Adds coeff * p; p must be Hermitian (its sign folds into the coefficient).
  PauliSum& add(double coeff, const PauliString& p) {
    if (p.length != length) throw std::invalid_argument("term length mismatch");
    terms.push_back(PauliTerm{coeff * p.hermitian_sign(), p.x_bits, p.z_bits});
    return *this;
  }

  PauliSum& add_ops(double coeff, std::string_view ops) {
    return add(coeff, PauliString::from_ops(ops));
  }

  size_t size() const { return terms.size(); }
};

/// Merges duplicates, sorts by bit masks, and drops |coeff| < 1e-14.
inline PauliSum canonicalize(PauliSum h) {
  std::sort(h.terms.begin(), h.terms.end(), term_bits_less);
  std::vector<PauliTerm> out;
  out.reserve(h.terms.size());
  for (const auto& t : h.terms) {
    if (!out.empty() && out.back().x_bits == t.x_bits && out.back().z_bits == t.z_bits) {
      out.back().coeff += t.coeff;
    } else {
      out.push_back(t);
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const PauliTerm& t) { return std::abs(t.coeff) < kCoeffDrop; }),
            out.end());
  h.terms = std::move(out);
  return h;
}

/// Term-by-term comparison of canonical forms with coefficient tolerance tol.
inline bool sums_equal(const PauliSum& a, const PauliSum& b, double tol = kSumEqualTol) {
  if (a.length != b.length) return false;
  const PauliSum ca = canonicalize(a), cb = canonicalize(b);
  size_t i = 0, j = 0;
  while (i < ca.terms.size() || j < cb.terms.size()) {
    if (i < ca.terms.size() && j < cb.terms.size() &&
        ca.terms[i].x_bits == cb.terms[j].x_bits && ca.terms[i].z_bits == cb.terms[j].z_bits) {
      if (std::abs(ca.terms[i].coeff - cb.terms[j].coeff) > tol) return false;
      ++i, ++j;
    } else if (j >= cb.terms.size() ||
               (i < ca.terms.size() && term_bits_less(ca.terms[i], cb.terms[j]))) {
      if (std::abs(ca.terms[i].coeff) > tol) return false;
      ++i;
    } else {
      if (std::abs(cb.terms[j].coeff) > tol) return false;
      ++j;
    }
  }
  return true;
}

/// True iff the sum is a real matrix in the Z basis (every term has even Y count).
inline bool is_real_matrix(const PauliSum& h) {
  for (const auto& t : h.terms) {
    if (std::popcount(t.x_bits & t.z_bits) & 1) return false;
  }
  return true;
}

/// h |psi>, unnormalized; bit-mask kernels, O(terms * 2^L).
inline StateVector apply_sum(const PauliSum& h, const StateVector& psi) {
  if (h.length != psi.length) throw std::invalid_argument("sum/state length mismatch");
  static constexpr std::complex<double> kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  StateVector out(psi.length);
  const size_t dim = psi.dim();
  for (const auto& t : h.terms) {
    const std::complex<double> c = t.coeff * kIPow[std::popcount(t.x_bits & t.z_bits) & 3];
    for (size_t i = 0; i < dim; ++i) {
      const double sgn = (std::popcount(t.z_bits & i) & 1) ? -1.0 : 1.0;
      out.amps[i ^ t.x_bits] += c * (sgn * psi.amps[i]);
    }
  }
  return out;
}

/// Real kernel: out += (sum of terms) applied to in. Requires is_real_matrix(h).
inline void apply_sum_real(const PauliSum& h, const double* in, double* out, size_t dim) {
  for (const auto& t : h.terms) {
    const int y = std::popcount(t.x_bits & t.z_bits) & 3;
    if (y & 1) throw std::invalid_argument("apply_sum_real requires a real-matrix sum");
    const double c = (y == 0) ? t.coeff : -t.coeff;  // i^y with even y is +-1
    for (size_t i = 0; i < dim; ++i) {
      const double sgn = (std::popcount(t.z_bits & i) & 1) ? -c : c;
      out[i ^ t.x_bits] += sgn * in[i];
    }
  }
}

/// Relabels sites above `site` down by one. The sum must not act on `site`.
inline PauliSum remove_site(const PauliSum& h, int site) {
  detail::check_site_index(site, h.length);
  if (h.length < 2) throw std::invalid_argument("cannot remove the only site");
  const uint64_t bit = uint64_t{1} << (site - 1);
  const uint64_t low = bit - 1;
  PauliSum out(h.length - 1);
  for (const auto& t : h.terms) {
    if ((t.x_bits | t.z_bits) & bit) {
      throw std::invalid_argument("remove_site: sum acts on site " + std::to_string(site));
    }
    PauliTerm nt = t;
    nt.x_bits = (t.x_bits & low) | ((t.x_bits >> 1) & ~low);
    nt.z_bits = (t.z_bits & low) | ((t.z_bits >> 1) & ~low);
    out.terms.push_back(nt);
  }
  return canonicalize(out);
}

/// Substitutes Z_site -> value (+1 or -1) in every term; the site must carry
/// no X component anywhere in the sum.
inline PauliSum substitute_z(const PauliSum& h, int site, int value) {
  detail::check_site_index(site, h.length);
  if (value != 1 && value != -1) throw std::invalid_argument("substitute_z value must be +-1");
  const uint64_t bit = uint64_t{1} << (site - 1);
  PauliSum out(h.length);
  for (const auto& t : h.terms) {
    if (t.x_bits & bit) {
      throw std::invalid_argument("substitute_z: sum has X/Y support on site " +
                                  std::to_string(site));
    }
    PauliTerm nt = t;
    if (t.z_bits & bit) {
      nt.z_bits &= ~bit;
      nt.coeff *= value;
    }
    out.terms.push_back(nt);
  }
  return canonicalize(out);
}

// --- textual Pauli-sum format: one term per line, "<coeff> <op-string>",
// ops over {I,X,Y,Z} with the first character at site 1; '#' starts a comment.

inline PauliSum parse_pauli_sum(std::istream& in) {
  PauliSum h;
  bool have_length = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double coeff;
    std::string ops;
    if (!(ls >> coeff)) continue;  // blank or comment-only line
    if (!(ls >> ops)) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": missing op-string");
    }
    if (!have_length) {
      h = PauliSum(static_cast<int>(ops.size()));
      have_length = true;
    } else if (static_cast<int>(ops.size()) != h.length) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": op-string length " +
                                  std::to_string(ops.size()) + " != " + std::to_string(h.length));
    }
    h.add_ops(coeff, ops);
  }
  if (!have_length) throw std::invalid_argument("empty Pauli-sum input");
  return canonicalize(h);
}

inline PauliSum parse_pauli_sum(const std::string& text) {
  std::istringstream in(text);
  return parse_pauli_sum(in);
}

inline std::string format_pauli_sum(const PauliSum& h) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& t : h.terms) {
    out << t.coeff << ' ' << t.to_string_op(h.length).ops() << '\n';
  }
  return out.str();
}

}  // namespace dsre
