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

#include <array>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dsre/pauli.hpp"

namespace dsre {

enum class Gate { X, Y, Z, H, S, CZ, CX };

struct GateOp {
  Gate kind;
  int a;      // 1-based site
  int b = 0;  // second site for CZ/CX
};

inline const char* gate_name(Gate g) {
  switch (g) {
    case Gate::X: return "X";
    case Gate::Y: return "Y";
    case Gate::Z: return "Z";
    case Gate::H: return "H";
    case Gate::S: return "S";
    case Gate::CZ: return "CZ";
    case Gate::CX: return "CX";
  }
  return "?";
}

/// Clifford unitary as a symplectic GF(2) tableau with signs: we store the
/// conjugation images C X_j C^dag and C Z_j C^dag as Hermitian Pauli strings
/// (sign carried by phase_exp). The Y image is never stored; it follows from
/// Y = i XZ.
struct CliffordMap {
  int length = 0;
  std::vector<PauliString> x_images;
  std::vector<PauliString> z_images;
  std::string label;

  static CliffordMap identity(int length) {
    detail::check_sites(length);
    CliffordMap c;
    c.length = length;
    c.x_images.reserve(static_cast<size_t>(length));
    c.z_images.reserve(static_cast<size_t>(length));
    for (int j = 1; j <= length; ++j) {
      c.x_images.push_back(PauliString::single(length, 'X', j));
      c.z_images.push_back(PauliString::single(length, 'Z', j));
    }
    c.label = "I";
    return c;
  }
};

/// C p C^dag with exact sign; linear over GF(2) in the (x, z) bits.
inline PauliString conjugate_string(const CliffordMap& c, const PauliString& p) {
  if (c.length != p.length) throw std::invalid_argument("clifford/string length mismatch");
  // p = i^pe prod_j X_j^{x_j} Z_j^{z_j}, and conjugation is a homomorphism.
  PauliString out = PauliString::identity(p.length);
  out.phase_exp = p.phase_exp;
  for (int j = 0; j < p.length; ++j) {
    if ((p.x_bits >> j) & 1) out = multiply(out, c.x_images[static_cast<size_t>(j)]);
    if ((p.z_bits >> j) & 1) out = multiply(out, c.z_images[static_cast<size_t>(j)]);
  }
  return out;
}

/// Term-wise conjugation followed by canonicalization.
inline PauliSum conjugate_sum(const CliffordMap& c, const PauliSum& h) {
  if (c.length != h.length) throw std::invalid_argument("clifford/sum length mismatch");
  PauliSum out(h.length);
  for (const auto& t : h.terms) {
    out.add(t.coeff, conjugate_string(c, t.to_string_op(h.length)));
  }
  return canonicalize(out);
}

/// Tableau of a single gate (identity elsewhere).
inline CliffordMap gate_map(const GateOp& g, int length) {
  detail::check_sites(length);
  detail::check_site_index(g.a, length);
  if (g.kind == Gate::CZ || g.kind == Gate::CX) {
    detail::check_site_index(g.b, length);
    if (g.b == g.a) throw std::invalid_argument("two-qubit gate needs distinct sites");
  }
  CliffordMap c = CliffordMap::identity(length);
  auto& xa = c.x_images[static_cast<size_t>(g.a - 1)];
  auto& za = c.z_images[static_cast<size_t>(g.a - 1)];
  const auto flip = [](PauliString& p) { p.phase_exp = static_cast<uint8_t>((p.phase_exp + 2) & 3); };
  switch (g.kind) {
    case Gate::X: flip(za); break;
    case Gate::Y: flip(xa); flip(za); break;
    case Gate::Z: flip(xa); break;
    case Gate::H: std::swap(xa, za); break;
    case Gate::S: xa = PauliString::single(length, 'Y', g.a); break;
    case Gate::CZ: {
      auto& xb = c.x_images[static_cast<size_t>(g.b - 1)];
      xa = multiply(xa, PauliString::single(length, 'Z', g.b));
      xb = multiply(xb, PauliString::single(length, 'Z', g.a));
      break;
    }
    case Gate::CX: {  // control a, target b
      auto& zb = c.z_images[static_cast<size_t>(g.b - 1)];
      xa = multiply(xa, PauliString::single(length, 'X', g.b));
      zb = multiply(zb, PauliString::single(length, 'Z', g.a));
      break;
    }
  }
  std::ostringstream os;
  os << gate_name(g.kind) << ' ' << g.a;
  if (g.kind == Gate::CZ || g.kind == Gate::CX) os << ' ' << g.b;
  c.label = os.str();
  return c;
}

/// Tableau of a o b: b's unitary is applied first.
inline CliffordMap compose(const CliffordMap& a, const CliffordMap& b) {
  if (a.length != b.length) throw std::invalid_argument("clifford length mismatch");
  CliffordMap out;
  out.length = a.length;
  out.x_images.reserve(static_cast<size_t>(a.length));
  out.z_images.reserve(static_cast<size_t>(a.length));
  for (int j = 0; j < a.length; ++j) {
    out.x_images.push_back(conjugate_string(a, b.x_images[static_cast<size_t>(j)]));
    out.z_images.push_back(conjugate_string(a, b.z_images[static_cast<size_t>(j)]));
  }
  out.label = a.label + " " + b.label;
  return out;
}

/// Tableau of the product g_1 g_2 ... g_n read left to right (g_n acts first).
inline CliffordMap from_gate_sequence(const std::vector<GateOp>& gates, int length) {
  CliffordMap acc = CliffordMap::identity(length);
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    acc = compose(gate_map(*it, length), acc);
  }
  std::ostringstream os;
  for (size_t i = 0; i < gates.size(); ++i) {
    if (i) os << ' ';
    os << gate_name(gates[i].kind) << ' ' << gates[i].a;
    if (gates[i].kind == Gate::CZ || gates[i].kind == Gate::CX) os << ' ' << gates[i].b;
  }
  acc.label = gates.empty() ? "I" : os.str();
  return acc;
}

/// Exact GF(2) symplecticity check: conjugation preserves every generator
/// commutation relation.
inline bool is_symplectic(const CliffordMap& c) {
  const int L = c.length;
  for (int i = 0; i < L; ++i) {
    for (int j = 0; j < L; ++j) {
      if (!commutes(c.x_images[i], c.x_images[j])) return false;
      if (!commutes(c.z_images[i], c.z_images[j])) return false;
      const bool want = (i != j);
      if (commutes(c.x_images[i], c.z_images[j]) != want) return false;
    }
  }
  return true;
}

/// Inverse tableau: compose(c, inverse(c)) is the identity with positive signs.
inline CliffordMap inverse(const CliffordMap& c) {
  const int L = c.length;
  const int n = 2 * L;
  // Rows of the 2L x 2L GF(2) matrix: images of X_1..X_L then Z_1..Z_L, each
  // row holding (x-part, z-part) masks. The symplectic inverse is J M^T J,
  // where J swaps the x and z halves.
  std::vector<uint64_t> rx(static_cast<size_t>(n)), rz(static_cast<size_t>(n));
  for (int j = 0; j < L; ++j) {
    rx[static_cast<size_t>(j)] = c.x_images[static_cast<size_t>(j)].x_bits;
    rz[static_cast<size_t>(j)] = c.x_images[static_cast<size_t>(j)].z_bits;
    rx[static_cast<size_t>(L + j)] = c.z_images[static_cast<size_t>(j)].x_bits;
    rz[static_cast<size_t>(L + j)] = c.z_images[static_cast<size_t>(j)].z_bits;
  }
  // M_inv[r][k] = (J M^T J)[r][k] = M[J k][J r] with J swapping halves.
  CliffordMap inv;
  inv.length = L;
  inv.x_images.resize(static_cast<size_t>(L));
  inv.z_images.resize(static_cast<size_t>(L));
  const auto row_bit = [&](int row, int col) -> uint64_t {
    // Column layout mirrors rows: cols 0..L-1 are x-components, L..2L-1 z.
    return col < L ? (rx[static_cast<size_t>(row)] >> col) & 1
                   : (rz[static_cast<size_t>(row)] >> (col - L)) & 1;
  };
  for (int r = 0; r < n; ++r) {
    const int jr = (r + L) % n;  // J applied to the row index
    PauliString img = PauliString::identity(L);
    for (int k = 0; k < n; ++k) {
      const int jk = (k + L) % n;
      if (row_bit(jk, jr)) {
        if (k < L) {
          img.x_bits |= uint64_t{1} << k;
        } else {
          img.z_bits |= uint64_t{1} << (k - L);
        }
      }
    }
    img.phase_exp = static_cast<uint8_t>(img.y_count() & 3);  // Hermitian, sign +
    // Fix the sign so that conj_c(img) equals the generator exactly.
    const PauliString back = conjugate_string(c, img);
    if (back.hermitian_sign() < 0) img.phase_exp = static_cast<uint8_t>((img.phase_exp + 2) & 3);
    if (r < L) {
      inv.x_images[static_cast<size_t>(r)] = img;
    } else {
      inv.z_images[static_cast<size_t>(r - L)] = img;
    }
  }
  inv.label = "inv(" + c.label + ")";
  return inv;
}

inline bool is_identity(const CliffordMap& c) {
  const CliffordMap id = CliffordMap::identity(c.length);
  for (int j = 0; j < c.length; ++j) {
    if (!(c.x_images[static_cast<size_t>(j)] == id.x_images[static_cast<size_t>(j)])) return false;
    if (!(c.z_images[static_cast<size_t>(j)] == id.z_images[static_cast<size_t>(j)])) return false;
  }
  return true;
}

// --- catalog of defect movement and fusion operators ---

enum class DefectUnitary {
  MoveEta,          // X_j
  MoveDuality,      // CZ_{j,j+1} H_j
  FuseEtaEta,       // X_j
  FuseEtaDuality,   // X_j Z_{j+1}
  FuseDualityEta,   // (CZ_{j,j+1} H_j) X_j
  FuseDualityDuality,  // H_j CZ_{j,j+1}      (inverse of MoveDuality)
  FuseEtaBoundary,     // X_1
  FuseDualityUp,       // H_1 CZ_{1,2}
  FuseDualityDown,     // (H_1 CZ_{1,2}) X_1 Z_2
  FuseDualityFree,     // H_1 CZ_{1,2}
};

inline const char* defect_unitary_name(DefectUnitary u) {
  switch (u) {
    case DefectUnitary::MoveEta: return "move_eta";
    case DefectUnitary::MoveDuality: return "move_duality";
    case DefectUnitary::FuseEtaEta: return "fuse_eta_eta";
    case DefectUnitary::FuseEtaDuality: return "fuse_eta_duality";
    case DefectUnitary::FuseDualityEta: return "fuse_duality_eta";
    case DefectUnitary::FuseDualityDuality: return "fuse_duality_duality";
    case DefectUnitary::FuseEtaBoundary: return "fuse_eta_boundary";
    case DefectUnitary::FuseDualityUp: return "fuse_duality_up";
    case DefectUnitary::FuseDualityDown: return "fuse_duality_down";
    case DefectUnitary::FuseDualityFree: return "fuse_duality_free";
  }
  return "?";
}

/// Exact gate sequence for each cataloged operator. Movement and bulk fusion
/// operators take the site j they act at; boundary fusions are pinned to
/// site 1. Operators touching a (j, j+1) pair require j < L.
inline CliffordMap defect_unitary(DefectUnitary u, int site, int length) {
  detail::check_sites(length);
  detail::check_site_index(site, length);
  const auto need_neighbor = [&]() {
    if (site + 1 > length) {
      throw std::invalid_argument(std::string(defect_unitary_name(u)) + " at site " +
                                  std::to_string(site) + " requires neighbor " +
                                  std::to_string(site + 1));
    }
  };
  const auto need_site1 = [&]() {
    if (site != 1) {
      throw std::invalid_argument(std::string(defect_unitary_name(u)) +
                                  " is defined at site 1 only");
    }
  };
  std::vector<GateOp> gates;
  switch (u) {
    case DefectUnitary::MoveEta:
    case DefectUnitary::FuseEtaEta:
      gates = {{Gate::X, site}};
      break;
    case DefectUnitary::MoveDuality:
      need_neighbor();
      gates = {{Gate::CZ, site, site + 1}, {Gate::H, site}};
      break;
    case DefectUnitary::FuseEtaDuality:
      // X on the eta side, Z on the duality side; this keeps the fused
      // -Z_j X_{j+1} defect term in the fixed gauge used by build().
      need_neighbor();
      gates = {{Gate::X, site}, {Gate::Z, site + 1}};
      break;
    case DefectUnitary::FuseDualityEta:
      // Operator product (CZ H) X: the X acts first.
      need_neighbor();
      gates = {{Gate::CZ, site, site + 1}, {Gate::H, site}, {Gate::X, site}};
      break;
    case DefectUnitary::FuseDualityDuality:
      need_neighbor();
      gates = {{Gate::H, site}, {Gate::CZ, site, site + 1}};
      break;
    case DefectUnitary::FuseEtaBoundary:
      need_site1();
      gates = {{Gate::X, 1}};
      break;
    case DefectUnitary::FuseDualityUp:
    case DefectUnitary::FuseDualityFree:
      need_site1();
      if (length < 2) throw std::invalid_argument("boundary duality fusion needs L >= 2");
      gates = {{Gate::H, 1}, {Gate::CZ, 1, 2}};
      break;
    case DefectUnitary::FuseDualityDown:
      // X_1 Z_2 first maps the down-boundary chain onto the up-boundary one
      // without flipping the -Z_1 X_2 defect term, then the up fusion runs.
      need_site1();
      if (length < 2) throw std::invalid_argument("boundary duality fusion needs L >= 2");
      gates = {{Gate::H, 1}, {Gate::CZ, 1, 2}, {Gate::X, 1}, {Gate::Z, 2}};
      break;
  }
  CliffordMap c = from_gate_sequence(gates, length);
  c.label = std::string(defect_unitary_name(u)) + "@" + std::to_string(site);
  return c;
}

// --- gate-sequence text format: one gate per line, e.g. "H 3" or "CZ 3 4";
// '#' starts a comment.

inline std::vector<GateOp> parse_gate_sequence(std::istream& in) {
  std::vector<GateOp> gates;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string name;
    if (!(ls >> name)) continue;
    GateOp g{};
    if (name == "X") g.kind = Gate::X;
    else if (name == "Y") g.kind = Gate::Y;
    else if (name == "Z") g.kind = Gate::Z;
    else if (name == "H") g.kind = Gate::H;
    else if (name == "S") g.kind = Gate::S;
    else if (name == "CZ") g.kind = Gate::CZ;
    else if (name == "CX") g.kind = Gate::CX;
    else throw std::invalid_argument("line " + std::to_string(lineno) + ": unknown gate '" +
                                     name + "'");
    if (!(ls >> g.a)) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": missing site");
    }
    if (g.kind == Gate::CZ || g.kind == Gate::CX) {
      if (!(ls >> g.b)) {
        throw std::invalid_argument("line " + std::to_string(lineno) + ": missing second site");
      }
    }
    gates.push_back(g);
  }
  return gates;
}

inline std::vector<GateOp> parse_gate_sequence(const std::string& text) {
  std::istringstream in(text);
  return parse_gate_sequence(in);
}

inline std::string format_gate_sequence(const std::vector<GateOp>& gates) {
  std::ostringstream out;
  for (const auto& g : gates) {
    out << gate_name(g.kind) << ' ' << g.a;
    if (g.kind == Gate::CZ || g.kind == Gate::CX) out << ' ' << g.b;
    out << '\n';
  }
  return out.str();
}

}  // namespace dsre
