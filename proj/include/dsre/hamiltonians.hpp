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

// Transverse-field Ising chains with topological-defect insertions and
// Cardy-type open boundaries. Sites are 1-based; bond j joins sites
// (j, j+1 mod L) on the ring.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsre/pauli.hpp"

namespace dsre {

/// The three conformal boundaries: boundary term +a Z with a = 0, -1, +1.
enum class BoundaryLabel { Free, Up, Down };

inline int boundary_field(BoundaryLabel b) {
  switch (b) {
    case BoundaryLabel::Free: return 0;
    case BoundaryLabel::Up: return -1;
    case BoundaryLabel::Down: return +1;
  }
  return 0;
}

inline const char* boundary_name(BoundaryLabel b) {
  switch (b) {
    case BoundaryLabel::Free: return "f";
    case BoundaryLabel::Up: return "up";
    case BoundaryLabel::Down: return "down";
  }
  return "?";
}

inline BoundaryLabel flip_boundary(BoundaryLabel b) {
  switch (b) {
    case BoundaryLabel::Free: return BoundaryLabel::Free;
    case BoundaryLabel::Up: return BoundaryLabel::Down;
    case BoundaryLabel::Down: return BoundaryLabel::Up;
  }
  return b;
}

enum class DefectKind { Eta, Duality };

struct DefectInsertion {
  DefectKind kind;
  int bond;  // bond j = (j, j+1 mod L); 1 <= j <= L on the ring, j < L when open
};

struct DefectSpec {
  bool periodic = true;
  BoundaryLabel left = BoundaryLabel::Free;   // site-1 boundary when open
  BoundaryLabel right = BoundaryLabel::Free;  // site-L boundary when open
  double lambda = 1.0;
  std::vector<DefectInsertion> insertions;
};

namespace detail {
inline int bond_right_site(int bond, int length) { return bond == length ? 1 : bond + 1; }
}  // namespace detail

/// Builds the chain Hamiltonian as a canonical PauliSum.
///
/// The defect-free periodic chain is -sum_j (Z_j Z_{j+1} + lambda X_j). An
/// eta insertion flips the sign of one ZZ bond. A duality insertion at bond
/// (j, j+1) removes that bond's ZZ term and the transverse field on site
/// j+1, adding -Z_j X_{j+1} in their place (unit coefficient). Open chains
/// drop the (L, 1) bond and add the boundary fields +a Z_1, +a Z_L.
inline PauliSum build(const DefectSpec& spec, int length) {
  if (length < 3) throw std::invalid_argument("chain needs at least 3 sites");
  detail::check_sites(length);
  std::vector<int> bond_kind(static_cast<size_t>(length) + 1, 0);  // 0 plain, 1 eta, 2 duality
  for (const auto& ins : spec.insertions) {
    const int max_bond = spec.periodic ? length : length - 1;
    if (ins.bond < 1 || ins.bond > max_bond) {
      throw std::invalid_argument("insertion bond " + std::to_string(ins.bond) +
                                  (spec.periodic ? " out of range" : " not allowed on an open chain"));
    }
    if (bond_kind[static_cast<size_t>(ins.bond)] != 0) {
      throw std::invalid_argument("duplicate insertion at bond " + std::to_string(ins.bond));
    }
    bond_kind[static_cast<size_t>(ins.bond)] = (ins.kind == DefectKind::Eta) ? 1 : 2;
  }

  PauliSum h(length);
  std::vector<bool> field_consumed(static_cast<size_t>(length) + 1, false);
  const int last_bond = spec.periodic ? length : length - 1;
  for (int j = 1; j <= last_bond; ++j) {
    const int k = detail::bond_right_site(j, length);
    const int kind = bond_kind[static_cast<size_t>(j)];
    PauliSum zz(length);
    if (kind == 2) {
      // (Z_j Z_k + lambda X_k) -> Z_j X_k
      PauliString zx = multiply(PauliString::single(length, 'Z', j),
                                PauliString::single(length, 'X', k));
      h.add(-1.0, zx);
      field_consumed[static_cast<size_t>(k)] = true;
    } else {
      PauliString p = multiply(PauliString::single(length, 'Z', j),
                               PauliString::single(length, 'Z', k));
      h.add(kind == 1 ? +1.0 : -1.0, p);
    }
  }
  for (int j = 1; j <= length; ++j) {
    if (!field_consumed[static_cast<size_t>(j)] && spec.lambda != 0.0) {
      h.add(-spec.lambda, PauliString::single(length, 'X', j));
    }
  }
  if (!spec.periodic) {
    const int a1 = boundary_field(spec.left);
    const int aL = boundary_field(spec.right);
    if (a1 != 0) h.add(a1, PauliString::single(length, 'Z', 1));
    if (aL != 0) h.add(aL, PauliString::single(length, 'Z', length));
  }
  return canonicalize(h);
}

/// The named defect Hamiltonians (all at lambda = 1).
enum class NamedHamiltonian {
  Periodic,
  EtaAtL1,          // eta on bond (L, 1)
  EtaAt12,          // eta on bond (1, 2)
  EtaEta,           // eta on bonds (L, 1) and (1, 2)
  DualityAtL1,      // duality on bond (L, 1)
  DualityAt12,      // duality on bond (1, 2)
  EtaDuality,       // eta on (L, 1), duality on (1, 2)
  DualityEta,       // duality on (L, 1), eta on (1, 2)
  DualityDuality,   // duality on (L, 1) and (1, 2)
  TMinus,           // one-site-shorter chain embedded on sites 2..L, bridge -Z_L Z_2
  TMinusEta,        // same with the bridge sign flipped
};

/// Exact transcription of the named Hamiltonians. The TMinus variants leave
/// site 1 untouched so operator identities stay in one fixed index space.
inline PauliSum build_named(NamedHamiltonian name, int length) {
  if (length < 3) throw std::invalid_argument("chain needs at least 3 sites");
  const auto spec_of = [&](std::vector<DefectInsertion> ins) {
    DefectSpec s;
    s.insertions = std::move(ins);
    return s;
  };
  switch (name) {
    case NamedHamiltonian::Periodic:
      return build(spec_of({}), length);
    case NamedHamiltonian::EtaAtL1:
      return build(spec_of({{DefectKind::Eta, length}}), length);
    case NamedHamiltonian::EtaAt12:
      return build(spec_of({{DefectKind::Eta, 1}}), length);
    case NamedHamiltonian::EtaEta:
      if (length < 4) throw std::invalid_argument("two-defect chain needs at least 4 sites");
      return build(spec_of({{DefectKind::Eta, length}, {DefectKind::Eta, 1}}), length);
    case NamedHamiltonian::DualityAtL1:
      return build(spec_of({{DefectKind::Duality, length}}), length);
    case NamedHamiltonian::DualityAt12:
      return build(spec_of({{DefectKind::Duality, 1}}), length);
    case NamedHamiltonian::EtaDuality:
      if (length < 4) throw std::invalid_argument("two-defect chain needs at least 4 sites");
      return build(spec_of({{DefectKind::Eta, length}, {DefectKind::Duality, 1}}), length);
    case NamedHamiltonian::DualityEta:
      if (length < 4) throw std::invalid_argument("two-defect chain needs at least 4 sites");
      return build(spec_of({{DefectKind::Duality, length}, {DefectKind::Eta, 1}}), length);
    case NamedHamiltonian::DualityDuality:
      if (length < 4) throw std::invalid_argument("two-defect chain needs at least 4 sites");
      return build(spec_of({{DefectKind::Duality, length}, {DefectKind::Duality, 1}}), length);
    case NamedHamiltonian::TMinus:
    case NamedHamiltonian::TMinusEta: {
      if (length < 4) throw std::invalid_argument("T- chain needs at least 4 sites");
      PauliSum h(length);
      const double bridge = (name == NamedHamiltonian::TMinus) ? -1.0 : +1.0;
      h.add(bridge, multiply(PauliString::single(length, 'Z', length),
                             PauliString::single(length, 'Z', 2)));
      for (int j = 3; j <= length; ++j) {
        h.add(-1.0, multiply(PauliString::single(length, 'Z', j - 1),
                             PauliString::single(length, 'Z', j)));
      }
      for (int j = 2; j <= length; ++j) {
        h.add(-1.0, PauliString::single(length, 'X', j));
      }
      return canonicalize(h);
    }
  }
  throw std::invalid_argument("unknown named Hamiltonian");
}

/// Finite open chain with the left boundary set by A and the right end free:
/// -sum ZZ - sum X + a Z_1, with the usual insertion rules (lambda = 1).
inline PauliSum build_open_boundary_chain(BoundaryLabel a,
                                          const std::vector<DefectInsertion>& insertions,
                                          int length) {
  DefectSpec spec;
  spec.periodic = false;
  spec.left = a;
  spec.right = BoundaryLabel::Free;
  spec.insertions = insertions;
  return build(spec, length);
}

/// Open chain living on sites first..last of an L-site register, with a left
/// boundary field +a Z_first and a free right end. Sites outside the window
/// are untouched. Used to express fused one-site-shorter chains in the
/// original index space.
inline PauliSum build_open_chain_on_window(BoundaryLabel a, int first, int last, int length) {
  detail::check_sites(length);
  if (first < 1 || last > length || last - first + 1 < 2) {
    throw std::invalid_argument("invalid site window");
  }
  PauliSum h(length);
  for (int j = first; j < last; ++j) {
    h.add(-1.0, multiply(PauliString::single(length, 'Z', j),
                         PauliString::single(length, 'Z', j + 1)));
  }
  for (int j = first; j <= last; ++j) {
    h.add(-1.0, PauliString::single(length, 'X', j));
  }
  const int field = boundary_field(a);
  if (field != 0) h.add(field, PauliString::single(length, 'Z', first));
  return canonicalize(h);
}

// --- CLI-facing serialization: topology=periodic|open:<A>,<B>, lambda=<x>,
// insert=eta@(6,1), insert=duality@(1,2) ---

inline BoundaryLabel parse_boundary(const std::string& s) {
  if (s == "f" || s == "free") return BoundaryLabel::Free;
  if (s == "up") return BoundaryLabel::Up;
  if (s == "down") return BoundaryLabel::Down;
  throw std::invalid_argument("unknown boundary label '" + s + "' (want f, up, down)");
}

inline void parse_topology(const std::string& s, DefectSpec& spec) {
  if (s == "periodic") {
    spec.periodic = true;
    return;
  }
  if (s.rfind("open:", 0) == 0) {
    const std::string rest = s.substr(5);
    const size_t comma = rest.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("open topology wants open:<A>,<B>");
    }
    spec.periodic = false;
    spec.left = parse_boundary(rest.substr(0, comma));
    spec.right = parse_boundary(rest.substr(comma + 1));
    return;
  }
  throw std::invalid_argument("unknown topology '" + s + "'");
}

/// Parses "eta@(6,1)" / "duality@(1,2)" against a given chain length.
inline DefectInsertion parse_insertion(const std::string& s, int length) {
  const size_t at = s.find('@');
  if (at == std::string::npos) throw std::invalid_argument("insertion wants kind@(j,k)");
  const std::string kind = s.substr(0, at);
  DefectInsertion ins{};
  if (kind == "eta") ins.kind = DefectKind::Eta;
  else if (kind == "duality") ins.kind = DefectKind::Duality;
  else throw std::invalid_argument("unknown defect kind '" + kind + "'");
  int j = 0, k = 0;
  char lp = 0, comma = 0, rp = 0;
  std::istringstream bs(s.substr(at + 1));
  if (!(bs >> lp >> j >> comma >> k >> rp) || lp != '(' || comma != ',' || rp != ')') {
    throw std::invalid_argument("bad bond syntax in '" + s + "'");
  }
  if (j < 1 || j > length || k != (j == length ? 1 : j + 1)) {
    throw std::invalid_argument("bond (" + std::to_string(j) + "," + std::to_string(k) +
                                ") is not a nearest-neighbor bond of an L=" +
                                std::to_string(length) + " ring");
  }
  ins.bond = j;
  return ins;
}

inline std::string format_insertion(const DefectInsertion& ins, int length) {
  std::ostringstream os;
  os << (ins.kind == DefectKind::Eta ? "eta" : "duality") << "@(" << ins.bond << ","
     << detail::bond_right_site(ins.bond, length) << ")";
  return os.str();
}

inline std::string format_topology(const DefectSpec& spec) {
  if (spec.periodic) return "periodic";
  return std::string("open:") + boundary_name(spec.left) + "," + boundary_name(spec.right);
}

}  // namespace dsre
