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

#include "dsre/hamiltonians.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "dsre/clifford.hpp"
#include "dsre/eigensolver.hpp"

using namespace dsre;

namespace {

bool has_term(const PauliSum& h, const std::string& ops, double coeff) {
  const auto p = PauliString::from_ops(ops);
  for (const auto& t : h.terms) {
    if (t.x_bits == p.x_bits && t.z_bits == p.z_bits) {
      return std::abs(t.coeff - coeff * p.hermitian_sign()) < 1e-12;
    }
  }
  return false;
}

bool touches_site(const PauliSum& h, int site) {
  const uint64_t bit = uint64_t{1} << (site - 1);
  for (const auto& t : h.terms) {
    if ((t.x_bits | t.z_bits) & bit) return true;
  }
  return false;
}

PauliSum cyclic_shift(const PauliSum& h) {
  PauliSum out(h.length);
  const uint64_t mask = (uint64_t{1} << h.length) - 1;
  for (const auto& t : h.terms) {
    PauliTerm nt = t;
    nt.x_bits = ((t.x_bits << 1) | (t.x_bits >> (h.length - 1))) & mask;
    nt.z_bits = ((t.z_bits << 1) | (t.z_bits >> (h.length - 1))) & mask;
    out.terms.push_back(nt);
  }
  return canonicalize(out);
}

}  // namespace

TEST_CASE("periodic critical chain has 2L unit-coefficient terms") {
  const auto h = build(DefectSpec{}, 4);
  CHECK(h.terms.size() == 8);
  for (const auto& t : h.terms) CHECK(t.coeff == Catch::Approx(-1.0));
  CHECK(has_term(h, "ZZII", -1.0));
  CHECK(has_term(h, "ZIIZ", -1.0));  // wrap bond (4, 1)
  CHECK(has_term(h, "XIII", -1.0));
  CHECK(is_real_matrix(h));
}

TEST_CASE("open chains: boundary fields and the missing wrap bond") {
  DefectSpec spec;
  spec.periodic = false;
  spec.left = BoundaryLabel::Up;
  spec.right = BoundaryLabel::Up;
  const auto h = build(spec, 5);
  CHECK(has_term(h, "ZIIII", -1.0));
  CHECK(has_term(h, "IIIIZ", -1.0));
  CHECK_FALSE(has_term(h, "ZIIIZ", -1.0));
  CHECK_FALSE(has_term(h, "ZIIIZ", 1.0));

  DefectSpec ff;
  ff.periodic = false;
  const auto hf = build(ff, 5);
  CHECK(hf.terms.size() == 4 + 5);  // 4 bonds + 5 fields, no boundary Z
  for (const auto& t : hf.terms) CHECK(std::popcount(t.x_bits | t.z_bits) <= 2);
}

TEST_CASE("defect insertions modify exactly the stated terms") {
  SECTION("eta at the wrap bond") {
    DefectSpec spec;
    spec.insertions = {{DefectKind::Eta, 6}};
    const auto h = build(spec, 6);
    CHECK(sums_equal(h, build_named(NamedHamiltonian::EtaAtL1, 6)));
    CHECK(has_term(h, "ZIIIIZ", +1.0));
  }
  SECTION("duality consumes the right-site field") {
    const auto h = build_named(NamedHamiltonian::DualityAtL1, 6);
    CHECK(has_term(h, "XIIIIZ", -1.0));  // -Z_6 X_1
    CHECK_FALSE(has_term(h, "XIIIII", -1.0));
    CHECK(has_term(h, "IXIIII", -1.0));
  }
}

TEST_CASE("named Hamiltonians match their formulas") {
  const int L = 6;
  const auto hdd = build_named(NamedHamiltonian::DualityDuality, L);
  CHECK(has_term(hdd, "XIIIIZ", -1.0));  // -Z_L X_1
  CHECK(has_term(hdd, "ZXIIII", -1.0));  // -Z_1 X_2
  CHECK_FALSE(has_term(hdd, "XIIIII", -1.0));
  CHECK_FALSE(has_term(hdd, "IXIIII", -1.0));

  const auto ht = build_named(NamedHamiltonian::TMinus, L);
  CHECK_FALSE(touches_site(ht, 1));
  CHECK(has_term(ht, "IZIIIZ", -1.0));  // bridge -Z_6 Z_2
  const auto hte = build_named(NamedHamiltonian::TMinusEta, L);
  CHECK(has_term(hte, "IZIIIZ", +1.0));

  const auto hed = build_named(NamedHamiltonian::EtaDuality, L);
  CHECK(has_term(hed, "ZIIIIZ", +1.0));
  CHECK(has_term(hed, "ZXIIII", -1.0));
  const auto hde = build_named(NamedHamiltonian::DualityEta, L);
  CHECK(has_term(hde, "XIIIIZ", -1.0));
  CHECK(has_term(hde, "ZZIIII", +1.0));
}

TEST_CASE("open boundary chain variants") {
  const auto up = build_open_boundary_chain(BoundaryLabel::Up, {}, 5);
  CHECK(has_term(up, "ZIIII", -1.0));
  const auto free = build_open_boundary_chain(BoundaryLabel::Free, {}, 5);
  for (const auto& t : free.terms) {
    CHECK((std::popcount(t.x_bits | t.z_bits) == 2 || t.x_bits != 0));
  }
  const auto up_eta = build_open_boundary_chain(BoundaryLabel::Up, {{DefectKind::Eta, 1}}, 5);
  CHECK(has_term(up_eta, "ZZIII", +1.0));
  CHECK(has_term(up_eta, "ZIIII", -1.0));
}

TEST_CASE("insertion validation") {
  DefectSpec spec;
  spec.insertions = {{DefectKind::Eta, 2}, {DefectKind::Duality, 2}};
  CHECK_THROWS_AS(build(spec, 6), std::invalid_argument);
  DefectSpec open_cut;
  open_cut.periodic = false;
  open_cut.insertions = {{DefectKind::Eta, 6}};
  CHECK_THROWS_AS(build(open_cut, 6), std::invalid_argument);
  CHECK_THROWS_AS(build(DefectSpec{}, 2), std::invalid_argument);
}

TEST_CASE("all built sums are Hermitian with real structure") {
  for (auto name : {NamedHamiltonian::Periodic, NamedHamiltonian::EtaEta,
                    NamedHamiltonian::DualityDuality, NamedHamiltonian::TMinus}) {
    const auto h = build_named(name, 6);
    CHECK(is_real_matrix(h));
    for (const auto& t : h.terms) CHECK(std::abs(t.coeff) == Catch::Approx(1.0));
  }
}

TEST_CASE("translation covariance of the periodic defect-free chain") {
  const auto h = build(DefectSpec{}, 6);
  CHECK(sums_equal(cyclic_shift(h), h, 0.0));
}

TEST_CASE("defect mobility: eta moves bond to bond at every position") {
  const int L = 6;
  for (int j = 1; j <= L; ++j) {
    const int prev_bond = (j == 1) ? L : j - 1;
    DefectSpec in_spec, out_spec;
    in_spec.insertions = {{DefectKind::Eta, prev_bond}};
    out_spec.insertions = {{DefectKind::Eta, j}};
    const auto u = defect_unitary(DefectUnitary::MoveEta, j, L);
    CHECK(sums_equal(conjugate_sum(u, build(in_spec, L)), build(out_spec, L)));
  }
}

TEST_CASE("critical ground-state energy per site trends to -4/pi") {
  const double target = -4.0 / M_PI;
  double prev = -10.0;
  for (int L : {8, 10, 12}) {
    SolveOptions opts;
    opts.force_lanczos = L > 8;
    const auto r = ground_state(build(DefectSpec{}, L), opts);
    const double per_site = r.energies[0] / L;
    CHECK(per_site > prev);   // increases toward the limit
    CHECK(per_site < target); // from below
    prev = per_site;
  }
  CHECK(std::abs(prev - target) < 0.01);
}

TEST_CASE("spec serialization round-trips") {
  DefectSpec spec;
  spec.periodic = false;
  spec.left = BoundaryLabel::Up;
  spec.right = BoundaryLabel::Free;
  CHECK(format_topology(spec) == "open:up,f");
  DefectSpec parsed;
  parse_topology("open:up,f", parsed);
  CHECK(parsed.left == BoundaryLabel::Up);
  CHECK(parsed.right == BoundaryLabel::Free);
  parse_topology("periodic", parsed);
  CHECK(parsed.periodic);

  const auto ins = parse_insertion("eta@(6,1)", 6);
  CHECK(ins.kind == DefectKind::Eta);
  CHECK(ins.bond == 6);
  CHECK(format_insertion(ins, 6) == "eta@(6,1)");
  const auto d = parse_insertion("duality@(1,2)", 6);
  CHECK(d.bond == 1);
  CHECK_THROWS_AS(parse_insertion("eta@(2,4)", 6), std::invalid_argument);
  CHECK_THROWS_AS(parse_insertion("foo@(1,2)", 6), std::invalid_argument);
  CHECK_THROWS_AS(parse_topology("open:up", parsed), std::invalid_argument);
}
