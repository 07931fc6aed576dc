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

// Command-line front end: build -> solve -> SRE -> sweep -> fit -> verify ->
// bcft, with every output embedding the full run configuration.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "dsre/bcft.hpp"
#include "dsre/clifford.hpp"
#include "dsre/eigensolver.hpp"
#include "dsre/fit.hpp"
#include "dsre/fusion.hpp"
#include "dsre/hamiltonians.hpp"
#include "dsre/pauli.hpp"
#include "dsre/sre.hpp"
#include "dsre/version.hpp"

using json = nlohmann::ordered_json;

namespace {

struct RunConfig {
  std::string command;
  std::string topology = "periodic";
  double lambda = 1.0;
  std::vector<std::string> insertions;
  double alpha = 2.0;
  int length = 0;
  std::vector<int> length_list;
  uint64_t seed = 0x5eed;
  std::string state;  // built-in test states: T, ghz, plus, zero
  std::optional<int> sector;
  bool accept_degenerate = false;
  int max_sre_sites = 14;
  int max_solver_sites = 14;
  int threads = 0;
  bool bits = false;
  std::string output = "-";
  std::string clifford_file;
  std::string bell_dump;

  json to_json() const {
    json j;
    j["command"] = command;
    j["version"] = dsre::kVersion;
    j["topology"] = topology;
    j["lambda"] = lambda;
    j["insertions"] = insertions;
    j["alpha"] = alpha;
    if (length > 0) j["L"] = length;
    if (!length_list.empty()) j["L_list"] = length_list;
    j["seed"] = seed;
    if (!state.empty()) j["state"] = state;
    j["sector"] = sector ? json(*sector) : json(nullptr);
    j["accept_degenerate"] = accept_degenerate;
    j["max_sre_sites"] = max_sre_sites;
    j["max_solver_sites"] = max_solver_sites;
    j["threads"] = threads;
    j["bits"] = bits;
    if (!clifford_file.empty()) j["clifford_file"] = clifford_file;
    if (!bell_dump.empty()) j["bell_dump"] = bell_dump;
    return j;
  }
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::endl;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << text << std::endl;
}

dsre::DefectSpec spec_from_config(const RunConfig& cfg, int length) {
  dsre::DefectSpec spec;
  dsre::parse_topology(cfg.topology, spec);
  spec.lambda = cfg.lambda;
  for (const auto& ins : cfg.insertions) {
    spec.insertions.push_back(dsre::parse_insertion(ins, length));
  }
  return spec;
}

dsre::StateVector builtin_state(const std::string& name, int length) {
  using dsre::StateVector;
  if (name == "zero") return StateVector::basis_state(length, 0);
  if (name == "plus") {
    StateVector v(length);
    const double a = 1.0 / std::sqrt(static_cast<double>(v.dim()));
    for (auto& x : v.amps) x = a;
    v.real_valued = true;
    return v;
  }
  if (name == "ghz") {
    StateVector v(length);
    v.amps.front() = v.amps.back() = 1.0 / std::sqrt(2.0);
    v.real_valued = true;
    return v;
  }
  if (name == "T") {
    StateVector t(1);
    t.amps[0] = 1.0 / std::sqrt(2.0);
    t.amps[1] = std::polar(1.0 / std::sqrt(2.0), M_PI / 4);
    StateVector v = t;
    for (int j = 1; j < length; ++j) {
      StateVector w(j + 1);
      for (size_t i = 0; i < v.dim(); ++i) {
        w.amps[i] = v.amps[i] * t.amps[0];
        w.amps[i + v.dim()] = v.amps[i] * t.amps[1];
      }
      v = std::move(w);
    }
    return v;
  }
  throw std::invalid_argument("unknown built-in state '" + name + "' (want T, ghz, plus, zero)");
}

struct SrePoint {
  double energy = 0.0;
  double gap = 0.0;
  bool degenerate = false;
  double sre = 0.0;
  double wall_time_s = 0.0;
};

SrePoint run_sre_point(const RunConfig& cfg, int length) {
  const auto start = std::chrono::steady_clock::now();
  SrePoint point;
  dsre::SreOptions sre_opts;
  sre_opts.max_sites = cfg.max_sre_sites;
  sre_opts.threads = cfg.threads;
  dsre::StateVector psi;
  if (!cfg.state.empty()) {
    psi = builtin_state(cfg.state, length);
  } else {
    auto h = dsre::build(spec_from_config(cfg, length), length);
    if (!cfg.clifford_file.empty()) {
      std::ifstream in(cfg.clifford_file);
      if (!in) throw std::runtime_error("cannot open clifford file '" + cfg.clifford_file + "'");
      const auto gates = dsre::parse_gate_sequence(in);
      h = dsre::conjugate_sum(dsre::from_gate_sequence(gates, length), h);
    }
    dsre::SolveOptions solve_opts;
    solve_opts.seed = cfg.seed;
    solve_opts.max_sites = cfg.max_solver_sites;
    solve_opts.spin_flip_sector = cfg.sector;
    const auto r = dsre::ground_state(h, solve_opts);
    point.energy = r.energies[0];
    point.gap = r.gap;
    point.degenerate = r.degenerate;
    if (r.degenerate && !cfg.sector && !cfg.accept_degenerate) {
      throw std::runtime_error(
          "ground space is degenerate (gap " + std::to_string(r.gap) +
          "); select a sector with --sector +1/-1 or pass --accept-degenerate");
    }
    psi = r.states[0];
  }
  if (!cfg.bell_dump.empty()) {
    dsre::write_bell_dump(cfg.bell_dump, dsre::bell_distribution(psi, sre_opts));
  }
  point.sre = dsre::sre(psi, cfg.alpha, sre_opts).value;
  if (cfg.bits) point.sre /= std::log(2.0);
  point.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return point;
}

int cmd_sre(const RunConfig& cfg) {
  const auto point = run_sre_point(cfg, cfg.length);
  json out;
  out["config"] = cfg.to_json();
  out["L"] = cfg.length;
  out["alpha"] = cfg.alpha;
  out["energy"] = point.energy;
  out["gap"] = point.gap;
  out["degenerate"] = point.degenerate;
  out["sre"] = point.sre;
  out["wall_time_s"] = point.wall_time_s;
  emit(cfg.output, out.dump(2));
  return 0;
}

int cmd_sweep(const RunConfig& cfg) {
  if (cfg.length_list.empty()) throw std::invalid_argument("sweep needs a nonempty L list");
  if (cfg.output.empty() || cfg.output == "-") {
    throw std::invalid_argument("sweep writes CSV; pass -o <file>");
  }
  // Resume: keep rows already completed for this alpha.
  std::set<int> done;
  std::vector<std::string> existing;
  {
    std::ifstream in(cfg.output);
    std::string line;
    while (in && std::getline(in, line)) {
      if (line.empty() || line.rfind("L,", 0) == 0 || line.rfind("#", 0) == 0) continue;
      std::istringstream ls(line);
      std::string cell;
      std::vector<std::string> cells;
      while (std::getline(ls, cell, ',')) cells.push_back(cell);
      if (cells.size() >= 6 && cells[5] == "ok") {
        try {
          if (std::abs(std::stod(cells[1]) - cfg.alpha) < 1e-12) {
            done.insert(std::stoi(cells[0]));
            existing.push_back(line);
          }
        } catch (const std::exception&) {
        }
      }
    }
  }
  std::ostringstream rows;
  rows << "# " << cfg.to_json().dump() << "\n";
  rows << "L,alpha,sre,energy,gap,status\n";
  for (const auto& line : existing) rows << line << "\n";
  int failures = 0;
  for (int length : cfg.length_list) {
    if (done.count(length)) continue;
    rows.precision(17);
    try {
      const auto point = run_sre_point(cfg, length);
      rows << length << ',' << cfg.alpha << ',' << point.sre << ',' << point.energy << ','
           << point.gap << ",ok\n";
    } catch (const std::exception& e) {
      std::string why = e.what();
      for (auto& ch : why) {
        if (ch == ',' || ch == '\n') ch = ';';
      }
      rows << length << ',' << cfg.alpha << ",,,,error:" << why << "\n";
      ++failures;
    }
    emit(cfg.output, rows.str());  // checkpoint after every point
  }
  emit(cfg.output, rows.str());
  return failures == 0 ? 0 : 1;
}

int cmd_fit(const RunConfig& cfg, const std::string& csv_path, const std::string& basis_arg,
            bool two_point, int shift, bool with_inv_l) {
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("cannot open CSV '" + csv_path + "'");
  const auto rows = dsre::parse_sre_csv(in);
  auto data = dsre::csv_to_fit_data(rows, cfg.alpha);
  std::sort(data.begin(), data.end());

  json out;
  out["config"] = cfg.to_json();
  out["csv"] = csv_path;
  dsre::FitResult res;
  if (two_point) {
    const auto combo = dsre::two_point_log(data);
    res = dsre::fit(combo, {dsre::FitBasis::LogL, dsre::FitBasis::Const});
    json points = json::array();
    for (const auto& [l, v] : combo) points.push_back({{"L", l}, {"value", v}});
    out["two_point_log"] = points;
  } else if (shift >= 0) {
    res = dsre::extract_defect_constant(data, shift, with_inv_l);
  } else {
    std::vector<dsre::FitBasis> basis;
    std::istringstream bs(basis_arg);
    std::string tok;
    while (std::getline(bs, tok, ',')) {
      if (tok == "L") basis.push_back(dsre::FitBasis::Linear);
      else if (tok == "lnL") basis.push_back(dsre::FitBasis::LogL);
      else if (tok == "const") basis.push_back(dsre::FitBasis::Const);
      else if (tok == "invL") basis.push_back(dsre::FitBasis::InvL);
      else throw std::invalid_argument("unknown basis tag '" + tok + "'");
    }
    res = dsre::fit(data, basis);
  }
  out["model"] = res.model;
  out["coefficients"] = res.coefficients;
  out["std_errors"] = res.std_errors;
  out["residual_norm"] = res.residual_norm;
  out["window"] = res.data_range;
  emit(cfg.output, out.dump(2));
  return 0;
}

int cmd_verify(const RunConfig& cfg, int max_length, bool include_sre) {
  json arr = json::array();
  bool all_hold = true;
  for (int length = 4; length <= max_length; ++length) {
    for (const auto& rep : dsre::verify_all(length)) {
      json j;
      j["name"] = rep.name;
      j["holds"] = rep.holds;
      j["conclusive"] = rep.conclusive;
      j["max_coeff_dev"] = rep.max_coeff_dev;
      j["witness"] = rep.witness;
      if (!rep.detail.empty()) j["detail"] = rep.detail;
      arr.push_back(j);
      if (!rep.holds && rep.conclusive) all_hold = false;
    }
  }
  if (include_sre) {
    for (int length : {6, 8}) {
      const auto rep = dsre::verify_sre_fusion_relation(length, cfg.alpha);
      json j;
      j["name"] = rep.name;
      j["holds"] = rep.holds;
      j["conclusive"] = rep.conclusive;
      j["max_coeff_dev"] = rep.max_coeff_dev;
      j["witness"] = rep.witness;
      j["detail"] = rep.detail;
      arr.push_back(j);
      if (!rep.holds && rep.conclusive) all_hold = false;
    }
  }
  json out;
  out["config"] = cfg.to_json();
  out["reports"] = arr;
  out["all_hold"] = all_hold;
  emit(cfg.output, out.dump(2));
  return all_hold ? 0 : 1;
}

int cmd_bcft(const RunConfig& cfg, const std::string& amplitude, double qtilde, double radius,
             std::optional<double> corner_c, std::optional<double> corner_theta,
             std::optional<double> corner_h, std::optional<int> casimir_n,
             std::optional<double> casimir_len, std::optional<int> gd_n,
             std::optional<double> gd_v0, std::optional<double> gn_v0) {
  json out;
  out["config"] = cfg.to_json();
  if (!amplitude.empty()) {
    using dsre::real50;
    const int alpha_int = static_cast<int>(std::lround(cfg.alpha));
    const real50 qt(qtilde);
    const real50 rad(radius);
    dsre::Amplitude<real50> amp;
    if (amplitude == "z1f") amp = dsre::amplitude_z1f(qt, alpha_int, rad);
    else if (amplitude == "z1up") amp = dsre::amplitude_z1up(qt, alpha_int, rad);
    else throw std::invalid_argument("unknown amplitude '" + amplitude + "' (want z1f, z1up)");
    // weight estimate from three samples below the requested nome
    std::vector<std::pair<real50, real50>> samples;
    for (int k = 0; k < 3; ++k) {
      const real50 q = qt * pow(real50(10), -2 * k);
      const auto a = (amplitude == "z1f") ? dsre::amplitude_z1f(q, alpha_int, rad)
                                          : dsre::amplitude_z1up(q, alpha_int, rad);
      samples.emplace_back(q, a.value);
    }
    const auto w = dsre::leading_weight(samples, 2.0 * alpha_int);
    out["amplitude"] = amplitude;
    out["alpha"] = alpha_int;
    out["qtilde"] = qtilde;
    out["radius"] = radius;
    out["value"] = static_cast<double>(amp.value);
    out["truncation_bound"] = static_cast<double>(amp.truncation_bound);
    out["terms"] = amp.terms;
    out["h_estimate"] = w.h_estimate;
    out["h_drift"] = w.drift;
  }
  if (corner_c && corner_theta && corner_h) {
    out["corner_exponent"] = dsre::corner_exponent(*corner_c, *corner_theta, *corner_h);
  }
  if (casimir_n && casimir_len) {
    out["casimir_energy"] = dsre::casimir_energy(*casimir_n, *casimir_len);
  }
  if (gd_n && gd_v0) out["g_dirichlet"] = dsre::g_factor_dirichlet(*gd_n, *gd_v0);
  if (gn_v0) out["g_neumann"] = dsre::g_factor_neumann(*gn_v0);
  emit(cfg.output, out.dump(2));
  return 0;
}

int cmd_conjugate(const RunConfig& cfg, const std::string& hamiltonian_path) {
  std::ifstream hin(hamiltonian_path);
  if (!hin) throw std::runtime_error("cannot open '" + hamiltonian_path + "'");
  const auto h = dsre::parse_pauli_sum(hin);
  std::ifstream cin_file(cfg.clifford_file);
  if (!cin_file) throw std::runtime_error("cannot open '" + cfg.clifford_file + "'");
  const auto gates = dsre::parse_gate_sequence(cin_file);
  const auto c = dsre::from_gate_sequence(gates, h.length);
  emit(cfg.output, dsre::format_pauli_sum(dsre::conjugate_sum(c, h)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stabilizer Renyi entropy of Ising chains with conformal defects"};
  app.require_subcommand(1);
  // flat key=value config file; explicit flags win
  app.set_config("--config", "", "key=value config file, [subcommand] sections");
  RunConfig cfg;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--topology", cfg.topology, "periodic or open:<A>,<B> with A,B in {f,up,down}");
    sub->add_option("--lambda", cfg.lambda, "transverse field strength");
    sub->add_option("--insert", cfg.insertions, "defect insertion, e.g. eta@(6,1) or duality@(1,2)");
    sub->add_option("--alpha", cfg.alpha, "Renyi index (alpha != 1)");
    sub->add_option("--seed", cfg.seed, "eigensolver start-vector seed");
    sub->add_option("--sector", cfg.sector, "spin-flip sector +1/-1 for degenerate ground spaces");
    sub->add_flag("--accept-degenerate", cfg.accept_degenerate,
                  "proceed with the gauge-fixed vector when degenerate");
    sub->add_option("--max-sre-sites", cfg.max_sre_sites, "Bell-distribution site cap");
    sub->add_option("--max-solver-sites", cfg.max_solver_sites, "eigensolver site cap");
    sub->add_option("--threads", cfg.threads, "worker threads (0 = auto)");
    sub->add_flag("--bits", cfg.bits, "report entropies in bits instead of nats");
    sub->add_option("-o,--output", cfg.output, "output path ('-' for stdout)");
  };

  auto* sre_cmd = app.add_subcommand("sre", "single SRE point: build, solve, transform");
  add_common(sre_cmd);
  sre_cmd->add_option("-L,--length", cfg.length, "chain length")->required();
  sre_cmd->add_option("--state", cfg.state, "built-in test state (T, ghz, plus, zero)");
  sre_cmd->add_option("--clifford-file", cfg.clifford_file,
                      "gate list conjugating the Hamiltonian before solving");
  sre_cmd->add_option("--dump-bell", cfg.bell_dump, "write the Bell distribution (SREP binary)");

  auto* sweep_cmd = app.add_subcommand("sweep", "SRE across an L list, CSV output, resumable");
  add_common(sweep_cmd);
  std::string l_list_arg;
  sweep_cmd->add_option("--L-list", l_list_arg, "comma-separated lengths, e.g. 6,8,10,12")
      ->required();
  sweep_cmd->add_option("--state", cfg.state, "built-in test state");

  auto* fit_cmd = app.add_subcommand("fit", "least-squares fits of swept SRE data");
  add_common(fit_cmd);
  std::string csv_path, basis_arg = "L,const,invL";
  bool two_point = false, with_inv_l = false;
  int shift = -1;
  fit_cmd->add_option("--csv", csv_path, "input CSV (L,alpha,sre,...)")->required();
  fit_cmd->add_option("--basis", basis_arg, "comma list from {L,lnL,const,invL}");
  fit_cmd->add_flag("--two-point-log", two_point, "fit 2M(L/2)-M(L) against {lnL,const}");
  fit_cmd->add_option("--shift", shift, "defect-constant fit with (L-shift) linear term");
  fit_cmd->add_flag("--with-invL", with_inv_l, "add r/L to the shifted fit");

  auto* verify_cmd = app.add_subcommand("verify-fusion", "certify movement/fusion identities");
  add_common(verify_cmd);
  int max_length = 12;
  bool verify_all_flag = false, include_sre = false;
  verify_cmd->add_flag("--all", verify_all_flag, "run the full catalog (default)");
  verify_cmd->add_option("--max-length", max_length, "largest chain size (from 4)");
  verify_cmd->add_flag("--with-sre-relation", include_sre,
                       "also check the D x D SRE relation numerically");

  auto* bcft_cmd = app.add_subcommand("bcft", "boundary-CFT oracle queries");
  add_common(bcft_cmd);
  std::string amplitude;
  double qtilde = 1e-5, radius = 1.0;
  std::optional<double> corner_c, corner_theta, corner_h, casimir_len, gd_v0, gn_v0;
  std::optional<int> casimir_n, gd_n;
  bcft_cmd->add_option("--amplitude", amplitude, "z1f or z1up");
  bcft_cmd->add_option("--qtilde", qtilde, "open-string nome");
  bcft_cmd->add_option("--radius", radius, "compactification lattice constant");
  bcft_cmd->add_option("--corner-c", corner_c, "corner exponent: central charge");
  bcft_cmd->add_option("--corner-theta", corner_theta, "corner exponent: angle");
  bcft_cmd->add_option("--corner-h", corner_h, "corner exponent: BCCO weight");
  bcft_cmd->add_option("--casimir-n", casimir_n, "Casimir energy: components");
  bcft_cmd->add_option("--casimir-len", casimir_len, "Casimir energy: circumference");
  bcft_cmd->add_option("--g-dirichlet-n", gd_n, "Dirichlet g-factor: components");
  bcft_cmd->add_option("--g-dirichlet-v0", gd_v0, "Dirichlet g-factor: unit-cell volume");
  bcft_cmd->add_option("--g-neumann-v0", gn_v0, "Neumann g-factor: unit-cell volume");

  auto* conj_cmd = app.add_subcommand("conjugate", "conjugate a Pauli-sum file by a gate list");
  conj_cmd->add_option("-o,--output", cfg.output, "output path ('-' for stdout)");
  std::string hamiltonian_path;
  conj_cmd->add_option("--hamiltonian", hamiltonian_path, "Pauli-sum text file")->required();
  conj_cmd->add_option("--clifford-file", cfg.clifford_file, "gate list file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sre_cmd->parsed()) {
      cfg.command = "sre";
      return cmd_sre(cfg);
    }
    if (sweep_cmd->parsed()) {
      cfg.command = "sweep";
      std::istringstream ls(l_list_arg);
      std::string tok;
      while (std::getline(ls, tok, ',')) {
        if (!tok.empty()) cfg.length_list.push_back(std::stoi(tok));
      }
      return cmd_sweep(cfg);
    }
    if (fit_cmd->parsed()) {
      cfg.command = "fit";
      return cmd_fit(cfg, csv_path, basis_arg, two_point, shift, with_inv_l);
    }
    if (verify_cmd->parsed()) {
      cfg.command = "verify-fusion";
      (void)verify_all_flag;
      return cmd_verify(cfg, max_length, include_sre);
    }
    if (bcft_cmd->parsed()) {
      cfg.command = "bcft";
      return cmd_bcft(cfg, amplitude, qtilde, radius, corner_c, corner_theta, corner_h,
                      casimir_n, casimir_len, gd_n, gd_v0, gn_v0);
    }
    if (conj_cmd->parsed()) {
      cfg.command = "conjugate";
      return cmd_conjugate(cfg, hamiltonian_path);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 2;
}
