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

// Finite-size-scaling fits for SRE data: ordinary least squares over the
// basis {L, ln L, 1, 1/L}, the two-point log combination 2 M(L/2) - M(L)
// that cancels the extensive term, and the shifted-size fit used when a
// fused defect removes one lattice site.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dsre {

enum class FitBasis { Linear, LogL, Const, InvL };

inline const char* fit_basis_name(FitBasis b) {
  switch (b) {
    case FitBasis::Linear: return "L";
    case FitBasis::LogL: return "lnL";
    case FitBasis::Const: return "const";
    case FitBasis::InvL: return "invL";
  }
  return "?";
}

struct FitResult {
  std::vector<std::string> model;
  std::vector<double> coefficients;
  std::vector<double> std_errors;
  double residual_norm = 0.0;
  std::vector<double> data_range;  // L values used, ascending
};

namespace detail {

inline FitResult solve_least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& y,
                                     std::vector<std::string> model,
                                     std::vector<double> data_range) {
  const Eigen::Index n = design.rows(), p = design.cols();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < p) {
    throw std::runtime_error("singular design matrix: basis functions are not independent on "
                             "this data window");
  }
  const Eigen::VectorXd coef = qr.solve(y);
  const Eigen::VectorXd resid = y - design * coef;
  const double rss = resid.squaredNorm();
  FitResult out;
  out.model = std::move(model);
  out.coefficients.assign(coef.data(), coef.data() + p);
  out.residual_norm = std::sqrt(rss);
  out.data_range = std::move(data_range);
  out.std_errors.assign(static_cast<size_t>(p), 0.0);
  if (n > p) {
    const double sigma2 = rss / static_cast<double>(n - p);
    const Eigen::MatrixXd xtx_inv =
        (design.transpose() * design).ldlt().solve(Eigen::MatrixXd::Identity(p, p));
    for (Eigen::Index i = 0; i < p; ++i) {
      out.std_errors[static_cast<size_t>(i)] = std::sqrt(std::max(0.0, sigma2 * xtx_inv(i, i)));
    }
  }
  return out;
}

}  // namespace detail

/// Ordinary least squares of M against the chosen basis functions of L.
inline FitResult fit(const std::vector<std::pair<double, double>>& data,
                     const std::vector<FitBasis>& basis) {
  if (basis.empty()) throw std::invalid_argument("empty basis");
  if (data.size() < basis.size()) {
    throw std::invalid_argument("need at least as many points as basis functions");
  }
  std::vector<double> ls;
  for (const auto& [l, m] : data) {
    (void)m;
    if (l <= 0) throw std::invalid_argument("system sizes must be positive");
    ls.push_back(l);
  }
  std::sort(ls.begin(), ls.end());
  if (std::adjacent_find(ls.begin(), ls.end()) != ls.end()) {
    throw std::invalid_argument("duplicate system sizes in fit data");
  }

  const Eigen::Index n = static_cast<Eigen::Index>(data.size());
  const Eigen::Index p = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd design(n, p);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double l = data[static_cast<size_t>(i)].first;
    y[i] = data[static_cast<size_t>(i)].second;
    for (Eigen::Index j = 0; j < p; ++j) {
      switch (basis[static_cast<size_t>(j)]) {
        case FitBasis::Linear: design(i, j) = l; break;
        case FitBasis::LogL: design(i, j) = std::log(l); break;
        case FitBasis::Const: design(i, j) = 1.0; break;
        case FitBasis::InvL: design(i, j) = 1.0 / l; break;
      }
    }
  }
  std::vector<std::string> model;
  for (auto b : basis) model.emplace_back(fit_basis_name(b));
  return detail::solve_least_squares(design, y, std::move(model), std::move(ls));
}

/// Emits (L, 2 M(L/2) - M(L)) for every even L whose half size is present.
/// For M = m L + g ln L + c the combination equals g ln L + (c - g ln 4),
/// so its lnL slope reproduces the log coefficient g directly.
inline std::vector<std::pair<double, double>> two_point_log(
    const std::vector<std::pair<double, double>>& data) {
  std::map<long, double> by_l;
  for (const auto& [l, m] : data) {
    const long key = std::lround(l);
    if (std::abs(l - static_cast<double>(key)) > 1e-9) {
      throw std::invalid_argument("two_point_log wants integer system sizes");
    }
    if (!by_l.emplace(key, m).second) {
      throw std::invalid_argument("duplicate system size " + std::to_string(key));
    }
  }
  std::vector<std::pair<double, double>> out;
  for (const auto& [l, m] : by_l) {
    if (l % 2 != 0) continue;
    const auto half = by_l.find(l / 2);
    if (half == by_l.end()) continue;
    out.emplace_back(static_cast<double>(l), 2.0 * half->second - m);
  }
  if (out.empty()) {
    throw std::invalid_argument("no (L, L/2) pairs present in the data");
  }
  return out;
}

/// Fits M = m (L - shift) - c and reports c with a positive sign, matching
/// the convention M_alpha = m_alpha L - c_alpha + r/L for the universal
/// size-independent term. shift = 1 accounts for a defect that removes one
/// site from the chain.
inline FitResult extract_defect_constant(const std::vector<std::pair<double, double>>& data,
                                         int shift, bool with_inv_l = false) {
  if (shift != 0 && shift != 1) throw std::invalid_argument("shift must be 0 or 1");
  const Eigen::Index n = static_cast<Eigen::Index>(data.size());
  const Eigen::Index p = with_inv_l ? 3 : 2;
  if (n < p) throw std::invalid_argument("not enough points for the shifted fit");
  std::vector<double> ls;
  Eigen::MatrixXd design(n, p);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double l = data[static_cast<size_t>(i)].first;
    ls.push_back(l);
    y[i] = data[static_cast<size_t>(i)].second;
    design(i, 0) = l - shift;
    design(i, 1) = -1.0;  // so the reported coefficient is +c
    if (with_inv_l) design(i, 2) = 1.0 / l;
  }
  std::sort(ls.begin(), ls.end());
  std::vector<std::string> model = {shift ? "L-1" : "L", "defect_const"};
  if (with_inv_l) model.emplace_back("invL");
  return detail::solve_least_squares(design, y, std::move(model), std::move(ls));
}

// --- CSV glue: columns L,alpha,sre with a header line ---

struct SreSample {
  double length;
  double alpha;
  double value;
};

inline std::vector<SreSample> parse_sre_csv(std::istream& in) {
  std::vector<SreSample> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first && line.rfind("L,", 0) == 0) {
      first = false;
      continue;  // header
    }
    first = false;
    std::istringstream ls(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() < 3) throw std::invalid_argument("CSV row needs L,alpha,sre: " + line);
    try {
      SreSample s{std::stod(cells[0]), std::stod(cells[1]), std::stod(cells[2])};
      rows.push_back(s);
    } catch (const std::exception&) {
      // rows marked as failed (non-numeric sre) are skipped
      continue;
    }
  }
  if (rows.empty()) throw std::invalid_argument("no usable rows in CSV");
  return rows;
}

inline std::vector<std::pair<double, double>> csv_to_fit_data(const std::vector<SreSample>& rows,
                                                              double alpha) {
  std::vector<std::pair<double, double>> data;
  for (const auto& r : rows) {
    if (std::abs(r.alpha - alpha) < 1e-9) data.emplace_back(r.length, r.value);
  }
  if (data.empty()) {
    throw std::invalid_argument("no rows with alpha = " + std::to_string(alpha));
  }
  return data;
}

}  // namespace dsre
