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

// Stabilizer Renyi entropy via the Bell-basis participation form: for a pure
// state, p_m = Tr^2[sigma^m psi] / 2^L is a probability distribution over
// the 4^L Pauli strings, and M_alpha is its Renyi entropy minus L ln 2.
//
// The distribution is computed by expanding psi (x) psi* into a 4^L array
// whose index interleaves one bit pair per site, then applying the two-qubit
// Bell rotation on each pair in L strided passes (a Walsh-Hadamard-style
// transform), and squaring. Index bit 2j carries x_j and bit 2j+1 carries
// z_j, so a BellDistribution index is exactly the PauliString bit encoding.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "dsre/pauli.hpp"

namespace dsre {

struct resource_error : std::runtime_error {
  size_t required_bytes;
  resource_error(const std::string& what, size_t bytes)
      : std::runtime_error(what), required_bytes(bytes) {}
};

struct SreOptions {
  int max_sites = 14;  // 4^14 doubles ~ 2.1 GiB on the real fast path
  int threads = 0;     // 0 = hardware concurrency
};

struct BellDistribution {
  int length = 0;
  std::vector<double> probabilities;  // 4^length entries
  double sum_check = 0.0;             // sum(p) - 1
};

struct SreResult {
  double alpha = 2.0;
  int length = 0;
  double value = 0.0;  // M_alpha in nats
  double max_prob = 0.0;
  uint64_t participation_count = 0;  // entries above 1e-12 * max_prob
  double sum_check = 0.0;
};

namespace detail {

// Spreads the low 32 bits of x to even bit positions (0, 2, 4, ...).
inline uint64_t spread_even(uint64_t x) {
  x &= 0xFFFFFFFFull;
  x = (x | (x << 16)) & 0x0000FFFF0000FFFFull;
  x = (x | (x << 8)) & 0x00FF00FF00FF00FFull;
  x = (x | (x << 4)) & 0x0F0F0F0F0F0F0F0Full;
  x = (x | (x << 2)) & 0x3333333333333333ull;
  x = (x | (x << 1)) & 0x5555555555555555ull;
  return x;
}

// Gathers even bit positions back into a compact integer.
inline uint64_t compress_even(uint64_t x) {
  x &= 0x5555555555555555ull;
  x = (x | (x >> 1)) & 0x3333333333333333ull;
  x = (x | (x >> 2)) & 0x0F0F0F0F0F0F0F0Full;
  x = (x | (x >> 4)) & 0x00FF00FF00FF00FFull;
  x = (x | (x >> 8)) & 0x0000FFFF0000FFFFull;
  x = (x | (x >> 16)) & 0x00000000FFFFFFFFull;
  return x;
}

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs fn(begin, end) over a fixed partition of [0, total); the partition
// depends only on (total, threads), so results are reproducible.
template <class Fn>
inline void parallel_ranges(uint64_t total, int threads, Fn&& fn) {
  const int t = std::max(1, threads);
  if (t == 1 || total < (uint64_t{1} << 16)) {
    fn(uint64_t{0}, total);
    return;
  }
  std::vector<std::thread> pool;
  const uint64_t chunk = (total + static_cast<uint64_t>(t) - 1) / static_cast<uint64_t>(t);
  for (int i = 0; i < t; ++i) {
    const uint64_t b = std::min(total, chunk * static_cast<uint64_t>(i));
    const uint64_t e = std::min(total, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&fn, b, e] { fn(b, e); });
  }
  for (auto& th : pool) th.join();
}

// One Bell pass on the site-j bit pair of data (real or complex scalars):
//   new(I) = (o00 + o11)/sqrt2     new(X) = (o01 + o10)/sqrt2
//   new(Z) = (o00 - o11)/sqrt2     new(XZ) = (o01 - o10)/sqrt2
// where o_rc is the entry with (row, col) bits (r, c) at positions
// (2j, 2j+1). Offsets within a block of 4s: r*s + c*2s with s = 4^j.
template <class Scalar>
inline void bell_pass(Scalar* data, int length, int j, int threads) {
  const uint64_t s = uint64_t{1} << (2 * j);
  const uint64_t total_pairs = uint64_t{1} << (2 * length - 2);  // blocks * s
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  parallel_ranges(total_pairs, threads, [&](uint64_t begin, uint64_t end) {
    for (uint64_t pi = begin; pi < end; ++pi) {
      const uint64_t block = pi / s;
      const uint64_t off = pi % s;
      const uint64_t base = block * 4 * s + off;
      const Scalar o00 = data[base];
      const Scalar o10 = data[base + s];
      const Scalar o01 = data[base + 2 * s];
      const Scalar o11 = data[base + 3 * s];
      data[base] = (o00 + o11) * inv_sqrt2;
      data[base + s] = (o01 + o10) * inv_sqrt2;
      data[base + 2 * s] = (o00 - o11) * inv_sqrt2;
      data[base + 3 * s] = (o01 - o10) * inv_sqrt2;
    }
  });
}

inline double chunked_sum(const std::vector<double>& v, int threads) {
  const int t = std::max(1, threads);
  const uint64_t n = v.size();
  const uint64_t chunk = (n + static_cast<uint64_t>(t) - 1) / static_cast<uint64_t>(t);
  std::vector<double> partial(static_cast<size_t>(t), 0.0);
  parallel_ranges(n, t, [&](uint64_t b, uint64_t e) {
    const size_t slot = static_cast<size_t>(b / std::max<uint64_t>(chunk, 1));
    double s = 0.0, comp = 0.0;
    for (uint64_t i = b; i < e; ++i) {
      const double y = v[i] - comp;
      const double u = s + y;
      comp = (u - s) - y;
      s = u;
    }
    partial[std::min(slot, partial.size() - 1)] += s;
  });
  double s = 0.0;
  for (double p : partial) s += p;
  return s;
}

}  // namespace detail

/// Bell index of a Pauli bit pair: bit 2j = x_j, bit 2j+1 = z_j.
inline uint64_t bell_index(uint64_t x_bits, uint64_t z_bits) {
  return detail::spread_even(x_bits) | (detail::spread_even(z_bits) << 1);
}

inline std::pair<uint64_t, uint64_t> bell_unpack(uint64_t index) {
  return {detail::compress_even(index), detail::compress_even(index >> 1)};
}

/// The full Bell-basis outcome distribution p_m, m over 4^L Pauli indices.
inline BellDistribution bell_distribution(const StateVector& psi, const SreOptions& opts = {}) {
  const int L = psi.length;
  const bool real_path = psi.real_valued || psi.check_real(1e-14);
  const uint64_t entries = uint64_t{1} << (2 * L);
  const size_t bytes = static_cast<size_t>(entries) * (real_path ? 8 : 24);
  if (L > opts.max_sites) {
    throw resource_error("Bell distribution for L = " + std::to_string(L) + " needs " +
                             std::to_string(bytes) + " bytes, above the " +
                             std::to_string(opts.max_sites) + "-site cap",
                         bytes);
  }
  const int threads = detail::resolve_threads(opts.threads);
  const uint64_t dim = uint64_t{1} << L;

  BellDistribution dist;
  dist.length = L;

  if (real_path) {
    std::vector<double> a(entries);
    // a[m] = psi_r psi_c with r/c gathered from the even/odd bits of m; psi
    // itself is small enough to stay cache-resident.
    std::vector<double> re(dim);
    for (uint64_t i = 0; i < dim; ++i) re[i] = psi.amps[i].real();
    detail::parallel_ranges(entries, threads, [&](uint64_t b, uint64_t e) {
      for (uint64_t m = b; m < e; ++m) {
        const uint64_t r = detail::compress_even(m);
        const uint64_t c = detail::compress_even(m >> 1);
        a[m] = re[r] * re[c];
      }
    });
    for (int j = 0; j < L; ++j) detail::bell_pass(a.data(), L, j, threads);
    detail::parallel_ranges(entries, threads, [&](uint64_t b, uint64_t e) {
      for (uint64_t m = b; m < e; ++m) a[m] *= a[m];
    });
    dist.probabilities = std::move(a);
  } else {
    std::vector<std::complex<double>> a(entries);
    detail::parallel_ranges(entries, threads, [&](uint64_t b, uint64_t e) {
      for (uint64_t m = b; m < e; ++m) {
        const uint64_t r = detail::compress_even(m);
        const uint64_t c = detail::compress_even(m >> 1);
        a[m] = psi.amps[r] * std::conj(psi.amps[c]);
      }
    });
    for (int j = 0; j < L; ++j) detail::bell_pass(a.data(), L, j, threads);
    std::vector<double> p(entries);
    detail::parallel_ranges(entries, threads, [&](uint64_t b, uint64_t e) {
      for (uint64_t m = b; m < e; ++m) p[m] = std::norm(a[m]);
    });
    dist.probabilities = std::move(p);
  }

  dist.sum_check = detail::chunked_sum(dist.probabilities, threads) - 1.0;
  if (std::abs(dist.sum_check) > 1e-9) {
    throw std::runtime_error("Bell distribution normalization off by " +
                             std::to_string(dist.sum_check) + " (state not normalized?)");
  }
  return dist;
}

/// M_alpha of a distribution that the caller may discard (sorted in place).
inline SreResult sre_from_distribution(BellDistribution&& dist, double alpha) {
  if (alpha == 1.0) throw std::domain_error("alpha = 1 (von Neumann limit) is not supported");
  if (alpha <= 0.0) throw std::domain_error("alpha must be positive");
  SreResult res;
  res.alpha = alpha;
  res.length = dist.length;
  res.sum_check = dist.sum_check;
  auto& p = dist.probabilities;
  res.max_prob = *std::max_element(p.begin(), p.end());
  const double part_cut = 1e-12 * res.max_prob;
  uint64_t count = 0;
  for (double v : p) count += (v > part_cut);
  res.participation_count = count;
  // Sorted (ascending) accumulation of p^alpha for a stable small-first sum.
  std::sort(p.begin(), p.end());
  double s = 0.0, comp = 0.0;
  if (alpha == 2.0 || alpha == 3.0) {
    for (double v : p) {
      const double t = alpha == 2.0 ? v * v : v * v * v;
      const double y = t - comp;
      const double u = s + y;
      comp = (u - s) - y;
      s = u;
    }
  } else {
    for (double v : p) {
      if (v <= 0.0) continue;
      const double t = std::pow(v, alpha);
      const double y = t - comp;
      const double u = s + y;
      comp = (u - s) - y;
      s = u;
    }
  }
  res.value = std::log(s) / (1.0 - alpha) - static_cast<double>(dist.length) * std::log(2.0);
  if (res.value < -1e-10) {
    throw std::runtime_error("SRE came out negative: " + std::to_string(res.value));
  }
  return res;
}

/// Stabilizer Renyi entropy M_alpha(psi) in nats.
inline SreResult sre(const StateVector& psi, double alpha, const SreOptions& opts = {}) {
  return sre_from_distribution(bell_distribution(psi, opts), alpha);
}

/// Literal Eq.-by-enumeration oracle: all 4^L strings through expectation().
/// Independent of the Bell-transform path; L <= 7.
inline SreResult sre_direct_oracle(const StateVector& psi, double alpha) {
  if (alpha == 1.0) throw std::domain_error("alpha = 1 (von Neumann limit) is not supported");
  if (alpha <= 0.0) throw std::domain_error("alpha must be positive");
  const int L = psi.length;
  if (L > 7) {
    throw resource_error("direct SRE oracle is capped at 7 sites",
                         (size_t{1} << (3 * L)) * sizeof(double));
  }
  const uint64_t strings = uint64_t{1} << (2 * L);
  double s = 0.0;
  double max_prob = 0.0;
  uint64_t count = 0;
  double total = 0.0;
  for (uint64_t m = 0; m < strings; ++m) {
    const auto [x, z] = bell_unpack(m);
    PauliString p{L, x, z, static_cast<uint8_t>(std::popcount(x & z) & 3)};
    const double e = expectation(psi, p);
    const double prob = e * e / static_cast<double>(uint64_t{1} << L);
    total += prob;
    max_prob = std::max(max_prob, prob);
    if (prob > 1e-14) ++count;
    s += std::pow(e * e, alpha);
  }
  SreResult res;
  res.alpha = alpha;
  res.length = L;
  res.max_prob = max_prob;
  res.participation_count = count;
  res.sum_check = total - 1.0;
  res.value = std::log(s / static_cast<double>(uint64_t{1} << L)) / (1.0 - alpha);
  return res;
}

/// Property (i): zero magic detects a stabilizer state.
inline bool is_stabilizer(const StateVector& psi, double tol = 1e-10,
                          const SreOptions& opts = {}) {
  return sre(psi, 2.0, opts).value < tol;
}

// --- binary dump: magic "SREP", u32 version, u32 L, u32 dtype tag (0 =
// float64), then 4^L little-endian doubles in index order ---

inline void write_bell_dump(const std::string& path, const BellDistribution& dist) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  const char magic[4] = {'S', 'R', 'E', 'P'};
  const uint32_t version = 1, L = static_cast<uint32_t>(dist.length), dtype = 0;
  out.write(magic, 4);
  out.write(reinterpret_cast<const char*>(&version), 4);
  out.write(reinterpret_cast<const char*>(&L), 4);
  out.write(reinterpret_cast<const char*>(&dtype), 4);
  out.write(reinterpret_cast<const char*>(dist.probabilities.data()),
            static_cast<std::streamsize>(dist.probabilities.size() * sizeof(double)));
  if (!out) throw std::runtime_error("short write to '" + path + "'");
}

inline BellDistribution read_bell_dump(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  char magic[4];
  uint32_t version = 0, L = 0, dtype = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&version), 4);
  in.read(reinterpret_cast<char*>(&L), 4);
  in.read(reinterpret_cast<char*>(&dtype), 4);
  if (!in || std::memcmp(magic, "SREP", 4) != 0) {
    throw std::runtime_error("'" + path + "' is not a SREP dump");
  }
  if (version != 1 || dtype != 0) throw std::runtime_error("unsupported SREP version/dtype");
  if (L > static_cast<uint32_t>(kMaxSites)) throw std::runtime_error("corrupt SREP header");
  BellDistribution dist;
  dist.length = static_cast<int>(L);
  dist.probabilities.resize(uint64_t{1} << (2 * L));
  in.read(reinterpret_cast<char*>(dist.probabilities.data()),
          static_cast<std::streamsize>(dist.probabilities.size() * sizeof(double)));
  if (!in) throw std::runtime_error("truncated SREP dump");
  double s = 0.0;
  for (double p : dist.probabilities) s += p;
  dist.sum_check = s - 1.0;
  return dist;
}

}  // namespace dsre
