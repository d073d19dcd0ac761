// Copyright 2026 The ricmig Authors
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

#ifndef RICMIG_TESTS_ORACLE_HPP
#define RICMIG_TESTS_ORACLE_HPP

// Hand-evaluated reference values. Coefficients are typed in from the
// measured tables and every formula is written out; nothing here calls into
// the library.

#include <algorithm>
#include <array>
#include <cmath>

namespace oracle {

// Per-class rows in the order A, B, C, D.
struct SdlRow {
  double delta_e, delta_cpu, delta_mem, delta_disk;
  double b_e, b_cpu, b_mem, b_disk;
  double sigma_ms;
};

inline constexpr std::array<SdlRow, 4> kSdl = {{
    {-0.18, -0.00, 0.04, 0.01, 32.35, 5.32, 0.20, 0.00, 16.62},
    {-0.09, 0.03, 0.04, 0.01, 33.60, 5.57, 0.17, 0.00, 17.07},
    {-0.10, -0.03, 0.02, 0.00, 35.48, 4.97, 1.82, 0.00, 7.71},
    {-0.06, -0.01, 0.08, 0.03, 40.20, 5.00, 1.04, 0.00, 11.62},
}};

struct LoadRow {
  double p_e, p_cpu, p_mem;
};

inline constexpr std::array<LoadRow, 4> kLoad = {{
    {3.43, 0.47, 0.52},
    {16.48, 2.86, 0.52},
    {3.43, 0.47, 0.52},
    {16.48, 2.86, 0.52},
}};

inline constexpr double kDeltaMSdl = 0.08;
inline constexpr double kBMSdl = 4.27;
inline constexpr double kBCpuMr = 0.40;
inline constexpr double kBCpuMd = 0.76;
inline constexpr double kBEMr = 17.87;
inline constexpr double kBEMd = 27.56;
inline constexpr double kQE = 120.0;
inline constexpr double kQCpu = 0.1;
inline constexpr double kQMem = 5.7;
inline constexpr double kQDisk = 3.2;

// Rows rho = 1, 10, 100 MB.
inline constexpr std::array<double, 3> kRhoMb = {1.0, 10.0, 100.0};
inline constexpr std::array<double, 3> kDeltaDMr = {10.55, 11.73, 23.3};
inline constexpr std::array<double, 3> kDeltaDMd = {5.74, 6.49, 13.3};
inline constexpr std::array<double, 3> kDeltaMMd = {20.28, 23.02, 48.2};

inline int rho_row(double rho_mb) {
  for (int i = 0; i < 3; ++i) {
    if (kRhoMb[i] == rho_mb) return i;
  }
  return -1;
}

inline double floor0(double v) { return std::max(v, 0.0); }

inline bool close(double got, double want, double rel = 1e-9) {
  return std::fabs(got - want) <= rel * std::max(1.0, std::fabs(want));
}

// Stateful strategy KPIs from the linear fits; zero when nothing moves.
inline double downtime_mr(int n, double rho_mb) { return n == 0 ? 0.0 : kDeltaDMr[rho_row(rho_mb)] * n; }
inline double downtime_md(int n, double rho_mb) { return n == 0 ? 0.0 : kDeltaDMd[rho_row(rho_mb)] * n; }
inline double duration_mr(int n, double rho_mb) { return downtime_mr(n, rho_mb); }
inline double duration_md(int n, double rho_mb) { return n == 0 ? 0.0 : kDeltaMMd[rho_row(rho_mb)] * n; }
inline double duration_sdl(int n) { return n == 0 ? 0.0 : kDeltaMSdl * n + kBMSdl; }

// Counts indexed A..D.
inline double defrag_s(const std::array<int, 4>& n) {
  double t = 0.0;
  for (int k = 0; k < 4; ++k) t += kSdl[k].sigma_ms * 1e-3 * n[k];
  return t;
}

inline double sdl_cpu_share(const std::array<int, 4>& n, int servers, int classes = 4) {
  double sum = 0.0;
  for (int k = 0; k < classes; ++k) sum += floor0(kSdl[k].delta_cpu * n[k] + kSdl[k].b_cpu);
  return sum / servers;
}

inline double sdl_energy_share(const std::array<int, 4>& n, int servers, double slot_s,
                               int classes = 4) {
  double sum = 0.0;
  for (int k = 0; k < classes; ++k) sum += floor0(kSdl[k].delta_e * n[k] + kSdl[k].b_e);
  return slot_s / servers * sum;
}

// Total server energy of a stateful-migration slot for a single-class server.
inline double server_energy_sm(double b_e, double duration_s, double p_e, int initial, int hosted,
                               bool active, double slot_s) {
  const double window = b_e * duration_s + duration_s * (kQE + p_e * initial);
  const double steady = (slot_s - duration_s) * ((active ? kQE : 0.0) + p_e * hosted);
  return window + steady;
}

}  // namespace oracle

#endif  // RICMIG_TESTS_ORACLE_HPP
