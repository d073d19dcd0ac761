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

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "helpers.hpp"
#include "oracle.hpp"
#include "ricmig/calibration.hpp"
#include "ricmig/errors.hpp"

using namespace ricmig;

namespace {

const std::array<const char*, 4> kClasses = {"A", "B", "C", "D"};

Regime regime(double rho_mb, double nu_s = 1.0) {
  return Regime{rho_mb * kBytesPerMegabyte, nu_s};
}

}  // namespace

TEST(Calibration, DefaultsReproduceSdlAndLoadTable) {
  const Calibration& cal = Calibration::defaults();
  const Regime r = regime(1.0);
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& row = oracle::kSdl[k];
    const std::string id = kClasses[k];
    EXPECT_EQ(cal.sdl_linear(id, Metric::kEnergy, r).slope, row.delta_e) << id;
    EXPECT_EQ(cal.sdl_linear(id, Metric::kCpu, r).slope, row.delta_cpu) << id;
    EXPECT_EQ(cal.sdl_linear(id, Metric::kMem, r).slope, row.delta_mem) << id;
    EXPECT_EQ(cal.sdl_linear(id, Metric::kDisk, r).slope, row.delta_disk) << id;
    EXPECT_EQ(cal.sdl_linear(id, Metric::kEnergy, r).intercept, row.b_e) << id;
    EXPECT_EQ(cal.sdl_linear(id, Metric::kCpu, r).intercept, row.b_cpu) << id;
    EXPECT_EQ(cal.sdl_linear(id, Metric::kMem, r).intercept, row.b_mem) << id;
    EXPECT_EQ(cal.sdl_linear(id, Metric::kDisk, r).intercept, row.b_disk) << id;
    EXPECT_EQ(cal.sigma_s(id, r) * 1000.0, row.sigma_ms) << id;
    EXPECT_EQ(cal.xapp_load(id, Metric::kEnergy), oracle::kLoad[k].p_e) << id;
    EXPECT_EQ(cal.xapp_load(id, Metric::kCpu), oracle::kLoad[k].p_cpu) << id;
    EXPECT_EQ(cal.xapp_load(id, Metric::kMem), oracle::kLoad[k].p_mem) << id;
    EXPECT_EQ(cal.xapp_load(id, Metric::kDisk), 0.0) << id;
  }
}

TEST(Calibration, DefaultsReproduceIdleAndStatefulTables) {
  const Calibration& cal = Calibration::defaults();
  EXPECT_EQ(cal.server_idle(Metric::kEnergy), oracle::kQE);
  EXPECT_EQ(cal.server_idle(Metric::kCpu), oracle::kQCpu);
  EXPECT_EQ(cal.server_idle(Metric::kMem), oracle::kQMem);
  EXPECT_EQ(cal.server_idle(Metric::kDisk), oracle::kQDisk);
  EXPECT_EQ(cal.sm_overhead(Strategy::kSmMr, Metric::kCpu), oracle::kBCpuMr);
  EXPECT_EQ(cal.sm_overhead(Strategy::kSmMd, Metric::kCpu), oracle::kBCpuMd);
  EXPECT_EQ(cal.sm_overhead(Strategy::kSmMr, Metric::kEnergy), oracle::kBEMr);
  EXPECT_EQ(cal.sm_overhead(Strategy::kSmMd, Metric::kEnergy), oracle::kBEMd);
  const KpiCoeffs sdl = cal.kpi(Strategy::kSdl, regime(1.0));
  EXPECT_EQ(sdl.delta_m, oracle::kDeltaMSdl);
  EXPECT_EQ(sdl.b_m, oracle::kBMSdl);
  for (std::size_t i = 0; i < 3; ++i) {
    const double rho = oracle::kRhoMb[i];
    for (double nu : {0.5, 1.0, 10.0}) {
      const KpiCoeffs mr = cal.kpi(Strategy::kSmMr, regime(rho, nu));
      const KpiCoeffs md = cal.kpi(Strategy::kSmMd, regime(rho, nu));
      EXPECT_EQ(mr.delta_d, oracle::kDeltaDMr[i]);
      EXPECT_EQ(mr.delta_m, oracle::kDeltaDMr[i]);
      EXPECT_EQ(mr.b_d, 0.0);
      EXPECT_EQ(md.delta_d, oracle::kDeltaDMd[i]);
      EXPECT_EQ(md.delta_m, oracle::kDeltaMMd[i]);
      EXPECT_EQ(md.b_m, 0.0);
    }
  }
}

TEST(Calibration, LookupSpotValues) {
  const Calibration& cal = Calibration::defaults();
  CoefficientQuery q{Block::kKpi, "delta_m_s", Strategy::kSmMd, std::nullopt, std::nullopt, 10.0, 1.0};
  EXPECT_EQ(cal.lookup(q), 23.02);
  EXPECT_EQ(cal.sigma_s("C", regime(1.0)), 7.71 / 1000.0);
  EXPECT_EQ(cal.xapp_load("B", Metric::kEnergy), 16.48);
}

TEST(Calibration, MissingKeysAreHardErrors) {
  const Calibration& cal = Calibration::defaults();
  EXPECT_THROW(cal.sigma_s("A", regime(100.0)), CalibrationLookupError);
  EXPECT_THROW(cal.kpi(Strategy::kSmMr, regime(5.0)), CalibrationLookupError);
  EXPECT_THROW(cal.xapp_load("Z", Metric::kEnergy), CalibrationLookupError);
  try {
    cal.sigma_s("A", regime(100.0));
  } catch (const CalibrationLookupError& e) {
    EXPECT_NE(std::string(e.what()).find("100"), std::string::npos);
  }
}

TEST(Calibration, EmptyOverrideIsTheDefaults) {
  EXPECT_EQ(Calibration::from_json("{}"), Calibration::defaults());
}

TEST(Calibration, SingleKeyOverrideMerges) {
  const Calibration cal = Calibration::from_json(
      R"({"sm_overhead": [{"strategy": "sm-mr", "metric": "E", "b": 20.0}]})");
  EXPECT_EQ(cal.sm_overhead(Strategy::kSmMr, Metric::kEnergy), 20.0);
  EXPECT_EQ(cal.sm_overhead(Strategy::kSmMd, Metric::kEnergy), 27.56);
  EXPECT_EQ(cal.server_idle(Metric::kEnergy), 120.0);
}

TEST(Calibration, NegativeSigmaRejected) {
  EXPECT_THROW(Calibration::from_json(
                   R"({"sigma": [{"class": "A", "rho_mb": 1, "nu_s": 1, "sigma_ms": -0.01}]})"),
               CalibrationLoadError);
}

TEST(Calibration, SchemaViolationsNameTheKey) {
  const auto message = [](const char* doc) {
    try {
      Calibration::from_json(doc);
    } catch (const CalibrationLoadError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message(R"({"bogus": []})").find("bogus"), std::string::npos);
  EXPECT_NE(message(R"({"server_idle": [{"metric": "E", "q": 1, "extra": 2}]})").find("extra"),
            std::string::npos);
  EXPECT_NE(message(R"({"base": "none", "kpi": []})").find("missing mandatory block"),
            std::string::npos);
  EXPECT_FALSE(message("not json").empty());
}

TEST(Calibration, UserSigmaForOtherRegimes) {
  const Calibration cal = Calibration::from_json(
      R"({"sigma": [{"class": "A", "rho_mb": 100, "nu_s": 1, "sigma_ms": 2000}]})");
  EXPECT_DOUBLE_EQ(cal.sigma_s("A", regime(100.0)), 2.0);
  EXPECT_EQ(cal.sigma_s("A", regime(1.0)), 16.62 / 1000.0);
}

TEST(Calibration, WildcardPrecedenceMostSpecificWins) {
  const Calibration cal = Calibration::from_json(
      R"({"xapp_load": [{"metric": "E", "p": 1.0}]})");
  EXPECT_EQ(cal.xapp_load("A", Metric::kEnergy), 3.43);
  EXPECT_EQ(cal.xapp_load("Q", Metric::kEnergy), 1.0);
}

TEST(Calibration, SerializationRoundTrips) {
  const Calibration& cal = Calibration::defaults();
  EXPECT_EQ(Calibration::from_json(cal.to_json()), cal);
  const Calibration tweaked = Calibration::from_json(
      R"({"kpi": [{"strategy": "sm-md", "rho_mb": 10, "delta_d_s": 7.0}]})");
  EXPECT_EQ(Calibration::from_json(tweaked.to_json()), tweaked);
  EXPECT_NE(tweaked, cal);
}

TEST(Calibration, FromFileReportsMissingFile) {
  EXPECT_THROW(Calibration::from_file("/nonexistent/cal.json"), CalibrationLoadError);
}

TEST(FitLinear, ExactAffineData) {
  const LinearFit fit = fit_linear({{0, 10, 20}, {0, 105.5, 211.0}, "dD"});
  EXPECT_TRUE(oracle::close(fit.slope, 10.55));
  EXPECT_NEAR(fit.intercept, 0.0, 1e-9);
  EXPECT_NEAR(fit.residual_rms, 0.0, 1e-9);
}

TEST(FitLinear, ConstantData) {
  const LinearFit fit = fit_linear({{1, 2}, {5, 5}, "c"});
  EXPECT_EQ(fit.slope, 0.0);
  EXPECT_EQ(fit.intercept, 5.0);
}

TEST(FitLinear, ThreePointLeastSquares) {
  // x = (0,1,2), y = (1,2,4): slope = Sxy/Sxx = 3/2, intercept = 7/3 - 1.5 = 5/6.
  const LinearFit fit = fit_linear({{0, 1, 2}, {1, 2, 4}, "ols"});
  EXPECT_TRUE(oracle::close(fit.slope, 1.5));
  EXPECT_TRUE(oracle::close(fit.intercept, 5.0 / 6.0));
  // Residuals 1/6, -1/3, 1/6.
  EXPECT_TRUE(oracle::close(fit.residual_rms, std::sqrt((1.0 / 36 + 1.0 / 9 + 1.0 / 36) / 3)));
}

TEST(FitLinear, RecoversGeneratingCoefficients) {
  for (double slope : {-0.18, 0.08, 48.2}) {
    for (double b : {0.0, 4.27, 32.35}) {
      MeasurementSeries s;
      for (int n = 1; n <= 50; n += 7) {
        s.predictor.push_back(n);
        s.response.push_back(slope * n + b);
      }
      const LinearFit fit = fit_linear(s);
      EXPECT_TRUE(oracle::close(fit.slope, slope));
      EXPECT_TRUE(oracle::close(fit.intercept, b));
      EXPECT_LT(fit.residual_rms, 1e-9);
    }
  }
}

TEST(FitLinear, DegenerateSeries) {
  EXPECT_THROW(fit_linear({{1}, {2}, "one"}), DegenerateFitError);
  EXPECT_THROW(fit_linear({{3, 3, 3}, {1, 2, 3}, "same"}), DegenerateFitError);
  EXPECT_THROW(fit_linear({{1, 2}, {1}, "ragged"}), DegenerateFitError);
}

TEST(FitLinear, ReadsMeasurementCsv) {
  const std::string path = testing_support::fixture("measurements_sm_mr.csv");
  const MeasurementSeries s = read_measurements_csv(path, "delta_d");
  EXPECT_EQ(s.label, "delta_d");
  ASSERT_EQ(s.predictor.size(), 3U);
  EXPECT_EQ(s.response[2], 211.0);
  EXPECT_THROW(read_measurements_csv("/nonexistent.csv", "x"), ParseError);
}
