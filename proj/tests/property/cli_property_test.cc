// Copyright 2026 The HTPL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "cli.h"
#include "gtest/gtest.h"
#include "htpl/probcore/numeric.h"
#include "htpl/regions/instance_io.h"
#include "htpl/regions/tradeoff.h"
#include "nlohmann/json.hpp"
#include "test_support.h"

namespace htpl::cli {
namespace {

using testing::CaseGen;
using testing::kPropertyCases;
using testing::UniformInt;
using testing::UniformReal;

std::string TempPath(const std::string& name) {
  return (std::filesystem::path(::testing::TempDir()) / name).string();
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// Writes a random TACI instance and returns its path.
std::string WriteRandomInstance(testing::Gen& gen, int c) {
  const int u = UniformInt(gen, 2, 3);
  Instance instance{testing::RandomTaciPair(gen, 2, u, UniformInt(gen, 2, 3),
                                            UniformInt(gen, 1, 2), 0.02),
                    std::nullopt,
                    {}};
  const std::string path = TempPath(absl::StrCat("cli_prop_", c, ".json"));
  EXPECT_TRUE(WriteFileAtomically(path, InstanceToJson(instance)).ok());
  return path;
}

std::vector<std::vector<std::string>> DataRows(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  const std::vector<std::string> lines =
      absl::StrSplit(csv, '\n', absl::SkipEmpty());
  for (size_t i = 2; i < lines.size(); ++i) {  // schema comment, then header
    rows.push_back(absl::StrSplit(lines[i], ','));
  }
  return rows;
}

double Cell(const std::string& text) {
  double x = 0.0;
  EXPECT_TRUE(absl::SimpleAtod(text, &x)) << text;
  return x;
}

// Same config and seed give the same bytes, across several experiments.
TEST(CliProperty, OutputIsByteIdenticalForIdenticalConfig) {
  for (int c = 0; c < kPropertyCases; ++c) {
    auto gen = CaseGen("CliByteIdentical", c);
    ExperimentConfig config;
    config.seed = gen();
    switch (c % 3) {
      case 0:
        config.experiment = "simulate";
        config.instance_path = testing::DataPath("counterexample.json");
        config.parameters = {
            {"scheme", UniformInt(gen, 0, 1) == 0 ? "zero_rate" : "timeshare"},
            {"n", absl::StrCat(UniformInt(gen, 1, 4))},
            {"trials", "50"},
            {"delta", absl::StrCat(UniformReal(gen, 0.1, 0.3))}};
        break;
      case 1:
        config.experiment = "frontier";
        config.instance_path = WriteRandomInstance(gen, c);
        config.parameters = {{"min_w", "1"}, {"max_w", "2"}, {"channels", "2"}};
        break;
      default:
        config.experiment = "example1";
        config.parameters = {{"p_list", absl::StrCat(UniformReal(gen, 0, 0.5))},
                             {"q_list", absl::StrCat(UniformReal(gen, 0, 0.5))},
                             {"r_step", "0.25"}};
        break;
    }
    ASSERT_OK_AND_ASSIGN(ExperimentOutput a, ComputeExperiment(config));
    ASSERT_OK_AND_ASSIGN(ExperimentOutput b, ComputeExperiment(config));
    EXPECT_EQ(a.table.Render(), b.table.Render()) << config.experiment;
    EXPECT_EQ(a.channels_json, b.channels_json);
  }
}

// Each frontier row, recomputed from its channel in the sidecar, matches the
// CSV within 1e-10 bits (cells carry twelve significant digits).
TEST(CliProperty, FrontierRowsRevalidate) {
  for (int c = 0; c < kPropertyCases; ++c) {
    auto gen = CaseGen("CliFrontierRevalidates", c);
    ExperimentConfig config;
    config.experiment = "frontier";
    config.instance_path = WriteRandomInstance(gen, c);
    config.output_path = TempPath(absl::StrCat("cli_prop_", c, ".csv"));
    config.seed = gen();
    config.parameters = {{"min_w", "1"}, {"max_w", "3"}, {"channels", "2"}};
    ASSERT_OK(RunExperiment(config));
    ASSERT_OK_AND_ASSIGN(Instance instance, LoadInstance(config.instance_path));
    const nlohmann::json sidecar =
        nlohmann::json::parse(Slurp(config.output_path + ".channels.json"));
    const auto rows = DataRows(Slurp(config.output_path));
    ASSERT_EQ(rows.size(), sidecar["channels"].size());
    ASSERT_FALSE(rows.empty());
    for (size_t i = 0; i < rows.size(); ++i) {
      const nlohmann::json& entry = sidecar["channels"][i];
      ASSERT_EQ(rows[i][0], absl::StrCat(entry["channel_id"].get<int>()));
      ASSERT_OK_AND_ASSIGN(
          Channel w,
          Channel::Create(
              entry["rows"].get<std::vector<std::vector<double>>>()));
      ASSERT_EQ(rows[i][1], absl::StrCat(w.output_size()));
      ASSERT_OK_AND_ASSIGN(TaciCoordinates t, TaciPoint(instance.pair.p(), w));
      EXPECT_NEAR(Cell(rows[i][2]), NatsToBits(t.rate_needed), 1e-10);
      EXPECT_NEAR(Cell(rows[i][3]), NatsToBits(t.exponent), 1e-10);
      EXPECT_NEAR(Cell(rows[i][4]), NatsToBits(t.equivocation0), 1e-10);
    }
  }
}

TEST(CliProperty, ConfigsNameRegisteredExperimentsAndExistingFiles) {
  for (int c = 0; c < kPropertyCases; ++c) {
    auto gen = CaseGen("CliConfigChecks", c);
    ExperimentConfig config;
    const auto& names = ExperimentNames();
    config.experiment =
        names[UniformInt(gen, 0, static_cast<int>(names.size()) - 1)];
    config.experiment +=
        std::string(1, static_cast<char>('a' + UniformInt(gen, 0, 25)));
    EXPECT_TRUE(IsUsageError(ComputeExperiment(config).status()));

    config.experiment = c % 2 == 0 ? "frontier" : "zero-rate";
    config.instance_path = TempPath(absl::StrCat("missing_", gen(), ".json"));
    config.parameters = {{"n_list", "1"}, {"delta", "0.1"}};
    if (config.experiment == "frontier") config.parameters.clear();
    const absl::Status status = ComputeExperiment(config).status();
    EXPECT_TRUE(IsUsageError(status)) << status;
    EXPECT_NE(status.message().find(config.instance_path),
              absl::string_view::npos);
  }
}

}  // namespace
}  // namespace htpl::cli
