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

#include "cli.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "absl/strings/str_split.h"
#include "csv.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "htpl/probcore/binary.h"
#include "test_support.h"

namespace htpl::cli {
namespace {

using ::testing::HasSubstr;
using ::testing::StartsWith;

std::string Slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string TempPath(const std::string& name) {
  return (std::filesystem::path(::testing::TempDir()) / name).string();
}

int RunMain(std::vector<std::string> args) {
  args.insert(args.begin(), "htpl");
  std::vector<char*> argv;
  for (std::string& a : args) argv.push_back(a.data());
  return Main(static_cast<int>(argv.size()), argv.data());
}

TEST(CsvTest, RendersSchemaLineAndHeader) {
  CsvTable t("demo", {"a", "b"});
  ASSERT_OK(t.AddRow({"1", "x"}));
  EXPECT_FALSE(t.AddRow({"1"}).ok());
  EXPECT_EQ(t.Render(), "# htpl-csv schema=1 experiment=demo\na,b\n1,x\n");
}

TEST(CsvTest, FormatNumber) {
  EXPECT_EQ(FormatNumber(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(FormatNumber(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(FormatNumber(std::nan("")), "nan");
  EXPECT_EQ(FormatNumber(-0.0), "0");
  EXPECT_EQ(FormatNumber(0.1), "0.1");
  EXPECT_EQ(FormatNumber(1.0 / 3), "0.333333333333");
}

TEST(CsvTest, AtomicWriteLeavesNoPartialFile) {
  const std::string path = TempPath("atomic.csv");
  ASSERT_OK(WriteFileAtomically(path, "hello\n"));
  EXPECT_EQ(Slurp(path), "hello\n");
  EXPECT_FALSE(std::filesystem::exists(path + ".partial"));
  EXPECT_FALSE(WriteFileAtomically("/nonexistent-dir/x.csv", "x").ok());
}

TEST(ExperimentTest, RegistryListsEveryExperiment) {
  EXPECT_THAT(
      ExperimentNames(),
      ::testing::ElementsAre("frontier", "example1", "example2", "zero-rate",
                             "simulate", "counterexample"));
}

TEST(ExperimentTest, BinaryFamilyClosedFormRow) {
  ExperimentConfig config;
  config.experiment = "example1";
  config.parameters = {{"p_list", "0.25"}, {"q_list", "0"}, {"r_step", "0.5"}};
  ASSERT_OK_AND_ASSIGN(ExperimentOutput out, ComputeExperiment(config));
  ASSERT_EQ(out.table.num_rows(), 2u);
  const std::vector<std::string> lines =
      absl::StrSplit(out.table.Render(), '\n', absl::SkipEmpty());
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[1], "p,q,r,rate_bits,kappa_bits,lambda0_bits");
  // At r = 0 the full rate is 1 bit and kappa = 1 - h(1/4).
  const double h = -(0.25 * std::log2(0.25) + 0.75 * std::log2(0.75));
  EXPECT_EQ(lines[2], "0.25,0,0,1," + FormatNumber(1 - h) + ",0");
}

TEST(ExperimentTest, ParameterErrorsAreUsageErrors) {
  ExperimentConfig config;
  config.experiment = "example1";
  config.parameters = {{"bogus", "1"}};
  absl::StatusOr<ExperimentOutput> out = ComputeExperiment(config);
  EXPECT_TRUE(IsUsageError(out.status()));
  config.parameters = {{"r_step", "abc"}};
  EXPECT_TRUE(IsUsageError(ComputeExperiment(config).status()));
  config.parameters = {{"r_step", "0.7"}};
  EXPECT_TRUE(IsUsageError(ComputeExperiment(config).status()));
  config.experiment = "zero-rate";
  config.parameters = {};
  EXPECT_TRUE(IsUsageError(ComputeExperiment(config).status()));
  config.experiment = "nope";
  EXPECT_TRUE(IsUsageError(ComputeExperiment(config).status()));
}

TEST(ExperimentTest, ZeroRateOnInstance) {
  ExperimentConfig config;
  config.experiment = "zero-rate";
  config.instance_path = testing::DataPath("counterexample.json");
  config.parameters = {{"n_list", "1,2"}, {"delta", "0.2"}};
  ASSERT_OK_AND_ASSIGN(ExperimentOutput out, ComputeExperiment(config));
  EXPECT_EQ(out.table.num_rows(), 2u);
  EXPECT_THAT(out.table.Render(), HasSubstr("\n1,0.2,"));
}

TEST(ExperimentTest, FrontierWritesSidecar) {
  ExperimentConfig config;
  config.experiment = "frontier";
  config.instance_path = testing::DataPath("binary_family.json");
  config.output_path = TempPath("frontier.csv");
  config.parameters = {{"min_w", "2"}, {"max_w", "2"}, {"channels", "3"}};
  ASSERT_OK(RunExperiment(config));
  EXPECT_THAT(Slurp(config.output_path),
              StartsWith("# htpl-csv schema=1 experiment=frontier\n"));
  EXPECT_THAT(Slurp(config.output_path + ".channels.json"),
              HasSubstr("\"channel_id\""));
}

TEST(ExperimentTest, SimulateIsReproducible) {
  ExperimentConfig config;
  config.experiment = "simulate";
  config.instance_path = testing::DataPath("counterexample.json");
  config.seed = 11;
  config.parameters = {
      {"scheme", "zero_rate"}, {"n", "4"}, {"trials", "200"}, {"delta", "0.2"}};
  ASSERT_OK_AND_ASSIGN(ExperimentOutput a, ComputeExperiment(config));
  ASSERT_OK_AND_ASSIGN(ExperimentOutput b, ComputeExperiment(config));
  EXPECT_EQ(a.table.Render(), b.table.Render());
  config.parameters["scheme"] = "unknown";
  EXPECT_TRUE(IsUsageError(ComputeExperiment(config).status()));
}

TEST(ValidateTest, ReportsChecks) {
  bool passed = false;
  ASSERT_OK_AND_ASSIGN(
      std::string good,
      ValidateInstance(testing::DataPath("counterexample.json"), &passed));
  EXPECT_TRUE(passed);
  EXPECT_THAT(good, HasSubstr("normalization tensor=p_suv"));
  EXPECT_THAT(good, HasSubstr("indicator u_marginals_equal=true"));
  EXPECT_THAT(good, HasSubstr("status=holds"));

  ASSERT_OK_AND_ASSIGN(
      std::string bad,
      ValidateInstance(testing::DataPath("unnormalized.json"), &passed));
  EXPECT_FALSE(passed);
  EXPECT_THAT(bad, HasSubstr("tensor=q_suv residual=0.01"));
  EXPECT_THAT(bad, HasSubstr("status=fail"));

  ASSERT_OK_AND_ASSIGN(
      std::string eq,
      ValidateInstance(testing::DataPath("equal_marginals.json"), &passed));
  EXPECT_THAT(eq, HasSubstr("indicator u_marginals_equal=true"));
  EXPECT_FALSE(ValidateInstance(TempPath("missing.json"), &passed).ok());
}

TEST(ErrorRecordTest, EscapesMessage) {
  EXPECT_EQ(ErrorRecord(UsageError("bad \"x\"\nnext")),
            "htpl-error kind=usage code=INVALID_ARGUMENT message=\"bad "
            "\\\"x\\\"\\nnext\"");
  EXPECT_THAT(ErrorRecord(absl::InternalError("boom")),
              StartsWith("htpl-error kind=runtime code=INTERNAL"));
}

TEST(MainTest, ExitCodes) {
  const std::string out = TempPath("main.csv");
  EXPECT_EQ(RunMain({"run", "--experiment", "example2", "--out", out, "--param",
                     "n_max=1"}),
            kExitOk);
  EXPECT_THAT(Slurp(out),
              StartsWith("# htpl-csv schema=1 experiment=example2\n"));
  EXPECT_EQ(RunMain({"run", "--experiment", "nope", "--out", out}), kExitUsage);
  EXPECT_EQ(RunMain({"run", "--experiment", "example2", "--out", out, "--param",
                     "n_max"}),
            kExitUsage);
  EXPECT_EQ(RunMain({"run", "--experiment", "example2"}), kExitUsage);
  EXPECT_EQ(RunMain({"frobnicate"}), kExitUsage);
  EXPECT_EQ(RunMain({"validate", "--instance",
                     testing::DataPath("unnormalized.json")}),
            kExitRuntime);
  EXPECT_EQ(RunMain({"validate", "--instance",
                     testing::DataPath("binary_family.json")}),
            kExitOk);
  // A failed run must not clobber an earlier result.
  const std::string before = Slurp(out);
  EXPECT_EQ(RunMain({"run", "--experiment", "zero-rate", "--instance",
                     testing::DataPath("unnormalized.json"), "--out", out}),
            kExitRuntime);
  EXPECT_EQ(Slurp(out), before);
}

}  // namespace
}  // namespace htpl::cli
