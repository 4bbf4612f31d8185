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
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/cord.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_replace.h"
#include "absl/strings/str_split.h"
#include "htpl/adversary/counterexample.h"
#include "htpl/adversary/privacy.h"
#include "htpl/adversary/scheme_model.h"
#include "htpl/probcore/information.h"
#include "htpl/probcore/numeric.h"
#include "htpl/regions/binary_family.h"
#include "htpl/regions/exponents.h"
#include "htpl/regions/frontier.h"
#include "htpl/regions/instance_io.h"
#include "htpl/regions/tradeoff.h"
#include "htpl/schemes/trials.h"
#include "htpl/schemes/zero_rate.h"
#include "json.hpp"

namespace htpl::cli {
namespace {

constexpr char kUsagePayload[] = "htpl/usage";

std::string Bits(double nats) { return FormatNumber(NatsToBits(nats)); }

// Typed access to --param values; every key must be declared up front.
class Params {
 public:
  static absl::StatusOr<Params> Create(
      const std::map<std::string, std::string>& raw,
      const std::set<std::string>& allowed) {
    for (const auto& [key, value] : raw) {
      if (!allowed.contains(key)) {
        return UsageError(absl::StrCat("unknown parameter '", key, "'"));
      }
    }
    return Params(raw);
  }

  absl::StatusOr<double> Double(const std::string& key, double fallback) const {
    auto it = raw_.find(key);
    if (it == raw_.end()) return fallback;
    double value;
    if (!absl::SimpleAtod(it->second, &value)) {
      return UsageError(absl::StrCat("parameter ", key, ": '", it->second,
                                     "' is not a number"));
    }
    return value;
  }

  absl::StatusOr<int64_t> Int(const std::string& key, int64_t fallback) const {
    auto it = raw_.find(key);
    if (it == raw_.end()) return fallback;
    int64_t value;
    if (!absl::SimpleAtoi(it->second, &value)) {
      return UsageError(absl::StrCat("parameter ", key, ": '", it->second,
                                     "' is not an integer"));
    }
    return value;
  }

  absl::StatusOr<std::vector<double>> DoubleList(
      const std::string& key, std::vector<double> fallback) const {
    auto it = raw_.find(key);
    if (it == raw_.end()) return fallback;
    std::vector<double> out;
    for (absl::string_view part : absl::StrSplit(it->second, ',')) {
      double value;
      if (!absl::SimpleAtod(part, &value)) {
        return UsageError(
            absl::StrCat("parameter ", key, ": '", part, "' is not a number"));
      }
      out.push_back(value);
    }
    return out;
  }

  absl::StatusOr<std::vector<int>> IntList(const std::string& key,
                                           std::vector<int> fallback) const {
    auto it = raw_.find(key);
    if (it == raw_.end()) return fallback;
    std::vector<int> out;
    for (absl::string_view part : absl::StrSplit(it->second, ',')) {
      int value;
      if (!absl::SimpleAtoi(part, &value) || value < 1) {
        return UsageError(absl::StrCat("parameter ", key, ": '", part,
                                       "' is not a positive integer"));
      }
      out.push_back(value);
    }
    return out;
  }

  std::optional<std::string> String(const std::string& key) const {
    auto it = raw_.find(key);
    if (it == raw_.end()) return std::nullopt;
    return it->second;
  }

 private:
  explicit Params(std::map<std::string, std::string> raw)
      : raw_(std::move(raw)) {}

  std::map<std::string, std::string> raw_;
};

#define HTPL_ASSIGN(lhs, expr)                  \
  auto lhs##_or = (expr);                       \
  if (!lhs##_or.ok()) return lhs##_or.status(); \
  auto lhs = *std::move(lhs##_or)

absl::StatusOr<Instance> RequireInstance(const ExperimentConfig& config) {
  if (config.instance_path.empty()) {
    return UsageError(
        absl::StrCat("experiment ", config.experiment, " needs --instance"));
  }
  return LoadInstance(config.instance_path);
}

absl::StatusOr<ExperimentOutput> Frontier(const ExperimentConfig& config) {
  HTPL_ASSIGN(params, Params::Create(config.parameters,
                                     {"min_w", "max_w", "channels"}));
  HTPL_ASSIGN(instance, RequireInstance(config));
  FrontierConfig fc;
  fc.seed = config.seed;
  HTPL_ASSIGN(min_w, params.Int("min_w", 1));
  HTPL_ASSIGN(max_w, params.Int("max_w", instance.pair.u_size() + 2));
  HTPL_ASSIGN(channels, params.Int("channels", fc.random_channels_per_size));
  fc.min_w_size = static_cast<int>(min_w);
  fc.max_w_size = static_cast<int>(max_w);
  fc.random_channels_per_size = static_cast<int>(channels);
  HTPL_ASSIGN(points, TaciFrontier(instance.pair, fc));

  ExperimentOutput out{
      CsvTable("frontier", {"channel_id", "w_size", "rate_bits",
                            "exponent_bits", "privacy0_bits", "privacy1_bits"}),
      std::nullopt};
  nlohmann::json sidecar;
  sidecar["schema"] = kCsvSchemaVersion;
  sidecar["channels"] = nlohmann::json::array();
  for (const FrontierPoint& fp : points) {
    absl::Status added = out.table.AddRow(
        {absl::StrCat(fp.channel_id), absl::StrCat(fp.channel.output_size()),
         Bits(fp.point.rate), Bits(fp.point.exponent), Bits(fp.point.privacy0),
         Bits(fp.point.privacy1)});
    if (!added.ok()) return added;
    sidecar["channels"].push_back(
        {{"channel_id", fp.channel_id}, {"rows", fp.channel.Rows()}});
  }
  out.channels_json = sidecar.dump(2) + "\n";
  return out;
}

absl::StatusOr<ExperimentOutput> BinaryFamily(const ExperimentConfig& config) {
  HTPL_ASSIGN(params, Params::Create(config.parameters,
                                     {"p_list", "q_list", "r_step"}));
  HTPL_ASSIGN(p_list, params.DoubleList("p_list", {0.15, 0.25, 0.35}));
  HTPL_ASSIGN(q_list, params.DoubleList("q_list", {0.0, 0.1}));
  HTPL_ASSIGN(r_step, params.Double("r_step", 0.01));
  if (!(r_step > 0.0 && r_step <= 0.5)) {
    return UsageError("parameter r_step must lie in (0, 0.5]");
  }
  ExperimentOutput out{CsvTable("example1", {"p", "q", "r", "rate_bits",
                                             "kappa_bits", "lambda0_bits"}),
                       std::nullopt};
  const int steps = static_cast<int>(std::llround(0.5 / r_step));
  for (double p : p_list) {
    for (double q : q_list) {
      for (int k = 0; k <= steps; ++k) {
        const double r = std::min(0.5, k * r_step);
        HTPL_ASSIGN(point, BinaryFamilyClosedForm(p, q, r));
        absl::Status added = out.table.AddRow(
            {FormatNumber(p), FormatNumber(q), FormatNumber(r),
             FormatNumber(point.rate_bits), FormatNumber(point.kappa_bits),
             FormatNumber(point.lambda0_bits)});
        if (!added.ok()) return added;
      }
    }
  }
  return out;
}

absl::StatusOr<ExperimentOutput> PerfectPrivacy(
    const ExperimentConfig& config) {
  HTPL_ASSIGN(params, Params::Create(config.parameters, {"n_max"}));
  HTPL_ASSIGN(n_max, params.Int("n_max", 6));
  if (n_max < 1) return UsageError("parameter n_max must be >= 1");
  const HypothesisPair pair = PerfectPrivacyInstance();
  HTPL_ASSIGN(w, Channel::Deterministic({0, 1, 0, 1}, 2));
  HTPL_ASSIGN(taci, TaciPoint(pair.p(), w));
  HTPL_ASSIGN(bound, EquivocationBoundPoint(pair, w, taci.rate_needed));
  ExperimentOutput out{
      CsvTable("example2", {"n", "rate_bits", "exponent_bits", "lambda0_bits",
                            "lambda1_bits", "equivocation0_bits_per_letter",
                            "equivocation1_bits_per_letter"}),
      std::nullopt};
  for (int n = 1; n <= n_max; ++n) {
    HTPL_ASSIGN(model, PerLetterChannelModel(w, n));
    HTPL_ASSIGN(h0, ExactEquivocation(model, pair, Hypothesis::kNull));
    HTPL_ASSIGN(h1, ExactEquivocation(model, pair, Hypothesis::kAlternate));
    absl::Status added =
        out.table.AddRow({absl::StrCat(n), Bits(taci.rate_needed),
                          Bits(taci.exponent), Bits(taci.equivocation0),
                          Bits(bound.privacy1), Bits(h0 / n), Bits(h1 / n)});
    if (!added.ok()) return added;
  }
  return out;
}

absl::StatusOr<ExperimentOutput> ZeroRate(const ExperimentConfig& config) {
  HTPL_ASSIGN(params, Params::Create(config.parameters, {"n_list", "delta"}));
  HTPL_ASSIGN(instance, RequireInstance(config));
  HTPL_ASSIGN(n_list, params.IntList("n_list", {2, 4, 6}));
  HTPL_ASSIGN(delta, params.Double("delta", 0.05));
  const HypothesisPair& pair = instance.pair;
  HTPL_ASSIGN(kappa, ZeroRateExponent(pair));
  HTPL_ASSIGN(limits, ZeroRatePrivacy(pair));
  HTPL_ASSIGN(p_u, pair.p_suv().MarginalPmf("U"));
  ExperimentOutput out{
      CsvTable("zero-rate",
               {"n", "delta", "alpha_exact", "beta_exact",
                "finite_exponent_bits", "kappa_bits", "lambda0_max_bits",
                "lambda1_max_bits", "equivocation0_bits_per_letter",
                "equivocation1_bits_per_letter", "distortion0_per_letter",
                "distortion1_per_letter", "privacy_exact"}),
      std::nullopt};
  for (int n : n_list) {
    HTPL_ASSIGN(errors, ZeroRateErrorProbabilities(pair, delta, n));
    const double finite =
        errors.beta > 0.0 ? -std::log(errors.beta) / n : kInfinity;
    std::vector<std::string> privacy(4, "");
    std::string exact = "0";
    HTPL_ASSIGN(model, ZeroRateModel(p_u, delta, n));
    for (Hypothesis h : {Hypothesis::kNull, Hypothesis::kAlternate}) {
      absl::StatusOr<PrivacyTotals> totals = ExactPrivacyTotals(model, pair, h);
      if (absl::IsResourceExhausted(totals.status())) continue;
      if (!totals.ok()) return totals.status();
      const int k = static_cast<int>(h);
      privacy[k] = Bits(totals->equivocation / n);
      if (totals->causal_distortion.has_value()) {
        privacy[2 + k] = FormatNumber(*totals->causal_distortion / n);
      }
      exact = "1";
    }
    absl::Status added = out.table.AddRow(
        {absl::StrCat(n), FormatNumber(delta), FormatNumber(errors.alpha),
         FormatNumber(errors.beta), Bits(finite), Bits(kappa.value),
         Bits(limits.lambda0_max), Bits(limits.lambda1_max), privacy[0],
         privacy[1], privacy[2], privacy[3], exact});
    if (!added.ok()) return added;
  }
  return out;
}

absl::StatusOr<ExperimentOutput> Simulate(const ExperimentConfig& config) {
  HTPL_ASSIGN(params, Params::Create(config.parameters,
                                     {"config", "scheme", "n", "delta", "eta",
                                      "rate_nats", "epsilon_star", "trials"}));
  HTPL_ASSIGN(instance, RequireInstance(config));
  SchemeConfig sc;
  if (std::optional<std::string> path = params.String("config")) {
    HTPL_ASSIGN(text, ReadFile(*path));
    absl::StatusOr<SchemeConfig> parsed = SchemeConfigFromJson(text);
    if (!parsed.ok()) {
      return UsageError(absl::StrCat(*path, ": ", parsed.status().message()));
    }
    sc = *std::move(parsed);
  }
  sc.seed = config.seed;
  if (std::optional<std::string> name = params.String("scheme")) {
    absl::StatusOr<SchemeKind> kind = ParseSchemeKind(*name);
    if (!kind.ok()) return UsageError(kind.status().message());
    sc.scheme = *kind;
  }
  HTPL_ASSIGN(n, params.Int("n", sc.n));
  HTPL_ASSIGN(trials, params.Int("trials", sc.trials));
  HTPL_ASSIGN(delta, params.Double("delta", sc.delta));
  HTPL_ASSIGN(eta, params.Double("eta", sc.eta));
  HTPL_ASSIGN(rate, params.Double("rate_nats", sc.rate_nats));
  HTPL_ASSIGN(eps, params.Double("epsilon_star", sc.epsilon_star));
  sc.n = static_cast<int>(n);
  sc.trials = trials;
  sc.delta = delta;
  sc.eta = eta;
  sc.rate_nats = rate;
  sc.epsilon_star = eps;
  sc.w_channel = instance.w_channel;
  HTPL_ASSIGN(stats, RunTrials(sc, instance.pair));
  ExperimentOutput out{
      CsvTable("simulate",
               {"scheme", "n", "trials", "seed", "type1_errors", "type2_errors",
                "alpha_hat", "alpha_lower", "alpha_upper", "beta_hat",
                "beta_lower", "beta_upper"}),
      std::nullopt};
  absl::Status added = out.table.AddRow(
      {SchemeKindName(sc.scheme), absl::StrCat(sc.n), absl::StrCat(sc.trials),
       absl::StrCat(sc.seed), absl::StrCat(stats.type1_errors),
       absl::StrCat(stats.type2_errors), FormatNumber(stats.alpha_hat),
       FormatNumber(stats.alpha_interval.lower),
       FormatNumber(stats.alpha_interval.upper), FormatNumber(stats.beta_hat),
       FormatNumber(stats.beta_interval.lower),
       FormatNumber(stats.beta_interval.upper)});
  if (!added.ok()) return added;
  return out;
}

absl::StatusOr<ExperimentOutput> Counterexample(
    const ExperimentConfig& config) {
  HTPL_ASSIGN(params,
              Params::Create(config.parameters, {"epsilon_star", "delta",
                                                 "delta_prime", "n_list"}));
  HTPL_ASSIGN(instance, RequireInstance(config));
  CounterexampleConfig cc;
  HTPL_ASSIGN(eps, params.Double("epsilon_star", cc.epsilon_star));
  HTPL_ASSIGN(delta, params.Double("delta", cc.delta));
  HTPL_ASSIGN(delta_prime, params.Double("delta_prime", 2 * delta));
  HTPL_ASSIGN(n_list, params.IntList("n_list", cc.n_list));
  cc.epsilon_star = eps;
  cc.delta = delta;
  cc.delta_prime = delta_prime;
  cc.n_list = n_list;
  HTPL_ASSIGN(curve, ComputeCounterexampleCurve(instance.pair, cc));
  ExperimentOutput out{
      CsvTable("counterexample",
               {"n", "epsilon_star", "alpha_exact", "alpha_analytic",
                "equivocation_bits_per_letter", "h_s_given_uv_bits",
                "h_s_given_v_bits"}),
      std::nullopt};
  for (const CounterexamplePoint& p : curve.points) {
    absl::Status added = out.table.AddRow(
        {absl::StrCat(p.n), FormatNumber(eps), FormatNumber(p.alpha_exact),
         FormatNumber(p.alpha_analytic), Bits(p.equivocation_per_letter),
         Bits(curve.h_s_given_uv), Bits(curve.h_s_given_v)});
    if (!added.ok()) return added;
  }
  return out;
}

std::string CodeName(absl::StatusCode code) {
  std::string name = absl::StatusCodeToString(code);
  for (char& c : name) c = static_cast<char>(std::toupper(c));
  return absl::StrReplaceAll(name, {{" ", "_"}});
}

}  // namespace

const std::vector<std::string>& ExperimentNames() {
  static const auto* names =
      new std::vector<std::string>{"frontier",  "example1", "example2",
                                   "zero-rate", "simulate", "counterexample"};
  return *names;
}

absl::Status UsageError(absl::string_view message) {
  absl::Status status = absl::InvalidArgumentError(message);
  status.SetPayload(kUsagePayload, absl::Cord("1"));
  return status;
}

bool IsUsageError(const absl::Status& status) {
  return status.GetPayload(kUsagePayload).has_value();
}

absl::StatusOr<ExperimentOutput> ComputeExperiment(
    const ExperimentConfig& config) {
  if (!config.instance_path.empty() &&
      !std::filesystem::exists(config.instance_path)) {
    return UsageError(absl::StrCat("instance file ", config.instance_path,
                                   " does not exist"));
  }
  const std::string& e = config.experiment;
  if (e == "frontier") return Frontier(config);
  if (e == "example1") return BinaryFamily(config);
  if (e == "example2") return PerfectPrivacy(config);
  if (e == "zero-rate") return ZeroRate(config);
  if (e == "simulate") return Simulate(config);
  if (e == "counterexample") return Counterexample(config);
  return UsageError(absl::StrCat("unknown experiment '", e, "'"));
}

absl::Status RunExperiment(const ExperimentConfig& config) {
  if (config.output_path.empty()) return UsageError("--out is required");
  absl::StatusOr<ExperimentOutput> out = ComputeExperiment(config);
  if (!out.ok()) return out.status();
  if (out->channels_json.has_value()) {
    absl::Status s =
        WriteFileAtomically(absl::StrCat(config.output_path, ".channels.json"),
                            *out->channels_json);
    if (!s.ok()) return s;
  }
  return WriteFileAtomically(config.output_path, out->table.Render());
}

absl::StatusOr<std::string> ValidateInstance(const std::string& path,
                                             bool* all_passed) {
  *all_passed = true;
  HTPL_ASSIGN(text, ReadFile(path));
  std::string report;
  // Normalization is checked on the raw tensors so that a failing file still
  // gets a per-tensor residual.
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    absl::StatusOr<Instance> parsed = ParseInstance(text);  // line/column
    return absl::Status(parsed.status().code(),
                        absl::StrCat(path, ": ", parsed.status().message()));
  }
  bool normalized = true;
  for (const char* field : {"p_suv", "q_suv"}) {
    if (!root.is_object() || !root.contains(field) ||
        !root[field].contains("probs") || !root[field]["probs"].is_array()) {
      continue;  // structural problems are reported by the parser below
    }
    CompensatedSum total;
    for (const auto& x : root[field]["probs"]) {
      if (x.is_number()) total.Add(x.get<double>());
    }
    const double residual = std::abs(total.Total() - 1.0);
    const bool ok = residual <= kNormalizationTolerance;
    normalized = normalized && ok;
    absl::StrAppend(&report, "normalization tensor=", field,
                    " residual=", FormatNumber(residual),
                    " status=", ok ? "pass" : "fail", "\n");
  }
  if (!normalized) {
    *all_passed = false;
    return report;
  }
  absl::StatusOr<Instance> instance = ParseInstance(text);
  if (!instance.ok()) {
    return absl::Status(instance.status().code(),
                        absl::StrCat(path, ": ", instance.status().message()));
  }
  const HypothesisPair& pair = instance->pair;
  int p_not_q = 0;
  int q_not_p = 0;
  for (size_t cell = 0; cell < pair.p_suv().num_cells(); ++cell) {
    if (pair.p_suv()[cell] > 0.0 && pair.q_suv()[cell] == 0.0) ++p_not_q;
    if (pair.q_suv()[cell] > 0.0 && pair.p_suv()[cell] == 0.0) ++q_not_p;
  }
  absl::StrAppend(&report, "absolute_continuity p_over_q violations=", p_not_q,
                  " status=", p_not_q == 0 ? "pass" : "warn", "\n");
  absl::StrAppend(&report, "absolute_continuity q_over_p violations=", q_not_p,
                  " status=", q_not_p == 0 ? "pass" : "warn", "\n");
  absl::StrAppend(&report, "indicator u_marginals_equal=",
                  pair.u_marginals_equal() ? "true" : "false", "\n");
  HTPL_ASSIGN(h_suv, ConditionalEntropy(pair.p_suv(), {"S"}, {"U", "V"}));
  HTPL_ASSIGN(h_sv, ConditionalEntropy(pair.p_suv(), {"S"}, {"V"}));
  const bool holds = h_suv < h_sv - 1e-12;
  absl::StrAppend(&report, "assumption h_s_given_uv_bits=", Bits(h_suv),
                  " h_s_given_v_bits=", Bits(h_sv),
                  " status=", holds ? "holds" : "violated", "\n");
  return report;
}

std::string ErrorRecord(const absl::Status& status) {
  std::string message(status.message());
  message = absl::StrReplaceAll(
      message, {{"\\", "\\\\"}, {"\"", "\\\""}, {"\n", "\\n"}, {"\r", "\\r"}});
  return absl::StrCat(
      "htpl-error kind=", IsUsageError(status) ? "usage" : "runtime",
      " code=", CodeName(status.code()), " message=\"", message, "\"");
}

int Main(int argc, char** argv) {
  CLI::App app{"Rate, error exponent and privacy toolkit"};
  app.require_subcommand(1);

  ExperimentConfig config;
  std::vector<std::string> raw_params;
  CLI::App* run = app.add_subcommand("run", "Run a named experiment");
  run->add_option("--experiment", config.experiment, "Experiment name")
      ->required();
  run->add_option("--instance", config.instance_path, "Instance JSON");
  run->add_option("--out", config.output_path, "Output CSV path")->required();
  run->add_option("--seed", config.seed, "Master seed");
  run->add_option("--param", raw_params, "key=value (repeatable)");

  std::string validate_path;
  CLI::App* validate = app.add_subcommand("validate", "Check an instance file");
  validate->add_option("--instance", validate_path, "Instance JSON")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << ErrorRecord(UsageError(e.what())) << "\n";
    return kExitUsage;
  }

  if (validate->parsed()) {
    bool all_passed = false;
    absl::StatusOr<std::string> report =
        ValidateInstance(validate_path, &all_passed);
    if (!report.ok()) {
      std::cerr << ErrorRecord(report.status()) << "\n";
      return kExitRuntime;
    }
    std::cout << *report;
    return all_passed ? kExitOk : kExitRuntime;
  }

  for (const std::string& kv : raw_params) {
    const size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << ErrorRecord(UsageError(absl::StrCat(
                       "--param expects key=value, got '", kv, "'")))
                << "\n";
      return kExitUsage;
    }
    config.parameters[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  absl::Status status = RunExperiment(config);
  if (!status.ok()) {
    std::cerr << ErrorRecord(status) << "\n";
    return IsUsageError(status) ? kExitUsage : kExitRuntime;
  }
  return kExitOk;
}

}  // namespace htpl::cli
