// Copyright 2026 The Authors.
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

#include "lab/experiment.h"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>

#include "lab/io.h"
#include "ocrs/errors.h"
#include "ocrs/eval.h"
#include "ocrs/hard_instances.h"
#include "ocrs/instances.h"
#include "ocrs/prophet.h"
#include "ocrs/schemes.h"

namespace ocrs::lab {
namespace {

using Diagnostics = std::vector<std::string>;

std::string JoinSet(const ElementSet& s) {
  std::string out = "{";
  for (size_t k = 0; k < s.size(); ++k) {
    out += (k ? "," : "") + std::to_string(s[k]);
  }
  return out + "}";
}

// Runs `parse`, turning any exception into a diagnostic prefixed by `where`.
template <class F>
auto Try(Diagnostics& d, const std::string& where, F parse)
    -> std::optional<decltype(parse())> {
  try {
    return parse();
  } catch (const std::exception& e) {
    d.push_back(where + ": " + e.what());
    return std::nullopt;
  }
}

std::optional<std::int64_t> PositiveInt(const json& c, const char* key,
                                        Diagnostics& d,
                                        std::optional<std::int64_t> fallback =
                                            std::nullopt) {
  if (!c.contains(key)) {
    if (fallback) return fallback;
    d.push_back(std::string("missing field \"") + key + "\"");
    return std::nullopt;
  }
  const auto& v = c.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() <= 0) {
    d.push_back(std::string("\"") + key + "\" must be a positive integer");
    return std::nullopt;
  }
  return v.get<std::int64_t>();
}

std::optional<std::uint64_t> Seed(const json& c, Diagnostics& d) {
  if (!c.contains("seed")) {
    d.push_back("missing field \"seed\"");
    return std::nullopt;
  }
  const auto& v = c.at("seed");
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    d.push_back("\"seed\" must be a nonnegative integer");
    return std::nullopt;
  }
  return v.get<std::uint64_t>();
}

std::optional<double> Epsilon(const json& c, Diagnostics& d) {
  if (!c.contains("epsilon") || !c.at("epsilon").is_number()) {
    d.push_back("missing numeric field \"epsilon\"");
    return std::nullopt;
  }
  const double eps = c.at("epsilon").get<double>();
  if (!(eps > 0 && eps < 1)) {
    d.push_back("epsilon out of (0,1)");
    return std::nullopt;
  }
  if (!Try(d, "epsilon", [&] { return ThresholdTable::BucketCount(eps); })) {
    return std::nullopt;
  }
  return eps;
}

std::vector<double> ResolveX(const json& j, const Matroid& m) {
  if (j.is_string() && j.get<std::string>() == "laminar_capacity") {
    const auto* l = dynamic_cast<const LaminarMatroid*>(&m);
    if (!l) throw std::invalid_argument("laminar_capacity needs a laminar matroid");
    return LaminarPointAtCapacity(l->spec());
  }
  if (j.is_object() && j.contains("uniform")) {
    return std::vector<double>(m.size(), j.at("uniform").get<double>());
  }
  if (j.is_array()) {
    auto x = j.get<std::vector<double>>();
    if (static_cast<int>(x.size()) != m.size()) {
      throw std::invalid_argument("x has " + std::to_string(x.size()) +
                                  " entries, matroid has " +
                                  std::to_string(m.size()));
    }
    return x;
  }
  throw std::invalid_argument(
      "x must be an array, {\"uniform\": v} or \"laminar_capacity\"");
}

void CheckPoint(const Matroid& m, const std::vector<double>& x,
                Diagnostics& d) {
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0 && x[i] <= 1)) {
      d.push_back("x[" + std::to_string(i) + "] outside [0,1]");
      return;
    }
  }
  try {
    const auto check = CheckPolytopeMembership(m, x);
    if (!check.member) {
      char buf[200];
      std::snprintf(buf, sizeof(buf), "x(L) = %.6g > %.6g", check.lhs,
                    check.rhs);
      d.push_back("x outside the matroid polytope: constraint on L = " +
                  JoinSet(check.violated) + " violated, " + buf);
    }
  } catch (const UnsupportedSize&) {
    // Too large to check exactly; the run records a warning instead.
  }
}

OrderGenerator OrderOrIdentity(const json& c) {
  return c.contains("order") ? OrderFromJson(c.at("order")) : OrderGenerator{};
}

void CheckOrder(const json& c, int n, bool allow_descending, Diagnostics& d) {
  auto g = Try(d, "order", [&] { return OrderOrIdentity(c); });
  if (!g) return;
  if (g->kind == OrderKind::kTargetLast && (g->target < 0 || g->target >= n)) {
    d.push_back("order: target element out of range");
  }
  if (!allow_descending && g->kind == OrderKind::kDescendingX) {
    d.push_back("order: descending_x needs a fractional point");
  }
}

std::int64_t SampleCount(const json& c, int n, double eps) {
  if (c.contains("samples")) return c.at("samples").get<std::int64_t>();
  return DefaultSampleCount(n, eps, c.value("sample_constant", 1.0));
}

void CheckSamples(const json& c, int n, double eps, Diagnostics& d) {
  if (c.contains("samples")) {
    const auto& v = c.at("samples");
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
      d.push_back("\"samples\" must be a positive integer");
      return;
    }
  }
  if (c.contains("sample_constant") &&
      !(c.at("sample_constant").is_number() &&
        c.at("sample_constant").get<double>() > 0)) {
    d.push_back("\"sample_constant\" must be positive");
    return;
  }
  const std::int64_t samples = SampleCount(c, n, eps);
  const int buckets = ThresholdTable::BucketCount(eps);
  std::int64_t previous = 0;
  for (int k = 0; k < buckets; ++k) {
    const auto idx = OrderStatisticIndex(eps, k, samples);
    if (idx < 1 || idx > samples) {
      d.push_back("order statistic " + std::to_string(idx) + " for bucket " +
                  std::to_string(k) + " outside 1.." + std::to_string(samples));
      return;
    }
    if (idx == previous) {
      d.push_back("samples = " + std::to_string(samples) +
                  " too small: buckets " + std::to_string(k - 1) + " and " +
                  std::to_string(k) + " share order statistic " +
                  std::to_string(idx));
      return;
    }
    previous = idx;
  }
}

Diagnostics ValidateSelectability(const json& c) {
  Diagnostics d;
  auto m = Try(d, "matroid", [&] { return MatroidFromJson(c.at("matroid")); });
  if (m) {
    auto x = Try(d, "x", [&] { return ResolveX(c.at("x"), **m); });
    if (x) CheckPoint(**m, *x, d);
    CheckOrder(c, (*m)->size(), true, d);
  }
  Try(d, "scheme", [&] { return SchemeFromJson(c.at("scheme")); });
  PositiveInt(c, "trials", d);
  Seed(c, d);
  return d;
}

Diagnostics ValidateMinimizeFn(const json& c) {
  Diagnostics d;
  if (auto n = PositiveInt(c, "n", d); n && *n > 6) {
    d.push_back("minimize_fn supports n <= 6");
  }
  return d;
}

Diagnostics ValidateCounting(const json& c) {
  Diagnostics d;
  PositiveInt(c, "n", d);
  if (c.contains("p")) {
    Try(d, "p", [&] { return CountingScheme(c.at("p").get<std::vector<double>>()); });
  }
  if (c.contains("grid_steps")) PositiveInt(c, "grid_steps", d);
  return d;
}

Diagnostics ValidateProphetLike(const json& c, bool full) {
  Diagnostics d;
  auto m = Try(d, "matroid", [&] { return MatroidFromJson(c.at("matroid")); });
  const auto eps = Epsilon(c, d);
  if (m) {
    Try(d, "distributions", [&] {
      return DistributionsFromJson(c.at("distributions"), (*m)->size());
    });
    if (eps) CheckSamples(c, (*m)->size(), *eps, d);
    if (full) CheckOrder(c, (*m)->size(), false, d);
  }
  if (full) {
    Try(d, "scheme", [&] { return SchemeFromJson(c.at("scheme")); });
    PositiveInt(c, "trials", d);
    PositiveInt(c, "marginal_trials", d, 1);
  } else {
    PositiveInt(c, "repetitions", d, 1);
  }
  PositiveInt(c, "verify_trials", d, 1);
  Seed(c, d);
  return d;
}

Diagnostics ValidateHard(const json& c) {
  Diagnostics d;
  const std::string family = c.value("family", "");
  if (family != "graphic" && family != "transversal") {
    d.push_back("family must be \"graphic\" or \"transversal\"");
  }
  const auto n = PositiveInt(c, "N", d);
  PositiveInt(c, "M", d);
  PositiveInt(c, "trials", d);
  Seed(c, d);
  if (c.contains("samples") &&
      !(c.at("samples").is_number_integer() && c.at("samples").get<int>() >= 0)) {
    d.push_back("\"samples\" must be a nonnegative integer");
  }
  auto check_block = [&](const json& j, const char* key) {
    if (!j.contains(key)) return;
    const auto& v = j.at(key);
    if (!v.is_number_integer() || v.get<int>() < 0 || (n && v.get<int>() >= *n)) {
      d.push_back(std::string(key) + " out of range");
    }
  };
  if (c.contains("conditional")) {
    const auto& cond = c.at("conditional");
    check_block(cond, "block");
    check_block(cond, "condition_block");
  }
  if (c.contains("stress")) {
    const auto& s = c.at("stress");
    if (s.contains("scheme")) {
      Try(d, "stress.scheme", [&] { return SchemeFromJson(s.at("scheme")); });
    }
    if (s.contains("blocks")) {
      for (const auto& b : s.at("blocks")) {
        if (!b.is_number_integer() || b.get<int>() < 0 ||
            (n && b.get<int>() >= *n)) {
          d.push_back("stress.blocks entry out of range");
        }
      }
    }
  }
  return d;
}

using Runner = std::function<json(const json&, int, std::optional<std::string>&)>;

json RunSelectability(const json& c, int workers,
                      std::optional<std::string>& csv) {
  const auto m = MatroidFromJson(c.at("matroid"));
  const auto x = ResolveX(c.at("x"), *m);
  const auto scheme = SchemeFromJson(c.at("scheme"));
  const auto order = OrderOrIdentity(c);
  const auto report =
      EstimateSelectability(*scheme, *m, x, order, c.at("trials").get<std::int64_t>(),
                            c.at("seed").get<std::uint64_t>(), workers);
  json result = TrialReportToJson(report);
  if (c.value("exact", false) && order.deterministic() && m->size() <= 16) {
    Rng unused(0);
    result["exact"] = ExactSelectability(*scheme, *m, x,
                                         order.Generate(m->size(), x, unused));
  }
  std::ostringstream out;
  WriteSelectabilityCsv(report, out);
  csv = out.str();
  return result;
}

json RunMinimizeFn(const json& c, int, std::optional<std::string>&) {
  const int n = c.at("n").get<int>();
  const auto r = MinimizeFN(n);
  return {{"min", r.value},
          {"argmin", r.argmin},
          {"closed_form", std::pow(1 - 1.0 / n, n) + std::pow(1 - 1.0 / n, n - 1)}};
}

json RunCounting(const json& c, int, std::optional<std::string>&) {
  const int n = c.at("n").get<int>();
  json result;
  result["n"] = n;
  result["one_over_e"] = 1 / std::numbers::e;
  if (c.contains("p")) {
    const auto p = c.at("p").get<std::vector<double>>();
    result["p"] = p;
    result["value"] = CountingSelectabilityUniform(p, n);
  }
  if (c.contains("grid_steps")) {
    const int steps = c.at("grid_steps").get<int>();
    double best = -1;
    std::vector<double> arg;
    for (int a = 0; a <= steps; ++a) {
      for (int b = 0; b <= steps; ++b) {
        for (int d = 0; d <= steps; ++d) {
          const std::vector<double> p = {double(a) / steps, double(b) / steps,
                                         double(d) / steps};
          const double v = CountingSelectabilityUniform(p, n);
          if (v > best) {
            best = v;
            arg = p;
          }
        }
      }
    }
    result["grid_steps"] = steps;
    result["grid_max"] = best;
    result["grid_argmax"] = arg;
  }
  return result;
}

json ThresholdsToJson(const ThresholdTable& table) {
  json rows = json::array();
  for (int i = 0; i < table.size(); ++i) {
    json row = json::array();
    for (const auto& t : table.thresholds(i)) {
      if (std::isinf(t.value)) {
        row.push_back("inf");
      } else {
        row.push_back(t.value);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json GoodnessToJson(const GoodnessReport& g) {
  json failing = json::array();
  double worst_gap = 0;
  for (const auto& b : g.buckets) {
    if (!b.pass) {
      failing.push_back({{"element", b.element},
                         {"k", b.k},
                         {"estimate", b.estimate},
                         {"ci", IntervalToJson(b.ci)},
                         {"band", {b.lower, b.upper}}});
    }
    worst_gap = std::max({worst_gap, b.lower - b.estimate, b.estimate - b.upper});
  }
  return {{"all_pass", g.all_pass},
          {"trials", g.trials},
          {"z", g.z},
          {"buckets", g.buckets.size()},
          {"failing", failing},
          {"worst_gap", worst_gap}};
}

json RunProphetKind(const json& c, int workers, std::optional<std::string>&) {
  const auto m = MatroidFromJson(c.at("matroid"));
  const auto dists = DistributionsFromJson(c.at("distributions"), m->size());
  const double eps = c.at("epsilon").get<double>();
  const auto seed = c.at("seed").get<std::uint64_t>();
  const auto trials = c.at("trials").get<std::int64_t>();
  const std::int64_t samples = SampleCount(c, m->size(), eps);
  const auto scheme = SchemeFromJson(c.at("scheme"));
  const auto order = OrderOrIdentity(c);

  const auto table =
      LearnThresholds(*m, dists, eps, samples,
                      SeedStream(seed, StreamLabel::kThresholdLearning), workers);
  const auto goodness = VerifyGoodThresholds(
      table, *m, dists, c.value("verify_trials", std::int64_t{20000}),
      SeedStream(seed, StreamLabel::kThresholdEvaluation), workers);
  const auto marginals = InducedMarginals(
      table, *m, dists, c.value("marginal_trials", trials), seed, workers);
  const auto active = ActiveValueVsOpt(table, *m, dists, trials, seed, workers);
  const auto ratio = EstimateProphetRatio(*m, dists, table, *scheme, order,
                                          trials, seed, workers);
  json warnings = json::array();
  if (auto w = scheme->CompatibilityWarning(*m)) warnings.push_back(*w);
  if (!marginals.in_polytope) {
    warnings.push_back("induced marginals: polytope membership unchecked");
  }
  return {
      {"epsilon", eps},
      {"buckets", table.buckets()},
      {"samples", samples},
      {"thresholds", ThresholdsToJson(table)},
      {"goodness", GoodnessToJson(goodness)},
      {"marginals",
       {{"x", marginals.x},
        {"x_half_width", marginals.x_half_width},
        {"opt_frequency", marginals.opt_frequency},
        {"dominated", marginals.dominated},
        {"in_polytope", marginals.in_polytope ? json(*marginals.in_polytope)
                                              : json(nullptr)},
        {"trials", marginals.trials}}},
      {"active_value",
       {{"ratio", active.ratio},
        {"ratio_ci", IntervalToJson(active.ratio_ci)},
        {"small_value_loss", active.small_value_loss},
        {"loss_ci", IntervalToJson(active.loss_ci)},
        {"mean_opt", active.mean_opt}}},
      {"competitive_ratio", RatioReportToJson(ratio)},
      {"scheme", scheme->Name()},
      {"warnings", warnings}};
}

json RunThresholds(const json& c, int workers, std::optional<std::string>&) {
  const auto m = MatroidFromJson(c.at("matroid"));
  const auto dists = DistributionsFromJson(c.at("distributions"), m->size());
  const double eps = c.at("epsilon").get<double>();
  const auto seed = c.at("seed").get<std::uint64_t>();
  const std::int64_t samples = SampleCount(c, m->size(), eps);
  const int reps = c.value("repetitions", 1);
  const auto verify = c.value("verify_trials", std::int64_t{20000});
  int passed = 0;
  json per_rep = json::array();
  for (int r = 0; r < reps; ++r) {
    const std::uint64_t rep_seed =
        DeriveSeed(seed, StreamLabel::kThresholdLearning, r);
    const auto table = LearnThresholds(
        *m, dists, eps, samples,
        SeedStream(rep_seed, StreamLabel::kThresholdLearning), workers);
    const auto g = VerifyGoodThresholds(
        table, *m, dists, verify,
        SeedStream(rep_seed, StreamLabel::kThresholdEvaluation), workers);
    passed += g.all_pass;
    per_rep.push_back(g.all_pass);
  }
  return {{"epsilon", eps},
          {"buckets", ThresholdTable::BucketCount(eps)},
          {"samples", samples},
          {"repetitions", reps},
          {"verify_trials", verify},
          {"passed", passed},
          {"pass_rate", static_cast<double>(passed) / reps},
          {"target", 1 - eps},
          {"per_repetition", per_rep}};
}

json StressToJson(const HardStressReport& r) {
  json blocks = json::array();
  for (const auto& b : r.blocks) {
    blocks.push_back({{"block", b.block},
                      {"argmin", b.argmin},
                      {"estimate", b.estimate},
                      {"ci", IntervalToJson(b.ci)}});
  }
  return {{"scheme", r.scheme},
          {"balancedness", r.balancedness},
          {"ci", IntervalToJson(r.ci)},
          {"bound", r.bound},
          {"within_bound", r.within_bound},
          {"blocks", blocks},
          {"warnings", r.warnings}};
}

json RunHard(const json& c, int workers, std::optional<std::string>&) {
  const int n = c.at("N").get<int>(), bm = c.at("M").get<int>();
  const auto inst = c.at("family").get<std::string>() == "graphic"
                        ? HardInstance::Graphic(n, bm)
                        : HardInstance::Transversal(n, bm);
  const auto seed = c.at("seed").get<std::uint64_t>();
  const auto trials = c.at("trials").get<std::int64_t>();
  const int s = c.value("samples", 0);
  const auto stats = UStarExperiment(inst, trials, seed, workers);
  json histogram = json::object();
  for (const auto& [k, count] : stats.histogram) {
    histogram[std::to_string(k)] = count;
  }
  json result = {{"family", std::string(inst.KindName())},
                 {"N", n},
                 {"M", bm},
                 {"samples", s},
                 {"bound", BalancednessUpperBound(n, bm, s)},
                 {"matroid", MatroidToJson(inst.matroid())},
                 {"full_blocks",
                  {{"mean", stats.mean},
                   {"expected", stats.expected},
                   {"sd_of_mean", stats.sd_of_mean},
                   {"nonempty_trials", stats.nonempty_trials},
                   {"rank_failures", stats.rank_failures},
                   {"histogram", histogram}}}};
  if (c.contains("conditional")) {
    const auto& cj = c.at("conditional");
    const int block = cj.value("block", 0);
    const auto r = ConditionalIdentityCheck(
        inst, block, cj.value("condition_block", block),
        cj.value("trials", trials), seed);
    result["conditional"] = {{"method", r.method},
                             {"total_variation", r.total_variation},
                             {"chi_square", std::isinf(r.chi_square)
                                                ? json("inf")
                                                : json(r.chi_square)},
                             {"degrees_of_freedom", r.degrees_of_freedom},
                             {"p_value", r.p_value},
                             {"conditioned_samples", r.conditioned_samples},
                             {"insufficient", r.insufficient},
                             {"identical", r.identical}};
  }
  if (c.contains("stress")) {
    const auto& sj = c.at("stress");
    const auto blocks = sj.value("blocks", std::vector<int>{});
    const auto st = sj.value("trials", trials);
    if (sj.contains("scheme")) {
      const auto scheme = SchemeFromJson(sj.at("scheme"));
      result["stress"] = StressToJson(
          StressObliviousScheme(*scheme, inst, st, seed, blocks, workers));
    }
    if (sj.value("control", false)) {
      result["control"] = StressToJson(
          StressClairvoyantControl(inst, st, seed, blocks, workers));
    }
  }
  return result;
}

struct KindEntry {
  const char* name;
  std::function<Diagnostics(const json&)> validate;
  Runner run;
};

const std::vector<KindEntry>& Kinds() {
  static const std::vector<KindEntry> kinds = {
      {"selectability", ValidateSelectability, RunSelectability},
      {"minimize_fn", ValidateMinimizeFn, RunMinimizeFn},
      {"counting", ValidateCounting, RunCounting},
      {"prophet", [](const json& c) { return ValidateProphetLike(c, true); },
       RunProphetKind},
      {"thresholds", [](const json& c) { return ValidateProphetLike(c, false); },
       RunThresholds},
      {"hard_instance", ValidateHard, RunHard},
  };
  return kinds;
}

const KindEntry* FindKind(const json& c) {
  if (!c.is_object() || !c.contains("kind") || !c.at("kind").is_string()) {
    return nullptr;
  }
  for (const auto& k : Kinds()) {
    if (c.at("kind").get<std::string>() == k.name) return &k;
  }
  return nullptr;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> diagnostics)
    : std::runtime_error(diagnostics.empty() ? "invalid config"
                                             : diagnostics.front()),
      diagnostics_(std::move(diagnostics)) {}

std::vector<std::string> ExperimentKinds() {
  std::vector<std::string> out;
  for (const auto& k : Kinds()) out.push_back(k.name);
  return out;
}

json ApplyOverrides(json config, const Overrides& overrides) {
  if (overrides.seed) config["seed"] = *overrides.seed;
  if (overrides.trials) config["trials"] = *overrides.trials;
  return config;
}

std::string ConfigHash(const json& config) {
  json canonical = config;
  if (canonical.is_object()) canonical.erase("output");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::string> Validate(const json& config) {
  const KindEntry* kind = FindKind(config);
  if (!kind) {
    std::string known;
    for (const auto& k : ExperimentKinds()) known += (known.empty() ? "" : ", ") + k;
    return {"unknown or missing experiment kind; expected one of: " + known};
  }
  try {
    return kind->validate(config);
  } catch (const std::exception& e) {
    return {std::string("malformed config: ") + e.what()};
  }
}

ExperimentOutput RunExperiment(const json& config, int workers) {
  auto diagnostics = Validate(config);
  if (!diagnostics.empty()) throw ValidationError(std::move(diagnostics));
  ExperimentOutput out;
  json canonical = config;
  canonical.erase("output");
  out.report["kind"] = config.at("kind");
  out.report["config_hash"] = ConfigHash(config);
  out.report["seed"] = config.contains("seed") ? config.at("seed") : json(nullptr);
  out.report["config"] = canonical;
  out.report["result"] = FindKind(config)->run(config, workers, out.csv);
  return out;
}

}  // namespace ocrs::lab
