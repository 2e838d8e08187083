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

#include "lab/io.h"

#include <stdexcept>

namespace ocrs::lab {
namespace {

[[noreturn]] void Bad(const std::string& what) {
  throw std::invalid_argument(what);
}

const json& Field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    Bad(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

template <class T>
T Get(const json& j, const char* key) {
  try {
    return Field(j, key).get<T>();
  } catch (const json::exception&) {
    Bad(std::string("field \"") + key + "\" has the wrong type");
  }
}

template <class T>
T GetOr(const json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return Get<T>(j, key);
}

std::vector<std::pair<int, int>> Pairs(const json& j, const char* key) {
  std::vector<std::pair<int, int>> out;
  for (const auto& e : Field(j, key)) {
    if (!e.is_array() || e.size() != 2) {
      Bad(std::string("\"") + key + "\" entries must be [a, b] pairs");
    }
    out.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  return out;
}

json PairsToJson(const std::vector<std::pair<int, int>>& pairs) {
  json out = json::array();
  for (const auto& [a, b] : pairs) out.push_back({a, b});
  return out;
}

}  // namespace

std::unique_ptr<Matroid> MatroidFromJson(const json& j) {
  const auto family = ParseFamily(Get<std::string>(j, "family"));
  if (!family) Bad("unknown matroid family \"" + j["family"].get<std::string>() + "\"");
  switch (*family) {
    case MatroidFamily::kUniform:
      return std::make_unique<UniformMatroid>(Get<int>(j, "n"),
                                              Get<int>(j, "rank"));
    case MatroidFamily::kLaminar: {
      LaminarSpec spec;
      spec.n = Get<int>(j, "n");
      spec.sets = Get<std::vector<ElementSet>>(j, "sets");
      spec.capacities = Get<std::vector<int>>(j, "capacities");
      return std::make_unique<LaminarMatroid>(std::move(spec));
    }
    case MatroidFamily::kGraphic:
      return std::make_unique<GraphicMatroid>(
          GraphicSpec{Get<int>(j, "vertices"), Pairs(j, "edges")});
    case MatroidFamily::kTransversal:
      return std::make_unique<TransversalMatroid>(TransversalSpec{
          Get<int>(j, "left"), Get<int>(j, "right"), Pairs(j, "edges")});
    case MatroidFamily::kExplicit:
      return std::make_unique<ExplicitMatroid>(
          Get<int>(j, "n"), Get<std::vector<ElementSet>>(j, "bases"));
  }
  Bad("unknown matroid family");
}

json MatroidToJson(const Matroid& m) {
  json j;
  j["family"] = std::string(FamilyName(m.family()));
  if (const auto* u = dynamic_cast<const UniformMatroid*>(&m)) {
    j["n"] = u->size();
    j["rank"] = u->rank_bound();
  } else if (const auto* l = dynamic_cast<const LaminarMatroid*>(&m)) {
    j["n"] = l->spec().n;
    j["sets"] = l->spec().sets;
    j["capacities"] = l->spec().capacities;
  } else if (const auto* g = dynamic_cast<const GraphicMatroid*>(&m)) {
    j["vertices"] = g->spec().vertices;
    j["edges"] = PairsToJson(g->spec().edges);
  } else if (const auto* t = dynamic_cast<const TransversalMatroid*>(&m)) {
    j["left"] = t->spec().left;
    j["right"] = t->spec().right;
    j["edges"] = PairsToJson(t->spec().edges);
  } else if (const auto* e = dynamic_cast<const ExplicitMatroid*>(&m)) {
    j["n"] = e->size();
    j["bases"] = e->bases();
  } else {
    Bad("matroid type has no JSON form");
  }
  return j;
}

ValueDistribution DistributionFromJson(const json& j) {
  const auto kind = Get<std::string>(j, "kind");
  if (kind == "uniform") {
    return ValueDistribution::Uniform(Get<double>(j, "low"),
                                      Get<double>(j, "high"));
  }
  if (kind == "exponential") {
    return ValueDistribution::Exponential(Get<double>(j, "rate"));
  }
  if (kind == "pareto") {
    return ValueDistribution::Pareto(Get<double>(j, "alpha"),
                                     Get<double>(j, "scale"));
  }
  if (kind == "discrete") {
    return ValueDistribution::Discrete(Get<std::vector<double>>(j, "support"),
                                       Get<std::vector<double>>(j, "masses"),
                                       GetOr<bool>(j, "jitter", true));
  }
  Bad("unknown distribution kind \"" + kind + "\"");
}

json DistributionToJson(const ValueDistribution& d) {
  json j;
  j["kind"] = std::string(KindName(d.kind()));
  switch (d.kind()) {
    case ValueDistribution::Kind::kUniform:
      j["low"] = d.params()[0];
      j["high"] = d.params()[1];
      break;
    case ValueDistribution::Kind::kExponential:
      j["rate"] = d.params()[0];
      break;
    case ValueDistribution::Kind::kPareto:
      j["alpha"] = d.params()[0];
      j["scale"] = d.params()[1];
      break;
    case ValueDistribution::Kind::kDiscrete:
      j["support"] = d.support();
      j["masses"] = d.masses();
      j["jitter"] = d.jitter();
      break;
  }
  return j;
}

std::vector<ValueDistribution> DistributionsFromJson(const json& j, int n) {
  if (j.is_object()) {
    return std::vector<ValueDistribution>(n, DistributionFromJson(j));
  }
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    Bad("\"distributions\" must be one object or an array with one entry per "
        "element");
  }
  std::vector<ValueDistribution> out;
  for (const auto& d : j) out.push_back(DistributionFromJson(d));
  return out;
}

std::vector<std::string> MatroidKinds() {
  return {"uniform", "laminar", "graphic", "transversal", "explicit"};
}

std::vector<std::string> SchemeKinds() {
  return {"greedy", "accept_second", "even_mixture", "accept_nothing",
          "counting", "b_greedy"};
}

std::unique_ptr<OnlineScheme> SchemeFromJson(const json& j) {
  const auto kind = Get<std::string>(j, "kind");
  if (kind == "greedy") return MakeGreedySingle();
  if (kind == "accept_second") return MakeAcceptSecond();
  if (kind == "even_mixture") return MakeEvenMixture();
  if (kind == "accept_nothing") return MakeAcceptNothing();
  if (kind == "counting") {
    return std::make_unique<CountingScheme>(Get<std::vector<double>>(j, "p"));
  }
  if (kind == "b_greedy") return std::make_unique<BGreedy>(Get<double>(j, "b"));
  Bad("unknown scheme kind \"" + kind + "\"");
}

OrderGenerator OrderFromJson(const json& j) {
  OrderGenerator g;
  const auto kind = Get<std::string>(j, "kind");
  const auto parsed = ParseOrderKind(kind);
  if (!parsed) Bad("unknown order kind \"" + kind + "\"");
  g.kind = *parsed;
  if (g.kind == OrderKind::kTargetLast) g.target = Get<int>(j, "target");
  return g;
}

json IntervalToJson(const Interval& ci) { return json::array({ci.lo, ci.hi}); }

json TrialReportToJson(const TrialReport& r) {
  json j;
  j["scheme"] = r.scheme;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["min_estimate"] = r.min_estimate ? json(*r.min_estimate) : json(nullptr);
  j["argmin"] = r.argmin ? json(*r.argmin) : json(nullptr);
  j["min_probe_estimate"] = r.min_probe_estimate;
  j["argmin_probe"] = r.argmin_probe;
  j["warnings"] = r.warnings;
  json elements = json::array();
  for (const auto& s : r.elements) {
    json e;
    e["element"] = s.element;
    e["active"] = s.active;
    e["accepted"] = s.accepted;
    if (s.sufficient) {
      e["estimate"] = s.estimate;
    } else {
      e["estimate"] = "insufficient data";
    }
    e["ci"] = IntervalToJson(s.ci);
    e["probe_estimate"] = s.probe_estimate;
    e["probe_ci"] = IntervalToJson(s.probe_ci);
    elements.push_back(std::move(e));
  }
  j["elements"] = std::move(elements);
  return j;
}

json RatioReportToJson(const RatioReport& r) {
  return {{"ratio", r.ratio},         {"ci", IntervalToJson(r.ci)},
          {"mean_alg", r.mean_alg},   {"mean_opt", r.mean_opt},
          {"trials", r.trials},       {"resamples", r.resamples},
          {"seed", r.seed}};
}

}  // namespace ocrs::lab
