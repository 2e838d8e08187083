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

// ocrs_lab: runs selectability, prophet and hard-instance experiments from
// JSON configs.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "lab/experiment.h"
#include "lab/io.h"
#include "ocrs/errors.h"

namespace {

using ocrs::lab::json;

enum ExitCode { kOk = 0, kFailure = 1, kInvalid = 2, kContract = 3 };

int PrintError(const std::string& type, const std::string& message,
               const std::vector<std::string>& diagnostics, int code) {
  json err = {{"error",
               {{"type", type}, {"message", message}, {"diagnostics", diagnostics}}}};
  std::cerr << err.dump(2) << "\n";
  return code;
}

json LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::filesystem::path OutputDir(const std::string& flag, const json& config) {
  if (!flag.empty()) return flag;
  if (config.contains("output") && config["output"].contains("dir")) {
    return config["output"]["dir"].get<std::string>();
  }
  if (const char* env = std::getenv("OCRS_LAB_OUT")) return env;
  return ".";
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

// Maps exceptions to the documented exit codes.
template <class F>
int Guard(F body) {
  try {
    return body();
  } catch (const ocrs::lab::ValidationError& e) {
    return PrintError("validation", e.what(), e.diagnostics(), kInvalid);
  } catch (const ocrs::ContractViolation& e) {
    return PrintError("contract_violation", e.what(), {}, kContract);
  } catch (const std::invalid_argument& e) {
    return PrintError("validation", e.what(), {e.what()}, kInvalid);
  } catch (const ocrs::UnsupportedSize& e) {
    return PrintError("unsupported_size", e.what(), {e.what()}, kInvalid);
  } catch (const std::exception& e) {
    return PrintError("error", e.what(), {}, kFailure);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online contention resolution and prophet experiments"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> trials;
  int workers = 1;
  bool quiet = false;

  auto* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("config", config_path, "Experiment JSON")->required();
  run->add_option("--seed", seed, "Override the master seed");
  run->add_option("--trials", trials, "Override the trial count");
  run->add_option("--workers", workers, "Worker threads")
      ->check(CLI::PositiveNumber);
  run->add_option("--out", out_dir, "Output directory");
  run->add_flag("--quiet", quiet, "Do not echo the report");

  auto* validate = app.add_subcommand("validate", "Check a config without running");
  validate->add_option("config", config_path, "Experiment JSON")->required();

  auto* schemes = app.add_subcommand("list-schemes", "Print scheme kinds");
  auto* matroids = app.add_subcommand("list-matroids", "Print matroid families");
  auto* kinds = app.add_subcommand("list-kinds", "Print experiment kinds");

  CLI11_PARSE(app, argc, argv);

  if (*schemes) {
    for (const auto& s : ocrs::lab::SchemeKinds()) std::cout << s << "\n";
    return kOk;
  }
  if (*matroids) {
    for (const auto& s : ocrs::lab::MatroidKinds()) std::cout << s << "\n";
    return kOk;
  }
  if (*kinds) {
    for (const auto& s : ocrs::lab::ExperimentKinds()) std::cout << s << "\n";
    return kOk;
  }
  if (*validate) {
    return Guard([&] {
      const auto diagnostics = ocrs::lab::Validate(LoadConfig(config_path));
      if (!diagnostics.empty()) throw ocrs::lab::ValidationError(diagnostics);
      std::cout << "ok\n";
      return int{kOk};
    });
  }
  return Guard([&] {
    const json config = ocrs::lab::ApplyOverrides(LoadConfig(config_path),
                                                  {seed, trials});
    const auto start = std::chrono::steady_clock::now();
    const auto output = ocrs::lab::RunExperiment(config, workers);
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    const auto dir = OutputDir(out_dir, config);
    std::filesystem::create_directories(dir);
    std::string name = config.at("kind").get<std::string>() + "-" +
                       output.report.at("config_hash").get<std::string>().substr(0, 8);
    if (config.contains("output") && config["output"].contains("name")) {
      name = config["output"]["name"].get<std::string>();
    }
    const std::string text = output.report.dump(2) + "\n";
    WriteFile(dir / (name + ".json"), text);
    if (output.csv) WriteFile(dir / (name + ".csv"), *output.csv);
    if (!quiet) std::cout << text;
    std::cerr << "wrote " << (dir / (name + ".json")).string() << " in "
              << seconds << " s\n";
    return int{kOk};
  });
}
