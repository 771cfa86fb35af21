// Copyright 2026 The poisig Authors.
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

// poisig: config-driven runner for the signal-strength Poisson toolkit.
//
//   poisig <intensity|bounds|simulate|estimate|sweep> --config FILE
//          [--out DIR] [--threads N] [--seed S]
//
// Exit codes: 0 success, 2 config error, 3 numeric error, 4 I/O error,
// 1 anything else.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "handles.hpp"

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

int exit_code_for(poisig_status s) {
  switch (s) {
    case POISIG_ERR_PARAMETER:
    case POISIG_ERR_DOMAIN:
    case POISIG_ERR_CAPACITY:
      return kExitConfig;
    case POISIG_ERR_NUMERIC:
    case POISIG_ERR_SAMPLING:
      return kExitNumeric;
    case POISIG_ERR_IO:
      return kExitIo;
    default:
      return kExitInternal;
  }
}

struct Args {
  std::string config;
  std::string out;
  unsigned threads = 0;
  std::uint64_t seed = 0;
};

}  // namespace

int main(int argc, char** argv) {
  using namespace poisig::cli;

  CLI::App app{"Poisson approximation of wireless signal strengths"};
  app.set_version_flag("--version", std::string(poisig_version()));
  app.require_subcommand(1);

  Args args;
  const char* names[][2] = {
      {"intensity", "tabulate the intensity measure M(t), analytic and Monte Carlo"},
      {"bounds", "total-variation and order-statistic bounds over a tau grid"},
      {"simulate", "simulate order statistics of the inverse signal powers"},
      {"estimate", "estimate M(t) from observed minima"},
      {"sweep", "convergence sweep of order statistics over a fading parameter"},
  };
  for (const auto& [name, help] : names) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", args.config, "JSON experiment config")->required();
    sub->add_option("--out", args.out, "output directory (default: config output_path or .)");
    sub->add_option("--threads", args.threads, "worker threads, 0 = all cores")
        ->default_val(0);
    sub->add_option("--seed", args.seed, "master seed, overrides the config");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }
  const CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();

  try {
    ParsedConfig parsed = load_config(args.config);
    if (command_name(parsed.config) != command) {
      throw ConfigError("config is for \"" + std::string(command_name(parsed.config)) +
                            "\" but the subcommand is \"" + command + "\"",
                        1);
    }
    std::visit(
        [&](auto& c) {
          if (sub->count("--seed") > 0) c.seed = args.seed;
          if (!c.seed) {
            throw ConfigError("missing required key \"seed\" (or pass --seed)",
                              parsed.line_of("/" + command));
          }
        },
        parsed.config);

    RunOptions options;
    options.threads = args.threads;
    if (!args.out.empty()) {
      options.out_dir = args.out;
    } else {
      const auto out = std::visit([](const auto& c) { return c.output_path; }, parsed.config);
      options.out_dir = out.value_or(".");
    }
    run_experiment(parsed, options);
    return 0;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "%s: %s\n", args.config.c_str(), e.what());
    return kExitConfig;
  } catch (const ApiError& e) {
    std::fprintf(stderr, "poisig %s: %s\n", command.c_str(), e.what());
    return exit_code_for(e.status());
  } catch (const OutputError& e) {
    std::fprintf(stderr, "poisig %s: %s\n", command.c_str(), e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "poisig %s: internal error: %s\n", command.c_str(), e.what());
    return kExitInternal;
  }
}
