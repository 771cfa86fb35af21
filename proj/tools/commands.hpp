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

#ifndef POISIG_TOOLS_COMMANDS_HPP_
#define POISIG_TOOLS_COMMANDS_HPP_

#include <filesystem>
#include <stdexcept>
#include <string>

#include "config.hpp"

namespace poisig::cli {

// Output file could not be created or written.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::filesystem::path out_dir;
  unsigned threads = 0;
};

// Runs the experiment and writes its CSV tables plus run_manifest.json into
// options.out_dir. The config must already carry a seed.
void run_experiment(const ParsedConfig& parsed, const RunOptions& options);

}  // namespace poisig::cli

#endif  // POISIG_TOOLS_COMMANDS_HPP_
