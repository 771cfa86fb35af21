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

#ifndef POISIG_SRC_CSV_HPP_
#define POISIG_SRC_CSV_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace poisig::csv {

// Shortest-safe lossless rendering: 17 significant digits, '.' decimal.
std::string format_real(double v);

std::vector<std::string> split_line(std::string_view line);

// Strict parse of a full field; throws IoError naming `line_no` on failure.
double parse_real(std::string_view field, std::size_t line_no);

}  // namespace poisig::csv

#endif  // POISIG_SRC_CSV_HPP_
