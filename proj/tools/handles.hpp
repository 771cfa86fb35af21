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

// Owning wrappers for the C handles, and a status check that throws.

#ifndef POISIG_TOOLS_HANDLES_HPP_
#define POISIG_TOOLS_HANDLES_HPP_

#include <memory>
#include <stdexcept>
#include <string>

#include "poisig/poisig.h"

namespace poisig::cli {

class ApiError : public std::runtime_error {
 public:
  ApiError(poisig_status status, const std::string& message)
      : std::runtime_error(message), status_(status) {}
  poisig_status status() const noexcept { return status_; }

 private:
  poisig_status status_;
};

inline void check(poisig_status s) {
  if (s != POISIG_OK) throw ApiError(s, poisig_last_error());
}

template <class T, void (*Destroy)(T*)>
struct HandleDeleter {
  void operator()(T* p) const noexcept { Destroy(p); }
};

template <class T, void (*Destroy)(T*)>
using Handle = std::unique_ptr<T, HandleDeleter<T, Destroy>>;

using SpecHandle = Handle<poisig_pattern_spec, poisig_spec_destroy>;
using PatternHandle = Handle<poisig_pattern, poisig_pattern_destroy>;
using PathLossHandle = Handle<poisig_pathloss, poisig_pathloss_destroy>;
using FadingHandle = Handle<poisig_fading, poisig_fading_destroy>;
using IntensityHandle = Handle<poisig_intensity, poisig_intensity_destroy>;
using OrderStatsHandle = Handle<poisig_order_stats, poisig_order_stats_destroy>;

// Wraps `f(&raw)` returning a status into an owning handle.
template <class H, class F>
H make_handle(F&& f) {
  typename H::pointer raw = nullptr;
  check(f(&raw));
  return H(raw);
}

}  // namespace poisig::cli

#endif  // POISIG_TOOLS_HANDLES_HPP_
