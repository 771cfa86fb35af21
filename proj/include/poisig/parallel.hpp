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

#ifndef POISIG_PARALLEL_HPP_
#define POISIG_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace poisig {

// Worker count used by Monte Carlo routines. 0 means hardware concurrency.
void set_thread_count(unsigned n) noexcept;
unsigned thread_count() noexcept;

// Runs body(i) for i in [0, n) on up to thread_count() workers. Each index is
// processed exactly once; callers write results into slot i so the outcome
// does not depend on scheduling. The first exception thrown by any body is
// rethrown on the calling thread after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace poisig

#endif  // POISIG_PARALLEL_HPP_
