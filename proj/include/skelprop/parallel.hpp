/**
 * @license
 * Copyright 2026 The skelprop Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SKELPROP_PARALLEL_HPP
#define SKELPROP_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace skelprop {

// Upper bound on worker threads used by the line-parallel kernels.
// Defaults to 1. Values < 1 are clamped to 1.
void set_thread_count(unsigned n) noexcept;
unsigned thread_count() noexcept;

// Runs body(begin, end) over contiguous chunks of [0, n). Every item is
// processed by exactly one call, so results written to disjoint slots
// are identical regardless of the thread count.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace skelprop

#endif  // SKELPROP_PARALLEL_HPP
