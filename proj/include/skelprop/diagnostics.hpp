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

#ifndef SKELPROP_DIAGNOSTICS_HPP
#define SKELPROP_DIAGNOSTICS_HPP

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace skelprop {

// Non-fatal conditions (degenerate propagation, empty loss domains, fusion
// conflicts) are reported through a process-wide warning sink. The default
// sink writes "skelprop: warning: <msg>" to stderr.
using WarningHandler = std::function<void(std::string_view)>;

// Returns the previous handler. Passing an empty function restores stderr.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(std::string_view message);

// RAII capture of every warning emitted while alive.
class ScopedWarningCapture {
 public:
  ScopedWarningCapture();
  ~ScopedWarningCapture();
  ScopedWarningCapture(const ScopedWarningCapture&) = delete;
  ScopedWarningCapture& operator=(const ScopedWarningCapture&) = delete;

  const std::vector<std::string>& messages() const noexcept { return messages_; }
  bool contains(std::string_view needle) const;

 private:
  WarningHandler previous_;
  std::vector<std::string> messages_;
};

}  // namespace skelprop

#endif  // SKELPROP_DIAGNOSTICS_HPP
