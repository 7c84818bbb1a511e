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

#ifndef SKELPROP_TOOLS_MANIFEST_HPP
#define SKELPROP_TOOLS_MANIFEST_HPP

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace skelprop::cli {

// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

struct InputRecord {
  std::string role;
  std::filesystem::path path;
  std::string sha256;
};

// Plain-text key=value sidecar written next to each output file as
// "<output>.manifest".
struct RunManifest {
  std::string command;
  std::string version;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<InputRecord> inputs;
  double duration_seconds = 0.0;

  std::string render(const std::filesystem::path& output) const;
};

std::filesystem::path manifest_path(const std::filesystem::path& output);
void write_manifest(const RunManifest& m, const std::filesystem::path& output);

}  // namespace skelprop::cli

#endif  // SKELPROP_TOOLS_MANIFEST_HPP
