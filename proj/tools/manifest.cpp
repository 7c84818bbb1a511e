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

#include "manifest.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cstdio>
#include <sstream>

#include "skelprop/io.hpp"

namespace skelprop::cli {

std::string sha256_file(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw IoError("sha256 failed for " + path.string());
  }
  std::string hex;
  hex.reserve(2 * len);
  static constexpr char kDigits[] = "0123456789abcdef";
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kDigits[md[i] >> 4]);
    hex.push_back(kDigits[md[i] & 15]);
  }
  return hex;
}

std::string RunManifest::render(const std::filesystem::path& output) const {
  std::ostringstream os;
  os << "command=" << command << '\n';
  os << "version=" << version << '\n';
  os << "output=" << output.filename().string() << '\n';
  for (const auto& [k, v] : params) os << "param." << k << '=' << v << '\n';
  if (inputs.empty()) os << "inputs=none\n";
  for (const auto& in : inputs) {
    os << "input." << in.role << ".path=" << in.path.string() << '\n';
    os << "input." << in.role << ".sha256=" << in.sha256 << '\n';
  }
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, duration_seconds,
                               std::chars_format::fixed, 6);
  os << "duration_seconds=" << std::string(buf, r.ptr) << '\n';
  return os.str();
}

std::filesystem::path manifest_path(const std::filesystem::path& output) {
  std::filesystem::path p = output;
  p += ".manifest";
  return p;
}

void write_manifest(const RunManifest& m, const std::filesystem::path& output) {
  const std::string text = m.render(output);
  write_file_atomic(manifest_path(output),
                    std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace skelprop::cli
