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

/*
 * Volume file IO.
 *
 * raw-rvol layout (all fields little-endian, no padding):
 *
 *   offset  size  field
 *        0     4  magic "RVOL"
 *        4     2  version (u16, currently 1)
 *        6     1  dtype code (u8: 0 = f32, 1 = u8)
 *        7    12  dims x, y, z (3 x u32)
 *       19    12  spacing x, y, z in mm (3 x f32)
 *       31     .  payload, x fastest, then y, then z
 *
 * NIfTI-1 is read and written as single-file uncompressed .nii ("n+1").
 * Gzip-compressed files and .hdr/.img pairs are rejected.
 */

#ifndef SKELPROP_IO_HPP
#define SKELPROP_IO_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "skelprop/volume.hpp"

namespace skelprop {

enum class FileFormat { RawRvol, Nifti1 };

enum class StoredType : std::uint8_t { Float32 = 0, UInt8 = 1 };

inline constexpr std::size_t kRvolHeaderBytes = 31;
inline constexpr std::uint16_t kRvolVersion = 1;

// ".nii" selects NIfTI-1; ".gz" is rejected; everything else is raw-rvol.
FileFormat format_from_path(const std::filesystem::path& path);
FileFormat parse_format(std::string_view name);
const char* to_string(FileFormat f) noexcept;
StoredType parse_stored_type(std::string_view name);

ScalarVolume load_volume(const std::filesystem::path& path, FileFormat format);
inline ScalarVolume load_volume(const std::filesystem::path& path) {
  return load_volume(path, format_from_path(path));
}

// Writes to a temporary sibling and renames into place, so a failed save
// never leaves a partial file at the destination.
void save_volume(const ScalarVolume& v, const std::filesystem::path& path,
                 FileFormat format, StoredType dtype = StoredType::Float32);
void save_volume(const BinaryMask& m, const std::filesystem::path& path,
                 FileFormat format);
void save_volume(const MaskProposal& p, const std::filesystem::path& path,
                 FileFormat format);
// Distance and prediction volumes are narrowed to f32 on disk.
void save_volume(const DistanceMap& d, const std::filesystem::path& path,
                 FileFormat format);
void save_volume(const PredictionVolume& p, const std::filesystem::path& path,
                 FileFormat format);

// In-memory encoders used by save_volume; exposed for byte-level tests.
std::vector<std::uint8_t> encode_rvol(const VolumeGeometry& g, StoredType dtype,
                                      std::span<const float> values);
ScalarVolume decode_rvol(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_nifti1(const VolumeGeometry& g, StoredType dtype,
                                        std::span<const float> values);
ScalarVolume decode_nifti1(std::span<const std::uint8_t> bytes);

// Loads a binary volume and returns its nonzero voxels. An all-zero volume
// is an error since propagation needs at least one seed.
SkeletonAnnotation skeleton_from_mask_file(const std::filesystem::path& path);

// |annotation| / |reference foreground|, for auditing annotation sparsity.
double annotation_fraction(const SkeletonAnnotation& ska, const BinaryMask& reference);

void write_file_atomic(const std::filesystem::path& path,
                       std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

}  // namespace skelprop

#endif  // SKELPROP_IO_HPP
