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

#include "skelprop/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <random>
#include <string>

namespace skelprop {
namespace fs = std::filesystem;

namespace {

// Little-endian byte cursor helpers. Values are copied through memcpy and
// swapped on big-endian hosts so the on-disk layout is fixed.
template <class T>
T byteswap_value(T v) {
  auto* b = reinterpret_cast<unsigned char*>(&v);
  std::reverse(b, b + sizeof(T));
  return v;
}

template <class T>
T read_le(std::span<const std::uint8_t> bytes, std::size_t offset, bool swap = false) {
  T v;
  std::memcpy(&v, bytes.data() + offset, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) swap = !swap;
  return swap ? byteswap_value(v) : v;
}

template <class T>
void write_le(std::vector<std::uint8_t>& out, std::size_t offset, T v) {
  if constexpr (std::endian::native == std::endian::big) v = byteswap_value(v);
  std::memcpy(out.data() + offset, &v, sizeof(T));
}

template <class T>
void append_le(std::vector<std::uint8_t>& out, T v) {
  const std::size_t at = out.size();
  out.resize(at + sizeof(T));
  write_le(out, at, v);
}

bool is_gzip(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 2 && bytes[0] == 0x1f && bytes[1] == 0x8b;
}

void check_finite(const ScalarVolume& v, const std::string& source) {
  std::size_t bad = 0;
  std::size_t first = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      if (bad == 0) first = i;
      ++bad;
    }
  }
  if (bad > 0) {
    const Index3 p = v.geometry().coords(first);
    throw FormatError(source + ": " + std::to_string(bad) +
                      " non-finite voxel(s), first at index " + std::to_string(first) +
                      " (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ", " +
                      std::to_string(p.z) + ")");
  }
}

void check_dims_u32(const VolumeGeometry& g) {
  for (std::size_t d : g.dims) {
    if (d > std::numeric_limits<std::uint32_t>::max()) {
      throw FormatError("dimension " + std::to_string(d) + " does not fit the file header");
    }
  }
}

void check_u8_representable(std::span<const float> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    const float v = values[i];
    if (!(v >= 0.0f && v <= 255.0f) || v != std::floor(v)) {
      throw FormatError("unsupported dtype request: voxel " + std::to_string(i) + " = " +
                        std::to_string(v) + " is not representable as u8");
    }
  }
}

void append_payload(std::vector<std::uint8_t>& out, StoredType dtype,
                    std::span<const float> values) {
  if (dtype == StoredType::UInt8) {
    check_u8_representable(values);
    out.reserve(out.size() + values.size());
    for (float v : values) out.push_back(static_cast<std::uint8_t>(v));
    return;
  }
  const std::size_t at = out.size();
  out.resize(at + values.size() * 4);
  if constexpr (std::endian::native == std::endian::little) {
    std::memcpy(out.data() + at, values.data(), values.size() * 4);
  } else {
    for (std::size_t i = 0; i < values.size(); ++i) write_le(out, at + 4 * i, values[i]);
  }
}

// NIfTI-1 header field offsets.
constexpr std::size_t kNiiHeader = 348;
constexpr std::size_t kNiiDataOffset = 352;
constexpr std::size_t kOffDim = 40;
constexpr std::size_t kOffDatatype = 70;
constexpr std::size_t kOffBitpix = 72;
constexpr std::size_t kOffPixdim = 76;
constexpr std::size_t kOffVoxOffset = 108;
constexpr std::size_t kOffSclSlope = 112;
constexpr std::size_t kOffSclInter = 116;
constexpr std::size_t kOffXyztUnits = 123;
constexpr std::size_t kOffDescrip = 148;
constexpr std::size_t kOffSformCode = 254;
constexpr std::size_t kOffSrowX = 280;
constexpr std::size_t kOffMagic = 344;

enum NiftiType : std::int16_t {
  kNiiUInt8 = 2,
  kNiiInt16 = 4,
  kNiiInt32 = 8,
  kNiiFloat32 = 16,
  kNiiFloat64 = 64,
  kNiiInt8 = 256,
  kNiiUInt16 = 512,
  kNiiUInt32 = 768,
};

std::size_t nifti_type_bytes(std::int16_t t) {
  switch (t) {
    case kNiiUInt8:
    case kNiiInt8:
      return 1;
    case kNiiInt16:
    case kNiiUInt16:
      return 2;
    case kNiiInt32:
    case kNiiUInt32:
    case kNiiFloat32:
      return 4;
    case kNiiFloat64:
      return 8;
    default:
      return 0;
  }
}

double nifti_value(std::span<const std::uint8_t> b, std::size_t off, std::int16_t t,
                   bool swap) {
  switch (t) {
    case kNiiUInt8:
      return b[off];
    case kNiiInt8:
      return static_cast<std::int8_t>(b[off]);
    case kNiiInt16:
      return read_le<std::int16_t>(b, off, swap);
    case kNiiUInt16:
      return read_le<std::uint16_t>(b, off, swap);
    case kNiiInt32:
      return read_le<std::int32_t>(b, off, swap);
    case kNiiUInt32:
      return read_le<std::uint32_t>(b, off, swap);
    case kNiiFloat32:
      return read_le<float>(b, off, swap);
    case kNiiFloat64:
      return read_le<double>(b, off, swap);
    default:
      return 0.0;
  }
}

template <class V>
std::vector<float> as_floats(const V& v) {
  std::vector<float> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<float>(v[i]);
  return out;
}

std::vector<std::uint8_t> encode(const VolumeGeometry& g, FileFormat format,
                                 StoredType dtype, std::span<const float> values) {
  return format == FileFormat::Nifti1 ? encode_nifti1(g, dtype, values)
                                      : encode_rvol(g, dtype, values);
}

}  // namespace

FileFormat format_from_path(const fs::path& path) {
  const std::string name = path.filename().string();
  auto ends_with = [&](std::string_view suffix) {
    return name.size() >= suffix.size() &&
           name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with(".gz")) {
    throw FormatError(path.string() + ": compressed volumes are not supported");
  }
  if (ends_with(".nii")) return FileFormat::Nifti1;
  return FileFormat::RawRvol;
}

FileFormat parse_format(std::string_view name) {
  if (name == "nifti1" || name == "nifti" || name == "nii") return FileFormat::Nifti1;
  if (name == "raw-rvol" || name == "rvol") return FileFormat::RawRvol;
  throw InvalidArgument("unknown volume format '" + std::string(name) + "'");
}

const char* to_string(FileFormat f) noexcept {
  return f == FileFormat::Nifti1 ? "nifti1" : "raw-rvol";
}

StoredType parse_stored_type(std::string_view name) {
  if (name == "f32" || name == "float32") return StoredType::Float32;
  if (name == "u8" || name == "uint8") return StoredType::UInt8;
  throw FormatError("unsupported dtype request '" + std::string(name) + "'");
}

std::vector<std::uint8_t> encode_rvol(const VolumeGeometry& g, StoredType dtype,
                                      std::span<const float> values) {
  g.validate();
  check_dims_u32(g);
  if (values.size() != g.voxel_count()) {
    throw InvalidArgument("payload length does not match geometry");
  }
  std::vector<std::uint8_t> out = {'R', 'V', 'O', 'L'};
  append_le<std::uint16_t>(out, kRvolVersion);
  out.push_back(static_cast<std::uint8_t>(dtype));
  for (std::size_t d : g.dims) append_le<std::uint32_t>(out, static_cast<std::uint32_t>(d));
  for (double s : g.spacing) append_le<float>(out, static_cast<float>(s));
  append_payload(out, dtype, values);
  return out;
}

ScalarVolume decode_rvol(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kRvolHeaderBytes || std::memcmp(bytes.data(), "RVOL", 4) != 0) {
    throw FormatError("malformed header: missing RVOL magic");
  }
  const auto version = read_le<std::uint16_t>(bytes, 4);
  if (version != kRvolVersion) {
    throw FormatError("malformed header: unsupported rvol version " + std::to_string(version));
  }
  const std::uint8_t code = bytes[6];
  if (code > 1) {
    throw FormatError("malformed header: unknown dtype code " + std::to_string(code));
  }
  std::array<std::size_t, 3> dims{};
  std::array<double, 3> spacing{};
  for (int a = 0; a < 3; ++a) {
    dims[a] = read_le<std::uint32_t>(bytes, 7 + 4 * a);
    spacing[a] = read_le<float>(bytes, 19 + 4 * a);
  }
  VolumeGeometry g;
  try {
    g = VolumeGeometry(dims, spacing);
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("malformed header: ") + e.what());
  }
  const std::size_t n = g.voxel_count();
  const std::size_t elem = code == 0 ? 4 : 1;
  const std::size_t payload = bytes.size() - kRvolHeaderBytes;
  if (n > payload / elem || payload != n * elem) {
    throw FormatError("dimension mismatch: header " + to_string(g) + " expects " +
                      std::to_string(n * elem) + " payload bytes, found " +
                      std::to_string(payload));
  }
  std::vector<float> data(n);
  const auto body = bytes.subspan(kRvolHeaderBytes);
  if (code == 1) {
    for (std::size_t i = 0; i < n; ++i) data[i] = body[i];
  } else if constexpr (std::endian::native == std::endian::little) {
    std::memcpy(data.data(), body.data(), n * 4);
  } else {
    for (std::size_t i = 0; i < n; ++i) data[i] = read_le<float>(body, 4 * i);
  }
  ScalarVolume v(g, std::move(data));
  check_finite(v, "rvol payload");
  return v;
}

std::vector<std::uint8_t> encode_nifti1(const VolumeGeometry& g, StoredType dtype,
                                        std::span<const float> values) {
  g.validate();
  for (std::size_t d : g.dims) {
    if (d > static_cast<std::size_t>(std::numeric_limits<std::int16_t>::max())) {
      throw FormatError("dimension " + std::to_string(d) + " exceeds the NIfTI-1 limit");
    }
  }
  if (values.size() != g.voxel_count()) {
    throw InvalidArgument("payload length does not match geometry");
  }
  std::vector<std::uint8_t> out(kNiiDataOffset, 0);
  write_le<std::int32_t>(out, 0, static_cast<std::int32_t>(kNiiHeader));
  out[38] = 'r';  // "regular"
  write_le<std::int16_t>(out, kOffDim, 3);
  for (int a = 0; a < 3; ++a) {
    write_le<std::int16_t>(out, kOffDim + 2 * (a + 1), static_cast<std::int16_t>(g.dims[a]));
  }
  for (int a = 4; a < 8; ++a) write_le<std::int16_t>(out, kOffDim + 2 * a, 1);
  const bool u8 = dtype == StoredType::UInt8;
  write_le<std::int16_t>(out, kOffDatatype, u8 ? kNiiUInt8 : kNiiFloat32);
  write_le<std::int16_t>(out, kOffBitpix, u8 ? 8 : 32);
  write_le<float>(out, kOffPixdim, 1.0f);
  for (int a = 0; a < 3; ++a) {
    write_le<float>(out, kOffPixdim + 4 * (a + 1), static_cast<float>(g.spacing[a]));
  }
  write_le<float>(out, kOffVoxOffset, static_cast<float>(kNiiDataOffset));
  write_le<float>(out, kOffSclSlope, 1.0f);
  write_le<float>(out, kOffSclInter, 0.0f);
  out[kOffXyztUnits] = 2;  // millimeters
  static constexpr char kDescrip[] = "skelprop";
  std::memcpy(out.data() + kOffDescrip, kDescrip, sizeof(kDescrip) - 1);
  write_le<std::int16_t>(out, kOffSformCode, 1);
  for (int r = 0; r < 3; ++r) {
    write_le<float>(out, kOffSrowX + 16 * r + 4 * r, static_cast<float>(g.spacing[r]));
  }
  std::memcpy(out.data() + kOffMagic, "n+1\0", 4);
  append_payload(out, dtype, values);
  return out;
}

ScalarVolume decode_nifti1(std::span<const std::uint8_t> bytes) {
  if (is_gzip(bytes)) {
    throw FormatError("compressed NIfTI (.nii.gz) is not supported; decompress first");
  }
  if (bytes.size() < kNiiHeader) {
    throw FormatError("malformed header: file shorter than 348 bytes");
  }
  bool swap = false;
  const auto hdr = read_le<std::int32_t>(bytes, 0);
  if (hdr != static_cast<std::int32_t>(kNiiHeader)) {
    if (byteswap_value(hdr) != static_cast<std::int32_t>(kNiiHeader)) {
      throw FormatError("malformed header: sizeof_hdr is " + std::to_string(hdr));
    }
    swap = true;
  }
  if (std::memcmp(bytes.data() + kOffMagic, "n+1", 4) != 0) {
    if (std::memcmp(bytes.data() + kOffMagic, "ni1", 4) == 0) {
      throw FormatError("malformed header: .hdr/.img pairs are not supported");
    }
    throw FormatError("malformed header: missing n+1 magic");
  }
  const auto ndim = read_le<std::int16_t>(bytes, kOffDim, swap);
  if (ndim < 1 || ndim > 7) {
    throw FormatError("malformed header: dim[0] = " + std::to_string(ndim));
  }
  std::array<std::size_t, 3> dims{1, 1, 1};
  std::array<double, 3> spacing{1.0, 1.0, 1.0};
  for (int a = 1; a <= ndim; ++a) {
    const auto d = read_le<std::int16_t>(bytes, kOffDim + 2 * a, swap);
    if (d < 1) {
      throw FormatError("malformed header: dim[" + std::to_string(a) + "] = " +
                        std::to_string(d));
    }
    if (a <= 3) {
      dims[a - 1] = static_cast<std::size_t>(d);
      const double p = std::fabs(read_le<float>(bytes, kOffPixdim + 4 * a, swap));
      if (!(p > 0.0) || !std::isfinite(p)) {
        throw FormatError("malformed header: pixdim[" + std::to_string(a) + "] is not positive");
      }
      spacing[a - 1] = p;
    } else if (d != 1) {
      throw FormatError("malformed header: only 3D volumes are supported");
    }
  }
  const auto datatype = read_le<std::int16_t>(bytes, kOffDatatype, swap);
  const std::size_t elem = nifti_type_bytes(datatype);
  if (elem == 0) {
    throw FormatError("malformed header: unsupported datatype " + std::to_string(datatype));
  }
  const double vox_offset = read_le<float>(bytes, kOffVoxOffset, swap);
  if (!(vox_offset >= static_cast<double>(kNiiHeader)) || vox_offset != std::floor(vox_offset)) {
    throw FormatError("malformed header: vox_offset " + std::to_string(vox_offset));
  }
  const VolumeGeometry g(dims, spacing);
  const std::size_t n = g.voxel_count();
  const auto offset = static_cast<std::size_t>(vox_offset);
  if (bytes.size() < offset || (bytes.size() - offset) / elem < n) {
    throw FormatError("dimension mismatch: header " + to_string(g) + " needs " +
                      std::to_string(n * elem) + " payload bytes, found " +
                      std::to_string(bytes.size() > offset ? bytes.size() - offset : 0));
  }
  double slope = read_le<float>(bytes, kOffSclSlope, swap);
  double inter = read_le<float>(bytes, kOffSclInter, swap);
  if (slope == 0.0 || !std::isfinite(slope)) {
    slope = 1.0;
    inter = 0.0;
  }
  if (!std::isfinite(inter)) inter = 0.0;
  std::vector<float> data(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double raw = nifti_value(bytes, offset + i * elem, datatype, swap);
    data[i] = static_cast<float>(slope * raw + inter);
  }
  ScalarVolume v(g, std::move(data));
  check_finite(v, "nifti payload");
  return v;
}

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed for " + path.string());
  return bytes;
}

void write_file_atomic(const fs::path& path, std::span<const std::uint8_t> bytes) {
  std::random_device rd;
  const fs::path tmp =
      path.string() + ".tmp-" + std::to_string(rd() % 1000000u);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("write failed for " + path.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError("cannot move output into place at " + path.string() + ": " + ec.message());
  }
}

ScalarVolume load_volume(const fs::path& path, FileFormat format) {
  const auto bytes = read_file(path);
  try {
    return format == FileFormat::Nifti1 ? decode_nifti1(bytes) : decode_rvol(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void save_volume(const ScalarVolume& v, const fs::path& path, FileFormat format,
                 StoredType dtype) {
  write_file_atomic(path, encode(v.geometry(), format, dtype, v.data()));
}

void save_volume(const BinaryMask& m, const fs::path& path, FileFormat format) {
  write_file_atomic(path, encode(m.geometry(), format, StoredType::UInt8, as_floats(m)));
}

void save_volume(const MaskProposal& p, const fs::path& path, FileFormat format) {
  std::vector<float> codes(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) codes[i] = static_cast<float>(p[i]);
  write_file_atomic(path, encode(p.geometry(), format, StoredType::UInt8, codes));
}

void save_volume(const DistanceMap& d, const fs::path& path, FileFormat format) {
  write_file_atomic(path, encode(d.geometry(), format, StoredType::Float32, as_floats(d)));
}

void save_volume(const PredictionVolume& p, const fs::path& path, FileFormat format) {
  write_file_atomic(path, encode(p.geometry(), format, StoredType::Float32, as_floats(p)));
}

SkeletonAnnotation skeleton_from_mask_file(const fs::path& path) {
  auto ska = SkeletonAnnotation::from_mask(to_mask(load_volume(path)));
  if (ska.empty()) {
    throw InvalidArgument(path.string() + ": skeleton annotation is empty");
  }
  return ska;
}

double annotation_fraction(const SkeletonAnnotation& ska, const BinaryMask& reference) {
  require_same_geometry(ska.geometry(), reference.geometry(), "annotation fraction");
  std::size_t fg = 0;
  for (auto v : reference.data()) fg += v ? 1 : 0;
  return fg == 0 ? 0.0 : static_cast<double>(ska.size()) / static_cast<double>(fg);
}

}  // namespace skelprop
