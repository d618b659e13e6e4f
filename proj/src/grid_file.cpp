// Copyright 2026 The wefpe Authors.
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

#include "wefpe/grid_file.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>
#include <system_error>
#include <unistd.h>

namespace wefpe {

namespace {

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
  }
}

template <typename T>
T get_le(const std::uint8_t* p) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(p[i]) << (8 * i);
  return value;
}

}  // namespace

std::vector<std::uint8_t> encode_grid(const EncodingGrid& grid) {
  if (grid.rows() > std::numeric_limits<std::uint32_t>::max() ||
      grid.cols() > std::numeric_limits<std::uint32_t>::max()) {
    throw ArgumentError("encode_grid: dimensions exceed u32");
  }
  std::vector<std::uint8_t> out;
  out.reserve(kGridHeaderBytes + 8 * grid.data().size());
  out.insert(out.end(), kGridMagic.begin(), kGridMagic.end());
  put_le<std::uint16_t>(out, kGridFormatVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(grid.rows()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(grid.cols()));
  for (const double x : grid.data()) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(x));
  return out;
}

EncodingGrid decode_grid(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kGridHeaderBytes) throw FormatError("grid file shorter than its header");
  if (std::memcmp(bytes.data(), kGridMagic.data(), kGridMagic.size()) != 0) {
    throw FormatError("grid file has wrong magic (expected WEFPE1)");
  }
  const auto version = get_le<std::uint16_t>(bytes.data() + 6);
  if (version != kGridFormatVersion) {
    throw FormatError("unsupported grid format version " + std::to_string(version));
  }
  const std::size_t rows = get_le<std::uint32_t>(bytes.data() + 8);
  const std::size_t cols = get_le<std::uint32_t>(bytes.data() + 12);
  if (bytes.size() != kGridHeaderBytes + 8 * rows * cols) {
    throw FormatError("grid file length " + std::to_string(bytes.size()) + " does not match " +
                      std::to_string(rows) + "x" + std::to_string(cols));
  }
  std::vector<double> data(rows * cols);
  const std::uint8_t* p = bytes.data() + kGridHeaderBytes;
  for (std::size_t i = 0; i < data.size(); ++i, p += 8) {
    data[i] = std::bit_cast<double>(get_le<std::uint64_t>(p));
  }
  return EncodingGrid(rows, cols, std::move(data));
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + tmp.string() + " for writing");
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    f.flush();
    if (!f) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw IoError("cannot rename to " + path.string() + ": " + ec.message());
  }
}

void write_file_atomic(const std::filesystem::path& path, std::string_view text) {
  write_file_atomic(path, std::span<const std::uint8_t>(
                              reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

void write_grid_file(const std::filesystem::path& path, const EncodingGrid& grid) {
  write_file_atomic(path, encode_grid(grid));
}

EncodingGrid read_grid_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                        std::istreambuf_iterator<char>());
  if (f.bad()) throw IoError("read failed: " + path.string());
  return decode_grid(bytes);
}

}  // namespace wefpe
