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

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "wefpe/encoding.hpp"
#include "wefpe/errors.hpp"

// Binary grid container:
//   offset 0   6 bytes  magic "WEFPE1"
//   offset 6   u16 LE   format version (1)
//   offset 8   u32 LE   rows
//   offset 12  u32 LE   cols
//   offset 16  rows·cols IEEE-754 binary64 LE, row-major
namespace wefpe {

inline constexpr std::array<char, 6> kGridMagic{'W', 'E', 'F', 'P', 'E', '1'};
inline constexpr std::uint16_t kGridFormatVersion = 1;
inline constexpr std::size_t kGridHeaderBytes = 16;

// Malformed grid bytes (bad magic, unsupported version, truncated payload).
class FormatError : public IoError {
 public:
  using IoError::IoError;
};

std::vector<std::uint8_t> encode_grid(const EncodingGrid& grid);
EncodingGrid decode_grid(std::span<const std::uint8_t> bytes);

// Writes via a temporary file in the same directory and a rename.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_file_atomic(const std::filesystem::path& path, std::string_view text);

void write_grid_file(const std::filesystem::path& path, const EncodingGrid& grid);
EncodingGrid read_grid_file(const std::filesystem::path& path);

}  // namespace wefpe
