// Copyright 2026 The QUSL Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "qusl/image.hpp"

namespace qusl {

/**
 * Dataset cache layout (little endian):
 *
 *     offset 0   8 bytes  magic "QUSLDS01"
 *     offset 8   u32      patch count
 *     offset 12  u16      width
 *     offset 14  u16      height
 *     offset 16  count * (3 * width * height) bytes, channel-major patches
 *
 * Intensities are rounded to the nearest integer when written.
 */
constexpr char kDatasetMagic[] = "QUSLDS01";
constexpr std::size_t kDatasetHeaderBytes = 16;

std::vector<std::uint8_t> encode_dataset(const std::vector<ImagePatch> &patches);
std::vector<ImagePatch> decode_dataset(const std::vector<std::uint8_t> &bytes);

void write_dataset_cache(const std::filesystem::path &path, const std::vector<ImagePatch> &patches);
std::vector<ImagePatch> read_dataset_cache(const std::filesystem::path &path);

/**
 * @brief Synthetic "scene" dataset for desk-scale experiments.
 *
 * Each patch is a smooth two-color gradient with a blob, drawn from a
 * handful of palettes, plus mild pixel noise. Patches from the same
 * palette are close in color-histogram space, so the reference distance
 * has real structure to learn.
 */
std::vector<ImagePatch> make_synthetic_dataset(std::size_t count, std::size_t side, std::uint64_t seed);

} // namespace qusl
