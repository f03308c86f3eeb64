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
/**
 * @file
 * RGB image patches, dataset loaders and the classical distance metrics
 * used as the similarity reference.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace qusl {

constexpr std::size_t kChannels = 3;

/**
 * @brief RGB pixel grid with real intensities in [0, 255].
 *
 * Storage is channel-major: channel, then row, then column. This is the
 * order used by flatten(), the CIFAR-10 format and the dataset cache.
 */
class ImagePatch {
  public:
    ImagePatch() = default;
    /// Zero-filled patch. Throws ArgumentError for a zero dimension.
    ImagePatch(std::size_t width, std::size_t height);
    /// Takes ownership of channel-major data; validates size and range.
    ImagePatch(std::size_t width, std::size_t height, std::vector<double> data);

    [[nodiscard]] std::size_t width() const noexcept { return width_; }
    [[nodiscard]] std::size_t height() const noexcept { return height_; }
    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }

    [[nodiscard]] double at(std::size_t c, std::size_t row, std::size_t col) const {
        return data_[index(c, row, col)];
    }
    /// Writes are clamped to [0, 255].
    void set(std::size_t c, std::size_t row, std::size_t col, double v);

    /// Channel-major flat view.
    [[nodiscard]] std::span<const double> flat() const noexcept { return data_; }

    [[nodiscard]] bool same_shape(const ImagePatch &o) const noexcept {
        return width_ == o.width_ && height_ == o.height_;
    }

    friend bool operator==(const ImagePatch &, const ImagePatch &) = default;

  private:
    [[nodiscard]] std::size_t index(std::size_t c, std::size_t row, std::size_t col) const noexcept {
        return (c * height_ + row) * width_ + col;
    }

    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<double> data_;
};

/// Per-channel normalized color histogram; values are laid out R bins, G bins, B bins.
struct ColorHistogram {
    std::size_t bins_per_channel = 0;
    std::vector<double> values;
};

constexpr std::size_t kCifarRecordBytes = 3073;
constexpr std::size_t kCifarSide = 32;
constexpr std::size_t kDefaultHistogramBins = 16;

/// Reads CIFAR-10 binary batches. Labels are discarded.
std::vector<ImagePatch> load_cifar_binary(const std::filesystem::path &path);
/// Decodes one 3073-byte record (label byte first).
ImagePatch decode_cifar_record(std::span<const std::uint8_t> record);
/// Inverse of decode_cifar_record for integral patches, with the given label byte.
std::vector<std::uint8_t> encode_cifar_record(const ImagePatch &patch, std::uint8_t label = 0);

/// Decodes a binary PPM (P6, maxval 255).
ImagePatch read_ppm(const std::filesystem::path &path);
void write_ppm(const std::filesystem::path &path, const ImagePatch &patch);
/// Loads every *.ppm file in lexicographic order, each resized to the target shape.
std::vector<ImagePatch> load_ppm_dir(const std::filesystem::path &dir, std::size_t patch_w,
                                     std::size_t patch_h);

/// Bilinear resize (corner-aligned sampling), clamped to [0, 255].
ImagePatch resize(const ImagePatch &patch, std::size_t new_w, std::size_t new_h);

/// Bin index for intensity v is floor(v * bins / 256).
ColorHistogram histogram(const ImagePatch &patch, std::size_t bins_per_channel = kDefaultHistogramBins);

double euclidean_distance_hist(const ColorHistogram &h1, const ColorHistogram &h2);
/// Square root of the summed squared channel differences over every pixel.
double euclidean_distance_pixels(const ImagePatch &p1, const ImagePatch &p2);

/// Reference metric used when correlating against the quantum score.
enum class DistanceMode { Histogram, Pixel };

double reference_distance(const ImagePatch &a, const ImagePatch &b, DistanceMode mode,
                          std::size_t bins_per_channel = kDefaultHistogramBins);

} // namespace qusl
