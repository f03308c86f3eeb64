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
#include "qusl/image.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

#include "qusl/error.hpp"

namespace qusl {

namespace {

double clamp_intensity(double v) { return std::clamp(v, 0.0, 255.0); }

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("read failure on " + path.string());
    }
    return bytes;
}

} // namespace

ImagePatch::ImagePatch(std::size_t width, std::size_t height)
    : ImagePatch(width, height, std::vector<double>(kChannels * width * height, 0.0)) {}

ImagePatch::ImagePatch(std::size_t width, std::size_t height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
    if (width == 0 || height == 0) {
        throw ArgumentError("image dimensions must be positive");
    }
    if (data_.size() != kChannels * width * height) {
        throw DimensionError("pixel buffer size " + std::to_string(data_.size()) + " does not match " +
                             std::to_string(width) + "x" + std::to_string(height) + "x3");
    }
    for (double v : data_) {
        if (!(v >= 0.0 && v <= 255.0)) {
            throw ArgumentError("pixel intensity outside [0,255]");
        }
    }
}

void ImagePatch::set(std::size_t c, std::size_t row, std::size_t col, double v) {
    data_[index(c, row, col)] = clamp_intensity(v);
}

ImagePatch decode_cifar_record(std::span<const std::uint8_t> record) {
    if (record.size() != kCifarRecordBytes) {
        throw FormatError("CIFAR record must be 3073 bytes");
    }
    std::vector<double> data(record.size() - 1);
    std::transform(record.begin() + 1, record.end(), data.begin(),
                   [](std::uint8_t b) { return static_cast<double>(b); });
    return {kCifarSide, kCifarSide, std::move(data)};
}

std::vector<std::uint8_t> encode_cifar_record(const ImagePatch &patch, std::uint8_t label) {
    if (patch.width() != kCifarSide || patch.height() != kCifarSide) {
        throw DimensionError("CIFAR records are 32x32x3");
    }
    std::vector<std::uint8_t> out;
    out.reserve(kCifarRecordBytes);
    out.push_back(label);
    for (double v : patch.flat()) {
        out.push_back(static_cast<std::uint8_t>(std::lround(v)));
    }
    return out;
}

std::vector<ImagePatch> load_cifar_binary(const std::filesystem::path &path) {
    const auto bytes = read_file_bytes(path);
    const std::size_t whole = bytes.size() / kCifarRecordBytes;
    if (bytes.size() % kCifarRecordBytes != 0) {
        throw FormatError(path.string() + ": truncated record at byte offset " +
                          std::to_string(whole * kCifarRecordBytes));
    }
    std::vector<ImagePatch> out;
    out.reserve(whole);
    const std::span<const std::uint8_t> all(bytes);
    for (std::size_t r = 0; r < whole; ++r) {
        out.push_back(decode_cifar_record(all.subspan(r * kCifarRecordBytes, kCifarRecordBytes)));
    }
    return out;
}

ImagePatch read_ppm(const std::filesystem::path &path) {
    const auto bytes = read_file_bytes(path);
    std::size_t pos = 0;
    // Header tokens are separated by whitespace; '#' starts a comment.
    auto next_token = [&]() -> std::string {
        while (pos < bytes.size()) {
            if (bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') {
                    ++pos;
                }
            } else if (std::isspace(bytes[pos]) != 0) {
                ++pos;
            } else {
                break;
            }
        }
        std::string tok;
        while (pos < bytes.size() && std::isspace(bytes[pos]) == 0) {
            tok.push_back(static_cast<char>(bytes[pos++]));
        }
        return tok;
    };
    const std::string name = path.filename().string();
    if (next_token() != "P6") {
        throw FormatError(name + ": unsupported format (only binary P6 PPM)");
    }
    std::size_t w = 0;
    std::size_t h = 0;
    std::size_t maxval = 0;
    try {
        w = std::stoul(next_token());
        h = std::stoul(next_token());
        maxval = std::stoul(next_token());
    } catch (const std::logic_error &) {
        throw FormatError(name + ": malformed PPM header");
    }
    if (maxval != 255) {
        throw FormatError(name + ": unsupported format (maxval must be 255)");
    }
    if (w == 0 || h == 0) {
        throw FormatError(name + ": empty image");
    }
    ++pos; // single whitespace byte before the raster
    const std::size_t n = w * h;
    if (bytes.size() < pos + 3 * n) {
        throw FormatError(name + ": truncated raster at byte offset " + std::to_string(bytes.size()));
    }
    ImagePatch patch(w, h);
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t c = 0; c < kChannels; ++c) {
            patch.set(c, p / w, p % w, bytes[pos + 3 * p + c]);
        }
    }
    return patch;
}

void write_ppm(const std::filesystem::path &path, const ImagePatch &patch) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << "P6\n" << patch.width() << " " << patch.height() << "\n255\n";
    for (std::size_t r = 0; r < patch.height(); ++r) {
        for (std::size_t col = 0; col < patch.width(); ++col) {
            for (std::size_t c = 0; c < kChannels; ++c) {
                out.put(static_cast<char>(std::lround(patch.at(c, r, col))));
            }
        }
    }
    if (!out) {
        throw IoError("write failure on " + path.string());
    }
}

std::vector<ImagePatch> load_ppm_dir(const std::filesystem::path &dir, std::size_t patch_w,
                                     std::size_t patch_h) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) {
        throw IoError("not a directory: " + dir.string());
    }
    std::vector<std::filesystem::path> files;
    for (const auto &entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".ppm") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<ImagePatch> out;
    out.reserve(files.size());
    for (const auto &f : files) {
        out.push_back(resize(read_ppm(f), patch_w, patch_h));
    }
    return out;
}

ImagePatch resize(const ImagePatch &patch, std::size_t new_w, std::size_t new_h) {
    if (new_w == 0 || new_h == 0) {
        throw ArgumentError("resize target must be at least 1x1");
    }
    if (patch.width() == new_w && patch.height() == new_h) {
        return patch;
    }
    // Output pixel k samples source coordinate k * (in - 1) / (out - 1).
    auto source_coord = [](std::size_t k, std::size_t in, std::size_t out) {
        if (out == 1) {
            return 0.5 * static_cast<double>(in - 1);
        }
        return static_cast<double>(k) * static_cast<double>(in - 1) / static_cast<double>(out - 1);
    };
    ImagePatch result(new_w, new_h);
    for (std::size_t r = 0; r < new_h; ++r) {
        const double y = source_coord(r, patch.height(), new_h);
        const auto y0 = static_cast<std::size_t>(std::floor(y));
        const std::size_t y1 = std::min(y0 + 1, patch.height() - 1);
        const double fy = y - static_cast<double>(y0);
        for (std::size_t col = 0; col < new_w; ++col) {
            const double x = source_coord(col, patch.width(), new_w);
            const auto x0 = static_cast<std::size_t>(std::floor(x));
            const std::size_t x1 = std::min(x0 + 1, patch.width() - 1);
            const double fx = x - static_cast<double>(x0);
            for (std::size_t c = 0; c < kChannels; ++c) {
                const double top = (1.0 - fx) * patch.at(c, y0, x0) + fx * patch.at(c, y0, x1);
                const double bottom = (1.0 - fx) * patch.at(c, y1, x0) + fx * patch.at(c, y1, x1);
                result.set(c, r, col, (1.0 - fy) * top + fy * bottom);
            }
        }
    }
    return result;
}

ColorHistogram histogram(const ImagePatch &patch, std::size_t bins_per_channel) {
    if (bins_per_channel == 0) {
        throw ArgumentError("bins_per_channel must be >= 1");
    }
    ColorHistogram h{bins_per_channel, std::vector<double>(kChannels * bins_per_channel, 0.0)};
    const std::size_t per_channel = patch.width() * patch.height();
    const auto flat = patch.flat();
    const double scale = static_cast<double>(bins_per_channel) / 256.0;
    for (std::size_t c = 0; c < kChannels; ++c) {
        for (std::size_t p = 0; p < per_channel; ++p) {
            auto bin = static_cast<std::size_t>(std::floor(flat[c * per_channel + p] * scale));
            bin = std::min(bin, bins_per_channel - 1);
            h.values[c * bins_per_channel + bin] += 1.0;
        }
    }
    const double inv = 1.0 / static_cast<double>(per_channel);
    for (double &v : h.values) {
        v *= inv;
    }
    return h;
}

double euclidean_distance_hist(const ColorHistogram &h1, const ColorHistogram &h2) {
    if (h1.bins_per_channel != h2.bins_per_channel || h1.values.size() != h2.values.size()) {
        throw DimensionError("histograms have different bin counts");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < h1.values.size(); ++i) {
        const double d = h1.values[i] - h2.values[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

double euclidean_distance_pixels(const ImagePatch &p1, const ImagePatch &p2) {
    if (!p1.same_shape(p2)) {
        throw DimensionError("patches have different shapes");
    }
    const auto a = p1.flat();
    const auto b = p2.flat();
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

double reference_distance(const ImagePatch &a, const ImagePatch &b, DistanceMode mode,
                          std::size_t bins_per_channel) {
    if (mode == DistanceMode::Pixel) {
        return euclidean_distance_pixels(a, b);
    }
    return euclidean_distance_hist(histogram(a, bins_per_channel), histogram(b, bins_per_channel));
}

} // namespace qusl
