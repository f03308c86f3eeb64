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
#include "qusl/dataset.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numbers>
#include <random>

#include "qusl/error.hpp"
#include "qusl/rng.hpp"

namespace qusl {

namespace {

void put_le(std::vector<std::uint8_t> &out, std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) {
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
}

std::uint64_t get_le(const std::vector<std::uint8_t> &in, std::size_t off, int bytes) {
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) {
        v |= static_cast<std::uint64_t>(in[off + i]) << (8 * i);
    }
    return v;
}

} // namespace

std::vector<std::uint8_t> encode_dataset(const std::vector<ImagePatch> &patches) {
    std::size_t w = patches.empty() ? 0 : patches.front().width();
    std::size_t h = patches.empty() ? 0 : patches.front().height();
    if (w > 0xFFFF || h > 0xFFFF) {
        throw DimensionError("patch dimensions exceed the cache's u16 fields");
    }
    std::vector<std::uint8_t> out(kDatasetMagic, kDatasetMagic + 8);
    put_le(out, patches.size(), 4);
    put_le(out, w, 2);
    put_le(out, h, 2);
    out.reserve(kDatasetHeaderBytes + patches.size() * kChannels * w * h);
    for (const auto &p : patches) {
        if (p.width() != w || p.height() != h) {
            throw DimensionError("all cached patches must share one shape");
        }
        for (double v : p.flat()) {
            out.push_back(static_cast<std::uint8_t>(std::lround(v)));
        }
    }
    return out;
}

std::vector<ImagePatch> decode_dataset(const std::vector<std::uint8_t> &bytes) {
    if (bytes.size() < kDatasetHeaderBytes) {
        throw FormatError("dataset cache shorter than its 16-byte header");
    }
    if (std::memcmp(bytes.data(), kDatasetMagic, 8) != 0) {
        throw FormatError("bad dataset cache magic");
    }
    const auto count = static_cast<std::size_t>(get_le(bytes, 8, 4));
    const auto w = static_cast<std::size_t>(get_le(bytes, 12, 2));
    const auto h = static_cast<std::size_t>(get_le(bytes, 14, 2));
    const std::size_t per = kChannels * w * h;
    if (count > 0 && per == 0) {
        throw FormatError("dataset cache declares zero-sized patches");
    }
    if (bytes.size() != kDatasetHeaderBytes + count * per) {
        throw FormatError("dataset cache size mismatch: expected " +
                          std::to_string(kDatasetHeaderBytes + count * per) + " bytes, found " +
                          std::to_string(bytes.size()));
    }
    std::vector<ImagePatch> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto *first = bytes.data() + kDatasetHeaderBytes + i * per;
        out.emplace_back(w, h, std::vector<double>(first, first + per));
    }
    return out;
}

void write_dataset_cache(const std::filesystem::path &path, const std::vector<ImagePatch> &patches) {
    const auto bytes = encode_dataset(patches);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("write failure on " + path.string());
    }
}

std::vector<ImagePatch> read_dataset_cache(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_dataset(bytes);
}

std::vector<ImagePatch> make_synthetic_dataset(std::size_t count, std::size_t side, std::uint64_t seed) {
    using Color = std::array<double, 3>;
    struct Palette {
        Color low, high, blob;
    };
    // Landscape-like themes: sky/grass, dusk, sea, desert, forest, snow.
    static const std::array<Palette, 6> palettes{{
        {{90, 150, 230}, {70, 160, 60}, {250, 240, 200}},
        {{240, 120, 60}, {60, 30, 90}, {255, 220, 120}},
        {{20, 60, 140}, {100, 200, 220}, {240, 240, 250}},
        {{230, 200, 140}, {180, 110, 50}, {120, 180, 240}},
        {{20, 80, 30}, {110, 150, 60}, {70, 50, 30}},
        {{235, 240, 250}, {150, 160, 180}, {60, 70, 90}},
    }};
    Rng rng(derive_seed(seed, {0x5157ULL}));
    std::uniform_int_distribution<std::size_t> pick(0, palettes.size() - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> jitter(0.0, 18.0);
    std::normal_distribution<double> grain(0.0, 6.0);

    std::vector<ImagePatch> out;
    out.reserve(count);
    const double s = static_cast<double>(side);
    for (std::size_t n = 0; n < count; ++n) {
        const Palette &pal = palettes[pick(rng)];
        Color low{};
        Color high{};
        Color blob{};
        for (std::size_t c = 0; c < 3; ++c) {
            low[c] = pal.low[c] + jitter(rng);
            high[c] = pal.high[c] + jitter(rng);
            blob[c] = pal.blob[c] + jitter(rng);
        }
        const double angle = 2.0 * std::numbers::pi * unit(rng);
        const double dx = std::cos(angle);
        const double dy = std::sin(angle);
        const double cx = s * unit(rng);
        const double cy = s * unit(rng);
        const double radius = s * (0.1 + 0.25 * unit(rng));
        ImagePatch patch(side, side);
        for (std::size_t r = 0; r < side; ++r) {
            for (std::size_t col = 0; col < side; ++col) {
                const double u = (static_cast<double>(col) / s - 0.5) * dx + (static_cast<double>(r) / s - 0.5) * dy;
                const double t = std::clamp(u + 0.5, 0.0, 1.0);
                const double ddx = static_cast<double>(col) - cx;
                const double ddy = static_cast<double>(r) - cy;
                const bool in_blob = ddx * ddx + ddy * ddy <= radius * radius;
                for (std::size_t c = 0; c < 3; ++c) {
                    const double base = in_blob ? blob[c] : (1.0 - t) * low[c] + t * high[c];
                    patch.set(c, r, col, base + grain(rng));
                }
            }
        }
        out.push_back(std::move(patch));
    }
    return out;
}

} // namespace qusl
