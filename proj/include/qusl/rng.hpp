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
#include <initializer_list>
#include <random>

namespace qusl {

/// Random stream used throughout the library.
using Rng = std::mt19937_64;

namespace detail {
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31U);
}
} // namespace detail

/// Mixes a master seed with a tag path into a stream seed. Distinct tag
/// paths give statistically independent streams, so work items can be
/// evaluated in any order without changing results.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> tags) noexcept {
    std::uint64_t h = detail::splitmix64(master);
    for (auto t : tags) {
        h = detail::splitmix64(h ^ detail::splitmix64(t + 0x632be59bd9b4e019ULL));
    }
    return h;
}

inline Rng derive_stream(std::uint64_t master, std::initializer_list<std::uint64_t> tags) {
    return Rng{derive_seed(master, tags)};
}

/// Stream purpose tags.
enum class StreamTag : std::uint64_t {
    Init = 1,
    Batch = 2,
    Validation = 3,
    Variation = 4,
    Evaluate = 5,
    ValidationEval = 6,
    Pairs = 7,
};

constexpr std::uint64_t tag(StreamTag t) noexcept { return static_cast<std::uint64_t>(t); }

} // namespace qusl
