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
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "qusl/error.hpp"
#include "qusl/rng.hpp"
#include "qusl/triplet.hpp"
#include "support/oracles.hpp"

namespace {

using namespace qusl;

TEST(Perturb, ZeroSigmaIsIdentity) {
    std::mt19937_64 gen(1);
    const auto p = oracle::random_patch(6, 6, gen);
    Rng rng(3);
    EXPECT_EQ(perturb(p, {0.0, 0}, rng), p);
}

TEST(Perturb, NoiseMomentsOnConstantImage) {
    // 182 x 183 x 3 = 99918 pixels, close to 10^5.
    const ImagePatch flat(182, 183, std::vector<double>(3 * 182 * 183, 128.0));
    Rng rng(2024);
    const auto out = perturb(flat, {5.0, 0}, rng);
    double sum = 0.0;
    double sq = 0.0;
    const auto n = static_cast<double>(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double d = out.flat()[i] - 128.0;
        sum += d;
        sq += d * d;
    }
    const double mean = sum / n;
    EXPECT_NEAR(mean, 0.0, 0.1);
    EXPECT_NEAR(std::sqrt(sq / n - mean * mean), 5.0, 0.1);
}

TEST(Perturb, ClampsAtZero) {
    const ImagePatch black(20, 20);
    Rng rng(5);
    const auto out = perturb(black, {5.0, 0}, rng);
    for (const double v : out.flat()) {
        EXPECT_GE(v, 0.0);
    }
    EXPECT_THROW((void)perturb(black, {-1.0, 0}, rng), ArgumentError);
}

TEST(BuildTriplet, ForcedNegativeInPairDataset) {
    std::mt19937_64 gen(7);
    const std::vector<ImagePatch> data{oracle::random_patch(3, 3, gen), oracle::random_patch(3, 3, gen)};
    Rng rng(1);
    for (int i = 0; i < 50; ++i) {
        const auto t = build_triplet(data, 0, {0.0, 0}, rng);
        EXPECT_EQ(t.anchor, data[0]);
        EXPECT_EQ(t.positive, data[0]);
        EXPECT_EQ(t.negative, data[1]);
    }
}

TEST(BuildTriplet, SingletonDatasetIsAnError) {
    const std::vector<ImagePatch> data{ImagePatch(2, 2)};
    Rng rng(1);
    EXPECT_THROW((void)build_triplet(data, 0, {}, rng), ArgumentError);
    EXPECT_THROW((void)build_triplet(data, 3, {}, rng), IndexError);
}

TEST(BuildTriplet, NegativeIsUniformOverOtherIndices) {
    std::vector<ImagePatch> data;
    for (int i = 0; i < 11; ++i) {
        data.emplace_back(1, 1, std::vector<double>(3, static_cast<double>(i)));
    }
    Rng rng(99);
    std::map<int, int> counts;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        const auto t = build_triplet(data, 4, {0.0, 0}, rng);
        ++counts[static_cast<int>(t.negative.flat()[0])];
    }
    EXPECT_EQ(counts.count(4), 0U);
    double chi2 = 0.0;
    for (int k = 0; k < 11; ++k) {
        if (k == 4) {
            continue;
        }
        const double freq = counts[k] / static_cast<double>(draws);
        EXPECT_NEAR(freq, 0.1, 0.02) << "index " << k;
        chi2 += std::pow(counts[k] - draws / 10.0, 2) / (draws / 10.0);
    }
    // 9 degrees of freedom; the 0.999 quantile is about 27.9.
    EXPECT_LT(chi2, 27.9);
}

TEST(BuildTriplet, PositiveStaysCloseToAnchor) {
    std::mt19937_64 gen(3);
    const std::vector<ImagePatch> data{oracle::random_patch(20, 20, gen), oracle::random_patch(20, 20, gen)};
    Rng rng(12);
    const auto t = build_triplet(data, 1, {5.0, 0}, rng);
    double mad = 0.0;
    for (std::size_t i = 0; i < t.anchor.size(); ++i) {
        mad += std::abs(t.anchor.flat()[i] - t.positive.flat()[i]);
    }
    EXPECT_LE(mad / static_cast<double>(t.anchor.size()), 4.0 * 5.0);
}

TEST(Interweave, Examples) {
    const ImagePatch a(1, 1, {1.0, 2.0, 3.0});
    const ImagePatch b(1, 1, {10.0, 20.0, 30.0});
    EXPECT_EQ(interweave(a, b), (std::vector<double>{1.0, 10.0, 2.0, 20.0, 3.0, 30.0}));
    EXPECT_EQ(interweave(ImagePatch(2, 2), ImagePatch(2, 2)), std::vector<double>(24, 0.0));
    EXPECT_THROW((void)interweave(a, ImagePatch(2, 1)), DimensionError);
}

TEST(Interweave, EvenAndOddProjectionsRecoverInputs) {
    std::mt19937_64 gen(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto x = oracle::random_patch(5, 5, gen);
        const auto y = oracle::random_patch(5, 5, gen);
        const auto v = interweave(x, y);
        ASSERT_EQ(v.size(), 150U);
        for (std::size_t k = 0; k < x.size(); ++k) {
            EXPECT_EQ(v[2 * k], x.flat()[k]);
            EXPECT_EQ(v[2 * k + 1], y.flat()[k]);
        }
    }
}

TEST(Embed, Examples) {
    const std::vector<double> raw{3.0, 4.0};
    const auto e = embed(raw, 1);
    EXPECT_DOUBLE_EQ(e.amplitudes[0], 0.6);
    EXPECT_DOUBLE_EQ(e.amplitudes[1], 0.8);
    const std::vector<double> one{1.0, 0.0, 0.0};
    const auto f = embed(one, 2);
    EXPECT_EQ(f.amplitudes, (std::vector<double>{1.0, 0.0, 0.0, 0.0}));
    EXPECT_EQ(f.payload_len, 3U);
}

TEST(Embed, ErrorsOnZeroAndOverflow) {
    const std::vector<double> zero(4, 0.0);
    EXPECT_THROW((void)embed(zero, 2), NormalizationError);
    const std::vector<double> big(5, 1.0);
    EXPECT_THROW((void)embed(big, 2), CapacityError);
}

TEST(Embed, LargeRandomPayloadIsUnitNormAndZeroPadded) {
    std::mt19937_64 gen(44);
    std::uniform_real_distribution<double> u(0.0, 255.0);
    std::vector<double> raw(15000);
    for (auto &v : raw) {
        v = u(gen);
    }
    const auto e = embed(raw, 14);
    ASSERT_EQ(e.amplitudes.size(), 16384U);
    const double sq = std::accumulate(e.amplitudes.begin(), e.amplitudes.end(), 0.0,
                                      [](double acc, double a) { return acc + a * a; });
    EXPECT_NEAR(sq, 1.0, 1e-12);
    for (std::size_t i = 15000; i < 16384; ++i) {
        ASSERT_EQ(e.amplitudes[i], 0.0);
    }
}

TEST(QubitBudget, Examples) {
    EXPECT_EQ(max_square_side(14), 52U);
    std::mt19937_64 gen(1);
    const auto small = oracle::random_patch(32, 32, gen);
    EXPECT_EQ(fit_to_qubit_budget(small, 14), small);
    const auto fifty = oracle::random_patch(50, 50, gen);
    EXPECT_EQ(fit_to_qubit_budget(fifty, 14), fifty);
    const auto landscape = oracle::random_patch(80, 80, gen);
    const auto fitted = fit_to_qubit_budget(landscape, 14);
    EXPECT_EQ(fitted.width(), 52U);
    EXPECT_EQ(fitted.height(), 52U);
}

TEST(QubitBudget, MaxSideMatchesIntegerSearch) {
    for (std::size_t q = 2; q <= 20; ++q) {
        std::size_t m = 0;
        while (6 * (m + 1) * (m + 1) <= (std::size_t{1} << q)) {
            ++m;
        }
        EXPECT_EQ(max_square_side(q), m) << "q = " << q;
    }
}

} // namespace
