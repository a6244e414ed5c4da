// SPDX-License-Identifier: Apache-2.0
//
// blindia - blind interference alignment for the reconfigurable-antenna MISO downlink
// Copyright (C) 2026 the blindia authors
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

#ifndef BLINDIA_RNG_HPP
#define BLINDIA_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace blindia {

// Deterministic random stream. Uniform and Gaussian variates are generated
// explicitly (bit-shift uniform, Box-Muller) instead of through
// std::*_distribution, whose output is implementation-defined; the same seed
// therefore reproduces the same draws on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Substream for trial `index` under `master`. Streams for different
    // indices are statistically independent and order-independent: trial 17
    // sees the same draws whether or not trials 0..16 ran first.
    static Rng substream(std::uint64_t master, std::uint64_t index);

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Standard normal N(0, 1).
    double gaussian();

    // Circularly symmetric complex normal, unit variance:
    // real and imaginary parts are independent N(0, 1/2).
    std::complex<double> complex_gaussian();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// SplitMix64 finalizer; used to decorrelate derived seeds.
std::uint64_t mix64(std::uint64_t x);

} // namespace blindia

#endif
