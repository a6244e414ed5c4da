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

#ifndef BLINDIA_CONFIG_HPP
#define BLINDIA_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "blindia/pattern.hpp"

namespace blindia {

struct SystemConfig {
    int tx_modes = 2;   // M, antenna modes at the transmitter
    int users = 2;      // K
    int group_size = 1; // J, receivers fed the same streams
    std::vector<double> snr_db = {10.0};
    long trials = 1000;
    std::uint64_t seed = 1;
    double rel_tol = 1e-8;
    long length_cap = kDefaultSupersymbolCap;
    bool with_tdma = false; // append a time-sharing reference column
};

// Throws UnsupportedConfiguration / InvalidArgument on out-of-range fields,
// including a supersymbol length over the cap.
void validate(const SystemConfig &cfg);

// Accepts "40,50,60" or "start:step:stop" (inclusive stop, positive step).
std::vector<double> parse_snr_grid(const std::string &text);

} // namespace blindia

#endif
