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

#ifndef BLINDIA_BEAMFORM_HPP
#define BLINDIA_BEAMFORM_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "blindia/pattern.hpp"

namespace blindia {

// Per-user space-time beamforming over one supersymbol. User k sends M*B
// streams; the streams of alignment block b occupy columns b*M..b*M+M-1 and
// are repeated, through an M x M identity, at each of the block's M symbol
// instants. The full matrix is (L*M) x (M*B) and binary, so it is stored as
// the per-block instant lists and expanded on demand.
struct BeamformingSchedule {
    int tx_modes = 0;
    int users = 0;
    long length = 0;          // supersymbol length L
    long blocks_per_user = 0; // B

    // [user-1][ordinal-1] = the block's M instants, owner-mode order.
    std::vector<std::vector<std::vector<long>>> slots;

    long rows() const { return length * tx_modes; }
    long cols() const { return blocks_per_user * tx_modes; }

    // 0/1 entry of user k's matrix; row = (t-1)*M + antenna, col = b*M + stream.
    int entry(int user, long row, long col) const;

    Eigen::MatrixXi dense(int user) const;
};

BeamformingSchedule build_beamforming(const SwitchingPattern &p);

struct PowerAllocation {
    double total_power = 0.0;      // P, per-symbol budget
    double per_stream_power = 0.0; // p, per complex stream symbol
};

// p = (M + K - 1) P / (M^2 K); with unit-variance streams the supersymbol
// energy K M^2 B p then equals L P exactly.
PowerAllocation stream_power(int tx_modes, int users, double total_power);

// 0/1 rows, one symbol instant (M rows) per stanza.
std::string format_beamforming(const BeamformingSchedule &s, int user);

} // namespace blindia

#endif
