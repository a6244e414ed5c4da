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

#include "blindia/beamform.hpp"

#include <algorithm>
#include <sstream>

#include "blindia/errors.hpp"

namespace blindia {

int BeamformingSchedule::entry(int user, long row, long col) const {
    const int M = tx_modes;
    const long t = row / M + 1;
    const int antenna = static_cast<int>(row % M);
    const long b = col / M;
    const int stream = static_cast<int>(col % M);
    if (antenna != stream)
        return 0;
    const auto &ts = slots[static_cast<std::size_t>(user - 1)][static_cast<std::size_t>(b)];
    return std::find(ts.begin(), ts.end(), t) != ts.end() ? 1 : 0;
}

Eigen::MatrixXi BeamformingSchedule::dense(int user) const {
    Eigen::MatrixXi W = Eigen::MatrixXi::Zero(rows(), cols());
    const auto &ublocks = slots[static_cast<std::size_t>(user - 1)];
    for (long b = 0; b < blocks_per_user; ++b)
        for (long t : ublocks[static_cast<std::size_t>(b)])
            for (int c = 0; c < tx_modes; ++c)
                W((t - 1) * tx_modes + c, b * tx_modes + c) = 1;
    return W;
}

BeamformingSchedule build_beamforming(const SwitchingPattern &p) {
    const auto violations = verify_pattern(p);
    if (!violations.empty())
        throw InvalidPattern("build_beamforming: pattern invalid: " + violations.front().detail);

    BeamformingSchedule s;
    s.tx_modes = p.tx_modes;
    s.users = p.users;
    s.length = p.length;
    s.blocks_per_user = p.blocks_per_user;
    s.slots.resize(static_cast<std::size_t>(p.users));
    for (int k = 1; k <= p.users; ++k) {
        auto &ublocks = s.slots[static_cast<std::size_t>(k - 1)];
        ublocks.reserve(static_cast<std::size_t>(p.blocks_per_user));
        for (const AlignmentBlock &blk : p.blocks[static_cast<std::size_t>(k - 1)]) {
            std::vector<long> ts = blk.block1_times;
            ts.push_back(blk.block2_time);
            ublocks.push_back(std::move(ts));
        }
    }
    return s;
}

PowerAllocation stream_power(int tx_modes, int users, double total_power) {
    if (tx_modes < 2)
        throw UnsupportedConfiguration("at least two antenna modes are required");
    if (users < 1)
        throw UnsupportedConfiguration("at least one user is required");
    if (!(total_power >= 0.0))
        throw InvalidArgument("total power must be nonnegative");
    PowerAllocation a;
    a.total_power = total_power;
    a.per_stream_power = static_cast<double>(tx_modes + users - 1) * total_power /
                         (static_cast<double>(tx_modes) * tx_modes * users);
    return a;
}

std::string format_beamforming(const BeamformingSchedule &s, int user) {
    std::ostringstream os;
    const Eigen::MatrixXi W = s.dense(user);
    os << "user " << user << " beamforming " << W.rows() << "x" << W.cols() << '\n';
    for (long t = 0; t < s.length; ++t) {
        for (int r = 0; r < s.tx_modes; ++r) {
            for (long c = 0; c < W.cols(); ++c)
                os << (c ? " " : "") << W(t * s.tx_modes + r, c);
            os << '\n';
        }
        if (t + 1 < s.length)
            os << '\n';
    }
    return os.str();
}

} // namespace blindia
