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

#ifndef BLINDIA_CHANNEL_HPP
#define BLINDIA_CHANNEL_HPP

#include <vector>

#include "blindia/beamform.hpp"
#include "blindia/matkernel.hpp"
#include "blindia/pattern.hpp"
#include "blindia/rng.hpp"

namespace blindia {

// One i.i.d. Rayleigh draw of every receiver's channel. A receiver is a
// (user, group member) pair; with group_size == 1 the members coincide with
// the users. Each receiver holds one 1 x M row per antenna mode; the rows
// stay fixed for the whole supersymbol and are never revealed to the
// transmitter.
struct ChannelRealization {
    int tx_modes = 0;
    int users = 0;
    int group_size = 0;
    int resample_count = 0; // draws rejected by the full-rank guard

    // [(user-1)*group_size + member-1][mode-1]
    std::vector<std::vector<Eigen::RowVectorXcd>> rows;

    const Eigen::RowVectorXcd &row(int user, int member, int mode) const {
        return rows[static_cast<std::size_t>((user - 1) * group_size + member - 1)]
                   [static_cast<std::size_t>(mode - 1)];
    }

    // M x M matrix with the mode-m row in row m.
    CMatrix stacked(int user, int member) const;
};

// Rayleigh-fading draw; any receiver whose stacked matrix is numerically
// rank-deficient is redrawn (and counted), so downstream code may assume
// invertibility.
ChannelRealization sample_channels(int tx_modes, int users, int group_size, Rng &rng,
                                   double rel_tol = kDefaultRelTol);

// The supersymbol-level channel one receiver sees from each transmit user's
// beamformed streams: y = sqrt(p) * sum_j per_tx[j-1] * u_j + z. Row t of
// per_tx[j-1] carries the receiver's active-mode row in the columns of the
// user-j block live at instant t and is zero elsewhere.
struct EffectiveChannel {
    int rx_user = 0;
    int rx_member = 0;
    std::vector<CMatrix> per_tx; // K matrices, each L x (M*B)
};

EffectiveChannel effective_channel(const ChannelRealization &ch, const SwitchingPattern &p,
                                   const BeamformingSchedule &s, int rx_user, int rx_member = 1);

// One block of the above: the L x (M*B) matrix through which rx sees tx_user.
CMatrix effective_channel_single(const ChannelRealization &ch, const SwitchingPattern &p,
                                 const BeamformingSchedule &s, int rx_user, int rx_member,
                                 int tx_user);

struct ReceivedBlock {
    int rx_user = 0;
    int rx_member = 0;
    CVector samples; // length L
};

// Runs the whole supersymbol through the physical model: per-instant transmit
// vector from the beamforming slots, per-receiver inner product with the
// active-mode row, optional unit-variance complex noise. streams holds the
// K*M*B stream symbols, user-major.
std::vector<ReceivedBlock> simulate_transmission(const ChannelRealization &ch,
                                                 const SwitchingPattern &p,
                                                 const BeamformingSchedule &s,
                                                 const PowerAllocation &pa,
                                                 const CVector &streams, Rng &rng,
                                                 bool add_noise = true);

} // namespace blindia

#endif
