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

#include "blindia/channel.hpp"

#include "blindia/errors.hpp"

namespace blindia {

CMatrix ChannelRealization::stacked(int user, int member) const {
    CMatrix H(tx_modes, tx_modes);
    for (int m = 1; m <= tx_modes; ++m)
        H.row(m - 1) = row(user, member, m);
    return H;
}

ChannelRealization sample_channels(int tx_modes, int users, int group_size, Rng &rng,
                                   double rel_tol) {
    if (tx_modes < 2)
        throw UnsupportedConfiguration("at least two antenna modes are required");
    if (users < 1 || group_size < 1)
        throw UnsupportedConfiguration("user count and group size must be positive");

    ChannelRealization ch;
    ch.tx_modes = tx_modes;
    ch.users = users;
    ch.group_size = group_size;
    ch.rows.resize(static_cast<std::size_t>(users) * static_cast<std::size_t>(group_size));

    for (auto &mode_rows : ch.rows) {
        for (;;) {
            CMatrix H = sample_gaussian_matrix(tx_modes, tx_modes, rng);
            if (numeric_rank(H, rel_tol).rank == tx_modes) {
                mode_rows.clear();
                mode_rows.reserve(static_cast<std::size_t>(tx_modes));
                for (int m = 0; m < tx_modes; ++m)
                    mode_rows.emplace_back(H.row(m));
                break;
            }
            ++ch.resample_count;
        }
    }
    return ch;
}

CMatrix effective_channel_single(const ChannelRealization &ch, const SwitchingPattern &p,
                                 const BeamformingSchedule &s, int rx_user, int rx_member,
                                 int tx_user) {
    if (rx_user < 1 || rx_user > p.users || rx_member < 1 || rx_member > ch.group_size)
        throw InvalidArgument("receiver index out of range");
    if (tx_user < 1 || tx_user > p.users)
        throw InvalidArgument("transmit user out of range");
    if (ch.tx_modes != p.tx_modes || ch.users != p.users)
        throw InvalidArgument("channel and pattern dimensions disagree");

    const int M = p.tx_modes;
    CMatrix G = CMatrix::Zero(p.length, M * p.blocks_per_user);
    const auto &ublocks = s.slots[static_cast<std::size_t>(tx_user - 1)];
    for (long b = 0; b < p.blocks_per_user; ++b)
        for (long t : ublocks[static_cast<std::size_t>(b)])
            G.block(t - 1, b * M, 1, M) = ch.row(rx_user, rx_member, p.mode(rx_user, t));
    return G;
}

EffectiveChannel effective_channel(const ChannelRealization &ch, const SwitchingPattern &p,
                                   const BeamformingSchedule &s, int rx_user, int rx_member) {
    EffectiveChannel eff;
    eff.rx_user = rx_user;
    eff.rx_member = rx_member;
    eff.per_tx.reserve(static_cast<std::size_t>(p.users));
    for (int j = 1; j <= p.users; ++j)
        eff.per_tx.push_back(effective_channel_single(ch, p, s, rx_user, rx_member, j));
    return eff;
}

std::vector<ReceivedBlock> simulate_transmission(const ChannelRealization &ch,
                                                 const SwitchingPattern &p,
                                                 const BeamformingSchedule &s,
                                                 const PowerAllocation &pa,
                                                 const CVector &streams, Rng &rng,
                                                 bool add_noise) {
    const int M = p.tx_modes;
    const int K = p.users;
    const long B = p.blocks_per_user;
    if (streams.size() != static_cast<Eigen::Index>(K) * M * B)
        throw InvalidArgument("stream vector must hold M*B symbols per user");
    require_finite(streams, "simulate_transmission");

    const double amp = std::sqrt(pa.per_stream_power);

    // Transmit vector per instant: superpose every block live at t.
    CMatrix x = CMatrix::Zero(p.length, M);
    for (int j = 1; j <= K; ++j) {
        const auto &ublocks = s.slots[static_cast<std::size_t>(j - 1)];
        for (long b = 0; b < B; ++b) {
            const Eigen::Index base = (static_cast<Eigen::Index>(j - 1) * B + b) * M;
            for (long t : ublocks[static_cast<std::size_t>(b)])
                x.row(t - 1) += amp * streams.segment(base, M).transpose();
        }
    }

    std::vector<ReceivedBlock> out;
    out.reserve(static_cast<std::size_t>(K) * static_cast<std::size_t>(ch.group_size));
    for (int k = 1; k <= K; ++k) {
        for (int g = 1; g <= ch.group_size; ++g) {
            ReceivedBlock rb;
            rb.rx_user = k;
            rb.rx_member = g;
            rb.samples.resize(p.length);
            for (long t = 1; t <= p.length; ++t) {
                cxd y = (ch.row(k, g, p.mode(k, t)) * x.row(t - 1).transpose())(0, 0);
                if (add_noise)
                    y += rng.complex_gaussian();
                rb.samples(t - 1) = y;
            }
            out.push_back(std::move(rb));
        }
    }
    return out;
}

} // namespace blindia
