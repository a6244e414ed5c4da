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

#include <doctest.h>

#include <cmath>
#include <utility>

#include "blindia/channel.hpp"
#include "blindia/errors.hpp"

using namespace blindia;

TEST_SUITE("channel") {

TEST_CASE("draw shape, determinism, and receiver independence") {
    Rng a(7), b(7);
    const ChannelRealization ca = sample_channels(3, 2, 2, a);
    const ChannelRealization cb = sample_channels(3, 2, 2, b);
    REQUIRE(ca.rows.size() == 4);
    REQUIRE(ca.rows[0].size() == 3);
    CHECK(ca.row(1, 1, 2).size() == 3);
    CHECK(ca.row(2, 2, 3) == cb.row(2, 2, 3));
    CHECK(ca.row(1, 1, 1) != ca.row(1, 2, 1));
    CHECK(ca.row(1, 1, 1) != ca.row(2, 1, 1));

    Rng c(8);
    CHECK(sample_channels(3, 2, 2, c).row(1, 1, 1) != ca.row(1, 1, 1));
}

TEST_CASE("stacked mode matrices are always invertible") {
    for (int trial = 0; trial < 50; ++trial) {
        Rng rng = Rng::substream(909, static_cast<std::uint64_t>(trial));
        const ChannelRealization ch = sample_channels(2, 3, 1, rng);
        for (int k = 1; k <= 3; ++k)
            CHECK(numeric_rank(ch.stacked(k, 1)).rank == 2);
    }
}

TEST_CASE("two-user effective matrices expose the aligned column") {
    Rng rng(11);
    const SwitchingPattern p = build_supersymbol(2, 2);
    const BeamformingSchedule s = build_beamforming(p);
    const ChannelRealization ch = sample_channels(2, 2, 1, rng);
    const EffectiveChannel eff = effective_channel(ch, p, s, 1);
    REQUIRE(eff.per_tx.size() == 2);

    const CMatrix &G11 = eff.per_tx[0];
    CHECK(G11.rows() == 3);
    CHECK(G11.cols() == 2);
    CHECK(G11.row(0) == ch.row(1, 1, 1));
    CHECK(G11.row(1) == ch.row(1, 1, 2));
    CHECK(G11.row(2).norm() == 0.0);

    const CMatrix &G12 = eff.per_tx[1];
    CHECK(G12.row(0) == ch.row(1, 1, 1));
    CHECK(G12.row(1).norm() == 0.0);
    CHECK(G12.row(2) == ch.row(1, 1, 1)); // repeated row: interference aligns
    CHECK(numeric_rank(G12).rank == 1);
    CHECK(numeric_rank(G11).rank == 2);
}

TEST_CASE("interference occupies exactly the block indicator directions") {
    for (auto [M, K] : {std::pair{3, 2}, std::pair{3, 3}}) {
        const SwitchingPattern p = build_supersymbol(M, K);
        const BeamformingSchedule s = build_beamforming(p);
        Rng rng(505);
        const ChannelRealization ch = sample_channels(M, K, 1, rng);
        for (int k = 1; k <= K; ++k) {
            const EffectiveChannel eff = effective_channel(ch, p, s, k);
            for (int j = 1; j <= K; ++j) {
                if (j == k)
                    continue;
                // indicator of each interfering block, one column per block
                CMatrix V = CMatrix::Zero(p.length, p.blocks_per_user);
                for (const AlignmentBlock &blk : p.blocks[j - 1]) {
                    for (long t : blk.block1_times)
                        V(t - 1, blk.ordinal - 1) = 1.0;
                    V(blk.block2_time - 1, blk.ordinal - 1) = 1.0;
                }
                const CMatrix Q = orthonormal_complement(V);
                const CMatrix &G = eff.per_tx[j - 1];
                CHECK((Q.adjoint() * G).norm() <= 1e-10 * G.norm());
                CHECK(numeric_rank(G).rank == p.blocks_per_user);
            }
        }
    }
}

TEST_CASE("single-matrix assembly matches the full assembly") {
    const SwitchingPattern p = build_supersymbol(3, 3);
    const BeamformingSchedule s = build_beamforming(p);
    Rng rng(66);
    const ChannelRealization ch = sample_channels(3, 3, 1, rng);
    const EffectiveChannel eff = effective_channel(ch, p, s, 2);
    for (int j = 1; j <= 3; ++j)
        CHECK(effective_channel_single(ch, p, s, 2, 1, j) == eff.per_tx[j - 1]);
}

TEST_CASE("noise-free probes reproduce effective columns") {
    const SwitchingPattern p = build_supersymbol(3, 2);
    const BeamformingSchedule s = build_beamforming(p);
    Rng rng(21);
    const ChannelRealization ch = sample_channels(3, 2, 1, rng);
    const PowerAllocation pa = stream_power(3, 2, 4.5);
    const double amp = std::sqrt(pa.per_stream_power);
    const long nstreams = 2 * 6;

    for (long i = 0; i < nstreams; ++i) {
        CVector streams = CVector::Zero(nstreams);
        streams(i) = 1.0;
        const auto rx = simulate_transmission(ch, p, s, pa, streams, rng, false);
        REQUIRE(rx.size() == 2);
        for (int k = 1; k <= 2; ++k) {
            const EffectiveChannel eff = effective_channel(ch, p, s, k);
            const int j = i < 6 ? 1 : 2;
            const CVector want = amp * eff.per_tx[j - 1].col(i % 6);
            CHECK((rx[k - 1].samples - want).norm() <= 1e-13 * (1.0 + want.norm()));
        }
    }
}

TEST_CASE("noise is unit variance and zero mean") {
    const SwitchingPattern p = build_supersymbol(2, 2);
    const BeamformingSchedule s = build_beamforming(p);
    Rng rng(31);
    const ChannelRealization ch = sample_channels(2, 2, 1, rng);
    const PowerAllocation pa = stream_power(2, 2, 1.0);
    const CVector silent = CVector::Zero(4);

    cxd mean = 0.0;
    double power = 0.0;
    long count = 0;
    for (int trial = 0; trial < 4000; ++trial) {
        const auto rx = simulate_transmission(ch, p, s, pa, silent, rng, true);
        for (const ReceivedBlock &rb : rx)
            for (long t = 0; t < rb.samples.size(); ++t) {
                mean += rb.samples(t);
                power += std::norm(rb.samples(t));
                ++count;
            }
    }
    mean /= static_cast<double>(count);
    CHECK(std::abs(mean) < 0.02);
    CHECK(power / count == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("transmit energy meets the per-symbol budget on average") {
    const SwitchingPattern p = build_supersymbol(2, 3);
    const BeamformingSchedule s = build_beamforming(p);
    const double P = 4.0;
    const PowerAllocation pa = stream_power(2, 3, P);
    const double amp = std::sqrt(pa.per_stream_power);

    double energy = 0.0;
    const long trials = 2000;
    for (long trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::substream(77, static_cast<std::uint64_t>(trial));
        CVector streams(3 * 2);
        for (long i = 0; i < streams.size(); ++i)
            streams(i) = rng.complex_gaussian();
        // rebuild the transmit vectors exactly as the simulator does
        CMatrix x = CMatrix::Zero(p.length, 2);
        for (int j = 1; j <= 3; ++j)
            for (long b = 0; b < 1; ++b)
                for (long t : s.slots[j - 1][static_cast<std::size_t>(b)])
                    x.row(t - 1) += amp * streams.segment(2 * (j - 1), 2).transpose();
        energy += x.squaredNorm();
    }
    CHECK(energy / trials ==
          doctest::Approx(P * static_cast<double>(p.length)).epsilon(0.05));
}

TEST_CASE("group members see independent channels") {
    Rng rng(41);
    const ChannelRealization ch = sample_channels(2, 2, 3, rng);
    REQUIRE(ch.rows.size() == 6);
    for (int g = 2; g <= 3; ++g)
        CHECK((ch.stacked(1, 1) - ch.stacked(1, g)).norm() > 1e-6);
}

TEST_CASE("argument validation") {
    Rng rng(51);
    CHECK_THROWS_AS(sample_channels(1, 2, 1, rng), UnsupportedConfiguration);
    CHECK_THROWS_AS(sample_channels(2, 0, 1, rng), UnsupportedConfiguration);

    const SwitchingPattern p = build_supersymbol(2, 2);
    const BeamformingSchedule s = build_beamforming(p);
    const ChannelRealization ch = sample_channels(2, 2, 1, rng);
    CHECK_THROWS_AS(effective_channel(ch, p, s, 3), InvalidArgument);
    CHECK_THROWS_AS(effective_channel(ch, p, s, 1, 2), InvalidArgument);
    CHECK_THROWS_AS(simulate_transmission(ch, p, s, stream_power(2, 2, 1.0),
                                          CVector::Zero(3), rng, false),
                    InvalidArgument);
}

} // TEST_SUITE
