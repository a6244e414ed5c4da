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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "blindia/analysis.hpp"
#include "blindia/errors.hpp"

using namespace blindia;

namespace {

// Receiver whose stacked mode matrix is the identity; makes every rate a
// closed-form number.
ChannelRealization identity_channel(int tx_modes, int users) {
    ChannelRealization ch;
    ch.tx_modes = tx_modes;
    ch.users = users;
    ch.group_size = 1;
    ch.rows.resize(static_cast<std::size_t>(users));
    for (auto &mode_rows : ch.rows)
        for (int m = 0; m < tx_modes; ++m) {
            Eigen::RowVectorXcd r = Eigen::RowVectorXcd::Zero(tx_modes);
            r(m) = 1.0;
            mode_rows.push_back(r);
        }
    return ch;
}

CMatrix scaled_rows(const ChannelRealization &ch, int user) {
    const int M = ch.tx_modes;
    const double w = 1.0 / std::sqrt(static_cast<double>(ch.users));
    CMatrix H(M, M);
    for (int m = 1; m < M; ++m)
        H.row(m - 1) = w * ch.row(user, 1, m);
    H.row(M - 1) = ch.row(user, 1, M);
    return H;
}

} // namespace

TEST_SUITE("analysis") {

TEST_CASE("closed form agrees with a direct determinant") {
    Rng rng(2001);
    const ChannelRealization ch = sample_channels(3, 2, 1, rng);
    const double P = 100.0;
    const double p = 4.0 * P / (9.0 * 2.0); // (M+K-1) P / (M^2 K)

    for (int k = 1; k <= 2; ++k) {
        const CMatrix H = scaled_rows(ch, k);
        const CMatrix A = CMatrix::Identity(3, 3) + p * (H * H.adjoint());
        const double direct = std::log2(A.determinant().real()) / 4.0;
        CHECK(closed_form_rate(ch, k, 1, P) ==
              doctest::Approx(direct).epsilon(1e-10));
    }
}

TEST_CASE("closed form on the identity channel is a textbook number") {
    const ChannelRealization ch = identity_channel(2, 2);
    // p = 3P/8 = 3 at P = 8; scaled rows give diag(1/2, 1) for H H^H
    const double want = (std::log2(1.0 + 3.0 * 0.5) + std::log2(1.0 + 3.0)) / 3.0;
    CHECK(closed_form_rate(ch, 1, 1, 8.0) == doctest::Approx(want).epsilon(1e-12));
    CHECK(closed_form_rate(ch, 2, 1, 8.0) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("high-power expansion differs by the inverse-eigenvalue terms") {
    Rng rng(2101);
    const ChannelRealization ch = sample_channels(3, 3, 1, rng);
    const double P = 50.0;
    const double p = 5.0 * P / (9.0 * 3.0);

    const CMatrix H = scaled_rows(ch, 2);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H * H.adjoint());
    double gap = 0.0;
    for (int a = 0; a < 3; ++a)
        gap += std::log2(1.0 + 1.0 / (p * es.eigenvalues()(a)));
    gap /= 5.0;

    const double closed = closed_form_rate(ch, 2, 1, P);
    const double approx = high_snr_approx(ch, 2, 1, P);
    CHECK(closed - approx == doctest::Approx(gap).epsilon(1e-9));
    CHECK(closed > approx);

    // the gap shrinks as the power budget grows
    CHECK(closed_form_rate(ch, 2, 1, 1e4) - high_snr_approx(ch, 2, 1, 1e4) <
          closed - approx);
}

TEST_CASE("pipeline decoding channels equal the scaled mode rows bit for bit") {
    const SwitchingPattern p = build_supersymbol(3, 2);
    const BeamformingSchedule s = build_beamforming(p);
    Rng rng(2201);
    const ChannelRealization ch = sample_channels(3, 2, 1, rng);

    for (int k = 1; k <= 2; ++k) {
        std::vector<BlockProjector> projs;
        for (long b = 1; b <= p.blocks_per_user; ++b)
            projs.push_back(build_block_projector(p, k, b));
        const EffectiveChannel eff = effective_channel(ch, p, s, k);
        const std::vector<CMatrix> pipes = pipeline_channels(eff, projs);
        REQUIRE(pipes.size() == 2);
        const CMatrix want = scaled_rows(ch, k);
        for (const CMatrix &Hp : pipes)
            CHECK(Hp == want);
    }
}

TEST_CASE("simulated and closed-form rates coincide to rounding") {
    SystemConfig cfg;
    cfg.tx_modes = 3;
    cfg.users = 2;
    cfg.snr_db = {0.0, 30.0};
    cfg.trials = 50;
    cfg.seed = 2301;
    const RateCurve curve = monte_carlo_rate(cfg);
    REQUIRE(curve.points.size() == 2);
    for (const RatePoint &pt : curve.points) {
        CHECK(pt.max_closed_sim_gap <= 1e-12);
        CHECK(pt.sum_rate_sim == doctest::Approx(pt.sum_rate_closed).epsilon(1e-12));
    }
}

TEST_CASE("trial substreams are shared across the power sweep") {
    SystemConfig cfg;
    cfg.tx_modes = 2;
    cfg.users = 2;
    cfg.snr_db = {20.0};
    cfg.trials = 500;
    cfg.seed = 77;
    const RateCurve curve = monte_carlo_rate(cfg);
    const double P = std::pow(10.0, 20.0 / 10.0);

    for (int k = 1; k <= 2; ++k) {
        double mean = 0.0;
        for (long trial = 0; trial < cfg.trials; ++trial) {
            Rng rng = Rng::substream(cfg.seed, static_cast<std::uint64_t>(trial));
            const ChannelRealization ch = sample_channels(2, 2, 1, rng);
            mean += closed_form_rate(ch, k, 1, P);
        }
        mean /= static_cast<double>(cfg.trials);
        CHECK(curve.points[0].member_closed[static_cast<std::size_t>(k - 1)][0] ==
              doctest::Approx(mean).epsilon(1e-12));
    }
}

TEST_CASE("independent seeds give statistically compatible means") {
    SystemConfig a, b;
    a.tx_modes = b.tx_modes = 2;
    a.users = b.users = 2;
    a.snr_db = b.snr_db = {10.0};
    a.trials = b.trials = 2000;
    a.seed = 99;
    b.seed = 123457;
    const RatePoint pa = monte_carlo_rate(a).points[0];
    const RatePoint pb = monte_carlo_rate(b).points[0];
    const double se = std::sqrt(pa.std_error * pa.std_error + pb.std_error * pb.std_error);
    CHECK(std::abs(pa.sum_rate_closed - pb.sum_rate_closed) <= 3.0 * se);
    CHECK(pa.std_error > 0.0);
}

TEST_CASE("sum rate grows with power and approaches the expansion") {
    SystemConfig cfg;
    cfg.tx_modes = 2;
    cfg.users = 3;
    cfg.snr_db = {0.0, 10.0, 20.0, 30.0, 40.0};
    cfg.trials = 200;
    cfg.seed = 5;
    const RateCurve curve = monte_carlo_rate(cfg);
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        CHECK(curve.points[i].sum_rate_closed > curve.points[i - 1].sum_rate_closed);
        const double gap_prev =
            curve.points[i - 1].sum_rate_closed - curve.points[i - 1].sum_rate_approx;
        const double gap = curve.points[i].sum_rate_closed - curve.points[i].sum_rate_approx;
        CHECK(gap < gap_prev);
        CHECK(gap > 0.0);
    }
}

TEST_CASE("time sharing trails the aligned scheme at high power") {
    SystemConfig cfg;
    cfg.tx_modes = 2;
    cfg.users = 2;
    cfg.snr_db = {40.0};
    cfg.trials = 300;
    cfg.seed = 11;
    cfg.with_tdma = true;
    const RatePoint pt = monte_carlo_rate(cfg).points[0];
    CHECK(pt.sum_rate_tdma > 0.0);
    CHECK(pt.sum_rate_closed > pt.sum_rate_tdma);
}

TEST_CASE("csv output is byte stable and carries the pinned columns") {
    SystemConfig cfg;
    cfg.tx_modes = 2;
    cfg.users = 2;
    cfg.snr_db = {20.0};
    cfg.trials = 5;
    cfg.seed = 8;
    const std::string a = rate_curve_csv(monte_carlo_rate(cfg));
    const std::string b = rate_curve_csv(monte_carlo_rate(cfg));
    CHECK(a == b);
    CHECK(a.rfind("M,K,J,snr_db,trials,sum_rate_closed,sum_rate_sim,sum_rate_approx,stderr\n",
                  0) == 0);
    CHECK(a.find("\n2,2,1,20,5,") != std::string::npos);

    cfg.with_tdma = true;
    const std::string c = rate_curve_csv(monte_carlo_rate(cfg));
    CHECK(c.find(",sum_rate_tdma\n") != std::string::npos);
}

TEST_CASE("slope recovery is exact on an affine curve") {
    RateCurve curve;
    for (double x : {10.0, 20.0, 30.0}) {
        RatePoint pt;
        pt.total_power = std::pow(2.0, x);
        pt.sum_rate_closed = 0.7 + 1.5 * x;
        curve.points.push_back(pt);
    }
    CHECK(dof_slope(curve) == doctest::Approx(1.5).epsilon(1e-12));

    RateCurve single;
    single.points.push_back(curve.points[0]);
    CHECK_THROWS_AS(dof_slope(single), InvalidArgument);
    single.points.push_back(curve.points[0]);
    CHECK_THROWS_AS(dof_slope(single), InvalidArgument); // no spread
}

TEST_CASE("degrees of freedom targets") {
    CHECK(dof_target(2, 2) == doctest::Approx(4.0 / 3.0));
    CHECK(dof_target(3, 2) == doctest::Approx(1.5));
    CHECK(dof_target(2, 3) == doctest::Approx(1.5));
    CHECK(dof_target(3, 3) == doctest::Approx(1.8));
    CHECK(dof_target(4, 2) == doctest::Approx(1.6));
}

TEST_CASE("measured slope hits the degrees-of-freedom target") {
    SystemConfig cfg;
    cfg.tx_modes = 4;
    cfg.users = 2;
    cfg.snr_db = {40.0, 50.0, 60.0, 70.0};
    cfg.trials = 1000;
    cfg.seed = 17;
    const double slope = dof_slope(monte_carlo_rate(cfg));
    CHECK(slope == doctest::Approx(dof_target(4, 2)).epsilon(0.02));
}

TEST_CASE("alignment verification splits the dimensions as designed") {
    SystemConfig cfg;
    cfg.tx_modes = 2;
    cfg.users = 2;
    cfg.trials = 3;
    cfg.seed = 31;
    const AlignmentReport rep = verify_alignment(cfg);
    CHECK(rep.length == 3);
    CHECK(rep.expected_desired == 2);
    CHECK(rep.expected_interferer == 1);
    CHECK(rep.expected_joint == 3);
    CHECK_FALSE(rep.structured);
    CHECK(rep.pass);
    CHECK(rep.passing_draws == 3);
    REQUIRE(rep.last_draw.size() == 2);
    for (const ReceiverRank &rr : rep.last_draw) {
        CHECK(rr.desired == 2);
        CHECK(rr.joint == 3);
        REQUIRE(rr.interferers.size() == 1);
        CHECK(rr.interferers[0] == 1);
    }

    cfg.tx_modes = 3;
    cfg.users = 3;
    const AlignmentReport rep3 = verify_alignment(cfg);
    CHECK(rep3.length == 20);
    CHECK(rep3.expected_desired == 12);
    CHECK(rep3.expected_interferer == 4);
    CHECK(rep3.expected_joint == 20);
    CHECK(rep3.pass);
}

TEST_CASE("reduced and dense rank checks agree draw for draw") {
    for (auto [M, K] : {std::pair{3, 3}, std::pair{3, 4}, std::pair{2, 4}}) {
        SystemConfig cfg;
        cfg.tx_modes = M;
        cfg.users = K;
        cfg.trials = 2;
        cfg.seed = 41;
        const AlignmentReport dense = verify_alignment(cfg, RankStrategy::kDense);
        const AlignmentReport reduced = verify_alignment(cfg, RankStrategy::kStructured);
        CHECK_FALSE(dense.structured);
        CHECK(reduced.structured);
        CHECK(dense.pass);
        CHECK(reduced.pass);
        REQUIRE(dense.last_draw.size() == reduced.last_draw.size());
        for (std::size_t i = 0; i < dense.last_draw.size(); ++i) {
            CHECK(dense.last_draw[i].desired == reduced.last_draw[i].desired);
            CHECK(dense.last_draw[i].joint == reduced.last_draw[i].joint);
            CHECK(dense.last_draw[i].interferers == reduced.last_draw[i].interferers);
        }
    }
}

TEST_CASE("alignment report text names every receiver") {
    SystemConfig cfg;
    cfg.tx_modes = 2;
    cfg.users = 2;
    cfg.trials = 1;
    cfg.seed = 51;
    const std::string text = format_alignment_report(verify_alignment(cfg));
    CHECK(text.find("receiver 1: desired 2/2 interference 1 joint 3/3 ok") != std::string::npos);
    CHECK(text.find("receiver 2: desired 2/2 interference 1 joint 3/3 ok") != std::string::npos);
    CHECK(text.find("draws passed 1/1") != std::string::npos);
    CHECK(text.find("PASS") != std::string::npos);
    CHECK(text.find("check=dense") != std::string::npos);
}

TEST_CASE("a multicast group is scored by its worst member") {
    SystemConfig cfg;
    cfg.tx_modes = 2;
    cfg.users = 2;
    cfg.group_size = 3;
    cfg.snr_db = {30.0};
    cfg.trials = 300;
    cfg.seed = 61;
    const RatePoint pt = monte_carlo_rate(cfg).points[0];
    REQUIRE(pt.member_closed.size() == 2);
    double expect = 0.0;
    for (const auto &members : pt.member_closed) {
        REQUIRE(members.size() == 3);
        expect += *std::min_element(members.begin(), members.end());
    }
    CHECK(pt.sum_rate_closed == doctest::Approx(expect).epsilon(1e-12));
    for (const auto &members : pt.member_stderr)
        for (double se : members)
            CHECK(se > 0.0);

    SystemConfig vcfg = cfg;
    vcfg.trials = 2;
    const AlignmentReport rep = verify_alignment(vcfg);
    CHECK(rep.pass);
    CHECK(rep.last_draw.size() == 6); // K * J receivers
    const std::string text = format_alignment_report(rep);
    CHECK(text.find("receiver 1.1:") != std::string::npos);
    CHECK(text.find("receiver 2.3:") != std::string::npos);
}

} // TEST_SUITE
