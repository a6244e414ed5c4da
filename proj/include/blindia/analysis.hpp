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

#ifndef BLINDIA_ANALYSIS_HPP
#define BLINDIA_ANALYSIS_HPP

#include <string>
#include <vector>

#include "blindia/channel.hpp"
#include "blindia/config.hpp"
#include "blindia/receiver.hpp"

namespace blindia {

// Ergodic rate of one receiver for one channel draw, in bits per symbol:
// (1/(M+K-1)) log2 det(I + p H H^H) with H the scaled decoding channel
// (rows 1..M-1 divided by sqrt(K)) and p the per-stream power.
double closed_form_rate(const ChannelRealization &ch, int user, int member,
                        double total_power);

// High-power expansion of the same rate around log2 det(p Hbar Hbar^H) with
// the unscaled mode rows; the 1/sqrt(K) scaling shows up as the constant
// offset (M-1) log2(K) / (M+K-1).
double high_snr_approx(const ChannelRealization &ch, int user, int member,
                       double total_power);

// M x M decoding channels seen through the assembled supersymbol pipeline,
// one per alignment block: the receiver's effective matrix is gathered and
// combined exactly as zf_decode combines received samples.
std::vector<CMatrix> pipeline_channels(const EffectiveChannel &eff,
                                       const std::vector<BlockProjector> &projs);

struct RatePoint {
    double snr_db = 0.0;
    double total_power = 0.0;
    long trials = 0;

    double sum_rate_closed = 0.0;
    double sum_rate_sim = 0.0;
    double sum_rate_approx = 0.0;
    double sum_rate_tdma = 0.0; // only filled when requested
    double std_error = 0.0;     // standard error of sum_rate_closed

    // [user-1][member-1] per-member trial means and standard errors of the
    // closed-form rate; the group rate is the worst member's mean.
    std::vector<std::vector<double>> member_closed;
    std::vector<std::vector<double>> member_stderr;

    double max_closed_sim_gap = 0.0; // over receivers and trials
};

struct RateCurve {
    SystemConfig config;
    std::vector<RatePoint> points;
};

// Common-random-number Monte Carlo sweep: trial i uses substream(seed, i)
// regardless of the SNR point, so every point sees the same channel draws
// and rerunning with more trials extends, never replaces, the draw set.
RateCurve monte_carlo_rate(const SystemConfig &cfg);

double dof_target(int tx_modes, int users);

// Least-squares slope of sum_rate_closed against log2 of the total power.
double dof_slope(const RateCurve &curve);

// Longest supersymbol for which the automatic strategy still runs full SVDs.
inline constexpr long kDenseRankLimit = 64;

enum class RankStrategy {
    kAuto,       // dense SVD for short supersymbols, reduced check otherwise
    kDense,      // always assemble and SVD the full effective matrices
    kStructured, // always use the reduced per-receiver check
};

struct ReceiverRank {
    int user = 0;
    int member = 0;
    long desired = 0;
    long joint = 0;
    std::vector<long> interferers; // K-1 entries, tx-user order
    bool pass = false;
};

struct AlignmentReport {
    SystemConfig config;
    long length = 0;
    long expected_desired = 0;
    long expected_interferer = 0;
    long expected_joint = 0;

    long draws = 0;
    long passing_draws = 0;
    std::vector<ReceiverRank> last_draw; // one entry per receiver
    bool structured = false;             // reduced check used
    bool pass = false;                   // every draw passed
};

// Draws cfg.trials channel realizations and checks the dimension split at
// every receiver: the desired signal must occupy M(M-1)^(K-1) dimensions,
// each interferer (M-1)^(K-1), and everything together the full supersymbol.
AlignmentReport verify_alignment(const SystemConfig &cfg,
                                 RankStrategy strategy = RankStrategy::kAuto);

// CSV with the pinned column set; byte-stable across runs for a fixed
// configuration.
std::string rate_curve_csv(const RateCurve &curve);

std::string format_alignment_report(const AlignmentReport &rep);

} // namespace blindia

#endif
