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

#include "blindia/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "blindia/errors.hpp"

namespace blindia {

namespace {

double db_to_power(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

// Rows 1..M-1 scaled by 1/sqrt(K); the mode the dedicated instant uses stays
// unscaled because no interference is subtracted there.
CMatrix scaled_decoding_channel(const ChannelRealization &ch, int user, int member) {
    const int M = ch.tx_modes;
    const double w = 1.0 / std::sqrt(static_cast<double>(ch.users));
    CMatrix H(M, M);
    for (int m = 1; m < M; ++m)
        H.row(m - 1) = w * ch.row(user, member, m);
    H.row(M - 1) = ch.row(user, member, M);
    return H;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

} // namespace

double closed_form_rate(const ChannelRealization &ch, int user, int member,
                        double total_power) {
    const int M = ch.tx_modes;
    const int K = ch.users;
    const double p = stream_power(M, K, total_power).per_stream_power;
    const CMatrix H = scaled_decoding_channel(ch, user, member);
    const CMatrix A = H * H.adjoint();
    return log_det_hermitian_plus_identity(A, p) / static_cast<double>(M + K - 1);
}

double high_snr_approx(const ChannelRealization &ch, int user, int member,
                       double total_power) {
    const int M = ch.tx_modes;
    const int K = ch.users;
    const double p = stream_power(M, K, total_power).per_stream_power;
    const CMatrix Hbar = ch.stacked(user, member);
    const CMatrix A = Hbar * Hbar.adjoint();
    return (M * std::log2(p) + log2_det_hermitian(A) -
            (M - 1) * std::log2(static_cast<double>(K))) /
           static_cast<double>(M + K - 1);
}

std::vector<CMatrix> pipeline_channels(const EffectiveChannel &eff,
                                       const std::vector<BlockProjector> &projs) {
    std::vector<CMatrix> out;
    out.reserve(projs.size());
    const CMatrix &G = eff.per_tx[static_cast<std::size_t>(eff.rx_user - 1)];
    for (const BlockProjector &proj : projs) {
        const int M = proj.tx_modes;
        const double w = 1.0 / std::sqrt(static_cast<double>(proj.users));
        const long c0 = (proj.block_ordinal - 1) * M;
        CMatrix H(M, M);
        for (int a = 0; a < M; ++a) {
            Eigen::RowVectorXcd acc =
                G.block(proj.gathered[static_cast<std::size_t>(proj.own_pos[a])] - 1, c0, 1, M);
            for (long pos : proj.cancel_pos[static_cast<std::size_t>(a)])
                acc -= G.block(proj.gathered[static_cast<std::size_t>(pos)] - 1, c0, 1, M);
            H.row(a) = (a + 1 < M) ? (w * acc).eval() : acc;
        }
        out.push_back(std::move(H));
    }
    return out;
}

RateCurve monte_carlo_rate(const SystemConfig &cfg) {
    validate(cfg);
    const int M = cfg.tx_modes;
    const int K = cfg.users;
    const int J = cfg.group_size;
    const long n = cfg.trials;
    const std::size_t npts = cfg.snr_db.size();

    const SwitchingPattern pattern = build_supersymbol(M, K, cfg.length_cap);
    const BeamformingSchedule schedule = build_beamforming(pattern);
    std::vector<std::vector<BlockProjector>> projs(static_cast<std::size_t>(K));
    for (int k = 1; k <= K; ++k)
        for (long b = 1; b <= pattern.blocks_per_user; ++b)
            projs[static_cast<std::size_t>(k - 1)].push_back(
                build_block_projector(pattern, k, b));

    struct Acc {
        double closed = 0.0, closed_sq = 0.0, sim = 0.0, approx = 0.0, tdma = 0.0;
    };
    // [snr][user][member]
    std::vector<std::vector<std::vector<Acc>>> acc(
        npts, std::vector<std::vector<Acc>>(static_cast<std::size_t>(K),
                                            std::vector<Acc>(static_cast<std::size_t>(J))));
    std::vector<double> max_gap(npts, 0.0);

    const long denom = static_cast<long>(M) + K - 1;
    for (long trial = 0; trial < n; ++trial) {
        Rng rng = Rng::substream(cfg.seed, static_cast<std::uint64_t>(trial));
        const ChannelRealization ch = sample_channels(M, K, J, rng, cfg.rel_tol);

        for (int k = 1; k <= K; ++k) {
            for (int g = 1; g <= J; ++g) {
                const EffectiveChannel eff = effective_channel(ch, pattern, schedule, k, g);
                const std::vector<CMatrix> pipes =
                    pipeline_channels(eff, projs[static_cast<std::size_t>(k - 1)]);

                const CMatrix Hc = scaled_decoding_channel(ch, k, g);
                const CMatrix A = Hc * Hc.adjoint();
                std::vector<CMatrix> pipe_grams;
                pipe_grams.reserve(pipes.size());
                for (const CMatrix &Hp : pipes)
                    pipe_grams.push_back(Hp * Hp.adjoint());

                const CMatrix Hbar = ch.stacked(k, g);
                const CMatrix Abar = Hbar * Hbar.adjoint();
                const double tdma_gain = ch.row(k, g, 1).squaredNorm();

                for (std::size_t si = 0; si < npts; ++si) {
                    const double P = db_to_power(cfg.snr_db[si]);
                    const double p = stream_power(M, K, P).per_stream_power;

                    const double closed =
                        log_det_hermitian_plus_identity(A, p) / static_cast<double>(denom);
                    double sim = 0.0;
                    for (const CMatrix &Gb : pipe_grams)
                        sim += log_det_hermitian_plus_identity(Gb, p);
                    sim /= static_cast<double>(pattern.length);
                    const double approx =
                        (M * std::log2(p) + log2_det_hermitian(Abar) -
                         (M - 1) * std::log2(static_cast<double>(K))) /
                        static_cast<double>(denom);
                    const double tdma =
                        std::log2(1.0 + P / M * tdma_gain) / static_cast<double>(K);

                    Acc &a = acc[si][static_cast<std::size_t>(k - 1)]
                                [static_cast<std::size_t>(g - 1)];
                    a.closed += closed;
                    a.closed_sq += closed * closed;
                    a.sim += sim;
                    a.approx += approx;
                    a.tdma += tdma;
                    max_gap[si] = std::max(max_gap[si], std::abs(closed - sim));
                }
            }
        }
    }

    RateCurve curve;
    curve.config = cfg;
    curve.points.reserve(npts);
    for (std::size_t si = 0; si < npts; ++si) {
        RatePoint pt;
        pt.snr_db = cfg.snr_db[si];
        pt.total_power = db_to_power(pt.snr_db);
        pt.trials = n;
        pt.member_closed.assign(static_cast<std::size_t>(K),
                                std::vector<double>(static_cast<std::size_t>(J), 0.0));
        pt.member_stderr = pt.member_closed;
        pt.max_closed_sim_gap = max_gap[si];

        double var_sum = 0.0;
        for (int k = 0; k < K; ++k) {
            int worst = 0;
            double worst_mean = std::numeric_limits<double>::infinity();
            double worst_sim = 0.0, worst_approx = 0.0, worst_tdma = 0.0;
            for (int g = 0; g < J; ++g) {
                const Acc &a = acc[si][static_cast<std::size_t>(k)][static_cast<std::size_t>(g)];
                const double mean = a.closed / static_cast<double>(n);
                const double var =
                    n > 1 ? std::max(0.0, (a.closed_sq - n * mean * mean) /
                                              static_cast<double>(n - 1))
                          : 0.0;
                pt.member_closed[static_cast<std::size_t>(k)][static_cast<std::size_t>(g)] = mean;
                pt.member_stderr[static_cast<std::size_t>(k)][static_cast<std::size_t>(g)] =
                    std::sqrt(var / static_cast<double>(n));
                if (mean < worst_mean) {
                    worst = g;
                    worst_mean = mean;
                    worst_sim = a.sim / static_cast<double>(n);
                    worst_approx = a.approx / static_cast<double>(n);
                    worst_tdma = a.tdma / static_cast<double>(n);
                }
            }
            pt.sum_rate_closed += worst_mean;
            pt.sum_rate_sim += worst_sim;
            pt.sum_rate_approx += worst_approx;
            pt.sum_rate_tdma += worst_tdma;
            const double se =
                pt.member_stderr[static_cast<std::size_t>(k)][static_cast<std::size_t>(worst)];
            var_sum += se * se;
        }
        pt.std_error = std::sqrt(var_sum);
        curve.points.push_back(std::move(pt));
    }
    return curve;
}

double dof_target(int tx_modes, int users) {
    return static_cast<double>(tx_modes) * users / (tx_modes + users - 1.0);
}

double dof_slope(const RateCurve &curve) {
    if (curve.points.size() < 2)
        throw InvalidArgument("dof_slope needs at least two SNR points");
    const std::size_t n = curve.points.size();
    double sx = 0.0, sy = 0.0;
    for (const RatePoint &pt : curve.points) {
        sx += std::log2(pt.total_power);
        sy += pt.sum_rate_closed;
    }
    const double mx = sx / n, my = sy / n;
    double num = 0.0, den = 0.0;
    for (const RatePoint &pt : curve.points) {
        const double dx = std::log2(pt.total_power) - mx;
        num += dx * (pt.sum_rate_closed - my);
        den += dx * dx;
    }
    if (den == 0.0)
        throw InvalidArgument("dof_slope needs distinct SNR points");
    return num / den;
}

namespace {

struct RankTriple {
    long desired = 0;
    long joint = 0;
    std::vector<long> interferers;
};

RankTriple dense_ranks(const ChannelRealization &ch, const SwitchingPattern &p,
                       const BeamformingSchedule &s, int k, int g, double rel_tol) {
    RankTriple r;
    const EffectiveChannel eff = effective_channel(ch, p, s, k, g);
    const Eigen::Index cols = eff.per_tx.front().cols();
    CMatrix joint(p.length, static_cast<Eigen::Index>(p.users) * cols);
    for (int j = 1; j <= p.users; ++j) {
        const CMatrix &G = eff.per_tx[static_cast<std::size_t>(j - 1)];
        joint.middleCols(static_cast<Eigen::Index>(j - 1) * cols, cols) = G;
        const long rk = numeric_rank(G, rel_tol).rank;
        if (j == k)
            r.desired = rk;
        else
            r.interferers.push_back(rk);
    }
    r.joint = numeric_rank(joint, rel_tol).rank;
    return r;
}

// Checks, entry for entry, that the assembled matrix equals the aligned
// model. Seen from receiver k, an interfering block's instants all carry the
// one mode row k froze on; k's own blocks sweep the rows 1..M in slot order.
bool entries_match_model(const ChannelRealization &ch, const SwitchingPattern &p,
                         const BeamformingSchedule &s, int k, int g, int j) {
    const CMatrix G = effective_channel_single(ch, p, s, k, g, j);
    const int M = p.tx_modes;
    const auto &ublocks = s.slots[static_cast<std::size_t>(j - 1)];

    for (long b = 0; b < p.blocks_per_user; ++b) {
        const auto &ts = ublocks[static_cast<std::size_t>(b)];
        const int frozen = p.mode(k, ts.front());
        std::vector<bool> live(static_cast<std::size_t>(p.length), false);
        for (std::size_t a = 0; a < ts.size(); ++a) {
            const long t = ts[a];
            live[static_cast<std::size_t>(t - 1)] = true;
            const int mode = j == k ? static_cast<int>(a) + 1 : frozen;
            if (p.mode(k, t) != mode)
                return false; // sweep or freeze broken at the receiver
            const Eigen::RowVectorXcd &h = ch.row(k, g, mode);
            for (int c = 0; c < M; ++c)
                if (G(t - 1, b * M + c) != h(c))
                    return false;
        }
        for (int c = 0; c < M; ++c)
            for (long t = 1; t <= p.length; ++t)
                if (!live[static_cast<std::size_t>(t - 1)] &&
                    G(t - 1, b * M + c) != cxd(0.0, 0.0))
                    return false;
    }
    return true;
}

// Rank accounting that never touches the big matrices. Each interfering
// block contributes one dimension per nonvanishing receiver row; eliminating
// those private dimensions leaves B disjoint copies of the receiver's
// stacked mode matrix, so the desired signal adds B * rank(S).
RankTriple structured_ranks(const ChannelRealization &ch, const SwitchingPattern &p,
                            const BeamformingSchedule &s, int k, int g, double rel_tol) {
    RankTriple r;
    const long B = p.blocks_per_user;
    const long srank = numeric_rank(ch.stacked(k, g), rel_tol).rank;
    r.desired = B * srank;
    long interference = 0;
    for (int j = 1; j <= p.users; ++j) {
        if (j == k)
            continue;
        long cnt = 0;
        const auto &ublocks = s.slots[static_cast<std::size_t>(j - 1)];
        for (long b = 0; b < B; ++b) {
            const int mode = p.mode(k, ublocks[static_cast<std::size_t>(b)].front());
            if (ch.row(k, g, mode).norm() > 0.0)
                ++cnt;
        }
        r.interferers.push_back(cnt);
        interference += cnt;
    }
    r.joint = interference + r.desired;
    return r;
}

} // namespace

AlignmentReport verify_alignment(const SystemConfig &cfg, RankStrategy strategy) {
    validate(cfg);
    const int M = cfg.tx_modes;
    const int K = cfg.users;
    const int J = cfg.group_size;

    const SwitchingPattern pattern = build_supersymbol(M, K, cfg.length_cap);
    const BeamformingSchedule schedule = build_beamforming(pattern);

    AlignmentReport rep;
    rep.config = cfg;
    rep.length = pattern.length;
    rep.expected_desired = static_cast<long>(M) * pattern.blocks_per_user;
    rep.expected_interferer = pattern.blocks_per_user;
    rep.expected_joint = pattern.length;
    rep.draws = cfg.trials;
    rep.structured = strategy == RankStrategy::kStructured ||
                     (strategy == RankStrategy::kAuto && pattern.length > kDenseRankLimit);

    // The reduced path rests on the assembled matrices having the aligned
    // layout; spot-check that bitwise on the first draws.
    const long entry_draws =
        rep.structured ? std::min<long>(cfg.trials, pattern.length > 500 ? 1 : 3) : 0;

    for (long d = 0; d < cfg.trials; ++d) {
        Rng rng = Rng::substream(cfg.seed, static_cast<std::uint64_t>(d));
        const ChannelRealization ch = sample_channels(M, K, J, rng, cfg.rel_tol);

        bool draw_pass = true;
        std::vector<ReceiverRank> draw_ranks;
        draw_ranks.reserve(static_cast<std::size_t>(K) * static_cast<std::size_t>(J));
        for (int k = 1; k <= K; ++k) {
            for (int g = 1; g <= J; ++g) {
                RankTriple rt;
                if (!rep.structured) {
                    rt = dense_ranks(ch, pattern, schedule, k, g, cfg.rel_tol);
                } else {
                    bool model_ok = true;
                    if (d < entry_draws)
                        for (int j = 1; j <= K && model_ok; ++j)
                            model_ok = entries_match_model(ch, pattern, schedule, k, g, j);
                    rt = model_ok ? structured_ranks(ch, pattern, schedule, k, g, cfg.rel_tol)
                                  : dense_ranks(ch, pattern, schedule, k, g, cfg.rel_tol);
                }

                ReceiverRank rr;
                rr.user = k;
                rr.member = g;
                rr.desired = rt.desired;
                rr.joint = rt.joint;
                rr.interferers = std::move(rt.interferers);
                rr.pass = rr.desired == rep.expected_desired && rr.joint == rep.expected_joint;
                for (long ir : rr.interferers)
                    rr.pass = rr.pass && ir == rep.expected_interferer;
                draw_pass = draw_pass && rr.pass;
                draw_ranks.push_back(std::move(rr));
            }
        }
        if (draw_pass)
            ++rep.passing_draws;
        if (d + 1 == cfg.trials)
            rep.last_draw = std::move(draw_ranks);
    }
    rep.pass = rep.passing_draws == rep.draws;
    return rep;
}

std::string rate_curve_csv(const RateCurve &curve) {
    std::ostringstream os;
    os << "M,K,J,snr_db,trials,sum_rate_closed,sum_rate_sim,sum_rate_approx,stderr";
    if (curve.config.with_tdma)
        os << ",sum_rate_tdma";
    os << '\n';
    for (const RatePoint &pt : curve.points) {
        os << curve.config.tx_modes << ',' << curve.config.users << ','
           << curve.config.group_size << ',' << fmt_double(pt.snr_db) << ',' << pt.trials
           << ',' << fmt_double(pt.sum_rate_closed) << ',' << fmt_double(pt.sum_rate_sim)
           << ',' << fmt_double(pt.sum_rate_approx) << ',' << fmt_double(pt.std_error);
        if (curve.config.with_tdma)
            os << ',' << fmt_double(pt.sum_rate_tdma);
        os << '\n';
    }
    return os.str();
}

std::string format_alignment_report(const AlignmentReport &rep) {
    std::ostringstream os;
    os << "M=" << rep.config.tx_modes << " K=" << rep.config.users
       << " J=" << rep.config.group_size << " L=" << rep.length
       << " draws=" << rep.draws << " check=" << (rep.structured ? "reduced" : "dense")
       << '\n';
    for (const ReceiverRank &rr : rep.last_draw) {
        os << "receiver " << rr.user;
        if (rep.config.group_size > 1)
            os << '.' << rr.member;
        os << ": desired " << rr.desired << '/' << rep.expected_desired << " interference";
        if (rr.interferers.empty())
            os << " none";
        for (std::size_t i = 0; i < rr.interferers.size(); ++i)
            os << (i ? "," : " ") << rr.interferers[i];
        os << " joint " << rr.joint << '/' << rep.expected_joint
           << (rr.pass ? " ok" : " MISMATCH") << '\n';
    }
    os << "draws passed " << rep.passing_draws << '/' << rep.draws << '\n';
    os << (rep.pass ? "PASS" : "FAIL") << '\n';
    return os.str();
}

} // namespace blindia
