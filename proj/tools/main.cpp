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

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "blindia/analysis.hpp"
#include "blindia/beamform.hpp"
#include "blindia/channel.hpp"
#include "blindia/config.hpp"
#include "blindia/errors.hpp"
#include "blindia/matkernel.hpp"
#include "blindia/pattern.hpp"
#include "blindia/receiver.hpp"

namespace {

using namespace blindia;

void write_out(const std::string &path, const std::string &text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f)
        throw InvalidArgument("cannot open output file '" + path + "'");
    f << text;
}

int run_pattern(int tx, int users, bool emit_beamforming, const std::string &out) {
    const SwitchingPattern p = build_supersymbol(tx, users);
    std::string text = format_pattern(p);
    if (emit_beamforming) {
        const BeamformingSchedule s = build_beamforming(p);
        for (int k = 1; k <= users; ++k) {
            text += '\n';
            text += format_beamforming(s, k);
        }
    }
    write_out(out, text);
    return 0;
}

int run_verify(const SystemConfig &cfg, const std::string &out) {
    const AlignmentReport rep = verify_alignment(cfg);
    write_out(out, format_alignment_report(rep));
    return rep.pass ? 0 : 1;
}

int run_rate(const SystemConfig &cfg, bool as_json, const std::string &out) {
    const RateCurve curve = monte_carlo_rate(cfg);
    if (!as_json) {
        write_out(out, rate_curve_csv(curve));
        return 0;
    }
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const RatePoint &pt : curve.points) {
        nlohmann::ordered_json row;
        row["M"] = cfg.tx_modes;
        row["K"] = cfg.users;
        row["J"] = cfg.group_size;
        row["snr_db"] = pt.snr_db;
        row["trials"] = pt.trials;
        row["sum_rate_closed"] = pt.sum_rate_closed;
        row["sum_rate_sim"] = pt.sum_rate_sim;
        row["sum_rate_approx"] = pt.sum_rate_approx;
        row["stderr"] = pt.std_error;
        if (cfg.with_tdma)
            row["sum_rate_tdma"] = pt.sum_rate_tdma;
        arr.push_back(std::move(row));
    }
    write_out(out, arr.dump(2) + "\n");
    return 0;
}

int run_dof(const SystemConfig &cfg, const std::string &out) {
    const RateCurve curve = monte_carlo_rate(cfg);
    const double slope = dof_slope(curve);
    const double target = dof_target(cfg.tx_modes, cfg.users);
    const double rel = std::abs(slope / target - 1.0);
    const bool ok = rel <= 0.02;

    std::ostringstream os;
    os << "M=" << cfg.tx_modes << " K=" << cfg.users << " J=" << cfg.group_size
       << " trials=" << cfg.trials << '\n';
    os << "snr_db";
    for (double s : cfg.snr_db)
        os << ' ' << s;
    os << '\n';
    char buf[128];
    std::snprintf(buf, sizeof(buf), "slope %.6f\ntarget %.6f\nrel_error %.4f\n", slope,
                  target, rel);
    os << buf << (ok ? "PASS" : "FAIL") << '\n';
    write_out(out, os.str());
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// Built-in checks against hand-verified reference values.

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool check_mode_dwell() {
    static const int m3u1[6] = {1, 2, 1, 2, 1, 2};
    static const int m3u2[8] = {1, 1, 2, 2, 1, 1, 2, 2};
    static const int m4u1[6] = {1, 2, 3, 1, 2, 3};
    for (long t = 1; t <= 6; ++t)
        if (block1_mode(1, t, 3) != m3u1[t - 1] || block1_mode(1, t, 4) != m4u1[t - 1])
            return false;
    for (long t = 1; t <= 8; ++t)
        if (block1_mode(2, t, 3) != m3u2[t - 1])
            return false;
    for (long t = 1; t <= 5; ++t)
        if (block1_mode(1, t, 2) != 1 || block1_mode(3, t, 2) != 1)
            return false;
    return true;
}

bool rows_equal(const SwitchingPattern &p, int user, const std::vector<int> &want) {
    if (static_cast<long>(want.size()) != p.length)
        return false;
    for (long t = 1; t <= p.length; ++t)
        if (p.mode(user, t) != want[static_cast<std::size_t>(t - 1)])
            return false;
    return true;
}

bool check_single_switch() {
    const SwitchingPattern p22 = build_supersymbol(2, 2);
    if (p22.length != 3 || !rows_equal(p22, 1, {1, 2, 1}) || !rows_equal(p22, 2, {1, 1, 2}))
        return false;
    const SwitchingPattern p24 = build_supersymbol(2, 4);
    if (p24.length != 5)
        return false;
    for (int n = 1; n <= 4; ++n)
        for (long t = 1; t <= 5; ++t)
            if (p24.mode(n, t) != (t == n + 1 ? 2 : 1))
                return false;
    return true;
}

bool check_three_mode_rows() {
    const SwitchingPattern p = build_supersymbol(3, 2);
    return p.length == 8 && rows_equal(p, 1, {1, 2, 1, 2, 3, 3, 1, 2}) &&
           rows_equal(p, 2, {1, 1, 2, 2, 1, 2, 3, 3});
}

bool block_is(const AlignmentBlock &b, const std::vector<long> &b1, long b2) {
    return b.block1_times == b1 && b.block2_time == b2;
}

bool check_block_tables() {
    for (int n = 1; n <= 3; ++n) {
        const auto blks = enumerate_alignment_blocks(2, 3, n);
        if (blks.size() != 1 || !block_is(blks[0], {1}, 1 + n))
            return false;
    }
    const auto u1 = enumerate_alignment_blocks(3, 2, 1);
    const auto u2 = enumerate_alignment_blocks(3, 2, 2);
    if (u1.size() != 2 || u2.size() != 2)
        return false;
    if (!block_is(u1[0], {1, 2}, 5) || !block_is(u1[1], {3, 4}, 6) ||
        !block_is(u2[0], {1, 3}, 7) || !block_is(u2[1], {2, 4}, 8))
        return false;

    const std::vector<std::vector<long>> want1 = {{1, 2, 9}, {3, 4, 10}, {5, 6, 11}, {7, 8, 12}};
    const std::vector<std::vector<long>> want2 = {{1, 3, 13}, {2, 4, 14}, {5, 7, 15}, {6, 8, 16}};
    const std::vector<std::vector<long>> want3 = {{1, 5, 17}, {2, 6, 18}, {3, 7, 19}, {4, 8, 20}};
    const std::vector<const std::vector<std::vector<long>> *> want = {&want1, &want2, &want3};
    for (int n = 1; n <= 3; ++n) {
        const auto blks = enumerate_alignment_blocks(3, 3, n);
        if (blks.size() != 4)
            return false;
        for (int b = 0; b < 4; ++b) {
            const auto &w = (*want[static_cast<std::size_t>(n - 1)])[static_cast<std::size_t>(b)];
            if (!block_is(blks[static_cast<std::size_t>(b)], {w[0], w[1]}, w[2]))
                return false;
        }
    }
    return true;
}

bool check_repetition_matrices() {
    const SwitchingPattern p22 = build_supersymbol(2, 2);
    const BeamformingSchedule s22 = build_beamforming(p22);
    Eigen::MatrixXi w1(6, 2), w2(6, 2);
    w1 << 1, 0, 0, 1, 1, 0, 0, 1, 0, 0, 0, 0;
    w2 << 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 1;
    if (s22.dense(1) != w1 || s22.dense(2) != w2)
        return false;

    // Three users, two modes: stacked identities at the shared instant and
    // at each user's own dedicated instant.
    const SwitchingPattern p23 = build_supersymbol(2, 3);
    const BeamformingSchedule s23 = build_beamforming(p23);
    for (int n = 1; n <= 3; ++n) {
        const Eigen::MatrixXi W = s23.dense(n);
        if (W.rows() != 8 || W.cols() != 2)
            return false;
        for (long t = 1; t <= 4; ++t) {
            const bool live = t == 1 || t == static_cast<long>(n) + 1;
            Eigen::MatrixXi blockt = W.block((t - 1) * 2, 0, 2, 2);
            if (live && blockt != Eigen::MatrixXi::Identity(2, 2))
                return false;
            if (!live && blockt != Eigen::MatrixXi::Zero(2, 2))
                return false;
        }
    }

    const SwitchingPattern p33 = build_supersymbol(3, 3);
    const BeamformingSchedule s33 = build_beamforming(p33);
    for (int n = 1; n <= 3; ++n) {
        const Eigen::MatrixXi W = s33.dense(n);
        if (W.rows() != 60 || W.cols() != 12)
            return false;
        for (long b = 0; b < 4; ++b) {
            const auto &ts = s33.slots[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(b)];
            long ones = 0;
            for (long t = 1; t <= 20; ++t) {
                Eigen::MatrixXi blockt = W.block((t - 1) * 3, b * 3, 3, 3);
                const bool live = std::find(ts.begin(), ts.end(), t) != ts.end();
                if (live && blockt != Eigen::MatrixXi::Identity(3, 3))
                    return false;
                if (!live && blockt != Eigen::MatrixXi::Zero(3, 3))
                    return false;
                ones += blockt.sum();
            }
            if (ones != 9)
                return false;
        }
    }
    return true;
}

bool check_stream_power() {
    if (!close(stream_power(2, 2, 8.0).per_stream_power, 3.0, 1e-12))
        return false;
    if (!close(stream_power(3, 2, 9.0).per_stream_power, 2.0, 1e-12))
        return false;
    if (!close(stream_power(2, 3, 6.0).per_stream_power, 2.0, 1e-12))
        return false;
    // Energy over the supersymbol equals the per-symbol budget times L.
    for (int M = 2; M <= 4; ++M) {
        for (int K = 1; K <= 4; ++K) {
            const SwitchingPattern p = build_supersymbol(M, K);
            const double P = 7.5;
            const double ps = stream_power(M, K, P).per_stream_power;
            const double energy = static_cast<double>(K) * M * M * p.blocks_per_user * ps;
            if (!close(energy, P * static_cast<double>(p.length), 1e-9 * P * p.length))
                return false;
        }
    }
    return true;
}

bool check_aligned_interference() {
    Rng rng(404);
    {
        const SwitchingPattern p = build_supersymbol(2, 2);
        const BeamformingSchedule s = build_beamforming(p);
        const ChannelRealization ch = sample_channels(2, 2, 1, rng);
        const EffectiveChannel eff = effective_channel(ch, p, s, 1);
        const CMatrix &G11 = eff.per_tx[0];
        const CMatrix &G12 = eff.per_tx[1];
        if ((G11.row(0) - ch.row(1, 1, 1)).norm() != 0.0)
            return false;
        if ((G11.row(1) - ch.row(1, 1, 2)).norm() != 0.0)
            return false;
        if (G11.row(2).norm() != 0.0)
            return false;
        if ((G12.row(0) - ch.row(1, 1, 1)).norm() != 0.0 || G12.row(1).norm() != 0.0 ||
            (G12.row(2) - ch.row(1, 1, 1)).norm() != 0.0)
            return false;
        if (numeric_rank(G12).rank != 1)
            return false;
    }
    {
        const SwitchingPattern p = build_supersymbol(3, 2);
        const BeamformingSchedule s = build_beamforming(p);
        const ChannelRealization ch = sample_channels(3, 2, 1, rng);
        const EffectiveChannel eff = effective_channel(ch, p, s, 1);
        if (numeric_rank(eff.per_tx[0]).rank != 6 || numeric_rank(eff.per_tx[1]).rank != 2)
            return false;
        // Interfering columns live exactly on the interferer's block instants.
        const std::vector<std::vector<long>> supports = {{1, 3, 7}, {2, 4, 8}};
        for (long b = 0; b < 2; ++b) {
            for (long t = 1; t <= 8; ++t) {
                const bool live = std::find(supports[static_cast<std::size_t>(b)].begin(),
                                            supports[static_cast<std::size_t>(b)].end(),
                                            t) != supports[static_cast<std::size_t>(b)].end();
                const double nrm = eff.per_tx[1].block(t - 1, b * 3, 1, 3).norm();
                if (live != (nrm > 0.0))
                    return false;
            }
        }
    }
    return true;
}

bool projector_matches(const SwitchingPattern &p, int rx, long ordinal,
                       const std::vector<long> &gathered,
                       const std::vector<std::vector<double>> &want) {
    const BlockProjector proj = build_block_projector(p, rx, ordinal);
    if (proj.gathered != gathered)
        return false;
    for (std::size_t r = 0; r < want.size(); ++r)
        for (std::size_t c = 0; c < want[r].size(); ++c)
            if (!close(proj.projection(static_cast<Eigen::Index>(r),
                                       static_cast<Eigen::Index>(c)),
                       want[r][c], 1e-12))
                return false;
    return true;
}

bool check_projectors() {
    const double r2 = 1.0 / std::sqrt(2.0);
    if (!projector_matches(build_supersymbol(2, 2), 1, 1, {1, 2, 3},
                           {{r2, 0, -r2}, {0, 1, 0}}))
        return false;
    if (!projector_matches(build_supersymbol(2, 4), 1, 1, {1, 2, 3, 4, 5},
                           {{0.5, 0, -0.5, -0.5, -0.5}, {0, 1, 0, 0, 0}}))
        return false;
    if (!projector_matches(build_supersymbol(3, 2), 1, 1, {1, 2, 5, 7, 8},
                           {{r2, 0, 0, -r2, 0}, {0, r2, 0, 0, -r2}, {0, 0, 1, 0, 0}}))
        return false;
    return true;
}

bool check_projected_channel() {
    const SwitchingPattern p = build_supersymbol(2, 2);
    const BeamformingSchedule s = build_beamforming(p);
    Rng rng(77);
    const ChannelRealization ch = sample_channels(2, 2, 1, rng);
    const PowerAllocation pa = stream_power(2, 2, 8.0);
    CVector streams(4);
    streams << cxd(1.0, -0.5), cxd(-0.25, 2.0), cxd(0.75, 0.75), cxd(-1.5, 0.25);
    const auto rx = simulate_transmission(ch, p, s, pa, streams, rng, false);

    const BlockProjector proj = build_block_projector(p, 1, 1);
    const ZFOutput out = zf_decode(proj, ch, rx[0]);
    const double w = 1.0 / std::sqrt(2.0);
    if ((out.effective.row(0) - w * ch.row(1, 1, 1)).norm() > 1e-14)
        return false;
    if ((out.effective.row(1) - ch.row(1, 1, 2)).norm() > 1e-14)
        return false;
    const CVector want = out.effective * (std::sqrt(pa.per_stream_power) * streams.head(2));
    return (out.projected - want).norm() <= 1e-9 * want.norm();
}

bool check_raw_differences() {
    const SwitchingPattern p = build_supersymbol(2, 3);
    CVector y(4);
    y << cxd(5.0, 1.0), cxd(2.0, -1.0), cxd(1.0, 2.0), cxd(-3.0, 0.0);
    const auto combined = blind_cancel(p, 1, y);
    if (combined.size() != 1)
        return false;
    const cxd want0 = y(0) - y(2) - y(3);
    return combined[0](0) == want0 && combined[0](1) == y(1);
}

bool check_dimension_split() {
    auto run = [](int M, int K, long desired, long inter, long joint) {
        SystemConfig cfg;
        cfg.tx_modes = M;
        cfg.users = K;
        cfg.trials = 3;
        cfg.seed = 11;
        const AlignmentReport rep = verify_alignment(cfg);
        if (!rep.pass || rep.expected_desired != desired || rep.expected_joint != joint)
            return false;
        for (const ReceiverRank &rr : rep.last_draw) {
            if (rr.desired != desired || rr.joint != joint)
                return false;
            for (long ir : rr.interferers)
                if (ir != inter)
                    return false;
        }
        return true;
    };
    return run(2, 2, 2, 1, 3) && run(3, 2, 6, 2, 8) && run(3, 3, 12, 4, 20);
}

bool check_rate_slopes() {
    auto run = [](int M, int K) {
        SystemConfig cfg;
        cfg.tx_modes = M;
        cfg.users = K;
        cfg.trials = 2000;
        cfg.seed = 5;
        cfg.snr_db = parse_snr_grid("40:10:70");
        const double slope = dof_slope(monte_carlo_rate(cfg));
        return std::abs(slope / dof_target(M, K) - 1.0) <= 0.02;
    };
    return run(2, 2) && run(3, 3);
}

bool check_complement() {
    CMatrix V(3, 1);
    V << 1.0, 0.0, 1.0;
    const CMatrix Q = orthonormal_complement(V);
    if (Q.rows() != 3 || Q.cols() != 2)
        return false;
    if ((Q.adjoint() * Q - CMatrix::Identity(2, 2)).norm() > 1e-12)
        return false;
    if ((Q.adjoint() * V).norm() > 1e-12)
        return false;
    // The textbook row pair for this subspace must lie in span(Q).
    const double r2 = 1.0 / std::sqrt(2.0);
    CMatrix Prows(3, 2);
    Prows << r2, 0.0, 0.0, 1.0, -r2, 0.0;
    const CMatrix resid = Prows - Q * (Q.adjoint() * Prows);
    return resid.norm() <= 1e-12;
}

bool check_approx_identity() {
    Rng rng(909);
    const ChannelRealization ch = sample_channels(3, 2, 1, rng);
    const int M = 3, K = 2;
    auto gap = [&](double P) {
        return closed_form_rate(ch, 1, 1, P) - high_snr_approx(ch, 1, 1, P);
    };
    const double P = 1000.0;
    const double p = stream_power(M, K, P).per_stream_power;
    const double w = 1.0 / std::sqrt(static_cast<double>(K));
    CMatrix H(M, M);
    for (int m = 1; m < M; ++m)
        H.row(m - 1) = w * ch.row(1, 1, m);
    H.row(M - 1) = ch.row(1, 1, M);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H * H.adjoint());
    double want = 0.0;
    for (int i = 0; i < M; ++i)
        want += std::log2(1.0 + 1.0 / (p * es.eigenvalues()(i)));
    want /= static_cast<double>(M + K - 1);
    if (!close(gap(P), want, 1e-9))
        return false;
    return gap(10.0) > gap(100.0) && gap(100.0) > gap(1000.0) && gap(1000.0) > 0.0;
}

int run_selftest(const std::string &out) {
    const std::vector<std::pair<const char *, std::function<bool()>>> checks = {
        {"mode schedule dwell and period", check_mode_dwell},
        {"single-switch supersymbols", check_single_switch},
        {"three-mode supersymbol rows", check_three_mode_rows},
        {"alignment block tables", check_block_tables},
        {"stream repetition matrices", check_repetition_matrices},
        {"per-stream power", check_stream_power},
        {"aligned interference shape", check_aligned_interference},
        {"cancellation projectors", check_projectors},
        {"projected decoding channel", check_projected_channel},
        {"raw difference combining", check_raw_differences},
        {"alignment dimension split", check_dimension_split},
        {"sum-rate scaling slopes", check_rate_slopes},
        {"complement annihilation", check_complement},
        {"high-power approximation identity", check_approx_identity},
    };

    std::ostringstream os;
    int failed = 0;
    for (const auto &[name, fn] : checks) {
        bool ok = false;
        try {
            ok = fn();
        } catch (const std::exception &e) {
            os << "FAIL " << name << " (" << e.what() << ")\n";
            ++failed;
            continue;
        }
        os << (ok ? "ok   " : "FAIL ") << name << '\n';
        if (!ok)
            ++failed;
    }
    os << checks.size() - failed << '/' << checks.size() << " checks passed\n";
    os << (failed == 0 ? "PASS" : "FAIL") << '\n';
    write_out(out, os.str());
    return failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"blind interference alignment toolkit for the reconfigurable-antenna MISO downlink"};
    app.require_subcommand(1);

    int tx = 2, users = 2, group = 1;
    long trials = 0;
    std::uint64_t seed = 1;
    std::string snr_text, out_path;
    bool as_json = false, with_tdma = false, emit_beamforming = false;

    auto add_system = [&](CLI::App *sub, bool with_group) {
        sub->add_option("--tx", tx, "transmit antenna modes M")->capture_default_str();
        sub->add_option("--users", users, "user count K")->capture_default_str();
        if (with_group)
            sub->add_option("--group-size", group, "receivers per user group J")
                ->capture_default_str();
        sub->add_option("--out", out_path, "write output to a file instead of stdout");
    };

    CLI::App *sub_pattern = app.add_subcommand("pattern", "print the mode switching pattern");
    add_system(sub_pattern, false);
    sub_pattern->add_flag("--emit-beamforming", emit_beamforming,
                          "also print each user's 0/1 beamforming matrix");

    CLI::App *sub_verify =
        app.add_subcommand("verify", "check the interference dimension split on fresh draws");
    add_system(sub_verify, true);
    sub_verify->add_option("--trials", trials, "channel draws")->default_val(100);
    sub_verify->add_option("--seed", seed, "master seed")->capture_default_str();

    CLI::App *sub_rate = app.add_subcommand("rate", "Monte Carlo sum-rate curve");
    add_system(sub_rate, true);
    sub_rate->add_option("--snr", snr_text, "SNR points, dB: list a,b,c or start:step:stop")
        ->required();
    sub_rate->add_option("--trials", trials, "Monte Carlo trials")->default_val(1000);
    sub_rate->add_option("--seed", seed, "master seed")->capture_default_str();
    sub_rate->add_flag("--json", as_json, "emit JSON instead of CSV");
    sub_rate->add_flag("--tdma", with_tdma, "append a time-sharing reference column");

    CLI::App *sub_dof = app.add_subcommand("dof", "fit the sum-rate slope against log2 power");
    add_system(sub_dof, true);
    sub_dof->add_option("--snr", snr_text, "SNR points, dB")->default_val("40:10:70");
    sub_dof->add_option("--trials", trials, "Monte Carlo trials")->default_val(2000);
    sub_dof->add_option("--seed", seed, "master seed")->capture_default_str();

    CLI::App *sub_selftest =
        app.add_subcommand("selftest", "run the built-in reference-value checks");
    sub_selftest->add_option("--out", out_path, "write output to a file instead of stdout");

    try {
        app.parse(argc, argv);

        SystemConfig cfg;
        cfg.tx_modes = tx;
        cfg.users = users;
        cfg.group_size = group;
        cfg.seed = seed;
        cfg.with_tdma = with_tdma;
        if (trials > 0)
            cfg.trials = trials;
        if (!snr_text.empty())
            cfg.snr_db = parse_snr_grid(snr_text);

        if (sub_pattern->parsed())
            return run_pattern(tx, users, emit_beamforming, out_path);
        if (sub_verify->parsed())
            return run_verify(cfg, out_path);
        if (sub_rate->parsed())
            return run_rate(cfg, as_json, out_path);
        if (sub_dof->parsed())
            return run_dof(cfg, out_path);
        return run_selftest(out_path);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
