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

#include "blindia/receiver.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "blindia/errors.hpp"

namespace blindia {

namespace {

long position_of(const std::vector<long> &sorted, long value) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), value);
    if (it == sorted.end() || *it != value)
        throw ConstructionError("gathered instant lookup failed");
    return it - sorted.begin();
}

// Shared by zf_decode and blind_cancel so the two agree bit for bit.
CVector combine(const BlockProjector &proj, const CVector &y) {
    const int M = proj.tx_modes;
    CVector c(M);
    for (int a = 0; a < M; ++a) {
        cxd acc = y(proj.gathered[static_cast<std::size_t>(proj.own_pos[a])] - 1);
        for (long pos : proj.cancel_pos[static_cast<std::size_t>(a)])
            acc -= y(proj.gathered[static_cast<std::size_t>(pos)] - 1);
        c(a) = acc;
    }
    return c;
}

} // namespace

BlockProjector build_block_projector(const SwitchingPattern &p, int rx_user,
                                     long block_ordinal) {
    if (rx_user < 1 || rx_user > p.users)
        throw InvalidArgument("receiver user out of range");
    if (block_ordinal < 1 || block_ordinal > p.blocks_per_user)
        throw InvalidArgument("block ordinal out of range");

    const int M = p.tx_modes;
    const int K = p.users;
    const AlignmentBlock &own = p.block(rx_user, block_ordinal);
    const auto lut = block_lookup(p);

    BlockProjector proj;
    proj.rx_user = rx_user;
    proj.tx_modes = M;
    proj.users = K;
    proj.block_ordinal = block_ordinal;

    // cancel_times[a]: dedicated instants of the interfering blocks live at
    // the a-th own common instant. Those blocks must be pairwise distinct per
    // interferer and the receiver's own mode must not move between the common
    // instant and the dedicated one, otherwise the subtraction would not
    // cancel.
    std::vector<std::vector<long>> cancel_times(static_cast<std::size_t>(M - 1));
    std::set<long> all{own.block2_time};
    for (long t : own.block1_times)
        all.insert(t);
    for (int a = 0; a < M - 1; ++a) {
        const long tau = own.block1_times[static_cast<std::size_t>(a)];
        for (int j = 1; j <= K; ++j) {
            if (j == rx_user)
                continue;
            const long o = lut[j - 1][tau - 1];
            if (o == 0)
                throw ConstructionError("common instant not covered by an interfering block");
            const long dedicated = p.block(j, o).block2_time;
            if (p.mode(rx_user, dedicated) != p.mode(rx_user, tau))
                throw ConstructionError("receiver mode moves across an interfering block");
            if (!all.insert(dedicated).second)
                throw ConstructionError("interfering blocks collide in the gathered set");
            cancel_times[static_cast<std::size_t>(a)].push_back(dedicated);
        }
    }

    proj.gathered.assign(all.begin(), all.end());
    if (static_cast<long>(proj.gathered.size()) != static_cast<long>(K) * M - K + 1)
        throw ConstructionError("gathered set has unexpected size");

    proj.own_pos.reserve(static_cast<std::size_t>(M));
    for (long t : own.block1_times)
        proj.own_pos.push_back(position_of(proj.gathered, t));
    proj.own_pos.push_back(position_of(proj.gathered, own.block2_time));

    proj.cancel_pos.resize(static_cast<std::size_t>(M));
    const double w = 1.0 / std::sqrt(static_cast<double>(K));
    proj.projection = Eigen::MatrixXd::Zero(M, static_cast<Eigen::Index>(proj.gathered.size()));
    for (int a = 0; a < M - 1; ++a) {
        proj.projection(a, proj.own_pos[static_cast<std::size_t>(a)]) = w;
        for (long t : cancel_times[static_cast<std::size_t>(a)]) {
            const long pos = position_of(proj.gathered, t);
            proj.cancel_pos[static_cast<std::size_t>(a)].push_back(pos);
            proj.projection(a, pos) = -w;
        }
    }
    proj.projection(M - 1, proj.own_pos[static_cast<std::size_t>(M - 1)]) = 1.0;
    return proj;
}

ZFOutput zf_decode(const BlockProjector &proj, const ChannelRealization &ch,
                   const ReceivedBlock &y) {
    if (ch.tx_modes != proj.tx_modes || ch.users != proj.users)
        throw InvalidArgument("channel dimensions disagree with the projector");
    if (y.rx_user != proj.rx_user)
        throw InvalidArgument("received block belongs to a different user");
    require_finite(y.samples, "zf_decode");

    const int M = proj.tx_modes;
    const double w = 1.0 / std::sqrt(static_cast<double>(proj.users));

    ZFOutput out;
    out.rx_user = proj.rx_user;
    out.rx_member = y.rx_member;
    out.block_ordinal = proj.block_ordinal;

    out.projected = combine(proj, y.samples);
    for (int a = 0; a < M - 1; ++a)
        out.projected(a) *= w;

    out.effective.resize(M, M);
    for (int m = 1; m < M; ++m)
        out.effective.row(m - 1) = w * ch.row(proj.rx_user, y.rx_member, m);
    out.effective.row(M - 1) = ch.row(proj.rx_user, y.rx_member, M);
    return out;
}

std::vector<CVector> blind_cancel(const SwitchingPattern &p, int rx_user, const CVector &y) {
    if (y.size() != p.length)
        throw InvalidArgument("blind_cancel: sample vector has wrong length");
    std::vector<CVector> out;
    out.reserve(static_cast<std::size_t>(p.blocks_per_user));
    for (long b = 1; b <= p.blocks_per_user; ++b)
        out.push_back(combine(build_block_projector(p, rx_user, b), y));
    return out;
}

CMatrix interference_complement(const SwitchingPattern &p, int rx_user, double rel_tol) {
    if (rx_user < 1 || rx_user > p.users)
        throw InvalidArgument("receiver user out of range");
    const long cols = static_cast<long>(p.users - 1) * p.blocks_per_user;
    if (cols == 0)
        return CMatrix::Identity(p.length, p.length);

    CMatrix V = CMatrix::Zero(p.length, cols);
    long c = 0;
    for (int j = 1; j <= p.users; ++j) {
        if (j == rx_user)
            continue;
        for (const AlignmentBlock &blk : p.blocks[static_cast<std::size_t>(j - 1)]) {
            for (long t : blk.block1_times)
                V(t - 1, c) = 1.0;
            V(blk.block2_time - 1, c) = 1.0;
            ++c;
        }
    }
    return orthonormal_complement(V, rel_tol);
}

} // namespace blindia
