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

#ifndef BLINDIA_RECEIVER_HPP
#define BLINDIA_RECEIVER_HPP

#include <vector>

#include "blindia/channel.hpp"
#include "blindia/matkernel.hpp"
#include "blindia/pattern.hpp"

namespace blindia {

// Channel-independent zero forcer for one (receiver, alignment block) pair.
// It touches only the K*M - K + 1 instants relevant to the block: the M
// instants of the receiver's own block plus, for each of its M-1 common
// instants, the dedicated instants of the K-1 interfering blocks live there.
// The projection depends on the switching pattern alone, never on a channel
// draw, and its rows are orthonormal so unit noise stays unit.
struct BlockProjector {
    int rx_user = 0;
    int tx_modes = 0; // M
    int users = 0;    // K
    long block_ordinal = 0;

    std::vector<long> gathered; // ascending instants, K*M - K + 1 of them

    // M x gathered.size(); entries 0, 1, or +-1/sqrt(K).
    Eigen::MatrixXd projection;

    // Factored form of the same map. own_pos[a] is the position (index into
    // `gathered`) of the a-th own instant; cancel_pos[a] the positions
    // subtracted from it. Row M-1 has no subtractions.
    std::vector<long> own_pos;
    std::vector<std::vector<long>> cancel_pos;
};

BlockProjector build_block_projector(const SwitchingPattern &p, int rx_user, long block_ordinal);

struct ZFOutput {
    int rx_user = 0;
    int rx_member = 0;
    long block_ordinal = 0;

    // M x M decoding channel: rows 1..M-1 are the receiver's mode rows scaled
    // by 1/sqrt(K), row M is the mode-M row unscaled. Noise covariance after
    // projection is the identity.
    CMatrix effective;

    CVector projected; // M entries
};

// Applies the projector to the received supersymbol. The first M-1 outputs
// are computed as (y_own - sum of interferer dedicated samples) / sqrt(K),
// which is the factored evaluation of `projection`; the last output is the
// own dedicated sample untouched.
ZFOutput zf_decode(const BlockProjector &proj, const ChannelRealization &ch,
                   const ReceivedBlock &y);

// Interference stripping without the noise-normalizing scale: per block of
// the receiver's user, the M-1 raw differences followed by the dedicated
// sample. zf_decode equals this up to the diagonal (1/sqrt(K), ..., 1).
std::vector<CVector> blind_cancel(const SwitchingPattern &p, int rx_user, const CVector &y);

// Orthonormal basis (L x M*B) of the subspace untouched by every interfering
// user's blocks; a pattern-only object used to cross-check the per-block
// projectors against a direct global construction.
CMatrix interference_complement(const SwitchingPattern &p, int rx_user,
                                double rel_tol = kDefaultRelTol);

} // namespace blindia

#endif
