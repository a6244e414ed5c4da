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

#ifndef BLINDIA_PATTERN_HPP
#define BLINDIA_PATTERN_HPP

#include <string>
#include <vector>

namespace blindia {

inline constexpr long kDefaultSupersymbolCap = 100000;

// One alignment block of a user: the M symbol instants over which that
// user's antenna mode sweeps 1..M while every other user's mode is frozen.
// block1_times holds the M-1 instants in the common part of the supersymbol
// (ascending; the user's mode at the a-th entry is a+1... i.e. mode a+1 at
// index a), block2_time the single completing instant in the user's own
// dedicated segment, where the mode is M.
struct AlignmentBlock {
    int user = 0;            // 1-based
    long building_block = 0; // 1-based coarse index within the common part
    long offset = 0;         // 1-based position inside the building block
    long ordinal = 0;        // 1-based rank in the user's block list
    std::vector<long> block1_times;
    long block2_time = 0;
};

// Mode schedule of all users over one supersymbol, plus the block
// decomposition that the schedule was built from. Modes and times are
// 1-based; modes_[k-1][t-1] is user k's mode at instant t.
struct SwitchingPattern {
    int tx_modes = 0;  // M
    int users = 0;     // K
    long block1_len = 0;      // (M-1)^K
    long block2_len = 0;      // K (M-1)^(K-1)
    long blocks_per_user = 0; // B = (M-1)^(K-1)
    long length = 0;          // L = block1_len + block2_len

    std::vector<std::vector<int>> modes;              // [user][time]
    std::vector<std::vector<AlignmentBlock>> blocks;  // [user][ordinal]

    int mode(int user, long t) const { return modes[user - 1][t - 1]; }
    const AlignmentBlock &block(int user, long ordinal) const {
        return blocks[user - 1][ordinal - 1];
    }
};

struct PatternViolation {
    int user = 0;
    long block_ordinal = 0; // 0 when not tied to one block
    std::string detail;
};

// Mode of `user` at instant t of the common part, before the dedicated
// segments are appended. Piecewise constant with period (M-1)^user and
// dwell (M-1)^(user-1); identically 1 when M == 2.
int block1_mode(int user, long t, int tx_modes);

// All alignment blocks of one user, ordered by (building_block, offset).
std::vector<AlignmentBlock> enumerate_alignment_blocks(int tx_modes, int users, int user);

SwitchingPattern build_supersymbol(int tx_modes, int users,
                                   long length_cap = kDefaultSupersymbolCap);

// Structural validation of an arbitrary schedule against its block
// decomposition. Checks only permutation-invariant properties, so a pattern
// with relabeled symbol instants still verifies. Empty result == valid.
std::vector<PatternViolation> verify_pattern(const SwitchingPattern &p);

// [user-1][t-1] -> ordinal of the user's block containing instant t, or 0.
std::vector<std::vector<long>> block_lookup(const SwitchingPattern &p);

// Text dump: header line, then one mode row per user with a marker between
// the common part and the dedicated segments.
std::string format_pattern(const SwitchingPattern &p);

} // namespace blindia

#endif
