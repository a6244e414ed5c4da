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

#include "blindia/pattern.hpp"

#include <map>
#include <set>
#include <sstream>

#include "blindia/errors.hpp"

namespace blindia {

namespace {

long ipow(long base, int exp) {
    long r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > (1L << 50) / (base > 1 ? base : 1))
            throw UnsupportedConfiguration("configuration overflows the supersymbol length");
        r *= base;
    }
    return r;
}

void require_system(int tx_modes, int users) {
    if (tx_modes < 2)
        throw UnsupportedConfiguration("at least two antenna modes are required");
    if (users < 1)
        throw UnsupportedConfiguration("at least one user is required");
}

} // namespace

int block1_mode(int user, long t, int tx_modes) {
    require_system(tx_modes, user);
    if (t < 1)
        throw InvalidArgument("time index must be positive");
    const long dwell = ipow(tx_modes - 1, user - 1);
    const long period = dwell * (tx_modes - 1);
    const long r = (t - 1) % period;
    return static_cast<int>(r / dwell) + 1;
}

std::vector<AlignmentBlock> enumerate_alignment_blocks(int tx_modes, int users, int user) {
    require_system(tx_modes, users);
    if (user < 1 || user > users)
        throw InvalidArgument("user index out of range");

    const int M = tx_modes;
    const long dwell = ipow(M - 1, user - 1);        // offsets per building block
    const long period = dwell * (M - 1);
    const long coarse = ipow(M - 1, users - user);   // building blocks
    const long B = ipow(M - 1, users - 1);
    const long block1_len = ipow(M - 1, users);

    std::vector<AlignmentBlock> out;
    out.reserve(static_cast<std::size_t>(coarse * dwell));
    for (long m = 1; m <= coarse; ++m) {
        for (long i = 1; i <= dwell; ++i) {
            AlignmentBlock blk;
            blk.user = user;
            blk.building_block = m;
            blk.offset = i;
            blk.ordinal = (m - 1) * dwell + i;
            blk.block1_times.reserve(static_cast<std::size_t>(M - 1));
            for (int a = 0; a < M - 1; ++a)
                blk.block1_times.push_back((m - 1) * period + i + a * dwell);
            blk.block2_time = block1_len + static_cast<long>(user - 1) * B + blk.ordinal;
            out.push_back(std::move(blk));
        }
    }
    return out;
}

SwitchingPattern build_supersymbol(int tx_modes, int users, long length_cap) {
    require_system(tx_modes, users);

    SwitchingPattern p;
    p.tx_modes = tx_modes;
    p.users = users;
    p.block1_len = ipow(tx_modes - 1, users);
    p.blocks_per_user = ipow(tx_modes - 1, users - 1);
    p.block2_len = static_cast<long>(users) * p.blocks_per_user;
    p.length = p.block1_len + p.block2_len;
    if (p.length > length_cap)
        throw UnsupportedConfiguration("supersymbol length " + std::to_string(p.length) +
                                       " exceeds the cap " + std::to_string(length_cap));

    p.blocks.resize(static_cast<std::size_t>(users));
    for (int n = 1; n <= users; ++n)
        p.blocks[static_cast<std::size_t>(n - 1)] =
            enumerate_alignment_blocks(tx_modes, users, n);

    p.modes.assign(static_cast<std::size_t>(users),
                   std::vector<int>(static_cast<std::size_t>(p.length), 0));
    for (int k = 1; k <= users; ++k)
        for (long t = 1; t <= p.block1_len; ++t)
            p.modes[k - 1][t - 1] = block1_mode(k, t, tx_modes);

    // Dedicated segments: user n finishes each of its blocks with mode M
    // while everyone else replays the mode it held during that block.
    for (int n = 1; n <= users; ++n) {
        for (const AlignmentBlock &blk : p.blocks[static_cast<std::size_t>(n - 1)]) {
            p.modes[n - 1][blk.block2_time - 1] = tx_modes;
            for (int j = 1; j <= users; ++j) {
                if (j == n)
                    continue;
                p.modes[j - 1][blk.block2_time - 1] =
                    block1_mode(j, blk.block1_times.front(), tx_modes);
            }
        }
    }
    return p;
}

std::vector<std::vector<long>> block_lookup(const SwitchingPattern &p) {
    std::vector<std::vector<long>> lut(
        static_cast<std::size_t>(p.users),
        std::vector<long>(static_cast<std::size_t>(p.length), 0));
    for (int k = 1; k <= p.users; ++k) {
        for (const AlignmentBlock &blk : p.blocks[static_cast<std::size_t>(k - 1)]) {
            for (long t : blk.block1_times)
                lut[k - 1][t - 1] = blk.ordinal;
            lut[k - 1][blk.block2_time - 1] = blk.ordinal;
        }
    }
    return lut;
}

std::vector<PatternViolation> verify_pattern(const SwitchingPattern &p) {
    std::vector<PatternViolation> v;
    auto flag = [&v](int user, long ordinal, std::string detail) {
        v.push_back({user, ordinal, std::move(detail)});
    };

    const int M = p.tx_modes;
    const int K = p.users;
    if (M < 2 || K < 1 || p.length <= 0) {
        flag(0, 0, "degenerate dimensions");
        return v;
    }
    if (static_cast<int>(p.modes.size()) != K ||
        static_cast<int>(p.blocks.size()) != K) {
        flag(0, 0, "mode table or block list has wrong user count");
        return v;
    }
    for (int k = 1; k <= K; ++k) {
        if (static_cast<long>(p.modes[k - 1].size()) != p.length) {
            flag(k, 0, "mode row has wrong length");
            return v;
        }
        for (long t = 1; t <= p.length; ++t) {
            const int m = p.mode(k, t);
            if (m < 1 || m > M)
                flag(k, 0, "mode out of range at instant " + std::to_string(t));
        }
    }

    // coverage[t-1]: how many blocks (over all users) contain instant t.
    std::vector<int> coverage(static_cast<std::size_t>(p.length), 0);

    for (int n = 1; n <= K; ++n) {
        const auto &blks = p.blocks[static_cast<std::size_t>(n - 1)];
        if (static_cast<long>(blks.size()) != p.blocks_per_user)
            flag(n, 0, "wrong number of alignment blocks");

        std::set<long> seen;
        for (const AlignmentBlock &blk : blks) {
            if (static_cast<int>(blk.block1_times.size()) != M - 1) {
                flag(n, blk.ordinal, "wrong block size");
                continue;
            }
            std::vector<long> times = blk.block1_times;
            times.push_back(blk.block2_time);
            bool in_range = true;
            for (long t : times) {
                if (t < 1 || t > p.length) {
                    flag(n, blk.ordinal, "instant out of range");
                    in_range = false;
                } else if (!seen.insert(t).second) {
                    flag(n, blk.ordinal, "instant reused across the user's blocks");
                }
            }
            if (!in_range)
                continue;
            for (long t : times)
                ++coverage[t - 1];

            // The owner must sweep modes 1..M in order across the block.
            for (int a = 0; a < M; ++a) {
                if (p.mode(n, times[static_cast<std::size_t>(a)]) != a + 1) {
                    flag(n, blk.ordinal, "owner mode sweep broken at instant " +
                                             std::to_string(times[static_cast<std::size_t>(a)]));
                    break;
                }
            }
            // Everyone else must hold still over the whole block.
            for (int j = 1; j <= K; ++j) {
                if (j == n)
                    continue;
                const int ref = p.mode(j, times.front());
                for (long t : times) {
                    if (p.mode(j, t) != ref) {
                        flag(n, blk.ordinal, "user " + std::to_string(j) +
                                                 " switches inside the block");
                        break;
                    }
                }
            }
        }

        long full_mode_count = 0;
        for (long t = 1; t <= p.length; ++t)
            if (p.mode(n, t) == M)
                ++full_mode_count;
        if (full_mode_count != p.blocks_per_user)
            flag(n, 0, "mode " + std::to_string(M) + " used " +
                           std::to_string(full_mode_count) + " times, expected " +
                           std::to_string(p.blocks_per_user));
    }

    if (K == 1) {
        // With one user the shared/dedicated distinction is empty; the lone
        // block chain must simply tile the supersymbol.
        for (long t = 1; t <= p.length; ++t)
            if (coverage[t - 1] != 1)
                flag(0, 0, "instant " + std::to_string(t) + " lies in " +
                               std::to_string(coverage[t - 1]) + " blocks");
    } else {
        long shared = 0, exclusive = 0;
        for (long t = 1; t <= p.length; ++t) {
            if (coverage[t - 1] == K)
                ++shared;
            else if (coverage[t - 1] == 1)
                ++exclusive;
            else
                flag(0, 0, "instant " + std::to_string(t) + " lies in " +
                               std::to_string(coverage[t - 1]) + " blocks");
        }
        if (shared != p.block1_len || exclusive != p.block2_len)
            flag(0, 0, "block coverage does not split into common and dedicated parts");
    }

    // Each block's common instants must hit pairwise different blocks of
    // every other user, otherwise the per-block receivers interfere.
    const auto lut = block_lookup(p);
    for (int n = 1; n <= K; ++n) {
        for (const AlignmentBlock &blk : p.blocks[static_cast<std::size_t>(n - 1)]) {
            for (int j = 1; j <= K; ++j) {
                if (j == n)
                    continue;
                std::set<long> hit;
                bool ok = true;
                for (long t : blk.block1_times) {
                    if (t < 1 || t > p.length) {
                        ok = false;
                        break;
                    }
                    const long o = lut[j - 1][t - 1];
                    if (o == 0 || !hit.insert(o).second)
                        ok = false;
                }
                if (!ok)
                    flag(n, blk.ordinal, "common instants do not spread over distinct blocks of user " +
                                             std::to_string(j));
            }
        }
    }
    return v;
}

std::string format_pattern(const SwitchingPattern &p) {
    std::ostringstream os;
    os << "M=" << p.tx_modes << " K=" << p.users << " L=" << p.length << '\n';
    for (int k = 1; k <= p.users; ++k) {
        os << "user " << k << ":";
        for (long t = 1; t <= p.length; ++t) {
            if (t == p.block1_len + 1)
                os << " |";
            os << ' ' << p.mode(k, t);
        }
        os << '\n';
    }
    return os.str();
}

} // namespace blindia
