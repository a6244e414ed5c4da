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

#include "blindia/config.hpp"

#include <cmath>
#include <sstream>

#include "blindia/errors.hpp"

namespace blindia {

void validate(const SystemConfig &cfg) {
    if (cfg.tx_modes < 2)
        throw UnsupportedConfiguration("at least two antenna modes are required");
    if (cfg.users < 1)
        throw UnsupportedConfiguration("at least one user is required");
    if (cfg.group_size < 1)
        throw UnsupportedConfiguration("group size must be positive");
    if (cfg.trials < 1)
        throw InvalidArgument("trial count must be positive");
    if (!(cfg.rel_tol > 0.0) || !(cfg.rel_tol < 1.0))
        throw InvalidArgument("rel_tol must lie in (0, 1)");
    if (cfg.snr_db.empty())
        throw InvalidArgument("at least one SNR point is required");
    for (double s : cfg.snr_db)
        if (!std::isfinite(s))
            throw InvalidArgument("SNR points must be finite");
    // Also raises UnsupportedConfiguration when the length exceeds the cap.
    build_supersymbol(cfg.tx_modes, cfg.users, cfg.length_cap);
}

std::vector<double> parse_snr_grid(const std::string &text) {
    auto parse_num = [](const std::string &tok) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception &) {
            throw InvalidArgument("bad SNR value '" + tok + "'");
        }
        if (used != tok.size() || !std::isfinite(v))
            throw InvalidArgument("bad SNR value '" + tok + "'");
        return v;
    };

    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        std::istringstream is(text);
        std::string a, b, c;
        if (!std::getline(is, a, ':') || !std::getline(is, b, ':') ||
            !std::getline(is, c) || a.empty() || b.empty() || c.empty())
            throw InvalidArgument("SNR range must be start:step:stop");
        const double start = parse_num(a), step = parse_num(b), stop = parse_num(c);
        if (!(step > 0.0))
            throw InvalidArgument("SNR step must be positive");
        if (stop < start)
            throw InvalidArgument("SNR stop must not precede start");
        for (int i = 0;; ++i) {
            const double v = start + step * i;
            if (v > stop + 1e-9 * std::max(1.0, std::abs(stop)))
                break;
            grid.push_back(v);
        }
    } else {
        std::istringstream is(text);
        std::string tok;
        while (std::getline(is, tok, ','))
            grid.push_back(parse_num(tok));
        if (grid.empty())
            throw InvalidArgument("empty SNR list");
    }
    return grid;
}

} // namespace blindia
