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

#ifndef BLINDIA_MATKERNEL_HPP
#define BLINDIA_MATKERNEL_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "blindia/rng.hpp"

namespace blindia {

using cxd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kDefaultRelTol = 1e-8;

struct RankReport {
    Eigen::Index rank = 0;
    std::vector<double> singular_values; // nonincreasing
    double threshold = 0.0;              // rel_tol * max(rows, cols) * sigma_max
};

// Throws InvalidMatrix if A is empty or holds a non-finite entry.
void require_finite(const CMatrix &A, const char *what);

// Rank by singular-value thresholding. rel_tol must lie in (0, 1).
RankReport numeric_rank(const CMatrix &A, double rel_tol = kDefaultRelTol);

// log2 det(I + scale * A) for Hermitian positive semidefinite A (a Gram
// matrix G G^H in practice) and scale >= 0. Result is in bits.
double log_det_hermitian_plus_identity(const CMatrix &A, double scale);

// log2 det(A) for Hermitian positive definite A, in bits.
double log2_det_hermitian(const CMatrix &A);

// Columns form an orthonormal basis of the orthogonal complement of span(V)
// in C^rows: result is rows x (rows - rank V), result^H * V == 0. Throws
// DegenerateSubspace when the complement is trivial.
CMatrix orthonormal_complement(const CMatrix &V, double rel_tol = kDefaultRelTol);

// i.i.d. CN(0, 1) entries drawn from rng.
CMatrix sample_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng &rng);

} // namespace blindia

#endif
