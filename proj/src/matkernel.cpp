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

#include "blindia/matkernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "blindia/errors.hpp"

namespace blindia {

void require_finite(const CMatrix &A, const char *what) {
    if (A.rows() == 0 || A.cols() == 0)
        throw InvalidMatrix(std::string(what) + ": empty matrix");
    if (!A.allFinite())
        throw InvalidMatrix(std::string(what) + ": non-finite entry");
}

static void require_rel_tol(double rel_tol) {
    if (!(rel_tol > 0.0) || !(rel_tol < 1.0))
        throw InvalidArgument("rel_tol must lie in (0, 1)");
}

RankReport numeric_rank(const CMatrix &A, double rel_tol) {
    require_finite(A, "numeric_rank");
    require_rel_tol(rel_tol);

    // Jacobi is exact enough and the matrices here are small; transpose so
    // the QR preconditioner always sees the tall orientation.
    Eigen::JacobiSVD<CMatrix> svd;
    if (A.rows() >= A.cols())
        svd.compute(A);
    else
        svd.compute(CMatrix(A.adjoint()));

    RankReport rep;
    const auto &sv = svd.singularValues();
    rep.singular_values.assign(sv.data(), sv.data() + sv.size());
    const double sigma_max = rep.singular_values.empty() ? 0.0 : rep.singular_values.front();
    rep.threshold = rel_tol * static_cast<double>(std::max(A.rows(), A.cols())) * sigma_max;
    rep.rank = 0;
    for (double s : rep.singular_values)
        if (s > rep.threshold)
            ++rep.rank;
    return rep;
}

double log_det_hermitian_plus_identity(const CMatrix &A, double scale) {
    require_finite(A, "log_det_hermitian_plus_identity");
    if (A.rows() != A.cols())
        throw InvalidMatrix("log_det_hermitian_plus_identity: matrix not square");
    if (!(scale >= 0.0))
        throw InvalidArgument("scale must be nonnegative");

    const double amax = A.cwiseAbs().maxCoeff();
    const double asym = (A - A.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-10 * (1.0 + amax))
        throw InvalidMatrix("log_det_hermitian_plus_identity: matrix not Hermitian");

    const Eigen::Index n = A.rows();
    CMatrix B = CMatrix::Identity(n, n) + scale * 0.5 * (A + A.adjoint());
    Eigen::LLT<CMatrix> llt(B);
    if (llt.info() == Eigen::Success) {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            acc += std::log2(llt.matrixLLT()(i, i).real());
        return 2.0 * acc;
    }

    // Semidefinite input can sit right at the Cholesky boundary; fall back to
    // an eigendecomposition and clamp the rounding-level negatives.
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (A + A.adjoint()));
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        acc += std::log2(1.0 + scale * std::max(es.eigenvalues()(i), 0.0));
    return acc;
}

double log2_det_hermitian(const CMatrix &A) {
    require_finite(A, "log2_det_hermitian");
    if (A.rows() != A.cols())
        throw InvalidMatrix("log2_det_hermitian: matrix not square");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (A + A.adjoint()));
    double acc = 0.0;
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        const double lam = es.eigenvalues()(i);
        if (!(lam > 0.0))
            throw InvalidMatrix("log2_det_hermitian: matrix not positive definite");
        acc += std::log2(lam);
    }
    return acc;
}

CMatrix orthonormal_complement(const CMatrix &V, double rel_tol) {
    require_finite(V, "orthonormal_complement");
    require_rel_tol(rel_tol);

    // Left singular vectors past the numeric rank span the orthogonal
    // complement of the column span; the threshold matches numeric_rank so
    // the two views of rank cannot disagree.
    Eigen::JacobiSVD<CMatrix> svd(V, Eigen::ComputeFullU);
    const auto &sv = svd.singularValues();
    const double sigma_max = sv.size() ? sv(0) : 0.0;
    const double thr = rel_tol * static_cast<double>(std::max(V.rows(), V.cols())) * sigma_max;
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > thr)
            ++r;

    const Eigen::Index n = V.rows();
    if (r >= n)
        throw DegenerateSubspace("orthonormal_complement: subspace spans the whole space");
    return svd.matrixU().rightCols(n - r);
}

CMatrix sample_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng &rng) {
    if (rows <= 0 || cols <= 0)
        throw InvalidArgument("sample_gaussian_matrix: dimensions must be positive");
    CMatrix A(rows, cols);
    // Row-major fill so the draw order matches the written contract.
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            A(i, j) = rng.complex_gaussian();
    return A;
}

} // namespace blindia
