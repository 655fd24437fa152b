// SPDX-License-Identifier: Apache-2.0
//
// pencil-doa: matrix-pencil direction-of-arrival estimation for fully-digital
// and hybrid analog/digital uniform linear arrays.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef PENCIL_DOA_PENCIL_CORE_HPP
#define PENCIL_DOA_PENCIL_CORE_HPP

#include <vector>

#include "pencil_doa/types.hpp"

namespace pencil_doa
{
    // Pencil parameter xi for a C-channel input carrying R exponentials.
    struct PencilConfig
    {
        Index pencil_parameter = 0; // xi
        Index num_sources = 0;      // R
        Index channel_count = 0;    // C

        void validate() const;

        /// xi = floor(C / 2) when xi == 0.
        static PencilConfig make(Index channel_count, Index num_sources, Index xi = 0);
    };

    struct HankelStack
    {
        std::vector<CMatrix> blocks; // K_A blocks, each (C - xi) x (xi + 1)
        CMatrix augmented;           // (C - xi) x K_A (xi + 1)
        Index pencil_parameter = 0;

        Index num_blocks() const { return static_cast<Index>(blocks.size()); }
    };

    // Rank-R truncation of the augmented Hankel matrix, H ~ U diag(s) V^H.
    struct DenoisedHankel
    {
        CMatrix matrix;
        CMatrix left_vectors;  // U_R
        RVector singular_values;
        CMatrix right_vectors; // V_R
        double smallest_retained = 0.0;
        double largest_discarded = 0.0;

        /// sigma_R / sigma_{R+1}; infinity when nothing was discarded.
        double gap() const;
    };

    struct PencilPair
    {
        CMatrix left;  // block-wise last column removed
        CMatrix right; // block-wise first column removed
    };

    struct EigenResult
    {
        std::vector<Complex> eigenvalues;
        double smallest_retained = 0.0;
        double largest_discarded = 0.0;
    };

    struct AngleEstimate
    {
        std::vector<double> angles_deg; // ascending
        bool clamped = false;           // an arcsin argument exceeded 1 by more than 0.05
    };

    CMatrix hankel(const CVector &x, const PencilConfig &cfg);

    HankelStack augment(const std::vector<CVector> &snapshots, const PencilConfig &cfg);

    /// Columns of x are the snapshots.
    HankelStack augment(const CMatrix &x, const PencilConfig &cfg);

    DenoisedHankel svd_denoise(const HankelStack &stack, Index num_sources);
    DenoisedHankel svd_denoise(const CMatrix &augmented, Index num_sources);

    PencilPair split_pencil(const CMatrix &augmented, Index xi, Index num_blocks);

    /// R largest-modulus eigenvalues of pinv(left) * right.
    EigenResult pencil_eigenvalues(const PencilPair &pair, Index num_sources);

    /// Same eigenvalues computed from the rank-R factors of the denoised matrix.
    /// The work is an R x R eigenproblem instead of one of size K_A * xi.
    EigenResult pencil_eigenvalues(const DenoisedHankel &denoised, Index xi, Index num_blocks);

    AngleEstimate eigen_to_angles(const EigenResult &eig, double spacing_ratio, Index dilation = 1);

} // namespace pencil_doa

#endif
