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

#ifndef PENCIL_DOA_CRLB_HPP
#define PENCIL_DOA_CRLB_HPP

#include <optional>
#include <vector>

#include "pencil_doa/array_model.hpp"
#include "pencil_doa/had_combiners.hpp"

namespace pencil_doa
{
    struct CrlbInputs
    {
        ArrayConfig array;
        SourceSet sources;
        Index snapshots = 1; // K~ for the FD bound, K per combiner for the SPC bound
        double noise_variance = 1.0;
        std::optional<CombinerSet> combiners;
    };

    struct CrlbMatrix
    {
        RMatrix entries; // R x R, radians^2

        std::vector<double> root_diagonal_deg() const;

        /// sqrt(trace / R), in degrees.
        double root_mean_deg() const;
    };

    /// Column r is d a(theta_r) / d theta_r with theta in radians.
    CMatrix steering_derivative(const ArrayConfig &array, const SourceSet &sources);

    CrlbMatrix crlb_fd(const CrlbInputs &in);

    CrlbMatrix crlb_spc(const CrlbInputs &in);

} // namespace pencil_doa

#endif
