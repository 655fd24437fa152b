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

#ifndef PENCIL_DOA_ESTIMATORS_HPP
#define PENCIL_DOA_ESTIMATORS_HPP

#include <vector>

#include "pencil_doa/array_model.hpp"
#include "pencil_doa/had_combiners.hpp"
#include "pencil_doa/pencil_core.hpp"

namespace pencil_doa
{
    struct DoaEstimate
    {
        std::vector<double> angles_deg; // ascending
        bool clamped = false;           // arcsin argument clamped well beyond [-1, 1]
        bool low_snr = false;           // some source had no candidate above the noise floor
        bool padded = false;            // final disambiguation combiner repeats a candidate
    };

    // Periodicity-based aggregation: W_D,n = W_A,n / (alpha^2 M_RF).
    struct PmpmPlan
    {
        CombinerSet codebook;
        std::vector<CMatrix> digital; // W_D,n, each M x L

        static PmpmPlan make(CombinerSet codebook);
        Index num_segments() const { return codebook.size(); }
    };

    // Grating-lobe candidates: for each source the M_RF phases mu + 2*pi*i/M_RF in (-pi, pi].
    struct AmbiguitySet
    {
        std::vector<std::vector<double>> candidates; // [source][i], radians, ascending
        Index rf_size = 0;
        double spacing_ratio = 0.5;

        Index num_sources() const { return static_cast<Index>(candidates.size()); }
        std::vector<double> flat() const; // source-major
    };

    struct DisambiguationPlan
    {
        std::vector<CMatrix> combiners; // G block-diagonal M x L matrices
        std::vector<double> slot_phases; // G * L steering phases, slot j -> (j / L, j % L)
        Index snapshots_per_combiner = 0;
        Index num_candidates = 0; // M_RF * R, the rest of the slots is padding
        bool padded = false;

        Index size() const { return static_cast<Index>(combiners.size()); }
    };

    /// G = ceil(M_RF * R / L).
    Index disambiguation_size(Index rf_size, Index num_sources, Index num_rf_chains);

    DoaEstimate estimate_fd_mpm(const CMatrix &x, const PencilConfig &cfg, const ArrayConfig &array);

    CMatrix pmpm_aggregate(const std::vector<CMatrix> &q, const PmpmPlan &plan);

    /// segments[n] holds the antenna-level samples observed while W_A,n was active.
    DoaEstimate estimate_pmpm(const std::vector<CMatrix> &segments, const CombinerSet &codebook,
                              const PencilConfig &cfg, double spacing_ratio = 0.5);

    AmbiguitySet ambiguity_set(const std::vector<double> &base_angles_deg, Index rf_size, double spacing_ratio = 0.5);

    DisambiguationPlan build_disambiguation(const AmbiguitySet &amb, const HadConfig &cfg, Index snapshots);

    /// segments[g] holds the antenna-level samples observed while W_A,g was active.
    DoaEstimate resolve_ambiguity(const DisambiguationPlan &plan, const std::vector<CMatrix> &segments,
                                  const AmbiguitySet &amb);

    /// Base (folded) angles from the single-phase PC codebook outputs.
    DoaEstimate spc_base_angles(const std::vector<CMatrix> &segments, const CombinerSet &codebook,
                                const PencilConfig &cfg, double spacing_ratio = 0.5);

    /// stage1[n] is observed under PC codebook entry n, stage2[g] under disambiguation combiner g.
    DoaEstimate estimate_spc_mpm(const std::vector<CMatrix> &stage1, const std::vector<CMatrix> &stage2,
                                 const HadConfig &cfg, const PencilConfig &pencil);

} // namespace pencil_doa

#endif
