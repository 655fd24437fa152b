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

#ifndef PENCIL_DOA_HAD_COMBINERS_HPP
#define PENCIL_DOA_HAD_COMBINERS_HPP

#include <vector>

#include "pencil_doa/array_model.hpp"
#include "pencil_doa/types.hpp"

namespace pencil_doa
{
    enum class Architecture
    {
        FC, // every RF chain sees all antennas
        PC  // RF chain l sees the l-th disjoint subarray
    };

    const char *to_string(Architecture a);

    // Hybrid receiver geometry: M antennas, L RF chains.
    struct HadConfig
    {
        Architecture architecture = Architecture::PC;
        Index num_antennas = 0;
        Index num_rf_chains = 0;
        double spacing_ratio = 0.5;

        void validate() const;

        Index subarray_size() const; // M_RF
        Index num_segments() const { return num_antennas / num_rf_chains; }
        double alpha() const;
    };

    struct CombinerSet
    {
        Architecture architecture = Architecture::PC;
        std::vector<CMatrix> matrices;  // N matrices, each M x L
        std::vector<double> phase_grid; // DFT phases used by the codebook
        double alpha = 1.0;
        Index rf_size = 0; // M_RF

        Index size() const { return static_cast<Index>(matrices.size()); }
        Index num_antennas() const { return matrices.empty() ? 0 : matrices.front().rows(); }
        Index num_rf_chains() const { return matrices.empty() ? 0 : matrices.front().cols(); }
        double norm_factor() const { return alpha * alpha * static_cast<double>(rf_size); }
    };

    // Half-open angle interval (lower, upper] in degrees.
    struct AngleInterval
    {
        double lower_deg;
        double upper_deg;

        bool contains(double deg) const { return deg > lower_deg && deg <= upper_deg; }
    };

    // A sector is one interval, or two when it wraps around endfire.
    struct Sector
    {
        std::vector<AngleInterval> parts;

        bool contains(double deg) const;
    };

    struct SectorSet
    {
        std::vector<Sector> sectors;

        Index size() const { return static_cast<Index>(sectors.size()); }
        Index locate(double deg) const; // 0-based, -1 if outside (-90, 90)
    };

    struct GainModel
    {
        Architecture architecture = Architecture::PC;
        Index rf_size = 0;
        double alpha = 1.0;

        static GainModel from(const HadConfig &cfg);
    };

    /// phi_n for 1 <= n <= m_rf: 2*pi*(n-1)/m_rf, wrapped by -2*pi past the midpoint.
    double dft_phase(Index n, Index m_rf);

    /// Column with entries exp(j*m*phase), m = 0..length-1.
    CVector dft_column(Index length, double phase);

    CombinerSet build_fc_codebook(const HadConfig &cfg);
    CombinerSet build_pc_codebook(const HadConfig &cfg);
    CombinerSet build_codebook(const HadConfig &cfg);

    /// Dirichlet kernel sum_{m=0}^{M_RF-1} exp(j*m*(mu-phi)).
    Complex gain(double mu, double phi, const GainModel &model);

    /// Phase offset of subarray ell (0-based) for a source at mu: ell*mu*M_RF for PC, 0 for FC.
    double subarray_phase(double mu, Index ell, const GainModel &model);

    SectorSet sectors(const HadConfig &cfg);

    /// W^H X.
    CMatrix apply_combiner(const CMatrix &w, const CMatrix &x);
    SnapshotBlock apply_combiner(const CMatrix &w, const SnapshotBlock &x);

} // namespace pencil_doa

#endif
