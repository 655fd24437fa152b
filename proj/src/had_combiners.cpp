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

#include "pencil_doa/had_combiners.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pencil_doa
{
    const char *to_string(Architecture a)
    {
        return a == Architecture::FC ? "FC" : "PC";
    }

    void HadConfig::validate() const
    {
        if (num_antennas < 2)
            throw ConfigError("num_antennas must be at least 2, got " + std::to_string(num_antennas));
        if (num_rf_chains < 1 || num_rf_chains >= num_antennas)
            throw ConfigError("num_rf_chains must satisfy 1 <= L < M, got L = " + std::to_string(num_rf_chains));
        if (num_antennas % num_rf_chains != 0)
            throw ConfigError("num_antennas (" + std::to_string(num_antennas) + ") is not a multiple of num_rf_chains (" +
                              std::to_string(num_rf_chains) + ")");
        if (!(spacing_ratio > 0.0 && spacing_ratio <= 0.5))
            throw ConfigError("spacing_ratio must lie in (0, 0.5]");
    }

    Index HadConfig::subarray_size() const
    {
        return architecture == Architecture::FC ? num_antennas : num_antennas / num_rf_chains;
    }

    double HadConfig::alpha() const
    {
        return architecture == Architecture::FC ? 1.0 / std::sqrt(static_cast<double>(num_rf_chains)) : 1.0;
    }

    bool Sector::contains(double deg) const
    {
        for (const auto &p : parts)
            if (p.contains(deg))
                return true;
        return false;
    }

    Index SectorSet::locate(double deg) const
    {
        for (Index n = 0; n < size(); ++n)
            if (sectors[n].contains(deg))
                return n;
        return -1;
    }

    GainModel GainModel::from(const HadConfig &cfg)
    {
        cfg.validate();
        return GainModel{cfg.architecture, cfg.subarray_size(), cfg.alpha()};
    }

    double dft_phase(Index n, Index m_rf)
    {
        if (m_rf < 1 || n < 1 || n > m_rf)
            throw IndexError("dft_phase: index " + std::to_string(n) + " outside 1.." + std::to_string(m_rf));
        // Odd sizes split at ceil(m_rf / 2) so that every phase stays inside (-pi, pi].
        const Index half = (m_rf + 1) / 2;
        const double phase = 2.0 * pi * static_cast<double>(n - 1) / static_cast<double>(m_rf);
        return n <= half ? phase : phase - 2.0 * pi;
    }

    CVector dft_column(Index length, double phase)
    {
        return phase_ramp(length, phase);
    }

    CombinerSet build_fc_codebook(const HadConfig &cfg)
    {
        cfg.validate();
        if (cfg.architecture != Architecture::FC)
            throw ConfigError("build_fc_codebook called with a PC configuration");

        const Index M = cfg.num_antennas, L = cfg.num_rf_chains, N = cfg.num_segments();
        CombinerSet set;
        set.architecture = Architecture::FC;
        set.alpha = cfg.alpha();
        set.rf_size = M;
        for (Index k = 1; k <= M; ++k)
            set.phase_grid.push_back(dft_phase(k, M));

        for (Index n = 0; n < N; ++n)
        {
            CMatrix w(M, L);
            for (Index l = 0; l < L; ++l)
                w.col(l) = set.alpha * dft_column(M, set.phase_grid[n * L + l]);
            set.matrices.push_back(std::move(w));
        }
        return set;
    }

    CombinerSet build_pc_codebook(const HadConfig &cfg)
    {
        cfg.validate();
        if (cfg.architecture != Architecture::PC)
            throw ConfigError("build_pc_codebook called with an FC configuration");

        const Index M = cfg.num_antennas, L = cfg.num_rf_chains, M_RF = cfg.subarray_size();
        CombinerSet set;
        set.architecture = Architecture::PC;
        set.alpha = 1.0;
        set.rf_size = M_RF;
        for (Index n = 1; n <= M_RF; ++n)
            set.phase_grid.push_back(dft_phase(n, M_RF));

        for (Index n = 0; n < M_RF; ++n)
        {
            const CVector v = dft_column(M_RF, set.phase_grid[n]);
            CMatrix w = CMatrix::Zero(M, L);
            for (Index l = 0; l < L; ++l)
                w.block(l * M_RF, l, M_RF, 1) = v;
            set.matrices.push_back(std::move(w));
        }
        return set;
    }

    CombinerSet build_codebook(const HadConfig &cfg)
    {
        return cfg.architecture == Architecture::FC ? build_fc_codebook(cfg) : build_pc_codebook(cfg);
    }

    Complex gain(double mu, double phi, const GainModel &model)
    {
        const double d = mu - phi;
        const double m = static_cast<double>(model.rf_size);
        const double den = std::sin(0.5 * d);
        if (std::abs(den) < 1e-9)
        {
            Complex acc = 0.0;
            for (Index k = 0; k < model.rf_size; ++k)
                acc += std::polar(1.0, static_cast<double>(k) * d);
            return acc;
        }
        return std::sin(0.5 * m * d) / den * std::polar(1.0, 0.5 * (m - 1.0) * d);
    }

    double subarray_phase(double mu, Index ell, const GainModel &model)
    {
        if (model.architecture == Architecture::FC)
            return 0.0;
        return static_cast<double>(ell) * mu * static_cast<double>(model.rf_size);
    }

    SectorSet sectors(const HadConfig &cfg)
    {
        cfg.validate();
        if (cfg.architecture != Architecture::PC)
            throw ConfigError("sectors are defined for the PC architecture");
        if (cfg.spacing_ratio != 0.5)
            throw UnsupportedGeometry("sectors require half-wavelength spacing");

        const Index M_RF = cfg.subarray_size();
        const double half_width = pi / static_cast<double>(M_RF);
        auto to_deg = [](double mu) { return rad_to_deg(std::asin(std::clamp(mu / pi, -1.0, 1.0))); };

        SectorSet out;
        for (Index n = 1; n <= M_RF; ++n)
        {
            const double phi = dft_phase(n, M_RF);
            const double lo = phi - half_width, hi = phi + half_width;
            Sector s;
            if (lo < -pi)
            {
                s.parts.push_back({-90.0, to_deg(hi)});
                s.parts.push_back({to_deg(lo + 2.0 * pi), 90.0});
            }
            else
                s.parts.push_back({to_deg(lo), to_deg(hi)});
            out.sectors.push_back(std::move(s));
        }
        return out;
    }

    CMatrix apply_combiner(const CMatrix &w, const CMatrix &x)
    {
        if (w.rows() != x.rows())
            throw ShapeError("apply_combiner: combiner has " + std::to_string(w.rows()) + " rows, samples have " +
                             std::to_string(x.rows()));
        return w.adjoint() * x;
    }

    SnapshotBlock apply_combiner(const CMatrix &w, const SnapshotBlock &x)
    {
        return SnapshotBlock{apply_combiner(w, x.samples), x.segment_index};
    }

} // namespace pencil_doa
