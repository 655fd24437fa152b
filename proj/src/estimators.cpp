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

#include "pencil_doa/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pencil_doa
{
    namespace
    {
        DoaEstimate run_pencil(const CMatrix &x, const PencilConfig &cfg, double spacing_ratio, Index dilation)
        {
            if (x.cols() < 1)
                throw EmptyInput("no snapshots supplied");
            if (x.rows() != cfg.channel_count)
                throw ShapeError("samples have " + std::to_string(x.rows()) + " channels, pencil expects " +
                                 std::to_string(cfg.channel_count));
            const HankelStack stack = augment(x, cfg);
            const DenoisedHankel d = svd_denoise(stack, cfg.num_sources);
            const EigenResult eig = pencil_eigenvalues(d, cfg.pencil_parameter, stack.num_blocks());
            const AngleEstimate a = eigen_to_angles(eig, spacing_ratio, dilation);
            return DoaEstimate{a.angles_deg, a.clamped, false, false};
        }

    } // namespace

    PmpmPlan PmpmPlan::make(CombinerSet codebook)
    {
        if (codebook.matrices.empty())
            throw EmptyInput("PMPM plan needs a non-empty codebook");
        PmpmPlan plan;
        const double scale = 1.0 / codebook.norm_factor();
        for (const auto &w : codebook.matrices)
            plan.digital.push_back(scale * w);
        plan.codebook = std::move(codebook);
        return plan;
    }

    std::vector<double> AmbiguitySet::flat() const
    {
        std::vector<double> out;
        for (const auto &c : candidates)
            out.insert(out.end(), c.begin(), c.end());
        return out;
    }

    Index disambiguation_size(Index rf_size, Index num_sources, Index num_rf_chains)
    {
        return (rf_size * num_sources + num_rf_chains - 1) / num_rf_chains;
    }

    DoaEstimate estimate_fd_mpm(const CMatrix &x, const PencilConfig &cfg, const ArrayConfig &array)
    {
        array.validate();
        if (cfg.channel_count != array.num_antennas)
            throw ShapeError("pencil channel count differs from the array size");
        return run_pencil(x, cfg, array.spacing_ratio, 1);
    }

    CMatrix pmpm_aggregate(const std::vector<CMatrix> &q, const PmpmPlan &plan)
    {
        if (static_cast<Index>(q.size()) != plan.num_segments())
            throw ShapeError("pmpm_aggregate: " + std::to_string(q.size()) + " blocks for a codebook of " +
                             std::to_string(plan.num_segments()));
        const Index M = plan.codebook.num_antennas(), L = plan.codebook.num_rf_chains();
        const Index K = q.front().cols();
        CMatrix y = CMatrix::Zero(M, K);
        for (std::size_t n = 0; n < q.size(); ++n)
        {
            if (q[n].rows() != L || q[n].cols() != K)
                throw ShapeError("pmpm_aggregate: block " + std::to_string(n) + " is not " + std::to_string(L) +
                                 "x" + std::to_string(K));
            y.noalias() += plan.digital[n] * q[n];
        }
        return y;
    }

    DoaEstimate estimate_pmpm(const std::vector<CMatrix> &segments, const CombinerSet &codebook,
                              const PencilConfig &cfg, double spacing_ratio)
    {
        if (static_cast<Index>(segments.size()) != codebook.size())
            throw ShapeError("estimate_pmpm: " + std::to_string(segments.size()) + " segments for a codebook of " +
                             std::to_string(codebook.size()));
        const PmpmPlan plan = PmpmPlan::make(codebook);
        std::vector<CMatrix> q;
        q.reserve(segments.size());
        for (std::size_t n = 0; n < segments.size(); ++n)
            q.push_back(apply_combiner(codebook.matrices[n], segments[n]));
        return run_pencil(pmpm_aggregate(q, plan), cfg, spacing_ratio, 1);
    }

    AmbiguitySet ambiguity_set(const std::vector<double> &base_angles_deg, Index rf_size, double spacing_ratio)
    {
        if (rf_size < 1)
            throw ConfigError("ambiguity_set: subarray size must be positive");
        constexpr double eps = 1e-12;
        const double step = 2.0 * pi / static_cast<double>(rf_size);
        const double half = 0.5 * static_cast<double>(rf_size);

        AmbiguitySet amb;
        amb.rf_size = rf_size;
        amb.spacing_ratio = spacing_ratio;
        for (double deg : base_angles_deg)
        {
            const double mu = spatial_phase(deg, spacing_ratio);
            // Index range of the closed-form bound, widened by one on each side and
            // then filtered, so that rounding at +-pi never drops or duplicates a candidate.
            const auto lo = static_cast<Index>(std::ceil(half * (-1.0 - mu / pi))) - 1;
            const auto hi = static_cast<Index>(std::floor(half * (1.0 - mu / pi))) + 1;
            std::vector<double> c;
            for (Index i = lo; i <= hi; ++i)
            {
                const double m = mu + step * static_cast<double>(i);
                if (m > -pi + eps && m <= pi + eps)
                    c.push_back(std::min(m, pi));
            }
            std::sort(c.begin(), c.end());
            amb.candidates.push_back(std::move(c));
        }
        return amb;
    }

    DisambiguationPlan build_disambiguation(const AmbiguitySet &amb, const HadConfig &cfg, Index snapshots)
    {
        cfg.validate();
        if (cfg.architecture != Architecture::PC)
            throw ConfigError("disambiguation combiners require the PC architecture");
        if (snapshots < 1)
            throw ConfigError("disambiguation needs at least one snapshot per combiner");

        const Index M = cfg.num_antennas, L = cfg.num_rf_chains, M_RF = cfg.subarray_size();
        const std::vector<double> cand = amb.flat();
        if (cand.empty())
            throw EmptyInput("empty ambiguity set");

        DisambiguationPlan plan;
        plan.snapshots_per_combiner = snapshots;
        plan.num_candidates = static_cast<Index>(cand.size());
        const Index G = (plan.num_candidates + L - 1) / L;
        plan.padded = G * L != plan.num_candidates;

        for (Index g = 0; g < G; ++g)
        {
            CMatrix w = CMatrix::Zero(M, L);
            for (Index l = 0; l < L; ++l)
            {
                const Index j = std::min(g * L + l, plan.num_candidates - 1);
                plan.slot_phases.push_back(cand[j]);
                w.block(l * M_RF, l, M_RF, 1) = dft_column(M_RF, cand[j]);
            }
            plan.combiners.push_back(std::move(w));
        }
        return plan;
    }

    DoaEstimate resolve_ambiguity(const DisambiguationPlan &plan, const std::vector<CMatrix> &segments,
                                  const AmbiguitySet &amb)
    {
        if (static_cast<Index>(segments.size()) != plan.size())
            throw ShapeError("resolve_ambiguity: " + std::to_string(segments.size()) + " segments for " +
                             std::to_string(plan.size()) + " combiners");
        const Index M_RF = amb.rf_size;
        const Index L = plan.combiners.front().cols();

        RVector metric(plan.size() * L);
        for (Index g = 0; g < plan.size(); ++g)
        {
            const CMatrix q = apply_combiner(plan.combiners[g], segments[g]);
            const double k = static_cast<double>(q.cols());
            for (Index l = 0; l < L; ++l)
                metric(g * L + l) = q.row(l).squaredNorm() / (k * static_cast<double>(M_RF)) - 1.0;
        }

        DoaEstimate out;
        out.padded = plan.padded;
        Index j = 0;
        for (const auto &cands : amb.candidates)
        {
            Index best = j;
            bool any_positive = false;
            for (std::size_t i = 0; i < cands.size(); ++i, ++j)
            {
                any_positive = any_positive || metric(j) > 0.0;
                const bool tie = metric(j) == metric(best) && std::abs(plan.slot_phases[j]) < std::abs(plan.slot_phases[best]);
                if (metric(j) > metric(best) || tie)
                    best = j;
            }
            out.low_snr = out.low_snr || !any_positive;
            const double s = plan.slot_phases[best] / (2.0 * pi * amb.spacing_ratio);
            out.clamped = out.clamped || std::abs(s) > 1.05;
            out.angles_deg.push_back(rad_to_deg(std::asin(std::clamp(s, -1.0, 1.0))));
        }
        std::sort(out.angles_deg.begin(), out.angles_deg.end());
        return out;
    }

    DoaEstimate spc_base_angles(const std::vector<CMatrix> &segments, const CombinerSet &codebook,
                                const PencilConfig &cfg, double spacing_ratio)
    {
        if (codebook.architecture != Architecture::PC)
            throw ConfigError("single-phase estimation requires the PC codebook");
        if (segments.empty() || static_cast<Index>(segments.size()) != codebook.size())
            throw ShapeError("spc stage 1: " + std::to_string(segments.size()) + " segments for a codebook of " +
                             std::to_string(codebook.size()));

        Index total = 0;
        for (const auto &s : segments)
            total += s.cols();
        const Index L = codebook.num_rf_chains();
        CMatrix q(L, total);
        Index col = 0;
        for (std::size_t n = 0; n < segments.size(); ++n)
        {
            q.middleCols(col, segments[n].cols()) = apply_combiner(codebook.matrices[n], segments[n]);
            col += segments[n].cols();
        }

        DoaEstimate base;
        try
        {
            base = run_pencil(q, cfg, spacing_ratio, codebook.rf_size);
        }
        catch (const RankError &e)
        {
            throw AmbiguousGeometryError(std::string("virtual array cannot separate the sources: ") + e.what());
        }

        // Sources in the same virtual bin collapse onto one eigenvalue.
        for (std::size_t i = 1; i < base.angles_deg.size(); ++i)
            if (std::abs(base.angles_deg[i] - base.angles_deg[i - 1]) < 1e-9)
                throw AmbiguousGeometryError("virtual array returned coincident phases");
        return base;
    }

    DoaEstimate estimate_spc_mpm(const std::vector<CMatrix> &stage1, const std::vector<CMatrix> &stage2,
                                 const HadConfig &cfg, const PencilConfig &pencil)
    {
        cfg.validate();
        if (cfg.architecture != Architecture::PC)
            throw ConfigError("SPC-MPM requires the PC architecture");
        if (pencil.channel_count != cfg.num_rf_chains)
            throw PencilParamError("SPC-MPM pencil must run over the L combiner outputs");
        pencil.validate();
        if (stage2.empty())
            throw EmptyInput("SPC-MPM needs disambiguation snapshots");

        const CombinerSet codebook = build_pc_codebook(cfg);
        const DoaEstimate base = spc_base_angles(stage1, codebook, pencil, cfg.spacing_ratio);

        const AmbiguitySet amb = ambiguity_set(base.angles_deg, cfg.subarray_size(), cfg.spacing_ratio);
        const DisambiguationPlan plan = build_disambiguation(amb, cfg, stage2.front().cols());
        DoaEstimate out = resolve_ambiguity(plan, stage2, amb);
        out.clamped = out.clamped || base.clamped;
        return out;
    }

} // namespace pencil_doa
