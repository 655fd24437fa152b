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

#include "pencil_doa/array_model.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

namespace pencil_doa
{
    void ArrayConfig::validate() const
    {
        if (num_antennas < 2)
            throw ConfigError("num_antennas must be at least 2, got " + std::to_string(num_antennas));
        if (!(spacing_ratio > 0.0 && spacing_ratio <= 0.5))
            throw ConfigError("spacing_ratio must lie in (0, 0.5], got " + std::to_string(spacing_ratio));
    }

    void SourceSet::validate() const
    {
        if (angles_deg.empty())
            throw ConfigError("source set is empty");
        if (angles_deg.size() != powers.size())
            throw ConfigError("angles and powers differ in length");
        for (double a : angles_deg)
            if (!(a > -90.0 && a < 90.0))
                throw ConfigError("source angle " + std::to_string(a) + " deg outside (-90, 90)");
        for (double p : powers)
            if (!(p > 0.0) || !std::isfinite(p))
                throw ConfigError("source power must be positive and finite");
        std::vector<double> sorted = angles_deg;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw DegenerateSources("source angles must be distinct");
    }

    SourceSet SourceSet::equal_power(std::vector<double> angles_deg, double power)
    {
        SourceSet s;
        s.powers.assign(angles_deg.size(), power);
        s.angles_deg = std::move(angles_deg);
        return s;
    }

    SourceSet SourceSet::from_snr_db(std::vector<double> angles_deg, double snr_db)
    {
        return equal_power(std::move(angles_deg), std::pow(10.0, snr_db / 10.0));
    }

    std::uint64_t RngSpec::mix(std::uint64_t x)
    {
        // splitmix64 finalizer
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    RngSpec RngSpec::derive(std::string_view label) const
    {
        std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a
        for (unsigned char c : label)
        {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        return RngSpec(seed_, mix(key_ ^ mix(h)));
    }

    RngSpec RngSpec::derive(std::uint64_t index) const
    {
        return RngSpec(seed_, mix(key_ + mix(index ^ 0x5bd1e9955bd1e995ULL)));
    }

    double spatial_phase(double angle_deg, double spacing_ratio)
    {
        return 2.0 * pi * spacing_ratio * std::sin(deg_to_rad(angle_deg));
    }

    CVector phase_ramp(Index n, double phase)
    {
        CVector v(n);
        for (Index m = 0; m < n; ++m)
            v(m) = std::polar(1.0, static_cast<double>(m) * phase);
        return v;
    }

    SteeringMatrix steering_matrix(const ArrayConfig &cfg, const SourceSet &sources)
    {
        cfg.validate();
        sources.validate();

        SteeringMatrix out;
        out.entries.resize(cfg.num_antennas, sources.size());
        out.phases.reserve(sources.angles_deg.size());
        for (Index r = 0; r < sources.size(); ++r)
        {
            const double mu = spatial_phase(sources.angles_deg[r], cfg.spacing_ratio);
            assert(mu > -pi && mu <= pi);
            out.phases.push_back(mu);
            out.entries.col(r) = phase_ramp(cfg.num_antennas, mu);
        }
        return out;
    }

    namespace
    {
        CMatrix gaussian_matrix(Index rows, Index cols, std::mt19937_64 &eng)
        {
            std::normal_distribution<double> half(0.0, std::sqrt(0.5));
            CMatrix out(rows, cols);
            for (Index c = 0; c < cols; ++c)
                for (Index r = 0; r < rows; ++r)
                {
                    const double re = half(eng);
                    const double im = half(eng);
                    out(r, c) = Complex(re, im);
                }
            return out;
        }
    } // namespace

    std::vector<CMatrix> generate_signals(const SourceSet &sources, Index snapshots, Index segments,
                                          bool periodic, const RngSpec &rng)
    {
        if (snapshots < 1 || segments < 1)
            throw ConfigError("generate_signals needs at least one snapshot and one segment");
        sources.validate();

        const Index R = sources.size();
        auto draw = [&](const RngSpec &spec) {
            auto eng = spec.engine();
            CMatrix s = gaussian_matrix(R, snapshots, eng);
            for (Index r = 0; r < R; ++r)
                s.row(r) *= std::sqrt(sources.powers[r]);
            return s;
        };

        std::vector<CMatrix> blocks;
        blocks.reserve(segments);
        if (periodic)
        {
            const CMatrix s = draw(rng.derive("signal"));
            blocks.assign(segments, s);
        }
        else
        {
            for (Index n = 0; n < segments; ++n)
                blocks.push_back(draw(rng.derive("signal").derive(static_cast<std::uint64_t>(n))));
        }
        return blocks;
    }

    SnapshotBlock generate_noise(Index channels, Index snapshots, const RngSpec &rng)
    {
        if (channels < 1 || snapshots < 1)
            throw ConfigError("generate_noise needs positive dimensions");
        auto eng = rng.engine();
        return SnapshotBlock{gaussian_matrix(channels, snapshots, eng), 0};
    }

    SnapshotBlock receive_fd(const SteeringMatrix &steering, const CMatrix &signals, const SnapshotBlock &noise)
    {
        const auto &A = steering.entries;
        if (A.cols() != signals.rows() || A.rows() != noise.samples.rows() || signals.cols() != noise.samples.cols())
            throw ShapeError("receive_fd: expected A (M x R), S (R x K), Z (M x K)");
        return SnapshotBlock{A * signals + noise.samples, noise.segment_index};
    }

    double fd_receive_snr(const SteeringMatrix &steering, const SourceSet &sources)
    {
        const auto &A = steering.entries;
        RVector p = Eigen::Map<const RVector>(sources.powers.data(), sources.size());
        const CMatrix cov = A * p.cast<Complex>().asDiagonal() * A.adjoint();
        return cov.trace().real() / static_cast<double>(A.rows());
    }

    void RmseAccumulator::add(std::vector<double> estimates_deg, std::vector<double> truth_deg)
    {
        if (estimates_deg.size() != truth_deg.size())
            throw TrialArityError("trial supplies " + std::to_string(estimates_deg.size()) + " estimates for " +
                                  std::to_string(truth_deg.size()) + " sources");
        std::sort(estimates_deg.begin(), estimates_deg.end());
        std::sort(truth_deg.begin(), truth_deg.end());
        for (std::size_t r = 0; r < truth_deg.size(); ++r)
        {
            const double e = estimates_deg[r] - truth_deg[r];
            sum_sq_ += e * e;
        }
        terms_ += static_cast<Index>(truth_deg.size());
        ++trials_;
    }

    double RmseAccumulator::value() const
    {
        if (terms_ == 0)
            return 0.0;
        return std::sqrt(sum_sq_ / static_cast<double>(terms_));
    }

    double rmse(const std::vector<std::vector<double>> &estimates_deg, const SourceSet &truth)
    {
        RmseAccumulator acc;
        for (const auto &trial : estimates_deg)
            acc.add(trial, truth.angles_deg);
        return acc.value();
    }

} // namespace pencil_doa
