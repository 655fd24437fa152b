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

#ifndef PENCIL_DOA_ARRAY_MODEL_HPP
#define PENCIL_DOA_ARRAY_MODEL_HPP

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "pencil_doa/types.hpp"

namespace pencil_doa
{
    // Uniform linear array geometry. Spacing is expressed in wavelengths.
    struct ArrayConfig
    {
        Index num_antennas = 0;
        double spacing_ratio = 0.5;

        void validate() const;
    };

    // Ground truth: DoAs in degrees and linear per-source powers. With unit
    // noise variance the per-source receive SNR equals the power.
    struct SourceSet
    {
        std::vector<double> angles_deg;
        std::vector<double> powers;

        Index size() const { return static_cast<Index>(angles_deg.size()); }
        void validate() const;

        static SourceSet equal_power(std::vector<double> angles_deg, double power);
        static SourceSet from_snr_db(std::vector<double> angles_deg, double snr_db);
    };

    struct SteeringMatrix
    {
        CMatrix entries;             // M x R, column r = a(mu_r)
        std::vector<double> phases;  // mu_r in radians
    };

    // Channel-by-time samples. segment_index records which combiner period the
    // block belongs to when several segments are collected back to back.
    struct SnapshotBlock
    {
        CMatrix samples;
        Index segment_index = 0;

        Index channels() const { return samples.rows(); }
        Index snapshots() const { return samples.cols(); }
    };

    // Seed plus a path of stream labels. Two specs with the same seed and the
    // same label path produce bit-identical draws; differing paths give
    // statistically independent streams.
    class RngSpec
    {
    public:
        explicit RngSpec(std::uint64_t seed) : seed_(seed), key_(mix(seed)) {}

        RngSpec derive(std::string_view label) const;
        RngSpec derive(std::uint64_t index) const;

        std::uint64_t seed() const { return seed_; }
        std::uint64_t stream_key() const { return key_; }
        std::mt19937_64 engine() const { return std::mt19937_64(key_); }

    private:
        RngSpec(std::uint64_t seed, std::uint64_t key) : seed_(seed), key_(key) {}
        static std::uint64_t mix(std::uint64_t x);

        std::uint64_t seed_;
        std::uint64_t key_;
    };

    /// Inter-element phase mu = 2*pi*(spacing/lambda)*sin(theta).
    double spatial_phase(double angle_deg, double spacing_ratio);

    /// Length-n vector with entries exp(j*m*phase), m = 0..n-1.
    CVector phase_ramp(Index n, double phase);

    SteeringMatrix steering_matrix(const ArrayConfig &cfg, const SourceSet &sources);

    /// Zero-mean circularly-symmetric complex Gaussian draws, row r with
    /// variance powers[r]. In periodic mode the same R x K draw is replicated
    /// into all N blocks.
    std::vector<CMatrix> generate_signals(const SourceSet &sources, Index snapshots, Index segments,
                                          bool periodic, const RngSpec &rng);

    /// Unit-variance white noise (real and imaginary parts each carry 1/2).
    SnapshotBlock generate_noise(Index channels, Index snapshots, const RngSpec &rng);

    /// X = A S + Z.
    SnapshotBlock receive_fd(const SteeringMatrix &steering, const CMatrix &signals, const SnapshotBlock &noise);

    /// Noiseless per-channel signal power Tr(A Phi A^H) / M.
    double fd_receive_snr(const SteeringMatrix &steering, const SourceSet &sources);

    // Running sum of squared angle errors. Estimates are paired with the truth
    // by sorting both ascending.
    class RmseAccumulator
    {
    public:
        void add(std::vector<double> estimates_deg, std::vector<double> truth_deg);

        double value() const;
        Index trials() const { return trials_; }

    private:
        double sum_sq_ = 0.0;
        Index terms_ = 0;
        Index trials_ = 0;
    };

    double rmse(const std::vector<std::vector<double>> &estimates_deg, const SourceSet &truth);

} // namespace pencil_doa

#endif
