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

#ifndef PENCIL_DOA_HARNESS_HPP
#define PENCIL_DOA_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pencil_doa/array_model.hpp"

namespace pencil_doa
{
    enum class Scenario
    {
        fd_mpm,
        pmpm_fc,
        pmpm_pc,
        spc_mpm,
        crlb_fd,
        crlb_spc
    };

    enum class SweepAxis
    {
        snr,
        theta,
        snapshots,
        separation
    };

    const char *to_string(Scenario s);
    const char *to_string(SweepAxis a);
    Scenario parse_scenario(const std::string &name);
    SweepAxis parse_sweep_axis(const std::string &name);

    struct ExperimentConfig
    {
        std::vector<Scenario> scenarios{Scenario::pmpm_fc};
        Index num_antennas = 32;
        double spacing_ratio = 0.5;
        Index num_rf_chains = 8;

        std::vector<double> angles{0.0};
        std::vector<double> powers;  // linear, overrides snr_db when non-empty
        double snr_db = 20.0;
        bool noiseless = false;

        Index snapshots = 128;              // K~
        Index disambiguation_divisor = 8;   // K~_2 = max(G, K~ / divisor)
        Index pencil_parameter = 0;         // 0 = floor(C / 2)

        SweepAxis sweep_axis = SweepAxis::snr;
        std::vector<double> sweep_grid{20.0};

        Index trials = 200;
        std::uint64_t seed = 1;
        bool theta_random = false;
        double theta_margin_deg = 1.8;

        unsigned threads = 0;       // 0 = PENCIL_DOA_THREADS or hardware default
        bool record_timing = true;  // false writes wall_ms = 0 for byte-stable output

        void validate() const;
    };

    struct ResultRecord
    {
        double sweep = 0.0;
        std::string scenario;
        std::optional<double> rmse_deg;
        std::optional<double> root_crlb_deg;
        Index trials = 0;
        Index failures = 0;
        double wall_ms = 0.0;
    };

    // Snapshot budget of one SPC-MPM trial.
    struct SpcSplit
    {
        Index combiners = 0;           // G
        Index stage1_per_segment = 0;  // K
        Index stage2_per_combiner = 0; // K_2 per disambiguation combiner
        Index stage2_total = 0;        // K~_2
    };

    SpcSplit spc_split(Index total_snapshots, Index rf_size, Index num_sources, Index num_rf_chains, Index divisor);

    /// Worker count: explicit request, else PENCIL_DOA_THREADS, else hardware concurrency.
    unsigned resolve_threads(unsigned requested);

    std::vector<ResultRecord> run_experiment(const ExperimentConfig &cfg);

    std::vector<std::string> preset_names();
    ExperimentConfig preset(const std::string &name);

    void write_csv(const std::vector<ResultRecord> &records, std::ostream &os);
    void emit_csv(const std::vector<ResultRecord> &records, const std::string &path);

    /// Fixed notation with at least nine significant digits.
    std::string format_fixed(double v);

} // namespace pencil_doa

#endif
