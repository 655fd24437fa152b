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

#include "pencil_doa/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "pencil_doa/crlb.hpp"
#include "pencil_doa/estimators.hpp"
#include "pencil_doa/had_combiners.hpp"
#include "pencil_doa/pencil_core.hpp"

namespace pencil_doa
{
    namespace
    {
        constexpr double failure_limit = 0.2;

        struct Names
        {
            Scenario s;
            const char *name;
        };
        constexpr Names scenario_names[] = {{Scenario::fd_mpm, "fd_mpm"},   {Scenario::pmpm_fc, "pmpm_fc"},
                                            {Scenario::pmpm_pc, "pmpm_pc"}, {Scenario::spc_mpm, "spc_mpm"},
                                            {Scenario::crlb_fd, "crlb_fd"}, {Scenario::crlb_spc, "crlb_spc"}};

        bool is_estimator(Scenario s)
        {
            return s != Scenario::crlb_fd && s != Scenario::crlb_spc;
        }

        HadConfig had(const ExperimentConfig &cfg, Architecture arch)
        {
            return HadConfig{arch, cfg.num_antennas, cfg.num_rf_chains, cfg.spacing_ratio};
        }

        // Sources and snapshot budget at one point of the sweep.
        struct SweepPoint
        {
            SourceSet sources;
            Index snapshots = 0;
        };

        SweepPoint sweep_point(const ExperimentConfig &cfg, double value)
        {
            SweepPoint pt;
            pt.snapshots = cfg.snapshots;
            pt.sources.angles_deg = cfg.angles;
            const double p = std::pow(10.0, cfg.snr_db / 10.0);
            pt.sources.powers = cfg.powers.empty() ? std::vector<double>(cfg.angles.size(), p) : cfg.powers;

            switch (cfg.sweep_axis)
            {
            case SweepAxis::snr:
                pt.sources.powers.assign(cfg.angles.size(), std::pow(10.0, value / 10.0));
                break;
            case SweepAxis::theta:
                for (std::size_t r = 0; r < cfg.angles.size(); ++r)
                    pt.sources.angles_deg[r] = value + (cfg.angles[r] - cfg.angles[0]);
                break;
            case SweepAxis::snapshots:
                pt.snapshots = static_cast<Index>(std::llround(value));
                break;
            case SweepAxis::separation:
                for (std::size_t r = 1; r < cfg.angles.size(); ++r)
                    pt.sources.angles_deg[r] = cfg.angles[0] - static_cast<double>(r) * value;
                break;
            }
            return pt;
        }

        SourceSet draw_sources(const ExperimentConfig &cfg, const SourceSet &nominal, const RngSpec &rng)
        {
            if (!cfg.theta_random)
                return nominal;
            auto eng = rng.derive("angles").engine();
            std::uniform_real_distribution<double> u(-90.0 + cfg.theta_margin_deg, 90.0 - cfg.theta_margin_deg);
            SourceSet s = nominal;
            for (;;)
            {
                for (auto &a : s.angles_deg)
                    a = u(eng);
                std::vector<double> sorted = s.angles_deg;
                std::sort(sorted.begin(), sorted.end());
                if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end())
                    return s;
            }
        }

        CMatrix observe(const CMatrix &a, const CMatrix &s, bool noiseless, const RngSpec &rng)
        {
            CMatrix x = a * s;
            if (!noiseless)
                x += generate_noise(x.rows(), x.cols(), rng).samples;
            return x;
        }

        std::vector<double> run_fd(const ExperimentConfig &cfg, const SourceSet &src, Index snapshots,
                                   const RngSpec &rng)
        {
            const ArrayConfig array{cfg.num_antennas, cfg.spacing_ratio};
            const CMatrix a = steering_matrix(array, src).entries;
            const RngSpec r = rng.derive("fd");
            const CMatrix s = generate_signals(src, snapshots, 1, false, r)[0];
            const CMatrix x = observe(a, s, cfg.noiseless, r.derive("noise"));
            const auto pencil = PencilConfig::make(cfg.num_antennas, src.size(), cfg.pencil_parameter);
            return estimate_fd_mpm(x, pencil, array).angles_deg;
        }

        std::vector<double> run_pmpm(const ExperimentConfig &cfg, Architecture arch, const SourceSet &src,
                                     Index snapshots, const RngSpec &rng)
        {
            const ArrayConfig array{cfg.num_antennas, cfg.spacing_ratio};
            const CombinerSet codebook = build_codebook(had(cfg, arch));
            const Index N = codebook.size(), K = snapshots / N;
            if (K < 1)
                throw ConfigError("PMPM needs at least one snapshot per combiner");

            const CMatrix a = steering_matrix(array, src).entries;
            const RngSpec r = rng.derive("pmpm");
            const auto signals = generate_signals(src, K, N, true, r);
            std::vector<CMatrix> segments;
            for (Index n = 0; n < N; ++n)
                segments.push_back(observe(a, signals[n], cfg.noiseless, r.derive("noise").derive(std::uint64_t(n))));
            const auto pencil = PencilConfig::make(cfg.num_antennas, src.size(), cfg.pencil_parameter);
            return estimate_pmpm(segments, codebook, pencil, cfg.spacing_ratio).angles_deg;
        }

        std::vector<double> run_spc(const ExperimentConfig &cfg, const SourceSet &src, Index snapshots,
                                    const RngSpec &rng)
        {
            const ArrayConfig array{cfg.num_antennas, cfg.spacing_ratio};
            const HadConfig h = had(cfg, Architecture::PC);
            const SpcSplit split = spc_split(snapshots, h.subarray_size(), src.size(), h.num_rf_chains,
                                             cfg.disambiguation_divisor);
            if (split.stage1_per_segment < 1)
                throw ConfigError("SPC-MPM needs at least one stage-1 snapshot per combiner");

            const CMatrix a = steering_matrix(array, src).entries;
            const RngSpec r = rng.derive("spc");
            const Index N = h.subarray_size();

            const auto s1 = generate_signals(src, split.stage1_per_segment, N, false, r.derive("stage1"));
            std::vector<CMatrix> stage1;
            for (Index n = 0; n < N; ++n)
                stage1.push_back(observe(a, s1[n], cfg.noiseless, r.derive("noise1").derive(std::uint64_t(n))));

            const auto s2 = generate_signals(src, split.stage2_per_combiner, split.combiners, false, r.derive("stage2"));
            std::vector<CMatrix> stage2;
            for (Index g = 0; g < split.combiners; ++g)
                stage2.push_back(observe(a, s2[g], cfg.noiseless, r.derive("noise2").derive(std::uint64_t(g))));

            const auto pencil = PencilConfig::make(h.num_rf_chains, src.size(), cfg.pencil_parameter);
            return estimate_spc_mpm(stage1, stage2, h, pencil).angles_deg;
        }

        std::vector<double> run_estimator(Scenario sc, const ExperimentConfig &cfg, const SourceSet &src,
                                          Index snapshots, const RngSpec &rng)
        {
            switch (sc)
            {
            case Scenario::fd_mpm:
                return run_fd(cfg, src, snapshots, rng);
            case Scenario::pmpm_fc:
                return run_pmpm(cfg, Architecture::FC, src, snapshots, rng);
            case Scenario::pmpm_pc:
                return run_pmpm(cfg, Architecture::PC, src, snapshots, rng);
            case Scenario::spc_mpm:
                return run_spc(cfg, src, snapshots, rng);
            default:
                throw ConfigError("not an estimator scenario");
            }
        }

        enum class Bound
        {
            fd_total, // K~ snapshots
            fd_segment, // K = K~ / N snapshots
            spc
        };

        // Mean CRLB diagonal in radians^2.
        double bound_value(Bound b, const ExperimentConfig &cfg, const SourceSet &src, Index snapshots)
        {
            CrlbInputs in;
            in.array = ArrayConfig{cfg.num_antennas, cfg.spacing_ratio};
            in.sources = src;
            CrlbMatrix m;
            if (b == Bound::spc)
            {
                const HadConfig h = had(cfg, Architecture::PC);
                const SpcSplit split = spc_split(snapshots, h.subarray_size(), src.size(), h.num_rf_chains,
                                                 cfg.disambiguation_divisor);
                in.snapshots = split.stage1_per_segment;
                in.combiners = build_pc_codebook(h);
                if (in.snapshots < 1)
                    throw ConfigError("no stage-1 snapshots");
                m = crlb_spc(in);
            }
            else
            {
                in.snapshots = b == Bound::fd_total ? snapshots : snapshots / (cfg.num_antennas / cfg.num_rf_chains);
                if (in.snapshots < 1)
                    throw ConfigError("no snapshots per combiner");
                m = crlb_fd(in);
            }
            return m.entries.trace() / static_cast<double>(m.entries.rows());
        }

        std::optional<Bound> matching_bound(Scenario s)
        {
            switch (s)
            {
            case Scenario::fd_mpm:
                return Bound::fd_total;
            case Scenario::pmpm_fc:
            case Scenario::pmpm_pc:
                return Bound::fd_segment;
            case Scenario::spc_mpm:
                return Bound::spc;
            default:
                return std::nullopt;
            }
        }

        struct TrialOutcome
        {
            bool failed = false;
            std::vector<double> estimates;
            std::vector<double> truth;
            std::optional<double> bound; // radians^2
        };

        template <class Fn>
        void parallel_for(Index count, unsigned threads, Fn &&fn)
        {
            const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
            if (workers == 1)
            {
                for (Index i = 0; i < count; ++i)
                    fn(i);
                return;
            }
            std::atomic<Index> next{0};
            std::exception_ptr error;
            std::mutex error_mutex;
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back([&] {
                    for (Index i = next++; i < count; i = next++)
                    {
                        try
                        {
                            fn(i);
                        }
                        catch (...)
                        {
                            std::lock_guard<std::mutex> lock(error_mutex);
                            if (!error)
                                error = std::current_exception();
                        }
                    }
                });
            for (auto &t : pool)
                t.join();
            if (error)
                std::rethrow_exception(error);
        }

        ResultRecord finish(double sweep, const std::string &name, const std::vector<TrialOutcome> &outcomes,
                            bool with_rmse, bool with_bound)
        {
            ResultRecord rec;
            rec.sweep = sweep;
            rec.scenario = name;
            rec.trials = static_cast<Index>(outcomes.size());

            RmseAccumulator acc;
            double bound_sum = 0.0;
            Index bound_count = 0;
            for (const auto &o : outcomes)
            {
                if (o.failed)
                {
                    ++rec.failures;
                    continue;
                }
                if (with_rmse)
                    acc.add(o.estimates, o.truth);
                if (o.bound)
                {
                    bound_sum += *o.bound;
                    ++bound_count;
                }
            }
            if (with_rmse)
            {
                const bool too_many = static_cast<double>(rec.failures) > failure_limit * static_cast<double>(rec.trials);
                rec.rmse_deg = too_many || acc.trials() == 0 ? -1.0 : acc.value();
            }
            if (with_bound && bound_count > 0)
                rec.root_crlb_deg = rad_to_deg(std::sqrt(bound_sum / static_cast<double>(bound_count)));
            return rec;
        }
    } // namespace

    const char *to_string(Scenario s)
    {
        for (const auto &n : scenario_names)
            if (n.s == s)
                return n.name;
        return "?";
    }

    const char *to_string(SweepAxis a)
    {
        switch (a)
        {
        case SweepAxis::snr:
            return "snr";
        case SweepAxis::theta:
            return "theta";
        case SweepAxis::snapshots:
            return "snapshots";
        case SweepAxis::separation:
            return "separation";
        }
        return "?";
    }

    Scenario parse_scenario(const std::string &name)
    {
        for (const auto &n : scenario_names)
            if (name == n.name)
                return n.s;
        throw ConfigError("scenarios: unknown scenario '" + name + "'");
    }

    SweepAxis parse_sweep_axis(const std::string &name)
    {
        for (SweepAxis a : {SweepAxis::snr, SweepAxis::theta, SweepAxis::snapshots, SweepAxis::separation})
            if (name == to_string(a))
                return a;
        throw ConfigError("sweep_axis: unknown axis '" + name + "'");
    }

    void ExperimentConfig::validate() const
    {
        if (scenarios.empty())
            throw ConfigError("scenarios: at least one scenario is required");
        try
        {
            ArrayConfig{num_antennas, spacing_ratio}.validate();
        }
        catch (const ConfigError &e)
        {
            throw ConfigError(std::string("num_antennas/spacing_ratio: ") + e.what());
        }
        const bool needs_had = std::any_of(scenarios.begin(), scenarios.end(),
                                           [](Scenario s) { return s != Scenario::fd_mpm; });
        if (needs_had)
        {
            try
            {
                HadConfig{Architecture::PC, num_antennas, num_rf_chains, spacing_ratio}.validate();
            }
            catch (const ConfigError &e)
            {
                throw ConfigError(std::string("num_rf_chains: ") + e.what());
            }
        }
        if (angles.empty())
            throw ConfigError("angles: at least one source angle is required");
        if (!powers.empty() && powers.size() != angles.size())
            throw ConfigError("powers: expected " + std::to_string(angles.size()) + " values");
        for (double p : powers)
            if (!(p > 0.0))
                throw ConfigError("powers: values must be positive");
        if (!std::isfinite(snr_db))
            throw ConfigError("snr_db: must be finite");
        if (snapshots < 1)
            throw ConfigError("snapshots: must be at least 1");
        if (disambiguation_divisor < 1)
            throw ConfigError("disambiguation_divisor: must be at least 1");
        if (pencil_parameter < 0)
            throw ConfigError("pencil_parameter: must be non-negative");
        if (sweep_grid.empty())
            throw ConfigError("sweep_grid: at least one value is required");
        for (double v : sweep_grid)
        {
            if (!std::isfinite(v))
                throw ConfigError("sweep_grid: values must be finite");
            if (sweep_axis == SweepAxis::snapshots && (v < 1.0 || v != std::floor(v)))
                throw ConfigError("sweep_grid: snapshot counts must be positive integers");
            if (sweep_axis == SweepAxis::separation && !(v > 0.0))
                throw ConfigError("sweep_grid: separations must be positive");
        }
        if (trials < 1)
            throw ConfigError("trials: must be at least 1");
        if (!(theta_margin_deg >= 0.0 && theta_margin_deg < 90.0))
            throw ConfigError("theta_margin_deg: must lie in [0, 90)");
        if (theta_random && (sweep_axis == SweepAxis::theta || sweep_axis == SweepAxis::separation))
            throw ConfigError("theta_random: cannot be combined with a theta or separation sweep");

        if (!theta_random)
            for (double v : sweep_grid)
            {
                try
                {
                    sweep_point(*this, v).sources.validate();
                }
                catch (const Error &e)
                {
                    throw ConfigError("angles: invalid source set at sweep value " + format_fixed(v) + ": " +
                                      e.what());
                }
            }
    }

    SpcSplit spc_split(Index total_snapshots, Index rf_size, Index num_sources, Index num_rf_chains, Index divisor)
    {
        SpcSplit s;
        s.combiners = disambiguation_size(rf_size, num_sources, num_rf_chains);
        s.stage2_total = std::max(s.combiners, total_snapshots / divisor);
        s.stage2_per_combiner = s.stage2_total / s.combiners;
        s.stage1_per_segment = std::max<Index>(0, total_snapshots - s.stage2_total) / rf_size;
        return s;
    }

    unsigned resolve_threads(unsigned requested)
    {
        if (requested > 0)
            return requested;
        if (const char *env = std::getenv("PENCIL_DOA_THREADS"))
        {
            char *end = nullptr;
            const unsigned long v = std::strtoul(env, &end, 10);
            if (end != env && v > 0)
                return static_cast<unsigned>(v);
        }
        return std::max(1u, std::thread::hardware_concurrency());
    }

    std::vector<ResultRecord> run_experiment(const ExperimentConfig &cfg)
    {
        cfg.validate();
        const unsigned threads = resolve_threads(cfg.threads);
        const RngSpec root(cfg.seed);
        std::vector<ResultRecord> records;

        for (std::size_t si = 0; si < cfg.sweep_grid.size(); ++si)
        {
            const double value = cfg.sweep_grid[si];
            const SweepPoint pt = sweep_point(cfg, value);
            const RngSpec point_rng = root.derive(static_cast<std::uint64_t>(si));

            for (Scenario sc : cfg.scenarios)
            {
                const auto start = std::chrono::steady_clock::now();
                std::vector<std::pair<std::string, std::vector<TrialOutcome>>> groups;

                if (is_estimator(sc))
                {
                    const auto bound = cfg.noiseless ? std::nullopt : matching_bound(sc);
                    std::optional<double> fixed_bound;
                    if (bound && !cfg.theta_random)
                    {
                        try
                        {
                            fixed_bound = bound_value(*bound, cfg, pt.sources, pt.snapshots);
                        }
                        catch (const Error &)
                        {
                        }
                    }

                    std::vector<TrialOutcome> out(static_cast<std::size_t>(cfg.trials));
                    parallel_for(cfg.trials, threads, [&](Index t) {
                        const RngSpec rng = point_rng.derive(static_cast<std::uint64_t>(t));
                        TrialOutcome &o = out[static_cast<std::size_t>(t)];
                        const SourceSet src = draw_sources(cfg, pt.sources, rng);
                        o.truth = src.angles_deg;
                        try
                        {
                            o.estimates = run_estimator(sc, cfg, src, pt.snapshots, rng);
                        }
                        catch (const Error &)
                        {
                            o.failed = true;
                            return;
                        }
                        if (cfg.theta_random && bound)
                        {
                            try
                            {
                                o.bound = bound_value(*bound, cfg, src, pt.snapshots);
                            }
                            catch (const Error &)
                            {
                            }
                        }
                        else
                            o.bound = fixed_bound;
                    });
                    groups.emplace_back(to_string(sc), std::move(out));
                }
                else
                {
                    std::vector<std::pair<std::string, Bound>> bounds;
                    if (sc == Scenario::crlb_fd)
                        bounds = {{"crlb_fd_k", Bound::fd_segment}, {"crlb_fd_nk", Bound::fd_total}};
                    else
                        bounds = {{"crlb_spc", Bound::spc}};

                    const Index draws = cfg.theta_random ? cfg.trials : 1;
                    for (const auto &[name, b] : bounds)
                    {
                        std::vector<TrialOutcome> out(static_cast<std::size_t>(draws));
                        parallel_for(draws, threads, [&, b = b](Index t) {
                            const RngSpec rng = point_rng.derive(static_cast<std::uint64_t>(t));
                            TrialOutcome &o = out[static_cast<std::size_t>(t)];
                            try
                            {
                                o.bound = bound_value(b, cfg, draw_sources(cfg, pt.sources, rng), pt.snapshots);
                            }
                            catch (const Error &)
                            {
                                o.failed = true;
                            }
                        });
                        groups.emplace_back(name, std::move(out));
                    }
                }

                const double elapsed =
                    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
                for (const auto &[name, outcomes] : groups)
                {
                    ResultRecord rec = finish(value, name, outcomes, is_estimator(sc), true);
                    rec.wall_ms = cfg.record_timing ? elapsed / static_cast<double>(groups.size()) : 0.0;
                    records.push_back(std::move(rec));
                }
            }
        }
        return records;
    }

    std::vector<std::string> preset_names()
    {
        return {"example1", "example2", "example3", "example4"};
    }

    ExperimentConfig preset(const std::string &name)
    {
        ExperimentConfig c;
        c.trials = 200;
        c.seed = 1;
        if (name == "example1")
        {
            c.scenarios = {Scenario::pmpm_fc, Scenario::pmpm_pc, Scenario::spc_mpm,
                           Scenario::fd_mpm,  Scenario::crlb_fd, Scenario::crlb_spc};
            c.num_antennas = 32;
            c.num_rf_chains = 8;
            c.snapshots = 128;
            c.snr_db = 20.0;
            c.angles = {0.0};
            c.sweep_axis = SweepAxis::theta;
            c.sweep_grid.clear();
            for (int t = -80; t <= 80; t += 10)
                c.sweep_grid.push_back(t);
        }
        else if (name == "example2")
        {
            c.scenarios = {Scenario::pmpm_fc, Scenario::pmpm_pc, Scenario::spc_mpm,
                           Scenario::fd_mpm,  Scenario::crlb_fd, Scenario::crlb_spc};
            c.num_antennas = 64;
            c.num_rf_chains = 8;
            c.snapshots = 256;
            c.angles = {30.0};
            c.sweep_axis = SweepAxis::snr;
            c.sweep_grid = {-10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0};
        }
        else if (name == "example3")
        {
            c.scenarios = {Scenario::pmpm_fc, Scenario::pmpm_pc, Scenario::spc_mpm, Scenario::crlb_fd,
                           Scenario::crlb_spc};
            c.num_antennas = 128;
            c.num_rf_chains = 16;
            c.snapshots = 64;
            c.snr_db = 10.0;
            c.angles = {-15.0, -15.3};
            c.sweep_axis = SweepAxis::separation;
            c.sweep_grid = {0.3, 0.5, 2.0};
        }
        else if (name == "example4")
        {
            c.scenarios = {Scenario::pmpm_fc, Scenario::spc_mpm};
            c.num_antennas = 32;
            c.num_rf_chains = 8;
            c.snr_db = 10.0;
            c.angles = {0.0};
            c.theta_random = true;
            c.theta_margin_deg = 1.8;
            c.sweep_axis = SweepAxis::snapshots;
            c.sweep_grid = {4, 8, 16, 32, 64, 128, 256, 512};
        }
        else
            throw ConfigError("unknown preset '" + name + "'");
        return c;
    }

    std::string format_fixed(double v)
    {
        if (std::isnan(v))
            return "nan";
        if (std::isinf(v))
            return v > 0 ? "inf" : "-inf";
        int decimals = 8;
        if (v != 0.0)
            decimals = std::clamp(8 - static_cast<int>(std::floor(std::log10(std::abs(v)))), 1, 40);
        char buf[128];
        std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
        return buf;
    }

    void write_csv(const std::vector<ResultRecord> &records, std::ostream &os)
    {
        os << "sweep,scenario,rmse_deg,root_crlb_deg,trials,failures,wall_ms\n";
        for (const auto &r : records)
        {
            os << format_fixed(r.sweep) << ',' << r.scenario << ',';
            if (r.rmse_deg)
                os << format_fixed(*r.rmse_deg);
            os << ',';
            if (r.root_crlb_deg)
                os << format_fixed(*r.root_crlb_deg);
            os << ',' << r.trials << ',' << r.failures << ',' << format_fixed(r.wall_ms) << '\n';
        }
    }

    void emit_csv(const std::vector<ResultRecord> &records, const std::string &path)
    {
        std::ofstream os(path, std::ios::binary);
        if (!os)
            throw std::runtime_error("cannot open '" + path + "' for writing");
        write_csv(records, os);
        os.flush();
        if (!os)
            throw std::runtime_error("failed writing '" + path + "'");
    }

} // namespace pencil_doa
