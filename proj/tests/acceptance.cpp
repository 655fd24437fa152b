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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit status if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pencil_doa/crlb.hpp"
#include "pencil_doa/estimators.hpp"
#include "pencil_doa/harness.hpp"

using namespace pencil_doa;

namespace
{
    struct Verdict
    {
        bool pass;
        std::string detail;
    };

    std::string fmt(const char *f, double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, f, v);
        return buf;
    }

    double seconds_since(std::chrono::steady_clock::time_point t0)
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

    double wrap(double x)
    {
        x = std::remainder(x, 2.0 * pi);
        return x <= -pi ? x + 2.0 * pi : x;
    }

    CMatrix noiseless(Index M, const SourceSet &src, const CMatrix &s)
    {
        return steering_matrix({M, 0.5}, src).entries * s;
    }

    double max_error(std::vector<double> est, std::vector<double> truth)
    {
        std::sort(est.begin(), est.end());
        std::sort(truth.begin(), truth.end());
        if (est.size() != truth.size())
            return INFINITY;
        double e = 0.0;
        for (std::size_t r = 0; r < est.size(); ++r)
            e = std::max(e, std::abs(est[r] - truth[r]));
        return e;
    }

    // Expected second-stage beam power of every candidate, relative to the noise floor.
    // The true candidate must dominate every other candidate of its source by `margin`.
    bool disambiguation_well_posed(const std::vector<double> &mus, Index m_rf, double margin)
    {
        const GainModel g{Architecture::PC, m_rf, 1.0};
        for (double mu : mus)
        {
            double truth = 0.0, worst = 0.0;
            for (Index i = 0; i < m_rf; ++i)
            {
                const double cand = wrap(mu + 2.0 * pi * i / m_rf);
                double p = 0.0;
                for (double other : mus)
                    p += std::norm(gain(other, cand, g));
                (i == 0 ? truth : worst) = i == 0 ? p : std::max(worst, p);
            }
            if (truth < margin * worst)
                return false;
        }
        return true;
    }

    // ---------------------------------------------------------------- 1
    Verdict noiseless_exactness()
    {
        const auto t0 = std::chrono::steady_clock::now();
        std::mt19937_64 eng(20240601);
        auto pick = [&](Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(eng); };
        std::uniform_real_distribution<double> angle(-89.0, 89.0);

        auto draw_angles = [&](Index R, const std::function<bool(const std::vector<double> &)> &accept) {
            for (;;)
            {
                std::vector<double> th;
                while (static_cast<Index>(th.size()) < R)
                {
                    const double t = angle(eng);
                    if (std::all_of(th.begin(), th.end(), [&](double o) { return std::abs(o - t) >= 2.0; }))
                        th.push_back(t);
                }
                if (accept(th))
                    return th;
            }
        };

        double err_fd = 0.0, err_pmpm = 0.0, err_spc = 0.0;
        int rejected = 0, failures = 0;
        for (int c = 0; c < 100; ++c)
        {
            const Index M = std::vector<Index>{8, 16, 32}[pick(0, 2)];
            const Index R = pick(1, M == 8 ? 2 : 3);
            std::vector<Index> ls;
            for (Index l = 2 * R; l < M; ++l)
                if (M % l == 0)
                    ls.push_back(l);
            const Index L = ls[pick(0, static_cast<Index>(ls.size()) - 1)];
            const Index m_rf = M / L;
            const RngSpec rng = RngSpec(7).derive(std::uint64_t(c));

            try
            {
                // FD-MPM and PMPM on an unrestricted draw.
                const auto th = draw_angles(R, [](const auto &) { return true; });
                const SourceSet src = SourceSet::equal_power(th, 1.0);
                const PencilConfig pfd{pick(R, M - R), R, M};

                const Index kt = pick(1, 4);
                const CMatrix x = noiseless(M, src, generate_signals(src, kt, 1, false, rng.derive("fd"))[0]);
                err_fd = std::max(err_fd, max_error(estimate_fd_mpm(x, pfd, {M, 0.5}).angles_deg, th));

                const Architecture arch = pick(0, 1) ? Architecture::FC : Architecture::PC;
                const CombinerSet cb = build_codebook(HadConfig{arch, M, L, 0.5});
                const auto sig = generate_signals(src, pick(1, 3), cb.size(), true, rng.derive("pmpm"));
                std::vector<CMatrix> seg;
                for (const auto &s : sig)
                    seg.push_back(noiseless(M, src, s));
                err_pmpm = std::max(err_pmpm, max_error(estimate_pmpm(seg, cb, pfd).angles_deg, th));

                // SPC-MPM on a draw whose grating candidates do not land on other sources.
                const auto ths = draw_angles(R, [&](const std::vector<double> &t) {
                    std::vector<double> mus;
                    for (double a : t)
                        mus.push_back(spatial_phase(a, 0.5));
                    const bool ok = disambiguation_well_posed(mus, m_rf, 1.25);
                    rejected += !ok;
                    return ok;
                });
                const SourceSet ssrc = SourceSet::equal_power(ths, 1.0);
                const HadConfig h{Architecture::PC, M, L, 0.5};
                const auto s1 = generate_signals(ssrc, 2, m_rf, false, rng.derive("spc1"));
                const Index G = disambiguation_size(m_rf, R, L);
                const auto s2 = generate_signals(ssrc, 512, G, false, rng.derive("spc2"));
                std::vector<CMatrix> st1, st2;
                for (const auto &s : s1)
                    st1.push_back(noiseless(M, ssrc, s));
                for (const auto &s : s2)
                    st2.push_back(noiseless(M, ssrc, s));
                const PencilConfig pspc{pick(R, L - R), R, L};
                err_spc = std::max(err_spc, max_error(estimate_spc_mpm(st1, st2, h, pspc).angles_deg, ths));
            }
            catch (const Error &e)
            {
                ++failures;
            }
        }
        const double secs = seconds_since(t0);
        const bool pass = failures == 0 && err_fd <= 1e-6 && err_pmpm <= 1e-6 && err_spc <= 1e-6 && secs < 30.0;
        return {pass, "100 configs, max error FD " + fmt("%.2e", err_fd) + " deg, PMPM " + fmt("%.2e", err_pmpm) +
                          " deg, SPC " + fmt("%.2e", err_spc) + " deg (limit 1e-6), estimator errors " +
                          std::to_string(failures) + ", SPC geometry redraws " + std::to_string(rejected) + ", " +
                          fmt("%.1f", secs) + " s (limit 30)"};
    }

    // ---------------------------------------------------------------- 2
    Verdict aggregation_identity()
    {
        const Index M = 16, L = 4;
        const SourceSet src = SourceSet::equal_power({-33.0, 8.0, 51.0}, 2.0);
        const CMatrix a = steering_matrix({M, 0.5}, src).entries;
        double worst_signal = 0.0, lo_var = INFINITY, hi_var = 0.0;
        for (Architecture arch : {Architecture::FC, Architecture::PC})
        {
            const PmpmPlan plan = PmpmPlan::make(build_codebook(HadConfig{arch, M, L, 0.5}));
            const CMatrix s = generate_signals(src, 8, 1, false, RngSpec(1))[0];
            std::vector<CMatrix> q;
            for (const auto &w : plan.codebook.matrices)
                q.push_back(apply_combiner(w, CMatrix(a * s)));
            worst_signal = std::max(worst_signal, (pmpm_aggregate(q, plan) - a * s).norm());

            // 16 x 625 = 10^4 aggregate noise entries.
            std::vector<CMatrix> qn;
            for (Index n = 0; n < plan.num_segments(); ++n)
                qn.push_back(apply_combiner(plan.codebook.matrices[n],
                                            generate_noise(M, 625, RngSpec(2).derive(std::uint64_t(n))).samples));
            const CMatrix y = pmpm_aggregate(qn, plan);
            const double var = y.squaredNorm() / static_cast<double>(y.size());
            lo_var = std::min(lo_var, var);
            hi_var = std::max(hi_var, var);
        }
        const bool pass = worst_signal < 1e-10 && lo_var >= 0.95 && hi_var <= 1.05;
        return {pass, "||Y - AS||_F max " + fmt("%.2e", worst_signal) + " (limit 1e-10), noise variance in [" +
                          fmt("%.4f", lo_var) + ", " + fmt("%.4f", hi_var) + "] (limit [0.95, 1.05])"};
    }

    // ---------------------------------------------------------------- 3
    Verdict sector_snr_bounds()
    {
        int violations = 0, checked = 0;
        const double P = 1.0;
        for (Index m_rf : {4, 8, 16})
        {
            const HadConfig h{Architecture::PC, 4 * m_rf, 4, 0.5};
            const CombinerSet cb = build_pc_codebook(h);
            const Index n = 1; // second codebook entry, phi = 2 pi / M_RF
            const double phi = cb.phase_grid[n];
            const double lower = P / (m_rf * std::pow(std::sin(pi / (2.0 * m_rf)), 2));
            const double upper = m_rf * P;
            for (int i = 1; i <= 1000; ++i)
            {
                const double mu = phi - pi / m_rf + (2.0 * pi / m_rf) * i / 1000.0;
                CVector a(h.num_antennas);
                for (Index m = 0; m < a.size(); ++m)
                    a(m) = std::polar(1.0, m * mu);
                // Per-chain output SNR: signal power over noise power ||w||^2 = M_RF.
                const CMatrix q = apply_combiner(cb.matrices[n], CMatrix(a));
                const double snr = std::norm(q(0, 0)) * P / static_cast<double>(m_rf);
                ++checked;
                violations += snr < lower * (1.0 - 1e-9) || snr > upper * (1.0 + 1e-9);
            }
        }
        // Edge-to-peak ratio 1 / (M_RF^2 sin^2(pi / (2 M_RF))) decreasing towards 4 / pi^2.
        std::vector<double> ratio;
        for (Index m_rf : {4, 16, 64, 256})
            ratio.push_back(1.0 / (m_rf * m_rf * std::pow(std::sin(pi / (2.0 * m_rf)), 2)));
        bool monotone = true;
        for (std::size_t i = 0; i < ratio.size(); ++i)
        {
            monotone = monotone && ratio[i] > 4.0 / (pi * pi);
            if (i)
                monotone = monotone && ratio[i] < ratio[i - 1] &&
                           std::abs(ratio[i] - 4.0 / (pi * pi)) < std::abs(ratio[i - 1] - 4.0 / (pi * pi));
        }
        const bool pass = violations == 0 && monotone;
        std::string r;
        for (double v : ratio)
            r += fmt("%.5f ", v);
        return {pass, std::to_string(checked) + " sector points, " + std::to_string(violations) +
                          " bound violations; edge ratio " + r + "-> " + fmt("%.5f", 4.0 / (pi * pi)) +
                          (monotone ? " (monotone)" : " (NOT monotone)")};
    }

    // ---------------------------------------------------------------- 4
    Verdict ambiguity_cardinality()
    {
        std::mt19937_64 eng(4);
        std::uniform_real_distribution<double> u(-pi, pi);
        int bad = 0, total = 0;
        for (Index m_rf : {2, 4, 8})
        {
            std::vector<double> mus;
            for (int i = 0; i < 1000; ++i)
                mus.push_back(u(eng));
            for (double e : {pi, -pi + 1e-15, pi / m_rf, -pi / m_rf, 0.0})
                mus.push_back(e);
            for (double mu : mus)
            {
                const double base = std::asin(std::clamp(mu / pi, -1.0, 1.0)) * 180.0 / pi;
                const auto c = ambiguity_set({base}, m_rf).candidates[0];
                ++total;
                bool ok = static_cast<Index>(c.size()) == m_rf;
                for (double x : c)
                    ok = ok && x > -pi && x <= pi;
                bad += !ok;
            }
        }
        return {bad == 0, std::to_string(total) + " phases over M_RF in {2, 4, 8}, " + std::to_string(bad) +
                              " sets with wrong size or out-of-range candidates"};
    }

    std::optional<double> rmse_of(const std::vector<ResultRecord> &rec, const std::string &name, double sweep)
    {
        for (const auto &r : rec)
            if (r.scenario == name && r.sweep == sweep)
                return r.rmse_deg;
        return std::nullopt;
    }

    // ---------------------------------------------------------------- 5
    Verdict example_one()
    {
        const auto t0 = std::chrono::steady_clock::now();
        ExperimentConfig c = preset("example1");
        c.scenarios = {Scenario::pmpm_fc, Scenario::pmpm_pc, Scenario::spc_mpm};
        c.sweep_grid = {0.0};
        c.trials = 200;
        const auto rec = run_experiment(c);
        const double fc = *rmse_of(rec, "pmpm_fc", 0.0), pc = *rmse_of(rec, "pmpm_pc", 0.0);
        const double spc = *rmse_of(rec, "spc_mpm", 0.0);
        const double bound =
            crlb_fd(CrlbInputs{{32, 0.5}, SourceSet::from_snr_db({0.0}, 20.0), 32, 1.0, std::nullopt}).root_mean_deg();
        const double secs = seconds_since(t0);
        const bool pass = fc >= 0 && fc <= 0.01 && pc >= 0 && pc <= 0.01 && spc >= 0 && spc <= 0.012 &&
                          std::abs(bound - 0.004) <= 0.2 * 0.004 && secs < 300.0;
        return {pass, "PMPM-FC " + fmt("%.5f", fc) + ", PMPM-PC " + fmt("%.5f", pc) + " (limit 0.01), SPC " +
                          fmt("%.5f", spc) + " (limit 0.012), root CRLB_FD(K=32) " + fmt("%.5f", bound) +
                          " (0.004 +- 20%), " + fmt("%.1f", secs) + " s (limit 300)"};
    }

    // SNR at which a log-RMSE curve crosses `target`, by linear interpolation.
    std::optional<double> crossing(const std::vector<double> &snr, const std::vector<double> &rmse, double target)
    {
        for (std::size_t i = 1; i < snr.size(); ++i)
            if (rmse[i - 1] > target && rmse[i] <= target && rmse[i] > 0)
            {
                const double a = std::log10(rmse[i - 1]), b = std::log10(rmse[i]), t = std::log10(target);
                return snr[i - 1] + (snr[i] - snr[i - 1]) * (a - t) / (a - b);
            }
        return std::nullopt;
    }

    // L-antenna FD-MPM at spacing M_RF * lambda / 2 with K snapshots; the grating
    // ambiguity is resolved with knowledge of the true angle.
    double virtual_fd_rmse(double snr_db, double theta, Index L, Index m_rf, Index K, Index trials)
    {
        const double mu = spatial_phase(theta, 0.5);
        const double p = std::pow(10.0, snr_db / 10.0);
        CVector a(L);
        for (Index l = 0; l < L; ++l)
            a(l) = std::polar(1.0, l * m_rf * mu);
        RmseAccumulator acc;
        for (Index t = 0; t < trials; ++t)
        {
            const RngSpec rng = RngSpec(606).derive(std::uint64_t(t));
            const CMatrix s = generate_signals(SourceSet{{theta}, {p}}, K, 1, false, rng.derive("s"))[0];
            const CMatrix x = a * s + generate_noise(L, K, rng.derive("z")).samples;
            const PencilConfig cfg = PencilConfig::make(L, 1);
            const HankelStack st = augment(x, cfg);
            const EigenResult eig = pencil_eigenvalues(svd_denoise(st, 1), cfg.pencil_parameter, st.num_blocks());
            const double base = std::arg(eig.eigenvalues[0]) / static_cast<double>(m_rf);
            double best = base, dist = INFINITY;
            for (Index i = 0; i < m_rf; ++i)
            {
                const double cand = wrap(base + 2.0 * pi * i / m_rf);
                if (std::abs(cand - mu) < dist)
                {
                    dist = std::abs(cand - mu);
                    best = cand;
                }
            }
            acc.add({std::asin(std::clamp(best / pi, -1.0, 1.0)) * 180.0 / pi}, {theta});
        }
        return acc.value();
    }

    // ---------------------------------------------------------------- 6
    Verdict example_two()
    {
        const auto t0 = std::chrono::steady_clock::now();
        ExperimentConfig c = preset("example2");
        c.scenarios = {Scenario::pmpm_fc, Scenario::spc_mpm};
        c.sweep_grid = {10.0};
        const auto rec = run_experiment(c);
        const double pmpm = *rmse_of(rec, "pmpm_fc", 10.0), spc = *rmse_of(rec, "spc_mpm", 10.0);

        std::vector<double> grid;
        for (double s = -5.0; s <= 35.0; s += 2.5)
            grid.push_back(s);
        ExperimentConfig sweep = preset("example2");
        sweep.scenarios = {Scenario::spc_mpm};
        sweep.sweep_grid = grid;
        const auto srec = run_experiment(sweep);
        std::vector<double> spc_curve, fd_curve;
        for (double s : grid)
        {
            const double v = *rmse_of(srec, "spc_mpm", s);
            spc_curve.push_back(v < 0 ? INFINITY : v);
            fd_curve.push_back(virtual_fd_rmse(s, 30.0, 8, 8, 28, 200));
        }
        const auto s_spc = crossing(grid, spc_curve, 0.004), s_fd = crossing(grid, fd_curve, 0.004);
        const double gain = s_spc && s_fd ? *s_fd - *s_spc : NAN;
        const double secs = seconds_since(t0);
        const bool pass = pmpm >= 0.003 && pmpm <= 0.015 && spc >= 0.003 && spc <= 0.02 && std::abs(gain - 9.0) <= 2.0 &&
                          secs < 600.0;
        return {pass, "PMPM " + fmt("%.5f", pmpm) + " (limit [0.003, 0.015]), SPC " + fmt("%.5f", spc) +
                          " (limit [0.003, 0.02]), SNR gain over L-antenna FD-MPM at 0.004 deg " + fmt("%.2f", gain) +
                          " dB (9 +- 2), " + fmt("%.1f", secs) + " s (limit 600)"};
    }

    // ---------------------------------------------------------------- 7
    Verdict example_four()
    {
        const auto t0 = std::chrono::steady_clock::now();
        ExperimentConfig c = preset("example4");
        c.sweep_grid = {4, 8, 32, 128, 512};
        const auto rec = run_experiment(c);
        bool pass = true;
        std::string detail;
        for (const char *name : {"pmpm_fc", "spc_mpm"})
        {
            detail += std::string(name) + ":";
            double prev = INFINITY;
            for (double k : c.sweep_grid)
            {
                const double v = *rmse_of(rec, name, k);
                detail += " " + fmt("%.4f", v);
                if (k >= 8)
                {
                    pass = pass && v >= 0 && v < prev;
                    prev = v;
                }
            }
            detail += "; ";
        }
        const double last = *rmse_of(rec, "pmpm_fc", 512);
        const double secs = seconds_since(t0);
        pass = pass && last <= 0.05 && secs < 600.0;
        return {pass, detail + "strictly decreasing from 8 to 512, PMPM at 512 = " + fmt("%.4f", last) +
                          " (limit 0.05), " + fmt("%.1f", secs) + " s (limit 600)"};
    }

    // Expected log-likelihood of K snapshots x ~ CN(0, R(eta)) under the truth eta0,
    // with eta = (theta [rad], P, sigma^2).
    double mean_loglik(const double *eta, const CMatrix &r0, Index M, Index K)
    {
        const SourceSet s{{eta[0] * 180.0 / pi}, {eta[1]}};
        const CMatrix a = steering_matrix({M, 0.5}, s).entries;
        const CMatrix r = eta[1] * a * a.adjoint() + eta[2] * CMatrix::Identity(M, M);
        Eigen::LDLT<CMatrix> ldlt(r);
        const double logdet = ldlt.vectorD().real().array().log().sum();
        return -static_cast<double>(K) * (logdet + ldlt.solve(r0).trace().real());
    }

    // ---------------------------------------------------------------- 8
    Verdict crlb_oracles()
    {
        const Index M = 4, K = 10;
        double worst = 0.0;
        for (double th : {-40.0, 0.0, 20.0, 65.0})
            for (double p : {0.5, 10.0})
            {
                const double eta0[3] = {th * pi / 180.0, p, 1.0};
                const CMatrix a0 = steering_matrix({M, 0.5}, SourceSet{{th}, {p}}).entries;
                const CMatrix r0 = p * a0 * a0.adjoint() + CMatrix::Identity(M, M);
                const double h[3] = {1e-4, 1e-4 * p, 1e-4};
                RMatrix fim(3, 3);
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                    {
                        auto at = [&](int si, int sj) {
                            double e[3] = {eta0[0], eta0[1], eta0[2]};
                            e[i] += si * h[i];
                            e[j] += sj * h[j];
                            return mean_loglik(e, r0, M, K);
                        };
                        fim(i, j) = -(at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * h[i] * h[j]);
                    }
                const double oracle = fim.inverse()(0, 0);
                const double bound = crlb_fd(CrlbInputs{{M, 0.5}, SourceSet{{th}, {p}}, K, 1.0, std::nullopt}).entries(0, 0);
                worst = std::max(worst, std::abs(bound / oracle - 1.0));
            }

        double scale_err = 0.0;
        const SourceSet two = SourceSet::equal_power({-12.0, 30.0}, 5.0);
        for (Index k : {1, 7, 32})
        {
            const RMatrix a = crlb_fd(CrlbInputs{{16, 0.5}, two, k, 1.0, std::nullopt}).entries;
            const RMatrix b = crlb_fd(CrlbInputs{{16, 0.5}, two, 3 * k, 1.0, std::nullopt}).entries;
            scale_err = std::max(scale_err, (a - 3.0 * b).cwiseAbs().maxCoeff() / a.cwiseAbs().maxCoeff());
            CrlbInputs s{{16, 0.5}, two, k, 1.0, build_pc_codebook(HadConfig{Architecture::PC, 16, 4, 0.5})};
            const RMatrix c = crlb_spc(s).entries;
            s.snapshots = 3 * k;
            const RMatrix d = crlb_spc(s).entries;
            scale_err = std::max(scale_err, (c - 3.0 * d).cwiseAbs().maxCoeff() / c.cwiseAbs().maxCoeff());
        }
        const bool pass = worst <= 0.01 && scale_err <= 1e-14;
        return {pass, "max relative deviation from numeric FIM " + fmt("%.2e", worst) +
                          " (limit 1e-2), snapshot scaling error " + fmt("%.1e", scale_err) + " (limit 1e-14)"};
    }

    // ---------------------------------------------------------------- 9
    Verdict determinism()
    {
        bool pass = true;
        std::string detail;
        for (const auto &name : preset_names())
        {
            ExperimentConfig c = preset(name);
            c.trials = 25;
            c.record_timing = false;
            std::ostringstream a, b;
            c.threads = 1;
            write_csv(run_experiment(c), a);
            c.threads = 4;
            write_csv(run_experiment(c), b);
            const bool same = a.str() == b.str();
            pass = pass && same;
            detail += name + (same ? " identical, " : " DIFFERENT, ");
        }
        return {pass, detail + "threads 1 vs 4, 25 trials per point"};
    }
}

int main()
{
    struct Criterion
    {
        const char *title;
        Verdict (*run)();
    };
    const Criterion criteria[] = {
        {"noiseless exactness", noiseless_exactness},
        {"aggregation identity", aggregation_identity},
        {"sector SNR bounds", sector_snr_bounds},
        {"ambiguity set size", ambiguity_cardinality},
        {"example 1 at desk scale", example_one},
        {"example 2 at desk scale", example_two},
        {"example 4 snapshot trend", example_four},
        {"CRLB oracles", crlb_oracles},
        {"determinism", determinism},
    };

    int failed = 0, index = 0;
    for (const auto &c : criteria)
    {
        ++index;
        Verdict v;
        try
        {
            v = c.run();
        }
        catch (const std::exception &e)
        {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += !v.pass;
        std::printf("%s  [%d] %s: %s\n", v.pass ? "PASS" : "FAIL", index, c.title, v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %d criteria passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}
