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

#include "pencil_doa/crlb.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace pencil_doa
{
    namespace
    {
        constexpr double pinv_cutoff = 1e-10;

        CMatrix pinv(const CMatrix &a)
        {
            Eigen::BDCSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
            const RVector &s = svd.singularValues();
            const double smax = s.size() ? s(0) : 0.0;
            RVector inv = RVector::Zero(s.size());
            for (Index i = 0; i < s.size(); ++i)
                if (s(i) > pinv_cutoff * smax)
                    inv(i) = 1.0 / s(i);
            return svd.matrixV() * inv.cast<Complex>().asDiagonal() * svd.matrixU().adjoint();
        }

        CMatrix orth_projector(const CMatrix &a)
        {
            return CMatrix::Identity(a.rows(), a.rows()) - a * pinv(a);
        }

        RMatrix invert_fim(const RMatrix &fim, double scale)
        {
            const RMatrix sym = 0.5 * (fim + fim.transpose());
            Eigen::SelfAdjointEigenSolver<RMatrix> es(sym, Eigen::EigenvaluesOnly);
            if (es.info() != Eigen::Success || !(es.eigenvalues().minCoeff() > 1e-12 * es.eigenvalues().maxCoeff()) ||
                !(es.eigenvalues().maxCoeff() > 0.0))
                throw SingularFim("Fisher information matrix is singular");
            RMatrix out = scale * sym.ldlt().solve(RMatrix::Identity(sym.rows(), sym.cols()));
            return 0.5 * (out + out.transpose());
        }

        void check_inputs(const CrlbInputs &in)
        {
            in.array.validate();
            in.sources.validate();
            if (in.snapshots < 1)
                throw ConfigError("CRLB needs at least one snapshot");
            if (!(in.noise_variance > 0.0))
                throw ConfigError("noise variance must be positive");
        }
    } // namespace

    std::vector<double> CrlbMatrix::root_diagonal_deg() const
    {
        std::vector<double> out;
        for (Index r = 0; r < entries.rows(); ++r)
            out.push_back(rad_to_deg(std::sqrt(entries(r, r))));
        return out;
    }

    double CrlbMatrix::root_mean_deg() const
    {
        return rad_to_deg(std::sqrt(entries.trace() / static_cast<double>(entries.rows())));
    }

    CMatrix steering_derivative(const ArrayConfig &array, const SourceSet &sources)
    {
        const SteeringMatrix a = steering_matrix(array, sources);
        CMatrix f = a.entries;
        for (Index r = 0; r < f.cols(); ++r)
        {
            const double dmu = 2.0 * pi * array.spacing_ratio * std::cos(deg_to_rad(sources.angles_deg[r]));
            for (Index m = 0; m < f.rows(); ++m)
                f(m, r) *= imag_unit * (static_cast<double>(m) * dmu);
        }
        return f;
    }

    CrlbMatrix crlb_fd(const CrlbInputs &in)
    {
        check_inputs(in);
        const CMatrix a = steering_matrix(in.array, in.sources).entries;
        const CMatrix f = steering_derivative(in.array, in.sources);
        const Index M = a.rows();
        const RVector p = Eigen::Map<const RVector>(in.sources.powers.data(), in.sources.size());
        const CMatrix phi = p.cast<Complex>().asDiagonal();

        const CMatrix sigma = a * phi * a.adjoint() + in.noise_variance * CMatrix::Identity(M, M);
        const CMatrix inner = phi * a.adjoint() * sigma.ldlt().solve(a) * phi;
        const CMatrix proj = f.adjoint() * orth_projector(a) * f;
        const RMatrix fim = proj.cwiseProduct(inner.transpose()).real();

        return CrlbMatrix{invert_fim(fim, in.noise_variance / (2.0 * static_cast<double>(in.snapshots)))};
    }

    CrlbMatrix crlb_spc(const CrlbInputs &in)
    {
        check_inputs(in);
        if (!in.combiners || in.combiners->matrices.empty())
            throw ConfigError("SPC bound needs a combiner set");
        const CombinerSet &cs = *in.combiners;
        const Index M = in.array.num_antennas, L = cs.num_rf_chains();
        if (cs.num_antennas() != M)
            throw ShapeError("combiners have " + std::to_string(cs.num_antennas()) + " rows for an array of " +
                             std::to_string(M));
        const double ml = static_cast<double>(M) / static_cast<double>(L);

        const CMatrix a = steering_matrix(in.array, in.sources).entries;
        const CMatrix f = steering_derivative(in.array, in.sources);
        const RVector p = Eigen::Map<const RVector>(in.sources.powers.data(), in.sources.size());
        const CMatrix phi = p.cast<Complex>().asDiagonal();

        CMatrix acc = CMatrix::Zero(a.cols(), a.cols());
        for (const auto &w : cs.matrices)
        {
            if ((w.adjoint() * w - ml * CMatrix::Identity(L, L)).norm() > 1e-8 * ml)
                throw ConfigError("SPC bound expects combiners with W^H W = (M / L) I");
            const CMatrix e = w.adjoint() * a;
            const CMatrix upsilon = e * phi * e.adjoint() + in.noise_variance * ml * CMatrix::Identity(L, L);
            const CMatrix inner = phi * e.adjoint() * upsilon.ldlt().solve(e) * phi;
            const CMatrix wf = w.adjoint() * f;
            const CMatrix proj = wf.adjoint() * orth_projector(e) * wf;
            acc += proj.cwiseProduct(inner.transpose());
        }

        const double scale = in.noise_variance * static_cast<double>(M) /
                             (2.0 * static_cast<double>(in.snapshots) * static_cast<double>(L));
        return CrlbMatrix{invert_fim(acc.real(), scale)};
    }

} // namespace pencil_doa
