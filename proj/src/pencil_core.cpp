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

#include "pencil_doa/pencil_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace pencil_doa
{
    namespace
    {
        constexpr double pinv_cutoff = 1e-10;
        constexpr double rank_floor = 1e-13;

        std::string dims(Index r, Index c)
        {
            return std::to_string(r) + "x" + std::to_string(c);
        }

        std::vector<Complex> largest_modulus(const CVector &values, Index count)
        {
            std::vector<Complex> v(values.data(), values.data() + values.size());
            std::stable_sort(v.begin(), v.end(), [](Complex a, Complex b) { return std::abs(a) > std::abs(b); });
            v.resize(static_cast<std::size_t>(count));
            return v;
        }

        // Column indices kept after deleting one column of every (xi + 1)-wide block.
        std::vector<Index> kept_columns(Index xi, Index num_blocks, bool drop_last)
        {
            std::vector<Index> cols;
            cols.reserve(static_cast<std::size_t>(num_blocks * xi));
            for (Index k = 0; k < num_blocks; ++k)
                for (Index j = 0; j < xi; ++j)
                    cols.push_back(k * (xi + 1) + (drop_last ? j : j + 1));
            return cols;
        }
    } // namespace

    void PencilConfig::validate() const
    {
        if (num_sources < 1)
            throw PencilParamError("number of sources must be positive");
        if (channel_count < 2)
            throw PencilParamError("channel count must be at least 2, got " + std::to_string(channel_count));
        if (pencil_parameter < num_sources || pencil_parameter > channel_count - num_sources)
            throw PencilParamError("pencil parameter " + std::to_string(pencil_parameter) + " outside [R, C - R] = [" +
                                   std::to_string(num_sources) + ", " + std::to_string(channel_count - num_sources) +
                                   "]");
    }

    PencilConfig PencilConfig::make(Index channel_count, Index num_sources, Index xi)
    {
        PencilConfig cfg{xi > 0 ? xi : channel_count / 2, num_sources, channel_count};
        cfg.validate();
        return cfg;
    }

    double DenoisedHankel::gap() const
    {
        if (largest_discarded <= 0.0)
            return std::numeric_limits<double>::infinity();
        return smallest_retained / largest_discarded;
    }

    CMatrix hankel(const CVector &x, const PencilConfig &cfg)
    {
        cfg.validate();
        if (x.size() != cfg.channel_count)
            throw ShapeError("hankel: vector length " + std::to_string(x.size()) + " but channel count " +
                             std::to_string(cfg.channel_count));
        const Index xi = cfg.pencil_parameter, rows = cfg.channel_count - xi;
        CMatrix h(rows, xi + 1);
        for (Index j = 0; j <= xi; ++j)
            h.col(j) = x.segment(j, rows);
        return h;
    }

    HankelStack augment(const std::vector<CVector> &snapshots, const PencilConfig &cfg)
    {
        if (snapshots.empty())
            throw EmptyInput("augment: no snapshots");
        cfg.validate();

        const Index xi = cfg.pencil_parameter, rows = cfg.channel_count - xi;
        const Index ka = static_cast<Index>(snapshots.size());
        HankelStack stack;
        stack.pencil_parameter = xi;
        stack.augmented.resize(rows, ka * (xi + 1));
        stack.blocks.reserve(snapshots.size());
        for (Index k = 0; k < ka; ++k)
        {
            stack.blocks.push_back(hankel(snapshots[k], cfg));
            stack.augmented.middleCols(k * (xi + 1), xi + 1) = stack.blocks.back();
        }
        return stack;
    }

    HankelStack augment(const CMatrix &x, const PencilConfig &cfg)
    {
        std::vector<CVector> cols;
        cols.reserve(static_cast<std::size_t>(x.cols()));
        for (Index k = 0; k < x.cols(); ++k)
            cols.emplace_back(x.col(k));
        return augment(cols, cfg);
    }

    DenoisedHankel svd_denoise(const HankelStack &stack, Index num_sources)
    {
        return svd_denoise(stack.augmented, num_sources);
    }

    DenoisedHankel svd_denoise(const CMatrix &h, Index num_sources)
    {
        if (h.size() == 0)
            throw EmptyInput("svd_denoise: empty matrix");
        if (num_sources < 1 || num_sources > std::min(h.rows(), h.cols()))
            throw PencilParamError("svd_denoise: rank " + std::to_string(num_sources) + " invalid for " +
                                   dims(h.rows(), h.cols()) + " matrix");
        if (!h.allFinite())
            throw NumericalError("svd_denoise: non-finite input");

        Eigen::BDCSVD<CMatrix> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
        if (svd.info() != Eigen::Success)
            throw NumericalError("svd_denoise: SVD did not converge");

        const RVector &s = svd.singularValues();
        DenoisedHankel out;
        out.left_vectors = svd.matrixU().leftCols(num_sources);
        out.right_vectors = svd.matrixV().leftCols(num_sources);
        out.singular_values = s.head(num_sources);
        out.smallest_retained = s(num_sources - 1);
        out.largest_discarded = num_sources < s.size() ? s(num_sources) : 0.0;
        out.matrix = out.left_vectors * out.singular_values.cast<Complex>().asDiagonal() * out.right_vectors.adjoint();
        return out;
    }

    PencilPair split_pencil(const CMatrix &h, Index xi, Index num_blocks)
    {
        if (xi < 1 || num_blocks < 1 || h.cols() != num_blocks * (xi + 1))
            throw ShapeError("split_pencil: " + dims(h.rows(), h.cols()) + " matrix is not " +
                             std::to_string(num_blocks) + " blocks of width " + std::to_string(xi + 1));
        PencilPair pair;
        pair.left = h(Eigen::all, kept_columns(xi, num_blocks, true));
        pair.right = h(Eigen::all, kept_columns(xi, num_blocks, false));
        return pair;
    }

    EigenResult pencil_eigenvalues(const PencilPair &pair, Index num_sources)
    {
        if (pair.left.rows() != pair.right.rows() || pair.left.cols() != pair.right.cols())
            throw ShapeError("pencil_eigenvalues: left and right differ in shape");
        if (num_sources < 1 || num_sources > pair.left.cols())
            throw PencilParamError("pencil_eigenvalues: invalid source count");

        Eigen::BDCSVD<CMatrix> svd(pair.left, Eigen::ComputeThinU | Eigen::ComputeThinV);
        if (svd.info() != Eigen::Success)
            throw NumericalError("pencil_eigenvalues: SVD did not converge");
        const RVector &s = svd.singularValues();
        const double smax = s.size() ? s(0) : 0.0;

        Index rank = 0;
        while (rank < s.size() && s(rank) > pinv_cutoff * smax)
            ++rank;
        if (smax <= 0.0 || rank < num_sources)
            throw RankError("pencil_eigenvalues: left matrix has numerical rank " + std::to_string(rank) +
                            " below " + std::to_string(num_sources));

        RVector inv_s = RVector::Zero(s.size());
        inv_s.head(rank) = s.head(rank).cwiseInverse();
        const CMatrix pinv = svd.matrixV() * inv_s.cast<Complex>().asDiagonal() * svd.matrixU().adjoint();

        Eigen::ComplexEigenSolver<CMatrix> es(pinv * pair.right, false);
        if (es.info() != Eigen::Success)
            throw NumericalError("pencil_eigenvalues: eigen decomposition failed");

        EigenResult out;
        out.eigenvalues = largest_modulus(es.eigenvalues(), num_sources);
        out.smallest_retained = s(num_sources - 1);
        out.largest_discarded = num_sources < s.size() ? s(num_sources) : 0.0;
        return out;
    }

    EigenResult pencil_eigenvalues(const DenoisedHankel &d, Index xi, Index num_blocks)
    {
        const CMatrix &v = d.right_vectors;
        const Index r = v.cols();
        if (xi < 1 || num_blocks < 1 || v.rows() != num_blocks * (xi + 1))
            throw ShapeError("pencil_eigenvalues: factor has " + std::to_string(v.rows()) + " rows, expected " +
                             std::to_string(num_blocks * (xi + 1)));
        if (r < 1 || !(d.smallest_retained > rank_floor * d.singular_values(0)))
            throw RankError("pencil_eigenvalues: denoised matrix has numerical rank below " + std::to_string(r));

        // Left = U S V1^H, right = U S V2^H, so pinv(left) right = V1 (V1^H V1)^-1 V2^H,
        // whose nonzero eigenvalues are those of (V1^H V1)^-1 V2^H V1.
        const CMatrix v1 = v(kept_columns(xi, num_blocks, true), Eigen::all);
        const CMatrix v2 = v(kept_columns(xi, num_blocks, false), Eigen::all);
        const CMatrix gram = v1.adjoint() * v1;

        Eigen::SelfAdjointEigenSolver<CMatrix> ges(gram, Eigen::EigenvaluesOnly);
        if (ges.info() != Eigen::Success || !(ges.eigenvalues().minCoeff() > pinv_cutoff))
            throw RankError("pencil_eigenvalues: shifted subspace is rank deficient");

        const CMatrix core = gram.ldlt().solve(v2.adjoint() * v1);
        Eigen::ComplexEigenSolver<CMatrix> es(core, false);
        if (es.info() != Eigen::Success)
            throw NumericalError("pencil_eigenvalues: eigen decomposition failed");

        EigenResult out;
        out.eigenvalues = largest_modulus(es.eigenvalues(), r);
        out.smallest_retained = d.smallest_retained;
        out.largest_discarded = d.largest_discarded;
        return out;
    }

    AngleEstimate eigen_to_angles(const EigenResult &eig, double spacing_ratio, Index dilation)
    {
        if (!(spacing_ratio > 0.0) || dilation < 1)
            throw ConfigError("eigen_to_angles: spacing and dilation must be positive");

        AngleEstimate out;
        const double scale = 2.0 * pi * spacing_ratio * static_cast<double>(dilation);
        for (Complex nu : eig.eigenvalues)
        {
            const double arg = std::arg(nu) / scale;
            if (std::abs(arg) > 1.05)
                out.clamped = true;
            out.angles_deg.push_back(rad_to_deg(std::asin(std::clamp(arg, -1.0, 1.0))));
        }
        std::sort(out.angles_deg.begin(), out.angles_deg.end());
        return out;
    }

} // namespace pencil_doa
