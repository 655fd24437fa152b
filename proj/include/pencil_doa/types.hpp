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

#ifndef PENCIL_DOA_TYPES_HPP
#define PENCIL_DOA_TYPES_HPP

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace pencil_doa
{
    using Complex = std::complex<double>;
    using Index = Eigen::Index;

    using CMatrix = Eigen::MatrixXcd;
    using CVector = Eigen::VectorXcd;
    using RMatrix = Eigen::MatrixXd;
    using RVector = Eigen::VectorXd;

    inline constexpr double pi = std::numbers::pi;
    inline constexpr Complex imag_unit{0.0, 1.0};

    inline double deg_to_rad(double deg) { return deg * pi / 180.0; }
    inline double rad_to_deg(double rad) { return rad * 180.0 / pi; }

    // Base of all errors raised by the library. Each subclass names the
    // failure category so that callers (the Monte-Carlo harness in
    // particular) can account for failures per kind.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
        virtual const char *kind() const noexcept { return "Error"; }
    };

#define PENCIL_DOA_ERROR(Name)                                               \
    class Name : public Error                                                \
    {                                                                        \
    public:                                                                  \
        using Error::Error;                                                  \
        const char *kind() const noexcept override { return #Name; }        \
    }

    PENCIL_DOA_ERROR(ConfigError);
    PENCIL_DOA_ERROR(ShapeError);
    PENCIL_DOA_ERROR(DegenerateSources);
    PENCIL_DOA_ERROR(TrialArityError);
    PENCIL_DOA_ERROR(IndexError);
    PENCIL_DOA_ERROR(UnsupportedGeometry);
    PENCIL_DOA_ERROR(PencilParamError);
    PENCIL_DOA_ERROR(EmptyInput);
    PENCIL_DOA_ERROR(NumericalError);
    PENCIL_DOA_ERROR(RankError);
    PENCIL_DOA_ERROR(SingularFim);
    PENCIL_DOA_ERROR(AmbiguousGeometryError);

#undef PENCIL_DOA_ERROR

} // namespace pencil_doa

#endif
