// Copyright 2026 The shadowbench authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "shadowbench/errors.hpp"

namespace shadowbench {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

/// Largest dimension for which dense diagnostic matrices are formed.
inline constexpr int kDenseDiagnosticCap = 512;

/// Unit-norm slack for state vectors; Hermiticity slack for matrices.
inline constexpr double kUnitTol = 1e-12;
inline constexpr double kHermitianTol = 1e-12;

[[nodiscard]] bool is_unit(const CVec &v, double tol = kUnitTol);
[[nodiscard]] bool is_hermitian(const CMat &m, double tol = kHermitianTol);

/// <a|b> = sum_j conj(a_j) b_j. Throws on dimension mismatch.
Complex inner_product(const CVec &a, const CVec &b);

/// w / |w|. Throws on the zero vector.
CVec normalized(const CVec &w);

/// Real eigenvalues of a Hermitian matrix, sorted descending.
///
/// Dense diagnostic path only: dimensions above kDenseDiagnosticCap are
/// rejected; large-dimension quantities must go through the matrix-free
/// inner-product formulas instead.
RVec hermitian_eigenvalues(const CMat &m);

/// Full eigendecomposition (values descending, matching column order).
struct EigenDecomposition {
    RVec values;
    CMat vectors;
};
EigenDecomposition hermitian_eigendecomposition(const CMat &m);

/// Computational basis vector |j> in dimension dim.
CVec basis_vector(int dim, int j);

} // namespace shadowbench
