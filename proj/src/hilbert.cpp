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

#include "shadowbench/hilbert.hpp"

#include <string>

namespace shadowbench {

bool is_unit(const CVec &v, double tol) {
    return std::abs(v.squaredNorm() - 1.0) <= tol;
}

bool is_hermitian(const CMat &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Complex inner_product(const CVec &a, const CVec &b) {
    if (a.size() != b.size()) {
        throw Error(Errc::dimension_mismatch,
                    "inner_product: dim " + std::to_string(a.size()) +
                        " vs " + std::to_string(b.size()));
    }
    return a.dot(b); // Eigen's dot conjugates the left argument
}

CVec normalized(const CVec &w) {
    const double n = w.norm();
    if (n <= 0.0) {
        throw Error(Errc::invalid_argument, "normalized: zero vector");
    }
    return w / n;
}

RVec hermitian_eigenvalues(const CMat &m) {
    return hermitian_eigendecomposition(m).values;
}

EigenDecomposition hermitian_eigendecomposition(const CMat &m) {
    if (m.rows() != m.cols()) {
        throw Error(Errc::dimension_mismatch,
                    "hermitian_eigendecomposition: matrix not square");
    }
    if (m.rows() > kDenseDiagnosticCap) {
        throw Error(Errc::cap_exceeded,
                    "hermitian_eigendecomposition: dim " +
                        std::to_string(m.rows()) + " exceeds dense cap " +
                        std::to_string(kDenseDiagnosticCap) +
                        "; use the matrix-free inner-product paths");
    }
    if (!is_hermitian(m, 1e-10)) {
        throw Error(Errc::invariant_violation,
                    "hermitian_eigendecomposition: input is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<CMat> solver(m);
    if (solver.info() != Eigen::Success) {
        throw Error(Errc::invalid_argument,
                    "hermitian_eigendecomposition: solver failed");
    }
    // Eigen returns ascending order; flip to descending.
    const auto n = m.rows();
    EigenDecomposition out;
    out.values = solver.eigenvalues().reverse();
    out.vectors = CMat(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        out.vectors.col(c) = solver.eigenvectors().col(n - 1 - c);
    }
    return out;
}

CVec basis_vector(int dim, int j) {
    if (dim < 1 || j < 0 || j >= dim) {
        throw Error(Errc::invalid_argument, "basis_vector: index out of range");
    }
    CVec e = CVec::Zero(dim);
    e[j] = Complex(1.0, 0.0);
    return e;
}

} // namespace shadowbench
