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

#include <doctest.h>

#include "oracles.hpp"
#include "shadowbench/hilbert.hpp"
#include "shadowbench/simulate.hpp"

using namespace shadowbench;

namespace {

template <typename Fn> Errc thrown_code(Fn &&fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    FAIL("expected a shadowbench::Error");
    return Errc::invalid_argument;
}

} // namespace

TEST_CASE("inner product basis cases") {
    const CVec e0 = basis_vector(2, 0);
    const CVec e1 = basis_vector(2, 1);
    CHECK(inner_product(e0, e0) == Complex(1.0, 0.0));
    CHECK(inner_product(e0, e1) == Complex(0.0, 0.0));
}

TEST_CASE("inner product conjugate symmetry and norm identity") {
    RngStream rng(11, 0);
    for (int k = 0; k < 25; ++k) {
        const int dim = 2 + static_cast<int>(rng.next_below(14));
        CVec a(dim);
        CVec b(dim);
        for (int j = 0; j < dim; ++j) {
            a[j] = rng.next_complex_normal();
            b[j] = rng.next_complex_normal();
        }
        const Complex ab = inner_product(a, b);
        const Complex ba = inner_product(b, a);
        CHECK(std::abs(ab - std::conj(ba)) < 1e-12 * (1.0 + std::abs(ab)));

        const Complex aa = inner_product(a, a);
        CHECK(aa.imag() == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(aa.real() >= 0.0);
        CHECK(aa.real() ==
              doctest::Approx(a.squaredNorm()).epsilon(1e-13));
    }
}

TEST_CASE("inner product rejects mismatched dimensions") {
    const CVec a = basis_vector(2, 0);
    const CVec b = basis_vector(3, 0);
    CHECK(thrown_code([&] { inner_product(a, b); }) ==
          Errc::dimension_mismatch);
}

TEST_CASE("normalize examples") {
    CVec w(2);
    w << Complex(2.0, 0.0), Complex(0.0, 0.0);
    CHECK((normalized(w) - basis_vector(2, 0)).norm() == 0.0);

    CVec v(2);
    v << Complex(1.0, 1.0), Complex(0.0, 0.0);
    const CVec expect =
        (CVec(2) << Complex(1.0, 1.0) / std::sqrt(2.0), Complex(0.0, 0.0))
            .finished();
    CHECK((normalized(v) - expect).norm() < 1e-15);

    RngStream rng(12, 0);
    for (int k = 0; k < 20; ++k) {
        CVec x(5);
        for (int j = 0; j < 5; ++j) {
            x[j] = rng.next_complex_normal();
        }
        CHECK(std::abs(normalized(x).norm() - 1.0) <= 1e-12);
    }

    const CVec zero = CVec::Zero(3);
    CHECK(thrown_code([&] { normalized(zero); }) == Errc::invalid_argument);
}

TEST_CASE("hermitian eigenvalues on closed-form spectra") {
    const RVec id2 = hermitian_eigenvalues(CMat::Identity(2, 2));
    CHECK(id2[0] == doctest::Approx(1.0));
    CHECK(id2[1] == doctest::Approx(1.0));

    const CVec e0 = basis_vector(3, 0);
    const RVec proj = hermitian_eigenvalues(e0 * e0.adjoint());
    CHECK(proj[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(proj[1]) < 1e-12);
    CHECK(std::abs(proj[2]) < 1e-12);

    RngStream rng(13, 0);
    const CVec psi = sample_haar_unit_vector(2, rng);
    const CMat shifted =
        3.0 * (psi * psi.adjoint()) - CMat::Identity(2, 2);
    const RVec vals = hermitian_eigenvalues(shifted);
    CHECK(vals[0] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(vals[1] == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("eigendecomposition is consistent with trace and reconstruction") {
    RngStream rng(14, 0);
    const int dim = 64;
    CMat a(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            a(r, c) = rng.next_complex_normal();
        }
    }
    const CMat h = 0.5 * (a + a.adjoint());
    const auto eig = hermitian_eigendecomposition(h);

    CHECK(std::abs(eig.values.sum() - h.trace().real()) < 1e-9);
    for (int j = 1; j < dim; ++j) {
        CHECK(eig.values[j - 1] >= eig.values[j]);
    }
    const CMat rebuilt =
        eig.vectors * eig.values.asDiagonal() * eig.vectors.adjoint();
    CHECK((rebuilt - h).norm() < 1e-9);
}

TEST_CASE("eigensolver guards its preconditions") {
    CHECK(thrown_code([] {
        hermitian_eigenvalues(CMat::Zero(kDenseDiagnosticCap + 1,
                                         kDenseDiagnosticCap + 1));
    }) == Errc::cap_exceeded);

    CMat skew(2, 2);
    skew << Complex(0, 0), Complex(1, 0), Complex(2, 0), Complex(0, 0);
    CHECK(thrown_code([&] { hermitian_eigenvalues(skew); }) ==
          Errc::invariant_violation);
}

TEST_CASE("hermiticity and unit-norm predicates") {
    CHECK(is_hermitian(CMat::Identity(3, 3)));
    CMat m(2, 2);
    m << Complex(1, 0), Complex(0, 1), Complex(0, 1), Complex(1, 0);
    CHECK_FALSE(is_hermitian(m)); // off-diagonal not conjugate
    CHECK(is_unit(basis_vector(4, 2)));
    CHECK_FALSE(is_unit(2.0 * basis_vector(4, 2)));
}
