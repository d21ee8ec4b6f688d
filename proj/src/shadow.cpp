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

#include "shadowbench/shadow.hpp"

#include <algorithm>
#include <string>

namespace shadowbench {

namespace {

void check_prefix(const Dataset &d, int m_used, const char *context) {
    if (m_used < 1 || m_used > d.shots()) {
        throw Error(Errc::invalid_argument,
                    std::string(context) + ": m_used " +
                        std::to_string(m_used) + " outside [1, " +
                        std::to_string(d.shots()) + "]");
    }
}

void check_obs_dim(const Dataset &d, const Observable &obs,
                   const char *context) {
    if (obs.dim() != d.dim) {
        throw Error(Errc::dimension_mismatch,
                    std::string(context) + ": observable dim " +
                        std::to_string(obs.dim()) + " vs dataset dim " +
                        std::to_string(d.dim));
    }
}

} // namespace

Observable Observable::projector(CVec phi) {
    if (!is_unit(phi)) {
        throw Error(Errc::invariant_violation,
                    "Observable::projector: |phi> must be unit norm");
    }
    return Observable(std::variant<CVec, CMat>(std::move(phi)));
}

Observable Observable::matrix(CMat m) {
    if (!is_hermitian(m)) {
        throw Error(Errc::invariant_violation,
                    "Observable::matrix: matrix must be Hermitian");
    }
    return Observable(std::variant<CVec, CMat>(std::move(m)));
}

int Observable::dim() const {
    return is_projector() ? static_cast<int>(phi().size())
                          : static_cast<int>(dense().rows());
}

CMat Observable::to_dense() const {
    if (is_projector()) {
        return phi() * phi().adjoint();
    }
    return dense();
}

double shadow_expectation(const Dataset &d, int m_used, const Observable &obs) {
    check_prefix(d, m_used, "shadow_expectation");
    check_obs_dim(d, obs, "shadow_expectation");
    const double dplus1 = static_cast<double>(d.dim) + 1.0;
    if (obs.is_projector()) {
        double overlap_sum = 0.0;
        for (int m = 0; m < m_used; ++m) {
            overlap_sum += std::norm(obs.phi().dot(d.outcomes[m]));
        }
        return dplus1 / m_used * overlap_sum - 1.0;
    }
    const CMat rho_s = shadow_matrix(d, m_used);
    return (rho_s * obs.dense()).trace().real();
}

std::vector<double> shadow_expectation_grid(const Dataset &d,
                                            const std::vector<int> &m_grid,
                                            const Observable &obs) {
    check_obs_dim(d, obs, "shadow_expectation_grid");
    if (m_grid.empty()) {
        return {};
    }
    if (!std::is_sorted(m_grid.begin(), m_grid.end())) {
        throw Error(Errc::invalid_argument,
                    "shadow_expectation_grid: m_grid must be ascending");
    }
    check_prefix(d, m_grid.front(), "shadow_expectation_grid");
    check_prefix(d, m_grid.back(), "shadow_expectation_grid");

    const double dplus1 = static_cast<double>(d.dim) + 1.0;
    // Tr Lambda enters the recentring term: 1 for unit projectors.
    const double trace_l =
        obs.is_projector() ? 1.0 : obs.dense().trace().real();
    std::vector<double> out;
    out.reserve(m_grid.size());
    double running = 0.0;
    int m_done = 0;
    for (int m_target : m_grid) {
        for (; m_done < m_target; ++m_done) {
            const CVec &psi = d.outcomes[m_done];
            if (obs.is_projector()) {
                running += std::norm(obs.phi().dot(psi));
            } else {
                running += (psi.dot(obs.dense() * psi)).real();
            }
        }
        out.push_back(dplus1 / m_done * running - trace_l);
    }
    return out;
}

CMat shadow_matrix(const Dataset &d, int m_used) {
    check_prefix(d, m_used, "shadow_matrix");
    if (d.dim > kDenseDiagnosticCap) {
        throw Error(Errc::cap_exceeded,
                    "shadow_matrix: dim " + std::to_string(d.dim) +
                        " exceeds dense cap " +
                        std::to_string(kDenseDiagnosticCap));
    }
    CMat acc = CMat::Zero(d.dim, d.dim);
    for (int m = 0; m < m_used; ++m) {
        acc.noalias() += d.outcomes[m] * d.outcomes[m].adjoint();
    }
    const double dplus1 = static_cast<double>(d.dim) + 1.0;
    CMat rho_s = (dplus1 / m_used) * acc;
    rho_s -= CMat::Identity(d.dim, d.dim);
    return rho_s;
}

double shadow_self_overlap(const Dataset &d, int m_used) {
    check_prefix(d, m_used, "shadow_self_overlap");
    const double dim = d.dim;
    const double dplus1 = dim + 1.0;
    // |<psi_m|psi_m>|^2 = 1 on the diagonal; off-diagonal terms pair up.
    double pair_sum = static_cast<double>(m_used);
    for (int m = 0; m < m_used; ++m) {
        for (int mp = m + 1; mp < m_used; ++mp) {
            pair_sum += 2.0 * std::norm(d.outcomes[m].dot(d.outcomes[mp]));
        }
    }
    const double mm = static_cast<double>(m_used) * m_used;
    return dplus1 * dplus1 / mm * pair_sum - 2.0 * dplus1 + dim;
}

CMat closest_physical_state(const CMat &m) {
    if (std::abs(m.trace().real() - 1.0) > 1e-9 ||
        std::abs(m.trace().imag()) > 1e-9) {
        throw Error(Errc::invariant_violation,
                    "closest_physical_state: input trace must be 1");
    }
    const auto eig = hermitian_eigendecomposition(m);
    const int dim = static_cast<int>(eig.values.size());

    RVec vals = eig.values; // descending
    double deficit = 0.0;
    int last = dim - 1;
    while (last >= 0 && vals[last] + deficit / (last + 1) < 0.0) {
        deficit += vals[last];
        vals[last] = 0.0;
        --last;
    }
    for (int j = 0; j <= last; ++j) {
        vals[j] += deficit / (last + 1);
    }

    CMat out = eig.vectors * vals.asDiagonal() *
               eig.vectors.adjoint();
    out = 0.5 * (out + out.adjoint().eval()); // scrub rounding asymmetry
    return out;
}

} // namespace shadowbench
