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

#include <variant>
#include <vector>

#include "shadowbench/hilbert.hpp"
#include "shadowbench/simulate.hpp"

namespace shadowbench {

/// An observable: either a rank-1 projector |phi><phi| held as the unit
/// vector |phi>, or a small dense Hermitian matrix for diagnostics.
class Observable {
  public:
    static Observable projector(CVec phi);
    static Observable matrix(CMat m);

    [[nodiscard]] bool is_projector() const {
        return std::holds_alternative<CVec>(rep_);
    }
    [[nodiscard]] const CVec &phi() const { return std::get<CVec>(rep_); }
    [[nodiscard]] const CMat &dense() const { return std::get<CMat>(rep_); }
    [[nodiscard]] int dim() const;

    /// Dense D x D form (projectors are expanded on demand).
    [[nodiscard]] CMat to_dense() const;

  private:
    explicit Observable(std::variant<CVec, CMat> rep) : rep_(std::move(rep)) {}
    std::variant<CVec, CMat> rep_;
};

/// Shadow estimate lambda_s = Tr rho_s Lambda over the first m_used outcomes.
///
/// Rank-1 observables use the matrix-free form
///   (D+1)/M * sum_m |<phi|psi_m>|^2 - 1
/// so no D x D matrix is ever formed; dense observables go through
/// shadow_matrix and are therefore subject to the dense diagnostic cap.
double shadow_expectation(const Dataset &d, int m_used, const Observable &obs);

/// lambda_s on an ascending grid of prefix lengths in one O(M_max) pass.
std::vector<double> shadow_expectation_grid(const Dataset &d,
                                            const std::vector<int> &m_grid,
                                            const Observable &obs);

/// Dense rho_s = (D+1)/M sum_m |psi_m><psi_m| - I. Diagnostic path.
CMat shadow_matrix(const Dataset &d, int m_used);

/// Tr rho_s^2 without forming rho_s:
///   (D+1)^2/M^2 sum_{m,m'} |<psi_m|psi_m'>|^2 - 2(D+1) + D.
double shadow_self_overlap(const Dataset &d, int m_used);

/// Frobenius-nearest density matrix to a unit-trace Hermitian matrix.
///
/// Eigenvalue truncation: walk the spectrum from the bottom, zeroing
/// eigenvalues while the running deficit would push the current one negative,
/// then spread the deficit uniformly over the survivors. Eigenvectors are
/// kept, so the result is the projection onto {rho >= 0, Tr rho = 1}.
CMat closest_physical_state(const CMat &m);

} // namespace shadowbench
