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

#include <array>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shadowbench/bayes.hpp"
#include "shadowbench/shadow.hpp"

namespace shadowbench {

// The evaluation protocols: Picture 1 estimates three fixed rank-1
// observables against the fixed ground truth |0><0|; Picture 2 draws one
// Haar-random rank-1 observable per trial, which is equivalent to
// randomizing the ground truth while keeping the observable fixed. Both
// pictures consume identical simulated datasets.

enum class EstimatorKind {
    shadow,
    bme_born,
    bme_frobenius,
    bme_observable,        // observable-oriented pseudo-likelihood, N targets
    bme_observable_single, // single-target variant (N = 1)
};

struct Estimator {
    EstimatorKind kind = EstimatorKind::shadow;
    int n_observables = 3; // bme_observable only

    [[nodiscard]] std::string tag() const;
};

/// Parse "shadow", "bme_born", "bme_frobenius", "bme_observable[:N]",
/// "bme_observable_single".
Estimator parse_estimator(const std::string &text);

/// Optional ChainConfig deltas applied to every chain of a campaign.
struct ChainOverrides {
    std::optional<int> retained;
    std::optional<int> thin;
    std::optional<long long> burn_in_steps;
    std::optional<double> beta; // fixed value; disables adaptation
};

struct ExperimentPlan {
    int picture = 1;
    std::vector<int> dims = {32};
    int trials = 10;
    int shots = 1000;
    std::vector<int> m_grid = {1, 50, 100, 200, 400, 600, 800, 1000};
    std::vector<Estimator> estimators;
    bool shadow_full_grid = true; // shadow on every M in 1..shots
    ChainOverrides chain_overrides;
    std::uint64_t root_seed = 7;
};

void validate_plan(const ExperimentPlan &plan);
std::string plan_to_json(const ExperimentPlan &plan);
ExperimentPlan plan_from_json(const std::string &text);
ExperimentPlan load_plan(const std::filesystem::path &path);

struct TrialResult {
    int picture = 1;
    int dim = 0;
    int trial = 0;
    std::string estimator;
    std::string observable;
    int m = 0;
    double estimate = 0.0;
    double ground_truth = 0.0;
    double std_error = 0.0; // NaN for shadow rows
    std::uint64_t seed = 0;
    double wall_time_ms = 0.0;
};

/// The three fixed rank-1 probes: |0>, the half-overlap superposition
/// (|0> + uniform tail)/norm, and |1>. Ground truths under rho_g = |0><0|
/// are 1, 1/2 and 0.
std::array<Observable, 3> canonical_observables(int dim);

/// Rank-1 projector onto a Haar-uniform unit vector.
Observable random_observable(int dim, RngStream &rng);

/// Ground-truth expectation Tr rho_g Lambda for rho_g = |0><0|.
double ground_truth_value(const Observable &obs);

struct RunOptions {
    int workers = 1;
    /// Rows from an interrupted run; their cells are skipped.
    std::vector<TrialResult> existing;
    /// Called under a lock as each row is produced (incremental emission).
    std::function<void(const TrialResult &)> on_result;
};

/// Evaluate every (dim, trial, estimator, observable, M) cell of the plan.
/// Returns all rows (existing plus new) in canonical order: sorted by
/// picture, dim, trial, estimator, observable, m. Deterministic for a fixed
/// plan regardless of the worker count.
std::vector<TrialResult> run_experiment(const ExperimentPlan &plan,
                                        const RunOptions &options = {});

/// Mean squared error against ground truth over one group of trials.
double mse(const std::vector<TrialResult> &group);

struct MseRow {
    int picture = 1;
    int dim = 0;
    std::string estimator;
    std::string observable;
    int m = 0;
    double mse = 0.0;
    int n_trials = 0;
};

/// Group rows by (picture, dim, estimator, observable, m) and reduce.
std::vector<MseRow> aggregate_mse(const std::vector<TrialResult> &results);

// CSV exchange formats (numbers carry 17 significant digits).
void write_results_csv(const std::vector<TrialResult> &results,
                       const std::filesystem::path &path);
std::vector<TrialResult> read_results_csv(const std::filesystem::path &path);
void write_mse_csv(const std::vector<MseRow> &rows,
                   const std::filesystem::path &path);

} // namespace shadowbench
