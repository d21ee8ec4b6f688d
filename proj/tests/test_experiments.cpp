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

#include <cmath>
#include <filesystem>

#include "oracles.hpp"
#include "shadowbench/experiments.hpp"

using namespace shadowbench;
namespace fs = std::filesystem;

namespace {

/// Fast chain settings for pipeline tests; statistical quality is tested
/// elsewhere.
ChainOverrides tiny_chains() {
    ChainOverrides o;
    o.retained = 64;
    o.thin = 4;
    o.burn_in_steps = 64;
    return o;
}

bool same_payload(const TrialResult &a, const TrialResult &b) {
    const bool stderr_match =
        (std::isnan(a.std_error) && std::isnan(b.std_error)) ||
        a.std_error == b.std_error;
    return a.picture == b.picture && a.dim == b.dim && a.trial == b.trial &&
           a.estimator == b.estimator && a.observable == b.observable &&
           a.m == b.m && a.estimate == b.estimate &&
           a.ground_truth == b.ground_truth && stderr_match &&
           a.seed == b.seed;
}

} // namespace

TEST_CASE("canonical observables and their ground truths") {
    const int dim = 32;
    const auto obs = canonical_observables(dim);
    for (const auto &o : obs) {
        CHECK(std::abs(o.phi().norm() - 1.0) <= 1e-12);
    }
    CHECK(ground_truth_value(obs[0]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ground_truth_value(obs[1]) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ground_truth_value(obs[2]) == doctest::Approx(0.0));
    CHECK(std::abs(obs[0].phi().dot(obs[2].phi())) == 0.0);
    CHECK_THROWS_AS(canonical_observables(1), Error);
}

TEST_CASE("random observables are reproducible with uniform ground truth") {
    RngStream a(61, 0);
    RngStream b(61, 0);
    const Observable oa = random_observable(32, a);
    const Observable ob = random_observable(32, b);
    CHECK((oa.phi() - ob.phi()).norm() == 0.0);

    RngStream rng(61, 1);
    std::vector<double> gt;
    for (int k = 0; k < 10000; ++k) {
        const double g = ground_truth_value(random_observable(32, rng));
        CHECK(g >= 0.0);
        CHECK(g <= 1.0);
        gt.push_back(g);
    }
    const auto s = oracles::mean_se(gt);
    CHECK(std::abs(s.mean - 1.0 / 32.0) <= 3.0 * s.se);
}

TEST_CASE("estimator tags round trip") {
    for (const char *tag :
         {"shadow", "bme_born", "bme_frobenius", "bme_observable",
          "bme_observable_single"}) {
        CHECK(parse_estimator(tag).tag() == tag);
    }
    const Estimator two = parse_estimator("bme_observable:2");
    CHECK(two.kind == EstimatorKind::bme_observable);
    CHECK(two.n_observables == 2);
    CHECK_THROWS_AS(parse_estimator("bme_bogus"), Error);
}

TEST_CASE("plan json round trip") {
    ExperimentPlan plan;
    plan.picture = 2;
    plan.dims = {4, 8};
    plan.trials = 3;
    plan.shots = 20;
    plan.m_grid = {5, 20};
    plan.estimators = {parse_estimator("shadow"),
                       parse_estimator("bme_observable:2")};
    plan.shadow_full_grid = false;
    plan.chain_overrides = tiny_chains();
    plan.root_seed = 123;

    const auto text = plan_to_json(plan);
    const auto back = plan_from_json(text);
    CHECK(back.picture == plan.picture);
    CHECK(back.dims == plan.dims);
    CHECK(back.trials == plan.trials);
    CHECK(back.shots == plan.shots);
    CHECK(back.m_grid == plan.m_grid);
    REQUIRE(back.estimators.size() == 2);
    CHECK(back.estimators[1].n_observables == 2);
    CHECK(back.shadow_full_grid == false);
    CHECK(back.chain_overrides.retained == plan.chain_overrides.retained);
    CHECK(back.root_seed == plan.root_seed);
}

TEST_CASE("plans are validated") {
    ExperimentPlan plan;
    plan.estimators = {parse_estimator("shadow")};
    plan.m_grid = {1, 2000}; // exceeds shots = 1000
    CHECK_THROWS_AS(validate_plan(plan), Error);
    plan.m_grid = {1};
    plan.picture = 3;
    CHECK_THROWS_AS(validate_plan(plan), Error);
    plan.picture = 1;
    CHECK_NOTHROW(validate_plan(plan));
}

TEST_CASE("mse on tiny groups") {
    TrialResult hit;
    hit.estimate = 0.5;
    hit.ground_truth = 0.5;
    CHECK(mse({hit}) == 0.0);

    TrialResult a;
    a.estimate = 0.0;
    a.ground_truth = 0.0;
    TrialResult b;
    b.estimate = 1.0;
    b.ground_truth = 0.0;
    CHECK(mse({a, b}) == doctest::Approx(0.5));

    CHECK_THROWS_AS(mse({}), Error);
}

TEST_CASE("picture 1 shadow campaign has the contracted cardinality") {
    ExperimentPlan plan;
    plan.picture = 1;
    plan.dims = {8};
    plan.trials = 3;
    plan.shots = 10;
    plan.m_grid = {1, 5, 10};
    plan.estimators = {parse_estimator("shadow")};
    plan.shadow_full_grid = false;
    plan.root_seed = 9;

    const auto results = run_experiment(plan);
    CHECK(results.size() == 3u * 3u * 3u); // trials x observables x grid

    // Aggregates agree with a by-hand recomputation per group.
    const auto agg = aggregate_mse(results);
    for (const auto &row : agg) {
        double acc = 0.0;
        int n = 0;
        for (const auto &r : results) {
            if (r.estimator == row.estimator && r.observable == row.observable &&
                r.m == row.m) {
                acc += (r.estimate - r.ground_truth) *
                       (r.estimate - r.ground_truth);
                ++n;
            }
        }
        CHECK(row.n_trials == n);
        CHECK(row.mse == doctest::Approx(acc / n).epsilon(1e-12));
    }
}

TEST_CASE("campaigns are deterministic and worker-count independent") {
    ExperimentPlan plan;
    plan.picture = 2;
    plan.dims = {4};
    plan.trials = 2;
    plan.shots = 8;
    plan.m_grid = {4, 8};
    plan.estimators = {parse_estimator("shadow"), parse_estimator("bme_born")};
    plan.shadow_full_grid = false;
    plan.chain_overrides = tiny_chains();
    plan.root_seed = 10;

    const auto serial = run_experiment(plan);
    RunOptions parallel;
    parallel.workers = 4;
    const auto threaded = run_experiment(plan, parallel);
    REQUIRE(serial.size() == threaded.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(same_payload(serial[i], threaded[i]));
    }

    // BME rows stay physical and carry error bars; shadow rows do not.
    for (const auto &r : serial) {
        if (r.estimator == "bme_born") {
            CHECK(r.estimate >= 0.0);
            CHECK(r.estimate <= 1.0);
            CHECK(std::isfinite(r.std_error));
        } else {
            CHECK(std::isnan(r.std_error));
        }
    }
}

TEST_CASE("resume skips complete cells and recomputes partial ones") {
    ExperimentPlan plan;
    plan.picture = 1;
    plan.dims = {4};
    plan.trials = 2;
    plan.shots = 6;
    plan.m_grid = {3, 6};
    plan.estimators = {parse_estimator("bme_frobenius")};
    plan.shadow_full_grid = false;
    plan.chain_overrides = tiny_chains();
    plan.root_seed = 11;

    const auto full = run_experiment(plan);
    REQUIRE(full.size() == 2u * 3u * 2u);

    // Drop one row of one cell (making it partial) and a whole cell.
    RunOptions opts;
    int computed = 0;
    opts.on_result = [&computed](const TrialResult &) { ++computed; };
    for (const auto &r : full) {
        const bool dropped_cell = r.trial == 1 && r.m == 6;
        const bool dropped_row =
            r.trial == 0 && r.m == 3 && r.observable == "canonical:1";
        if (!dropped_cell && !dropped_row) {
            opts.existing.push_back(r);
        }
    }
    const auto resumed = run_experiment(plan, opts);
    REQUIRE(resumed.size() == full.size());
    for (std::size_t i = 0; i < full.size(); ++i) {
        CHECK(same_payload(full[i], resumed[i]));
    }
    // One partial cell (3 rows) and one missing cell (3 rows) recomputed.
    CHECK(computed == 6);
}

TEST_CASE("results csv round trips including empty stderr fields") {
    ExperimentPlan plan;
    plan.picture = 1;
    plan.dims = {4};
    plan.trials = 1;
    plan.shots = 5;
    plan.m_grid = {5};
    plan.estimators = {parse_estimator("shadow"), parse_estimator("bme_born")};
    plan.shadow_full_grid = false;
    plan.chain_overrides = tiny_chains();
    plan.root_seed = 12;

    const auto results = run_experiment(plan);
    const auto path = fs::temp_directory_path() / "sb_results_roundtrip.csv";
    write_results_csv(results, path);
    const auto back = read_results_csv(path);
    REQUIRE(back.size() == results.size());
    for (std::size_t i = 0; i < results.size(); ++i) {
        CHECK(same_payload(results[i], back[i]));
        CHECK(results[i].wall_time_ms == back[i].wall_time_ms);
    }
    fs::remove(path);
}
