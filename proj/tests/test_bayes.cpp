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
#include <limits>

#include "oracles.hpp"
#include "shadowbench/bayes.hpp"
#include "shadowbench/experiments.hpp"
#include "shadowbench/validate.hpp"

using namespace shadowbench;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Dataset make_dataset(int dim, std::vector<CVec> outcomes) {
    Dataset d;
    d.dim = dim;
    d.outcomes = std::move(outcomes);
    return d;
}

PosteriorSamples fixed_samples(std::vector<CVec> states) {
    PosteriorSamples s;
    s.samples = std::move(states);
    return s;
}

} // namespace

TEST_CASE("Born log-likelihood extremes") {
    const CVec e0 = basis_vector(2, 0);
    const CVec e1 = basis_vector(2, 1);
    const Dataset d = make_dataset(2, {e0});

    const BornLikelihood empty(d, 0);
    CHECK(empty.log_density(2.5 * e1) == 0.0);

    const BornLikelihood one(d, 1);
    CHECK(one.log_density(Complex(0.3, -0.4) * e0) ==
          doctest::Approx(0.0).epsilon(1e-14));
    CHECK(one.log_density(e1) == -kInf);
}

TEST_CASE("Born log-likelihood is additive over measurements") {
    const Dataset d = simulate_dataset(6, 10, 51, 0);
    RngStream rng(51, 9);
    const CVec x = sample_prior(6, rng);
    for (int m = 0; m < 10; ++m) {
        const BornLikelihood shorter(d, m);
        const BornLikelihood longer(d, m + 1);
        const double born_p = std::norm(d.outcomes[m].dot(x) /
                                        Complex(x.norm(), 0.0));
        CHECK(longer.log_density(x) - shorter.log_density(x) ==
              doctest::Approx(std::log(born_p)).epsilon(1e-10));
    }
}

TEST_CASE("Frobenius pseudo-likelihood equals the dense matrix distance") {
    const int dim = 4;
    const int m = 10;
    const Dataset d = simulate_dataset(dim, m, 52, 0);
    const double k = auto_k(m, dim);
    const FrobeniusShadowLikelihood like(d, m, k);
    const CMat rho_s = shadow_matrix(d, m);
    RngStream rng(52, 1);
    for (int trial = 0; trial < 5; ++trial) {
        const CVec x = sample_prior(dim, rng);
        const CVec xh = normalized(x);
        const CMat rho_x = xh * xh.adjoint();
        const double dense = -0.5 * k * (rho_x - rho_s).squaredNorm();
        CHECK(like.log_density(x) == doctest::Approx(dense).epsilon(1e-8));
    }
    CHECK(like.tr_rho_s_sq() ==
          doctest::Approx((rho_s * rho_s).trace().real()).epsilon(1e-8));
}

TEST_CASE("observable-oriented pseudo-likelihood at a perfect match") {
    const int dim = 4;
    RngStream rng(53, 0);
    const CVec x = sample_prior(dim, rng);
    const CVec xh = normalized(x);
    const auto canonical = canonical_observables(dim);
    std::vector<Observable> obs{canonical[0], canonical[2]};
    RVec targets(2);
    targets << std::norm(canonical[0].phi().dot(xh)),
        std::norm(canonical[2].phi().dot(xh));
    const ObservableOrientedLikelihood like(obs, targets, auto_k(5, dim));
    CHECK(like.log_density(x) == doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS_AS(ObservableOrientedLikelihood({}, RVec(0), 1.0), Error);
    CHECK_THROWS_AS(ObservableOrientedLikelihood(obs, RVec::Zero(1), 1.0),
                    Error);
    CHECK_THROWS_AS(ObservableOrientedLikelihood(obs, targets, 0.0), Error);
}

TEST_CASE("pCN proposal endpoints") {
    RngStream rng(54, 0);
    const CVec x = sample_prior(8, rng);

    RngStream frozen(54, 1);
    const CVec same = pcn_propose(x, 0.0, frozen);
    CHECK((same - x).norm() == 0.0);

    RngStream w1(54, 2);
    RngStream w2(54, 2);
    const CVec from_x = pcn_propose(x, 1.0, w1);
    const CVec from_other = pcn_propose(10.0 * x, 1.0, w2);
    CHECK((from_x - from_other).norm() == 0.0); // independent of the state

    CHECK_THROWS_AS(pcn_propose(x, 1.5, rng), Error);
}

TEST_CASE("chains are deterministic given their configuration") {
    const Dataset d = simulate_dataset(4, 6, 55, 0);
    ChainConfig cfg;
    cfg.retained = 64;
    cfg.thin = 4;
    cfg.seed = 55;
    cfg.stream_id = 11;
    const auto a = run_chain(BornLikelihood(d, 6), cfg);
    const auto b = run_chain(BornLikelihood(d, 6), cfg);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t r = 0; r < a.samples.size(); ++r) {
        CHECK((a.samples[r] - b.samples[r]).norm() == 0.0);
        CHECK(a.loglik_trace[r] == b.loglik_trace[r]);
    }
    CHECK(a.acceptance_rate == b.acceptance_rate);
    CHECK(a.beta_used == b.beta_used);
}

TEST_CASE("extreme likelihood ratios do not overflow the accept step") {
    const auto canonical = canonical_observables(8);
    RVec target(1);
    target << 0.5;
    const ObservableOrientedLikelihood sharp({canonical[1]}, target, 1e12);
    ChainConfig cfg;
    cfg.retained = 64;
    cfg.thin = 4;
    cfg.beta = 1.0;      // fresh prior draw every proposal
    cfg.adapt_beta = false;
    cfg.seed = 56;
    const auto s = run_chain(sharp, cfg);
    CHECK(s.acceptance_rate >= 0.0);
    CHECK(s.acceptance_rate <= 1.0);
    CHECK(s.low_acceptance); // nearly everything is rejected
    for (const auto &x : s.samples) {
        CHECK(std::isfinite(x.squaredNorm()));
    }
}

TEST_CASE("bme_expectation on degenerate sample sets") {
    const auto canonical = canonical_observables(4);
    const CVec phi = canonical[0].phi();

    const auto aligned = fixed_samples(std::vector<CVec>(64, 2.0 * phi));
    const auto est = bme_expectation(aligned, canonical[0]);
    CHECK(est.mean == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(est.std_error == doctest::Approx(0.0));

    const auto orthogonal =
        fixed_samples(std::vector<CVec>(64, basis_vector(4, 2)));
    CHECK(bme_expectation(orthogonal, canonical[0]).mean ==
          doctest::Approx(0.0));
}

TEST_CASE("rank-1 posterior means stay inside [0,1]") {
    RngStream rng(57, 0);
    std::vector<CVec> bag;
    for (int r = 0; r < 200; ++r) {
        bag.push_back(sample_prior(6, rng));
    }
    const auto samples = fixed_samples(std::move(bag));
    for (int k = 0; k < 5; ++k) {
        const Observable obs =
            Observable::projector(sample_haar_unit_vector(6, rng));
        const auto est = bme_expectation(samples, obs);
        CHECK(est.mean >= 0.0);
        CHECK(est.mean <= 1.0);
    }
}

TEST_CASE("overlap with shadow: closed form and dense agreement") {
    const CVec e0 = basis_vector(2, 0);
    const Dataset one = make_dataset(2, {e0});
    const auto aligned = fixed_samples(std::vector<CVec>(16, e0));
    CHECK(overlap_with_shadow(aligned, one, 1) ==
          doctest::Approx(2.0).epsilon(1e-12));

    const int dim = 8;
    const int m = 12;
    const Dataset d = simulate_dataset(dim, m, 58, 0);
    RngStream rng(58, 1);
    std::vector<CVec> bag;
    for (int r = 0; r < 32; ++r) {
        bag.push_back(sample_prior(dim, rng));
    }
    const auto samples = fixed_samples(std::move(bag));
    CMat rho_b = CMat::Zero(dim, dim);
    for (const CVec &x : samples.samples) {
        const CVec xh = normalized(x);
        rho_b.noalias() += xh * xh.adjoint();
    }
    rho_b /= static_cast<double>(samples.samples.size());
    const double dense = (rho_b * shadow_matrix(d, m)).trace().real();
    CHECK(overlap_with_shadow(samples, d, m) ==
          doctest::Approx(dense).epsilon(1e-8));
    CHECK_THROWS_AS(overlap_with_shadow(samples, d, m + 1), Error);
}

TEST_CASE("D=2 Born posterior matches the quadrature oracle") {
    const Dataset d = simulate_dataset(2, 3, 7, 0);
    ChainConfig cfg;
    cfg.retained = 1 << 10;
    cfg.thin = 1 << 7;
    cfg.seed = 59;
    cfg.stream_id = 1;
    const auto samples = run_chain(BornLikelihood(d, 3), cfg);
    const auto obs = canonical_observables(2)[0];
    const auto est = bme_expectation(samples, obs);
    const double oracle =
        oracles::born_bme_quadrature_d2(d.outcomes, obs.phi());
    CHECK(std::abs(est.mean - oracle) <= 3.0 * est.std_error + 1e-4);
}

TEST_CASE("large K pins observable posteriors to clamped shadow targets") {
    const int dim = 32;
    const int m = 100;
    const Dataset d = simulate_dataset(dim, m, 7, 0);
    const auto canonical = canonical_observables(dim);
    std::vector<Observable> obs(canonical.begin(), canonical.end());
    RVec targets(3);
    for (int n = 0; n < 3; ++n) {
        targets[n] = shadow_expectation(d, m, obs[n]);
    }
    const ObservableOrientedLikelihood like(obs, targets,
                                            100.0 * auto_k(m, dim));
    ChainConfig cfg;
    cfg.retained = 1 << 10;
    cfg.thin = 1 << 8;
    cfg.seed = 60;
    cfg.stream_id = 2;
    const auto samples = run_chain(like, cfg);
    for (int n = 0; n < 3; ++n) {
        const double clamped = std::clamp(targets[n], 0.0, 1.0);
        const auto est = bme_expectation(samples, obs[n]);
        INFO("observable ", n, " target ", targets[n]);
        CHECK(std::abs(est.mean - clamped) <= 0.05);
    }
}

TEST_CASE("default thinning follows the per-model table") {
    CHECK(default_thin(LikelihoodKind::born, 32) == 512);
    CHECK(default_thin(LikelihoodKind::born, 256) == 4096);
    CHECK(default_thin(LikelihoodKind::frobenius, 32) == 256);
    CHECK(default_thin(LikelihoodKind::frobenius, 256) == 1024);
    CHECK(default_thin(LikelihoodKind::observable, 32) == 1024);
    CHECK(default_thin(LikelihoodKind::observable, 256) == 8192);
}

TEST_CASE("statistical suites: prior sampling") {
    const auto report = validate::run_prior_suite(7);
    for (const auto &check : report.checks) {
        INFO(check.name, ": ", check.detail);
        CHECK(check.passed);
    }
}

TEST_CASE("statistical suites: dense oracles") {
    const auto report = validate::run_oracle_suite(7);
    for (const auto &check : report.checks) {
        INFO(check.name, ": ", check.detail);
        CHECK(check.passed);
    }
}
