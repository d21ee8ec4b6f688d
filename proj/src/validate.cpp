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

#include "shadowbench/validate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shadowbench/bayes.hpp"
#include "shadowbench/experiments.hpp"
#include "shadowbench/util.hpp"

namespace shadowbench::validate {

namespace {

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

MeanSe mean_se(const std::vector<double> &v) {
    MeanSe out;
    const auto n = static_cast<double>(v.size());
    for (double x : v) {
        out.mean += x;
    }
    out.mean /= n;
    double var = 0.0;
    for (double x : v) {
        var += (x - out.mean) * (x - out.mean);
    }
    var /= (n - 1.0);
    out.se = std::sqrt(var / n);
    return out;
}

std::string fmt(double v) { return format_g17(v); }

CheckResult band_check(const std::string &name, double value, double target,
                       double band) {
    std::ostringstream os;
    os << "value=" << fmt(value) << " target=" << fmt(target)
       << " band=" << fmt(band);
    return {name, std::abs(value - target) <= band, os.str()};
}

CheckResult upper_check(const std::string &name, double value, double limit) {
    std::ostringstream os;
    os << "value=" << fmt(value) << " limit=" << fmt(limit);
    return {name, value <= limit, os.str()};
}

/// Critical chi-squared value for p = 0.001 is hardcoded per dof used below.
constexpr double kChi2Crit3Dof = 16.266;
/// One-sample Kolmogorov-Smirnov critical value at alpha = 0.001 for n=1024:
/// sqrt(-ln(alpha/2)/2) / sqrt(n).
constexpr double kKsCrit1024 = 0.060918;

PosteriorSamples constant_likelihood_chain(int dim, std::uint64_t seed,
                                           std::uint64_t stream, int retained,
                                           int thin) {
    // A Born likelihood over zero outcomes is identically 1.
    Dataset stub = simulate_dataset(dim, 1, seed, 0);
    ChainConfig cfg;
    cfg.retained = retained;
    cfg.thin = thin;
    cfg.seed = seed;
    cfg.stream_id = stream;
    return run_chain(BornLikelihood(stub, 0), cfg);
}

} // namespace

bool SuiteReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult &c) { return c.passed; });
}

SuiteReport run_haar_suite(std::uint64_t seed) {
    SuiteReport report{"haar", {}};

    {
        const int dim = 8;
        const int draws = 100000;
        RngStream rng(seed, derive_stream("validate_haar_component", dim));
        std::vector<double> p0(draws);
        for (int i = 0; i < draws; ++i) {
            p0[i] = std::norm(sample_haar_unit_vector(dim, rng)[0]);
        }
        const auto s = mean_se(p0);
        report.checks.push_back(band_check("haar_component_moment_d8", s.mean,
                                           1.0 / dim, 3.0 * s.se));
    }
    {
        const int dim = 4;
        const int shots = 100000;
        RngStream rng(seed, derive_stream("validate_haar_shots", dim));
        std::vector<double> p0(shots);
        std::vector<double> p1(shots);
        for (int i = 0; i < shots; ++i) {
            const CVec psi = simulate_shot(dim, rng);
            p0[i] = std::norm(psi[0]);
            p1[i] = std::norm(psi[1]);
        }
        const auto s0 = mean_se(p0);
        const auto s1 = mean_se(p1);
        report.checks.push_back(band_check("shot_truth_moment_d4", s0.mean,
                                           2.0 / (dim + 1.0), 3.0 * s0.se));
        report.checks.push_back(band_check("shot_offdiag_moment_d4", s1.mean,
                                           1.0 / (dim + 1.0), 3.0 * s1.se));
    }
    {
        // Conditional selection distribution on one fixed weight vector.
        const int dim = 4;
        const int draws = 100000;
        RngStream u_rng(seed, derive_stream("validate_chi2_weights", dim));
        const CVec u = sample_haar_unit_vector(dim, u_rng);
        const RVec weights = u.cwiseAbs2();
        RngStream rng(seed, derive_stream("validate_chi2_picks", dim));
        std::vector<int> counts(dim, 0);
        for (int i = 0; i < draws; ++i) {
            counts[pick_index(weights, rng)] += 1;
        }
        double chi2 = 0.0;
        for (int j = 0; j < dim; ++j) {
            const double expected = draws * weights[j] / weights.sum();
            chi2 += (counts[j] - expected) * (counts[j] - expected) / expected;
        }
        report.checks.push_back(
            upper_check("index_selection_chi2_d4", chi2, kChi2Crit3Dof));
    }
    return report;
}

SuiteReport run_shadow_suite(std::uint64_t seed) {
    SuiteReport report{"shadow", {}};

    {
        const Dataset d = simulate_dataset(16, 20, seed, 0);
        const double trace = shadow_matrix(d, 20).trace().real();
        report.checks.push_back(
            band_check("shadow_unit_trace_d16", trace, 1.0, 1e-10));
    }
    {
        const Dataset d = simulate_dataset(32, 10, seed, 1);
        const RVec evals = hermitian_eigenvalues(shadow_matrix(d, 10));
        int at_minus_one = 0;
        for (int j = 0; j < evals.size(); ++j) {
            if (std::abs(evals[j] + 1.0) <= 1e-9) {
                ++at_minus_one;
            }
        }
        std::ostringstream os;
        os << "multiplicity=" << at_minus_one << " required=" << (32 - 10);
        report.checks.push_back({"shadow_negativity_d32_m10",
                                 at_minus_one >= 22, os.str()});
    }
    {
        const int dim = 8;
        const Dataset d = simulate_dataset(dim, 15, seed, 2);
        RngStream rng(seed, derive_stream("validate_shadow_obs", dim));
        double max_dev = 0.0;
        for (int k = 0; k < 10; ++k) {
            const Observable obs = random_observable(dim, rng);
            const double free_val = shadow_expectation(d, 15, obs);
            const double dense_val =
                (shadow_matrix(d, 15) * obs.to_dense()).trace().real();
            max_dev = std::max(max_dev, std::abs(free_val - dense_val));
        }
        report.checks.push_back(
            upper_check("shadow_matrix_free_vs_dense_d8", max_dev, 1e-10));
    }
    for (const int dim : {4, 32}) {
        const int shots = 100000;
        RngStream rng(seed, derive_stream("validate_shadow_unbiased", dim));
        const CVec e0 = basis_vector(dim, 0);
        const CVec e1 = basis_vector(dim, 1);
        std::vector<double> s0(shots);
        std::vector<double> s1(shots);
        for (int i = 0; i < shots; ++i) {
            const CVec psi = simulate_shot(dim, rng);
            s0[i] = (dim + 1.0) * std::norm(e0.dot(psi)) - 1.0;
            s1[i] = (dim + 1.0) * std::norm(e1.dot(psi)) - 1.0;
        }
        const auto m0 = mean_se(s0);
        const auto m1 = mean_se(s1);
        const std::string suffix = "_d" + std::to_string(dim);
        report.checks.push_back(band_check("single_shot_unbiased_truth" +
                                               suffix,
                                           m0.mean, 1.0, 3.0 * m0.se));
        report.checks.push_back(band_check("single_shot_unbiased_ortho" +
                                               suffix,
                                           m1.mean, 0.0, 3.0 * m1.se));
    }
    return report;
}

SuiteReport run_prior_suite(std::uint64_t seed) {
    SuiteReport report{"prior", {}};

    {
        const int dim = 32;
        const auto samples = constant_likelihood_chain(
            dim, seed, derive_stream("validate_prior_mean", dim), 1 << 10, 32);
        const auto est =
            bme_expectation(samples, canonical_observables(dim)[0]);
        report.checks.push_back(band_check("projector_prior_mean_d32",
                                           est.mean, 1.0 / dim,
                                           3.0 * est.std_error));
    }
    {
        const int dim = 8;
        const auto samples = constant_likelihood_chain(
            dim, seed, derive_stream("validate_prior_moment", dim), 1 << 10,
            32);
        std::vector<double> re_sq;
        std::vector<double> im_sq;
        re_sq.reserve(samples.samples.size() * dim);
        im_sq.reserve(samples.samples.size() * dim);
        for (const CVec &x : samples.samples) {
            for (int j = 0; j < dim; ++j) {
                re_sq.push_back(x[j].real() * x[j].real());
                im_sq.push_back(x[j].imag() * x[j].imag());
            }
        }
        const auto sr = mean_se(re_sq);
        const auto si = mean_se(im_sq);
        report.checks.push_back(band_check("prior_second_moment_re_d8",
                                           sr.mean, 1.0, 3.0 * sr.se));
        report.checks.push_back(band_check("prior_second_moment_im_d8",
                                           si.mean, 1.0, 3.0 * si.se));
    }
    {
        const int dim = 8;
        const auto samples = constant_likelihood_chain(
            dim, seed, derive_stream("validate_prior_ks", dim), 1 << 10, 32);
        std::vector<double> u;
        u.reserve(samples.samples.size());
        for (const CVec &x : samples.samples) {
            u.push_back(std::norm(x[0]) / x.squaredNorm());
        }
        std::sort(u.begin(), u.end());
        // CDF of Beta(1, D-1): 1 - (1-u)^(D-1)
        double ks = 0.0;
        const auto n = static_cast<double>(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double cdf = 1.0 - std::pow(1.0 - u[i], dim - 1);
            ks = std::max(ks, std::abs((i + 1) / n - cdf));
            ks = std::max(ks, std::abs(cdf - i / n));
        }
        report.checks.push_back(
            upper_check("prior_ks_beta_marginal_d8", ks, kKsCrit1024));
    }
    return report;
}

SuiteReport run_oracle_suite(std::uint64_t seed) {
    SuiteReport report{"oracle", {}};

    {
        // Matrix-free lambda_s against the dense diagnostic form.
        RngStream rng(seed, derive_stream("validate_oracle_lambda", 0));
        double max_dev = 0.0;
        for (int k = 0; k < 20; ++k) {
            const int dim = 2 + static_cast<int>(rng.next_below(15));
            const int m = 1 + static_cast<int>(rng.next_below(20));
            const Dataset d = simulate_dataset(dim, m, seed, 100 + k);
            const Observable obs = random_observable(dim, rng);
            const double free_val = shadow_expectation(d, m, obs);
            const double dense_val =
                (shadow_matrix(d, m) * obs.to_dense()).trace().real();
            max_dev = std::max(max_dev, std::abs(free_val - dense_val));
        }
        report.checks.push_back(
            upper_check("oracle_lambda_dense_agreement", max_dev, 1e-8));
    }
    {
        // Frobenius pseudo-likelihood against the literal matrix distance.
        const int dim = 8;
        const int m = 10;
        const Dataset d = simulate_dataset(dim, m, seed, 200);
        const double k_weight = auto_k(m, dim);
        const FrobeniusShadowLikelihood like(d, m, k_weight);
        const CMat rho_s = shadow_matrix(d, m);
        RngStream rng(seed, derive_stream("validate_oracle_frob", dim));
        double max_dev = 0.0;
        for (int k = 0; k < 10; ++k) {
            const CVec x = sample_prior(dim, rng);
            const CVec xh = normalized(x);
            const CMat rho_x = xh * xh.adjoint();
            const double dense_log =
                -0.5 * k_weight * (rho_x - rho_s).squaredNorm();
            max_dev =
                std::max(max_dev, std::abs(like.log_density(x) - dense_log));
        }
        report.checks.push_back(
            upper_check("oracle_frobenius_dense_agreement", max_dev, 1e-8));
    }
    {
        // Posterior-shadow overlap against dense Tr rho_B rho_s.
        const int dim = 8;
        const int m = 12;
        const Dataset d = simulate_dataset(dim, m, seed, 300);
        ChainConfig cfg;
        cfg.retained = 128;
        cfg.thin = 8;
        cfg.seed = seed;
        cfg.stream_id = derive_stream("validate_oracle_overlap", dim);
        const auto samples = run_chain(BornLikelihood(d, m), cfg);
        const double free_val = overlap_with_shadow(samples, d, m);
        CMat rho_b = CMat::Zero(dim, dim);
        for (const CVec &x : samples.samples) {
            const CVec xh = normalized(x);
            rho_b.noalias() += xh * xh.adjoint();
        }
        rho_b /= static_cast<double>(samples.samples.size());
        const double dense_val =
            (rho_b * shadow_matrix(d, m)).trace().real();
        report.checks.push_back(band_check("oracle_overlap_dense_agreement",
                                           free_val, dense_val, 1e-8));
    }
    {
        // Projection acts as the identity on an already-physical state.
        const int dim = 6;
        RngStream rng(seed, derive_stream("validate_oracle_psd", dim));
        CMat rho = CMat::Zero(dim, dim);
        for (int k = 0; k < 3; ++k) {
            const CVec psi = sample_haar_unit_vector(dim, rng);
            rho.noalias() += (1.0 / 3.0) * (psi * psi.adjoint());
        }
        const double dev = (closest_physical_state(rho) - rho)
                               .cwiseAbs()
                               .maxCoeff();
        report.checks.push_back(
            upper_check("oracle_projection_identity_on_psd", dev, 1e-10));
    }
    {
        // One-shot shadow at D=2 projects onto the observed outcome.
        const Dataset d = simulate_dataset(2, 1, seed, 400);
        const CMat projected = closest_physical_state(shadow_matrix(d, 1));
        const CMat expected = d.outcomes[0] * d.outcomes[0].adjoint();
        const double dev = (projected - expected).cwiseAbs().maxCoeff();
        report.checks.push_back(
            upper_check("oracle_projection_one_shot_d2", dev, 1e-9));
    }
    return report;
}

SuiteReport run_suite(const std::string &name, std::uint64_t seed) {
    if (name == "haar") {
        return run_haar_suite(seed);
    }
    if (name == "shadow") {
        return run_shadow_suite(seed);
    }
    if (name == "prior") {
        return run_prior_suite(seed);
    }
    if (name == "oracle") {
        return run_oracle_suite(seed);
    }
    throw Error(Errc::invalid_argument, "unknown validation suite '" + name +
                                            "' (haar|shadow|prior|oracle)");
}

} // namespace shadowbench::validate
