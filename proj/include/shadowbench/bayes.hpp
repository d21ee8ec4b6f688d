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

#include <cstdint>
#include <variant>
#include <vector>

#include "shadowbench/hilbert.hpp"
#include "shadowbench/rng.hpp"
#include "shadowbench/shadow.hpp"
#include "shadowbench/simulate.hpp"

namespace shadowbench {

// Pure-state parameterization: an unnormalized complex vector x represents
// rho(x) = x x^dag / |x|^2, and the prior is the standard complex Gaussian
// exp(-x^dag x / 2), i.e. the Haar distribution after normalization. None of
// the likelihood interfaces below assume purity of rho; only the sampler's
// parameterization does.

/// Physical likelihood: product of Born probabilities over a dataset prefix.
class BornLikelihood {
  public:
    BornLikelihood(const Dataset &d, int m_used);

    /// sum_m log(|<psi_m|x>|^2 / |x|^2); -inf when any overlap vanishes.
    [[nodiscard]] double log_density(const CVec &x) const;
    [[nodiscard]] int dim() const { return dim_; }
    [[nodiscard]] int m_used() const { return static_cast<int>(bras_.rows()); }

  private:
    CMat bras_; // row m = <psi_m|
    int dim_;
};

/// Quadratic pseudo-likelihood -K/2 ||rho(x) - rho_s||_F^2.
///
/// Expanded for pure rho(x) as -K/2 (1 - 2 <x|rho_s|x>/|x|^2 + Tr rho_s^2);
/// the <x|rho_s|x> term is evaluated matrix-free through the outcome overlaps
/// and Tr rho_s^2 is computed once at construction. The constant term cancels
/// in acceptance ratios but is kept so reported values equal the quadratic
/// cost literally.
class FrobeniusShadowLikelihood {
  public:
    FrobeniusShadowLikelihood(const Dataset &d, int m_used, double k);

    [[nodiscard]] double log_density(const CVec &x) const;
    [[nodiscard]] int dim() const { return dim_; }
    [[nodiscard]] double k() const { return k_; }
    [[nodiscard]] double tr_rho_s_sq() const { return tr_rho_s_sq_; }

  private:
    CMat bras_;
    int dim_;
    double k_;
    double tr_rho_s_sq_;
};

/// Pseudo-likelihood -K/2 sum_n (Tr rho(x) Lambda_n - target_n)^2, rating
/// states only by their predictions for the chosen observables.
class ObservableOrientedLikelihood {
  public:
    ObservableOrientedLikelihood(std::vector<Observable> observables,
                                 RVec targets, double k);

    [[nodiscard]] double log_density(const CVec &x) const;
    [[nodiscard]] int dim() const;
    [[nodiscard]] double k() const { return k_; }
    [[nodiscard]] const std::vector<Observable> &observables() const {
        return observables_;
    }
    [[nodiscard]] const RVec &targets() const { return targets_; }

  private:
    std::vector<Observable> observables_;
    RVec targets_;
    double k_;
};

using LikelihoodModel = std::variant<BornLikelihood, FrobeniusShadowLikelihood,
                                     ObservableOrientedLikelihood>;

double log_likelihood(const LikelihoodModel &model, const CVec &x);
int model_dim(const LikelihoodModel &model);

/// Default pseudo-likelihood weight K = M * D, which makes the posterior
/// concentration rate dimension-independent.
inline double auto_k(int m_used, int dim) {
    return static_cast<double>(m_used) * static_cast<double>(dim);
}

enum class LikelihoodKind { born, frobenius, observable };

/// Default thinning factors (dim < 256 uses the small-dimension values).
int default_thin(LikelihoodKind kind, int dim);

struct ChainConfig {
    int retained = 1 << 10; // R samples kept
    int thin = 1 << 9;      // record every thin-th state
    long long burn_in_steps = -1; // -1: 25% of retained * thin
    double beta = 0.2;            // pCN step; initial value when adapting
    bool adapt_beta = true;       // tune beta during burn-in, freeze after
    double target_acceptance = 0.234;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

struct PosteriorSamples {
    std::vector<CVec> samples;
    double acceptance_rate = 0.0; // over the post-burn-in phase
    ChainConfig config;           // as requested
    double beta_used = 0.0;       // frozen value actually sampled with
    long long burn_in_steps = 0;  // resolved count
    std::vector<double> loglik_trace; // log-likelihood at each retained state
    bool low_acceptance = false;      // acceptance_rate < 1% diagnostic
};

/// Draw x from the prior: dim independent standard complex normals.
CVec sample_prior(int dim, RngStream &rng);

/// pCN proposal x' = sqrt(1 - beta^2) x + beta w, w ~ prior. Reversible with
/// respect to the Gaussian prior, so acceptance uses likelihood ratios only.
CVec pcn_propose(const CVec &x, double beta, RngStream &rng);

/// Metropolis chain over the prior with pCN proposals.
PosteriorSamples run_chain(const LikelihoodModel &model,
                           const ChainConfig &config);

struct BmeEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

/// Posterior mean of Tr rho(x) Lambda over retained samples; the error bar
/// comes from 16 batch means to absorb residual autocorrelation.
BmeEstimate bme_expectation(const PosteriorSamples &s, const Observable &obs);

/// Mean over samples of <x|rho_s|x>/|x|^2 for the prefix shadow, matrix-free.
double overlap_with_shadow(const PosteriorSamples &s, const Dataset &d,
                           int m_used);

} // namespace shadowbench
