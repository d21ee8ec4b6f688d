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

#include "shadowbench/bayes.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace shadowbench {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

CMat collect_bras(const Dataset &d, int m_used, const char *context) {
    if (m_used < 0 || m_used > d.shots()) {
        throw Error(Errc::invalid_argument,
                    std::string(context) + ": m_used " +
                        std::to_string(m_used) + " outside [0, " +
                        std::to_string(d.shots()) + "]");
    }
    CMat bras(m_used, d.dim);
    for (int m = 0; m < m_used; ++m) {
        bras.row(m) = d.outcomes[m].conjugate().transpose();
    }
    return bras;
}

double expectation_of(const Observable &obs, const CVec &x, double x_sq) {
    if (obs.is_projector()) {
        return std::norm(obs.phi().dot(x)) / x_sq;
    }
    return (x.dot(obs.dense() * x)).real() / x_sq;
}

} // namespace

BornLikelihood::BornLikelihood(const Dataset &d, int m_used)
    : bras_(collect_bras(d, m_used, "BornLikelihood")), dim_(d.dim) {}

double BornLikelihood::log_density(const CVec &x) const {
    if (x.size() != dim_) {
        throw Error(Errc::dimension_mismatch, "BornLikelihood: bad x dim");
    }
    if (bras_.rows() == 0) {
        return 0.0; // empty product
    }
    const CVec overlaps = bras_ * x;
    double sum = 0.0;
    for (Eigen::Index m = 0; m < overlaps.size(); ++m) {
        const double p = std::norm(overlaps[m]);
        if (p <= 0.0) {
            return kNegInf; // zero Born probability; rejected by Metropolis
        }
        sum += std::log(p);
    }
    return sum - static_cast<double>(bras_.rows()) * std::log(x.squaredNorm());
}

FrobeniusShadowLikelihood::FrobeniusShadowLikelihood(const Dataset &d,
                                                     int m_used, double k)
    : bras_(collect_bras(d, m_used, "FrobeniusShadowLikelihood")), dim_(d.dim),
      k_(k), tr_rho_s_sq_(shadow_self_overlap(d, m_used)) {
    if (k_ <= 0.0) {
        throw Error(Errc::invalid_argument,
                    "FrobeniusShadowLikelihood: K must be positive");
    }
}

double FrobeniusShadowLikelihood::log_density(const CVec &x) const {
    if (x.size() != dim_) {
        throw Error(Errc::dimension_mismatch,
                    "FrobeniusShadowLikelihood: bad x dim");
    }
    const CVec overlaps = bras_ * x;
    const double x_sq = x.squaredNorm();
    const double mean_p = overlaps.squaredNorm() / (bras_.rows() * x_sq);
    // <x|rho_s|x>/|x|^2 = (D+1) * mean |<psi_m|x>|^2/|x|^2 - 1
    const double q = (dim_ + 1.0) * mean_p - 1.0;
    // Tr rho(x)^2 = 1 for pure states
    return -0.5 * k_ * (1.0 - 2.0 * q + tr_rho_s_sq_);
}

ObservableOrientedLikelihood::ObservableOrientedLikelihood(
    std::vector<Observable> observables, RVec targets, double k)
    : observables_(std::move(observables)), targets_(std::move(targets)),
      k_(k) {
    if (observables_.empty()) {
        throw Error(Errc::invalid_argument,
                    "ObservableOrientedLikelihood: observable list is empty");
    }
    if (static_cast<Eigen::Index>(observables_.size()) != targets_.size()) {
        throw Error(Errc::dimension_mismatch,
                    "ObservableOrientedLikelihood: one target per observable");
    }
    if (k_ <= 0.0) {
        throw Error(Errc::invalid_argument,
                    "ObservableOrientedLikelihood: K must be positive");
    }
    for (const auto &obs : observables_) {
        if (obs.dim() != observables_.front().dim()) {
            throw Error(Errc::dimension_mismatch,
                        "ObservableOrientedLikelihood: mixed dimensions");
        }
    }
}

double ObservableOrientedLikelihood::log_density(const CVec &x) const {
    if (x.size() != dim()) {
        throw Error(Errc::dimension_mismatch,
                    "ObservableOrientedLikelihood: bad x dim");
    }
    const double x_sq = x.squaredNorm();
    double cost = 0.0;
    for (Eigen::Index n = 0; n < targets_.size(); ++n) {
        const double diff =
            expectation_of(observables_[n], x, x_sq) - targets_[n];
        cost += diff * diff;
    }
    return -0.5 * k_ * cost;
}

int ObservableOrientedLikelihood::dim() const {
    return observables_.front().dim();
}

double log_likelihood(const LikelihoodModel &model, const CVec &x) {
    return std::visit([&](const auto &m) { return m.log_density(x); }, model);
}

int model_dim(const LikelihoodModel &model) {
    return std::visit([](const auto &m) { return m.dim(); }, model);
}

int default_thin(LikelihoodKind kind, int dim) {
    const bool large = dim >= 256;
    switch (kind) {
    case LikelihoodKind::born:
        return large ? (1 << 12) : (1 << 9);
    case LikelihoodKind::frobenius:
        return large ? (1 << 10) : (1 << 8);
    case LikelihoodKind::observable:
        return large ? (1 << 13) : (1 << 10);
    }
    return 1 << 9;
}

CVec sample_prior(int dim, RngStream &rng) {
    CVec x(dim);
    for (int j = 0; j < dim; ++j) {
        x[j] = rng.next_complex_normal();
    }
    return x;
}

CVec pcn_propose(const CVec &x, double beta, RngStream &rng) {
    if (!(beta >= 0.0 && beta <= 1.0)) {
        throw Error(Errc::invalid_argument, "pcn_propose: beta outside [0,1]");
    }
    const double keep = std::sqrt(1.0 - beta * beta);
    CVec next(x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        next[j] = keep * x[j] + beta * rng.next_complex_normal();
    }
    return next;
}

PosteriorSamples run_chain(const LikelihoodModel &model,
                           const ChainConfig &config) {
    if (config.retained < 1 || config.thin < 1) {
        throw Error(Errc::invalid_argument,
                    "run_chain: retained and thin must be positive");
    }
    if (!(config.beta > 0.0 && config.beta <= 1.0)) {
        throw Error(Errc::invalid_argument, "run_chain: beta outside (0,1]");
    }
    const int dim = model_dim(model);
    const long long main_steps =
        static_cast<long long>(config.retained) * config.thin;
    const long long burn_in = config.burn_in_steps >= 0
                                  ? config.burn_in_steps
                                  : main_steps / 4;

    RngStream rng(config.seed, config.stream_id);
    CVec x = sample_prior(dim, rng);
    double loglik = log_likelihood(model, x);
    double beta = config.beta;

    const auto step = [&](double b) -> bool {
        const CVec proposal = pcn_propose(x, b, rng);
        const double proposal_loglik = log_likelihood(model, proposal);
        bool accept;
        if (proposal_loglik == -std::numeric_limits<double>::infinity()) {
            accept = false;
        } else if (loglik == -std::numeric_limits<double>::infinity()) {
            accept = true;
        } else {
            const double diff = proposal_loglik - loglik;
            // compare in log space; exp(diff) may overflow for diff > 0
            accept = diff >= 0.0 ||
                     std::log(1.0 - rng.next_double()) < diff;
        }
        if (accept) {
            x = proposal;
            loglik = proposal_loglik;
        }
        return accept;
    };

    // Burn-in with multiplicative beta tuning every 100 steps.
    constexpr int kAdaptWindow = 100;
    int window_accepts = 0;
    for (long long s = 0; s < burn_in; ++s) {
        window_accepts += step(beta) ? 1 : 0;
        if (config.adapt_beta && (s + 1) % kAdaptWindow == 0) {
            const double rate =
                static_cast<double>(window_accepts) / kAdaptWindow;
            beta *= (rate > config.target_acceptance) ? 1.1 : (1.0 / 1.1);
            beta = std::clamp(beta, 1e-4, 1.0);
            window_accepts = 0;
        }
    }

    // Sampling phase: beta frozen to preserve detailed balance.
    PosteriorSamples out;
    out.config = config;
    out.beta_used = beta;
    out.burn_in_steps = burn_in;
    out.samples.reserve(config.retained);
    out.loglik_trace.reserve(config.retained);
    long long accepts = 0;
    for (long long s = 1; s <= main_steps; ++s) {
        accepts += step(beta) ? 1 : 0;
        if (s % config.thin == 0) {
            out.samples.push_back(x);
            out.loglik_trace.push_back(loglik);
        }
    }
    out.acceptance_rate = static_cast<double>(accepts) / main_steps;
    out.low_acceptance = out.acceptance_rate < 0.01;
    return out;
}

BmeEstimate bme_expectation(const PosteriorSamples &s, const Observable &obs) {
    if (s.samples.empty()) {
        throw Error(Errc::invalid_argument, "bme_expectation: no samples");
    }
    if (obs.dim() != s.samples.front().size()) {
        throw Error(Errc::dimension_mismatch,
                    "bme_expectation: observable dim mismatch");
    }
    const int r = static_cast<int>(s.samples.size());
    RVec values(r);
    for (int i = 0; i < r; ++i) {
        values[i] = expectation_of(obs, s.samples[i],
                                   s.samples[i].squaredNorm());
    }
    BmeEstimate est;
    est.mean = values.mean();

    constexpr int kBatches = 16;
    const int batch = r / kBatches;
    if (batch >= 1) {
        RVec batch_means(kBatches);
        for (int b = 0; b < kBatches; ++b) {
            batch_means[b] = values.segment(b * batch, batch).mean();
        }
        const double grand = batch_means.mean();
        const double var =
            (batch_means.array() - grand).square().sum() / (kBatches - 1);
        est.std_error = std::sqrt(var / kBatches);
    } else {
        est.std_error = std::numeric_limits<double>::quiet_NaN();
    }
    return est;
}

double overlap_with_shadow(const PosteriorSamples &s, const Dataset &d,
                           int m_used) {
    if (s.samples.empty()) {
        throw Error(Errc::invalid_argument, "overlap_with_shadow: no samples");
    }
    if (d.dim != s.samples.front().size()) {
        throw Error(Errc::dimension_mismatch,
                    "overlap_with_shadow: dataset dim mismatch");
    }
    if (m_used < 1 || m_used > d.shots()) {
        throw Error(Errc::invalid_argument,
                    "overlap_with_shadow: m_used " + std::to_string(m_used) +
                        " outside [1, " + std::to_string(d.shots()) + "]");
    }
    CMat bras(m_used, d.dim);
    for (int m = 0; m < m_used; ++m) {
        bras.row(m) = d.outcomes[m].conjugate().transpose();
    }
    double acc = 0.0;
    for (const CVec &x : s.samples) {
        const double mean_p =
            (bras * x).squaredNorm() / (m_used * x.squaredNorm());
        acc += (d.dim + 1.0) * mean_p - 1.0;
    }
    return acc / static_cast<double>(s.samples.size());
}

} // namespace shadowbench
