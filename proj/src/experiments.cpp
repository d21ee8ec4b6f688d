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

#include "shadowbench/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include <nlohmann/json.hpp>

#include "shadowbench/util.hpp"

namespace shadowbench {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int estimator_id(EstimatorKind kind) { return static_cast<int>(kind); }

auto row_order_key(const TrialResult &r) {
    return std::tie(r.picture, r.dim, r.trial, r.estimator, r.observable, r.m);
}

std::string row_key(const TrialResult &r) {
    std::ostringstream os;
    os << r.picture << '|' << r.dim << '|' << r.trial << '|' << r.estimator
       << '|' << r.observable << '|' << r.m;
    return os.str();
}

std::string cell_row_key(int picture, int dim, int trial,
                         const std::string &estimator,
                         const std::string &observable, int m) {
    std::ostringstream os;
    os << picture << '|' << dim << '|' << trial << '|' << estimator << '|'
       << observable << '|' << m;
    return os.str();
}

} // namespace

std::string Estimator::tag() const {
    switch (kind) {
    case EstimatorKind::shadow:
        return "shadow";
    case EstimatorKind::bme_born:
        return "bme_born";
    case EstimatorKind::bme_frobenius:
        return "bme_frobenius";
    case EstimatorKind::bme_observable:
        return "bme_observable";
    case EstimatorKind::bme_observable_single:
        return "bme_observable_single";
    }
    return "?";
}

Estimator parse_estimator(const std::string &text) {
    Estimator e;
    if (text == "shadow") {
        e.kind = EstimatorKind::shadow;
    } else if (text == "bme_born") {
        e.kind = EstimatorKind::bme_born;
    } else if (text == "bme_frobenius") {
        e.kind = EstimatorKind::bme_frobenius;
    } else if (text == "bme_observable_single") {
        e.kind = EstimatorKind::bme_observable_single;
    } else if (text.rfind("bme_observable", 0) == 0) {
        e.kind = EstimatorKind::bme_observable;
        if (text.size() > 14) {
            if (text[14] != ':') {
                throw Error(Errc::invalid_argument,
                            "unknown estimator '" + text + "'");
            }
            e.n_observables = std::stoi(text.substr(15));
        }
    } else {
        throw Error(Errc::invalid_argument, "unknown estimator '" + text + "'");
    }
    return e;
}

void validate_plan(const ExperimentPlan &plan) {
    if (plan.picture != 1 && plan.picture != 2) {
        throw Error(Errc::invalid_argument, "plan: picture must be 1 or 2");
    }
    if (plan.dims.empty()) {
        throw Error(Errc::invalid_argument, "plan: dims is empty");
    }
    for (int dim : plan.dims) {
        if (dim < 2) {
            throw Error(Errc::invalid_argument, "plan: dims must be >= 2");
        }
    }
    if (plan.trials < 1 || plan.shots < 1) {
        throw Error(Errc::invalid_argument,
                    "plan: trials and shots must be >= 1");
    }
    if (plan.m_grid.empty() ||
        !std::is_sorted(plan.m_grid.begin(), plan.m_grid.end())) {
        throw Error(Errc::invalid_argument,
                    "plan: m_grid must be nonempty and ascending");
    }
    if (plan.m_grid.front() < 1 || plan.m_grid.back() > plan.shots) {
        throw Error(Errc::invalid_argument,
                    "plan: m_grid values must lie in [1, shots]");
    }
    if (plan.estimators.empty()) {
        throw Error(Errc::invalid_argument, "plan: no estimators requested");
    }
    for (const auto &est : plan.estimators) {
        if (est.kind == EstimatorKind::bme_observable &&
            (est.n_observables < 1 ||
             (plan.picture == 1 && est.n_observables > 3))) {
            throw Error(Errc::invalid_argument,
                        "plan: bme_observable target count out of range");
        }
    }
}

std::string plan_to_json(const ExperimentPlan &plan) {
    json j;
    j["picture"] = plan.picture;
    j["dims"] = plan.dims;
    j["trials"] = plan.trials;
    j["shots"] = plan.shots;
    j["m_grid"] = plan.m_grid;
    std::vector<std::string> tags;
    tags.reserve(plan.estimators.size());
    for (const auto &e : plan.estimators) {
        if (e.kind == EstimatorKind::bme_observable && e.n_observables != 3) {
            tags.push_back("bme_observable:" +
                           std::to_string(e.n_observables));
        } else {
            tags.push_back(e.tag());
        }
    }
    j["estimators"] = tags;
    j["shadow_full_grid"] = plan.shadow_full_grid;
    j["root_seed"] = plan.root_seed;
    json overrides = json::object();
    const auto &c = plan.chain_overrides;
    if (c.retained) {
        overrides["retained"] = *c.retained;
    }
    if (c.thin) {
        overrides["thin"] = *c.thin;
    }
    if (c.burn_in_steps) {
        overrides["burn_in_steps"] = *c.burn_in_steps;
    }
    if (c.beta) {
        overrides["beta"] = *c.beta;
    }
    if (!overrides.empty()) {
        j["chain_overrides"] = overrides;
    }
    return j.dump(2);
}

ExperimentPlan plan_from_json(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception &e) {
        throw Error(Errc::bad_format, std::string("plan: ") + e.what());
    }
    try {
        ExperimentPlan plan;
        plan.picture = j.value("picture", plan.picture);
        if (j.contains("dims")) {
            plan.dims = j["dims"].get<std::vector<int>>();
        }
        plan.trials = j.value("trials", plan.trials);
        plan.shots = j.value("shots", plan.shots);
        if (j.contains("m_grid")) {
            plan.m_grid = j["m_grid"].get<std::vector<int>>();
        }
        plan.estimators.clear();
        for (const auto &tag : j.at("estimators")) {
            plan.estimators.push_back(parse_estimator(tag.get<std::string>()));
        }
        plan.shadow_full_grid =
            j.value("shadow_full_grid", plan.shadow_full_grid);
        plan.root_seed = j.value("root_seed", plan.root_seed);
        if (j.contains("chain_overrides")) {
            const auto &o = j["chain_overrides"];
            if (o.contains("retained")) {
                plan.chain_overrides.retained = o["retained"].get<int>();
            }
            if (o.contains("thin")) {
                plan.chain_overrides.thin = o["thin"].get<int>();
            }
            if (o.contains("burn_in_steps")) {
                plan.chain_overrides.burn_in_steps =
                    o["burn_in_steps"].get<long long>();
            }
            if (o.contains("beta")) {
                plan.chain_overrides.beta = o["beta"].get<double>();
            }
        }
        validate_plan(plan);
        return plan;
    } catch (const json::exception &e) {
        throw Error(Errc::bad_format, std::string("plan: ") + e.what());
    }
}

ExperimentPlan load_plan(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::io_failure, "cannot open plan " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return plan_from_json(buf.str());
}

std::array<Observable, 3> canonical_observables(int dim) {
    if (dim < 2) {
        throw Error(Errc::invalid_argument,
                    "canonical_observables: dim must be >= 2");
    }
    CVec phi1(dim);
    phi1[0] = Complex(1.0 / std::sqrt(2.0), 0.0);
    const double tail = 1.0 / std::sqrt(2.0 * (dim - 1));
    for (int j = 1; j < dim; ++j) {
        phi1[j] = Complex(tail, 0.0);
    }
    return {Observable::projector(basis_vector(dim, 0)),
            Observable::projector(normalized(phi1)),
            Observable::projector(basis_vector(dim, 1))};
}

Observable random_observable(int dim, RngStream &rng) {
    return Observable::projector(sample_haar_unit_vector(dim, rng));
}

double ground_truth_value(const Observable &obs) {
    if (obs.is_projector()) {
        return std::norm(obs.phi()[0]);
    }
    return obs.dense()(0, 0).real();
}

namespace {

struct Cell {
    int dim = 0;
    int trial = 0;
    Estimator estimator;
    int m = 0; // unused for shadow cells (they cover their whole grid)
};

struct TaggedObservable {
    Observable obs;
    std::string tag;
    double ground_truth;
};

class DatasetCache {
  public:
    DatasetCache(std::uint64_t seed, int shots) : seed_(seed), shots_(shots) {}

    std::shared_ptr<const Dataset> get(int dim, int trial) {
        const std::pair<int, int> key{dim, trial};
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(key);
        if (it == cache_.end()) {
            auto d = std::make_shared<Dataset>(
                simulate_dataset(dim, shots_, seed_, trial));
            it = cache_.emplace(key, std::move(d)).first;
        }
        return it->second;
    }

  private:
    std::uint64_t seed_;
    int shots_;
    std::mutex mutex_;
    std::map<std::pair<int, int>, std::shared_ptr<const Dataset>> cache_;
};

std::vector<TaggedObservable> trial_observables(const ExperimentPlan &plan,
                                                int dim, int trial) {
    std::vector<TaggedObservable> out;
    if (plan.picture == 1) {
        auto canonical = canonical_observables(dim);
        for (int n = 0; n < 3; ++n) {
            out.push_back({canonical[n], "canonical:" + std::to_string(n),
                           ground_truth_value(canonical[n])});
        }
    } else {
        RngStream rng(plan.root_seed,
                      derive_stream("observable", dim, trial));
        Observable obs = random_observable(dim, rng);
        const double gt = ground_truth_value(obs);
        out.push_back({std::move(obs), "random", gt});
    }
    return out;
}

std::vector<int> shadow_grid(const ExperimentPlan &plan) {
    if (!plan.shadow_full_grid) {
        return plan.m_grid;
    }
    std::vector<int> grid(plan.shots);
    for (int m = 1; m <= plan.shots; ++m) {
        grid[m - 1] = m;
    }
    return grid;
}

ChainConfig chain_config_for(const ExperimentPlan &plan, const Cell &cell) {
    const LikelihoodKind kind = cell.estimator.kind == EstimatorKind::bme_born
                                    ? LikelihoodKind::born
                                : cell.estimator.kind ==
                                        EstimatorKind::bme_frobenius
                                    ? LikelihoodKind::frobenius
                                    : LikelihoodKind::observable;
    ChainConfig cfg;
    cfg.thin = default_thin(kind, cell.dim);
    const auto &o = plan.chain_overrides;
    if (o.retained) {
        cfg.retained = *o.retained;
    }
    if (o.thin) {
        cfg.thin = *o.thin;
    }
    if (o.burn_in_steps) {
        cfg.burn_in_steps = *o.burn_in_steps;
    }
    if (o.beta) {
        cfg.beta = *o.beta;
        cfg.adapt_beta = false;
    }
    cfg.seed = plan.root_seed;
    cfg.stream_id = derive_stream(
        "chain",
        (static_cast<std::uint64_t>(cell.dim) << 32) |
            static_cast<std::uint64_t>(cell.trial),
        (static_cast<std::uint64_t>(estimator_id(cell.estimator.kind)) << 8) |
            static_cast<std::uint64_t>(cell.estimator.n_observables),
        static_cast<std::uint64_t>(cell.m));
    return cfg;
}

LikelihoodModel build_model(const ExperimentPlan &plan, const Cell &cell,
                            const Dataset &data,
                            const std::vector<TaggedObservable> &observables) {
    const int m = cell.m;
    switch (cell.estimator.kind) {
    case EstimatorKind::bme_born:
        return BornLikelihood(data, m);
    case EstimatorKind::bme_frobenius:
        return FrobeniusShadowLikelihood(data, m, auto_k(m, data.dim));
    case EstimatorKind::bme_observable: {
        const int n = std::min<int>(cell.estimator.n_observables,
                                    static_cast<int>(observables.size()));
        std::vector<Observable> targets;
        RVec shadow_targets(n);
        for (int i = 0; i < n; ++i) {
            targets.push_back(observables[i].obs);
            shadow_targets[i] = shadow_expectation(data, m, targets.back());
        }
        return ObservableOrientedLikelihood(std::move(targets),
                                            std::move(shadow_targets),
                                            auto_k(m, data.dim));
    }
    case EstimatorKind::bme_observable_single: {
        // Picture 1 pins the single target to the half-overlap probe.
        const int index = plan.picture == 1 ? 1 : 0;
        std::vector<Observable> targets{observables[index].obs};
        RVec shadow_targets(1);
        shadow_targets[0] = shadow_expectation(data, m, targets.front());
        return ObservableOrientedLikelihood(std::move(targets),
                                            std::move(shadow_targets),
                                            auto_k(m, data.dim));
    }
    case EstimatorKind::shadow:
        break;
    }
    throw Error(Errc::invalid_argument, "build_model: not a chain estimator");
}

std::vector<TrialResult> run_cell(const ExperimentPlan &plan, const Cell &cell,
                                  DatasetCache &datasets) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto data = datasets.get(cell.dim, cell.trial);
    const auto observables = trial_observables(plan, cell.dim, cell.trial);

    std::vector<TrialResult> rows;
    const auto elapsed_ms = [&t0]() {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    };
    const auto emit = [&](const std::string &obs_tag, double gt, int m,
                          double estimate, double std_error) {
        TrialResult r;
        r.picture = plan.picture;
        r.dim = cell.dim;
        r.trial = cell.trial;
        r.estimator = cell.estimator.tag();
        r.observable = obs_tag;
        r.m = m;
        r.estimate = estimate;
        r.ground_truth = gt;
        r.std_error = std_error;
        r.seed = plan.root_seed;
        rows.push_back(std::move(r));
    };

    if (cell.estimator.kind == EstimatorKind::shadow) {
        const auto grid = shadow_grid(plan);
        for (const auto &tagged : observables) {
            const auto values = shadow_expectation_grid(*data, grid,
                                                        tagged.obs);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                emit(tagged.tag, tagged.ground_truth, grid[i], values[i],
                     kNaN);
            }
        }
    } else {
        const auto model = build_model(plan, cell, *data, observables);
        const auto samples = run_chain(model, chain_config_for(plan, cell));
        for (const auto &tagged : observables) {
            const auto est = bme_expectation(samples, tagged.obs);
            emit(tagged.tag, tagged.ground_truth, cell.m, est.mean,
                 est.std_error);
        }
    }
    const double ms = elapsed_ms();
    for (auto &r : rows) {
        r.wall_time_ms = ms;
    }
    return rows;
}

std::vector<std::string> cell_expected_keys(const ExperimentPlan &plan,
                                            const Cell &cell) {
    std::vector<std::string> keys;
    std::vector<std::string> obs_tags;
    if (plan.picture == 1) {
        obs_tags = {"canonical:0", "canonical:1", "canonical:2"};
    } else {
        obs_tags = {"random"};
    }
    const std::string est = cell.estimator.tag();
    if (cell.estimator.kind == EstimatorKind::shadow) {
        for (const auto &tag : obs_tags) {
            for (int m : shadow_grid(plan)) {
                keys.push_back(cell_row_key(plan.picture, cell.dim, cell.trial,
                                            est, tag, m));
            }
        }
    } else {
        for (const auto &tag : obs_tags) {
            keys.push_back(cell_row_key(plan.picture, cell.dim, cell.trial,
                                        est, tag, cell.m));
        }
    }
    return keys;
}

} // namespace

std::vector<TrialResult> run_experiment(const ExperimentPlan &plan,
                                        const RunOptions &options) {
    validate_plan(plan);

    std::vector<Cell> cells;
    for (int dim : plan.dims) {
        for (int trial = 0; trial < plan.trials; ++trial) {
            for (const auto &est : plan.estimators) {
                if (est.kind == EstimatorKind::shadow) {
                    cells.push_back({dim, trial, est, 0});
                } else {
                    for (int m : plan.m_grid) {
                        cells.push_back({dim, trial, est, m});
                    }
                }
            }
        }
    }

    // Resume support: a cell is reused only when every row it would produce
    // is already present; partially written cells are recomputed whole.
    std::map<std::string, const TrialResult *> existing_rows;
    for (const auto &r : options.existing) {
        existing_rows.emplace(row_key(r), &r);
    }
    std::vector<TrialResult> results;
    std::vector<const Cell *> pending;
    for (const auto &cell : cells) {
        const auto keys = cell_expected_keys(plan, cell);
        const bool complete =
            std::all_of(keys.begin(), keys.end(), [&](const std::string &k) {
                return existing_rows.count(k) > 0;
            });
        if (complete) {
            for (const auto &k : keys) {
                results.push_back(*existing_rows.at(k));
            }
        } else {
            pending.push_back(&cell);
        }
    }

    DatasetCache datasets(plan.root_seed, plan.shots);
    std::mutex emit_mutex;
    const auto process = [&](const Cell &cell) {
        auto rows = run_cell(plan, cell, datasets);
        std::lock_guard<std::mutex> lock(emit_mutex);
        for (auto &r : rows) {
            if (options.on_result) {
                options.on_result(r);
            }
            results.push_back(std::move(r));
        }
    };

    const int workers =
        std::max(1, std::min<int>(options.workers,
                                  static_cast<int>(pending.size())));
    if (workers <= 1) {
        for (const Cell *cell : pending) {
            process(*cell);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&]() {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= pending.size()) {
                        return;
                    }
                    process(*pending[i]);
                }
            });
        }
        for (auto &t : pool) {
            t.join();
        }
    }

    std::sort(results.begin(), results.end(),
              [](const TrialResult &a, const TrialResult &b) {
                  return row_order_key(a) < row_order_key(b);
              });
    return results;
}

double mse(const std::vector<TrialResult> &group) {
    if (group.empty()) {
        throw Error(Errc::invalid_argument, "mse: empty group");
    }
    double acc = 0.0;
    for (const auto &r : group) {
        const double err = r.estimate - r.ground_truth;
        acc += err * err;
    }
    return acc / static_cast<double>(group.size());
}

std::vector<MseRow> aggregate_mse(const std::vector<TrialResult> &results) {
    std::map<std::tuple<int, int, std::string, std::string, int>,
             std::pair<double, int>>
        groups;
    for (const auto &r : results) {
        auto &acc = groups[{r.picture, r.dim, r.estimator, r.observable, r.m}];
        const double err = r.estimate - r.ground_truth;
        acc.first += err * err;
        acc.second += 1;
    }
    std::vector<MseRow> rows;
    rows.reserve(groups.size());
    for (const auto &[key, acc] : groups) {
        MseRow row;
        row.picture = std::get<0>(key);
        row.dim = std::get<1>(key);
        row.estimator = std::get<2>(key);
        row.observable = std::get<3>(key);
        row.m = std::get<4>(key);
        row.mse = acc.first / acc.second;
        row.n_trials = acc.second;
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_results_csv(const std::vector<TrialResult> &results,
                       const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) {
        throw Error(Errc::io_failure, "cannot open " + path.string());
    }
    out << "picture,dim,trial,estimator,observable,m,estimate,ground_truth,"
           "stderr,seed,wall_time_ms\n";
    for (const auto &r : results) {
        out << r.picture << ',' << r.dim << ',' << r.trial << ','
            << r.estimator << ',' << r.observable << ',' << r.m << ','
            << format_g17(r.estimate) << ',' << format_g17(r.ground_truth)
            << ','
            << (std::isnan(r.std_error) ? std::string()
                                        : format_g17(r.std_error))
            << ',' << r.seed << ',' << format_g17(r.wall_time_ms) << '\n';
    }
    if (!out) {
        throw Error(Errc::io_failure, "write failed for " + path.string());
    }
}

std::vector<TrialResult> read_results_csv(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::io_failure, "cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(Errc::bad_format, "empty results file " + path.string());
    }
    std::vector<TrialResult> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            fields.push_back(field);
        }
        // a trailing empty field is dropped by getline
        if (fields.size() == 10) {
            fields.push_back(std::string());
        }
        if (fields.size() != 11) {
            throw Error(Errc::bad_format,
                        "results row with wrong arity in " + path.string());
        }
        TrialResult r;
        r.picture = std::stoi(fields[0]);
        r.dim = std::stoi(fields[1]);
        r.trial = std::stoi(fields[2]);
        r.estimator = fields[3];
        r.observable = fields[4];
        r.m = std::stoi(fields[5]);
        r.estimate = std::stod(fields[6]);
        r.ground_truth = std::stod(fields[7]);
        r.std_error = fields[8].empty() ? kNaN : std::stod(fields[8]);
        r.seed = std::stoull(fields[9]);
        r.wall_time_ms = fields[10].empty() ? 0.0 : std::stod(fields[10]);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_mse_csv(const std::vector<MseRow> &rows,
                   const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) {
        throw Error(Errc::io_failure, "cannot open " + path.string());
    }
    out << "picture,dim,estimator,observable,m,mse,n_trials\n";
    for (const auto &r : rows) {
        out << r.picture << ',' << r.dim << ',' << r.estimator << ','
            << r.observable << ',' << r.m << ',' << format_g17(r.mse) << ','
            << r.n_trials << '\n';
    }
    if (!out) {
        throw Error(Errc::io_failure, "write failed for " + path.string());
    }
}

} // namespace shadowbench
