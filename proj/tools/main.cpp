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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "shadowbench/bayes.hpp"
#include "shadowbench/experiments.hpp"
#include "shadowbench/util.hpp"
#include "shadowbench/validate.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace shadowbench;

namespace {

enum class LogLevel { error = 0, warn = 1, info = 2 };
LogLevel g_log_level = LogLevel::info;

void log_info(const std::string &msg) {
    if (g_log_level >= LogLevel::info) {
        std::cerr << "[info] " << msg << '\n';
    }
}

void log_warn(const std::string &msg) {
    if (g_log_level >= LogLevel::warn) {
        std::cerr << "[warn] " << msg << '\n';
    }
}

/// SHADOWBENCH_SEED overrides any --seed flag when set.
std::uint64_t resolve_seed(std::uint64_t flag_seed) {
    if (const char *env = std::getenv("SHADOWBENCH_SEED")) {
        const std::uint64_t seed = std::stoull(env);
        log_info("SHADOWBENCH_SEED=" + std::string(env) + " overrides --seed");
        return seed;
    }
    return flag_seed;
}

void write_text(const fs::path &path, const std::string &text) {
    std::ofstream out(path);
    if (!out) {
        throw Error(Errc::io_failure, "cannot open " + path.string());
    }
    out << text;
    if (!out) {
        throw Error(Errc::io_failure, "write failed for " + path.string());
    }
}

std::uint64_t file_checksum(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::io_failure, "cannot open " + path.string());
    }
    std::uint64_t h = 0xcbf29ce484222325ull;
    char buf[65536];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        h = fnv1a64(buf, static_cast<std::size_t>(in.gcount()), h);
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(v));
    return buf;
}

/// Observable SPEC grammar: canonical:0|1|2, random:SEED, file:PATH.
Observable parse_observable(const std::string &spec, int dim) {
    if (spec.rfind("canonical:", 0) == 0) {
        const int n = std::stoi(spec.substr(10));
        if (n < 0 || n > 2) {
            throw Error(Errc::invalid_argument,
                        "canonical observable index must be 0, 1 or 2");
        }
        return canonical_observables(dim)[n];
    }
    if (spec.rfind("random:", 0) == 0) {
        const auto seed = std::stoull(spec.substr(7));
        RngStream rng(seed, derive_stream("cli_observable", 0));
        return random_observable(dim, rng);
    }
    if (spec.rfind("file:", 0) == 0) {
        const fs::path path = spec.substr(5);
        std::ifstream in(path);
        if (!in) {
            throw Error(Errc::io_failure,
                        "cannot open observable file " + path.string());
        }
        json j;
        try {
            in >> j;
        } catch (const json::exception &e) {
            throw Error(Errc::bad_format,
                        "observable file " + path.string() + ": " + e.what());
        }
        if (static_cast<int>(j.size()) != dim) {
            throw Error(Errc::dimension_mismatch,
                        "observable vector length " + std::to_string(j.size()) +
                            " does not match dataset dim " +
                            std::to_string(dim));
        }
        CVec phi(dim);
        for (int k = 0; k < dim; ++k) {
            phi[k] = Complex(j[k][0].get<double>(), j[k][1].get<double>());
        }
        const double norm = phi.norm();
        if (norm <= 0.0) {
            throw Error(Errc::invalid_argument,
                        "observable vector is zero");
        }
        if (std::abs(norm - 1.0) > 1e-9) {
            log_warn("observable vector norm " + format_g17(norm) +
                     " != 1; normalizing");
        }
        return Observable::projector(phi / norm);
    }
    throw Error(Errc::invalid_argument,
                "bad observable spec '" + spec +
                    "' (canonical:N | random:SEED | file:PATH)");
}

/// M-grid SPEC: "a:b", "a:b:step", or a comma list "1,50,100".
std::vector<int> parse_m_grid(const std::string &spec) {
    std::vector<int> grid;
    if (spec.find(':') != std::string::npos) {
        int lo = 0;
        int hi = 0;
        int step = 1;
        std::stringstream ss(spec);
        std::string part;
        std::vector<std::string> parts;
        while (std::getline(ss, part, ':')) {
            parts.push_back(part);
        }
        if (parts.size() < 2 || parts.size() > 3) {
            throw Error(Errc::invalid_argument,
                        "bad m-grid spec '" + spec + "'");
        }
        lo = std::stoi(parts[0]);
        hi = std::stoi(parts[1]);
        if (parts.size() == 3) {
            step = std::stoi(parts[2]);
        }
        if (lo < 1 || hi < lo || step < 1) {
            throw Error(Errc::invalid_argument,
                        "bad m-grid range '" + spec + "'");
        }
        for (int m = lo; m <= hi; m += step) {
            grid.push_back(m);
        }
    } else {
        std::stringstream ss(spec);
        std::string part;
        while (std::getline(ss, part, ',')) {
            grid.push_back(std::stoi(part));
        }
    }
    if (grid.empty()) {
        throw Error(Errc::invalid_argument, "empty m-grid");
    }
    return grid;
}

// ---------------------------------------------------------------------------

int cmd_simulate(int dim, int shots, int trials, std::uint64_t seed,
                 const fs::path &out_dir, const std::string &format) {
    seed = resolve_seed(seed);
    fs::create_directories(out_dir);
    const std::string ext = format == "bin" ? ".bin" : ".json";

    json manifest;
    manifest["format_version"] = 1;
    manifest["dim"] = dim;
    manifest["shots"] = shots;
    manifest["seed"] = seed;
    manifest["trials"] = trials;
    manifest["format"] = format;
    json files = json::array();
    for (int trial = 0; trial < trials; ++trial) {
        const Dataset d = simulate_dataset(dim, shots, seed, trial);
        const std::string name =
            "d" + std::to_string(dim) + "_t" + std::to_string(trial) + ext;
        const fs::path path = out_dir / name;
        save_dataset(d, path);
        files.push_back({{"path", name},
                         {"trial", trial},
                         {"checksum_fnv1a64", hex64(file_checksum(path))}});
        log_info("wrote " + path.string());
    }
    manifest["files"] = std::move(files);
    write_text(out_dir / "manifest.json", manifest.dump(2) + "\n");

    json config = {{"subcommand", "simulate"}, {"dim", dim},
                   {"shots", shots},           {"trials", trials},
                   {"seed", seed},             {"format", format},
                   {"out", out_dir.string()}};
    write_text(out_dir / "config.json", config.dump(2) + "\n");
    return 0;
}

int cmd_shadow(const fs::path &dataset_path, int m, const std::string &m_grid,
               const std::string &obs_spec, bool dense_check,
               const std::string &out_csv) {
    const Dataset d = load_dataset(dataset_path);
    const Observable obs = parse_observable(obs_spec, d.dim);

    std::vector<int> grid;
    if (!m_grid.empty()) {
        grid = parse_m_grid(m_grid);
    } else {
        grid = {m};
    }
    const auto values = shadow_expectation_grid(d, grid, obs);

    std::ostringstream csv;
    csv << "m,lambda_s\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        csv << grid[i] << ',' << format_g17(values[i]) << '\n';
    }
    if (out_csv.empty()) {
        std::cout << csv.str();
    } else {
        write_text(out_csv, csv.str());
        json config = {{"subcommand", "shadow"},
                       {"dataset", dataset_path.string()},
                       {"observable", obs_spec},
                       {"m_grid", grid},
                       {"dense_check", dense_check},
                       {"out", out_csv}};
        write_text(out_csv + ".config.json", config.dump(2) + "\n");
    }

    if (dense_check) {
        if (d.dim > 64) {
            throw Error(Errc::cap_exceeded,
                        "--dense-check requires dim <= 64");
        }
        double max_dev = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const CMat rho_s = shadow_matrix(d, grid[i]);
            const double dense_val =
                (rho_s * obs.to_dense()).trace().real();
            max_dev = std::max(max_dev, std::abs(dense_val - values[i]));
        }
        std::cerr << "dense-check max deviation: " << format_g17(max_dev)
                  << '\n';
        if (max_dev > 1e-10) {
            std::cerr << "dense-check FAILED (tolerance 1e-10)\n";
            return 1;
        }
    }
    return 0;
}

int cmd_bme(const fs::path &dataset_path, int m, const std::string &likelihood,
            std::vector<std::string> obs_specs, const std::string &k_spec,
            int samples, int thin, long long burn_in,
            const std::string &beta_spec, std::uint64_t seed,
            const fs::path &out_dir) {
    seed = resolve_seed(seed);
    const Dataset d = load_dataset(dataset_path);
    if (m < 0 || m > d.shots()) {
        throw Error(Errc::invalid_argument,
                    "--m must lie in [0, " + std::to_string(d.shots()) + "]");
    }

    if (obs_specs.empty()) {
        obs_specs = {"canonical:0", "canonical:1", "canonical:2"};
    }
    std::vector<Observable> observables;
    observables.reserve(obs_specs.size());
    for (const auto &spec : obs_specs) {
        observables.push_back(parse_observable(spec, d.dim));
    }

    const double k_value =
        k_spec == "auto" ? auto_k(m, d.dim) : std::stod(k_spec);

    LikelihoodKind kind;
    std::optional<LikelihoodModel> model;
    if (likelihood == "born") {
        kind = LikelihoodKind::born;
        model = BornLikelihood(d, m);
    } else if (likelihood == "frobenius") {
        kind = LikelihoodKind::frobenius;
        if (m < 1) {
            throw Error(Errc::invalid_argument,
                        "--likelihood frobenius requires --m >= 1");
        }
        model = FrobeniusShadowLikelihood(d, m, k_value);
    } else if (likelihood == "observable") {
        kind = LikelihoodKind::observable;
        if (m < 1) {
            throw Error(Errc::invalid_argument,
                        "--likelihood observable requires --m >= 1");
        }
        RVec targets(static_cast<Eigen::Index>(observables.size()));
        for (std::size_t n = 0; n < observables.size(); ++n) {
            targets[static_cast<Eigen::Index>(n)] =
                shadow_expectation(d, m, observables[n]);
        }
        model = ObservableOrientedLikelihood(observables, targets, k_value);
    } else {
        throw Error(Errc::invalid_argument,
                    "--likelihood must be born, frobenius or observable");
    }

    ChainConfig cfg;
    cfg.retained = samples;
    cfg.thin = thin > 0 ? thin : default_thin(kind, d.dim);
    cfg.burn_in_steps = burn_in;
    if (beta_spec != "auto") {
        cfg.beta = std::stod(beta_spec);
        cfg.adapt_beta = false;
    }
    cfg.seed = seed;
    cfg.stream_id = derive_stream("cli_chain", d.trial_index, m);

    const auto posterior = run_chain(*model, cfg);
    if (posterior.low_acceptance) {
        log_warn("acceptance rate " + format_g17(posterior.acceptance_rate) +
                 " below 1%; consider a smaller beta or longer burn-in");
    }

    fs::create_directories(out_dir);
    std::ostringstream csv;
    csv << "observable,mean,stderr\n";
    for (std::size_t n = 0; n < observables.size(); ++n) {
        const auto est = bme_expectation(posterior, observables[n]);
        csv << obs_specs[n] << ',' << format_g17(est.mean) << ','
            << format_g17(est.std_error) << '\n';
    }
    write_text(out_dir / "estimates.csv", csv.str());

    json summary;
    summary["likelihood"] = likelihood;
    summary["m"] = m;
    summary["k"] = likelihood == "born" ? json() : json(k_value);
    summary["retained"] = cfg.retained;
    summary["thin"] = cfg.thin;
    summary["burn_in_steps"] = posterior.burn_in_steps;
    summary["beta_used"] = posterior.beta_used;
    summary["acceptance_rate"] = posterior.acceptance_rate;
    summary["low_acceptance"] = posterior.low_acceptance;
    summary["seed"] = seed;
    summary["stream_id"] = cfg.stream_id;
    if (m >= 1) {
        summary["overlap_with_shadow"] =
            overlap_with_shadow(posterior, d, m);
    }
    write_text(out_dir / "summary.json", summary.dump(2) + "\n");

    json config = {{"subcommand", "bme"},
                   {"dataset", dataset_path.string()},
                   {"m", m},
                   {"likelihood", likelihood},
                   {"observables", obs_specs},
                   {"K", k_spec == "auto" ? "auto (M*D = " +
                                                format_g17(k_value) + ")"
                                          : k_spec},
                   {"samples", cfg.retained},
                   {"thin", cfg.thin},
                   {"burn_in", cfg.burn_in_steps},
                   {"beta", beta_spec},
                   {"seed", seed},
                   {"out", out_dir.string()}};
    write_text(out_dir / "config.json", config.dump(2) + "\n");
    return 0;
}

int cmd_experiment(const std::string &plan_path, std::optional<int> picture,
                   std::vector<int> dims, std::optional<int> trials,
                   std::optional<int> shots, const std::string &m_grid,
                   std::vector<std::string> estimators,
                   std::optional<bool> shadow_full_grid,
                   std::optional<int> chain_retained,
                   std::optional<int> chain_thin,
                   std::optional<long long> chain_burn_in,
                   std::optional<double> chain_beta, std::uint64_t seed,
                   const fs::path &out_dir, int workers, bool resume,
                   bool overwrite) {
    ExperimentPlan plan;
    if (!plan_path.empty()) {
        plan = load_plan(plan_path);
    } else {
        if (picture) {
            plan.picture = *picture;
        }
        if (!dims.empty()) {
            plan.dims = dims;
        }
        if (trials) {
            plan.trials = *trials;
        }
        if (shots) {
            plan.shots = *shots;
        }
        if (!m_grid.empty()) {
            plan.m_grid = parse_m_grid(m_grid);
        }
        if (estimators.empty()) {
            throw Error(Errc::invalid_argument,
                        "--estimators required without --plan");
        }
        for (const auto &tag : estimators) {
            plan.estimators.push_back(parse_estimator(tag));
        }
        if (shadow_full_grid) {
            plan.shadow_full_grid = *shadow_full_grid;
        }
        plan.chain_overrides.retained = chain_retained;
        plan.chain_overrides.thin = chain_thin;
        plan.chain_overrides.burn_in_steps = chain_burn_in;
        plan.chain_overrides.beta = chain_beta;
        plan.root_seed = resolve_seed(seed);
    }
    validate_plan(plan);

    fs::create_directories(out_dir);
    const fs::path config_path = out_dir / "config.json";
    const fs::path results_path = out_dir / "results.csv";
    const fs::path mse_path = out_dir / "mse.csv";
    const std::string plan_json = plan_to_json(plan);

    RunOptions options;
    options.workers = workers;
    if (fs::exists(results_path)) {
        std::string prior_json;
        if (fs::exists(config_path)) {
            std::ifstream in(config_path);
            std::ostringstream buf;
            buf << in.rdbuf();
            prior_json = buf.str();
        }
        const bool same_config = prior_json == plan_json;
        if (overwrite) {
            log_info("overwriting previous run in " + out_dir.string());
            fs::remove(results_path);
            fs::remove(mse_path);
        } else if (resume || same_config) {
            if (resume && !same_config && !prior_json.empty()) {
                // --resume continues the plan recorded on disk.
                plan = plan_from_json(prior_json);
                log_warn("--resume: continuing the plan stored in " +
                         config_path.string());
            }
            options.existing = read_results_csv(results_path);
            log_info("resuming with " +
                     std::to_string(options.existing.size()) +
                     " existing rows");
        } else {
            throw Error(Errc::config_conflict,
                        "output directory holds a partial run with a "
                        "different configuration; pass --resume to continue "
                        "it or --overwrite to discard it");
        }
    }
    write_text(config_path, plan_to_json(plan));

    // Incremental emission so an interrupted campaign can be resumed.
    std::ofstream incremental;
    if (options.existing.empty()) {
        incremental.open(results_path, std::ios::trunc);
        incremental << "picture,dim,trial,estimator,observable,m,estimate,"
                       "ground_truth,stderr,seed,wall_time_ms\n";
    } else {
        incremental.open(results_path, std::ios::app);
    }
    options.on_result = [&incremental](const TrialResult &r) {
        incremental << r.picture << ',' << r.dim << ',' << r.trial << ','
                    << r.estimator << ',' << r.observable << ',' << r.m << ','
                    << format_g17(r.estimate) << ','
                    << format_g17(r.ground_truth) << ','
                    << (std::isnan(r.std_error) ? std::string()
                                                : format_g17(r.std_error))
                    << ',' << r.seed << ',' << format_g17(r.wall_time_ms)
                    << '\n';
        incremental.flush();
    };

    const auto results = run_experiment(plan, options);
    incremental.close();

    // Canonical rewrite: sorted, deduplicated, worker-order independent.
    write_results_csv(results, results_path);
    write_mse_csv(aggregate_mse(results), mse_path);
    log_info("wrote " + results_path.string() + " (" +
             std::to_string(results.size()) + " rows) and " +
             mse_path.string());
    return 0;
}

int cmd_validate(const std::string &suite, std::uint64_t seed) {
    seed = resolve_seed(seed);
    const auto report = validate::run_suite(suite, seed);
    for (const auto &check : report.checks) {
        std::cout << (check.passed ? "[PASS] " : "[FAIL] ") << report.suite
                  << '/' << check.name << "  " << check.detail << '\n';
    }
    return report.all_passed() ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Classical-shadow and Bayesian-mean observable estimation "
                 "on simulated randomized measurements"};
    app.require_subcommand(1);
    std::string log_level = "info";
    app.add_option("--log-level", log_level, "error|warn|info")
        ->check(CLI::IsMember({"error", "warn", "info"}));

    // simulate
    auto *sim = app.add_subcommand("simulate", "Generate measurement datasets");
    int sim_dim = 32;
    int sim_shots = 1000;
    int sim_trials = 1;
    std::uint64_t sim_seed = 7;
    std::string sim_out;
    std::string sim_format = "json";
    sim->add_option("--dim", sim_dim, "Hilbert space dimension")
        ->check(CLI::Range(2, 1 << 20));
    sim->add_option("--shots", sim_shots, "measurements per trial")
        ->check(CLI::PositiveNumber);
    sim->add_option("--trials", sim_trials, "independent trials")
        ->check(CLI::PositiveNumber);
    sim->add_option("--seed", sim_seed, "root seed");
    sim->add_option("--out", sim_out, "output directory")->required();
    sim->add_option("--format", sim_format, "json|bin")
        ->check(CLI::IsMember({"json", "bin"}));

    // shadow
    auto *shadow_cmd =
        app.add_subcommand("shadow", "Shadow observable estimates");
    std::string shadow_dataset;
    int shadow_m = 0;
    std::string shadow_m_grid;
    std::string shadow_obs = "canonical:0";
    bool shadow_dense_check = false;
    std::string shadow_out;
    shadow_cmd->add_option("--dataset", shadow_dataset, "dataset file")
        ->required();
    auto *m_opt = shadow_cmd->add_option("--m", shadow_m, "prefix length");
    auto *grid_opt = shadow_cmd->add_option("--m-grid", shadow_m_grid,
                                            "a:b[:step] or comma list");
    m_opt->excludes(grid_opt);
    shadow_cmd->add_option("--observable", shadow_obs,
                           "canonical:N | random:SEED | file:PATH");
    shadow_cmd->add_flag("--dense-check", shadow_dense_check,
                         "verify against the dense form (dim <= 64)");
    shadow_cmd->add_option("--out", shadow_out, "CSV path (default stdout)");

    // bme
    auto *bme = app.add_subcommand("bme", "Bayesian mean estimation");
    std::string bme_dataset;
    int bme_m = 0;
    std::string bme_likelihood = "born";
    std::vector<std::string> bme_observables;
    std::string bme_k = "auto";
    int bme_samples = 1 << 10;
    int bme_thin = 0;
    long long bme_burn_in = -1;
    std::string bme_beta = "auto";
    std::uint64_t bme_seed = 7;
    std::string bme_out;
    bme->add_option("--dataset", bme_dataset, "dataset file")->required();
    bme->add_option("--m", bme_m, "measurements used")->required();
    bme->add_option("--likelihood", bme_likelihood,
                    "born|frobenius|observable");
    bme->add_option("--observables", bme_observables,
                    "observable specs (comma separated)")
        ->delimiter(',');
    bme->add_option("--K", bme_k, "pseudo-likelihood weight (auto = M*D)");
    bme->add_option("--samples", bme_samples, "retained samples R")
        ->check(CLI::PositiveNumber);
    bme->add_option("--thin", bme_thin, "thinning T (0 = per-model default)");
    bme->add_option("--burn-in", bme_burn_in,
                    "burn-in steps (-1 = 25% of R*T)");
    bme->add_option("--beta", bme_beta, "pCN step size (auto = adapt)");
    bme->add_option("--seed", bme_seed, "root seed");
    bme->add_option("--out", bme_out, "output directory")->required();

    // experiment
    auto *exp = app.add_subcommand("experiment", "Run an estimation campaign");
    std::string exp_plan;
    int exp_picture = 1;
    std::vector<int> exp_dims;
    int exp_trials = 10;
    int exp_shots = 1000;
    std::string exp_m_grid;
    std::vector<std::string> exp_estimators;
    bool exp_shadow_full = true;
    int exp_chain_retained = 0;
    int exp_chain_thin = 0;
    long long exp_chain_burn_in = -2;
    double exp_chain_beta = 0.0;
    std::uint64_t exp_seed = 7;
    std::string exp_out;
    int exp_workers = 1;
    bool exp_resume = false;
    bool exp_overwrite = false;
    exp->add_option("--plan", exp_plan, "plan JSON file");
    auto *pic = exp->add_option("--picture", exp_picture, "1|2")
                    ->check(CLI::IsMember({1, 2}));
    exp->add_option("--dim", exp_dims, "dimension(s)")->delimiter(',');
    auto *tri = exp->add_option("--trials", exp_trials, "trial count");
    exp->add_option("--shots", exp_shots, "shots per dataset");
    exp->add_option("--m-grid", exp_m_grid, "a:b[:step] or comma list");
    auto *est = exp->add_option("--estimators", exp_estimators,
                                "shadow,bme_born,bme_frobenius,"
                                "bme_observable[:N],bme_observable_single")
                    ->delimiter(',');
    exp->add_flag("--shadow-full-grid,!--no-shadow-full-grid",
                  exp_shadow_full, "evaluate shadow on every M in 1..shots");
    exp->add_option("--chain-retained", exp_chain_retained,
                    "override retained samples R");
    exp->add_option("--chain-thin", exp_chain_thin, "override thinning T");
    exp->add_option("--chain-burn-in", exp_chain_burn_in,
                    "override burn-in steps");
    exp->add_option("--chain-beta", exp_chain_beta,
                    "fixed pCN beta (disables adaptation)");
    exp->add_option("--seed", exp_seed, "root seed");
    exp->add_option("--out", exp_out, "output directory")->required();
    exp->add_option("--workers", exp_workers, "worker threads")
        ->check(CLI::PositiveNumber);
    exp->add_flag("--resume", exp_resume, "continue the plan stored on disk");
    exp->add_flag("--overwrite", exp_overwrite, "discard any previous run");
    auto *plan_opt = exp->get_option("--plan");
    plan_opt->excludes(pic);
    plan_opt->excludes(tri);
    plan_opt->excludes(est);

    // validate
    auto *val = app.add_subcommand("validate", "Statistical invariant suites");
    std::string val_suite;
    std::uint64_t val_seed = 7;
    val->add_option("--suite", val_suite, "haar|shadow|prior|oracle")
        ->required();
    val->add_option("--seed", val_seed, "root seed");

    CLI11_PARSE(app, argc, argv);

    g_log_level = log_level == "error" ? LogLevel::error
                  : log_level == "warn" ? LogLevel::warn
                                        : LogLevel::info;

    try {
        if (*sim) {
            return cmd_simulate(sim_dim, sim_shots, sim_trials, sim_seed,
                                sim_out, sim_format);
        }
        if (*shadow_cmd) {
            if (shadow_m_grid.empty() && shadow_m < 1) {
                throw Error(Errc::invalid_argument,
                            "shadow: pass --m or --m-grid");
            }
            return cmd_shadow(shadow_dataset, shadow_m, shadow_m_grid,
                              shadow_obs, shadow_dense_check, shadow_out);
        }
        if (*bme) {
            return cmd_bme(bme_dataset, bme_m, bme_likelihood, bme_observables,
                           bme_k, bme_samples, bme_thin, bme_burn_in, bme_beta,
                           bme_seed, bme_out);
        }
        if (*exp) {
            return cmd_experiment(
                exp_plan, pic->count() ? std::optional<int>(exp_picture)
                                       : std::nullopt,
                exp_dims,
                tri->count() ? std::optional<int>(exp_trials) : std::nullopt,
                exp->get_option("--shots")->count()
                    ? std::optional<int>(exp_shots)
                    : std::nullopt,
                exp_m_grid, exp_estimators,
                exp->get_option("--shadow-full-grid")->count()
                    ? std::optional<bool>(exp_shadow_full)
                    : std::nullopt,
                exp_chain_retained > 0 ? std::optional<int>(exp_chain_retained)
                                       : std::nullopt,
                exp_chain_thin > 0 ? std::optional<int>(exp_chain_thin)
                                   : std::nullopt,
                exp_chain_burn_in >= -1
                    ? std::optional<long long>(exp_chain_burn_in)
                    : std::nullopt,
                exp_chain_beta > 0.0 ? std::optional<double>(exp_chain_beta)
                                     : std::nullopt,
                exp_seed, exp_out, exp_workers, exp_resume, exp_overwrite);
        }
        if (*val) {
            return cmd_validate(val_suite, val_seed);
        }
    } catch (const Error &e) {
        std::cerr << "error [" << to_string(e.code()) << "]: " << e.what()
                  << '\n';
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
