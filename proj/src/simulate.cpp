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

#include "shadowbench/simulate.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

#include <nlohmann/json.hpp>

namespace shadowbench {

namespace {

using nlohmann::json;

constexpr std::uint32_t kBinaryVersion = 1;
constexpr int kJsonFormatVersion = 1;

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void check_outcome_unit(const CVec &v, const char *context) {
    if (!is_unit(v)) {
        throw Error(Errc::invariant_violation,
                    std::string(context) + ": outcome vector is not unit norm");
    }
}

} // namespace

CVec sample_haar_unit_vector(int dim, RngStream &rng) {
    if (dim < 1) {
        throw Error(Errc::invalid_argument,
                    "sample_haar_unit_vector: dim must be >= 1");
    }
    CVec w(dim);
    for (;;) {
        for (int j = 0; j < dim; ++j) {
            w[j] = rng.next_complex_normal();
        }
        const double n = w.norm();
        if (n > 0.0) {
            return w / n;
        }
        // all-zero draw has probability zero but is float-possible: redraw
    }
}

int pick_index(const RVec &weights, RngStream &rng) {
    if (weights.size() == 0) {
        throw Error(Errc::invalid_argument, "pick_index: empty weights");
    }
    const double total = weights.sum();
    if (!(total > 0.0)) {
        throw Error(Errc::invalid_argument, "pick_index: non-positive mass");
    }
    const double r = rng.next_double() * total;
    double cum = 0.0;
    const int n = static_cast<int>(weights.size());
    for (int j = 0; j < n - 1; ++j) {
        cum += weights[j];
        if (r < cum) {
            return j;
        }
    }
    // final cumulative value is by definition the total mass
    return n - 1;
}

CVec simulate_shot(int dim, RngStream &rng) {
    if (dim < 2) {
        throw Error(Errc::invalid_argument, "simulate_shot: dim must be >= 2");
    }
    const CVec u = sample_haar_unit_vector(dim, rng);
    const int n = pick_index(u.cwiseAbs2(), rng);

    CVec v(dim - 1);
    double v_sq = 0.0;
    do {
        for (int j = 0; j < dim - 1; ++j) {
            v[j] = rng.next_complex_normal();
        }
        v_sq = v.squaredNorm();
    } while (v_sq <= 0.0);

    const double rest = std::max(0.0, 1.0 - std::norm(u[n]));
    const double scale = std::sqrt(rest / v_sq);
    CVec psi(dim);
    psi[0] = u[n];
    psi.tail(dim - 1) = scale * v;
    return psi;
}

Dataset simulate_dataset(int dim, int shots, std::uint64_t seed,
                         std::uint64_t trial_index) {
    if (shots < 1) {
        throw Error(Errc::invalid_argument,
                    "simulate_dataset: shots must be >= 1");
    }
    RngStream rng(seed, trial_index);
    Dataset d;
    d.dim = dim;
    d.seed = seed;
    d.trial_index = trial_index;
    d.created = utc_timestamp();
    d.outcomes.reserve(static_cast<std::size_t>(shots));
    for (int m = 0; m < shots; ++m) {
        d.outcomes.push_back(simulate_shot(dim, rng));
    }
    return d;
}

void save_dataset_json(const Dataset &d, const std::filesystem::path &path) {
    // The header carries exactly the regeneration identity; `created` is
    // in-memory provenance and deliberately not serialized, so regenerated
    // files are byte-identical.
    json j;
    j["format_version"] = kJsonFormatVersion;
    j["dim"] = d.dim;
    j["shots"] = d.shots();
    j["seed"] = d.seed;
    j["trial_index"] = d.trial_index;
    json outcomes = json::array();
    for (const CVec &psi : d.outcomes) {
        json vec = json::array();
        for (int k = 0; k < psi.size(); ++k) {
            vec.push_back({psi[k].real(), psi[k].imag()});
        }
        outcomes.push_back(std::move(vec));
    }
    j["outcomes"] = std::move(outcomes);

    std::ofstream out(path);
    if (!out) {
        throw Error(Errc::io_failure,
                    "save_dataset_json: cannot open " + path.string());
    }
    out << j.dump() << '\n';
    if (!out) {
        throw Error(Errc::io_failure,
                    "save_dataset_json: write failed for " + path.string());
    }
}

Dataset load_dataset_json(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::io_failure,
                    "load_dataset_json: cannot open " + path.string());
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception &e) {
        throw Error(Errc::bad_format,
                    "load_dataset_json: " + path.string() + ": " + e.what());
    }
    try {
        Dataset d;
        d.dim = j.at("dim").get<int>();
        d.seed = j.at("seed").get<std::uint64_t>();
        d.trial_index = j.at("trial_index").get<std::uint64_t>();
        d.created = j.value("created", std::string());
        const int shots = j.at("shots").get<int>();
        const auto &outcomes = j.at("outcomes");
        if (static_cast<int>(outcomes.size()) != shots) {
            throw Error(Errc::bad_format,
                        "load_dataset_json: shots header disagrees with "
                        "outcome count");
        }
        d.outcomes.reserve(outcomes.size());
        for (const auto &vec : outcomes) {
            if (static_cast<int>(vec.size()) != d.dim) {
                throw Error(Errc::dimension_mismatch,
                            "load_dataset_json: outcome length disagrees "
                            "with dim header");
            }
            CVec psi(d.dim);
            for (int k = 0; k < d.dim; ++k) {
                psi[k] = Complex(vec[k][0].get<double>(),
                                 vec[k][1].get<double>());
            }
            check_outcome_unit(psi, "load_dataset_json");
            d.outcomes.push_back(std::move(psi));
        }
        return d;
    } catch (const json::exception &e) {
        throw Error(Errc::bad_format,
                    "load_dataset_json: " + path.string() + ": " + e.what());
    }
}

void save_dataset_binary(const Dataset &d, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(Errc::io_failure,
                    "save_dataset_binary: cannot open " + path.string());
    }
    const auto put_u32 = [&](std::uint32_t v) {
        out.write(reinterpret_cast<const char *>(&v), sizeof(v));
    };
    const auto put_u64 = [&](std::uint64_t v) {
        out.write(reinterpret_cast<const char *>(&v), sizeof(v));
    };
    out.write("SHDW", 4);
    put_u32(kBinaryVersion);
    put_u32(static_cast<std::uint32_t>(d.dim));
    put_u32(static_cast<std::uint32_t>(d.shots()));
    put_u64(d.seed);
    put_u64(d.trial_index);
    for (const CVec &psi : d.outcomes) {
        for (int k = 0; k < psi.size(); ++k) {
            const double re = psi[k].real();
            const double im = psi[k].imag();
            out.write(reinterpret_cast<const char *>(&re), sizeof(re));
            out.write(reinterpret_cast<const char *>(&im), sizeof(im));
        }
    }
    if (!out) {
        throw Error(Errc::io_failure,
                    "save_dataset_binary: write failed for " + path.string());
    }
}

Dataset load_dataset_binary(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::io_failure,
                    "load_dataset_binary: cannot open " + path.string());
    }
    char magic[4];
    in.read(magic, 4);
    if (!in || std::string(magic, 4) != "SHDW") {
        throw Error(Errc::bad_format,
                    "load_dataset_binary: bad magic in " + path.string());
    }
    const auto get_u32 = [&]() {
        std::uint32_t v = 0;
        in.read(reinterpret_cast<char *>(&v), sizeof(v));
        return v;
    };
    const auto get_u64 = [&]() {
        std::uint64_t v = 0;
        in.read(reinterpret_cast<char *>(&v), sizeof(v));
        return v;
    };
    const std::uint32_t version = get_u32();
    if (version != kBinaryVersion) {
        throw Error(Errc::bad_format, "load_dataset_binary: unknown version " +
                                          std::to_string(version));
    }
    Dataset d;
    d.dim = static_cast<int>(get_u32());
    const auto shots = get_u32();
    d.seed = get_u64();
    d.trial_index = get_u64();
    if (!in || d.dim < 1) {
        throw Error(Errc::bad_format,
                    "load_dataset_binary: truncated header in " + path.string());
    }
    d.outcomes.reserve(shots);
    for (std::uint32_t m = 0; m < shots; ++m) {
        CVec psi(d.dim);
        for (int k = 0; k < d.dim; ++k) {
            double re = 0.0;
            double im = 0.0;
            in.read(reinterpret_cast<char *>(&re), sizeof(re));
            in.read(reinterpret_cast<char *>(&im), sizeof(im));
            psi[k] = Complex(re, im);
        }
        if (!in) {
            throw Error(Errc::bad_format,
                        "load_dataset_binary: truncated payload in " +
                            path.string());
        }
        check_outcome_unit(psi, "load_dataset_binary");
        d.outcomes.push_back(std::move(psi));
    }
    return d;
}

void save_dataset(const Dataset &d, const std::filesystem::path &path) {
    if (path.extension() == ".bin") {
        save_dataset_binary(d, path);
    } else {
        save_dataset_json(d, path);
    }
}

Dataset load_dataset(const std::filesystem::path &path) {
    if (path.extension() == ".bin") {
        return load_dataset_binary(path);
    }
    return load_dataset_json(path);
}

} // namespace shadowbench
