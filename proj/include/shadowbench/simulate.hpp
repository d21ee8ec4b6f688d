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
#include <filesystem>
#include <string>
#include <vector>

#include "shadowbench/hilbert.hpp"
#include "shadowbench/rng.hpp"

namespace shadowbench {

/// Measurement record for a fixed pure ground truth |0><0|.
///
/// Each outcome is the post-measurement state U_m^dag |b_m> of one randomized
/// measurement, stored as a unit vector. The random unitary itself is never
/// materialized; outcomes are produced directly by the reduced sampling
/// procedure in simulate_shot().
struct Dataset {
    int dim = 0;
    std::vector<CVec> outcomes;
    std::uint64_t seed = 0;
    std::uint64_t trial_index = 0;
    std::string created; // ISO-8601, informational only

    [[nodiscard]] int shots() const { return static_cast<int>(outcomes.size()); }
};

/// Uniform unit vector on the complex (dim-1)-sphere: dim complex normals,
/// normalized. Consumes exactly 2*dim u64 draws.
CVec sample_haar_unit_vector(int dim, RngStream &rng);

/// Index n drawn with probability weights[n] / sum(weights).
///
/// Inverse-CDF over the running sums with the final sum treated as the total
/// mass, so float rounding cannot push the draw out of range.
int pick_index(const RVec &weights, RngStream &rng);

/// One randomized-measurement outcome for ground truth |0><0|.
///
/// Draws the first row u of a Haar unitary's adjoint, selects column n with
/// probability |u_n|^2, and fills the rest of that column with a fresh
/// isotropic complex vector scaled so the result is exactly unit norm:
///
///   |psi> = u_n |0> + sqrt((1 - |u_n|^2) / sum_j |v_j|^2) sum_j v_j |j>.
CVec simulate_shot(int dim, RngStream &rng);

/// `shots` outcomes from the stream (root_seed = seed, stream_id = trial).
Dataset simulate_dataset(int dim, int shots, std::uint64_t seed,
                         std::uint64_t trial_index);

/// Canonical JSON serialization (lossless complex round trip).
void save_dataset_json(const Dataset &d, const std::filesystem::path &path);
Dataset load_dataset_json(const std::filesystem::path &path);

/// Packed little-endian binary: "SHDW", u32 version, u32 dim, u32 shots,
/// u64 seed, u64 trial, then interleaved f64 re/im per outcome component.
void save_dataset_binary(const Dataset &d, const std::filesystem::path &path);
Dataset load_dataset_binary(const std::filesystem::path &path);

/// Dispatch on extension: ".json" or ".bin".
void save_dataset(const Dataset &d, const std::filesystem::path &path);
Dataset load_dataset(const std::filesystem::path &path);

} // namespace shadowbench
