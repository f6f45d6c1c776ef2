/*
   Copyright 2026 The parstack Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/


#ifndef PARSTACK_HARNESS_HPP
#define PARSTACK_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "parstack/io.hpp"

namespace parstack {

enum class Suite { Direct, Pull, Corollaries };
enum class Mutation { None, BrokenInclusion, WrongTwist, TransposedGrading, FlippedSymmetry };

const char* suite_name(Suite s);
Suite suite_from_name(const std::string& s);
const char* mutation_name(Mutation m);
Mutation mutation_from_name(const std::string& s);
/// The suite whose verifier is expected to catch the mutation.
Suite mutation_suite(Mutation m);

struct TrialConfig {
    std::uint64_t seed = 0;
    int trials = 200;
    int max_rank = 3;
    int max_order = 12;
    int max_branches = 3;
    Field field = Field::rational();
    Mutation mutation = Mutation::None;
};

/// Everything one trial needs; serializes to a replayable JSON document.
struct TrialInstance {
    Suite suite = Suite::Direct;
    Mutation mutation = Mutation::None;
    Field field = Field::rational();
    CoverProfile profile;
    /// Seeds the random adapted bases of the pullback check.
    std::uint64_t split_seed = 0;
    /// Direct: branch modules and their morphism targets. Pull: one module
    /// on the target and its morphism target.
    std::vector<GradedModule> sources;
    std::vector<GradedModule> targets;
    std::vector<Matrix> maps;
    /// Corollaries: a pairing on the target and one pairing per branch, all
    /// valued in (pullbacks of) `value_line`.
    FormKind kind = FormKind::Symmetric;
    ParabolicPoint value_line;
    std::optional<PairingInstance> target_pairing;
    std::vector<PairingInstance> branch_pairings;
};

struct TrialResult {
    bool pass = true;
    std::string detail;
    /// Weight multisets of the computed objects, for the report.
    std::vector<std::string> weights;
    /// Transported forms (corollaries suite), keyed by route.
    std::vector<std::pair<std::string, io::json>> forms;
    double elapsed_ms = 0;
};

struct Coverage {
    bool ramified = false;      // some e > 1
    bool orbifold = false;      // some r > 1
    bool multi_branch = false;  // some profile with >= 2 branches
    bool non_unit_u = false;    // some u != 1
    bool complete() const { return ramified && orbifold && multi_branch && non_unit_u; }
};

struct TrialReport {
    Suite suite = Suite::Direct;
    TrialConfig config;
    std::vector<TrialResult> results;
    Coverage coverage;
    std::optional<io::json> counterexample;
    double elapsed_ms = 0;

    int passed() const;
    int failed() const;
};

/// A chain of order r on a random E^0 with a random fiberwise flag.
ParabolicPoint gen_parabolic_point(Rng& rng, std::size_t n, int r, Field f);

/// The instance stream is a pure function of (suite, config, index).
TrialInstance generate_instance(Suite suite, const TrialConfig& cfg, int index);
/// Runs one instance; failures and errors are reported in the result.
TrialResult run_instance(const TrialInstance& inst);

TrialReport verify(Suite suite, const TrialConfig& cfg);
TrialReport verify_direct_image(const TrialConfig& cfg);
TrialReport verify_pullback(const TrialConfig& cfg);
TrialReport verify_corollaries(const TrialConfig& cfg);

io::json to_json(const TrialInstance& inst);
TrialInstance instance_from_json(const io::json& j);
io::json to_json(const TrialConfig& cfg);
std::string config_hash(const TrialConfig& cfg);
io::json to_json(const TrialReport& r);
/// Drops every "elapsed_ms" member, recursively.
io::json strip_timing(io::json j);

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace parstack

#endif
