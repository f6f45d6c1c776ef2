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


#include <set>

#include "doctest.h"
#include "parstack/harness.hpp"
#include "support.hpp"

using namespace parstack;
using namespace parstack::testing;

namespace {

bool has_weights(const TrialResult& r, const std::string& w) {
    for (const auto& s : r.weights)
        if (s.size() >= w.size() && s.compare(s.size() - w.size(), w.size(), w) == 0) return true;
    return false;
}

TrialInstance direct_instance(const CoverProfile& prof, std::vector<ParabolicPoint> ps) {
    TrialInstance inst;
    inst.suite = Suite::Direct;
    inst.profile = prof;
    for (const auto& p : ps) {
        inst.sources.push_back(from_parabolic(p));
        inst.targets.push_back(from_parabolic(p));
        inst.maps.push_back(Matrix::identity(p.rank()));
    }
    return inst;
}

}  // namespace

TEST_CASE("random parabolic points") {
    std::set<std::string> seen;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Rng rng(seed);
        const ParabolicPoint p = gen_parabolic_point(rng, 1, 2, Field::rational());
        CHECK(p.order() == 2);
        seen.insert(to_string(weights_of(p)));
    }
    CHECK(seen.size() == 2);

    Rng one(3);
    const ParabolicPoint triv = gen_parabolic_point(one, 1, 1, Field::rational());
    CHECK(weights_of(triv) == WeightMultiset{{Weight(0, 1), 1}});

    Rng a(17), b(17);
    CHECK(gen_parabolic_point(a, 2, 2, Field::rational()) == gen_parabolic_point(b, 2, 2, Field::rational()));
}

TEST_CASE("trivial bounds pass") {
    TrialConfig cfg;
    cfg.trials = 20;
    cfg.max_rank = 1;
    cfg.max_order = 1;
    cfg.max_branches = 1;
    for (Suite s : {Suite::Direct, Suite::Pull, Suite::Corollaries}) {
        const TrialReport rep = verify(s, cfg);
        CHECK(rep.failed() == 0);
        CHECK(!rep.counterexample);
    }
}

TEST_CASE("default bounds pass with full coverage") {
    TrialConfig cfg;
    cfg.trials = 40;
    cfg.seed = 7;
    for (Field f : {Field::rational(), Field::prime(101)}) {
        cfg.field = f;
        for (Suite s : {Suite::Direct, Suite::Pull, Suite::Corollaries}) {
            const TrialReport rep = verify(s, cfg);
            CHECK_MESSAGE(rep.failed() == 0, suite_name(s), " ", f.name());
            CHECK(rep.coverage.complete());
        }
    }
}

TEST_CASE("worked direct image example in a report") {
    const CoverProfile prof(4, {{"a", 2, 2, Scalar(1)}, {"b", 4, 1, Scalar(3)}});
    const TrialResult r = run_instance(direct_instance(prof, {ParabolicPoint::line(2, 1), ParabolicPoint::line(1, 0)}));
    CHECK(r.pass);
    const WeightMultiset want{{Weight(0, 1), 1}, {Weight(1, 4), 2}, {Weight(1, 2), 1}, {Weight(3, 4), 2}};
    CHECK(has_weights(r, to_string(want)));
}

TEST_CASE("worked pullback example in a report") {
    TrialInstance inst;
    inst.suite = Suite::Pull;
    inst.profile = CoverProfile(6, {{"x", 2, 3, Scalar(1)}});
    const ParabolicPoint f = direct_sum({ParabolicPoint::line(6, 2), ParabolicPoint::line(6, 4)});
    inst.sources = {from_parabolic(f)};
    inst.targets = {from_parabolic(f)};
    inst.maps = {Matrix::identity(2)};
    inst.split_seed = 11;
    const TrialResult r = run_instance(inst);
    CHECK(r.pass);
    CHECK(has_weights(r, to_string(WeightMultiset{{Weight(1, 3), 1}, {Weight(2, 3), 1}})));
}

TEST_CASE("pairing examples in a report") {
    TrialInstance inst;
    inst.suite = Suite::Corollaries;
    inst.profile = CoverProfile(2, {{"x", 2, 1, Scalar(1)}});
    inst.kind = FormKind::Symmetric;
    inst.value_line = ParabolicPoint::line(1, 0);
    const ParabolicPoint triv = ParabolicPoint::trivial(Lattice::standard(1));
    inst.target_pairing = PairingInstance{triv, {Matrix::identity(1), FormKind::Symmetric, inst.value_line}};
    inst.branch_pairings = {PairingInstance{triv, {Matrix::identity(1), FormKind::Symmetric, inst.value_line}}};
    const TrialResult r = run_instance(inst);
    CHECK_MESSAGE(r.pass, r.detail);
    bool pushed = false;
    for (const auto& [route, form] : r.forms)
        if (route == "push") {
            pushed = true;
            CHECK(io::matrix_from_json(form, Field::rational(), "form") == Matrix::diagonal({1, tp(1)}));
        }
    CHECK(pushed);

    TrialInstance sympl = inst;
    sympl.kind = FormKind::Antisymmetric;
    const Matrix h = cols({{0, -1}, {1, 0}});
    const ParabolicPoint triv2 = ParabolicPoint::trivial(Lattice::standard(2));
    sympl.target_pairing = PairingInstance{triv2, {h, FormKind::Antisymmetric, inst.value_line}};
    sympl.branch_pairings = {PairingInstance{triv2, {h, FormKind::Antisymmetric, inst.value_line}}};
    CHECK(run_instance(sympl).pass);

    sympl.mutation = Mutation::FlippedSymmetry;
    const TrialResult bad = run_instance(sympl);
    CHECK(!bad.pass);
    CHECK(bad.detail.find("NotAPairing") == 0);
}

TEST_CASE("mutations are caught and replay") {
    for (Mutation m : {Mutation::BrokenInclusion, Mutation::WrongTwist, Mutation::TransposedGrading,
                       Mutation::FlippedSymmetry}) {
        TrialConfig cfg;
        cfg.trials = 5;
        cfg.seed = 99;
        cfg.mutation = m;
        const TrialReport rep = verify(mutation_suite(m), cfg);
        CHECK_MESSAGE(rep.failed() == 5, mutation_name(m));
        REQUIRE(rep.counterexample);
        const TrialInstance inst = instance_from_json(*rep.counterexample);
        CHECK(inst.mutation == m);
        const TrialResult again = run_instance(inst);
        CHECK(!again.pass);
        CHECK(again.detail == (*rep.counterexample)["detail"].get<std::string>());
        CHECK(to_json(inst) == to_json(instance_from_json(to_json(inst))));
    }
}

TEST_CASE("reports are deterministic modulo timing") {
    TrialConfig cfg;
    cfg.trials = 10;
    cfg.seed = 42;
    for (Suite s : {Suite::Direct, Suite::Pull, Suite::Corollaries}) {
        const auto a = strip_timing(to_json(verify(s, cfg))).dump(2);
        const auto b = strip_timing(to_json(verify(s, cfg))).dump(2);
        CHECK(a == b);
    }
    TrialConfig other = cfg;
    other.seed = 43;
    CHECK(config_hash(cfg) != config_hash(other));
    CHECK(config_hash(cfg) == config_hash(cfg));
    CHECK_THROWS_AS(suite_from_name("sideways"), Error);
    CHECK_THROWS_AS(mutation_from_name("nope"), Error);
}

TEST_CASE("instances survive serialization") {
    TrialConfig cfg;
    cfg.field = Field::prime(101);
    for (Suite s : {Suite::Direct, Suite::Pull, Suite::Corollaries})
        for (int i = 0; i < 5; ++i) {
            const TrialInstance inst = generate_instance(s, cfg, i);
            const TrialInstance back = instance_from_json(io::json::parse(to_json(inst).dump()));
            CHECK(to_json(back) == to_json(inst));
            CHECK(run_instance(back).pass == run_instance(inst).pass);
        }
    CHECK_THROWS_AS(instance_from_json(io::json{{"kind", "scenario"}}), Error);
}
