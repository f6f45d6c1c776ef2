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


// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

#include "parstack/errors.hpp"
#include "parstack/harness.hpp"

using namespace parstack;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string note;
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

bool report(int id, const std::string& title, double limit_s, const std::function<Outcome()>& run) {
    const auto start = Clock::now();
    Outcome o;
    try {
        o = run();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = seconds_since(start);
    if (limit_s > 0 && secs > limit_s) {
        o.pass = false;
        o.note += "; over the time limit";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f s", secs);
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << title << "  (" << o.note << ", "
              << buf << ")" << std::endl;
    return o.pass;
}

// Weight multisets as maps from exact rationals, independent of Weight.
using Exact = std::map<mpq_class, long>;

Exact exact(const WeightMultiset& w) {
    Exact out;
    for (const auto& [a, m] : w) out[a.value()] += m;
    return out;
}

mpq_class frac(const mpq_class& q) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return q - fl;
}

long floor_of(const mpq_class& q) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return fl.get_si();
}

Outcome round_trips() {
    int bad = 0, total = 0;
    for (Field f : {Field::rational(), Field::prime(101)}) {
        Rng rng(f.is_rational() ? 1001 : 2002);
        for (int i = 0; i < 250; ++i, ++total) {
            const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
            const int r = static_cast<int>(rng.uniform(1, 8));
            const ParabolicPoint p = gen_parabolic_point(rng, n, r, f);
            const GradedModule m = from_parabolic(p);
            if (!(to_parabolic(m) == p) || !(from_parabolic(to_parabolic(m)) == m)) ++bad;
        }
    }
    return {bad == 0, std::to_string(total) + " points, " + std::to_string(bad) + " failures"};
}

std::string coverage_note(const Coverage& c) {
    return std::string("coverage ") + (c.complete() ? "complete" : "INCOMPLETE");
}

Outcome suite_run(Suite s, const TrialConfig& cfg, TrialReport& keep) {
    keep = verify(s, cfg);
    std::ostringstream note;
    note << keep.passed() << "/" << keep.results.size() << " passed, " << coverage_note(keep.coverage);
    if (keep.counterexample) note << ", first failure: " << (*keep.counterexample)["detail"].get<std::string>();
    return {keep.failed() == 0 && keep.coverage.complete(), note.str()};
}

// Recomputes both weight laws from the generated instances with exact
// arithmetic, without the harness's own checks.
Outcome weight_laws(const TrialConfig& cfg) {
    int bad = 0, checked = 0;
    for (int i = 0; i < cfg.trials; ++i) {
        const TrialInstance inst = generate_instance(Suite::Direct, cfg, i);
        Exact want;
        for (std::size_t j = 0; j < inst.sources.size(); ++j) {
            const int e = inst.profile.branches()[j].e;
            for (const auto& [a, m] : exact(weights_of(to_parabolic(inst.sources[j]))))
                for (int l = 0; l < e; ++l) want[(a + l) / e] += m;
        }
        const Exact got = exact(weights_of(to_parabolic(pushforward_graded(inst.profile, inst.sources))));
        bad += got != want;
        ++checked;
    }
    for (int i = 0; i < cfg.trials; ++i) {
        const TrialInstance inst = generate_instance(Suite::Pull, cfg, i);
        const ParabolicPoint p = to_parabolic(inst.sources[0]);
        const Exact in = exact(weights_of(p));
        for (const auto& b : inst.profile.branches()) {
            Exact want;
            long twists = 0;
            for (const auto& [a, m] : in) {
                want[frac(a * b.e)] += m;
                twists += floor_of(a * b.e) * m;
            }
            const ParabolicPoint q = pullback_parabolic(inst.profile, p, b.label);
            const bool twist_ok = q[0].det_exponent() == b.e * p[0].det_exponent() - twists;
            bad += exact(weights_of(q)) != want || !twist_ok;
            ++checked;
        }
    }
    return {bad == 0, std::to_string(checked) + " weight multisets, " + std::to_string(bad) + " failures"};
}

Outcome admissibility(const TrialConfig& cfg) {
    long generated = 0, bad = 0;
    for (Suite s : {Suite::Direct, Suite::Pull, Suite::Corollaries})
        for (int i = 0; i < cfg.trials; ++i) {
            const CoverProfile p = generate_instance(s, cfg, i).profile;
            for (const auto& b : p.branches()) {
                ++generated;
                bad += b.r * b.e != p.target_order();
            }
        }
    Rng rng(77);
    for (int i = 0; i < 1000; ++i) {
        const CoverProfile p = random_profile(Field::rational(), rng, 12, 3);
        for (const auto& b : p.branches()) {
            ++generated;
            bad += b.r * b.e != p.target_order();
        }
    }
    struct Case {
        int s, e, r;
    };
    const std::vector<Case> negatives{{4, 3, 2}, {4, 2, 3}, {6, 4, 1}, {1, 2, 1},  {2, 1, 1},  {12, 5, 2},
                                      {3, 2, 2}, {8, 3, 3}, {9, 2, 4}, {10, 3, 3}, {5, 1, 4}, {7, 7, 7}};
    int rejected = 0;
    for (const auto& c : negatives) {
        try {
            CoverProfile(c.s, {{"x", c.e, c.r, Scalar(1)}});
        } catch (const Error& e) {
            rejected += e.code() == Errc::InadmissibleProfile;
        }
    }
    // a good branch does not rescue a bad one
    try {
        CoverProfile(4, {{"x", 2, 2, Scalar(1)}, {"z", 3, 1, Scalar(1)}});
    } catch (const Error& e) {
        rejected += e.code() == Errc::InadmissibleProfile;
    }
    const int cases = static_cast<int>(negatives.size()) + 1;
    std::ostringstream note;
    note << generated << " generated branches admissible" << (bad ? " except " + std::to_string(bad) : "") << ", "
         << rejected << "/" << cases << " negative cases rejected";
    return {bad == 0 && rejected == cases, note.str()};
}

Outcome degrees() {
    Rng rng(606);
    int bad = 0;
    for (int i = 0; i < 50; ++i) {
        const long deg_f = rng.uniform(1, 6);
        ParabolicBundle f;
        f.rank = 1;
        f.underlying_degree = rng.uniform(-3, 3);
        CoverScenario cover;
        cover.degree = deg_f;
        const int points = static_cast<int>(rng.uniform(1, 3));
        for (int y = 0; y < points; ++y) {
            // split deg f into ramification indices, then pick s divisible by all of them
            std::vector<int> es;
            for (long left = deg_f; left > 0;) {
                const int e = static_cast<int>(rng.uniform(1, left));
                es.push_back(e);
                left -= e;
            }
            int s = 1;
            for (int e : es) s = std::lcm(s, e);
            s *= static_cast<int>(rng.uniform(1, 2));
            std::vector<Branch> branches;
            for (std::size_t k = 0; k < es.size(); ++k)
                branches.push_back({"x" + std::to_string(k), es[k], s / es[k], rng.nonzero_scalar(Field::rational())});
            const std::string label = "y" + std::to_string(y);
            cover.profiles.emplace(label, CoverProfile(s, branches));
            const int depth = static_cast<int>(rng.uniform(0, s - 1));
            f.points.emplace(label, ParabolicPoint::line(s, depth, static_cast<int>(rng.uniform(-1, 1))));
        }
        // oracle: pardeg F = d + sum of weights; the pullback has underlying
        // degree deg f * d + sum floor(a e) and weights {a e} over all branches
        mpq_class base = f.underlying_degree;
        mpq_class pulled = mpq_class(deg_f * f.underlying_degree);
        long e_total_ok = 1;
        for (const auto& [label, p] : f.points) {
            const mpq_class a = exact(weights_of(p)).begin()->first;
            base += a;
            long e_sum = 0;
            for (const auto& b : cover.profiles.at(label).branches()) {
                pulled += floor_of(a * b.e) + frac(a * b.e);
                e_sum += b.e;
            }
            e_total_ok &= e_sum == deg_f;
        }
        const mpq_class got = parabolic_degree(pullback_bundle(cover, f));
        if (!e_total_ok || got != pulled || got != base * deg_f || pulled != base * deg_f) ++bad;
    }
    return {bad == 0, "50 scenarios, " + std::to_string(bad) + " failures"};
}

Outcome corollaries(const TrialConfig& cfg) {
    const TrialReport rep = verify(Suite::Corollaries, cfg);
    int sym = 0, anti = 0, sym_ok = 0, anti_ok = 0;
    for (int i = 0; i < cfg.trials; ++i) {
        const bool symmetric = generate_instance(Suite::Corollaries, cfg, i).kind == FormKind::Symmetric;
        const bool ok = rep.results[static_cast<std::size_t>(i)].pass;
        (symmetric ? sym : anti) += 1;
        (symmetric ? sym_ok : anti_ok) += ok;
    }
    std::ostringstream note;
    note << anti_ok << "/" << anti << " symplectic, " << sym_ok << "/" << sym << " orthogonal";
    if (rep.counterexample) note << ", first failure: " << (*rep.counterexample)["detail"].get<std::string>();
    return {anti >= 100 && sym >= 100 && anti_ok == anti && sym_ok == sym, note.str()};
}

Outcome mutations() {
    int detected = 0, replayed = 0, total = 0;
    for (Mutation m :
         {Mutation::BrokenInclusion, Mutation::WrongTwist, Mutation::TransposedGrading, Mutation::FlippedSymmetry}) {
        TrialConfig cfg;
        cfg.seed = 2026;
        cfg.trials = 5;
        cfg.mutation = m;
        const Suite s = mutation_suite(m);
        for (int i = 0; i < cfg.trials; ++i, ++total) {
            const TrialInstance inst = generate_instance(s, cfg, i);
            const TrialResult r = run_instance(inst);
            if (r.pass) continue;
            ++detected;
            const TrialInstance back = instance_from_json(io::json::parse(to_json(inst).dump()));
            const TrialResult again = run_instance(back);
            replayed += !again.pass && again.detail == r.detail;
        }
        const TrialReport rep = verify(s, cfg);
        if (!rep.counterexample) --replayed;
    }
    std::ostringstream note;
    note << detected << "/" << total << " detected, " << replayed << "/" << total << " replayed";
    return {detected == total && replayed == total, note.str()};
}

Outcome determinism() {
    TrialConfig cfg;
    cfg.seed = 31337;
    cfg.trials = 40;
    int same = 0, runs = 0;
    for (Suite s : {Suite::Direct, Suite::Pull, Suite::Corollaries}) {
        const std::string a = strip_timing(to_json(verify(s, cfg))).dump(2);
        const std::string b = strip_timing(to_json(verify(s, cfg))).dump(2);
        same += a == b;
        ++runs;
    }
    // a failing run replays to the recorded verdict
    cfg.mutation = Mutation::TransposedGrading;
    cfg.trials = 3;
    const TrialReport rep = verify(Suite::Direct, cfg);
    bool replay_ok = false;
    if (rep.counterexample) {
        const io::json& ce = *rep.counterexample;
        const TrialResult r = run_instance(instance_from_json(ce));
        replay_ok = (r.pass ? "pass" : "fail") == ce["verdict"].get<std::string>() &&
                    r.detail == ce["detail"].get<std::string>();
    }
    std::ostringstream note;
    note << same << "/" << runs << " suites byte-identical modulo timing, replay "
         << (replay_ok ? "reproduced" : "NOT reproduced");
    return {same == runs && replay_ok, note.str()};
}

}  // namespace

int main() {
    TrialConfig cfg;  // 200 trials, s <= 12, up to 3 branches, n_j <= 3
    cfg.seed = 20260101;
    int failed = 0;
    TrialReport direct, pull;
    failed += !report(1, "round trips between chains and graded modules", 30, round_trips);
    failed += !report(2, "direct image, 200 trials", 120, [&] { return suite_run(Suite::Direct, cfg, direct); });
    failed += !report(3, "pullback with splitting independence, 200 trials", 120,
                      [&] { return suite_run(Suite::Pull, cfg, pull); });
    failed += !report(4, "weight laws under pushforward and pullback", 0, [&] { return weight_laws(cfg); });
    failed += !report(5, "admissibility of profiles", 0, [&] { return admissibility(cfg); });
    failed += !report(6, "degree multiplicativity, 50 scenarios", 0, degrees);
    failed += !report(7, "symplectic and orthogonal transport, 200 trials", 120, [&] { return corollaries(cfg); });
    failed += !report(8, "mutation sensitivity, 20 corruptions", 0, mutations);
    failed += !report(9, "determinism and replay", 0, determinism);
    std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << std::endl;
    return failed == 0 ? 0 : 1;
}
