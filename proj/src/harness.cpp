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


#include "parstack/harness.hpp"

#include <chrono>
#include <cstdio>

#include "parstack/errors.hpp"

namespace parstack {

namespace {

using io::json;

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, Suite suite, int index) {
    return splitmix(splitmix(seed) ^ (static_cast<std::uint64_t>(suite) << 56) ^ static_cast<std::uint64_t>(index));
}

Matrix t_scaled(const Matrix& a, int c) { return Matrix::diagonal(Vec(a.rows(), LocalElement::t_power(c))) * a; }

/// t^c a for the least c making it a morphism p -> q.
Matrix minimal_morphism(const Matrix& a, const ParabolicPoint& p, const ParabolicPoint& q) {
    int c = -8;
    while (!is_morphism(t_scaled(a, c), p, q)) ++c;
    return t_scaled(a, c);
}

Matrix diag_t(const std::vector<int>& exps) {
    Vec d;
    for (int e : exps) d.push_back(LocalElement::t_power(e));
    return Matrix::diagonal(d);
}

int base_of(const Lattice& line_level0) { return line_level0.pivots().front(); }

class Failure : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

WeightMultiset pushed_weights(const std::vector<ParabolicPoint>& ps, const CoverProfile& profile) {
    WeightMultiset w;
    for (std::size_t j = 0; j < ps.size(); ++j) {
        const Branch& b = profile.branches()[j];
        for (const auto& [a, m] : weights_of(ps[j]))
            for (long l = 0; l < b.e; ++l) w[Weight(a.over(b.r) + b.r * l, profile.target_order())] += m;
    }
    return w;
}

std::vector<Lattice> graded_shadow(const GradedModule& gr, Mutation mutation, std::uint64_t salt) {
    std::vector<Lattice> chain = to_parabolic(gr).chain();
    const int s = gr.order();
    if (mutation == Mutation::BrokenInclusion) {
        const std::size_t j = s > 1 ? 1 + salt % static_cast<std::uint64_t>(s - 1) : 0;
        chain[j] = scale(chain[j], 1);
    } else if (mutation == Mutation::TransposedGrading) {
        // E^j read off M_j instead of M_{s-j}
        for (int j = 1; j < s; ++j) chain[static_cast<std::size_t>(j)] = scale(gr[j], 1);
    }
    return chain;
}

void check_direct(const TrialInstance& inst, TrialResult& res) {
    const CoverProfile& prof = inst.profile;
    std::vector<ParabolicPoint> ps, qs;
    std::size_t rank = 0;
    for (std::size_t j = 0; j < inst.sources.size(); ++j) {
        ps.push_back(to_parabolic(inst.sources[j]));
        qs.push_back(to_parabolic(inst.targets[j]));
        rank += inst.sources[j].rank() * static_cast<std::size_t>(prof.branches()[j].e);
        expect(is_graded_morphism(inst.maps[j], inst.sources[j], inst.targets[j]),
               "branch map " + std::to_string(j) + " is not a morphism of graded modules");
    }
    const ParabolicPoint par = pushforward_parabolic(prof, ps);
    const GradedModule gr = pushforward_graded(prof, inst.sources);
    res.weights.push_back(to_string(weights_of(par)));

    const std::vector<Lattice> shadow = graded_shadow(gr, inst.mutation, inst.split_seed);
    for (std::size_t j = 0; j < shadow.size(); ++j)
        expect(shadow[j] == par.chain()[j], "direct images differ at level " + std::to_string(j));
    expect(par.rank() == rank, "rank of the direct image is not the sum of n_j e_j");
    expect(weights_of(par) == pushed_weights(ps, prof), "direct image weights break the law a -> (a + l)/e");

    const Matrix pm = pushforward_matrix(prof, inst.maps);
    expect(pm == pushforward_matrix_graded(prof, inst.maps), "pushed matrices differ between the two sides");
    expect(is_morphism(pm, par, pushforward_parabolic(prof, qs)), "pushed map is not a parabolic morphism");
    expect(is_graded_morphism(pm, gr, pushforward_graded(prof, inst.targets)), "pushed map is not graded");
}

GradedModule assemble_graded(const Matrix& basis, const std::vector<GradedModule>& lines) {
    const GradedModule sum = direct_sum(lines);
    std::vector<Lattice> pieces;
    for (const auto& l : sum.pieces()) pieces.push_back(Lattice::from_basis(basis * l.basis()));
    return GradedModule(std::move(pieces));
}

void check_pull(const TrialInstance& inst, TrialResult& res) {
    const CoverProfile& prof = inst.profile;
    const GradedModule& m = inst.sources.at(0);
    const ParabolicPoint p = to_parabolic(m);
    const ParabolicPoint q = to_parabolic(inst.targets.at(0));
    const Matrix& a = inst.maps.at(0);
    expect(is_morphism(a, p, q), "instance map is not a parabolic morphism");
    Rng split_rng(inst.split_seed);
    const LineSplitting first = split_into_lines(p, split_rng, inst.field);
    const LineSplitting second = split_into_lines(p, split_rng, inst.field);
    const GradedSplitting gsplit = graded_split_into_lines(m);
    const int s = prof.target_order();

    for (const auto& b : prof.branches()) {
        const std::string at = " over branch " + b.label;
        const PulledPoint pa = pullback_parabolic(prof, p, b.label, first);
        const PulledPoint pb = pullback_parabolic(prof, p, b.label, second);
        PulledGraded pg = pullback_graded(prof, m, b.label, gsplit);
        if (inst.mutation == Mutation::WrongTwist) {
            const GradedModule& l0 = pg.lines.front();
            pg.lines.front() = GradedModule::line(l0.order(), l0.jump_grade(), base_of(l0[0]) - 1);
            pg.module = assemble_graded(pg.basis, pg.lines);
        }
        res.weights.push_back(b.label + ":" + to_string(weights_of(pa.point)));

        expect(to_parabolic(pg.module) == pa.point, "pullbacks differ" + at);
        expect(pa.point == pb.point, "pullback depends on the adapted basis" + at);
        expect(pa.point.rank() == p.rank(), "pullback changed the rank" + at);
        const ParabolicPoint lines = direct_sum(pa.lines);
        expect(is_morphism(pa.basis, lines, pa.point) && is_isomorphism(pa.basis, lines, pa.point),
               "change of basis is not a parabolic isomorphism" + at);

        WeightMultiset expected;
        for (const auto& [w, mult] : weights_of(p)) expected[Weight::fractional_part(w.value() * b.e)] += mult;
        expect(weights_of(pa.point) == expected, "pullback weights break the law a -> {a e}" + at);
        long twist_sum = 0;
        for (std::size_t i = 0; i < pa.twists.size(); ++i) {
            const long want = (static_cast<long>(first.depths[i]) * b.e) / s;
            expect(pa.twists[i] == want, "line twist is not floor(a e)" + at);
            twist_sum += want;
        }
        expect(pa.point[0].det_exponent() == static_cast<long>(b.e) * p[0].det_exponent() - twist_sum,
               "underlying lattice of the pullback has the wrong length" + at);

        const Matrix pulled_a = pullback_matrix(prof, a, b.label);
        expect(is_morphism(pulled_a, pa.point, pullback_parabolic(prof, q, b.label)),
               "pulled map is not a parabolic morphism" + at);
        expect(is_graded_morphism(pulled_a, pg.module, pullback_graded(prof, inst.targets[0], b.label)),
               "pulled map is not graded" + at);
    }
}

void check_corollaries(const TrialInstance& inst, TrialResult& res) {
    const CoverProfile& prof = inst.profile;
    const PairingInstance& tp = inst.target_pairing.value();
    LocalPairing pairing = tp.pairing;
    if (inst.mutation == Mutation::FlippedSymmetry)
        pairing.kind = pairing.kind == FormKind::Symmetric ? FormKind::Antisymmetric : FormKind::Symmetric;
    if (!check_pairing(pairing, tp.bundle)) throw Error(Errc::NotAPairing, "target form rejected before transport");
    const int s = prof.target_order();
    expect(s % tp.bundle.order() == 0, "target bundle order does not divide s");
    const ParabolicPoint bundle = tp.bundle.refined_to(s);
    const GradedModule m = from_parabolic(bundle);
    const LineSplitting psplit = split_into_lines(bundle);
    const GradedSplitting gsplit = graded_split_into_lines(m);
    const Matrix psi = gsplit.basis.transpose() * pairing.form * gsplit.basis;

    for (const auto& b : prof.branches()) {
        const std::string at = " over branch " + b.label;
        const TransportedPairing tr = pullback_pairing(prof, pairing, tp.bundle, b.label);
        res.weights.push_back("pull " + b.label + ":" + to_string(weights_of(tr.bundle)));
        expect(tr.pairing.kind == pairing.kind && has_kind(tr.pairing.form, pairing.kind), "pullback changed the kind" + at);
        expect(check_pairing(tr.pairing, tr.bundle), "pulled pairing is degenerate" + at);
        res.forms.emplace_back("pull " + b.label, io::to_json(tr.pairing.form, inst.field));

        // stack side: form on the target line basis, pulled, then twisted by the line bases
        const PulledPoint pp = pullback_parabolic(prof, bundle, b.label, psplit);
        const PulledGraded pg = pullback_graded(prof, m, b.label, gsplit);
        std::vector<int> par_bases, gr_bases;
        for (const auto& l : pp.lines) par_bases.push_back(base_of(l[0]));
        for (const auto& l : pg.lines) gr_bases.push_back(base_of(l[0]));
        const Matrix w = pp.basis * diag_t(par_bases);
        const Matrix par_form = w.transpose() * tr.pairing.form * w;
        const Matrix stack_form = diag_t(gr_bases) * pullback_matrix(prof, psi, b.label) * diag_t(gr_bases);
        expect(par_form == stack_form, "pulled forms differ between the two sides" + at);
        expect(check_pairing(LocalPairing{pullback_matrix(prof, psi, b.label), pairing.kind, tr.pairing.value_line},
                             to_parabolic(direct_sum(pg.lines))),
               "stack-side pulled pairing is degenerate" + at);
    }

    std::vector<LocalPairing> pairings;
    std::vector<ParabolicPoint> bundles;
    std::vector<GradedModule> graded;
    std::vector<Matrix> forms;
    for (const auto& bp : inst.branch_pairings) {
        pairings.push_back(bp.pairing);
        bundles.push_back(bp.bundle);
        graded.push_back(from_parabolic(bp.bundle));
        forms.push_back(bp.pairing.form);
    }
    const TransportedPairing pushed = pushforward_pairing(prof, pairings, bundles, inst.value_line);
    res.weights.push_back("push:" + to_string(weights_of(pushed.bundle)));
    res.forms.emplace_back("push", io::to_json(pushed.pairing.form, inst.field));
    expect(has_kind(pushed.pairing.form, inst.kind), "pushforward changed the kind");
    expect(check_pairing(pushed.pairing, pushed.bundle), "pushed pairing is degenerate");
    const Matrix trace_form = pushforward_form_trace(prof, forms);
    expect(trace_form == pushed.pairing.form, "pushed forms differ between the two sides");
    const ParabolicPoint shadow = to_parabolic(pushforward_graded(prof, graded));
    expect(shadow == pushed.bundle, "pushed bundles differ between the two sides");
    expect(check_pairing(LocalPairing{trace_form, inst.kind, inst.value_line}, shadow),
           "stack-side pushed pairing is degenerate");
}

bool mutation_visible(const TrialInstance& inst) {
    if (inst.mutation != Mutation::TransposedGrading) return true;
    const GradedModule gr = pushforward_graded(inst.profile, inst.sources);
    return graded_shadow(gr, inst.mutation, inst.split_seed) != to_parabolic(gr).chain();
}

TrialInstance draw(Suite suite, const TrialConfig& cfg, Rng& rng, FormKind kind) {
    TrialInstance inst;
    inst.suite = suite;
    inst.kind = kind;
    inst.field = cfg.field;
    inst.mutation = mutation_suite(cfg.mutation) == suite ? cfg.mutation : Mutation::None;
    const Field f = cfg.field;
    const int max_order = suite == Suite::Corollaries ? std::min(cfg.max_order, 6) : cfg.max_order;
    inst.profile = random_profile(f, rng, max_order, cfg.max_branches);
    inst.split_seed = rng.next();
    auto rank = [&] { return static_cast<std::size_t>(rng.uniform(1, cfg.max_rank)); };
    switch (suite) {
        case Suite::Direct:
            for (const auto& b : inst.profile.branches()) {
                const std::size_t n = rank();
                const ParabolicPoint p = gen_parabolic_point(rng, n, b.r, f);
                const ParabolicPoint q = gen_parabolic_point(rng, n, b.r, f);
                inst.sources.push_back(from_parabolic(p));
                inst.targets.push_back(from_parabolic(q));
                inst.maps.push_back(minimal_morphism(random_matrix(n, n, f, rng, 0, 1), p, q));
            }
            break;
        case Suite::Pull: {
            const std::size_t n = rank();
            const int s = inst.profile.target_order();
            const ParabolicPoint p = gen_parabolic_point(rng, n, s, f);
            const ParabolicPoint q = gen_parabolic_point(rng, n, s, f);
            inst.sources.push_back(from_parabolic(p));
            inst.targets.push_back(from_parabolic(q));
            inst.maps.push_back(minimal_morphism(random_matrix(n, n, f, rng, 0, 1), p, q));
            break;
        }
        case Suite::Corollaries: {
            const int s = inst.profile.target_order();
            const std::size_t blocks = static_cast<std::size_t>(rng.uniform(1, std::max(1, cfg.max_rank / 2)));
            inst.value_line = ParabolicPoint::line(s, static_cast<int>(rng.uniform(0, s - 1)),
                                                   static_cast<int>(rng.uniform(-1, 1)));
            inst.target_pairing = random_pairing(inst.value_line, blocks, inst.kind, f, rng);
            for (const auto& b : inst.profile.branches())
                inst.branch_pairings.push_back(
                    random_pairing(pullback_parabolic(inst.profile, inst.value_line, b.label), 1, inst.kind, f, rng));
            break;
        }
    }
    return inst;
}

json pairing_to_json(const PairingInstance& p, Field f) {
    return {{"bundle", io::to_json(p.bundle, f)},
            {"form", io::to_json(p.pairing.form, f)},
            {"kind", kind_name(p.pairing.kind)},
            {"value_line", io::to_json(p.pairing.value_line, f)}};
}

PairingInstance pairing_from_json(const json& j, Field f, const std::string& path) {
    PairingInstance p;
    p.bundle = io::point_from_json(j.at("bundle"), f, path + ".bundle");
    p.pairing.form = io::matrix_from_json(j.at("form"), f, path + ".form");
    p.pairing.kind = io::kind_from_json(j.at("kind"), path + ".kind");
    p.pairing.value_line = io::point_from_json(j.at("value_line"), f, path + ".value_line");
    return p;
}

}  // namespace

const char* suite_name(Suite s) {
    switch (s) {
        case Suite::Direct: return "direct";
        case Suite::Pull: return "pull";
        case Suite::Corollaries: return "corollaries";
    }
    return "direct";
}

Suite suite_from_name(const std::string& s) {
    if (s == "direct") return Suite::Direct;
    if (s == "pull") return Suite::Pull;
    if (s == "corollaries") return Suite::Corollaries;
    throw Error(Errc::ParseError, "unknown suite '" + s + "'");
}

const char* mutation_name(Mutation m) {
    switch (m) {
        case Mutation::None: return "none";
        case Mutation::BrokenInclusion: return "broken-inclusion";
        case Mutation::WrongTwist: return "wrong-twist";
        case Mutation::TransposedGrading: return "transposed-grading";
        case Mutation::FlippedSymmetry: return "flipped-symmetry";
    }
    return "none";
}

Mutation mutation_from_name(const std::string& s) {
    for (Mutation m : {Mutation::None, Mutation::BrokenInclusion, Mutation::WrongTwist, Mutation::TransposedGrading,
                       Mutation::FlippedSymmetry})
        if (s == mutation_name(m)) return m;
    throw Error(Errc::ParseError, "unknown mutation '" + s + "'");
}

Suite mutation_suite(Mutation m) {
    switch (m) {
        case Mutation::WrongTwist: return Suite::Pull;
        case Mutation::FlippedSymmetry: return Suite::Corollaries;
        default: return Suite::Direct;
    }
}

int TrialReport::passed() const {
    int n = 0;
    for (const auto& r : results) n += r.pass ? 1 : 0;
    return n;
}

int TrialReport::failed() const { return static_cast<int>(results.size()) - passed(); }

ParabolicPoint gen_parabolic_point(Rng& rng, std::size_t n, int r, Field f) { return random_point(n, r, f, rng); }

TrialInstance generate_instance(Suite suite, const TrialConfig& cfg, int index) {
    Rng rng(trial_seed(cfg.seed, suite, index));
    TrialInstance inst;
    const FormKind kind = index % 2 == 0 ? FormKind::Antisymmetric : FormKind::Symmetric;
    for (int attempt = 0; attempt < 64; ++attempt) {
        inst = draw(suite, cfg, rng, kind);
        if (inst.mutation == Mutation::None || mutation_visible(inst)) break;
    }
    return inst;
}

TrialResult run_instance(const TrialInstance& inst) {
    TrialResult res;
    const auto start = std::chrono::steady_clock::now();
    try {
        switch (inst.suite) {
            case Suite::Direct: check_direct(inst, res); break;
            case Suite::Pull: check_pull(inst, res); break;
            case Suite::Corollaries: check_corollaries(inst, res); break;
        }
    } catch (const Failure& f) {
        res.pass = false;
        res.detail = f.what();
    } catch (const Error& e) {
        res.pass = false;
        res.detail = e.what();
    }
    res.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return res;
}

TrialReport verify(Suite suite, const TrialConfig& cfg) {
    if (cfg.trials < 0 || cfg.max_rank < 1 || cfg.max_order < 1 || cfg.max_branches < 1)
        throw Error(Errc::ValidationError, "trial bounds must be at least 1");
    TrialReport rep;
    rep.suite = suite;
    rep.config = cfg;
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < cfg.trials; ++i) {
        const TrialInstance inst = generate_instance(suite, cfg, i);
        for (const auto& b : inst.profile.branches()) {
            rep.coverage.ramified |= b.e > 1;
            rep.coverage.orbifold |= b.r > 1;
            rep.coverage.non_unit_u |= !b.u.is_one();
        }
        rep.coverage.multi_branch |= inst.profile.branches().size() > 1;
        TrialResult res = run_instance(inst);
        if (!res.pass && !rep.counterexample) {
            json ce = to_json(inst);
            ce["trial"] = i;
            ce["verdict"] = "fail";
            ce["detail"] = res.detail;
            rep.counterexample = ce;
        }
        rep.results.push_back(std::move(res));
    }
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

TrialReport verify_direct_image(const TrialConfig& cfg) { return verify(Suite::Direct, cfg); }
TrialReport verify_pullback(const TrialConfig& cfg) { return verify(Suite::Pull, cfg); }
TrialReport verify_corollaries(const TrialConfig& cfg) { return verify(Suite::Corollaries, cfg); }

json to_json(const TrialInstance& inst) {
    const Field f = inst.field;
    json j{{"version", io::kFormatVersion},
           {"kind", "parstack-trial"},
           {"suite", suite_name(inst.suite)},
           {"mutation", mutation_name(inst.mutation)},
           {"field", f.name()},
           {"split_seed", std::to_string(inst.split_seed)},
           {"profile", io::to_json(inst.profile, f)}};
    json src = json::array(), tgt = json::array(), maps = json::array();
    for (const auto& m : inst.sources) src.push_back(io::to_json(m, f));
    for (const auto& m : inst.targets) tgt.push_back(io::to_json(m, f));
    for (const auto& m : inst.maps) maps.push_back(io::to_json(m, f));
    j["sources"] = src;
    j["targets"] = tgt;
    j["maps"] = maps;
    if (inst.suite == Suite::Corollaries) {
        json p{{"kind", kind_name(inst.kind)}, {"value_line", io::to_json(inst.value_line, f)}};
        if (inst.target_pairing) p["target"] = pairing_to_json(*inst.target_pairing, f);
        json bs = json::array();
        for (const auto& b : inst.branch_pairings) bs.push_back(pairing_to_json(b, f));
        p["branches"] = bs;
        j["pairing"] = p;
    }
    return j;
}

TrialInstance instance_from_json(const json& j) {
    try {
        TrialInstance inst;
        if (j.at("kind").get<std::string>() != "parstack-trial")
            throw Error(Errc::ParseError, "$.kind: not a trial instance");
        inst.suite = suite_from_name(j.at("suite").get<std::string>());
        inst.mutation = mutation_from_name(j.at("mutation").get<std::string>());
        inst.field = Field::parse(j.at("field").get<std::string>());
        inst.split_seed = std::stoull(j.at("split_seed").get<std::string>());
        const Field f = inst.field;
        inst.profile = io::profile_from_json(j.at("profile"), f, "$.profile");
        for (std::size_t i = 0; i < j.at("sources").size(); ++i)
            inst.sources.push_back(io::graded_from_json(j["sources"][i], f, "$.sources[" + std::to_string(i) + "]"));
        for (std::size_t i = 0; i < j.at("targets").size(); ++i)
            inst.targets.push_back(io::graded_from_json(j["targets"][i], f, "$.targets[" + std::to_string(i) + "]"));
        for (std::size_t i = 0; i < j.at("maps").size(); ++i)
            inst.maps.push_back(io::matrix_from_json(j["maps"][i], f, "$.maps[" + std::to_string(i) + "]"));
        if (j.contains("pairing")) {
            const json& p = j["pairing"];
            inst.kind = io::kind_from_json(p.at("kind"), "$.pairing.kind");
            inst.value_line = io::point_from_json(p.at("value_line"), f, "$.pairing.value_line");
            if (p.contains("target")) inst.target_pairing = pairing_from_json(p["target"], f, "$.pairing.target");
            for (std::size_t i = 0; i < p.at("branches").size(); ++i)
                inst.branch_pairings.push_back(
                    pairing_from_json(p["branches"][i], f, "$.pairing.branches[" + std::to_string(i) + "]"));
        }
        return inst;
    } catch (const json::exception& e) {
        throw Error(Errc::ParseError, std::string("trial instance: ") + e.what());
    } catch (const std::logic_error& e) {
        if (dynamic_cast<const Error*>(&e) == nullptr)
            throw Error(Errc::ParseError, std::string("trial instance: ") + e.what());
        throw;
    }
}

json to_json(const TrialConfig& cfg) {
    return {{"seed", cfg.seed},           {"trials", cfg.trials},         {"max_rank", cfg.max_rank},
            {"max_order", cfg.max_order}, {"max_branches", cfg.max_branches}, {"field", cfg.field.name()},
            {"mutation", mutation_name(cfg.mutation)}};
}

std::string config_hash(const TrialConfig& cfg) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : to_json(cfg).dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json to_json(const TrialReport& r) {
    json trials = json::array();
    for (std::size_t i = 0; i < r.results.size(); ++i) {
        const TrialResult& t = r.results[i];
        json row{{"index", i}, {"verdict", t.pass ? "pass" : "fail"}, {"weights", t.weights},
                 {"elapsed_ms", static_cast<long>(t.elapsed_ms + 0.5)}};
        if (!t.detail.empty()) row["detail"] = t.detail;
        if (!t.forms.empty()) {
            json forms = json::object();
            for (const auto& [route, form] : t.forms) forms[route] = form;
            row["forms"] = forms;
        }
        trials.push_back(row);
    }
    return {{"tool", "parstack"},
            {"version", kToolVersion},
            {"suite", suite_name(r.suite)},
            {"seed", r.config.seed},
            {"config_hash", config_hash(r.config)},
            {"config", to_json(r.config)},
            {"summary", {{"trials", r.results.size()}, {"passed", r.passed()}, {"failed", r.failed()}}},
            {"coverage",
             {{"ramified", r.coverage.ramified},
              {"orbifold", r.coverage.orbifold},
              {"multi_branch", r.coverage.multi_branch},
              {"non_unit_u", r.coverage.non_unit_u}}},
            {"trials", trials},
            {"counterexample", r.counterexample ? *r.counterexample : json(nullptr)},
            {"elapsed_ms", static_cast<long>(r.elapsed_ms + 0.5)}};
}

json strip_timing(json j) {
    if (j.is_object()) {
        j.erase("elapsed_ms");
        for (auto& [k, v] : j.items()) v = strip_timing(v);
    } else if (j.is_array()) {
        for (auto& v : j) v = strip_timing(v);
    }
    return j;
}

}  // namespace parstack
