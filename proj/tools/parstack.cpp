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


// parstack command line: scenario conversion, the two functors, degree
// checks and the randomized verifier.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "parstack/errors.hpp"
#include "parstack/harness.hpp"

using namespace parstack;
using io::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct Options {
    std::string input;
    std::string out;
    std::string field;
    std::string suite = "all";
    std::string replay;
    std::string mutation = "none";
    std::uint64_t seed = 0;
    int trials = 200;
    int max_rank = 3;
    int max_order = 12;
    int max_branches = 3;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ParseError, path + ": cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::ParseError, path + ": cannot write");
    out << text;
}

std::string render(const json& j) { return j.dump(2) + "\n"; }

io::Scenario load(const Options& o) {
    json j = io::parse_text(read_file(o.input), o.input);
    if (!o.field.empty() && j.is_object()) j["field"] = Field::parse(o.field).name();
    return io::scenario_from_json(j);
}

void emit(const Options& o, const json& j) {
    if (o.out.empty())
        std::cout << render(j);
    else
        write_text(o.out, render(j));
}

ParabolicPoint chain_at(const io::Bundle& b, io::Side side, const std::string& label) {
    return side == io::Side::Parabolic ? b.chains.at(label) : to_parabolic(b.graded.at(label));
}

std::vector<std::string> labels(const io::Bundle& b, io::Side side) {
    std::vector<std::string> out;
    if (side == io::Side::Parabolic)
        for (const auto& [k, v] : b.chains) out.push_back(k);
    else
        for (const auto& [k, v] : b.graded) out.push_back(k);
    return out;
}

void print_weights(const std::string& label, const ParabolicPoint& p) {
    std::cout << "point " << label << "  rank " << p.rank() << "  order " << p.order() << "\n";
    std::cout << "  weight  multiplicity\n";
    for (const auto& [w, m] : weights_of(p)) {
        std::string ws = w.to_string();
        ws.resize(std::max<std::size_t>(ws.size(), 6), ' ');
        std::cout << "  " << ws << "  " << m << "\n";
    }
}

std::string fraction(const mpq_class& q) { return q.get_den() == 1 ? q.get_num().get_str() : q.get_str(); }

ParabolicBundle to_bundle(const io::Bundle& b, io::Side side) {
    ParabolicBundle out;
    out.rank = b.rank;
    out.underlying_degree = b.degree.value_or(0);
    for (const auto& label : labels(b, side)) out.points.emplace(label, chain_at(b, side, label));
    out.validate();
    return out;
}

CoverScenario cover_of(const io::Scenario& s) {
    CoverScenario c;
    c.degree = s.cover_degree.value_or(1);
    c.profiles = s.cover;
    return c;
}

ParabolicPoint trivial_point(std::size_t n, int r) { return ParabolicPoint::trivial(Lattice::standard(n)).refined_to(r); }

ParabolicPoint value_line_at(const io::PairingBlock& pb, const std::string& y) {
    auto it = pb.value_line.find(y);
    if (it == pb.value_line.end()) throw Error(Errc::ValueLineMismatch, "pairing.value_line has no entry for " + y);
    return it->second;
}

int cmd_convert(const Options& o) {
    io::Scenario s = load(o);
    const io::Side from = s.side;
    const io::Side to = from == io::Side::Parabolic ? io::Side::Graded : io::Side::Parabolic;
    for (auto* b : {s.target ? &*s.target : nullptr, s.source ? &*s.source : nullptr}) {
        if (b == nullptr) continue;
        if (from == io::Side::Parabolic) {
            for (const auto& [k, p] : b->chains) b->graded.emplace(k, from_parabolic(p));
            b->chains.clear();
        } else {
            for (const auto& [k, m] : b->graded) b->chains.emplace(k, to_parabolic(m));
            b->graded.clear();
        }
    }
    s.side = to;
    emit(o, io::to_json(s));
    return kExitPass;
}

int cmd_push(const Options& o) {
    const io::Scenario s = load(o);
    if (!s.source) throw Error(Errc::ValidationError, "$.source: push needs a source bundle");
    if (s.cover.empty()) throw Error(Errc::ValidationError, "$.cover: push needs a cover");
    const io::Bundle& src = *s.source;
    io::Bundle tgt;
    io::PairingBlock pushed_pairing;
    for (const auto& [y, prof] : s.cover) {
        std::vector<ParabolicPoint> chains;
        std::vector<GradedModule> graded;
        for (const auto& b : prof.branches()) {
            const std::string label = y + "/" + b.label;
            const bool given = s.side == io::Side::Parabolic ? src.chains.count(label) > 0 : src.graded.count(label) > 0;
            const ParabolicPoint p = given ? chain_at(src, s.side, label) : trivial_point(src.rank, b.r);
            chains.push_back(p);
            graded.push_back(s.side == io::Side::Graded && given ? src.graded.at(label) : from_parabolic(p));
        }
        if (s.side == io::Side::Parabolic) {
            tgt.chains.emplace(y, pushforward_parabolic(prof, chains));
        } else {
            tgt.graded.emplace(y, pushforward_graded(prof, graded));
        }
        const ParabolicPoint result = chain_at(tgt, s.side, y);
        tgt.rank = result.rank();
        print_weights(y, result);

        if (s.pairing && !s.pairing->source_forms.empty()) {
            const ParabolicPoint line = value_line_at(*s.pairing, y);
            const ParabolicPoint fine = line.refined_to(std::lcm(line.order(), prof.target_order()));
            std::vector<LocalPairing> pairings;
            for (std::size_t j = 0; j < prof.branches().size(); ++j) {
                const std::string label = y + "/" + prof.branches()[j].label;
                auto it = s.pairing->source_forms.find(label);
                if (it == s.pairing->source_forms.end())
                    throw Error(Errc::ValidationError, "$.pairing.source_forms: no form at " + label);
                pairings.push_back(
                    {it->second, s.pairing->kind, pullback_parabolic(prof, fine, prof.branches()[j].label)});
            }
            const TransportedPairing tr = pushforward_pairing(prof, pairings, chains, line);
            if (s.pairing->form && !(*s.pairing->form == tr.pairing.form))
                throw Error(Errc::ValidationError, "$.pairing.form: pushed forms differ between target points");
            pushed_pairing.form = tr.pairing.form;
            pushed_pairing.value_line.emplace(y, line);
            pushed_pairing.kind = s.pairing->kind;
            std::cout << "  " << kind_name(tr.pairing.kind) << " pairing: nondegenerate\n";
        }
    }
    io::Scenario out;
    out.field = s.field;
    out.side = s.side;
    out.cover_degree = s.cover_degree;
    out.cover = s.cover;
    out.target = tgt;
    if (pushed_pairing.form) out.pairing = pushed_pairing;
    if (!o.out.empty()) write_text(o.out, render(io::to_json(out)));
    return kExitPass;
}

int cmd_pull(const Options& o) {
    const io::Scenario s = load(o);
    if (!s.target) throw Error(Errc::ValidationError, "$.target: pull needs a target bundle");
    const io::Bundle& tgt = *s.target;
    io::Bundle src;
    src.rank = tgt.rank;
    io::PairingBlock pulled_pairing;
    if (s.pairing) pulled_pairing.kind = s.pairing->kind;
    for (const auto& [y, prof] : s.cover) {
        const bool given = s.side == io::Side::Parabolic ? tgt.chains.count(y) > 0 : tgt.graded.count(y) > 0;
        const ParabolicPoint p = given ? chain_at(tgt, s.side, y) : trivial_point(tgt.rank, prof.target_order());
        for (const auto& b : prof.branches()) {
            const std::string label = y + "/" + b.label;
            if (s.side == io::Side::Parabolic) {
                src.chains.emplace(label, pullback_parabolic(prof, p, b.label));
            } else {
                const GradedModule m = given ? tgt.graded.at(y) : from_parabolic(p);
                src.graded.emplace(label, pullback_graded(prof, m, b.label));
            }
            print_weights(label, chain_at(src, s.side, label));
            if (s.pairing && s.pairing->form) {
                const LocalPairing lp{*s.pairing->form, s.pairing->kind, value_line_at(*s.pairing, y)};
                const TransportedPairing tr = pullback_pairing(prof, lp, p, b.label);
                pulled_pairing.source_forms.emplace(label, tr.pairing.form);
                pulled_pairing.value_line.emplace(label, tr.pairing.value_line);
                std::cout << "  " << kind_name(tr.pairing.kind) << " pairing: nondegenerate\n";
            }
        }
    }
    if (tgt.degree && s.cover_degree) {
        const ParabolicBundle pulled = pullback_bundle(cover_of(s), to_bundle(tgt, s.side));
        src.degree = pulled.underlying_degree;
        std::cout << "parabolic degree " << fraction(parabolic_degree(pulled)) << "\n";
    }
    io::Scenario out;
    out.field = s.field;
    out.side = s.side;
    out.cover_degree = s.cover_degree;
    out.cover = s.cover;
    out.source = src;
    if (!pulled_pairing.source_forms.empty()) out.pairing = pulled_pairing;
    if (!o.out.empty()) write_text(o.out, render(io::to_json(out)));
    return kExitPass;
}

int cmd_degree(const Options& o) {
    const io::Scenario s = load(o);
    if (!s.target || !s.target->degree) throw Error(Errc::ValidationError, "$.target.degree: degree needs a global degree");
    const ParabolicBundle f = to_bundle(*s.target, s.side);
    const mpq_class base = parabolic_degree(f);
    std::cout << "target    rank " << f.rank << "  degree " << f.underlying_degree << "  parabolic degree "
              << fraction(base) << "\n";
    if (!s.cover_degree) return kExitPass;
    const ParabolicBundle pulled = pullback_bundle(cover_of(s), f);
    const mpq_class up = parabolic_degree(pulled);
    const mpq_class want = base * *s.cover_degree;
    std::cout << "pullback  rank " << pulled.rank << "  degree " << pulled.underlying_degree << "  parabolic degree "
              << fraction(up) << "\n";
    std::cout << "deg f * parabolic degree = " << *s.cover_degree << " * " << fraction(base) << " = " << fraction(want)
              << (up == want ? "  ok\n" : "  MISMATCH\n");
    return up == want ? kExitPass : kExitFail;
}

TrialConfig config_of(const Options& o) {
    TrialConfig c;
    c.seed = o.seed;
    c.trials = o.trials;
    c.max_rank = o.max_rank;
    c.max_order = o.max_order;
    c.max_branches = o.max_branches;
    if (!o.field.empty()) c.field = Field::parse(o.field);
    c.mutation = mutation_from_name(o.mutation);
    return c;
}

std::string counterexample_path(const std::string& report) {
    const auto dot = report.rfind(".json");
    return (dot == std::string::npos ? report : report.substr(0, dot)) + ".counterexample.json";
}

int cmd_replay(const std::string& path) {
    json j = io::parse_text(read_file(path), path);
    if (j.is_object() && j.value("tool", "") == "parstack") {
        // a report: take the first captured counterexample
        json found;
        if (j.contains("counterexample") && !j["counterexample"].is_null()) found = j["counterexample"];
        if (j.contains("suites"))
            for (const auto& r : j["suites"])
                if (found.is_null() && !r["counterexample"].is_null()) found = r["counterexample"];
        if (found.is_null()) throw Error(Errc::ValidationError, path + ": report has no counterexample");
        j = found;
    }
    const TrialInstance inst = instance_from_json(j);
    const TrialResult r = run_instance(inst);
    const std::string verdict = r.pass ? "pass" : "fail";
    const std::string recorded = j.value("verdict", "");
    std::cout << "suite " << suite_name(inst.suite) << "  mutation " << mutation_name(inst.mutation) << "\n";
    std::cout << "verdict " << verdict;
    if (!r.detail.empty()) std::cout << "  (" << r.detail << ")";
    std::cout << "\n";
    if (!recorded.empty()) {
        std::cout << "recorded " << recorded << (recorded == verdict ? "  reproduced\n" : "  NOT REPRODUCED\n");
        if (recorded != verdict) return kExitFail;
    }
    return r.pass ? kExitPass : kExitFail;
}

int cmd_verify(const Options& o) {
    if (!o.replay.empty()) return cmd_replay(o.replay);
    const TrialConfig cfg = config_of(o);
    std::vector<Suite> suites;
    if (o.suite == "all")
        suites = {Suite::Direct, Suite::Pull, Suite::Corollaries};
    else
        suites = {suite_from_name(o.suite)};
    json reports = json::array();
    std::optional<json> counterexample;
    bool ok = true;
    for (Suite s : suites) {
        const TrialReport rep = verify(s, cfg);
        std::cout << suite_name(s) << ": " << rep.passed() << "/" << rep.results.size() << " passed\n";
        ok = ok && rep.failed() == 0;
        if (rep.counterexample && !counterexample) counterexample = rep.counterexample;
        reports.push_back(to_json(rep));
    }
    json doc = suites.size() == 1 ? reports[0]
                                  : json{{"tool", "parstack"},
                                         {"version", kToolVersion},
                                         {"seed", cfg.seed},
                                         {"config_hash", config_hash(cfg)},
                                         {"config", to_json(cfg)},
                                         {"suites", reports}};
    const std::string out = o.out.empty() ? "parstack-report.json" : o.out;
    write_text(out, render(doc));
    std::cout << "report written to " << out << "\n";
    if (counterexample) {
        const std::string ce = counterexample_path(out);
        write_text(ce, render(*counterexample));
        std::cout << "counterexample written to " << ce << "\n";
    }
    return ok ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parabolic bundles and root stacks: conversions, functors and verification"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);
    Options o;
    auto field_flag = [&](CLI::App* c) {
        c->add_option("--field", o.field, "rational or prime:p");
    };
    auto scenario_cmd = [&](const char* name, const char* help) {
        CLI::App* c = app.add_subcommand(name, help);
        c->add_option("scenario", o.input, "scenario file")->required();
        c->add_option("--out", o.out, "output scenario file");
        field_flag(c);
        return c;
    };
    CLI::App* convert = scenario_cmd("convert", "switch a scenario between parabolic and graded form");
    CLI::App* push = scenario_cmd("push", "direct image along the cover");
    CLI::App* pull = scenario_cmd("pull", "pullback along the cover");
    CLI::App* degree = scenario_cmd("degree", "parabolic degrees before and after pullback");
    CLI::App* verify_cmd = app.add_subcommand("verify", "randomized differential verification");
    verify_cmd->add_option("--trials", o.trials, "trials per suite")->check(CLI::NonNegativeNumber);
    verify_cmd->add_option("--seed", o.seed, "64-bit seed");
    verify_cmd->add_option("--suite", o.suite, "direct, pull, corollaries or all")
        ->check(CLI::IsMember({"direct", "pull", "corollaries", "all"}));
    verify_cmd->add_option("--out", o.out, "report file (default parstack-report.json)");
    verify_cmd->add_option("--replay", o.replay, "replay a counterexample or report");
    verify_cmd->add_option("--max-rank", o.max_rank)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--max-order", o.max_order)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--max-branches", o.max_branches)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--mutation", o.mutation, "inject a corruption")
        ->check(CLI::IsMember({"none", "broken-inclusion", "wrong-twist", "transposed-grading", "flipped-symmetry"}));
    field_flag(verify_cmd);
    CLI::App* replay = app.add_subcommand("replay", "rerun a captured counterexample");
    replay->add_option("file", o.replay, "counterexample or report file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitInput;
    }
    try {
        if (*convert) return cmd_convert(o);
        if (*push) return cmd_push(o);
        if (*pull) return cmd_pull(o);
        if (*degree) return cmd_degree(o);
        if (*verify_cmd) return cmd_verify(o);
        if (*replay) return cmd_replay(o.replay);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
