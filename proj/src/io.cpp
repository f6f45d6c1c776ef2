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


#include "parstack/io.hpp"

#include <numeric>

#include "parstack/errors.hpp"

namespace parstack::io {

namespace {

/// An error that already carries its JSON path.
class Located : public Error {
   public:
    using Error::Error;
};

template <class F>
auto guard(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Located&) {
        throw;
    } catch (const json::exception& e) {
        throw Located(Errc::ParseError, path + ": " + e.what());
    } catch (const Error& e) {
        if (e.code() == Errc::ParseError || e.code() == Errc::InadmissibleProfile) {
            const std::string what = e.what();
            throw Located(e.code(), path + ": " + what.substr(errc_name(e.code()).size() + 2));
        }
        throw Located(Errc::ValidationError, path + ": " + e.what());
    }
}

const json& member(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw Located(Errc::ParseError, path + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw Located(Errc::ParseError, path + ": missing \"" + key + "\"");
    return *it;
}

const json& array_at(const json& j, const std::string& path) {
    if (!j.is_array()) throw Located(Errc::ParseError, path + ": expected an array");
    return j;
}

long integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw Located(Errc::ParseError, path + ": expected an integer");
    return j.get<long>();
}

std::string idx(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

json bundle_to_json(const Bundle& b, Side side, Field f) {
    json j{{"rank", b.rank}};
    if (b.degree) j["degree"] = *b.degree;
    json pts = json::object();
    if (side == Side::Parabolic)
        for (const auto& [k, p] : b.chains) pts[k] = to_json(p, f);
    else
        for (const auto& [k, m] : b.graded) pts[k] = to_json(m, f);
    j["points"] = pts;
    return j;
}

Bundle bundle_from_json(const json& j, Field f, Side side, const std::string& path) {
    Bundle b;
    b.rank = static_cast<std::size_t>(integer(member(j, "rank", path), path + ".rank"));
    if (j.contains("degree")) b.degree = integer(j["degree"], path + ".degree");
    const json& pts = member(j, "points", path);
    if (!pts.is_object()) throw Located(Errc::ParseError, path + ".points: expected an object");
    for (const auto& [label, pj] : pts.items()) {
        const std::string where = path + ".points." + label;
        std::size_t rank = 0;
        if (side == Side::Parabolic) {
            const ParabolicPoint p = point_from_json(pj, f, where);
            rank = p.rank();
            b.chains.emplace(label, p);
        } else {
            const GradedModule m = graded_from_json(pj, f, where);
            rank = m.rank();
            b.graded.emplace(label, m);
        }
        if (rank != b.rank)
            throw Located(Errc::ValidationError, where + ": rank " + std::to_string(rank) + " but the bundle has rank " +
                                                     std::to_string(b.rank));
    }
    return b;
}

}  // namespace

const char* side_name(Side s) { return s == Side::Parabolic ? "parabolic" : "graded"; }

json to_json(const Scalar& s, Field f) { return (f.is_rational() ? s : s.in(f)).to_string(); }

json to_json(const LocalElement& x, Field f) {
    json c = json::array();
    for (const auto& s : x.coefficients()) c.push_back(to_json(s, f));
    return {{"t_order", x.t_order()}, {"coeffs", c}};
}

json to_json(const Matrix& m, Field f) {
    json cols = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
        json col = json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) col.push_back(to_json(m(i, j), f));
        cols.push_back(col);
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"columns", cols}};
}

json to_json(const Lattice& l, Field f) { return to_json(l.basis(), f); }

json to_json(const ParabolicPoint& p, Field f) {
    json chain = json::array();
    for (const auto& l : p.chain()) chain.push_back(to_json(l, f));
    return {{"order", p.order()}, {"chain", chain}};
}

json to_json(const GradedModule& m, Field f) {
    json pieces = json::array();
    for (const auto& l : m.pieces()) pieces.push_back(to_json(l, f));
    return {{"order", m.order()}, {"pieces", pieces}};
}

json to_json(const CoverProfile& p, Field f) {
    json bs = json::array();
    for (const auto& b : p.branches())
        bs.push_back({{"label", b.label}, {"e", b.e}, {"r", b.r}, {"u", to_json(b.u, f)}});
    return {{"s", p.target_order()}, {"marked", p.is_marked_target()}, {"branches", bs}};
}

json to_json(const WeightMultiset& w) {
    json out = json::array();
    for (const auto& [k, m] : w) out.push_back(json::array({k.to_string(), m}));
    return out;
}

Scalar scalar_from_json(const json& j, Field f, const std::string& path) {
    return guard(path, [&] {
        if (j.is_number_integer()) return Scalar(f, j.get<long>());
        if (!j.is_string()) throw Error(Errc::ParseError, "expected an exact number as a string");
        return Scalar::parse(j.get<std::string>(), f);
    });
}

LocalElement element_from_json(const json& j, Field f, const std::string& path) {
    if (j.is_number_integer() || j.is_string()) return LocalElement(scalar_from_json(j, f, path));
    const long order = integer(member(j, "t_order", path), path + ".t_order");
    const json& cs = array_at(member(j, "coeffs", path), path + ".coeffs");
    std::vector<Scalar> c;
    for (std::size_t i = 0; i < cs.size(); ++i) c.push_back(scalar_from_json(cs[i], f, idx(path + ".coeffs", i)));
    return LocalElement(static_cast<int>(order), std::move(c));
}

Matrix matrix_from_json(const json& j, Field f, const std::string& path) {
    const long rows = integer(member(j, "rows", path), path + ".rows");
    const long ncols = integer(member(j, "cols", path), path + ".cols");
    const json& cs = array_at(member(j, "columns", path), path + ".columns");
    if (rows < 0 || ncols < 0 || cs.size() != static_cast<std::size_t>(ncols))
        throw Located(Errc::ParseError, path + ": expected " + std::to_string(ncols) + " columns");
    Matrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(ncols));
    for (std::size_t c = 0; c < cs.size(); ++c) {
        const std::string cp = idx(path + ".columns", c);
        const json& col = array_at(cs[c], cp);
        if (col.size() != static_cast<std::size_t>(rows))
            throw Located(Errc::ParseError, cp + ": expected " + std::to_string(rows) + " entries");
        for (std::size_t r = 0; r < col.size(); ++r) m(r, c) = element_from_json(col[r], f, idx(cp, r));
    }
    return m;
}

Lattice lattice_from_json(const json& j, Field f, const std::string& path) {
    const Matrix m = matrix_from_json(j, f, path);
    return guard(path, [&] {
        if (!m.is_square()) throw Error(Errc::ShapeMismatch, "a lattice basis must be square");
        return Lattice::from_basis(m);
    });
}

Weight weight_from_json(const json& j, const std::string& path) {
    return guard(path, [&] {
        const Scalar q = j.is_string() ? Scalar::parse(j.get<std::string>(), Field::rational())
                                       : Scalar(Field::rational(), j.get<long>());
        const mpq_class v(q.to_string());
        if (v < 0 || v >= 1) throw Error(Errc::InadmissibleWeight, q.to_string() + " is not in [0,1)");
        return Weight(v.get_num().get_si(), v.get_den().get_si());
    });
}

ParabolicPoint point_from_json(const json& j, Field f, const std::string& path) {
    if (j.is_object() && j.contains("weights")) {
        const json& ws = array_at(j["weights"], path + ".weights");
        std::vector<std::pair<Weight, long>> parts;
        long order = 1;
        for (std::size_t i = 0; i < ws.size(); ++i) {
            const std::string wp = idx(path + ".weights", i);
            const json& pair = array_at(ws[i], wp);
            if (pair.size() != 2) throw Located(Errc::ParseError, wp + ": expected [weight, multiplicity]");
            const Weight w = weight_from_json(pair[0], wp + "[0]");
            const long m = integer(pair[1], wp + "[1]");
            if (m < 1) throw Located(Errc::ValidationError, wp + ": multiplicity must be positive");
            parts.emplace_back(w, m);
            order = std::lcm(order, w.denominator());
        }
        if (j.contains("order")) {
            const long given = integer(j["order"], path + ".order");
            if (given < 1 || given % order != 0)
                throw Located(Errc::ValidationError, path + ".order: weights need a multiple of " + std::to_string(order));
            order = given;
        }
        if (parts.empty()) throw Located(Errc::ValidationError, path + ": no weights");
        std::vector<ParabolicPoint> lines;
        for (const auto& [w, m] : parts)
            for (long k = 0; k < m; ++k)
                lines.push_back(ParabolicPoint::line(static_cast<int>(order), static_cast<int>(w.over(order))));
        return guard(path, [&] { return direct_sum(lines); });
    }
    const long order = integer(member(j, "order", path), path + ".order");
    const json& cj = array_at(member(j, "chain", path), path + ".chain");
    if (order < 1 || cj.size() != static_cast<std::size_t>(order) + 1)
        throw Located(Errc::ValidationError, path + ": a chain of order " + std::to_string(order) + " has " +
                                                 std::to_string(order + 1) + " members");
    std::vector<Lattice> chain;
    for (std::size_t i = 0; i < cj.size(); ++i) chain.push_back(lattice_from_json(cj[i], f, idx(path + ".chain", i)));
    return guard(path, [&] { return ParabolicPoint(std::move(chain)); });
}

GradedModule graded_from_json(const json& j, Field f, const std::string& path) {
    if (j.is_object() && j.contains("weights")) return from_parabolic(point_from_json(j, f, path));
    const long order = integer(member(j, "order", path), path + ".order");
    const json& pj = array_at(member(j, "pieces", path), path + ".pieces");
    if (order < 1 || pj.size() != static_cast<std::size_t>(order))
        throw Located(Errc::ValidationError, path + ": a grading of order " + std::to_string(order) + " has " +
                                                 std::to_string(order) + " pieces");
    std::vector<Lattice> pieces;
    for (std::size_t i = 0; i < pj.size(); ++i) pieces.push_back(lattice_from_json(pj[i], f, idx(path + ".pieces", i)));
    return guard(path, [&] { return GradedModule(std::move(pieces)); });
}

CoverProfile profile_from_json(const json& j, Field f, const std::string& path) {
    const long s = integer(member(j, "s", path), path + ".s");
    const bool marked = j.contains("marked") ? guard(path + ".marked", [&] { return j["marked"].get<bool>(); }) : true;
    const json& bj = array_at(member(j, "branches", path), path + ".branches");
    std::vector<Branch> bs;
    for (std::size_t i = 0; i < bj.size(); ++i) {
        const std::string bp = idx(path + ".branches", i);
        Branch b;
        b.label = guard(bp + ".label", [&] { return member(bj[i], "label", bp).get<std::string>(); });
        b.e = static_cast<int>(integer(member(bj[i], "e", bp), bp + ".e"));
        if (bj[i].contains("r"))
            b.r = static_cast<int>(integer(bj[i]["r"], bp + ".r"));
        else
            b.r = b.e > 0 && s % b.e == 0 ? static_cast<int>(s / b.e) : 0;
        b.u = bj[i].contains("u") ? scalar_from_json(bj[i]["u"], f, bp + ".u") : Scalar(f, 1);
        bs.push_back(std::move(b));
    }
    return guard(path, [&] { return CoverProfile(static_cast<int>(s), std::move(bs), marked); });
}

FormKind kind_from_json(const json& j, const std::string& path) {
    const std::string k = guard(path, [&] { return j.get<std::string>(); });
    if (k == "symmetric" || k == "orthogonal") return FormKind::Symmetric;
    if (k == "antisymmetric" || k == "symplectic") return FormKind::Antisymmetric;
    throw Located(Errc::ParseError, path + ": unknown form kind '" + k + "'");
}

Scenario scenario_from_json(const json& j) {
    Scenario s;
    if (!j.is_object()) throw Located(Errc::ParseError, "$: expected an object");
    const long version = integer(member(j, "version", "$"), "$.version");
    if (version != kFormatVersion)
        throw Located(Errc::ParseError, "$.version: unsupported version " + std::to_string(version));
    if (j.contains("field"))
        s.field = guard("$.field", [&] { return Field::parse(j["field"].get<std::string>()); });
    if (j.contains("side")) {
        const std::string side = guard("$.side", [&] { return j["side"].get<std::string>(); });
        if (side == "parabolic")
            s.side = Side::Parabolic;
        else if (side == "graded")
            s.side = Side::Graded;
        else
            throw Located(Errc::ParseError, "$.side: expected parabolic or graded");
    }
    if (j.contains("cover")) {
        const json& c = j["cover"];
        if (c.contains("degree")) s.cover_degree = integer(c["degree"], "$.cover.degree");
        const json& pts = member(c, "points", "$.cover");
        if (!pts.is_object()) throw Located(Errc::ParseError, "$.cover.points: expected an object");
        for (const auto& [label, pj] : pts.items())
            s.cover.emplace(label, profile_from_json(pj, s.field, "$.cover.points." + label));
    }
    if (j.contains("target")) s.target = bundle_from_json(j["target"], s.field, s.side, "$.target");
    if (j.contains("source")) s.source = bundle_from_json(j["source"], s.field, s.side, "$.source");
    if (j.contains("pairing")) {
        const json& pj = j["pairing"];
        PairingBlock pb;
        pb.kind = kind_from_json(member(pj, "kind", "$.pairing"), "$.pairing.kind");
        const json& vl = member(pj, "value_line", "$.pairing");
        if (!vl.is_object()) throw Located(Errc::ParseError, "$.pairing.value_line: expected an object");
        for (const auto& [label, lj] : vl.items()) {
            const std::string where = "$.pairing.value_line." + label;
            ParabolicPoint l = point_from_json(lj, s.field, where);
            if (l.rank() != 1) throw Located(Errc::ValidationError, where + ": value line must have rank one");
            pb.value_line.emplace(label, std::move(l));
        }
        if (pj.contains("form")) pb.form = matrix_from_json(pj["form"], s.field, "$.pairing.form");
        if (pj.contains("source_forms")) {
            for (const auto& [label, fj] : pj["source_forms"].items())
                pb.source_forms.emplace(label, matrix_from_json(fj, s.field, "$.pairing.source_forms." + label));
        }
        s.pairing = std::move(pb);
    }
    return s;
}

json to_json(const Scenario& s) {
    json j{{"version", kFormatVersion}, {"field", s.field.name()}, {"side", side_name(s.side)}};
    if (!s.cover.empty() || s.cover_degree) {
        json c{{"points", json::object()}};
        if (s.cover_degree) c["degree"] = *s.cover_degree;
        for (const auto& [label, p] : s.cover) c["points"][label] = to_json(p, s.field);
        j["cover"] = c;
    }
    if (s.target) j["target"] = bundle_to_json(*s.target, s.side, s.field);
    if (s.source) j["source"] = bundle_to_json(*s.source, s.side, s.field);
    if (s.pairing) {
        json p{{"kind", kind_name(s.pairing->kind)}, {"value_line", json::object()}};
        for (const auto& [label, l] : s.pairing->value_line) p["value_line"][label] = to_json(l, s.field);
        if (s.pairing->form) p["form"] = to_json(*s.pairing->form, s.field);
        if (!s.pairing->source_forms.empty()) {
            p["source_forms"] = json::object();
            for (const auto& [label, m] : s.pairing->source_forms) p["source_forms"][label] = to_json(m, s.field);
        }
        j["pairing"] = p;
    }
    return j;
}

json parse_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::ParseError, origin + ": " + e.what());
    }
}

}  // namespace parstack::io
