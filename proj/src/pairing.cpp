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


#include "parstack/pairing.hpp"

#include <numeric>

#include "parstack/errors.hpp"

namespace parstack {

namespace {

/// ceil(a / r + c / n - w) for the weight w.
long ceil_level(long a, long r, long c, long n, const Weight& w) {
    const mpq_class x = mpq_class(a, r) + mpq_class(c, n) - w.value();
    mpz_class out;
    mpz_cdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return out.get_si();
}

ParabolicPoint to_order(const ParabolicPoint& p, int order, Errc code) {
    if (order % p.order() != 0)
        throw Error(code, "order " + std::to_string(p.order()) + " does not divide " + std::to_string(order));
    return p.refined_to(order);
}

bool same_filtration(const ParabolicPoint& a, const ParabolicPoint& b) {
    if (a.rank() != b.rank()) return false;
    const int n = std::lcm(a.order(), b.order());
    return a.refined_to(n) == b.refined_to(n);
}

/// Coordinate blocks that neither the form nor any chain member couples.
std::vector<std::vector<std::size_t>> coupled_blocks(const Matrix& form, const ParabolicPoint& e) {
    const std::size_t n = e.rank();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    auto link = [&](const Matrix& m) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (!m(i, j).is_zero()) parent[find(i)] = find(j);
    };
    link(form);
    for (const auto& l : e.chain()) link(l.basis());
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<long> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = find(i);
        if (slot[root] < 0) {
            slot[root] = static_cast<long>(blocks.size());
            blocks.emplace_back();
        }
        blocks[static_cast<std::size_t>(slot[root])].push_back(i);
    }
    return blocks;
}

Matrix principal(const Matrix& m, const std::vector<std::size_t>& idx) {
    Matrix out(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = m(idx[i], idx[j]);
    return out;
}

}  // namespace

const char* kind_name(FormKind k) { return k == FormKind::Symmetric ? "symmetric" : "antisymmetric"; }

LineType line_type(const ParabolicPoint& l) {
    if (l.rank() != 1) throw Error(Errc::ShapeMismatch, "value line must have rank one");
    return {l[0].pivots().front(), weights_of(l).begin()->first};
}

ParabolicPoint line_point(const LineType& l, int order) {
    return ParabolicPoint::line(order, static_cast<int>(l.weight.over(order)), l.base);
}

LineType dual_line(const LineType& l) {
    const bool jump = l.weight.numerator() != 0;
    return {-l.base + (jump ? 1 : 0), Weight::fractional_part(-l.weight.value())};
}

LineType tensor_lines(const LineType& a, const LineType& b) {
    const mpq_class sum = a.weight.value() + b.weight.value();
    return {a.base + b.base - (sum >= 1 ? 1 : 0), Weight::fractional_part(sum)};
}

ParabolicPoint dual_point(const ParabolicPoint& e, const ParabolicPoint& l) {
    const LineType lt = line_type(l);
    const long r = e.order();
    const long n = std::lcm(r, static_cast<long>(l.order()));
    std::vector<Lattice> duals;
    for (long a = 0; a < r; ++a) duals.push_back(e[static_cast<int>(a)].dual());
    std::vector<Lattice> chain;
    for (long c = 0; c <= n; ++c) {
        Lattice level;
        for (long a = 0; a < r; ++a) {
            const Lattice part =
                scale(duals[static_cast<std::size_t>(a)], lt.base + static_cast<int>(ceil_level(a, r, c, n, lt.weight)));
            level = a == 0 ? part : lattice_intersect(level, part);
        }
        chain.push_back(level);
    }
    return ParabolicPoint(std::move(chain));
}

ParabolicPoint dual_point(const ParabolicPoint& e) { return dual_point(e, ParabolicPoint::line(1, 0)); }

ParabolicPoint tensor_line(const ParabolicPoint& e, const ParabolicPoint& l) {
    const LineType lt = line_type(l);
    const long r = e.order();
    const long n = std::lcm(r, static_cast<long>(l.order()));
    std::vector<Lattice> chain;
    for (long c = 0; c <= n; ++c) {
        Lattice level;
        for (long a = 0; a < r; ++a) {
            // L_{c/n - a/r} = t^{base + ceil(c/n - a/r - w)}
            const long k = ceil_level(-a, r, c, n, lt.weight);
            const Lattice part = scale(e[static_cast<int>(a)], lt.base + static_cast<int>(k));
            level = a == 0 ? part : lattice_sum(level, part);
        }
        chain.push_back(level);
    }
    return ParabolicPoint(std::move(chain));
}

bool has_kind(const Matrix& form, FormKind kind) {
    if (!form.is_square()) return false;
    return form.transpose() == (kind == FormKind::Symmetric ? form : -form);
}

bool check_pairing(const LocalPairing& p, const ParabolicPoint& e) {
    if (p.form.rows() != e.rank() || p.form.cols() != e.rank())
        throw Error(Errc::ShapeMismatch, "form is " + std::to_string(p.form.rows()) + "x" +
                                             std::to_string(p.form.cols()) + " on a rank " + std::to_string(e.rank()) +
                                             " chain");
    line_type(p.value_line);
    if (!has_kind(p.form, p.kind)) return false;
    const auto blocks = coupled_blocks(p.form, e);
    if (blocks.size() == 1) return is_isomorphism(p.form.transpose(), e, dual_point(e, p.value_line));
    // the dual of a direct sum is the sum of the duals
    for (const auto& idx : blocks) {
        std::vector<Lattice> chain;
        for (const auto& l : e.chain()) chain.push_back(Lattice::from_triangular(principal(l.basis(), idx)));
        const ParabolicPoint part(std::move(chain));
        if (!is_isomorphism(principal(p.form, idx).transpose(), part, dual_point(part, p.value_line))) return false;
    }
    return true;
}

bool check_pairing(const ParabolicPairing& p, const ParabolicBundle& e) {
    if (p.value_line.rank != 1) throw Error(Errc::ShapeMismatch, "value line must have rank one");
    if (!has_kind(p.form, p.kind)) return false;
    for (const auto& [label, point] : e.points) {
        auto it = p.value_line.points.find(label);
        if (it == p.value_line.points.end())
            throw Error(Errc::ValueLineMismatch, "value line has no data at " + label);
        if (!check_pairing(LocalPairing{p.form, p.kind, it->second}, point)) return false;
    }
    return true;
}

TransportedPairing pullback_pairing(const CoverProfile& profile, const LocalPairing& p, const ParabolicPoint& e,
                                    const std::string& branch) {
    if (!check_pairing(p, e)) throw Error(Errc::NotAPairing, "input form is not a perfect pairing");
    const int s = profile.target_order();
    const ParabolicPoint line = to_order(p.value_line, s, Errc::ValueLineMismatch);
    TransportedPairing out;
    out.bundle = pullback_parabolic(profile, to_order(e, s, Errc::ProfileMismatch), branch);
    out.pairing = {pullback_matrix(profile, p.form, branch), p.kind, pullback_parabolic(profile, line, branch)};
    return out;
}

Matrix pushforward_form(const CoverProfile& profile, const std::vector<Matrix>& forms) {
    if (forms.size() != profile.branches().size()) throw Error(Errc::ProfileMismatch, "one form per branch");
    std::vector<Matrix> blocks;
    for (std::size_t j = 0; j < forms.size(); ++j) {
        const Branch& b = profile.branches()[j];
        const Matrix& phi = forms[j];
        const std::size_t e = static_cast<std::size_t>(b.e);
        Matrix out(phi.rows() * e, phi.cols() * e);
        for (std::size_t i = 0; i < phi.rows(); ++i)
            for (std::size_t k = 0; k < phi.cols(); ++k)
                for (std::size_t c = 0; c < e; ++c)
                    for (std::size_t d = 0; d < e; ++d) {
                        const LocalElement z = phi(i, k).shifted(static_cast<int>(c + d));
                        out(i * e + c, k * e + d) = restrict_vector({z}, b.e, b.u)[0];
                    }
        blocks.push_back(std::move(out));
    }
    return block_diagonal(blocks);
}

Matrix pushforward_form_trace(const CoverProfile& profile, const std::vector<Matrix>& forms) {
    if (forms.size() != profile.branches().size()) throw Error(Errc::ProfileMismatch, "one form per branch");
    std::vector<Matrix> blocks;
    for (std::size_t j = 0; j < forms.size(); ++j) {
        const Branch& b = profile.branches()[j];
        const Matrix& phi = forms[j];
        const std::size_t e = static_cast<std::size_t>(b.e);
        const Scalar inv_e = Scalar(static_cast<long>(b.e)).in(b.u.field()).inverse();
        Matrix out(phi.rows() * e, phi.cols() * e);
        for (std::size_t i = 0; i < phi.rows(); ++i)
            for (std::size_t k = 0; k < phi.cols(); ++k)
                for (std::size_t c = 0; c < e; ++c)
                    for (std::size_t d = 0; d < e; ++d) {
                        Matrix z(1, 1);
                        z(0, 0) = phi(i, k).shifted(static_cast<int>(c + d));
                        const Matrix mult = restrict_matrix_blockwise(z, b.e, b.u);
                        LocalElement tr;
                        for (std::size_t q = 0; q < e; ++q) tr += mult(q, q);
                        out(i * e + c, k * e + d) = LocalElement(inv_e) * tr;
                    }
        blocks.push_back(std::move(out));
    }
    return block_diagonal(blocks);
}

TransportedPairing pushforward_pairing(const CoverProfile& profile, const std::vector<LocalPairing>& pairings,
                                       const std::vector<ParabolicPoint>& branches, const ParabolicPoint& target_line) {
    if (pairings.size() != branches.size() || pairings.size() != profile.branches().size())
        throw Error(Errc::ProfileMismatch, "one pairing and one chain per branch");
    const ParabolicPoint line = to_order(target_line, profile.target_order(), Errc::ValueLineMismatch);
    std::vector<Matrix> forms;
    for (std::size_t j = 0; j < pairings.size(); ++j) {
        const Branch& b = profile.branches()[j];
        if (pairings[j].kind != pairings.front().kind)
            throw Error(Errc::NotAPairing, "branch pairings have different kinds");
        if (!same_filtration(pairings[j].value_line, pullback_parabolic(profile, line, b.label)))
            throw Error(Errc::ValueLineMismatch, "branch " + b.label + " is not valued in the pulled-back line");
        if (!check_pairing(pairings[j], branches[j]))
            throw Error(Errc::NotAPairing, "branch " + b.label + " form is not a perfect pairing");
        forms.push_back(pairings[j].form);
    }
    TransportedPairing out;
    out.bundle = pushforward_parabolic(profile, branches);
    out.pairing = {pushforward_form(profile, forms), pairings.front().kind, target_line};
    return out;
}

PairingInstance random_pairing(const ParabolicPoint& value_line, std::size_t blocks, FormKind kind, Field f, Rng& rng) {
    const LineType lt = line_type(value_line);
    const int r = value_line.order();
    auto random_line = [&]() {
        return LineType{static_cast<int>(rng.uniform(-1, 1)), Weight(rng.uniform(0, r - 1), r)};
    };
    std::vector<LineType> lines;
    std::vector<std::pair<std::size_t, std::size_t>> hyperbolic;
    std::vector<std::pair<std::size_t, Scalar>> diagonal;
    for (std::size_t k = 0; k < blocks; ++k) {
        if (kind == FormKind::Symmetric && rng.coin()) {
            // a line with dual(l) ⊗ L = l, when one turns up
            bool found = false;
            for (int tries = 0; tries < 16 && !found; ++tries) {
                const LineType l = random_line();
                if (tensor_lines(dual_line(l), lt) == l) {
                    diagonal.emplace_back(lines.size(), rng.nonzero_scalar(f));
                    lines.push_back(l);
                    found = true;
                }
            }
            if (found) continue;
        }
        const LineType a = random_line();
        hyperbolic.emplace_back(lines.size(), lines.size() + 1);
        lines.push_back(a);
        lines.push_back(tensor_lines(dual_line(a), lt));
    }
    const std::size_t n = lines.size();
    Matrix j(n, n);
    for (const auto& [i, c] : diagonal) j(i, i) = LocalElement(c);
    for (const auto& [a, b] : hyperbolic) {
        const Scalar c = rng.nonzero_scalar(f);
        j(a, b) = LocalElement(c);
        j(b, a) = LocalElement(kind == FormKind::Symmetric ? c : Scalar(0) - c);
    }
    std::vector<ParabolicPoint> points;
    for (const auto& l : lines) points.push_back(line_point(l, r));
    const ParabolicPoint sum = direct_sum(points);
    auto [g, g_inv] = random_unimodular(n, f, rng);
    std::vector<Lattice> chain;
    for (const auto& level : sum.chain()) chain.push_back(Lattice::from_basis(g * level.basis()));
    PairingInstance out;
    out.bundle = ParabolicPoint(std::move(chain));
    out.pairing = {g_inv.transpose() * j * g_inv, kind, value_line};
    return out;
}

}  // namespace parstack
