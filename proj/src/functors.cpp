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


#include "parstack/functors.hpp"

#include <set>

#include "parstack/errors.hpp"

namespace parstack {

namespace {

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

/// u^{-q} for any integer q.
Scalar unit_power(const Scalar& u, long q) {
    const Scalar base = q > 0 ? u.inverse() : u;
    Scalar out(1);
    for (long i = 0; i < (q > 0 ? q : -q); ++i) out = out * base;
    return out;
}

/// Accumulates c w^q terms for one coordinate.
struct Accumulator {
    std::map<long, Scalar> terms;
    void add(long q, const Scalar& c) {
        auto [it, fresh] = terms.emplace(q, c);
        if (!fresh) it->second = it->second + c;
    }
    LocalElement get() const {
        if (terms.empty()) return {};
        const long lo = terms.begin()->first;
        std::vector<Scalar> c(static_cast<std::size_t>(terms.rbegin()->first - lo + 1), Scalar(0));
        for (const auto& [q, x] : terms) c[static_cast<std::size_t>(q - lo)] = x;
        return LocalElement(static_cast<int>(lo), std::move(c));
    }
};

void check_branches(const CoverProfile& profile, std::size_t count) {
    if (count != profile.branches().size())
        throw Error(Errc::ProfileMismatch, "profile has " + std::to_string(profile.branches().size()) +
                                               " branches, got " + std::to_string(count));
}

Matrix lines_basis(const Matrix& g, const std::vector<Lattice>& blocks) { return g * direct_sum(blocks).basis(); }

}  // namespace

CoverProfile::CoverProfile(int s, std::vector<Branch> branches, bool marked_target)
    : s_(s), branches_(std::move(branches)), marked_(marked_target) {
    if (s_ < 1) throw Error(Errc::InadmissibleProfile, "target order must be positive");
    if (branches_.empty()) throw Error(Errc::InadmissibleProfile, "a profile needs at least one branch");
    if (!marked_ && s_ != 1) throw Error(Errc::InadmissibleProfile, "an unmarked target has order 1");
    std::set<std::string> seen;
    for (const auto& b : branches_) {
        if (!seen.insert(b.label).second) throw Error(Errc::InadmissibleProfile, "duplicate branch " + b.label);
        if (b.e < 1 || b.r < 1 || static_cast<long>(b.r) * b.e != s_)
            throw Error(Errc::InadmissibleProfile, "branch " + b.label + ": s = " + std::to_string(s_) +
                                                       " but r * e = " + std::to_string(b.r) + " * " +
                                                       std::to_string(b.e) + " = " + std::to_string(b.r * b.e));
        if (b.u.is_zero()) throw Error(Errc::InadmissibleProfile, "branch " + b.label + " has u = 0");
    }
}

const Branch& CoverProfile::branch(const std::string& label) const {
    for (const auto& b : branches_)
        if (b.label == label) return b;
    throw Error(Errc::ProfileMismatch, "no branch " + label);
}

int CoverProfile::total_degree() const {
    int d = 0;
    for (const auto& b : branches_) d += b.e;
    return d;
}

std::vector<Lattice> refine_branch_filtration(const ParabolicPoint& p, int e) {
    if (e < 1) throw Error(Errc::InvalidChain, "ramification index must be positive");
    std::vector<Lattice> out;
    for (long a = 0; a <= static_cast<long>(p.order()) * e; ++a) out.push_back(p.level(a));
    return out;
}

Vec restrict_vector(const Vec& v, int e, const Scalar& u) {
    std::vector<Accumulator> acc(v.size() * static_cast<std::size_t>(e));
    for (std::size_t i = 0; i < v.size(); ++i) {
        const LocalElement& x = v[i];
        if (x.is_zero()) continue;
        for (int m = x.t_order(); m <= x.top_exponent(); ++m) {
            const Scalar& c = x.coeff(m);
            if (c.is_zero()) continue;
            const long q = floor_div(m, e);
            const long rem = m - q * e;
            acc[i * static_cast<std::size_t>(e) + static_cast<std::size_t>(rem)].add(q, c * unit_power(u, q));
        }
    }
    Vec out(acc.size());
    for (std::size_t k = 0; k < acc.size(); ++k) out[k] = acc[k].get();
    return out;
}

Lattice restrict_scalars(const Lattice& l, int e, const Scalar& u) {
    const std::size_t n = l.rank(), ue = static_cast<std::size_t>(e);
    Matrix h(n * ue, n * ue);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec col = l.basis().column(i);
        for (int c = 0; c < e; ++c) {
            Vec shifted(col.size());
            for (std::size_t k = 0; k < col.size(); ++k) shifted[k] = col[k].shifted(c);
            // t^c times a pivot t^a lands in residue (a + c) mod e of block i
            const long rem = (l.pivots()[i] + c) - floor_div(l.pivots()[i] + c, e) * e;
            h.set_column(i * ue + static_cast<std::size_t>(rem), restrict_vector(shifted, e, u));
        }
    }
    return Lattice::from_triangular(h);
}

Matrix restrict_matrix(const Matrix& a, int e, const Scalar& u) {
    const std::size_t ue = static_cast<std::size_t>(e);
    Matrix out(a.rows() * ue, a.cols() * ue);
    for (std::size_t j = 0; j < a.cols(); ++j) {
        const Vec col = a.column(j);
        for (int c = 0; c < e; ++c) {
            Vec shifted(col.size());
            for (std::size_t k = 0; k < col.size(); ++k) shifted[k] = col[k].shifted(c);
            out.set_column(j * ue + static_cast<std::size_t>(c), restrict_vector(shifted, e, u));
        }
    }
    return out;
}

Matrix restrict_matrix_blockwise(const Matrix& a, int e, const Scalar& u) {
    const std::size_t ue = static_cast<std::size_t>(e);
    std::vector<Accumulator> acc(a.rows() * ue * a.cols() * ue);
    const std::size_t rows = a.rows() * ue;
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) {
            const LocalElement& x = a(i, j);
            if (x.is_zero()) continue;
            for (int m = x.t_order(); m <= x.top_exponent(); ++m) {
                if (x.coeff(m).is_zero()) continue;
                // block of t^m: basis vector t^c goes to u^{-q} w^q t^{c'} with m + c = q e + c'
                for (int c = 0; c < e; ++c) {
                    const long q = floor_div(m + c, e);
                    const long cp = m + c - q * e;
                    const std::size_t row = i * ue + static_cast<std::size_t>(cp);
                    const std::size_t col = j * ue + static_cast<std::size_t>(c);
                    acc[col * rows + row].add(q, x.coeff(m) * unit_power(u, q));
                }
            }
        }
    Matrix out(rows, a.cols() * ue);
    for (std::size_t col = 0; col < out.cols(); ++col)
        for (std::size_t row = 0; row < rows; ++row) out(row, col) = acc[col * rows + row].get();
    return out;
}

ParabolicPoint pushforward_parabolic(const CoverProfile& profile, const std::vector<ParabolicPoint>& branches) {
    check_branches(profile, branches.size());
    const auto& bs = profile.branches();
    for (std::size_t j = 0; j < bs.size(); ++j)
        if (branches[j].order() != bs[j].r)
            throw Error(Errc::ProfileMismatch, "branch " + bs[j].label + " has order " +
                                                   std::to_string(branches[j].order()) + ", expected " +
                                                   std::to_string(bs[j].r));
    std::vector<std::vector<Lattice>> refined;
    for (std::size_t j = 0; j < bs.size(); ++j) refined.push_back(refine_branch_filtration(branches[j], bs[j].e));
    std::vector<Lattice> chain;
    for (int a = 0; a <= profile.target_order(); ++a) {
        std::vector<Lattice> parts;
        for (std::size_t j = 0; j < bs.size(); ++j)
            parts.push_back(restrict_scalars(refined[j][static_cast<std::size_t>(a)], bs[j].e, bs[j].u));
        chain.push_back(direct_sum(parts));
    }
    return ParabolicPoint(std::move(chain));
}

GradedModule pushforward_graded(const CoverProfile& profile, const std::vector<GradedModule>& branches) {
    check_branches(profile, branches.size());
    const auto& bs = profile.branches();
    for (std::size_t j = 0; j < bs.size(); ++j)
        if (branches[j].order() != bs[j].r)
            throw Error(Errc::ProfileMismatch, "branch " + bs[j].label + " has grading order " +
                                                   std::to_string(branches[j].order()) + ", expected " +
                                                   std::to_string(bs[j].r));
    // grade m = r l + k carries T^m M_k, i.e. t^{-l} M_k seen over the target
    std::vector<Lattice> pieces;
    for (int m = 0; m < profile.target_order(); ++m) {
        std::vector<Lattice> parts;
        for (std::size_t j = 0; j < bs.size(); ++j)
            parts.push_back(restrict_scalars(branches[j].piece(m), bs[j].e, bs[j].u));
        pieces.push_back(direct_sum(parts));
    }
    return GradedModule(std::move(pieces));
}

Matrix pushforward_matrix(const CoverProfile& profile, const std::vector<Matrix>& maps) {
    check_branches(profile, maps.size());
    std::vector<Matrix> blocks;
    for (std::size_t j = 0; j < maps.size(); ++j)
        blocks.push_back(restrict_matrix(maps[j], profile.branches()[j].e, profile.branches()[j].u));
    return block_diagonal(blocks);
}

Matrix pushforward_matrix_graded(const CoverProfile& profile, const std::vector<Matrix>& maps) {
    check_branches(profile, maps.size());
    std::vector<Matrix> blocks;
    for (std::size_t j = 0; j < maps.size(); ++j)
        blocks.push_back(restrict_matrix_blockwise(maps[j], profile.branches()[j].e, profile.branches()[j].u));
    return block_diagonal(blocks);
}

LinePullback pullback_parabolic_line(const Weight& alpha, int e, int r) {
    const long s = static_cast<long>(r) * e;
    if (e < 1 || r < 1 || s % alpha.denominator() != 0)
        throw Error(Errc::InadmissibleWeight,
                    "weight " + alpha.to_string() + " does not live at a point of order " + std::to_string(s));
    const long d = alpha.over(s);
    return {d / r, Weight(d % r, r)};
}

PulledPoint pullback_parabolic(const CoverProfile& profile, const ParabolicPoint& f, const std::string& branch,
                               const LineSplitting& split) {
    const Branch& b = profile.branch(branch);
    if (f.order() != profile.target_order())
        throw Error(Errc::ProfileMismatch, "chain of order " + std::to_string(f.order()) + " at a point of order " +
                                               std::to_string(profile.target_order()));
    PulledPoint out;
    out.basis = split.basis.substitute(b.e, b.u);
    for (std::size_t i = 0; i < split.lines.size(); ++i) {
        const LinePullback lp = pullback_parabolic_line(Weight(split.depths[i], f.order()), b.e, b.r);
        // a line whose generator has valuation v upstairs starts at t^{e v}
        const int base = b.e * split.lines[i][0].pivots().front() - static_cast<int>(lp.twist);
        out.lines.push_back(ParabolicPoint::line(b.r, static_cast<int>(lp.weight.over(b.r)), base));
        out.twists.push_back(lp.twist);
    }
    std::vector<Lattice> chain;
    for (int j = 0; j <= b.r; ++j) {
        std::vector<Lattice> blocks;
        for (const auto& l : out.lines) blocks.push_back(l[j]);
        chain.push_back(Lattice::from_basis(lines_basis(out.basis, blocks)));
    }
    out.point = ParabolicPoint(std::move(chain));
    return out;
}

ParabolicPoint pullback_parabolic(const CoverProfile& profile, const ParabolicPoint& f, const std::string& branch) {
    return pullback_parabolic(profile, f, branch, split_into_lines(f)).point;
}

PulledGraded pullback_graded(const CoverProfile& profile, const GradedModule& m, const std::string& branch,
                             const GradedSplitting& split) {
    const Branch& b = profile.branch(branch);
    if (m.order() != profile.target_order())
        throw Error(Errc::ProfileMismatch, "grading of order " + std::to_string(m.order()) + " at a point of order " +
                                               std::to_string(profile.target_order()));
    PulledGraded out;
    out.basis = split.basis.substitute(b.e, b.u);
    for (const auto& line : split.lines) {
        const int i = line.jump_grade();
        const int base = b.e * line[0].pivots().front() - i / b.r;
        out.lines.push_back(GradedModule::line(b.r, i % b.r, base));
    }
    std::vector<Lattice> pieces;
    for (int k = 0; k < b.r; ++k) {
        std::vector<Lattice> blocks;
        for (const auto& l : out.lines) blocks.push_back(l[k]);
        pieces.push_back(Lattice::from_basis(lines_basis(out.basis, blocks)));
    }
    out.module = GradedModule(std::move(pieces));
    return out;
}

GradedModule pullback_graded(const CoverProfile& profile, const GradedModule& m, const std::string& branch) {
    return pullback_graded(profile, m, branch, graded_split_into_lines(m)).module;
}

Matrix pullback_matrix(const CoverProfile& profile, const Matrix& a, const std::string& branch) {
    const Branch& b = profile.branch(branch);
    return a.substitute(b.e, b.u);
}

CoverProfile random_profile(Field f, Rng& rng, int max_order, int max_branches) {
    const int s = static_cast<int>(rng.uniform(1, max_order));
    std::vector<int> divisors;
    for (int d = 1; d <= s; ++d)
        if (s % d == 0) divisors.push_back(d);
    std::vector<Branch> branches;
    const long count = rng.uniform(1, max_branches);
    for (long j = 0; j < count; ++j) {
        const int e = divisors[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(divisors.size()) - 1))];
        branches.push_back({"x" + std::to_string(j + 1), e, s / e, rng.coin() ? Scalar(1) : rng.nonzero_scalar(f)});
    }
    return CoverProfile(s, std::move(branches));
}

ParabolicBundle pullback_bundle(const CoverScenario& cover, const ParabolicBundle& f) {
    f.validate();
    ParabolicBundle out;
    out.rank = f.rank;
    out.underlying_degree = cover.degree * f.underlying_degree;
    for (const auto& [y, profile] : cover.profiles) {
        if (profile.total_degree() != cover.degree)
            throw Error(Errc::ProfileMismatch, "ramification over " + y + " adds up to " +
                                                   std::to_string(profile.total_degree()) + ", not deg f = " +
                                                   std::to_string(cover.degree));
        if (profile.is_marked_target() && !f.points.count(y))
            throw Error(Errc::ProfileMismatch, "marked target " + y + " has no parabolic data");
    }
    for (const auto& [y, p] : f.points) {
        auto it = cover.profiles.find(y);
        if (it == cover.profiles.end()) throw Error(Errc::ProfileMismatch, "no cover profile over " + y);
        for (const auto& b : it->second.branches()) {
            ParabolicPoint pulled = pullback_parabolic(it->second, p, b.label);
            out.underlying_degree += static_cast<long>(b.e) * p[0].det_exponent() - pulled[0].det_exponent();
            out.points.emplace(y + "/" + b.label, std::move(pulled));
        }
    }
    return out;
}

}  // namespace parstack
