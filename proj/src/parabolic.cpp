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


#include "parstack/parabolic.hpp"

#include <numeric>
#include <sstream>

#include "parstack/errors.hpp"

namespace parstack {

namespace {

using KVec = std::vector<Scalar>;

struct Echelon {
    std::vector<KVec> rows;
    std::vector<std::size_t> pivots;  // first nonzero index of each row
};

/// Reduced echelon basis of the k-span of vs; pivots ascending.
Echelon reduced_echelon(std::vector<KVec> vs, std::size_t n) {
    Echelon out;
    std::size_t next = 0;
    for (std::size_t col = 0; col < n && next < vs.size(); ++col) {
        std::size_t sel = next;
        while (sel < vs.size() && vs[sel][col].is_zero()) ++sel;
        if (sel == vs.size()) continue;
        std::swap(vs[next], vs[sel]);
        const Scalar inv = vs[next][col].inverse();
        for (auto& x : vs[next]) x = x * inv;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (i == next || vs[i][col].is_zero()) continue;
            const Scalar c = vs[i][col];
            for (std::size_t k = 0; k < n; ++k) vs[i][k] = vs[i][k] - c * vs[next][k];
        }
        out.pivots.push_back(col);
        ++next;
    }
    vs.resize(next);
    out.rows = std::move(vs);
    return out;
}

long lcm_of(long a, long b) { return std::lcm(a, b); }

mpq_class ceil_q(const mpq_class& q) {
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return mpq_class(c);
}

struct Adapted {
    std::vector<KVec> vectors;  // in E^0 coordinates, ordered by pivot row
    std::vector<int> depths;
};

Adapted adapted_fiber_basis(const ParabolicPoint& p, const Matrix& b0_inv) {
    const std::size_t n = p.rank();
    const int r = p.order();
    std::vector<Echelon> levels(static_cast<std::size_t>(r));
    for (int j = 1; j < r; ++j) {
        const Matrix c = b0_inv * p[j].basis();
        std::vector<KVec> vs;
        for (std::size_t col = 0; col < n; ++col) {
            KVec v(n);
            for (std::size_t i = 0; i < n; ++i) v[i] = c(i, col).coeff(0);
            vs.push_back(std::move(v));
        }
        levels[static_cast<std::size_t>(j)] = reduced_echelon(std::move(vs), n);
    }
    Adapted out;
    for (std::size_t row = 0; row < n; ++row) {
        int depth = 0;
        KVec v(n, Scalar(0));
        v[row] = Scalar(1);
        for (int j = r - 1; j >= 1; --j) {
            const auto& lv = levels[static_cast<std::size_t>(j)];
            bool found = false;
            for (std::size_t k = 0; k < lv.pivots.size(); ++k)
                if (lv.pivots[k] == row) {
                    v = lv.rows[k];
                    found = true;
                }
            if (found) {
                depth = j;
                break;
            }
        }
        out.vectors.push_back(std::move(v));
        out.depths.push_back(depth);
    }
    return out;
}

LineSplitting assemble(const ParabolicPoint& p, const Matrix& b0, const Matrix& coords, std::vector<int> depths) {
    LineSplitting s;
    for (int d : depths) s.lines.push_back(ParabolicPoint::line(p.order(), d));
    s.depths = std::move(depths);
    s.basis = b0 * coords;
    return s;
}

}  // namespace

ParabolicPoint::ParabolicPoint(std::vector<Lattice> chain) : chain_(std::move(chain)) {
    if (chain_.size() < 2) throw Error(Errc::InvalidChain, "a chain needs at least E^0 and E^1");
    const std::size_t n = chain_.front().rank();
    for (std::size_t j = 0; j < chain_.size(); ++j) {
        if (chain_[j].rank() != n) throw Error(Errc::InvalidChain, "chain members have different ranks");
        if (j > 0 && !contains(chain_[j - 1], chain_[j]))
            throw Error(Errc::InvalidChain, "E^" + std::to_string(j) + " is not inside E^" + std::to_string(j - 1));
    }
    if (!(chain_.back() == scale(chain_.front(), 1)))
        throw Error(Errc::InvalidChain, "E^r is not t E^0");
}

ParabolicPoint ParabolicPoint::trivial(const Lattice& e0) { return ParabolicPoint({e0, scale(e0, 1)}); }

ParabolicPoint ParabolicPoint::line(int r, int depth, int base) {
    if (r < 1 || depth < 0 || depth >= r) throw Error(Errc::InvalidChain, "line depth out of range");
    std::vector<Lattice> chain;
    for (int j = 0; j <= r; ++j) chain.push_back(scale(Lattice::standard(1), base + (j > depth ? 1 : 0)));
    return ParabolicPoint(std::move(chain));
}

Lattice ParabolicPoint::level(long a) const {
    const long r = order();
    long q = a / r, k = a % r;
    if (k < 0) {
        k += r;
        --q;
    }
    return scale(chain_[static_cast<std::size_t>(k)], static_cast<int>(q));
}

Lattice ParabolicPoint::at(const mpq_class& alpha) const {
    return level(ceil_q(alpha * order()).get_num().get_si());
}

ParabolicPoint ParabolicPoint::refined_to(int n) const {
    if (n < 1 || n % order() != 0)
        throw Error(Errc::InvalidChain, "cannot refine order " + std::to_string(order()) + " to " + std::to_string(n));
    if (n == order()) return *this;
    std::vector<Lattice> chain;
    for (int j = 0; j <= n; ++j) chain.push_back(at(mpq_class(j, n)));
    return ParabolicPoint(std::move(chain));
}

std::string ParabolicPoint::to_string() const {
    std::ostringstream os;
    os << "r=" << order();
    for (std::size_t j = 0; j < chain_.size(); ++j) os << "\n  E^" << j << ": " << chain_[j].to_string();
    return os.str();
}

void ParabolicBundle::validate() const {
    for (const auto& [label, p] : points)
        if (p.rank() != rank)
            throw Error(Errc::ShapeMismatch, "point " + label + " has rank " + std::to_string(p.rank()));
}

WeightMultiset weights_of(const ParabolicPoint& p) {
    WeightMultiset w;
    for (int a = 0; a < p.order(); ++a) {
        const long m = quotient_dim(p[a], p[a + 1]);
        if (m > 0) w[Weight(a, p.order())] += m;
    }
    return w;
}

WeightMultiset weights_of(const std::vector<Lattice>& chain) { return weights_of(ParabolicPoint(chain)); }

bool is_morphism(const Matrix& a, const ParabolicPoint& e, const ParabolicPoint& f) {
    if (a.rows() != f.rank() || a.cols() != e.rank())
        throw Error(Errc::ShapeMismatch, "matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    const long n = lcm_of(e.order(), f.order());
    for (long j = 0; j < n; ++j) {
        const mpq_class alpha(j, n);
        if (!f.at(alpha).contains(image_generators(a, e.at(alpha)))) return false;
    }
    return true;
}

bool is_morphism(const Matrix& a, const ParabolicBundle& e, const ParabolicBundle& f) {
    if (e.points.size() != f.points.size()) throw Error(Errc::ProfileMismatch, "bundles have different marked points");
    for (const auto& [label, pe] : e.points) {
        auto it = f.points.find(label);
        if (it == f.points.end()) throw Error(Errc::ProfileMismatch, "point " + label + " missing from target");
        if (!is_morphism(a, pe, it->second)) return false;
    }
    return true;
}

bool is_isomorphism(const Matrix& a, const ParabolicPoint& e, const ParabolicPoint& f) {
    if (a.rows() != f.rank() || a.cols() != e.rank())
        throw Error(Errc::ShapeMismatch, "matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    if (!a.is_square()) return false;
    long v = 0;
    try {
        v = det_valuation(a);
    } catch (const Error& err) {
        if (err.code() == Errc::SingularBasis) return false;
        throw;
    }
    // inclusion plus equal colength forces equality
    const long n = lcm_of(e.order(), f.order());
    for (long j = 0; j < n; ++j) {
        const mpq_class alpha(j, n);
        const Lattice& src = e.at(alpha);
        const Lattice& dst = f.at(alpha);
        if (src.det_exponent() + v != dst.det_exponent()) return false;
        if (!dst.contains(image_generators(a, src))) return false;
    }
    return true;
}

mpq_class parabolic_degree(const ParabolicBundle& e) {
    e.validate();
    mpq_class d(e.underlying_degree);
    for (const auto& [label, p] : e.points)
        for (const auto& [w, m] : weights_of(p)) d += w.value() * m;
    return d;
}

ParabolicPoint direct_sum(const std::vector<ParabolicPoint>& parts) {
    if (parts.empty()) throw Error(Errc::ShapeMismatch, "empty direct sum");
    long n = 1;
    for (const auto& p : parts) n = lcm_of(n, p.order());
    std::vector<ParabolicPoint> refined;
    for (const auto& p : parts) refined.push_back(p.refined_to(static_cast<int>(n)));
    std::vector<Lattice> chain;
    for (long j = 0; j <= n; ++j) {
        std::vector<Lattice> blocks;
        for (const auto& p : refined) blocks.push_back(p[static_cast<int>(j)]);
        chain.push_back(direct_sum(blocks));
    }
    return ParabolicPoint(std::move(chain));
}

ParabolicBundle direct_sum(const ParabolicBundle& a, const ParabolicBundle& b) {
    ParabolicBundle out;
    out.rank = a.rank + b.rank;
    out.underlying_degree = a.underlying_degree + b.underlying_degree;
    if (a.points.size() != b.points.size()) throw Error(Errc::ProfileMismatch, "bundles have different marked points");
    for (const auto& [label, pa] : a.points) {
        auto it = b.points.find(label);
        if (it == b.points.end()) throw Error(Errc::ProfileMismatch, "point " + label + " missing");
        out.points.emplace(label, direct_sum({pa, it->second}));
    }
    return out;
}

LineSplitting split_into_lines(const ParabolicPoint& p) {
    const Matrix& b0 = p[0].basis();
    const Adapted ad = adapted_fiber_basis(p, triangular_inverse(b0));
    const std::size_t n = p.rank();
    Matrix v(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) v(i, j) = LocalElement(ad.vectors[j][i]);
    return assemble(p, b0, v, ad.depths);
}

LineSplitting split_into_lines(const ParabolicPoint& p, Rng& rng, Field f) {
    const Matrix& b0 = p[0].basis();
    const Adapted ad = adapted_fiber_basis(p, triangular_inverse(b0));
    const std::size_t n = p.rank();
    Matrix v(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        // c v_j + sum of vectors at least as deep + t * (anything) stays in E^{d_j}
        const Scalar c = rng.nonzero_scalar(f);
        for (std::size_t i = 0; i < n; ++i) v(i, j) = LocalElement(c * ad.vectors[j][i]);
        for (std::size_t k = 0; k < n; ++k) {
            const bool deeper = ad.depths[k] > ad.depths[j] || (ad.depths[k] == ad.depths[j] && k < j);
            if (!deeper || !rng.coin()) continue;
            const Scalar a = rng.small_scalar(f);
            for (std::size_t i = 0; i < n; ++i) v(i, j) += LocalElement(a * ad.vectors[k][i]);
        }
        for (std::size_t i = 0; i < n; ++i)
            if (rng.coin()) v(i, j) += LocalElement(1, {rng.small_scalar(f), rng.small_scalar(f)});
    }
    return assemble(p, b0, v, ad.depths);
}

ParabolicPoint random_point(std::size_t n, int r, Field f, Rng& rng, int max_exponent) {
    const Lattice e0 = random_lattice(n, f, rng, max_exponent);
    const Matrix b = e0.basis() * random_unimodular(n, f, rng).first;
    std::vector<int> depth(n);
    for (auto& d : depth) d = static_cast<int>(rng.uniform(0, r - 1));
    std::vector<Lattice> chain;
    for (int j = 0; j <= r; ++j) {
        Vec diag(n);
        for (std::size_t i = 0; i < n; ++i) diag[i] = LocalElement::t_power(depth[i] < j ? 1 : 0);
        chain.push_back(j == 0 ? e0 : Lattice::from_basis(b * Matrix::diagonal(diag)));
    }
    return ParabolicPoint(std::move(chain));
}

}  // namespace parstack
