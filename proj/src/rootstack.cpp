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


#include "parstack/rootstack.hpp"

#include <sstream>

#include "parstack/errors.hpp"

namespace parstack {

GradedModule::GradedModule(std::vector<Lattice> pieces) : pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw Error(Errc::InvalidGrading, "a graded module needs at least M_0");
    const std::size_t n = pieces_.front().rank();
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        if (pieces_[k].rank() != n) throw Error(Errc::InvalidGrading, "pieces have different ranks");
        if (k > 0 && !contains(pieces_[k], pieces_[k - 1]))
            throw Error(Errc::InvalidGrading, "M_" + std::to_string(k - 1) + " is not inside M_" + std::to_string(k));
    }
    if (!contains(scale(pieces_.front(), -1), pieces_.back()))
        throw Error(Errc::InvalidGrading, "M_{s-1} is not inside t^-1 M_0");
}

GradedModule GradedModule::line(int s, int jump, int base) {
    if (s < 1 || jump < 0 || jump >= s) throw Error(Errc::InvalidGrading, "jump grade out of range");
    std::vector<Lattice> pieces;
    for (int k = 0; k < s; ++k)
        pieces.push_back(scale(Lattice::standard(1), base - (jump > 0 && k >= s - jump ? 1 : 0)));
    return GradedModule(std::move(pieces));
}

Lattice GradedModule::piece(long k) const {
    const long s = order();
    long q = k / s, i = k % s;
    if (i < 0) {
        i += s;
        --q;
    }
    return scale(pieces_[static_cast<std::size_t>(i)], static_cast<int>(-q));
}

int GradedModule::jump_grade() const {
    if (rank() != 1) throw Error(Errc::ShapeMismatch, "jump grade needs rank one");
    for (int k = 1; k < order(); ++k)
        if (!(pieces_[static_cast<std::size_t>(k)] == pieces_.front())) return order() - k;
    return 0;
}

std::string GradedModule::to_string() const {
    std::ostringstream os;
    os << "s=" << order();
    for (std::size_t k = 0; k < pieces_.size(); ++k) os << "\n  M_" << k << ": " << pieces_[k].to_string();
    return os.str();
}

ParabolicPoint to_parabolic(const GradedModule& m) {
    const int s = m.order();
    std::vector<Lattice> chain{m[0]};
    for (int j = 1; j <= s; ++j) chain.push_back(scale(m[j == s ? 0 : s - j], 1));
    try {
        return ParabolicPoint(std::move(chain));
    } catch (const Error& e) {
        throw Error(Errc::InvalidGrading, e.what());
    }
}

GradedModule from_parabolic(const ParabolicPoint& p) {
    const int r = p.order();
    std::vector<Lattice> pieces{p[0]};
    for (int k = 1; k < r; ++k) pieces.push_back(scale(p[r - k], -1));
    return GradedModule(std::move(pieces));
}

WeightMultiset graded_weights(const GradedModule& m) {
    const int s = m.order();
    WeightMultiset w;
    // weight 0 measures the wraparound step M_{s-1} ⊆ t^{-1} M_0
    const long m0 = quotient_dim(scale(m[0], -1), m[s - 1]);
    if (m0 > 0) w[Weight(0, 1)] = m0;
    for (int a = 1; a < s; ++a) {
        const long ma = quotient_dim(m[s - a], m[s - a - 1]);
        if (ma > 0) w[Weight(a, s)] += ma;
    }
    return w;
}

bool is_graded_morphism(const Matrix& a, const GradedModule& m, const GradedModule& n) {
    if (a.rows() != n.rank() || a.cols() != m.rank())
        throw Error(Errc::ShapeMismatch, "matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    if (m.order() != n.order()) throw Error(Errc::ProfileMismatch, "graded modules have different orders");
    for (int k = 0; k < m.order(); ++k)
        if (!n[k].contains(image_generators(a, m[k]))) return false;
    return true;
}

GradedSplitting graded_split_into_lines(const GradedModule& m) {
    const LineSplitting s = split_into_lines(to_parabolic(m));
    GradedSplitting out;
    for (const auto& l : s.lines) out.lines.push_back(from_parabolic(l));
    out.basis = s.basis;
    return out;
}

GradedModule direct_sum(const std::vector<GradedModule>& parts) {
    if (parts.empty()) throw Error(Errc::ShapeMismatch, "empty direct sum");
    std::vector<Lattice> pieces;
    for (int k = 0; k < parts.front().order(); ++k) {
        std::vector<Lattice> blocks;
        for (const auto& p : parts) {
            if (p.order() != parts.front().order()) throw Error(Errc::ProfileMismatch, "graded orders differ");
            blocks.push_back(p[k]);
        }
        pieces.push_back(direct_sum(blocks));
    }
    return GradedModule(std::move(pieces));
}

}  // namespace parstack
