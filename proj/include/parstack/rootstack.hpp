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


#ifndef PARSTACK_ROOTSTACK_HPP
#define PARSTACK_ROOTSTACK_HPP

#include <vector>

#include "parstack/parabolic.hpp"

namespace parstack {

/// A mu_s-equivariant module on a root-stack chart, stored as the ascending
/// chain M_0 ⊆ M_1 ⊆ ... ⊆ M_{s-1} ⊆ t^{-1} M_0. Multiplication by the chart
/// coordinate T is the inclusion M_k -> M_{k+1}; wrapping around is t.
class GradedModule {
   public:
    GradedModule() = default;
    /// Validates the chain; throws Error(InvalidGrading).
    explicit GradedModule(std::vector<Lattice> pieces);
    /// Rank one of weight jump/s with M_0 = t^base R: the single strict step is
    /// M_{s-jump-1} ⊊ M_{s-jump}, or the wraparound when jump = 0.
    static GradedModule line(int s, int jump, int base = 0);

    int order() const noexcept { return static_cast<int>(pieces_.size()); }
    std::size_t rank() const { return pieces_.front().rank(); }
    const std::vector<Lattice>& pieces() const noexcept { return pieces_; }
    const Lattice& operator[](int k) const { return pieces_.at(static_cast<std::size_t>(k)); }
    /// M_k for any integer k, extended by M_{k+s} = t^{-1} M_k.
    Lattice piece(long k) const;
    /// For rank one: the grade i of the strict step, so the weight is i/s.
    int jump_grade() const;

    friend bool operator==(const GradedModule&, const GradedModule&) = default;
    std::string to_string() const;

   private:
    std::vector<Lattice> pieces_;
};

ParabolicPoint to_parabolic(const GradedModule& m);
GradedModule from_parabolic(const ParabolicPoint& p);

/// Weight multiplicities read off the grading directly.
WeightMultiset graded_weights(const GradedModule& m);

/// A M_k ⊆ N_k for every k. Error(ProfileMismatch) if the orders differ.
bool is_graded_morphism(const Matrix& a, const GradedModule& m, const GradedModule& n);

struct GradedSplitting {
    std::vector<GradedModule> lines;
    Matrix basis;
};

GradedSplitting graded_split_into_lines(const GradedModule& m);
GradedModule direct_sum(const std::vector<GradedModule>& parts);

}  // namespace parstack

#endif
