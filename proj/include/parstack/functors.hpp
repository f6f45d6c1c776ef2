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


#ifndef PARSTACK_FUNCTORS_HPP
#define PARSTACK_FUNCTORS_HPP

#include <map>
#include <string>
#include <vector>

#include "parstack/rootstack.hpp"

namespace parstack {

/// One point x over y: the target uniformizer is u t^e on x's chart and x
/// carries a chain of order r.
struct Branch {
    std::string label;
    int e = 1;
    int r = 1;
    Scalar u{1};
};

/// Local ramification data over one target point of order s. Construction
/// enforces r e = s on every branch and u != 0.
class CoverProfile {
   public:
    CoverProfile() = default;
    /// Throws Error(InadmissibleProfile).
    CoverProfile(int s, std::vector<Branch> branches, bool marked_target = true);

    int target_order() const noexcept { return s_; }
    bool is_marked_target() const noexcept { return marked_; }
    const std::vector<Branch>& branches() const noexcept { return branches_; }
    /// Error(ProfileMismatch) for an unknown label.
    const Branch& branch(const std::string& label) const;
    int total_degree() const;

   private:
    int s_ = 1;
    std::vector<Branch> branches_;
    bool marked_ = true;
};

/// The family E^{a/(re)} = t^l E^k for a = r l + k, 0 <= a <= r e.
std::vector<Lattice> refine_branch_filtration(const ParabolicPoint& p, int e);

/// Coordinates of v in K_Y^{n e}, basis t^c e_i at index i e + c.
Vec restrict_vector(const Vec& v, int e, const Scalar& u);
/// L as a lattice over the target ring A = k[[w]], w = u t^e.
Lattice restrict_scalars(const Lattice& l, int e, const Scalar& u);
/// A K_X-linear matrix as a K_Y-linear one, column by column.
Matrix restrict_matrix(const Matrix& a, int e, const Scalar& u);
/// The same matrix assembled from the e x e multiplication blocks of t^m.
Matrix restrict_matrix_blockwise(const Matrix& a, int e, const Scalar& u);

ParabolicPoint pushforward_parabolic(const CoverProfile& profile, const std::vector<ParabolicPoint>& branches);
GradedModule pushforward_graded(const CoverProfile& profile, const std::vector<GradedModule>& branches);
/// Block-diagonal image of branchwise morphisms.
Matrix pushforward_matrix(const CoverProfile& profile, const std::vector<Matrix>& maps);
/// Stack-side counterpart built from multiplication blocks.
Matrix pushforward_matrix_graded(const CoverProfile& profile, const std::vector<Matrix>& maps);

struct LinePullback {
    long twist;
    Weight weight;
};
/// Twist floor(alpha e) and weight {alpha e}. Error(InadmissibleWeight) unless
/// the denominator of alpha divides r e.
LinePullback pullback_parabolic_line(const Weight& alpha, int e, int r);

/// The pulled chain together with the data it was built from.
struct PulledPoint {
    ParabolicPoint point;
    /// iota(G) for the adapted basis G used.
    Matrix basis;
    /// The pulled rank-one chains, whose sum iota(G) maps onto `point`.
    std::vector<ParabolicPoint> lines;
    std::vector<long> twists;
};

struct PulledGraded {
    GradedModule module;
    Matrix basis;
    std::vector<GradedModule> lines;
};

ParabolicPoint pullback_parabolic(const CoverProfile& profile, const ParabolicPoint& f, const std::string& branch);
PulledPoint pullback_parabolic(const CoverProfile& profile, const ParabolicPoint& f, const std::string& branch,
                               const LineSplitting& split);
GradedModule pullback_graded(const CoverProfile& profile, const GradedModule& m, const std::string& branch);
PulledGraded pullback_graded(const CoverProfile& profile, const GradedModule& m, const std::string& branch,
                             const GradedSplitting& split);
/// iota: the target coordinate w becomes u t^e.
Matrix pullback_matrix(const CoverProfile& profile, const Matrix& a, const std::string& branch);

/// A random admissible profile: s <= max_order, each e_j a divisor of s, and
/// u_j = 1 or a random nonzero scalar.
CoverProfile random_profile(Field f, Rng& rng, int max_order = 6, int max_branches = 3);

/// A global cover of degree deg_f with one profile per target point.
struct CoverScenario {
    long degree = 1;
    std::map<std::string, CoverProfile> profiles;
};

/// f^* of a bundle: points are labelled "y/x"; the underlying degree is
/// deg f * deg F plus the local twists read off the pulled lattices.
/// Error(ProfileMismatch) if a marked point has no profile or a profile's
/// ramification does not add up to deg f.
ParabolicBundle pullback_bundle(const CoverScenario& cover, const ParabolicBundle& f);

}  // namespace parstack

#endif
