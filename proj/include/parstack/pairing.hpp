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


#ifndef PARSTACK_PAIRING_HPP
#define PARSTACK_PAIRING_HPP

#include <string>
#include <vector>

#include "parstack/functors.hpp"

namespace parstack {

enum class FormKind { Symmetric, Antisymmetric };

const char* kind_name(FormKind k);

/// A rank-one chain with E^0 = t^base R and weight w.
struct LineType {
    int base = 0;
    Weight weight;
    friend bool operator==(const LineType&, const LineType&) = default;
};

/// Error(ShapeMismatch) unless l has rank one.
LineType line_type(const ParabolicPoint& l);
/// The chain of the given order; the order must be a multiple of the weight's denominator.
ParabolicPoint line_point(const LineType& l, int order);
LineType dual_line(const LineType& l);
LineType tensor_lines(const LineType& a, const LineType& b);

/// Hom(E, L) as a filtered lattice: level alpha is the set of y with
/// y^T E_g ⊆ L_{g + alpha} for all g. Its order is lcm(r_E, r_L).
ParabolicPoint dual_point(const ParabolicPoint& e, const ParabolicPoint& l);
ParabolicPoint dual_point(const ParabolicPoint& e);
/// E ⊗ L for a rank-one L, as sums of shifted levels.
ParabolicPoint tensor_line(const ParabolicPoint& e, const ParabolicPoint& l);

bool has_kind(const Matrix& form, FormKind kind);

/// x, y -> x^T form y with values in the rank-one chain `value_line`.
struct LocalPairing {
    Matrix form;
    FormKind kind = FormKind::Symmetric;
    ParabolicPoint value_line;
};

struct ParabolicPairing {
    ParabolicBundle value_line;
    Matrix form;
    FormKind kind = FormKind::Symmetric;
};

/// Kind holds and x -> form^T x maps E onto Hom(E, L) level by level.
/// Error(ShapeMismatch) on size mismatch.
bool check_pairing(const LocalPairing& p, const ParabolicPoint& e);
/// Every marked point of E must appear in the value line (Error(ValueLineMismatch)).
bool check_pairing(const ParabolicPairing& p, const ParabolicBundle& e);

struct TransportedPairing {
    LocalPairing pairing;
    ParabolicPoint bundle;
};

/// Form iota(form) on the pulled chain, valued in the pulled line.
/// Error(NotAPairing) if the input pairing is not perfect.
TransportedPairing pullback_pairing(const CoverProfile& profile, const LocalPairing& p, const ParabolicPoint& e,
                                    const std::string& branch);

/// The pairing on restricted coordinates obtained by taking the t^0 coordinate
/// of x^T form y over each branch. Branch pairings must be valued in the
/// pullback of `target_line` (Error(ValueLineMismatch)).
TransportedPairing pushforward_pairing(const CoverProfile& profile, const std::vector<LocalPairing>& pairings,
                                       const std::vector<ParabolicPoint>& branches, const ParabolicPoint& target_line);
/// Block-diagonal matrix of the t^0-coordinate functional.
Matrix pushforward_form(const CoverProfile& profile, const std::vector<Matrix>& forms);
/// The same functional computed as (1/e) times the trace of multiplication
/// blocks; needs e invertible in the field.
Matrix pushforward_form_trace(const CoverProfile& profile, const std::vector<Matrix>& forms);

struct PairingInstance {
    ParabolicPoint bundle;
    LocalPairing pairing;
};

/// A perfect pairing valued in `value_line` built from `blocks` orthogonal
/// pieces: hyperbolic pairs of lines l, dual(l) ⊗ L, and for symmetric kind
/// also self-dual lines, conjugated by a random unimodular matrix.
PairingInstance random_pairing(const ParabolicPoint& value_line, std::size_t blocks, FormKind kind, Field f, Rng& rng);

}  // namespace parstack

#endif
