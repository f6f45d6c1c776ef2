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


#ifndef PARSTACK_IO_HPP
#define PARSTACK_IO_HPP

#include <map>
#include <optional>
#include <string>

#include "json.hpp"
#include "parstack/pairing.hpp"

namespace parstack::io {

using nlohmann::json;

inline constexpr int kFormatVersion = 1;

// Elements are {"t_order": k, "coeffs": ["1", "-2/3"]}; matrices are
// {"rows": m, "cols": n, "columns": [[element, ...], ...]} (column-major).
// Writers print every scalar as an element of f.
json to_json(const Scalar& s, Field f = Field::rational());
json to_json(const LocalElement& x, Field f = Field::rational());
json to_json(const Matrix& m, Field f = Field::rational());
json to_json(const Lattice& l, Field f = Field::rational());
json to_json(const ParabolicPoint& p, Field f = Field::rational());
json to_json(const GradedModule& m, Field f = Field::rational());
json to_json(const CoverProfile& p, Field f = Field::rational());
json to_json(const WeightMultiset& w);

// Readers take the JSON path of the value for error messages and raise
// Error(ParseError) for malformed input or Error(ValidationError) (or the
// more specific code, such as InadmissibleProfile) for values that parse but
// violate an invariant.
Scalar scalar_from_json(const json& j, Field f, const std::string& path);
LocalElement element_from_json(const json& j, Field f, const std::string& path);
Matrix matrix_from_json(const json& j, Field f, const std::string& path);
Lattice lattice_from_json(const json& j, Field f, const std::string& path);
/// Either {"order": r, "chain": [...]} or the shorthand
/// {"weights": [["1/2", 1], ...], "order": r?}, which expands to a diagonal chain.
ParabolicPoint point_from_json(const json& j, Field f, const std::string& path);
GradedModule graded_from_json(const json& j, Field f, const std::string& path);
CoverProfile profile_from_json(const json& j, Field f, const std::string& path);
Weight weight_from_json(const json& j, const std::string& path);
FormKind kind_from_json(const json& j, const std::string& path);

enum class Side { Parabolic, Graded };
const char* side_name(Side s);

/// Local data of one bundle: chains or graded modules keyed by point label.
struct Bundle {
    std::size_t rank = 0;
    std::optional<long> degree;
    std::map<std::string, ParabolicPoint> chains;
    std::map<std::string, GradedModule> graded;
};

struct PairingBlock {
    FormKind kind = FormKind::Symmetric;
    /// Rank-one chains on the target, keyed by target point.
    std::map<std::string, ParabolicPoint> value_line;
    /// Form on the target bundle (used by pull).
    std::optional<Matrix> form;
    /// Forms on the source objects keyed "y/x" (used by push).
    std::map<std::string, Matrix> source_forms;
};

/// A complete input file. Target points are labelled y; source points over y
/// are labelled "y/x" for a branch x of y's profile.
struct Scenario {
    Field field = Field::rational();
    Side side = Side::Parabolic;
    std::optional<long> cover_degree;
    std::map<std::string, CoverProfile> cover;
    std::optional<Bundle> target;
    std::optional<Bundle> source;
    std::optional<PairingBlock> pairing;
};

Scenario scenario_from_json(const json& j);
json to_json(const Scenario& s);
/// Parses text; Error(ParseError) with position information on bad syntax.
json parse_text(const std::string& text, const std::string& origin);

}  // namespace parstack::io

#endif
