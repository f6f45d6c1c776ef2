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

#ifndef PARSTACK_ERRORS_HPP
#define PARSTACK_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace parstack {

enum class Errc {
    SingularBasis,
    AmbientMismatch,
    NotContained,
    InvalidChain,
    ShapeMismatch,
    InvalidGrading,
    ProfileMismatch,
    InadmissibleProfile,
    InadmissibleWeight,
    NotAPairing,
    ValueLineMismatch,
    FieldMismatch,
    ParseError,
    ValidationError,
};

std::string_view errc_name(Errc code) noexcept;

/// All library failures are reported through this type; `code()` names the
/// contract that was violated.
class Error : public std::runtime_error {
   public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const noexcept { return code_; }

   private:
    Errc code_;
};

}  // namespace parstack

#endif
