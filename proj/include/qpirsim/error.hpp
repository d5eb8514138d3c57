// Copyright 2026 The qpirsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QPIRSIM_ERROR_HPP
#define QPIRSIM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qpirsim {

enum class Errc {
    NotPrime,
    ReducibleModulus,
    DivisionByZero,
    FieldMismatch,
    NotASubfieldTower,
    BadFieldSpec,
    Singular,
    DuplicatePoints,
    OverlappingSets,
    DimensionMismatch,
    LengthMismatch,
    TooLargeToEnumerate,
    NoInformationSetAvoidingForbidden,
    ZeroMultiplier,
    BadParameters,
    IndivisibleLocality,
    FieldTooSmall,
    Ambiguous,
    NoneInRadius,
    NotSelfOrthogonal,
    NotSymplectic,
    NotStronglySelfOrthogonal,
    NotCompleting,
    DegenerateMultipliers,
    NoPhaseAssignmentFound,
    InfeasibleParameters,
    DecodingAmbiguous,
    EnumerationTooLarge,
    OutOfRange,
    NoWeaklySelfDualStarCode,
    ParameterInfeasible,
    BadMatrixText,
};

const char* errc_name(Errc code);

// All library failures surface as this type; `code()` names the failure kind.
class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace qpirsim

#endif  // QPIRSIM_ERROR_HPP
