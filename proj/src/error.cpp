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

#include "qpirsim/error.hpp"

namespace qpirsim {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::NotPrime: return "NotPrime";
        case Errc::ReducibleModulus: return "ReducibleModulus";
        case Errc::DivisionByZero: return "DivisionByZero";
        case Errc::FieldMismatch: return "FieldMismatch";
        case Errc::NotASubfieldTower: return "NotASubfieldTower";
        case Errc::BadFieldSpec: return "BadFieldSpec";
        case Errc::Singular: return "Singular";
        case Errc::DuplicatePoints: return "DuplicatePoints";
        case Errc::OverlappingSets: return "OverlappingSets";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::TooLargeToEnumerate: return "TooLargeToEnumerate";
        case Errc::NoInformationSetAvoidingForbidden: return "NoInformationSetAvoidingForbidden";
        case Errc::ZeroMultiplier: return "ZeroMultiplier";
        case Errc::BadParameters: return "BadParameters";
        case Errc::IndivisibleLocality: return "IndivisibleLocality";
        case Errc::FieldTooSmall: return "FieldTooSmall";
        case Errc::Ambiguous: return "Ambiguous";
        case Errc::NoneInRadius: return "NoneInRadius";
        case Errc::NotSelfOrthogonal: return "NotSelfOrthogonal";
        case Errc::NotSymplectic: return "NotSymplectic";
        case Errc::NotStronglySelfOrthogonal: return "NotStronglySelfOrthogonal";
        case Errc::NotCompleting: return "NotCompleting";
        case Errc::DegenerateMultipliers: return "DegenerateMultipliers";
        case Errc::NoPhaseAssignmentFound: return "NoPhaseAssignmentFound";
        case Errc::InfeasibleParameters: return "InfeasibleParameters";
        case Errc::DecodingAmbiguous: return "DecodingAmbiguous";
        case Errc::EnumerationTooLarge: return "EnumerationTooLarge";
        case Errc::OutOfRange: return "OutOfRange";
        case Errc::NoWeaklySelfDualStarCode: return "NoWeaklySelfDualStarCode";
        case Errc::ParameterInfeasible: return "ParameterInfeasible";
        case Errc::BadMatrixText: return "BadMatrixText";
    }
    return "Unknown";
}

}  // namespace qpirsim
