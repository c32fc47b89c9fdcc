// Copyright 2026 The qmeas Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qmeas {

/// Base class for all qmeas errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatch : Error {
    using Error::Error;
};
struct NonSquare : Error {
    using Error::Error;
};
struct NotHermitian : Error {
    using Error::Error;
};
struct NotUnitary : Error {
    using Error::Error;
};
struct NotPositive : Error {
    using Error::Error;
};
struct NotComplete : Error {
    using Error::Error;
};
struct NotOrthogonal : Error {
    using Error::Error;
};
struct ProbabilityNotNormalized : Error {
    using Error::Error;
};
struct IncompleteKrausSet : Error {
    using Error::Error;
};
struct OrthogonalSelection : Error {
    using Error::Error;
};
struct InvalidProbability : Error {
    using Error::Error;
};
struct NoPostSelectedSamples : Error {
    using Error::Error;
};
struct ShiftOutOfGrid : Error {
    using Error::Error;
};
struct IndexOutOfRange : Error {
    using Error::Error;
};
struct StepTooLarge : Error {
    using Error::Error;
};
struct UnknownExperiment : Error {
    using Error::Error;
};
struct InvalidParameter : Error {
    using Error::Error;
};
struct IoFailure : Error {
    using Error::Error;
};

/// Catch-all for violated value-type invariants that have no dedicated error.
struct InvalidArgument : Error {
    using Error::Error;
};

}  // namespace qmeas
