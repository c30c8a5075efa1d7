// Copyright 2026 The migsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace migsim {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// Layout cannot be built (too few sites, non-positive spacing).
class InvalidGeometry : public Error {
public:
    using Error::Error;
};

/// Two atoms sit on top of each other, so a power-law interaction diverges.
class SingularGeometry : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class CalibrationError : public Error {
public:
    using Error::Error;
};

class InvalidInstruction : public Error {
public:
    using Error::Error;
};

/// Full-model state space would exceed the configured dimension cap.
class CapacityExceeded : public Error {
public:
    using Error::Error;
};

/// Too many realizations of an ensemble failed.
class EnsembleFailure : public Error {
public:
    using Error::Error;
};

/// A density-matrix invariant was breached during time integration.
class IntegrationFailure : public Error {
public:
    IntegrationFailure(const std::string& what, double time_us)
        : Error(what + " (t = " + std::to_string(time_us) + " us)"), time_(time_us) {}

    double time() const noexcept { return time_; }

private:
    double time_;
};

}  // namespace migsim
