/*
 *  Copyright 2026 The paoi Authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace paoi {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent configuration (distribution text, weights, spec files).
class ConfigError : public Error {
public:
    using Error::Error;
};

// A decision object that cannot be evaluated or simulated, e.g. a frequency
// below the admissible floor or a sampler that does not match the server mode.
class PolicyError : public Error {
public:
    using Error::Error;
};

// Iterative solver hit its iteration cap before meeting its tolerance.
class NonConvergence : public Error {
public:
    using Error::Error;
};

// A simulated source delivered too few packets for its statistics to be trusted.
class InsufficientDeliveries : public Error {
public:
    using Error::Error;
};

}  // namespace paoi
