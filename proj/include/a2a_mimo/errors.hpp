// SPDX-License-Identifier: Apache-2.0
//
// a2a-mimo: Monte Carlo simulator for aerial mmWave MU-MIMO uplinks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef A2A_MIMO_ERRORS_HPP
#define A2A_MIMO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace a2a
{
    // Invalid user-supplied parameters (config files, design inputs).
    class ConfigError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Argument outside the mathematical domain of an operation.
    class DomainError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Quadrature non-convergence, singular factorizations.
    class NumericalError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    namespace detail
    {
        inline void require_positive(double value, const char *name)
        {
            if (!(value > 0.0))
                throw DomainError(std::string(name) + " must be positive (got " + std::to_string(value) + ")");
        }
    }
}

#endif
