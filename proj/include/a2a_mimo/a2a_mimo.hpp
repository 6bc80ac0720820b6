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

#ifndef A2A_MIMO_HPP
#define A2A_MIMO_HPP

#include "antenna.hpp"
#include "channel.hpp"
#include "errors.hpp"
#include "montecarlo.hpp"
#include "network_geometry.hpp"
#include "propagation.hpp"
#include "random.hpp"
#include "receiver.hpp"
#include "results_io.hpp"
#include "scenario_config.hpp"
#include "scenario_io.hpp"
#include "text.hpp"
#include "version.hpp"

#endif
