// SPDX-License-Identifier: Apache-2.0
//
// fama-bench: link-level simulator for fluid antenna multiple access
// Copyright (C) 2026 The fama-bench authors
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

#ifndef FAMA_FAMA_HPP
#define FAMA_FAMA_HPP

#include "fama/bessel.hpp"
#include "fama/dataset.hpp"
#include "fama/fas_channel.hpp"
#include "fama/harness.hpp"
#include "fama/phy_signal.hpp"
#include "fama/port_select.hpp"
#include "fama/rng.hpp"
#include "fama/schemes.hpp"
#include "fama/svg_plot.hpp"

#endif // FAMA_FAMA_HPP
