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

// Compares the three receivers on one small configuration.

#include "fama/fama.hpp"

#include <cstdio>

int main()
{
    fama::ExperimentConfig config;
    config.users = 10;
    config.ports = 100;
    config.aperture = 10.0;
    config.num_trials = 500;

    const fama::CorrelationModel model(config.geometry());
    for (auto scheme : {fama::SchemeKind::AllPort, fama::SchemeKind::Turbo, fama::SchemeKind::FastFama})
    {
        config.scheme = scheme;
        const fama::SerRecord r = fama::run_experiment(config, model);
        std::printf("%-8s SER %.4f  (%lld errors / %lld symbols)\n", fama::to_string(scheme).data(), r.ser,
                    static_cast<long long>(r.symbol_errors), static_cast<long long>(r.symbols_total));
    }
    return 0;
}
