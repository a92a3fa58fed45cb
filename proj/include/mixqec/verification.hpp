// Copyright 2026 The mixqec Authors
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

#ifndef MIXQEC_VERIFICATION_HPP
#define MIXQEC_VERIFICATION_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mixqec/analysis.hpp"

namespace mixqec {

struct PropertyResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyOptions {
    int oracle_points = 20;
    int grid = 21;
    uint64_t seed = 20110;
    int workers = 1;
    /// Negative control: swaps rep3+aug for a deliberately broken augmentation.
    bool inject_corruption = false;
};

/// Upper end of the p range on which augmentation dominance is checked. Past
/// p = 1/2 a bit flip is more likely than not and the unaugmented decoder's
/// systematic miscorrection can beat the augmented one.
double dominance_p_max(ChannelFamily family);

/// rep3+aug with the prepended inverse recovery replaced by a bare X on the message.
CodeSpec corrupted_augmented_rep3();

/// Seeded (p, q) sample points in [0, 1]^2.
std::vector<std::pair<double, double>> seeded_points(uint64_t seed, int count);

/// Runs the oracle-equivalence, dominance, purity, maximally-mixed, degree and
/// propagation-path suites over every standard code, reporting each property
/// as it completes.
std::vector<PropertyResult> run_verification(const VerifyOptions &options,
                                             const std::function<void(const PropertyResult &)> &on_result = {});

}  // namespace mixqec

#endif
