// Copyright 2026 The ldaqc Authors
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

#include <cstdint>
#include <string>
#include <vector>

namespace ldaqc {

struct SelfTestCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Brute-force oracle suite: exhaustive 2^N subset scans and dense
/// reference propagation checked against the library on random graphs.
std::vector<SelfTestCheck> run_selftest(std::uint64_t seed = 7);

std::string selftest_to_json(const std::vector<SelfTestCheck>& checks);

}  // namespace ldaqc
