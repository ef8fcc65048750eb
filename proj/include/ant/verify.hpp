// Copyright 2026 The ANT Authors. All Rights Reserved.
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

#ifndef ANT_VERIFY_HPP_
#define ANT_VERIFY_HPP_

// Exhaustive self-checks of the codec and PE datapath. `ant verify` runs
// these and exits non-zero if any fail.

#include <string>
#include <vector>

namespace ant {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<CheckResult> run_oracle_suite();

}  // namespace ant

#endif  // ANT_VERIFY_HPP_
