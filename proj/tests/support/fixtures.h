// Copyright 2026 The amhs Authors.
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

#ifndef AMHS_TESTS_SUPPORT_FIXTURES_H_
#define AMHS_TESTS_SUPPORT_FIXTURES_H_

#include <cstdlib>
#include <filesystem>
#include <string>

namespace amhs::testing {

inline std::string FixturePath(const std::string &name) {
  const char *dir = std::getenv("AMHS_FIXTURES");
  return std::string(dir ? dir : "tests/fixtures") + "/" + name;
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path ScratchDir(const std::string &name) {
  auto dir = std::filesystem::temp_directory_path() / ("amhs_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace amhs::testing

#endif  // AMHS_TESTS_SUPPORT_FIXTURES_H_
