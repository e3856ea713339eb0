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

#ifndef AMHS_COMMON_FILEUTIL_H_
#define AMHS_COMMON_FILEUTIL_H_

#include <string>
#include <vector>

namespace amhs {

std::string ReadFile(const std::string &path);

// Splits on '\n', dropping a trailing '\r' from each line. A final empty line
// produced by a terminating newline is not returned.
std::vector<std::string> ReadLines(const std::string &path);

// Writes through a temporary sibling and renames, so readers never observe a
// partially written file. Creates parent directories.
void WriteFileAtomic(const std::string &path, const std::string &content);

// Formats a double so that parsing it back yields the same bits.
std::string FormatDouble(double v);

}  // namespace amhs

#endif  // AMHS_COMMON_FILEUTIL_H_
