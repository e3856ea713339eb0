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

#ifndef AMHS_COMMON_TIMEUTIL_H_
#define AMHS_COMMON_TIMEUTIL_H_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace amhs {

using UtcTime = std::chrono::sys_seconds;
using UtcDate = std::chrono::sys_days;

// Parses an RFC 3339 timestamp ("2020-01-02T03:04:05Z",
// "2020-01-02T06:04:05.250+03:00") and returns it in UTC. Fractional seconds
// are truncated. Returns nullopt on any syntax or range error.
std::optional<UtcTime> ParseRfc3339(std::string_view text);

// "YYYY-MM-DD".
std::optional<UtcDate> ParseDate(std::string_view text);

// Canonical "YYYY-MM-DDTHH:MM:SSZ".
std::string FormatRfc3339(UtcTime t);

std::string FormatDate(UtcDate d);

}  // namespace amhs

#endif  // AMHS_COMMON_TIMEUTIL_H_
