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

#ifndef AMHS_COMMON_LOG_H_
#define AMHS_COMMON_LOG_H_

#include <spdlog/spdlog.h>

namespace amhs {

// Process-wide logger writing to stderr. Data never goes through it.
spdlog::logger &Log();

void SetLogLevel(spdlog::level::level_enum level);

}  // namespace amhs

#endif  // AMHS_COMMON_LOG_H_
