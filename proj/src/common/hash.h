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

#ifndef AMHS_COMMON_HASH_H_
#define AMHS_COMMON_HASH_H_

#include <string>
#include <string_view>

namespace amhs {

// Lower-case hex SHA-256 digest.
std::string Sha256Hex(std::string_view data);

// SHA-256 of a whole file; throws Error(kIo) if unreadable.
std::string Sha256File(const std::string &path);

// One-way author identifier used in RawPost.author_hash.
std::string HashAuthor(std::string_view platform, std::string_view author);

}  // namespace amhs

#endif  // AMHS_COMMON_HASH_H_
