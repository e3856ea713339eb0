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

#ifndef AMHS_TESTS_SUPPORT_RANDOM_TEXT_H_
#define AMHS_TESTS_SUPPORT_RANDOM_TEXT_H_

#include <string>

#include "common/rng.h"
#include "textnorm/utf8.h"

namespace amhs::testing {

// Random Unicode strings biased toward the characters the normalizer has
// rules for: Ethiopic syllables and punctuation, homophone families, Latin,
// digits, emoji sequences, combining marks, whitespace, URL and mention
// fragments, plus arbitrary scalar values.
class RandomText {
 public:
  explicit RandomText(uint64_t seed) : rng_(seed) {}

  std::string Next() {
    std::u32string out;
    int pieces = static_cast<int>(rng_.Below(12));
    for (int i = 0; i < pieces; ++i) AppendPiece(out);
    return textnorm::EncodeUtf8(out);
  }

 private:
  char32_t Range(char32_t lo, char32_t hi) {
    return lo + static_cast<char32_t>(rng_.Below(hi - lo + 1));
  }

  void AppendPiece(std::u32string &out) {
    switch (rng_.Below(14)) {
      case 0: out += Range(0x1200, 0x137F); break;
      case 1: out += Range(0x1210, 0x1217); break;
      case 2: out += Range(0x1340, 0x1347); break;
      case 3: out += Range(0x1360, 0x1368); break;
      case 4: out += Range(U'a', U'z'); break;
      case 5: out += Range(U'0', U'9'); break;
      case 6: out += Range(0x21, 0x2F); break;
      case 7: out += Range(0x0300, 0x036F); break;
      case 8: {
        const char32_t spaces[] = {U' ', U'\t', U'\n', 0x00A0, 0x3000, 0x2028};
        out += spaces[rng_.Below(6)];
        break;
      }
      case 9: {
        const char32_t *frags[] = {U"http://", U"https://a.b/", U"www.",
                                   U"@", U"#", U"@u", U"#ጥ"};
        out += frags[rng_.Below(7)];
        break;
      }
      case 10: {
        out += Range(0x1F300, 0x1FAFF);
        if (rng_.Bernoulli(0.3)) out += 0xFE0F;
        if (rng_.Bernoulli(0.2)) out += 0x200D;
        if (rng_.Bernoulli(0.2)) out += Range(0x1F3FB, 0x1F3FF);
        break;
      }
      case 11: out += Range(0x00C0, 0x024F); break;
      case 12: {
        char32_t c = Range(0x1, 0x10FFFF);
        if (c >= 0xD800 && c <= 0xDFFF) c = 0xFFFD;
        out += c;
        break;
      }
      default: out += Range(0x0600, 0x06FF); break;
    }
  }

  Rng rng_;
};

}  // namespace amhs::testing

#endif  // AMHS_TESTS_SUPPORT_RANDOM_TEXT_H_
