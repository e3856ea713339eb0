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

#include "textnorm/normalizer.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "common/error.h"
#include "common/fileutil.h"
#include "textnorm/utf8.h"

namespace amhs::textnorm {
namespace {

constexpr char32_t kWordspace = 0x1361;

// Maps `count` consecutive codepoints starting at `from` onto `to`.
void AddRun(NormalizationTable &t, char32_t from, char32_t to, int count) {
  for (int i = 0; i < count; ++i) t.Add(from + i, to + i);
}

std::u32string Nfc(std::u32string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2 *nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) Fail(ErrorCode::kInternal, "ICU NFC unavailable");
  std::string utf8 = EncodeUtf8(text);
  icu::UnicodeString src = icu::UnicodeString::fromUTF8(utf8);
  icu::UnicodeString dst = nfc->normalize(src, status);
  if (U_FAILURE(status)) Fail(ErrorCode::kInternal, "ICU NFC failed");
  std::string out;
  dst.toUTF8String(out);
  return DecodeUtf8(out);
}

bool IsSpace(char32_t c) {
  return u_hasBinaryProperty(static_cast<UChar32>(c), UCHAR_WHITE_SPACE);
}

bool IsEmoji(char32_t c) {
  auto uc = static_cast<UChar32>(c);
  return u_hasBinaryProperty(uc, UCHAR_EXTENDED_PICTOGRAPHIC) ||
         u_hasBinaryProperty(uc, UCHAR_EMOJI_MODIFIER) ||
         u_hasBinaryProperty(uc, UCHAR_REGIONAL_INDICATOR);
}

// Zero-width pieces of emoji sequences: ZWJ, variation selectors, combining
// keycap, tag characters.
bool IsEmojiGlue(char32_t c) {
  return c == 0x200D || (c >= 0xFE00 && c <= 0xFE0F) || c == 0x20E3 ||
         (c >= 0xE0020 && c <= 0xE007F);
}

bool IsPunctOrSymbol(char32_t c) {
  int32_t mask = U_GET_GC_MASK(static_cast<UChar32>(c));
  return (mask & (U_GC_P_MASK | U_GC_S_MASK)) != 0;
}

bool IsNumber(char32_t c) {
  return (U_GET_GC_MASK(static_cast<UChar32>(c)) & U_GC_N_MASK) != 0;
}

bool IsDroppedControl(char32_t c) {
  int32_t mask = U_GET_GC_MASK(static_cast<UChar32>(c));
  return (mask & (U_GC_CC_MASK | U_GC_CF_MASK | U_GC_CS_MASK)) != 0 &&
         !IsSpace(c);
}

char32_t AsciiLower(char32_t c) {
  return (c >= 'A' && c <= 'Z') ? c + ('a' - 'A') : c;
}

bool StartsWithNoCase(std::u32string_view s, size_t pos,
                      std::u32string_view prefix) {
  if (pos + prefix.size() > s.size()) return false;
  for (size_t i = 0; i < prefix.size(); ++i) {
    if (AsciiLower(s[pos + i]) != prefix[i]) return false;
  }
  return true;
}

size_t SkipToSpace(std::u32string_view s, size_t pos) {
  while (pos < s.size() && !IsSpace(s[pos])) ++pos;
  return pos;
}

}  // namespace

NormalizationTable NormalizationTable::Default() {
  NormalizationTable t;
  // ሐ, ኀ, ኸ (seven vowel orders) -> ሀ series.
  AddRun(t, 0x1210, 0x1200, 7);
  AddRun(t, 0x1280, 0x1200, 7);
  AddRun(t, 0x12B8, 0x1200, 7);
  // Fused -oa forms.
  t.Add(0x1287, 0x1207);
  // The ሀ series has no labialized row; the ኀ row (ኈ ኊ ኋ ኌ ኍ) is the
  // canonical labialized h-family and the other families fold into it.
  t.Add(0x1217, 0x128B);
  t.Add(0x12C0, 0x1288);
  AddRun(t, 0x12C2, 0x128A, 4);
  // ሠ -> ሰ, including ሧ -> ሷ.
  AddRun(t, 0x1220, 0x1230, 8);
  // ዐ -> አ.
  AddRun(t, 0x12D0, 0x12A0, 7);
  // ፀ -> ጸ, including ፇ -> ጿ.
  AddRun(t, 0x1340, 0x1338, 8);
  return t;
}

NormalizationTable NormalizationTable::FromFile(const std::string &path,
                                                bool extend) {
  NormalizationTable t = extend ? Default() : NormalizationTable();
  auto lines = ReadLines(path);
  for (size_t n = 0; n < lines.size(); ++n) {
    const std::string &line = lines[n];
    if (line.empty() || line[0] == '#') continue;
    size_t tab = line.find('\t');
    std::u32string from, to;
    if (tab != std::string::npos) {
      from = DecodeUtf8(std::string_view(line).substr(0, tab));
      to = DecodeUtf8(std::string_view(line).substr(tab + 1));
    }
    if (from.size() != 1 || to.size() != 1) {
      Fail(ErrorCode::kParse, path + ":" + std::to_string(n + 1) +
                                  ": expected one codepoint on each side of a "
                                  "tab");
    }
    t.Add(from[0], to[0]);
  }
  return t;
}

void NormalizationTable::Add(char32_t from, char32_t to) {
  if (from == to) return;
  auto existing = map_.find(from);
  if (existing != map_.end()) {
    if (existing->second == to) return;
    Fail(ErrorCode::kInvalidArgument,
         "conflicting normalization entries for U+" +
             std::to_string(static_cast<uint32_t>(from)));
  }
  if (map_.count(to)) {
    Fail(ErrorCode::kInvalidArgument,
         "normalization target is itself folded away: U+" +
             std::to_string(static_cast<uint32_t>(to)));
  }
  for (const auto &[key, value] : map_) {
    if (value == from) {
      Fail(ErrorCode::kInvalidArgument,
           "normalization source is already a target: U+" +
               std::to_string(static_cast<uint32_t>(from)));
    }
  }
  map_.emplace(from, to);
}

bool IsRemovedEthiopicPunct(char32_t c) { return c >= 0x1360 && c <= 0x1368; }

std::string Normalizer::Normalize(std::string_view text) const {
  if (text.empty()) return {};
  std::u32string s = Nfc(DecodeUtf8(text));

  for (char32_t &c : s) {
    c = table_.Map(c);
    if (c == kWordspace) c = U' ';
  }

  std::u32string cleaned;
  cleaned.reserve(s.size());
  for (size_t i = 0; i < s.size();) {
    char32_t c = s[i];
    if (StartsWithNoCase(s, i, U"http://") ||
        StartsWithNoCase(s, i, U"https://") ||
        StartsWithNoCase(s, i, U"www.")) {
      i = SkipToSpace(s, i);
      cleaned.push_back(U' ');
      continue;
    }
    if (c == U'@' && i + 1 < s.size() && !IsSpace(s[i + 1])) {
      i = SkipToSpace(s, i);
      cleaned.push_back(U' ');
      continue;
    }
    ++i;
    if (c == U'#' || IsEmojiGlue(c) || IsNumber(c) || IsDroppedControl(c)) {
      continue;
    }
    if (IsEmoji(c) || IsPunctOrSymbol(c) || IsSpace(c)) {
      cleaned.push_back(U' ');
      continue;
    }
    cleaned.push_back(c);
  }

  std::u32string collapsed;
  collapsed.reserve(cleaned.size());
  for (char32_t c : cleaned) {
    if (c == U' ') {
      if (!collapsed.empty() && collapsed.back() != U' ') {
        collapsed.push_back(c);
      }
    } else {
      collapsed.push_back(c);
    }
  }
  if (!collapsed.empty() && collapsed.back() == U' ') collapsed.pop_back();
  return EncodeUtf8(Nfc(collapsed));
}

CleanDocument Normalizer::Clean(std::string id, std::string raw_text) const {
  CleanDocument doc;
  doc.id = std::move(id);
  doc.norm_text = Normalize(raw_text);
  doc.raw_text = std::move(raw_text);
  doc.tokens = Tokenize(doc.norm_text);
  return doc;
}

const Normalizer &DefaultNormalizer() {
  static const Normalizer *instance = new Normalizer();
  return *instance;
}

std::vector<std::string> Tokenize(std::string_view norm_text) {
  std::vector<std::string> tokens;
  size_t start = 0;
  while (start < norm_text.size()) {
    size_t end = norm_text.find(' ', start);
    if (end == std::string_view::npos) end = norm_text.size();
    if (end > start) tokens.emplace_back(norm_text.substr(start, end - start));
    start = end + 1;
  }
  return tokens;
}

}  // namespace amhs::textnorm
