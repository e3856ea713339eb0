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

#include "common/timeutil.h"

#include <cstdio>

namespace amhs {
namespace {

using namespace std::chrono;

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  bool Digits(int count, int *out) {
    if (pos_ + count > s_.size()) return false;
    int v = 0;
    for (int i = 0; i < count; ++i) {
      char c = s_[pos_ + i];
      if (c < '0' || c > '9') return false;
      v = v * 10 + (c - '0');
    }
    pos_ += count;
    *out = v;
    return true;
  }
  bool Expect(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool ExpectAny(std::string_view options) {
    if (pos_ < s_.size() && options.find(s_[pos_]) != std::string_view::npos) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::optional<char> Peek() const {
    if (pos_ < s_.size()) return s_[pos_];
    return std::nullopt;
  }
  void Skip() { ++pos_; }
  bool AtEnd() const { return pos_ == s_.size(); }

 private:
  std::string_view s_;
  size_t pos_ = 0;
};

std::optional<UtcDate> ReadDate(Cursor &c) {
  int y, m, d;
  if (!c.Digits(4, &y) || !c.Expect('-') || !c.Digits(2, &m) ||
      !c.Expect('-') || !c.Digits(2, &d)) {
    return std::nullopt;
  }
  year_month_day ymd{year{y}, month{static_cast<unsigned>(m)},
                     day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return sys_days{ymd};
}

}  // namespace

std::optional<UtcTime> ParseRfc3339(std::string_view text) {
  Cursor c(text);
  auto date = ReadDate(c);
  if (!date || !c.ExpectAny("Tt ")) return std::nullopt;
  int hh, mm, ss;
  if (!c.Digits(2, &hh) || !c.Expect(':') || !c.Digits(2, &mm) ||
      !c.Expect(':') || !c.Digits(2, &ss)) {
    return std::nullopt;
  }
  if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
  if (c.Expect('.')) {
    int digit;
    int n = 0;
    while (c.Digits(1, &digit)) ++n;
    if (n == 0) return std::nullopt;
  }
  int offset_minutes = 0;
  if (c.ExpectAny("Zz")) {
    // UTC
  } else {
    auto sign = c.Peek();
    if (!sign || (*sign != '+' && *sign != '-')) return std::nullopt;
    c.Skip();
    int oh, om;
    if (!c.Digits(2, &oh) || !c.Expect(':') || !c.Digits(2, &om)) {
      return std::nullopt;
    }
    if (oh > 23 || om > 59) return std::nullopt;
    offset_minutes = (oh * 60 + om) * (*sign == '-' ? -1 : 1);
  }
  if (!c.AtEnd()) return std::nullopt;
  UtcTime local = *date + hours{hh} + minutes{mm} + seconds{ss};
  return local - minutes{offset_minutes};
}

std::optional<UtcDate> ParseDate(std::string_view text) {
  Cursor c(text);
  auto date = ReadDate(c);
  if (!date || !c.AtEnd()) return std::nullopt;
  return date;
}

std::string FormatRfc3339(UtcTime t) {
  auto days = floor<std::chrono::days>(t);
  year_month_day ymd{days};
  hh_mm_ss<seconds> tod{t - days};
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02ld:%02ld:%02ldZ",
                static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()),
                static_cast<long>(tod.hours().count()),
                static_cast<long>(tod.minutes().count()),
                static_cast<long>(tod.seconds().count()));
  return buf;
}

std::string FormatDate(UtcDate d) {
  year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u",
                static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

}  // namespace amhs
