// Copyright 2026 The wordorder Authors.
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

#include "wordorder/unicode_text.h"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <cstdint>

namespace wordorder {
namespace {

struct Decoded {
  char32_t code_point;
  std::size_t next;
  bool valid;
};

Decoded DecodeAt(std::string_view text, std::size_t offset) {
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(text.data());
  const auto length = static_cast<std::int32_t>(text.size());
  auto i = static_cast<std::int32_t>(offset);
  UChar32 c;
  U8_NEXT(bytes, i, length, c);
  if (c < 0) return {0xFFFD, static_cast<std::size_t>(i), false};
  return {static_cast<char32_t>(c), static_cast<std::size_t>(i), true};
}

void AppendUtf8(std::string& out, char32_t cp) {
  char buffer[U8_MAX_LENGTH];
  std::int32_t length = 0;
  UBool error = false;
  U8_APPEND(reinterpret_cast<std::uint8_t*>(buffer), length, U8_MAX_LENGTH,
            static_cast<UChar32>(cp), error);
  if (!error) out.append(buffer, static_cast<std::size_t>(length));
}

}  // namespace

std::vector<std::string> SplitOnWhitespace(std::string_view text) {
  std::vector<std::string> pieces;
  std::string current;
  std::size_t i = 0;
  while (i < text.size()) {
    const Decoded d = DecodeAt(text, i);
    if (d.valid && u_isUWhiteSpace(static_cast<UChar32>(d.code_point))) {
      if (!current.empty()) {
        pieces.push_back(std::move(current));
        current.clear();
      }
    } else {
      current.append(text.substr(i, d.next - i));
    }
    i = d.next;
  }
  if (!current.empty()) pieces.push_back(std::move(current));
  return pieces;
}

bool IsPunctuation(char32_t code_point) {
  switch (code_point) {
    case U'.': case U',': case U'!': case U'?': case U';': case U':':
    case U'؟': case U'؛': case U'،':
      return true;
    default:
      break;
  }
  switch (u_charType(static_cast<UChar32>(code_point))) {
    case U_OTHER_PUNCTUATION:
    case U_START_PUNCTUATION:
    case U_END_PUNCTUATION:
    case U_INITIAL_PUNCTUATION:
    case U_FINAL_PUNCTUATION:
      return true;
    default:
      return false;
  }
}

bool IsAllPunctuation(std::string_view text) {
  if (text.empty()) return false;
  std::size_t i = 0;
  while (i < text.size()) {
    const Decoded d = DecodeAt(text, i);
    if (!d.valid || !IsPunctuation(d.code_point)) return false;
    i = d.next;
  }
  return true;
}

std::size_t LastCodePointOffset(std::string_view text) {
  if (text.empty()) return text.size();
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(text.data());
  auto i = static_cast<std::int32_t>(text.size());
  UChar32 c;
  U8_PREV(bytes, 0, i, c);
  (void)c;
  return static_cast<std::size_t>(i);
}

char32_t FirstCodePoint(std::string_view text) {
  if (text.empty()) return 0xFFFD;
  return DecodeAt(text, 0).code_point;
}

std::string ToLower(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const Decoded d = DecodeAt(text, i);
    if (d.valid) {
      AppendUtf8(out, static_cast<char32_t>(
                          u_tolower(static_cast<UChar32>(d.code_point))));
    } else {
      out.append(text.substr(i, d.next - i));
    }
    i = d.next;
  }
  return out;
}

std::string_view TrimWhitespace(std::string_view text) {
  std::size_t begin = 0;
  while (begin < text.size()) {
    const Decoded d = DecodeAt(text, begin);
    if (!d.valid || !u_isUWhiteSpace(static_cast<UChar32>(d.code_point))) break;
    begin = d.next;
  }
  std::size_t end = text.size();
  while (end > begin) {
    const std::size_t start = LastCodePointOffset(text.substr(0, end));
    const Decoded d = DecodeAt(text, start);
    if (!d.valid || !u_isUWhiteSpace(static_cast<UChar32>(d.code_point))) break;
    end = start;
  }
  return text.substr(begin, end - begin);
}

std::string_view StripBom(std::string_view text) {
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") {
    return text.substr(3);
  }
  return text;
}

}  // namespace wordorder
