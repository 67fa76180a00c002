#pragma once

#include <string>
#include <string_view>

namespace clusim::unicode {

// Decodes UTF-8 into scalar values. Malformed sequences become U+FFFD,
// one replacement per offending byte.
std::u32string decode_utf8(std::string_view text);

std::string encode_utf8(std::u32string_view text);

// Simple one-to-one lowercase mapping (ASCII, Latin-1, Latin Extended-A,
// Greek, Cyrillic). No multi-character expansions.
char32_t fold_case(char32_t c);

std::u32string fold_case(std::u32string_view text);

bool is_space(char32_t c);

bool is_letter(char32_t c);

// Strips leading and trailing whitespace (ASCII plus NBSP and the common
// Unicode spaces).
std::u32string_view trim(std::u32string_view text);

}  // namespace clusim::unicode
