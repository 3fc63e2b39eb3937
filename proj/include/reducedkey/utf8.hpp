#pragma once

#include <string>
#include <string_view>

namespace reducedkey {

using Symbol = char32_t;

inline constexpr Symbol kReplacementChar = U'�';

// Malformed sequences decode to U+FFFD, one per offending byte.
std::u32string decode_utf8(std::string_view text);

std::string encode_utf8(std::u32string_view symbols);
std::string encode_utf8(Symbol symbol);

}  // namespace reducedkey
