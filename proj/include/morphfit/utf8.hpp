#pragma once

#include <string>
#include <string_view>

namespace morphfit::utf8 {

// Malformed sequences decode to U+FFFD.
std::u32string decode(std::string_view text);
std::string encode(std::u32string_view text);

/// Lowercases ASCII, Latin-1 and basic Cyrillic letters; everything else passes through.
std::string lowercase(std::string_view text);

}  // namespace morphfit::utf8
