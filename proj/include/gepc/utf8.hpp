#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace gepc::utf8 {

struct Decoded {
  char32_t code_point;
  std::size_t length;  // bytes consumed; 1 for an invalid sequence
  bool valid;
};

/// Decodes the code point starting at byte `pos`. Invalid sequences yield U+FFFD.
Decoded decode(std::string_view s, std::size_t pos);

void append(std::string& out, char32_t cp);

/// Byte offset of the first invalid UTF-8 sequence, or nullopt when valid.
std::optional<std::size_t> first_invalid(std::string_view s);

std::string from_latin1(std::string_view s);

bool is_letter(char32_t cp);
bool is_upper(char32_t cp);
char32_t to_lower(char32_t cp);

/// Lowercases every code point; typographic apostrophes become '\''.
std::string fold_case(std::string_view s);

}  // namespace gepc::utf8
