#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace aimforge::detail {

inline constexpr char32_t kReplacementChar = 0xFFFD;

/// Decodes one code point starting at `pos` and advances `pos`. Invalid
/// sequences yield U+FFFD and consume one byte.
char32_t decode_utf8(std::string_view text, std::size_t& pos) noexcept;

void append_utf8(std::string& out, char32_t cp);

[[nodiscard]] bool is_unicode_space(char32_t cp) noexcept;

/// Byte length of the longest prefix of `text` holding at most `max_bytes`
/// bytes without splitting a multi-byte sequence.
[[nodiscard]] std::size_t utf8_prefix_length(std::string_view text, std::size_t max_bytes) noexcept;

}  // namespace aimforge::detail
