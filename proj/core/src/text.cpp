#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include <string>
#include <vector>

#include "aimforge/model.hpp"
#include "utf8.hpp"

namespace aimforge {
namespace detail {

char32_t decode_utf8(std::string_view text, std::size_t& pos) noexcept {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };
  const unsigned char lead = byte(pos);
  if (lead < 0x80) {
    ++pos;
    return lead;
  }
  std::size_t extra = 0;
  char32_t cp = 0;
  char32_t min = 0;
  if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
    min = 0x80;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
    min = 0x800;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
    min = 0x10000;
  } else {
    ++pos;
    return kReplacementChar;
  }
  if (pos + extra >= text.size()) {
    ++pos;
    return kReplacementChar;
  }
  for (std::size_t i = 1; i <= extra; ++i) {
    if ((byte(pos + i) & 0xC0) != 0x80) {
      ++pos;
      return kReplacementChar;
    }
    cp = (cp << 6) | (byte(pos + i) & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++pos;
    return kReplacementChar;
  }
  pos += extra + 1;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_unicode_space(char32_t cp) noexcept {
  switch (cp) {
    case U' ': case U'\t': case U'\n': case U'\v': case U'\f': case U'\r':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

std::size_t utf8_prefix_length(std::string_view text, std::size_t max_bytes) noexcept {
  if (text.size() <= max_bytes) return text.size();
  std::size_t cut = max_bytes;
  while (cut > 0 && (static_cast<unsigned char>(text[cut]) & 0xC0) == 0x80) --cut;
  return cut;
}

}  // namespace detail

namespace {

std::string to_nfc(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) return std::string(text);
  const icu::UnicodeString source =
      icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  const icu::UnicodeString composed = nfc->normalize(source, status);
  if (U_FAILURE(status)) return std::string(text);
  std::string out;
  composed.toUTF8String(out);
  return out;
}

bool is_marker(char32_t cp) { return cp == U'*' || cp == U'_'; }

bool opens_emphasis(char32_t prev) {
  return prev == 0 || detail::is_unicode_space(prev) || prev == U'(' || prev == U'[' ||
         prev == U'"' || prev == U'\'';
}

bool closes_emphasis(char32_t next) {
  switch (next) {
    case 0: case U'.': case U',': case U';': case U':': case U'!': case U'?':
    case U')': case U']': case U'"': case U'\'':
      return true;
    default:
      return detail::is_unicode_space(next);
  }
}

}  // namespace

std::string normalize_statement(std::string_view text) {
  const std::string composed = to_nfc(text);

  // Decode, dropping backticks and collapsing whitespace to a single space.
  std::vector<char32_t> cps;
  cps.reserve(composed.size());
  for (std::size_t pos = 0; pos < composed.size();) {
    const char32_t cp = detail::decode_utf8(composed, pos);
    if (cp == U'`') continue;
    if (detail::is_unicode_space(cp)) {
      if (!cps.empty() && cps.back() == U' ') continue;
      cps.push_back(U' ');
      continue;
    }
    cps.push_back(cp);
  }

  // A maximal run of '*'/'_' is an emphasis delimiter when it opens
  // (boundary before, text after) or closes (text before, boundary after).
  // Intraword runs such as u_0 and spaced operators such as a * b stay.
  std::vector<char32_t> kept;
  kept.reserve(cps.size());
  for (std::size_t i = 0; i < cps.size();) {
    if (!is_marker(cps[i])) {
      kept.push_back(cps[i++]);
      continue;
    }
    std::size_t end = i;
    while (end < cps.size() && is_marker(cps[end])) ++end;
    const char32_t prev = i == 0 ? 0 : cps[i - 1];
    const char32_t next = end == cps.size() ? 0 : cps[end];
    const bool prev_blank = prev == 0 || prev == U' ';
    const bool next_blank = next == 0 || next == U' ';
    const bool opener = opens_emphasis(prev) && !next_blank;
    const bool closer = !prev_blank && closes_emphasis(next);
    if (!opener && !closer) kept.insert(kept.end(), cps.begin() + i, cps.begin() + end);
    i = end;
  }

  std::string out;
  out.reserve(composed.size());
  for (const char32_t cp : kept) {
    if (cp == U' ' && (out.empty() || out.back() == ' ')) continue;
    detail::append_utf8(out, cp);
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

Fingerprint fingerprint_of(std::string_view statement) { return {normalize_statement(statement)}; }

}  // namespace aimforge
