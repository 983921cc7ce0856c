#include "aimforge/transcribe.hpp"

#include <algorithm>
#include <iterator>
#include <optional>

#include "aimforge/config.hpp"
#include "aimforge/error.hpp"
#include "embedded_assets.hpp"
#include "utf8.hpp"

namespace aimforge {
namespace {

struct ScriptChar {
  char32_t cp;
  char ascii;
};

constexpr ScriptChar kSuperscripts[] = {
    {0x2070, '0'}, {0x00B9, '1'}, {0x00B2, '2'}, {0x00B3, '3'}, {0x2074, '4'},
    {0x2075, '5'}, {0x2076, '6'}, {0x2077, '7'}, {0x2078, '8'}, {0x2079, '9'},
    {0x207A, '+'}, {0x207B, '-'}, {0x207C, '='}, {0x207D, '('}, {0x207E, ')'},
    {0x207F, 'n'}, {0x2071, 'i'},
};

constexpr ScriptChar kSubscripts[] = {
    {0x2080, '0'}, {0x2081, '1'}, {0x2082, '2'}, {0x2083, '3'}, {0x2084, '4'},
    {0x2085, '5'}, {0x2086, '6'}, {0x2087, '7'}, {0x2088, '8'}, {0x2089, '9'},
    {0x208A, '+'}, {0x208B, '-'}, {0x208C, '='}, {0x208D, '('}, {0x208E, ')'},
    {0x2090, 'a'}, {0x2091, 'e'}, {0x2092, 'o'}, {0x2093, 'x'}, {0x2095, 'h'},
    {0x2096, 'k'}, {0x2097, 'l'}, {0x2098, 'm'}, {0x2099, 'n'}, {0x209A, 'p'},
    {0x209B, 's'}, {0x209C, 't'}, {0x1D62, 'i'}, {0x2C7C, 'j'}, {0x1D63, 'r'},
    {0x1D64, 'u'}, {0x1D65, 'v'},
};

template <std::size_t N>
std::optional<char> lookup_script(const ScriptChar (&table)[N], char32_t cp) {
  for (const ScriptChar& s : table) {
    if (s.cp == cp) return s.ascii;
  }
  return std::nullopt;
}

bool is_ascii_letter(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

bool is_control_word(std::string_view replacement) {
  return replacement.size() >= 2 && replacement.front() == '\\' &&
         is_ascii_letter(replacement.back()) &&
         std::all_of(replacement.begin() + 1, replacement.end(), is_ascii_letter);
}

std::size_t codepoint_count(std::string_view text) {
  std::size_t count = 0;
  for (std::size_t pos = 0; pos < text.size(); ++count) detail::decode_utf8(text, pos);
  return count;
}

}  // namespace

const SymbolTable& SymbolTable::defaults() {
  static const SymbolTable kDefaults = parse(detail::embedded_symbol_table(), "symbols.tsv");
  return kDefaults;
}

SymbolTable SymbolTable::parse(std::string_view text, std::string_view source_name) {
  SymbolTable table;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    ++line_number;
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;
    line.remove_prefix(first);
    const auto gap = line.find_first_of(" \t");
    const auto value = gap == std::string_view::npos ? gap : line.find_first_not_of(" \t", gap);
    if (value == std::string_view::npos) {
      throw Error(ErrorCode::malformed_input, std::string(source_name) + ": line " +
                                                  std::to_string(line_number) +
                                                  " needs a sequence and a replacement");
    }
    std::string_view replacement = line.substr(value);
    while (!replacement.empty() && (replacement.back() == ' ' || replacement.back() == '\t')) {
      replacement.remove_suffix(1);
    }
    table.add(std::string(line.substr(0, gap)), std::string(replacement));
  }
  return table;
}

SymbolTable SymbolTable::load(const std::filesystem::path& path) {
  return parse(read_file(path), path.string());
}

void SymbolTable::add(std::string sequence, std::string replacement) {
  longest_ = std::max(longest_, codepoint_count(sequence));
  entries_.insert_or_assign(std::move(sequence), std::move(replacement));
}

std::string unicode_math_to_latex(std::string_view text, const SymbolTable& table,
                                  MathWrapping wrapping) {
  const bool wrap = wrapping == MathWrapping::ensuremath;
  std::string out;
  out.reserve(text.size() + text.size() / 2);
  bool pending_space = false;  // last emission was a bare command word

  // Longest table match starting at pos.
  const auto match_at = [&](std::size_t pos) -> std::pair<std::optional<std::string_view>, std::size_t> {
    std::size_t ends[16];
    std::size_t count = 0;
    std::size_t scan = pos;
    const std::size_t longest = std::min<std::size_t>(table.longest_sequence(), std::size(ends));
    while (count < longest && scan < text.size()) {
      detail::decode_utf8(text, scan);
      ends[count++] = scan;
    }
    while (count > 0) {
      const std::size_t end = ends[--count];
      const auto found = table.entries().find(std::string(text.substr(pos, end - pos)));
      if (found != table.entries().end()) return {std::string_view(found->second), end};
    }
    return {std::nullopt, pos};
  };

  // Script run starting at pos, as "^{..}" or "_{..}"; empty if none.
  const auto script_at = [&](std::size_t& pos) {
    std::string group;
    std::size_t next = pos;
    const char32_t first = detail::decode_utf8(text, next);
    const bool super = lookup_script(kSuperscripts, first).has_value();
    if (!super && !lookup_script(kSubscripts, first)) return group;
    while (pos < text.size()) {
      std::size_t after = pos;
      const char32_t c = detail::decode_utf8(text, after);
      const auto ascii = super ? lookup_script(kSuperscripts, c) : lookup_script(kSubscripts, c);
      if (!ascii) break;
      group.push_back(*ascii);
      pos = after;
    }
    return (super ? "^{" : "_{") + group + "}";
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    if (const auto [replacement, match_end] = match_at(pos); replacement) {
      pos = match_end;
      if (wrap) {
        out.append("\\ensuremath{").append(*replacement);
        for (std::string group = script_at(pos); !group.empty(); group = script_at(pos)) {
          out.append(group);
        }
        out.push_back('}');
        pending_space = false;
        continue;
      }
      if (pending_space) out.push_back(' ');
      out.append(*replacement);
      pending_space = is_control_word(*replacement);
      continue;
    }

    if (std::string group = script_at(pos); !group.empty()) {
      if (wrap) {
        out.append("\\ensuremath{").append(group).push_back('}');
      } else {
        out.append(group);
      }
      pending_space = false;
      continue;
    }

    std::size_t next = pos;
    const char32_t cp = detail::decode_utf8(text, next);
    if (pending_space && cp < 0x80 &&
        (is_ascii_letter(static_cast<char>(cp)) || (cp >= '0' && cp <= '9'))) {
      out.push_back(' ');
    }
    pending_space = false;
    out.append(text.substr(pos, next - pos));
    pos = next;
  }
  return out;
}

std::vector<char32_t> mapped_code_points(const SymbolTable& table) {
  std::vector<char32_t> cps;
  for (const auto& [sequence, replacement] : table.entries()) {
    std::size_t pos = 0;
    const char32_t cp = detail::decode_utf8(sequence, pos);
    if (pos == sequence.size()) cps.push_back(cp);
  }
  for (const ScriptChar& s : kSuperscripts) cps.push_back(s.cp);
  for (const ScriptChar& s : kSubscripts) cps.push_back(s.cp);
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  return cps;
}

}  // namespace aimforge
