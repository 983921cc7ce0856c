#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace aimforge {

/// Unicode to LaTeX replacements, read from a two-column text file:
///
///     # comment
///     λ    \lambda
///     ≤    \leq
///
/// The first column is a literal code point sequence, the rest of the line
/// (after whitespace) is the replacement.
class SymbolTable {
 public:
  /// The table shipped in core/data/symbols.tsv, embedded at build time.
  static const SymbolTable& defaults();

  /// Throws Error(malformed_input) naming the line for a bad row.
  static SymbolTable parse(std::string_view text, std::string_view source_name = "symbols");
  static SymbolTable load(const std::filesystem::path& path);

  void add(std::string sequence, std::string replacement);

  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] const std::map<std::string, std::string>& entries() const noexcept {
    return entries_;
  }
  [[nodiscard]] std::size_t longest_sequence() const noexcept { return longest_; }

 private:
  std::map<std::string, std::string> entries_;
  std::size_t longest_ = 0;
};

/// How replacements are emitted. `ensuremath` wraps each replaced symbol
/// (with any script group right after it) in \ensuremath{...}, so the
/// result is valid both inside and outside math mode.
enum class MathWrapping { none, ensuremath };

/// Deterministic transcription. Table sequences are replaced (longest match
/// first); runs of Unicode superscript or subscript characters become one
/// ^{...} or _{...} group; everything else passes through. A space is
/// inserted after a command word when the next character would otherwise
/// extend it. The output contains no mapped code point, so the function is
/// idempotent.
[[nodiscard]] std::string unicode_math_to_latex(std::string_view text,
                                                const SymbolTable& table = SymbolTable::defaults(),
                                                MathWrapping wrapping = MathWrapping::none);

/// Code points that have a replacement (table entries of length one plus
/// the script characters).
[[nodiscard]] std::vector<char32_t> mapped_code_points(
    const SymbolTable& table = SymbolTable::defaults());

}  // namespace aimforge
