#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "aimforge/model.hpp"

namespace aimforge {

struct ReportOptions {
  /// Pass statements and proofs through unicode_math_to_latex first.
  bool transcribe_unicode = false;
};

/// Renders a trajectory as a standalone article. Each entry becomes one
/// block opened by a `% entry <index>` line:
///
///     \textbf{type}: lemma
///     \begin{lemma} ... \end{lemma}
///     \textbf{correctness}: True
///     \begin{proof} ... \end{proof}
///     \textbf{comment}: None
///
/// Assumptions and hints render their statement as a `\textbf{content}:`
/// paragraph. Statement and proof text is treated as LaTeX source (models
/// write LaTeX math); markdown `**bold**` becomes \textbf. Comments are
/// escaped as plain text. Blocks follow the order of `entries`.
[[nodiscard]] std::string emit_latex_report(std::span<const TrajectoryEntry> entries,
                                            const ReportOptions& options = {});

/// Structural checks that catch what breaks compilation most often:
/// \documentclass and the document environment present, \begin/\end
/// balanced and properly nested, braces balanced (ignoring \{ \}), \( \)
/// and \[ \] paired, and an even number of unescaped `$`. Returns the first
/// problem found.
[[nodiscard]] std::optional<std::string> lint_latex(std::string_view document);

/// Escapes LaTeX special characters in plain text.
[[nodiscard]] std::string escape_latex(std::string_view text);

}  // namespace aimforge
