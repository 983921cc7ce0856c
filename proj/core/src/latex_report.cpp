#include "aimforge/latex_report.hpp"

#include <vector>

#include "aimforge/transcribe.hpp"

namespace aimforge {
namespace {

constexpr std::string_view kPreamble =
    "\\documentclass{article}\n"
    "\\usepackage{amsmath}\n"
    "\\usepackage{amssymb}\n"
    "\\usepackage{amsthm}\n"
    "\\newtheorem{theorem}{Theorem}\n"
    "\\newtheorem{lemma}{Lemma}\n"
    "\\newtheorem{conjecture}{Conjecture}\n"
    "\\begin{document}\n";

constexpr std::string_view kClosing = "\\end{document}\n";

std::string_view environment_for(EntryType type) {
  switch (type) {
    case EntryType::theorem:
      return "theorem";
    case EntryType::lemma:
      return "lemma";
    case EntryType::conjecture:
      return "conjecture";
    case EntryType::event:
      return "quote";
    case EntryType::assumption:
    case EntryType::hint:
      break;
  }
  return {};
}

/// `**x**` -> \textbf{x} when both delimiters sit on one line.
std::string markdown_bold(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto open = text.find("**", pos);
    if (open == std::string_view::npos) break;
    const auto close = text.find("**", open + 2);
    const auto newline = text.find('\n', open);
    if (close == std::string_view::npos || close == open + 2 ||
        (newline != std::string_view::npos && newline < close)) {
      out.append(text.substr(pos, open + 2 - pos));
      pos = open + 2;
      continue;
    }
    out.append(text.substr(pos, open - pos));
    out.append("\\textbf{").append(text.substr(open + 2, close - open - 2)).push_back('}');
    pos = close + 2;
  }
  out.append(text.substr(std::min(pos, text.size())));
  return out;
}

std::string body_text(std::string_view text, const ReportOptions& options) {
  std::string prepared = options.transcribe_unicode
                             ? unicode_math_to_latex(text, SymbolTable::defaults(), MathWrapping::ensuremath)
                             : std::string(text);
  prepared = markdown_bold(prepared);
  while (!prepared.empty() && (prepared.back() == '\n' || prepared.back() == ' ')) {
    prepared.pop_back();
  }
  return prepared;
}

std::string_view correctness_label(const std::optional<bool>& correctness) {
  if (!correctness) return "None";
  return *correctness ? "True" : "False";
}

void emit_entry(std::string& out, const TrajectoryEntry& entry, const ReportOptions& options) {
  out.append("% entry ").append(std::to_string(entry.index)).push_back('\n');
  out.append("\\textbf{type}: ").append(to_string(entry.entry_type)).append("\n\n");

  const bool labeled = entry.entry_type == EntryType::assumption || entry.entry_type == EntryType::hint;
  if (entry.statement) {
    if (labeled) {
      out.append("\\textbf{content}: ").append(body_text(*entry.statement, options)).append("\n\n");
    } else {
      const std::string_view env = environment_for(entry.entry_type);
      out.append("\\begin{").append(env).append("}\n");
      out.append(body_text(*entry.statement, options));
      out.append("\n\\end{").append(env).append("}\n\n");
    }
  }

  if (!labeled) {
    out.append("\\textbf{correctness}: ").append(correctness_label(entry.correctness)).append("\n");
  }
  if (entry.proof) {
    out.append("\\begin{proof}\n").append(body_text(*entry.proof, options)).append("\n\\end{proof}\n");
  }
  out.append("\n\\textbf{comment}: ");
  out.append(entry.comment ? escape_latex(*entry.comment) : std::string("None"));
  out.append("\n\n");
}

bool is_escaped(std::string_view text, std::size_t pos) {
  std::size_t backslashes = 0;
  while (pos > backslashes && text[pos - backslashes - 1] == '\\') ++backslashes;
  return backslashes % 2 == 1;
}

std::string read_group(std::string_view text, std::size_t& pos) {
  // pos at '{'
  const auto close = text.find('}', pos);
  if (close == std::string_view::npos) return {};
  std::string name(text.substr(pos + 1, close - pos - 1));
  pos = close + 1;
  return name;
}

}  // namespace

std::string escape_latex(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    switch (c) {
      case '\\':
        out.append("\\textbackslash{}");
        break;
      case '{':
      case '}':
      case '$':
      case '&':
      case '#':
      case '_':
      case '%':
        out.push_back('\\');
        out.push_back(c);
        break;
      case '^':
        out.append("\\textasciicircum{}");
        break;
      case '~':
        out.append("\\textasciitilde{}");
        break;
      case '\n':
        out.push_back(' ');
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

std::string emit_latex_report(std::span<const TrajectoryEntry> entries, const ReportOptions& options) {
  std::string out(kPreamble);
  for (const TrajectoryEntry& entry : entries) emit_entry(out, entry, options);
  out.append(kClosing);
  return out;
}

std::optional<std::string> lint_latex(std::string_view document) {
  if (document.find("\\documentclass") == std::string_view::npos) {
    return "missing \\documentclass";
  }
  if (document.find("\\begin{document}") == std::string_view::npos) {
    return "missing \\begin{document}";
  }
  if (document.find("\\end{document}") == std::string_view::npos) {
    return "missing \\end{document}";
  }

  std::vector<std::string> environments;
  long braces = 0;
  bool in_inline = false;   // \( ... \)
  bool in_display = false;  // \[ ... \]
  std::size_t dollars = 0;
  std::size_t line = 1;

  const auto at = [&](std::string message) {
    return message + " (line " + std::to_string(line) + ")";
  };

  for (std::size_t pos = 0; pos < document.size(); ++pos) {
    const char c = document[pos];
    if (c == '\n') {
      ++line;
      continue;
    }
    if (c == '%' && !is_escaped(document, pos)) {
      const auto eol = document.find('\n', pos);
      if (eol == std::string_view::npos) break;
      pos = eol - 1;
      continue;
    }
    if (c == '\\' && pos + 1 < document.size()) {
      const char next = document[pos + 1];
      if (next == '\\' || next == '{' || next == '}' || next == '$' || next == '%') {
        ++pos;
        continue;
      }
      if (next == '(' || next == ')') {
        if ((next == '(') == in_inline) return at(next == '(' ? "nested \\(" : "unmatched \\)");
        in_inline = next == '(';
        ++pos;
        continue;
      }
      if (next == '[' || next == ']') {
        if ((next == '[') == in_display) return at(next == '[' ? "nested \\[" : "unmatched \\]");
        in_display = next == '[';
        ++pos;
        continue;
      }
      for (const std::string_view command : {std::string_view("begin{"), std::string_view("end{")}) {
        if (document.substr(pos + 1, command.size()) != command) continue;
        std::size_t group = pos + command.size();
        const std::string name = read_group(document, group);
        if (name.empty()) return at("empty or unterminated environment name");
        if (command.front() == 'b') {
          environments.push_back(name);
        } else {
          if (environments.empty()) return at("\\end{" + name + "} without \\begin");
          if (environments.back() != name) {
            return at("\\end{" + name + "} closes \\begin{" + environments.back() + "}");
          }
          environments.pop_back();
        }
        pos = group - 1;
        break;
      }
      continue;
    }
    if (c == '{') ++braces;
    if (c == '}' && --braces < 0) return at("unbalanced }");
    if (c == '$') ++dollars;
  }

  if (!environments.empty()) return "unclosed \\begin{" + environments.back() + "}";
  if (braces != 0) return "unbalanced {";
  if (in_inline) return "unclosed \\(";
  if (in_display) return "unclosed \\[";
  if (dollars % 2 != 0) return "odd number of $";
  return std::nullopt;
}

}  // namespace aimforge
