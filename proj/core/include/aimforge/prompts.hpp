#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace aimforge {

using TemplateVars = std::map<std::string, std::string, std::less<>>;

/// Substitutes `{{name}}` placeholders. Throws Error(invalid_argument) for a
/// placeholder with no value or an unterminated `{{`.
std::string render_template(std::string_view tmpl, const TemplateVars& vars);

/// Named prompt templates: system, explorer, verifier, verifier_reask,
/// refiner, transcriber.
class PromptTemplates {
 public:
  /// The copies shipped in core/templates, embedded at build time.
  static const PromptTemplates& defaults();

  /// Defaults overridden by any `<name>.txt` present in `dir`.
  static PromptTemplates load(const std::filesystem::path& dir);

  [[nodiscard]] const std::string& get(std::string_view name) const;

 private:
  std::map<std::string, std::string, std::less<>> templates_;
};

}  // namespace aimforge
