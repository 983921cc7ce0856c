#include "aimforge/prompts.hpp"

#include "aimforge/config.hpp"
#include "aimforge/error.hpp"
#include "embedded_assets.hpp"

namespace aimforge {

std::string render_template(std::string_view tmpl, const TemplateVars& vars) {
  std::string out;
  out.reserve(tmpl.size() * 2);
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    const auto open = tmpl.find("{{", pos);
    if (open == std::string_view::npos) {
      out.append(tmpl.substr(pos));
      break;
    }
    out.append(tmpl.substr(pos, open - pos));
    const auto close = tmpl.find("}}", open + 2);
    if (close == std::string_view::npos) {
      throw Error(ErrorCode::invalid_argument, "unterminated placeholder in template");
    }
    const std::string_view name = tmpl.substr(open + 2, close - open - 2);
    const auto it = vars.find(name);
    if (it == vars.end()) {
      throw Error(ErrorCode::invalid_argument,
                  "template placeholder {{" + std::string(name) + "}} has no value");
    }
    out.append(it->second);
    pos = close + 2;
  }
  return out;
}

const PromptTemplates& PromptTemplates::defaults() {
  static const PromptTemplates kDefaults = [] {
    PromptTemplates t;
    for (const auto& [name, text] : detail::embedded_templates()) t.templates_.emplace(name, text);
    return t;
  }();
  return kDefaults;
}

PromptTemplates PromptTemplates::load(const std::filesystem::path& dir) {
  PromptTemplates t = defaults();
  for (auto& [name, text] : t.templates_) {
    const std::filesystem::path file = dir / (name + ".txt");
    if (std::filesystem::exists(file)) text = read_file(file);
  }
  return t;
}

const std::string& PromptTemplates::get(std::string_view name) const {
  const auto it = templates_.find(name);
  if (it == templates_.end()) {
    throw Error(ErrorCode::invalid_argument, "no prompt template named '" + std::string(name) + "'");
  }
  return it->second;
}

}  // namespace aimforge
