#include "aimforge/config.hpp"

#include <fstream>
#include <sstream>
#include <toml.hpp>
#include <vector>

#include "aimforge/error.hpp"

namespace aimforge {
namespace {

[[noreturn]] void fail(std::string_view source, const std::string& message) {
  throw Error(ErrorCode::malformed_input, std::string(source) + ": " + message);
}

toml::table parse_toml(std::string_view text, std::string_view source) {
  try {
    return toml::parse(text, source);
  } catch (const toml::parse_error& err) {
    std::ostringstream msg;
    msg << err.description() << " (line " << err.source().begin.line << ")";
    fail(source, msg.str());
  }
}

void reject_unknown_keys(const toml::table& table, std::initializer_list<std::string_view> known,
                         std::string_view source, std::string_view where) {
  for (const auto& [key, node] : table) {
    bool ok = false;
    for (const std::string_view name : known) ok = ok || key.str() == name;
    if (!ok) {
      fail(source, "unknown key '" + std::string(where) + std::string(key.str()) + "'");
    }
  }
}

std::size_t read_count(const toml::table& table, std::string_view key, std::size_t fallback,
                       std::string_view source) {
  const toml::node* node = table.get(key);
  if (node == nullptr) return fallback;
  const auto value = node->value_exact<std::int64_t>();
  if (!value || *value < 0) fail(source, "'" + std::string(key) + "' must be a non-negative integer");
  return static_cast<std::size_t>(*value);
}

bool read_bool(const toml::table& table, std::string_view key, bool fallback,
               std::string_view source) {
  const toml::node* node = table.get(key);
  if (node == nullptr) return fallback;
  const auto value = node->value_exact<bool>();
  if (!value) fail(source, "'" + std::string(key) + "' must be a boolean");
  return *value;
}

std::optional<std::string> read_string(const toml::table& table, std::string_view key,
                                       std::string_view source) {
  const toml::node* node = table.get(key);
  if (node == nullptr) return std::nullopt;
  const auto value = node->value_exact<std::string>();
  if (!value) fail(source, "'" + std::string(key) + "' must be a string");
  return value;
}

SamplingParams read_sampling(const toml::table& parent, std::string_view role,
                             SamplingParams fallback, std::string_view source) {
  const toml::node* node = parent.get(role);
  if (node == nullptr) return fallback;
  const toml::table* table = node->as_table();
  if (table == nullptr) fail(source, "role_params." + std::string(role) + " must be a table");
  reject_unknown_keys(*table, {"temperature", "max_output_length"}, source,
                      "role_params." + std::string(role) + ".");
  if (const toml::node* t = table->get("temperature")) {
    const auto value = t->value<double>();
    if (!value) fail(source, "temperature must be a number");
    fallback.temperature = *value;
  }
  fallback.max_output_length =
      read_count(*table, "max_output_length", fallback.max_output_length, source);
  return fallback;
}

/// A block is either a plain string or a table with a `content` string.
std::string block_text(const toml::node& node, std::string_view source, std::string_view what) {
  if (const auto text = node.value<std::string>()) return *text;
  if (const toml::table* table = node.as_table()) {
    reject_unknown_keys(*table, {"content"}, source, std::string(what) + ".");
    if (const auto content = read_string(*table, "content", source)) return *content;
  }
  fail(source, std::string(what) + " block needs string content");
}

std::vector<std::string> read_blocks(const toml::table& root, std::string_view key,
                                     std::string_view source) {
  std::vector<std::string> blocks;
  const toml::node* node = root.get(key);
  if (node == nullptr) return blocks;
  if (const toml::array* array = node->as_array()) {
    for (const toml::node& element : *array) blocks.push_back(block_text(element, source, key));
  } else {
    blocks.push_back(block_text(*node, source, key));
  }
  return blocks;
}

}  // namespace

std::string_view to_string(Role role) noexcept {
  switch (role) {
    case Role::explorer: return "explorer";
    case Role::verifier: return "verifier";
    case Role::refiner: return "refiner";
    case Role::transcriber: return "transcriber";
  }
  return "?";
}

Role parse_role(std::string_view name) {
  for (const Role role : {Role::explorer, Role::verifier, Role::refiner, Role::transcriber}) {
    if (to_string(role) == name) return role;
  }
  throw Error(ErrorCode::invalid_argument, "unknown role '" + std::string(name) + "'");
}

const SamplingParams& RoleParams::for_role(Role role) const noexcept {
  switch (role) {
    case Role::explorer: return explorer;
    case Role::verifier: return verifier;
    case Role::refiner: return refiner;
    case Role::transcriber: return transcriber;
  }
  return explorer;
}

void RunConfig::validate() const {
  const auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::invalid_argument, std::string("config: ") + what);
  };
  require(k_reviews >= 1, "k_reviews must be >= 1");
  require(exploration_limit >= 1, "exploration_limit must be >= 1");
  require(refine_cap >= 1, "refine_cap must be >= 1");
  require(lemma_context_budget > 0, "lemma_context_budget must be > 0");
  for (const Role role : {Role::explorer, Role::verifier, Role::refiner, Role::transcriber}) {
    const SamplingParams& params = role_params.for_role(role);
    require(params.temperature >= 0.0 && params.temperature <= 2.0,
            "temperature must lie in [0, 2]");
    require(params.max_output_length > 0, "max_output_length must be positive");
  }
}

RunConfig parse_run_config(std::string_view toml_text, std::string_view source_name) {
  const toml::table root = parse_toml(toml_text, source_name);
  reject_unknown_keys(root,
                      {"k_reviews", "exploration_limit", "refine_cap", "lemma_context_budget",
                       "role_params", "correction_suggestions", "dedup_enabled",
                       "verifier_sees_lemmas", "template_dir", "remote"},
                      source_name, "");
  RunConfig config;
  config.k_reviews = read_count(root, "k_reviews", config.k_reviews, source_name);
  config.exploration_limit =
      read_count(root, "exploration_limit", config.exploration_limit, source_name);
  config.refine_cap = read_count(root, "refine_cap", config.refine_cap, source_name);
  config.lemma_context_budget =
      read_count(root, "lemma_context_budget", config.lemma_context_budget, source_name);
  config.dedup_enabled = read_bool(root, "dedup_enabled", config.dedup_enabled, source_name);
  config.verifier_sees_lemmas =
      read_bool(root, "verifier_sees_lemmas", config.verifier_sees_lemmas, source_name);
  config.correction_suggestions = read_string(root, "correction_suggestions", source_name);
  if (const auto dir = read_string(root, "template_dir", source_name)) config.template_dir = *dir;

  if (const toml::node* node = root.get("role_params")) {
    const toml::table* roles = node->as_table();
    if (roles == nullptr) fail(source_name, "role_params must be a table");
    reject_unknown_keys(*roles, {"explorer", "verifier", "refiner", "transcriber"}, source_name,
                        "role_params.");
    RoleParams& params = config.role_params;
    params.explorer = read_sampling(*roles, "explorer", params.explorer, source_name);
    params.verifier = read_sampling(*roles, "verifier", params.verifier, source_name);
    params.refiner = read_sampling(*roles, "refiner", params.refiner, source_name);
    params.transcriber = read_sampling(*roles, "transcriber", params.transcriber, source_name);
  }

  if (const toml::node* node = root.get("remote")) {
    const toml::table* remote = node->as_table();
    if (remote == nullptr) fail(source_name, "remote must be a table");
    reject_unknown_keys(*remote, {"endpoint", "model", "timeout_seconds"}, source_name, "remote.");
    if (auto endpoint = read_string(*remote, "endpoint", source_name)) {
      config.remote.endpoint = *endpoint;
    }
    if (auto model = read_string(*remote, "model", source_name)) config.remote.model = *model;
    config.remote.timeout_seconds =
        read_count(*remote, "timeout_seconds", config.remote.timeout_seconds, source_name);
  }

  try {
    config.validate();
  } catch (const Error& err) {
    fail(source_name, err.what());
  }
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return parse_run_config(read_file(path), path.string());
}

ProblemContext parse_problem(std::string_view toml_text, std::string_view source_name) {
  const toml::table root = parse_toml(toml_text, source_name);
  reject_unknown_keys(root, {"title", "assumption", "hint", "problem"}, source_name, "");
  ProblemContext ctx;
  ctx.title = read_string(root, "title", source_name).value_or("");
  ctx.assumptions = read_blocks(root, "assumption", source_name);
  ctx.hints = read_blocks(root, "hint", source_name);
  const toml::node* problem = root.get("problem");
  if (problem == nullptr) fail(source_name, "missing problem block");
  if (problem->is_array()) fail(source_name, "exactly one problem block is allowed");
  ctx.target_statement = block_text(*problem, source_name, "problem");
  try {
    ctx.validate();
  } catch (const Error& err) {
    fail(source_name, err.what());
  }
  return ctx;
}

ProblemContext load_problem(const std::filesystem::path& path) {
  return parse_problem(read_file(path), path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_failure, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::io_failure, "cannot read " + path.string());
  return buffer.str();
}

}  // namespace aimforge
