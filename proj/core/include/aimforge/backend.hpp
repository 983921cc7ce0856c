#pragma once

#include <cstddef>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aimforge/config.hpp"

namespace aimforge {

enum class FinishReason { complete, length_truncated, refused };

std::string_view to_string(FinishReason reason) noexcept;
FinishReason parse_finish_reason(std::string_view name);

struct ChatRequest {
  std::string system_prompt;
  std::string user_prompt;
  SamplingParams sampling;
  Role role_tag = Role::explorer;
  std::size_t attempt = 0;

  /// Throws Error(precondition_violation) on empty prompts or out-of-range
  /// sampling parameters.
  void validate() const;

  bool operator==(const ChatRequest&) const = default;
};

struct Usage {
  std::size_t input_units = 0;
  std::size_t output_units = 0;

  bool operator==(const Usage&) const = default;
};

struct ChatResponse {
  std::string text;
  FinishReason finish_reason = FinishReason::complete;
  Usage usage;

  bool operator==(const ChatResponse&) const = default;
};

/// One model call. Implementations report transport problems as
/// Error(transport_failure | auth_failure | script_exhausted).
class Backend {
 public:
  virtual ~Backend() = default;

  virtual ChatResponse complete(const ChatRequest& request) = 0;

  /// False when results depend on call order, in which case callers must
  /// issue requests one at a time in a fixed order.
  [[nodiscard]] virtual bool supports_concurrent_calls() const noexcept { return true; }
};

struct ScriptMatcher {
  Role role = Role::explorer;
  std::optional<std::string> contains;

  [[nodiscard]] bool matches(const ChatRequest& request) const;
  bool operator==(const ScriptMatcher&) const = default;
};

struct ScriptStep {
  ScriptMatcher matcher;
  ChatResponse response;

  bool operator==(const ScriptStep&) const = default;
};

/// Canned responses consumed in order. A step is used at most once;
/// `cursor` counts consumed steps.
struct Script {
  std::vector<ScriptStep> steps;
  std::vector<bool> consumed;
  std::size_t cursor = 0;

  Script() = default;
  explicit Script(std::vector<ScriptStep> script_steps)
      : steps(std::move(script_steps)), consumed(steps.size(), false) {}

  void add(Role role, std::string text, std::optional<std::string> contains = std::nullopt,
           FinishReason finish = FinishReason::complete);

  [[nodiscard]] std::size_t remaining() const noexcept { return steps.size() - cursor; }

  bool operator==(const Script&) const = default;
};

/// Returns the first unconsumed step whose matcher accepts `request`, and
/// the script with that step consumed. Throws Error(script_exhausted).
std::pair<ChatResponse, Script> scripted_next(Script script, const ChatRequest& request);

/// Script files are JSON: {"steps": [{"role", "contains"?, "text",
/// "finish_reason"?}, ...]}.
Script parse_script(std::string_view json_text, std::string_view source_name = "script");
Script load_script(const std::filesystem::path& path);
std::string serialize_script(const Script& script);

/// Deterministic replay backend. Thread-safe; calls are serialized.
class ScriptedBackend final : public Backend {
 public:
  explicit ScriptedBackend(Script script) : script_(std::move(script)) {}

  ChatResponse complete(const ChatRequest& request) override;
  [[nodiscard]] bool supports_concurrent_calls() const noexcept override { return false; }

  [[nodiscard]] Script script() const;
  [[nodiscard]] std::vector<ChatRequest> requests() const;

 private:
  mutable std::mutex mutex_;
  Script script_;
  std::vector<ChatRequest> requests_;
};

}  // namespace aimforge
