#include "aimforge/backend.hpp"

#include <json.hpp>

#include "aimforge/error.hpp"

namespace aimforge {

using nlohmann::json;

std::string_view to_string(FinishReason reason) noexcept {
  switch (reason) {
    case FinishReason::complete: return "complete";
    case FinishReason::length_truncated: return "length_truncated";
    case FinishReason::refused: return "refused";
  }
  return "?";
}

FinishReason parse_finish_reason(std::string_view name) {
  for (const FinishReason reason :
       {FinishReason::complete, FinishReason::length_truncated, FinishReason::refused}) {
    if (to_string(reason) == name) return reason;
  }
  throw Error(ErrorCode::invalid_argument, "unknown finish reason '" + std::string(name) + "'");
}

void ChatRequest::validate() const {
  if (system_prompt.empty() || user_prompt.empty()) {
    throw Error(ErrorCode::precondition_violation,
                std::string(to_string(role_tag)) + " request has an empty prompt");
  }
  if (sampling.temperature < 0.0 || sampling.temperature > 2.0 ||
      sampling.max_output_length == 0) {
    throw Error(ErrorCode::precondition_violation,
                std::string(to_string(role_tag)) + " request has invalid sampling parameters");
  }
}

bool ScriptMatcher::matches(const ChatRequest& request) const {
  if (request.role_tag != role) return false;
  return !contains || request.user_prompt.find(*contains) != std::string::npos;
}

void Script::add(Role role, std::string text, std::optional<std::string> contains,
                 FinishReason finish) {
  ChatResponse response;
  response.text = std::move(text);
  response.finish_reason = finish;
  steps.push_back({{role, std::move(contains)}, std::move(response)});
  consumed.push_back(false);
}

namespace {

// Consumes the first matching step in place; leaves `script` untouched when
// nothing matches.
ChatResponse consume_step(Script& script, const ChatRequest& request) {
  script.consumed.resize(script.steps.size(), false);
  std::size_t i = 0;
  while (i < script.steps.size() && script.consumed[i]) ++i;
  for (; i < script.steps.size(); ++i) {
    if (script.consumed[i] || !script.steps[i].matcher.matches(request)) continue;
    script.consumed[i] = true;
    ++script.cursor;
    ChatResponse response = script.steps[i].response;
    response.usage.input_units = request.system_prompt.size() + request.user_prompt.size();
    response.usage.output_units = response.finish_reason == FinishReason::length_truncated
                                      ? request.sampling.max_output_length
                                      : response.text.size();
    return response;
  }
  throw Error(ErrorCode::script_exhausted,
              "no remaining script step matches a " + std::string(to_string(request.role_tag)) +
                  " request (" + std::to_string(script.remaining()) + " steps left)");
}

}  // namespace

std::pair<ChatResponse, Script> scripted_next(Script script, const ChatRequest& request) {
  ChatResponse response = consume_step(script, request);
  return {std::move(response), std::move(script)};
}

Script parse_script(std::string_view json_text, std::string_view source_name) {
  const auto fail = [&](const std::string& message) -> Error {
    return Error(ErrorCode::malformed_input, std::string(source_name) + ": " + message);
  };
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw fail(err.what());
  }
  if (!doc.is_object() || !doc.contains("steps") || !doc["steps"].is_array()) {
    throw fail("expected an object with a 'steps' array");
  }
  Script script;
  std::size_t n = 0;
  for (const json& step : doc["steps"]) {
    ++n;
    try {
      const Role role = parse_role(step.at("role").get<std::string>());
      std::optional<std::string> contains;
      if (step.contains("contains") && !step["contains"].is_null()) {
        contains = step["contains"].get<std::string>();
      }
      const FinishReason finish = step.contains("finish_reason")
                                      ? parse_finish_reason(step["finish_reason"].get<std::string>())
                                      : FinishReason::complete;
      script.add(role, step.at("text").get<std::string>(), std::move(contains), finish);
    } catch (const json::exception& err) {
      throw fail("step " + std::to_string(n) + ": " + err.what());
    } catch (const Error& err) {
      throw fail("step " + std::to_string(n) + ": " + err.what());
    }
  }
  return script;
}

Script load_script(const std::filesystem::path& path) {
  return parse_script(read_file(path), path.string());
}

std::string serialize_script(const Script& script) {
  json steps = json::array();
  for (const ScriptStep& step : script.steps) {
    json item = {{"role", to_string(step.matcher.role)}};
    if (step.matcher.contains) item["contains"] = *step.matcher.contains;
    item["text"] = step.response.text;
    if (step.response.finish_reason != FinishReason::complete) {
      item["finish_reason"] = to_string(step.response.finish_reason);
    }
    steps.push_back(std::move(item));
  }
  return json{{"steps", std::move(steps)}}.dump(2) + "\n";
}

ChatResponse ScriptedBackend::complete(const ChatRequest& request) {
  request.validate();
  const std::lock_guard lock(mutex_);
  requests_.push_back(request);
  return consume_step(script_, request);
}

Script ScriptedBackend::script() const {
  const std::lock_guard lock(mutex_);
  return script_;
}

std::vector<ChatRequest> ScriptedBackend::requests() const {
  const std::lock_guard lock(mutex_);
  return requests_;
}

}  // namespace aimforge
