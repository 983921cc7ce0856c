#include "aimforge/remote_backend.hpp"

#include <httplib.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <json.hpp>
#include <thread>

#include "aimforge/error.hpp"

namespace aimforge {
namespace {

using nlohmann::json;

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Endpoint split_endpoint(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::invalid_argument, "endpoint '" + url + "' has no scheme");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

std::string strip_think_blocks(std::string text) {
  for (;;) {
    const auto open = text.find("<think>");
    if (open == std::string::npos) break;
    const auto close = text.find("</think>", open);
    if (close == std::string::npos) {
      text.erase(open);
      break;
    }
    text.erase(open, close + 8 - open);
  }
  const auto first = text.find_first_not_of(" \t\r\n");
  return first == std::string::npos ? std::string() : text.substr(first);
}

}  // namespace

std::chrono::milliseconds RetryPolicy::delay_before(std::size_t attempt) const {
  if (attempt <= 1) return std::chrono::milliseconds(0);
  const double scale = std::pow(factor, static_cast<double>(attempt - 2));
  return std::chrono::milliseconds(
      static_cast<std::int64_t>(static_cast<double>(initial_delay.count()) * scale));
}

bool is_transient(const HttpResult& result) noexcept {
  if (result.status == 0) return true;
  return result.status == 408 || result.status == 425 || result.status == 429 ||
         result.status >= 500;
}

std::string encode_chat_request(const ChatRequest& request, std::string_view model) {
  const json body = {
      {"model", model},
      {"messages",
       json::array({{{"role", "system"}, {"content", request.system_prompt}},
                    {{"role", "user"}, {"content", request.user_prompt}}})},
      {"temperature", request.sampling.temperature},
      {"max_tokens", request.sampling.max_output_length},
  };
  return body.dump(-1, ' ', false, json::error_handler_t::replace);
}

ChatResponse decode_chat_response(std::string_view body) {
  try {
    const json doc = json::parse(body);
    const json& choice = doc.at("choices").at(0);
    ChatResponse response;
    const json& content = choice.at("message").at("content");
    response.text = content.is_null() ? std::string() : strip_think_blocks(content.get<std::string>());
    const std::string finish =
        choice.contains("finish_reason") && choice["finish_reason"].is_string()
            ? choice["finish_reason"].get<std::string>()
            : "stop";
    if (finish == "length") {
      response.finish_reason = FinishReason::length_truncated;
    } else if (finish == "content_filter" || finish == "refusal") {
      response.finish_reason = FinishReason::refused;
    } else {
      response.finish_reason = FinishReason::complete;
    }
    if (doc.contains("usage") && doc["usage"].is_object()) {
      const json& usage = doc["usage"];
      response.usage.input_units = usage.value("prompt_tokens", std::size_t{0});
      response.usage.output_units = usage.value("completion_tokens", std::size_t{0});
    }
    return response;
  } catch (const json::exception& err) {
    throw Error(ErrorCode::transport_failure,
                std::string("chat response does not follow the wire contract: ") + err.what());
  }
}

RemoteBackend::RemoteBackend(RemoteSettings settings, std::string api_key, RetryPolicy policy)
    : settings_(std::move(settings)), policy_(policy) {
  const Endpoint endpoint = split_endpoint(settings_.endpoint);
  const std::size_t timeout = settings_.timeout_seconds;
  transport_ = [endpoint, timeout, key = std::move(api_key)](const std::string& body) {
    httplib::Client client(endpoint.origin);
    client.set_connection_timeout(30);
    client.set_read_timeout(static_cast<time_t>(timeout));
    client.set_write_timeout(60);
    httplib::Headers headers;
    if (!key.empty()) headers.emplace("Authorization", "Bearer " + key);
    HttpResult result;
    if (auto response = client.Post(endpoint.path, headers, body, "application/json")) {
      result.status = response->status;
      result.body = response->body;
    } else {
      result.transport_error = httplib::to_string(response.error());
    }
    return result;
  };
  sleeper_ = [](std::chrono::milliseconds delay) { std::this_thread::sleep_for(delay); };
}

RemoteBackend::RemoteBackend(RemoteSettings settings, RetryPolicy policy, Transport transport,
                             Sleeper sleeper)
    : settings_(std::move(settings)),
      policy_(policy),
      transport_(std::move(transport)),
      sleeper_(std::move(sleeper)) {}

std::unique_ptr<RemoteBackend> RemoteBackend::from_environment(RemoteSettings settings, RetryPolicy policy) {
  const char* key = std::getenv("AIM_API_KEY");
  return std::make_unique<RemoteBackend>(
      std::move(settings), key == nullptr ? std::string() : std::string(key), policy);
}

ChatResponse RemoteBackend::complete(const ChatRequest& request) {
  request.validate();
  const std::string body = encode_chat_request(request, settings_.model);
  const std::size_t max_attempts = std::clamp<std::size_t>(policy_.max_attempts, 1, kMaxTransportAttempts);
  std::string last_problem;
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    if (attempt > 1) sleeper_(policy_.delay_before(attempt));
    ++attempts_;
    const HttpResult result = transport_(body);
    if (result.status == 401 || result.status == 403) {
      throw Error(ErrorCode::auth_failure,
                  "endpoint rejected the credential (HTTP " + std::to_string(result.status) + ")");
    }
    if (result.status >= 200 && result.status < 300) return decode_chat_response(result.body);
    last_problem = result.status == 0 ? result.transport_error
                                      : "HTTP " + std::to_string(result.status);
    if (!is_transient(result)) {
      throw Error(ErrorCode::transport_failure, "permanent failure: " + last_problem);
    }
  }
  throw Error(ErrorCode::transport_failure, "gave up after " + std::to_string(max_attempts) +
                                                " attempts: " + last_problem);
}

}  // namespace aimforge
