#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "aimforge/backend.hpp"
#include "aimforge/config.hpp"

namespace aimforge {

/// Hard ceiling on HTTP attempts per request, whatever the policy says.
inline constexpr std::size_t kMaxTransportAttempts = 5;

/// Exponential backoff: attempt n (1-based) waits initial_delay * factor^(n-2)
/// before it is sent; attempt 1 goes out immediately.
struct RetryPolicy {
  std::chrono::milliseconds initial_delay{1000};
  double factor = 2.0;
  std::size_t max_attempts = 5;

  [[nodiscard]] std::chrono::milliseconds delay_before(std::size_t attempt) const;
};

/// Transport-level outcome of one HTTP exchange, before retry decisions.
struct HttpResult {
  int status = 0;  ///< 0 when no response arrived (connect/read failure)
  std::string body;
  std::string transport_error;
};

/// 408, 425, 429 and 5xx, plus any exchange that produced no response.
[[nodiscard]] bool is_transient(const HttpResult& result) noexcept;

/// Wire format helpers for the OpenAI-style chat-completions contract.
std::string encode_chat_request(const ChatRequest& request, std::string_view model);
/// Throws Error(transport_failure) on a body that does not follow the
/// contract. Reasoning traces (`reasoning_content`, <think> blocks) are
/// dropped.
ChatResponse decode_chat_response(std::string_view body);

class RemoteBackend final : public Backend {
 public:
  using Transport = std::function<HttpResult(const std::string& body)>;
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  /// `api_key` may be empty for endpoints that need no credential.
  RemoteBackend(RemoteSettings settings, std::string api_key, RetryPolicy policy = {});

  /// Test seam: replaces the HTTP exchange and the sleep between attempts.
  RemoteBackend(RemoteSettings settings, RetryPolicy policy, Transport transport,
                Sleeper sleeper);

  /// Reads the credential from AIM_API_KEY.
  static std::unique_ptr<RemoteBackend> from_environment(RemoteSettings settings, RetryPolicy policy = {});

  ChatResponse complete(const ChatRequest& request) override;

  /// Total HTTP attempts made by this backend so far.
  [[nodiscard]] std::size_t attempts() const noexcept { return attempts_.load(); }

 private:
  RemoteSettings settings_;
  RetryPolicy policy_;
  Transport transport_;
  Sleeper sleeper_;
  std::atomic<std::size_t> attempts_{0};
};

}  // namespace aimforge
