#include <gtest/gtest.h>

#include "aimforge/backend.hpp"
#include "aimforge/error.hpp"

namespace aimforge {
namespace {

ChatRequest request_for(Role role, std::string user = "prompt") {
  ChatRequest request;
  request.system_prompt = "system";
  request.user_prompt = std::move(user);
  request.sampling = {0.2, 100};
  request.role_tag = role;
  return request;
}

TEST(ChatRequest, Validate) {
  EXPECT_NO_THROW(request_for(Role::verifier).validate());
  ChatRequest bad = request_for(Role::verifier);
  bad.user_prompt.clear();
  EXPECT_THROW(bad.validate(), Error);
  bad = request_for(Role::verifier);
  bad.sampling.temperature = -0.1;
  EXPECT_THROW(bad.validate(), Error);
  bad = request_for(Role::verifier);
  bad.sampling.max_output_length = 0;
  EXPECT_THROW(bad.validate(), Error);
}

TEST(Script, ReplaysInOrderPerRole) {
  Script script;
  script.add(Role::explorer, "e1");
  script.add(Role::verifier, "v1");
  script.add(Role::verifier, "v2");

  auto [first, rest] = scripted_next(script, request_for(Role::verifier));
  EXPECT_EQ(first.text, "v1");
  EXPECT_EQ(rest.remaining(), 2U);
  auto [second, rest2] = scripted_next(rest, request_for(Role::explorer));
  EXPECT_EQ(second.text, "e1");
  auto [third, rest3] = scripted_next(rest2, request_for(Role::verifier));
  EXPECT_EQ(third.text, "v2");
  EXPECT_EQ(rest3.remaining(), 0U);
  // The input script is a value and stays untouched.
  EXPECT_EQ(script.remaining(), 3U);
}

TEST(Script, ContainsMatcher) {
  Script script;
  script.add(Role::verifier, "about B", std::string("lemma B"));
  script.add(Role::verifier, "about A", std::string("lemma A"));
  auto [response, rest] = scripted_next(script, request_for(Role::verifier, "check lemma A please"));
  EXPECT_EQ(response.text, "about A");
  EXPECT_EQ(rest.remaining(), 1U);
}

TEST(Script, ExhaustedThrowsAndLeavesStateAlone) {
  Script script;
  script.add(Role::refiner, "r");
  ScriptedBackend backend(script);
  try {
    (void)backend.complete(request_for(Role::verifier));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::script_exhausted);
  }
  EXPECT_EQ(backend.script().remaining(), 1U);
  EXPECT_EQ(backend.complete(request_for(Role::refiner)).text, "r");
  EXPECT_THROW((void)backend.complete(request_for(Role::refiner)), Error);
}

TEST(Script, UsageAccounting) {
  Script script;
  script.add(Role::explorer, "abcd");
  script.add(Role::explorer, "cut", std::nullopt, FinishReason::length_truncated);
  ScriptedBackend backend(script);
  const ChatRequest request = request_for(Role::explorer, "12345");
  const ChatResponse full = backend.complete(request);
  EXPECT_EQ(full.usage.input_units, 6U + 5U);
  EXPECT_EQ(full.usage.output_units, 4U);
  const ChatResponse cut = backend.complete(request);
  EXPECT_EQ(cut.finish_reason, FinishReason::length_truncated);
  EXPECT_EQ(cut.usage.output_units, 100U);
  EXPECT_EQ(backend.requests().size(), 2U);
}

TEST(Script, JsonRoundTrip) {
  Script script;
  script.add(Role::explorer, "line one\nline \"two\"");
  script.add(Role::verifier, "VERDICT: ACCEPT", std::string("needle"));
  script.add(Role::refiner, "x", std::nullopt, FinishReason::refused);
  const Script again = parse_script(serialize_script(script));
  EXPECT_EQ(again, script);
}

TEST(Script, MalformedFiles) {
  const auto code = [](std::string_view text) {
    try {
      (void)parse_script(text);
    } catch (const Error& err) {
      return err.code();
    }
    return ErrorCode::invalid_argument;
  };
  EXPECT_EQ(code("{"), ErrorCode::malformed_input);
  EXPECT_EQ(code("[]"), ErrorCode::malformed_input);
  EXPECT_EQ(code(R"({"steps":[{"role":"critic","text":"x"}]})"), ErrorCode::malformed_input);
  EXPECT_EQ(code(R"({"steps":[{"role":"verifier"}]})"), ErrorCode::malformed_input);
  EXPECT_EQ(code(R"({"steps":[{"role":"verifier","text":"x","finish_reason":"timeout"}]})"),
            ErrorCode::malformed_input);
}

}  // namespace
}  // namespace aimforge
