#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "aimforge/model.hpp"

namespace aimforge {

enum class Role { explorer, verifier, refiner, transcriber };

std::string_view to_string(Role role) noexcept;
Role parse_role(std::string_view name);

struct SamplingParams {
  double temperature = 0.0;
  std::size_t max_output_length = 0;

  bool operator==(const SamplingParams&) const = default;
};

struct RoleParams {
  SamplingParams explorer{0.8, 32768};
  SamplingParams verifier{0.2, 16384};
  SamplingParams refiner{0.5, 32768};
  SamplingParams transcriber{0.0, 16384};

  [[nodiscard]] const SamplingParams& for_role(Role role) const noexcept;
  bool operator==(const RoleParams&) const = default;
};

/// Chat-completion endpoint used by the remote backend. The API key never
/// lives here; it is read from AIM_API_KEY.
struct RemoteSettings {
  std::string endpoint = "http://127.0.0.1:8000/v1/chat/completions";
  std::string model = "deepseek-reasoner";
  std::size_t timeout_seconds = 600;

  bool operator==(const RemoteSettings&) const = default;
};

/// Every tunable the workflow leaves open. Defaults are guesses, not
/// measured values.
struct RunConfig {
  std::size_t k_reviews = 3;
  std::size_t exploration_limit = 8;
  std::size_t refine_cap = 3;
  std::size_t lemma_context_budget = 8000;
  RoleParams role_params;
  std::optional<std::string> correction_suggestions;
  bool dedup_enabled = true;
  /// Whether verifier prompts list the established lemmas as trusted context.
  bool verifier_sees_lemmas = true;
  std::optional<std::filesystem::path> template_dir;
  RemoteSettings remote;

  /// Throws Error(invalid_argument) when a positive field is zero or a
  /// temperature lies outside [0, 2].
  void validate() const;

  bool operator==(const RunConfig&) const = default;
};

/// Parses the TOML config format (keys mirror RunConfig field names).
/// Throws Error(malformed_input) on syntax errors and unknown keys.
RunConfig parse_run_config(std::string_view toml_text, std::string_view source_name = "config");
RunConfig load_run_config(const std::filesystem::path& path);

/// Parses a problem file: `title`, repeated `assumption` and `hint` blocks
/// and one `problem` block.
ProblemContext parse_problem(std::string_view toml_text, std::string_view source_name = "problem");
ProblemContext load_problem(const std::filesystem::path& path);

/// Reads a whole file; throws Error(io_failure) naming the path.
std::string read_file(const std::filesystem::path& path);

}  // namespace aimforge
