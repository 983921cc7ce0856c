#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "aimforge/backend.hpp"
#include "aimforge/config.hpp"
#include "aimforge/model.hpp"
#include "aimforge/orchestrator.hpp"

namespace aimforge::testing {

[[nodiscard]] std::filesystem::path fixture_path(std::string_view relative);

/// Clock for reproducible trajectories: 2025-01-01T00:00:00.000Z plus one
/// second per call.
class StepClock {
 public:
  Timestamp operator()();

 private:
  long long ticks_ = 0;
};

/// The scripted scenario in fixtures/golden.
struct GoldenRun {
  RunResult result;
  std::size_t unconsumed_steps = 0;
};

[[nodiscard]] GoldenRun run_golden_scenario();

/// The expected entry sequence of the golden scenario, written out by hand:
/// (entry_type, correctness, comment) per entry.
struct ExpectedEntry {
  EntryType type;
  std::optional<bool> correctness;
  std::optional<std::string> comment;
};
[[nodiscard]] const std::vector<ExpectedEntry>& golden_expected_entries();
[[nodiscard]] RunStats golden_expected_stats();

/// Replaces every "timestamp":"..." value with a fixed token.
[[nodiscard]] std::string mask_timestamps(std::string_view jsonl);

}  // namespace aimforge::testing
