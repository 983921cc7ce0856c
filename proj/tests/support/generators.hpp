#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "aimforge/agents.hpp"
#include "aimforge/model.hpp"

namespace aimforge::testing {

/// Statement/proof-like text: LaTeX fragments, Unicode math, inner newlines.
/// Never starts or ends with whitespace and never contains a tag.
[[nodiscard]] std::string random_math_text(std::mt19937_64& rng, std::size_t max_words = 24);

[[nodiscard]] std::vector<ExtractedConjecture> random_conjectures(std::mt19937_64& rng,
                                                                  std::size_t max_count = 6);

/// Arbitrary bytes, including invalid UTF-8 and stray verdict fragments.
[[nodiscard]] std::string random_bytes(std::mt19937_64& rng, std::size_t max_length = 400);

struct VerdictFixture {
  std::string text;
  Verdict expected;
};
/// Hand-labeled reviewer replies.
[[nodiscard]] const std::vector<VerdictFixture>& verdict_fixtures();

/// Random trajectory entries with optional fields and reviews filled in.
[[nodiscard]] std::vector<TrajectoryEntry> random_trajectory(std::mt19937_64& rng,
                                                             std::size_t max_entries = 30);

/// Text mixing table symbols, script runs, ASCII and other Unicode.
[[nodiscard]] std::string random_unicode_math(std::mt19937_64& rng, std::size_t max_length = 40);

}  // namespace aimforge::testing
