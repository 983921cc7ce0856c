#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aimforge/backend.hpp"
#include "aimforge/config.hpp"
#include "aimforge/model.hpp"
#include "aimforge/prompts.hpp"

namespace aimforge {

/// Longest proof summary (bytes) shown next to a lemma in explorer prompts.
inline constexpr std::size_t kLemmaProofSummaryLength = 200;

/// The verdict instruction every verifier prompt carries.
inline constexpr std::string_view kVerdictInstruction =
    "End your reply with exactly one final line, either `VERDICT: ACCEPT` or `VERDICT: REJECT`.";

/// Rationale stored for a rejection that came with no text before the
/// verdict line.
inline constexpr std::string_view kMissingRationale = "(the reviewer rejected without a rationale)";

/// Builds role-specific requests. Pure: equal inputs give equal requests.
class PromptBuilder {
 public:
  explicit PromptBuilder(RunConfig config,
                         PromptTemplates templates = PromptTemplates::defaults());

  /// The problem context rendered as the shared system prompt.
  [[nodiscard]] std::string system_prompt(const ProblemContext& ctx) const;

  /// Throws Error(precondition_violation) unless iteration < exploration_limit.
  [[nodiscard]] ChatRequest explorer(const ProblemContext& ctx, std::span<const DigestItem> lemmas,
                                     std::size_t iteration) const;

  /// `attempt` > 0 renders the re-ask variant sent after an inconclusive
  /// review. Requires record.status == under_review.
  [[nodiscard]] ChatRequest verifier(const StatementRecord& record, const ProblemContext& ctx,
                                     std::span<const DigestItem> lemmas = {},
                                     std::size_t attempt = 0) const;

  /// Requires record.status == refining and at least one rejecting review.
  [[nodiscard]] ChatRequest refiner(const StatementRecord& record, const ProblemContext& ctx,
                                    std::span<const Review> rejecting_reviews) const;

  [[nodiscard]] ChatRequest transcriber(std::string_view text) const;

  [[nodiscard]] const RunConfig& config() const noexcept { return config_; }

 private:
  RunConfig config_;
  PromptTemplates templates_;
};

struct ExtractedConjecture {
  std::string statement;
  std::string proof;
  bool claims_final = false;

  bool operator==(const ExtractedConjecture&) const = default;
};

struct Extraction {
  std::vector<ExtractedConjecture> conjectures;
  std::size_t skipped_blocks = 0;
};

/// Parses every well-formed
///   <conjecture><statement>..</statement><proof>..</proof><final>true|false</final></conjecture>
/// block in output order. Malformed blocks, including ones whose statement
/// or proof normalizes to nothing, are skipped and counted.
[[nodiscard]] Extraction extract_conjectures(std::string_view output);

/// Renders conjectures in the tag grammar read by extract_conjectures.
[[nodiscard]] std::string render_conjectures(std::span<const ExtractedConjecture> conjectures);

/// Total: verdict from the last `VERDICT: ACCEPT|REJECT` line (case
/// insensitive), inconclusive when there is none.
[[nodiscard]] Review parse_review(std::string_view output, std::size_t reviewer_index);

struct Refinement {
  std::string statement;
  std::string proof;
  bool statement_changed = false;

  bool operator==(const Refinement&) const = default;
};

/// Takes the last <proof> block and, when present, the last <statement>
/// block. Throws Error(parse_failure) when there is no non-empty proof.
[[nodiscard]] Refinement parse_refinement(std::string_view output, const StatementRecord& prior);

/// Model-backed alternative to the symbol-table transcriber.
[[nodiscard]] std::string transcribe_with_model(Backend& backend, const PromptBuilder& prompts,
                                                std::string_view text);

}  // namespace aimforge
