#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aimforge/agents.hpp"
#include "aimforge/backend.hpp"
#include "aimforge/config.hpp"
#include "aimforge/model.hpp"
#include "aimforge/prompts.hpp"

namespace aimforge {

struct RunStats {
  std::size_t conjectures_proposed = 0;
  std::size_t accepted = 0;
  /// PRV rounds that ended in rejection.
  std::size_t rejected = 0;
  std::size_t discarded = 0;
  std::size_t duplicates_skipped = 0;
  std::size_t reviews_issued = 0;

  bool operator==(const RunStats&) const = default;
};

/// `key=value` lines, one per counter.
std::string format_stats(const RunStats& stats);

enum class StopReason { solved, exploration_limit };
std::string_view to_string(StopReason reason) noexcept;

struct RunState {
  ProblemContext ctx;
  LemmaStore store;
  std::vector<TrajectoryEntry> trajectory;
  std::size_t iteration = 0;
  bool solved = false;
  RunConfig config;
  RunStats stats;
};

struct PrvOutcome {
  Verdict verdict = Verdict::reject;
  /// Every review issued this round in slot order, superseded drafts included.
  std::vector<Review> reviews;
};

struct RunResult {
  std::vector<TrajectoryEntry> trajectory;
  RunStats stats;
  StopReason stop_reason = StopReason::exploration_limit;
  std::size_t iterations = 0;
  bool solved = false;
};

/// Pessimistic aggregation: accept iff every verdict is accept. Throws
/// Error(empty_verdict_list) on an empty list and
/// Error(precondition_violation) on an unresolved inconclusive verdict.
[[nodiscard]] Verdict aggregate_pessimistic(std::span<const Verdict> verdicts);

/// Reviews in a round that did not accept (the refiner's input).
[[nodiscard]] std::vector<Review> rejecting_reviews(std::span<const Review> round);

/// Drives the exploration loop and the verify/refine loop over one
/// problem. Trajectory entries are handed to the sink as soon as they are
/// appended.
class Orchestrator {
 public:
  using Sink = std::function<void(const TrajectoryEntry&)>;
  using Clock = std::function<Timestamp()>;

  Orchestrator(Backend& backend, ProblemContext ctx, RunConfig config,
               PromptTemplates templates = PromptTemplates::defaults());

  void set_sink(Sink sink) { sink_ = std::move(sink); }
  void set_clock(Clock clock) { clock_ = std::move(clock); }

  /// Seeds the trajectory with the assumption and hint entries. Called by
  /// run(); a no-op after the first call.
  void begin();

  /// k independent reviews of `record` (status under_review). Each
  /// inconclusive review is re-asked once; a second inconclusive counts as
  /// a rejection. Appends the reviews to the record and logs the round.
  PrvOutcome prv_verify(StatementRecord& record);

  /// Refine, re-verify, repeat until accepted or refine_cap rounds are
  /// spent. `record` must have just failed a PRV round.
  StatementRecord refine_loop(StatementRecord record);

  /// One explorer call and the full treatment of every extracted block.
  void exploration_iteration();

  /// begin(), exploration until solved or the limit, then a stop event.
  RunResult run();

  [[nodiscard]] const RunState& state() const noexcept { return state_; }

 private:
  void handle_conjecture(const ExtractedConjecture& conjecture);
  void promote(StatementRecord& record);
  const TrajectoryEntry& append(TrajectoryEntry entry);
  const TrajectoryEntry& log_event(std::string comment);
  /// Reviews issued for one slot: the first review, plus its re-ask when
  /// the first was inconclusive.
  std::vector<Review> review_slot(const StatementRecord& record, std::span<const DigestItem> lemmas,
                                  std::size_t slot, std::size_t round);

  Backend& backend_;
  PromptBuilder prompts_;
  RunState state_;
  Sink sink_;
  Clock clock_;
  std::size_t next_record_ = 1;
  bool begun_ = false;
};

}  // namespace aimforge
