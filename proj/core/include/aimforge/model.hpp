#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace aimforge {

enum class StatementKind { conjecture, lemma, theorem };
enum class Status { proposed, under_review, refining, accepted, rejected, discarded };
enum class Verdict { accept, reject, inconclusive };
enum class EntryType { assumption, hint, conjecture, lemma, theorem, event };

/// Manual annotation labels carried in trajectory comments ("[Vague] ...").
enum class Annotation { correct, vague, error };

std::string_view to_string(StatementKind kind) noexcept;
std::string_view to_string(Status status) noexcept;
std::string_view to_string(Verdict verdict) noexcept;
std::string_view to_string(EntryType type) noexcept;
std::string_view to_string(Annotation annotation) noexcept;

// Inverse of to_string; throw Error(invalid_argument) on unknown names.
StatementKind parse_statement_kind(std::string_view name);
Status parse_status(std::string_view name);
Verdict parse_verdict(std::string_view name);
EntryType parse_entry_type(std::string_view name);

/// The human-authored problem: background, hints and the target statement.
struct ProblemContext {
  std::string title;
  std::vector<std::string> assumptions;
  std::vector<std::string> hints;
  std::string target_statement;

  /// Throws Error(invalid_argument) when the target statement is blank.
  void validate() const;

  bool operator==(const ProblemContext&) const = default;
};

/// One verifier pass. `round` numbers the PRV round within its record and
/// `superseded` marks an inconclusive draft that was re-asked.
struct Review {
  Verdict verdict = Verdict::inconclusive;
  std::string rationale;
  std::size_t reviewer_index = 0;
  std::string raw_output;
  std::size_t round = 0;
  bool superseded = false;

  bool operator==(const Review&) const = default;
};

struct StatementRecord {
  std::string id;
  StatementKind kind = StatementKind::conjecture;
  std::string statement;
  std::string proof;
  Status status = Status::proposed;
  std::vector<Review> reviews;
  std::size_t refine_count = 0;
  std::size_t origin_iteration = 0;
  bool claims_final = false;

  /// Reviews of the most recent PRV round, superseded drafts excluded.
  [[nodiscard]] std::vector<Review> latest_round() const;

  bool operator==(const StatementRecord&) const = default;
};

/// Lifecycle graph:
///   proposed -> under_review -> {accepted | refining}
///   refining -> under_review
///   under_review -> discarded, refining -> discarded   (refine_count >= cap)
[[nodiscard]] bool is_allowed_transition(Status from, Status to, std::size_t refine_count,
                                         std::size_t refine_cap) noexcept;

/// Moves `record` to `next`, throwing Error(invalid_transition) on an edge
/// outside the lifecycle graph.
void transition(StatementRecord& record, Status next, std::size_t refine_cap);

using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

struct TrajectoryEntry {
  std::uint64_t index = 0;
  EntryType entry_type = EntryType::event;
  std::optional<bool> correctness;
  std::optional<std::string> statement;
  std::optional<std::string> proof;
  std::optional<std::string> comment;
  std::optional<std::vector<Review>> reviews;
  Timestamp timestamp{};
  /// Fields this version does not know about, kept as (name, raw JSON value)
  /// in their original order so that rewriting a file loses nothing.
  std::vector<std::pair<std::string, std::string>> extra;

  bool operator==(const TrajectoryEntry&) const = default;
};

/// Reads a leading "[Correct]", "[Vague]" or "[Error]" tag from the comment.
[[nodiscard]] std::optional<Annotation> annotation_of(const TrajectoryEntry& entry);

/// Checks index continuity and the lemma/theorem correctness requirement.
/// Returns a description of the first violation, if any.
[[nodiscard]] std::optional<std::string> find_trajectory_violation(
    std::span<const TrajectoryEntry> entries);

/// Canonical form used for deduplication: NFC, markdown emphasis and
/// backticks removed, whitespace collapsed and trimmed. Case is kept.
[[nodiscard]] std::string normalize_statement(std::string_view text);

/// Key under which the lemma store deduplicates a statement.
struct Fingerprint {
  std::string canonical;

  bool operator==(const Fingerprint&) const = default;
};

[[nodiscard]] Fingerprint fingerprint_of(std::string_view statement);

enum class InsertOutcome { inserted, duplicate };

struct DigestItem {
  std::string statement;
  std::string proof;

  bool operator==(const DigestItem&) const = default;
};

class LemmaStore {
 public:
  /// Appends an accepted record as a lemma unless a lemma with the same
  /// fingerprint already exists. Throws Error(precondition_violation) when
  /// the record is not accepted.
  InsertOutcome insert(const StatementRecord& record);

  [[nodiscard]] bool contains(std::string_view statement) const;
  [[nodiscard]] std::optional<std::string> lemma_id_for(std::string_view statement) const;

  [[nodiscard]] const std::vector<StatementRecord>& lemmas() const noexcept { return lemmas_; }
  [[nodiscard]] std::size_t size() const noexcept { return lemmas_.size(); }
  [[nodiscard]] bool empty() const noexcept { return lemmas_.empty(); }

 private:
  std::vector<StatementRecord> lemmas_;
  std::unordered_map<std::string, std::string> digest_index_;
};

/// Newest lemmas whose combined statement+proof length fits in `budget`
/// bytes, returned oldest first. Lemmas are never cut.
[[nodiscard]] std::vector<DigestItem> context_digest(const LemmaStore& store, std::size_t budget);

}  // namespace aimforge
