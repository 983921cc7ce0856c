#include "aimforge/model.hpp"

#include <algorithm>
#include <array>

#include "aimforge/error.hpp"

namespace aimforge {
namespace {

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view name, const std::array<Enum, N>& values, std::string_view what) {
  for (const Enum value : values) {
    if (to_string(value) == name) return value;
  }
  throw Error(ErrorCode::invalid_argument,
              "unknown " + std::string(what) + " '" + std::string(name) + "'");
}

constexpr std::array kKinds{StatementKind::conjecture, StatementKind::lemma, StatementKind::theorem};
constexpr std::array kStatuses{Status::proposed, Status::under_review, Status::refining,
                               Status::accepted, Status::rejected, Status::discarded};
constexpr std::array kVerdicts{Verdict::accept, Verdict::reject, Verdict::inconclusive};
constexpr std::array kEntryTypes{EntryType::assumption, EntryType::hint, EntryType::conjecture,
                                 EntryType::lemma, EntryType::theorem, EntryType::event};

}  // namespace

std::string_view to_string(StatementKind kind) noexcept {
  switch (kind) {
    case StatementKind::conjecture: return "conjecture";
    case StatementKind::lemma: return "lemma";
    case StatementKind::theorem: return "theorem";
  }
  return "?";
}

std::string_view to_string(Status status) noexcept {
  switch (status) {
    case Status::proposed: return "proposed";
    case Status::under_review: return "under_review";
    case Status::refining: return "refining";
    case Status::accepted: return "accepted";
    case Status::rejected: return "rejected";
    case Status::discarded: return "discarded";
  }
  return "?";
}

std::string_view to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::accept: return "accept";
    case Verdict::reject: return "reject";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string_view to_string(EntryType type) noexcept {
  switch (type) {
    case EntryType::assumption: return "assumption";
    case EntryType::hint: return "hint";
    case EntryType::conjecture: return "conjecture";
    case EntryType::lemma: return "lemma";
    case EntryType::theorem: return "theorem";
    case EntryType::event: return "event";
  }
  return "?";
}

std::string_view to_string(Annotation annotation) noexcept {
  switch (annotation) {
    case Annotation::correct: return "Correct";
    case Annotation::vague: return "Vague";
    case Annotation::error: return "Error";
  }
  return "?";
}

StatementKind parse_statement_kind(std::string_view name) {
  return parse_enum(name, kKinds, "statement kind");
}
Status parse_status(std::string_view name) { return parse_enum(name, kStatuses, "status"); }
Verdict parse_verdict(std::string_view name) { return parse_enum(name, kVerdicts, "verdict"); }
EntryType parse_entry_type(std::string_view name) {
  return parse_enum(name, kEntryTypes, "entry type");
}

void ProblemContext::validate() const {
  if (normalize_statement(target_statement).empty()) {
    throw Error(ErrorCode::invalid_argument, "problem has an empty target statement");
  }
}

std::vector<Review> StatementRecord::latest_round() const {
  std::vector<Review> round;
  if (reviews.empty()) return round;
  const std::size_t last = reviews.back().round;
  for (const Review& review : reviews) {
    if (review.round == last && !review.superseded) round.push_back(review);
  }
  return round;
}

bool is_allowed_transition(Status from, Status to, std::size_t refine_count,
                           std::size_t refine_cap) noexcept {
  switch (from) {
    case Status::proposed:
      return to == Status::under_review;
    case Status::under_review:
      if (to == Status::accepted || to == Status::refining) return true;
      return to == Status::discarded && refine_count >= refine_cap;
    case Status::refining:
      if (to == Status::under_review) return true;
      // A refiner reply without a proof consumes a round without review, so
      // the cap can be reached while still refining.
      return to == Status::discarded && refine_count >= refine_cap;
    case Status::accepted:
    case Status::rejected:
    case Status::discarded:
      return false;
  }
  return false;
}

void transition(StatementRecord& record, Status next, std::size_t refine_cap) {
  if (!is_allowed_transition(record.status, next, record.refine_count, refine_cap)) {
    throw Error(ErrorCode::invalid_transition,
                "record " + record.id + ": " + std::string(to_string(record.status)) + " -> " +
                    std::string(to_string(next)) + " (refine_count " +
                    std::to_string(record.refine_count) + ", cap " + std::to_string(refine_cap) +
                    ")");
  }
  record.status = next;
}

std::optional<Annotation> annotation_of(const TrajectoryEntry& entry) {
  if (!entry.comment) return std::nullopt;
  std::string_view text = *entry.comment;
  const auto start = text.find_first_not_of(" \t\r\n");
  if (start == std::string_view::npos) return std::nullopt;
  text.remove_prefix(start);
  for (const Annotation a : {Annotation::correct, Annotation::vague, Annotation::error}) {
    const std::string tag = "[" + std::string(to_string(a)) + "]";
    if (text.starts_with(tag)) return a;
  }
  return std::nullopt;
}

std::optional<std::string> find_trajectory_violation(std::span<const TrajectoryEntry> entries) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const TrajectoryEntry& entry = entries[i];
    if (i > 0 && entry.index != entries[i - 1].index + 1) {
      return "index " + std::to_string(entry.index) + " does not follow " +
             std::to_string(entries[i - 1].index);
    }
    const bool needs_flag =
        entry.entry_type == EntryType::lemma || entry.entry_type == EntryType::theorem;
    if (needs_flag && !entry.correctness) {
      return "entry " + std::to_string(entry.index) + " (" +
             std::string(to_string(entry.entry_type)) + ") has no correctness flag";
    }
  }
  return std::nullopt;
}

InsertOutcome LemmaStore::insert(const StatementRecord& record) {
  if (record.status != Status::accepted) {
    throw Error(ErrorCode::precondition_violation,
                "insert_lemma: record " + record.id + " has status " +
                    std::string(to_string(record.status)) + ", expected accepted");
  }
  Fingerprint key = fingerprint_of(record.statement);
  if (digest_index_.contains(key.canonical)) return InsertOutcome::duplicate;
  StatementRecord lemma = record;
  lemma.kind = StatementKind::lemma;
  digest_index_.emplace(std::move(key.canonical), lemma.id);
  lemmas_.push_back(std::move(lemma));
  return InsertOutcome::inserted;
}

bool LemmaStore::contains(std::string_view statement) const {
  return digest_index_.contains(fingerprint_of(statement).canonical);
}

std::optional<std::string> LemmaStore::lemma_id_for(std::string_view statement) const {
  const auto it = digest_index_.find(fingerprint_of(statement).canonical);
  if (it == digest_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<DigestItem> context_digest(const LemmaStore& store, std::size_t budget) {
  const auto& lemmas = store.lemmas();
  std::size_t used = 0;
  std::size_t first = lemmas.size();
  while (first > 0) {
    const StatementRecord& candidate = lemmas[first - 1];
    const std::size_t length = candidate.statement.size() + candidate.proof.size();
    if (used + length > budget) break;
    used += length;
    --first;
  }
  std::vector<DigestItem> digest;
  digest.reserve(lemmas.size() - first);
  for (std::size_t i = first; i < lemmas.size(); ++i) {
    digest.push_back({lemmas[i].statement, lemmas[i].proof});
  }
  return digest;
}

}  // namespace aimforge
