#include "aimforge/orchestrator.hpp"

#include <exception>
#include <future>
#include <sstream>

#include "aimforge/error.hpp"

namespace aimforge {
namespace {

Timestamp wall_clock_now() {
  return std::chrono::floor<std::chrono::milliseconds>(std::chrono::system_clock::now());
}

bool is_backend_failure(ErrorCode code) {
  return code == ErrorCode::transport_failure || code == ErrorCode::auth_failure ||
         code == ErrorCode::script_exhausted;
}

}  // namespace

std::string format_stats(const RunStats& stats) {
  std::ostringstream out;
  out << "conjectures_proposed=" << stats.conjectures_proposed << "\n"
      << "accepted=" << stats.accepted << "\n"
      << "rejected=" << stats.rejected << "\n"
      << "discarded=" << stats.discarded << "\n"
      << "duplicates_skipped=" << stats.duplicates_skipped << "\n"
      << "reviews_issued=" << stats.reviews_issued << "\n";
  return out.str();
}

std::string_view to_string(StopReason reason) noexcept {
  switch (reason) {
    case StopReason::solved: return "solved";
    case StopReason::exploration_limit: return "exploration_limit";
  }
  return "?";
}

Verdict aggregate_pessimistic(std::span<const Verdict> verdicts) {
  if (verdicts.empty()) {
    throw Error(ErrorCode::empty_verdict_list, "pessimistic aggregation over zero verdicts");
  }
  Verdict result = Verdict::accept;
  for (const Verdict v : verdicts) {
    if (v == Verdict::inconclusive) {
      throw Error(ErrorCode::precondition_violation,
                  "inconclusive verdicts must be resolved before aggregation");
    }
    if (v == Verdict::reject) result = Verdict::reject;
  }
  return result;
}

std::vector<Review> rejecting_reviews(std::span<const Review> round) {
  std::vector<Review> out;
  for (const Review& review : round) {
    if (!review.superseded && review.verdict != Verdict::accept) out.push_back(review);
  }
  return out;
}

Orchestrator::Orchestrator(Backend& backend, ProblemContext ctx, RunConfig config,
                           PromptTemplates templates)
    : backend_(backend), prompts_(config, std::move(templates)), clock_(wall_clock_now) {
  ctx.validate();
  config.validate();
  state_.ctx = std::move(ctx);
  state_.config = std::move(config);
}

const TrajectoryEntry& Orchestrator::append(TrajectoryEntry entry) {
  entry.index = state_.trajectory.size();
  entry.timestamp = clock_();
  state_.trajectory.push_back(std::move(entry));
  if (sink_) sink_(state_.trajectory.back());
  return state_.trajectory.back();
}

const TrajectoryEntry& Orchestrator::log_event(std::string comment) {
  TrajectoryEntry entry;
  entry.entry_type = EntryType::event;
  entry.comment = std::move(comment);
  return append(std::move(entry));
}

void Orchestrator::begin() {
  if (begun_) return;
  begun_ = true;
  for (const std::string& text : state_.ctx.assumptions) {
    TrajectoryEntry entry;
    entry.entry_type = EntryType::assumption;
    entry.statement = text;
    append(std::move(entry));
  }
  for (const std::string& text : state_.ctx.hints) {
    TrajectoryEntry entry;
    entry.entry_type = EntryType::hint;
    entry.statement = text;
    append(std::move(entry));
  }
}

std::vector<Review> Orchestrator::review_slot(const StatementRecord& record,
                                              std::span<const DigestItem> lemmas,
                                              std::size_t slot, std::size_t round) {
  std::vector<Review> issued;
  for (std::size_t attempt = 0; attempt < 2; ++attempt) {
    const ChatResponse response =
        backend_.complete(prompts_.verifier(record, state_.ctx, lemmas, attempt));
    Review review = parse_review(response.text, slot);
    review.round = round;
    issued.push_back(std::move(review));
    if (issued.back().verdict != Verdict::inconclusive) break;
  }
  if (issued.size() == 2) issued.front().superseded = true;
  return issued;
}

PrvOutcome Orchestrator::prv_verify(StatementRecord& record) {
  if (record.status != Status::under_review) {
    throw Error(ErrorCode::precondition_violation,
                "prv_verify on record " + record.id + " in status " +
                    std::string(to_string(record.status)));
  }
  const std::size_t k = state_.config.k_reviews;
  const std::size_t round = record.reviews.empty() ? 0 : record.reviews.back().round + 1;
  const std::vector<DigestItem> lemmas =
      state_.config.verifier_sees_lemmas
          ? context_digest(state_.store, state_.config.lemma_context_budget)
          : std::vector<DigestItem>{};

  std::vector<std::vector<Review>> per_slot(k);
  if (backend_.supports_concurrent_calls() && k > 1) {
    std::vector<std::future<std::vector<Review>>> pending;
    pending.reserve(k);
    for (std::size_t slot = 0; slot < k; ++slot) {
      pending.push_back(std::async(std::launch::async, [this, &record, &lemmas, slot, round] {
        return review_slot(record, lemmas, slot, round);
      }));
    }
    std::exception_ptr failure;
    for (std::size_t slot = 0; slot < k; ++slot) {
      try {
        per_slot[slot] = pending[slot].get();
      } catch (...) {
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    for (std::size_t slot = 0; slot < k; ++slot) {
      per_slot[slot] = review_slot(record, lemmas, slot, round);
    }
  }

  PrvOutcome outcome;
  std::vector<Verdict> resolved;
  resolved.reserve(k);
  for (auto& slot_reviews : per_slot) {
    const Verdict last = slot_reviews.back().verdict;
    resolved.push_back(last == Verdict::inconclusive ? Verdict::reject : last);
    for (Review& review : slot_reviews) outcome.reviews.push_back(std::move(review));
  }
  outcome.verdict = aggregate_pessimistic(resolved);

  state_.stats.reviews_issued += outcome.reviews.size();
  if (outcome.verdict == Verdict::reject) ++state_.stats.rejected;
  record.reviews.insert(record.reviews.end(), outcome.reviews.begin(), outcome.reviews.end());

  TrajectoryEntry entry;
  entry.entry_type = EntryType::event;
  entry.correctness = outcome.verdict == Verdict::accept;
  entry.statement = record.statement;
  entry.reviews = outcome.reviews;
  entry.comment = "event=prv_round record=" + record.id + " round=" + std::to_string(round) +
                  " verdict=" + std::string(to_string(outcome.verdict)) +
                  " calls=" + std::to_string(outcome.reviews.size());
  append(std::move(entry));
  return outcome;
}

StatementRecord Orchestrator::refine_loop(StatementRecord record) {
  const std::size_t cap = state_.config.refine_cap;
  std::vector<Review> objections = rejecting_reviews(record.latest_round());
  if (record.status != Status::under_review || objections.empty()) {
    throw Error(ErrorCode::precondition_violation,
                "refine_loop needs a record that just failed review (" + record.id + ")");
  }
  for (;;) {
    if (record.refine_count >= cap) {
      transition(record, Status::discarded, cap);
      ++state_.stats.discarded;
      TrajectoryEntry entry;
      entry.entry_type = EntryType::event;
      entry.correctness = false;
      entry.statement = record.statement;
      entry.proof = record.proof;
      entry.comment = "event=discarded record=" + record.id +
                      " refine_count=" + std::to_string(record.refine_count);
      append(std::move(entry));
      return record;
    }
    if (record.status == Status::under_review) transition(record, Status::refining, cap);
    ++record.refine_count;
    const std::string round = std::to_string(record.refine_count);

    const ChatResponse response =
        backend_.complete(prompts_.refiner(record, state_.ctx, objections));
    Refinement refinement;
    try {
      refinement = parse_refinement(response.text, record);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::parse_failure) throw;
      log_event("event=refine_parse_failure record=" + record.id + " round=" + round);
      continue;
    }

    record.statement = refinement.statement;
    record.proof = refinement.proof;
    TrajectoryEntry revision;
    revision.entry_type = EntryType::event;
    revision.statement = record.statement;
    revision.proof = record.proof;
    revision.comment = "event=refinement record=" + record.id + " round=" + round +
                       " statement_changed=" + (refinement.statement_changed ? "true" : "false");
    append(std::move(revision));
    if (refinement.statement_changed) {
      // The adjusted statement is a new conjecture in its own right.
      TrajectoryEntry conjecture;
      conjecture.entry_type = EntryType::conjecture;
      conjecture.statement = record.statement;
      conjecture.proof = record.proof;
      conjecture.comment = "record=" + record.id + " refined_round=" + round +
                           " claims_final=" + (record.claims_final ? "true" : "false");
      append(std::move(conjecture));
    }

    transition(record, Status::under_review, cap);
    if (prv_verify(record).verdict == Verdict::accept) {
      transition(record, Status::accepted, cap);
      return record;
    }
    objections = rejecting_reviews(record.latest_round());
  }
}

void Orchestrator::promote(StatementRecord& record) {
  if (record.claims_final && !state_.solved) {
    record.kind = StatementKind::theorem;
    state_.solved = true;
    TrajectoryEntry entry;
    entry.entry_type = EntryType::theorem;
    entry.correctness = true;
    entry.statement = record.statement;
    entry.proof = record.proof;
    append(std::move(entry));
    return;
  }
  const auto existing = state_.store.lemma_id_for(record.statement);
  if (state_.store.insert(record) == InsertOutcome::duplicate) {
    ++state_.stats.duplicates_skipped;
    TrajectoryEntry entry;
    entry.entry_type = EntryType::event;
    entry.statement = record.statement;
    entry.comment = "event=duplicate_skipped record=" + record.id + " stage=promotion" +
                    " duplicate_of=" + existing.value_or("?");
    append(std::move(entry));
    return;
  }
  record.kind = StatementKind::lemma;
  TrajectoryEntry entry;
  entry.entry_type = EntryType::lemma;
  entry.correctness = true;
  entry.statement = record.statement;
  entry.proof = record.proof;
  append(std::move(entry));
}

void Orchestrator::handle_conjecture(const ExtractedConjecture& conjecture) {
  StatementRecord record;
  record.id = "C" + std::to_string(next_record_++);
  record.statement = conjecture.statement;
  record.proof = conjecture.proof;
  record.claims_final = conjecture.claims_final;
  record.origin_iteration = state_.iteration;

  TrajectoryEntry proposed;
  proposed.entry_type = EntryType::conjecture;
  proposed.statement = record.statement;
  proposed.proof = record.proof;
  proposed.comment = "record=" + record.id + " iteration=" + std::to_string(state_.iteration) +
                     " claims_final=" + (record.claims_final ? "true" : "false");
  append(std::move(proposed));

  if (state_.config.dedup_enabled) {
    if (const auto existing = state_.store.lemma_id_for(record.statement)) {
      ++state_.stats.duplicates_skipped;
      TrajectoryEntry entry;
      entry.entry_type = EntryType::event;
      entry.statement = record.statement;
      entry.comment = "event=duplicate_skipped record=" + record.id +
                      " stage=proposal duplicate_of=" + *existing;
      append(std::move(entry));
      return;
    }
  }

  const std::size_t cap = state_.config.refine_cap;
  transition(record, Status::under_review, cap);
  if (prv_verify(record).verdict == Verdict::accept) {
    transition(record, Status::accepted, cap);
  } else {
    record = refine_loop(std::move(record));
  }
  if (record.status == Status::accepted) {
    ++state_.stats.accepted;
    promote(record);
  }
}

void Orchestrator::exploration_iteration() {
  if (state_.solved || state_.iteration >= state_.config.exploration_limit) {
    throw Error(ErrorCode::precondition_violation,
                "exploration_iteration after the run has stopped");
  }
  const std::vector<DigestItem> lemmas =
      context_digest(state_.store, state_.config.lemma_context_budget);
  const ChatResponse response =
      backend_.complete(prompts_.explorer(state_.ctx, lemmas, state_.iteration));
  const Extraction extraction = extract_conjectures(response.text);
  state_.stats.conjectures_proposed += extraction.conjectures.size();
  log_event("event=exploration iteration=" + std::to_string(state_.iteration) +
            " blocks=" + std::to_string(extraction.conjectures.size()) +
            " skipped=" + std::to_string(extraction.skipped_blocks) +
            " finish=" + std::string(to_string(response.finish_reason)));
  for (const ExtractedConjecture& conjecture : extraction.conjectures) {
    handle_conjecture(conjecture);
  }
  ++state_.iteration;
}

RunResult Orchestrator::run() {
  begin();
  try {
    while (!state_.solved && state_.iteration < state_.config.exploration_limit) {
      exploration_iteration();
    }
  } catch (const Error& err) {
    if (is_backend_failure(err.code())) {
      log_event("event=aborted reason=" + std::string(to_string(err.code())) + " iteration=" +
                std::to_string(state_.iteration));
    }
    throw;
  }
  const StopReason reason = state_.solved ? StopReason::solved : StopReason::exploration_limit;
  log_event("event=stop reason=" + std::string(to_string(reason)) +
            " iterations=" + std::to_string(state_.iteration));

  RunResult result;
  result.trajectory = state_.trajectory;
  result.stats = state_.stats;
  result.stop_reason = reason;
  result.iterations = state_.iteration;
  result.solved = state_.solved;
  return result;
}

}  // namespace aimforge
