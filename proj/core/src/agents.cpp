#include "aimforge/agents.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "aimforge/error.hpp"
#include "utf8.hpp"

namespace aimforge {
namespace {

constexpr std::string_view kTranscriberSystemPrompt =
    "You convert Unicode mathematics into standard LaTeX.";

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

std::string lower_ascii(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string one_line_summary(std::string_view proof) {
  std::string flat = normalize_statement(proof);
  if (flat.empty()) return "(no proof recorded)";
  const std::size_t cut = detail::utf8_prefix_length(flat, kLemmaProofSummaryLength);
  if (cut < flat.size()) {
    flat.resize(cut);
    flat += " ...";
  }
  return flat;
}

std::string numbered_blocks(std::span<const std::string> blocks, std::string_view label) {
  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    out += "## " + std::string(label) + " " + std::to_string(i + 1) + "\n\n";
    out += std::string(trim(blocks[i])) + "\n\n";
  }
  return out;
}

struct Block {
  std::string_view content;
  std::size_t end = 0;  // position just past the closing tag
};

/// Finds `<tag>...</tag>` starting at `from`; nullopt when either tag is missing.
std::optional<Block> find_block(std::string_view text, std::string_view tag, std::size_t from) {
  const std::string open = "<" + std::string(tag) + ">";
  const std::string close = "</" + std::string(tag) + ">";
  const auto start = text.find(open, from);
  if (start == std::string_view::npos) return std::nullopt;
  const auto body = start + open.size();
  const auto stop = text.find(close, body);
  if (stop == std::string_view::npos) return std::nullopt;
  return Block{text.substr(body, stop - body), stop + close.size()};
}

std::optional<std::string_view> last_block(std::string_view text, std::string_view tag) {
  std::optional<std::string_view> last;
  std::size_t from = 0;
  while (const auto block = find_block(text, tag, from)) {
    last = block->content;
    from = block->end;
  }
  return last;
}

std::optional<ExtractedConjecture> parse_conjecture_body(std::string_view body) {
  const auto statement = find_block(body, "statement", 0);
  if (!statement) return std::nullopt;
  const auto proof = find_block(body, "proof", statement->end);
  if (!proof) return std::nullopt;
  const auto final_flag = find_block(body, "final", proof->end);
  if (!final_flag) return std::nullopt;

  ExtractedConjecture out;
  out.statement = std::string(trim(statement->content));
  out.proof = std::string(trim(proof->content));
  const std::string flag = lower_ascii(trim(final_flag->content));
  if (flag == "true") {
    out.claims_final = true;
  } else if (flag != "false") {
    return std::nullopt;
  }
  if (normalize_statement(out.statement).empty() || normalize_statement(out.proof).empty()) {
    return std::nullopt;
  }
  return out;
}

bool iequals_at(std::string_view text, std::size_t pos, std::string_view word) {
  if (pos + word.size() > text.size()) return false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(text[pos + i])) != word[i]) return false;
  }
  return true;
}

/// The verdict named by the last `VERDICT:` marker on this line, allowing
/// markdown emphasis around the colon.
std::optional<Verdict> verdict_on_line(std::string_view line) {
  std::optional<Verdict> found;
  for (std::size_t pos = 0; pos < line.size(); ++pos) {
    if (!iequals_at(line, pos, "verdict")) continue;
    std::size_t i = pos + 7;
    while (i < line.size() && (line[i] == '*' || line[i] == '_' || line[i] == ' ')) ++i;
    if (i >= line.size() || line[i] != ':') continue;
    ++i;
    while (i < line.size() && (std::isspace(static_cast<unsigned char>(line[i])) ||
                               line[i] == '*' || line[i] == '_' || line[i] == '`')) {
      ++i;
    }
    if (iequals_at(line, i, "accept")) found = Verdict::accept;
    else if (iequals_at(line, i, "reject")) found = Verdict::reject;
  }
  return found;
}

}  // namespace

PromptBuilder::PromptBuilder(RunConfig config, PromptTemplates templates)
    : config_(std::move(config)), templates_(std::move(templates)) {}

std::string PromptBuilder::system_prompt(const ProblemContext& ctx) const {
  return render_template(templates_.get("system"),
                         {{"title", ctx.title.empty() ? "untitled problem" : ctx.title},
                          {"assumptions", numbered_blocks(ctx.assumptions, "Assumption")},
                          {"hints", numbered_blocks(ctx.hints, "Hint")}});
}

ChatRequest PromptBuilder::explorer(const ProblemContext& ctx, std::span<const DigestItem> lemmas,
                                    std::size_t iteration) const {
  if (iteration >= config_.exploration_limit) {
    throw Error(ErrorCode::precondition_violation,
                "explorer iteration " + std::to_string(iteration) + " is not below the limit " +
                    std::to_string(config_.exploration_limit));
  }
  std::string lemma_lines;
  for (std::size_t i = 0; i < lemmas.size(); ++i) {
    lemma_lines += "Established Lemma-" + std::to_string(i + 1) + ": " +
                   std::string(trim(lemmas[i].statement)) + "\n";
    lemma_lines += "  Proof summary: " + one_line_summary(lemmas[i].proof) + "\n";
  }
  if (lemma_lines.empty()) lemma_lines = "(none yet)\n";

  ChatRequest request;
  request.role_tag = Role::explorer;
  request.sampling = config_.role_params.explorer;
  request.system_prompt = system_prompt(ctx);
  request.user_prompt = render_template(templates_.get("explorer"),
                                        {{"target", std::string(trim(ctx.target_statement))},
                                         {"lemmas", lemma_lines},
                                         {"round", std::to_string(iteration + 1)},
                                         {"limit", std::to_string(config_.exploration_limit)}});
  return request;
}

ChatRequest PromptBuilder::verifier(const StatementRecord& record, const ProblemContext& ctx,
                                    std::span<const DigestItem> lemmas,
                                    std::size_t attempt) const {
  if (record.status != Status::under_review) {
    throw Error(ErrorCode::precondition_violation,
                "verifier prompt for record " + record.id + " in status " +
                    std::string(to_string(record.status)));
  }
  std::string lemma_section;
  if (config_.verifier_sees_lemmas && !lemmas.empty()) {
    lemma_section = "## Previously verified lemmas (may be cited without proof)\n\n";
    for (std::size_t i = 0; i < lemmas.size(); ++i) {
      lemma_section += "Lemma-" + std::to_string(i + 1) + ": " +
                       std::string(trim(lemmas[i].statement)) + "\n";
    }
    lemma_section += "\n";
  }
  const std::string proof = normalize_statement(record.proof).empty()
                                ? std::string("(no proof was supplied)")
                                : record.proof;

  ChatRequest request;
  request.role_tag = Role::verifier;
  request.sampling = config_.role_params.verifier;
  request.attempt = attempt;
  request.system_prompt = system_prompt(ctx);
  request.user_prompt = render_template(
      templates_.get("verifier"),
      {{"statement", record.statement}, {"proof", proof}, {"lemmas", lemma_section}});
  if (attempt > 0) {
    request.user_prompt =
        render_template(templates_.get("verifier_reask"), {{"review", request.user_prompt}});
  }
  return request;
}

ChatRequest PromptBuilder::refiner(const StatementRecord& record, const ProblemContext& ctx,
                                   std::span<const Review> rejecting_reviews) const {
  if (record.status != Status::refining) {
    throw Error(ErrorCode::precondition_violation,
                "refiner prompt for record " + record.id + " in status " +
                    std::string(to_string(record.status)));
  }
  if (rejecting_reviews.empty()) {
    throw Error(ErrorCode::precondition_violation,
                "refiner prompt for record " + record.id + " without rejecting reviews");
  }
  std::string reviews;
  for (std::size_t i = 0; i < rejecting_reviews.size(); ++i) {
    const std::string_view rationale = trim(rejecting_reviews[i].rationale);
    reviews += "### Reviewer " + std::to_string(i + 1) + "\n\n";
    reviews += (rationale.empty() ? std::string(kMissingRationale) : std::string(rationale)) + "\n\n";
  }
  std::string corrections;
  if (config_.correction_suggestions && !trim(*config_.correction_suggestions).empty()) {
    corrections = "## Fixed requirements\n\n" + *config_.correction_suggestions + "\n\n";
  }

  ChatRequest request;
  request.role_tag = Role::refiner;
  request.sampling = config_.role_params.refiner;
  request.system_prompt = system_prompt(ctx);
  request.user_prompt = render_template(templates_.get("refiner"),
                                        {{"statement", record.statement},
                                         {"proof", record.proof},
                                         {"reviews", reviews},
                                         {"corrections", corrections}});
  return request;
}

ChatRequest PromptBuilder::transcriber(std::string_view text) const {
  ChatRequest request;
  request.role_tag = Role::transcriber;
  request.sampling = config_.role_params.transcriber;
  request.system_prompt = std::string(kTranscriberSystemPrompt);
  request.user_prompt =
      render_template(templates_.get("transcriber"), {{"text", std::string(text)}});
  return request;
}

Extraction extract_conjectures(std::string_view output) {
  static constexpr std::string_view kOpen = "<conjecture>";
  static constexpr std::string_view kClose = "</conjecture>";
  Extraction result;
  std::size_t pos = 0;
  for (;;) {
    const auto open = output.find(kOpen, pos);
    if (open == std::string_view::npos) break;
    const auto body_start = open + kOpen.size();
    const auto next_open = output.find(kOpen, body_start);
    const auto close = output.find(kClose, body_start);
    if (close == std::string_view::npos || (next_open != std::string_view::npos && next_open < close)) {
      ++result.skipped_blocks;
      if (next_open == std::string_view::npos) break;
      pos = next_open;
      continue;
    }
    pos = close + kClose.size();
    if (auto parsed = parse_conjecture_body(output.substr(body_start, close - body_start))) {
      result.conjectures.push_back(std::move(*parsed));
    } else {
      ++result.skipped_blocks;
    }
  }
  return result;
}

std::string render_conjectures(std::span<const ExtractedConjecture> conjectures) {
  std::string out;
  for (const ExtractedConjecture& c : conjectures) {
    out += "<conjecture>\n<statement>\n" + c.statement + "\n</statement>\n<proof>\n" + c.proof +
           "\n</proof>\n<final>" + (c.claims_final ? "true" : "false") + "</final>\n</conjecture>\n";
  }
  return out;
}

Review parse_review(std::string_view output, std::size_t reviewer_index) {
  Review review;
  review.reviewer_index = reviewer_index;
  review.raw_output = std::string(output);

  std::optional<Verdict> verdict;
  std::size_t verdict_line_start = 0;
  std::size_t line_start = 0;
  while (line_start <= output.size()) {
    auto line_end = output.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = output.size();
    if (const auto found = verdict_on_line(output.substr(line_start, line_end - line_start))) {
      verdict = found;
      verdict_line_start = line_start;
    }
    line_start = line_end + 1;
  }

  if (!verdict) {
    review.verdict = Verdict::inconclusive;
    review.rationale = std::string(trim(output));
    return review;
  }
  review.verdict = *verdict;
  review.rationale = std::string(trim(output.substr(0, verdict_line_start)));
  if (review.verdict == Verdict::reject && review.rationale.empty()) {
    review.rationale = std::string(kMissingRationale);
  }
  return review;
}

Refinement parse_refinement(std::string_view output, const StatementRecord& prior) {
  const auto proof = last_block(output, "proof");
  if (!proof || normalize_statement(*proof).empty()) {
    throw Error(ErrorCode::parse_failure,
                "refiner reply for record " + prior.id + " contains no <proof> block");
  }
  Refinement result;
  result.proof = std::string(trim(*proof));
  const auto statement = last_block(output, "statement");
  if (statement && !normalize_statement(*statement).empty()) {
    result.statement = std::string(trim(*statement));
  } else {
    result.statement = prior.statement;
  }
  result.statement_changed =
      normalize_statement(result.statement) != normalize_statement(prior.statement);
  return result;
}

std::string transcribe_with_model(Backend& backend, const PromptBuilder& prompts,
                                  std::string_view text) {
  const ChatResponse response = backend.complete(prompts.transcriber(text));
  if (response.finish_reason != FinishReason::complete) {
    throw Error(ErrorCode::transport_failure,
                "transcription did not complete (" +
                    std::string(to_string(response.finish_reason)) + ")");
  }
  return response.text;
}

}  // namespace aimforge
