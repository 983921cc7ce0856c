#include "generators.hpp"

#include <array>

#include "aimforge/transcribe.hpp"

namespace aimforge::testing {
namespace {

template <typename T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& items) {
  return items[rng() % items.size()];
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

Timestamp random_timestamp(std::mt19937_64& rng) {
  // 2000-01-01 .. ~2060
  return Timestamp(std::chrono::milliseconds(946684800000LL + static_cast<long long>(rng() % 1900000000000ULL)));
}

}  // namespace

std::string random_math_text(std::mt19937_64& rng, std::size_t max_words) {
  static const std::vector<std::string> kWords = {
      "Let",  "$u", "\\in", "H_0^1(\\Omega)$", "then", "$\\|\\nabla u\\|^2", "\\ge", "\\lambda_1", "\\|u\\|^2$",
      "λ",    "≤",  "∇·u",  "x²",              "a < b", "c > d",            "**Step 1:**", "`code`", "&",
      "50%",  "#3", "{",    "}",               "é",     "日本",             "\"quoted\"",  "it's",   "\\\\"};
  std::string out = "S";
  const std::size_t words = 1 + rng() % max_words;
  for (std::size_t i = 0; i < words; ++i) {
    out += (rng() % 7 == 0) ? "\n" : " ";
    out += pick(rng, kWords);
  }
  out += " end";
  return out;
}

std::vector<ExtractedConjecture> random_conjectures(std::mt19937_64& rng, std::size_t max_count) {
  std::vector<ExtractedConjecture> list(rng() % (max_count + 1));
  for (ExtractedConjecture& c : list) {
    c.statement = random_math_text(rng, 12);
    c.proof = random_math_text(rng, 40);
    c.claims_final = rng() % 4 == 0;
  }
  return list;
}

std::string random_bytes(std::mt19937_64& rng, std::size_t max_length) {
  static const std::vector<std::string> kFragments = {
      "VERDICT", "verdict:", ": ACCEPT", "REJECT", "\n", "**", "`", "accept", "VERDICT:\n", ":", " "};
  std::string out;
  const std::size_t length = rng() % (max_length + 1);
  while (out.size() < length) {
    if (rng() % 5 == 0) {
      out += pick(rng, kFragments);
    } else {
      out.push_back(static_cast<char>(rng() % 256));
    }
  }
  return out;
}

const std::vector<VerdictFixture>& verdict_fixtures() {
  static const std::vector<VerdictFixture> kFixtures = {
      {"VERDICT: ACCEPT", Verdict::accept},
      {"VERDICT: REJECT", Verdict::reject},
      {"Verdict: accept", Verdict::accept},
      {"verdict:reject", Verdict::reject},
      {"The flaw is in Step 3: the bound is not uniform.\nVERDICT: REJECT", Verdict::reject},
      {"One might be tempted to reject this, but every step holds.\nVERDICT: ACCEPT", Verdict::accept},
      {"VERDICT: REJECT\nOn reflection the gap closes.\nVERDICT: ACCEPT", Verdict::accept},
      {"VERDICT: ACCEPT\nWait, Step 2 divides by zero.\nVERDICT: REJECT", Verdict::reject},
      {"**VERDICT:** REJECT", Verdict::reject},
      {"**VERDICT: ACCEPT**", Verdict::accept},
      {"Final verdict: `ACCEPT`", Verdict::accept},
      {"VERDICT:    REJECT   ", Verdict::reject},
      {"VERDICT: ACCEPT\r\n", Verdict::accept},
      {"  \tVERDICT:\tACCEPT", Verdict::accept},
      {"The proof seems plausible.", Verdict::inconclusive},
      {"", Verdict::inconclusive},
      {"I accept the argument.", Verdict::inconclusive},
      {"VERDICT:", Verdict::inconclusive},
      {"VERDICT: MAYBE", Verdict::inconclusive},
      {"VERDICT ACCEPT", Verdict::inconclusive},
      {"Rejected. No verdict line given.", Verdict::inconclusive},
      {"VERDICT: maybe\nverdict: Reject", Verdict::reject},
  };
  return kFixtures;
}

std::vector<TrajectoryEntry> random_trajectory(std::mt19937_64& rng, std::size_t max_entries) {
  static const std::vector<EntryType> kTypes = {EntryType::assumption, EntryType::hint,  EntryType::conjecture,
                                                EntryType::lemma,      EntryType::theorem, EntryType::event};
  static const std::vector<Verdict> kVerdicts = {Verdict::accept, Verdict::reject, Verdict::inconclusive};
  std::vector<TrajectoryEntry> entries(rng() % (max_entries + 1));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    TrajectoryEntry& e = entries[i];
    e.index = i;
    e.entry_type = pick(rng, kTypes);
    if (rng() % 3 != 0) e.correctness = rng() % 2 == 0;
    if (rng() % 3 != 0) e.statement = random_math_text(rng, 10);
    if (rng() % 2 == 0) e.proof = random_math_text(rng, 30);
    if (rng() % 2 == 0) e.comment = "event=x note=" + random_math_text(rng, 4);
    if (rng() % 3 == 0) {
      std::vector<Review> reviews(rng() % 4);
      for (std::size_t j = 0; j < reviews.size(); ++j) {
        reviews[j].verdict = pick(rng, kVerdicts);
        reviews[j].reviewer_index = j;
        reviews[j].rationale = random_math_text(rng, 6);
        reviews[j].raw_output = reviews[j].rationale + "\nVERDICT: " + std::string(to_string(reviews[j].verdict));
        reviews[j].round = rng() % 3;
        reviews[j].superseded = rng() % 5 == 0;
      }
      e.reviews = std::move(reviews);
    }
    e.timestamp = random_timestamp(rng);
    if (rng() % 6 == 0) e.extra.emplace_back("x_future", R"({"nested":[1,2,{"k":"v"}]})");
  }
  return entries;
}

std::string random_unicode_math(std::mt19937_64& rng, std::size_t max_length) {
  static const std::vector<char32_t> kMapped = [] {
    std::vector<char32_t> cps = mapped_code_points();
    return cps;
  }();
  static const std::vector<char32_t> kOther = {U'a', U'b', U'x', U'1', U'2', U' ', U'\\', U'{', U'}', U'^',
                                               U'_', U'(', U'.', U'é', U'日', U'\n', U'😀', U'A', U'z'};
  std::string out;
  const std::size_t length = rng() % (max_length + 1);
  for (std::size_t i = 0; i < length; ++i) {
    append_utf8(out, rng() % 2 == 0 ? pick(rng, kMapped) : pick(rng, kOther));
  }
  return out;
}

}  // namespace aimforge::testing
