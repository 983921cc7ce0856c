#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "aimforge/error.hpp"
#include "aimforge/trajectory_io.hpp"
#include "generators.hpp"
#include "golden.hpp"

namespace aimforge {
namespace {

std::string to_jsonl(const std::vector<TrajectoryEntry>& entries) {
  std::ostringstream out;
  write_trajectory(entries, out);
  return out.str();
}

TEST(Timestamp, RoundTrip) {
  const Timestamp ts = parse_timestamp("2025-03-04T05:06:07.089Z");
  EXPECT_EQ(format_timestamp(ts), "2025-03-04T05:06:07.089Z");
  EXPECT_EQ(format_timestamp(Timestamp{}), "1970-01-01T00:00:00.000Z");
  for (const char* bad : {"", "2025-03-04", "2025-13-04T05:06:07.089Z", "2025-03-04T05:06:07Z",
                          "2025-03-04 05:06:07.089Z"}) {
    EXPECT_THROW((void)parse_timestamp(bad), Error) << bad;
  }
}

TEST(Encode, NullsAndFieldOrder) {
  TrajectoryEntry entry;
  entry.index = 3;
  entry.entry_type = EntryType::lemma;
  entry.correctness = true;
  entry.statement = "S";
  entry.timestamp = parse_timestamp("2025-01-01T00:00:00.000Z");
  EXPECT_EQ(encode_entry(entry),
            R"({"index":3,"entry_type":"lemma","correctness":true,"statement":"S","proof":null,)"
            R"("comment":null,"reviews":null,"timestamp":"2025-01-01T00:00:00.000Z"})");
}

TEST(RoundTrip, RandomTrajectories) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 300; ++i) {
    const auto entries = testing::random_trajectory(rng);
    const std::string bytes = to_jsonl(entries);
    const ReadResult read = read_trajectory(bytes);
    ASSERT_EQ(read.entries, entries);
    EXPECT_TRUE(read.warnings.empty());
    EXPECT_EQ(to_jsonl(read.entries), bytes);
  }
}

TEST(RoundTrip, UnknownFieldsSurvive) {
  const std::string line =
      R"({"index":0,"entry_type":"event","correctness":null,"statement":null,"proof":null,)"
      R"("comment":"c","reviews":null,"timestamp":"2025-01-01T00:00:00.000Z","x_future":{"a":[1,2]}})";
  const ReadResult read = read_trajectory(line + "\n");
  ASSERT_EQ(read.entries.size(), 1U);
  ASSERT_EQ(read.entries[0].extra.size(), 1U);
  EXPECT_EQ(read.entries[0].extra[0].first, "x_future");
  EXPECT_EQ(encode_entry(read.entries[0]), line);
}

TEST(Truncation, PartialFinalLineIsDropped) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    auto entries = testing::random_trajectory(rng);
    if (entries.empty()) continue;
    const std::string bytes = to_jsonl(entries);
    const std::string last = encode_entry(entries.back());
    const std::size_t cut = 1 + rng() % (last.size() - 1);
    const std::string truncated = bytes.substr(0, bytes.size() - 1 - last.size() + cut);
    const ReadResult read = read_trajectory(truncated);
    entries.pop_back();
    ASSERT_EQ(read.entries, entries);
    ASSERT_EQ(read.warnings.size(), 1U);
  }
}

TEST(Truncation, MissingFinalNewlineIsFine) {
  std::mt19937_64 rng(9);
  const auto entries = testing::random_trajectory(rng, 5);
  std::string bytes = to_jsonl(entries);
  if (!bytes.empty()) bytes.pop_back();
  EXPECT_EQ(read_trajectory(bytes).entries, entries);
}

TEST(Malformed, InteriorLineReportsLineNumber) {
  const std::string good = encode_entry(TrajectoryEntry{});
  try {
    (void)read_trajectory(good + "\n{not json}\n" + good + "\n");
    FAIL();
  } catch (const MalformedRecord& err) {
    EXPECT_EQ(err.line(), 2U);
    EXPECT_EQ(err.code(), ErrorCode::malformed_record);
  }
  EXPECT_THROW((void)read_trajectory(R"({"index":0,"entry_type":"axiom"})" "\n"), MalformedRecord);
  EXPECT_THROW((void)read_trajectory("[1,2]\n"), MalformedRecord);
}

TEST(Malformed, BlankLinesAreSkipped) {
  const std::string good = encode_entry(TrajectoryEntry{});
  EXPECT_EQ(read_trajectory("\n" + good + "\n  \n").entries.size(), 1U);
}

TEST(Writer, AppendsWholeLines) {
  const auto path = std::filesystem::temp_directory_path() / "aimforge_writer_test.aimtrj";
  std::filesystem::remove(path);
  std::mt19937_64 rng(31);
  const auto entries = testing::random_trajectory(rng, 10);
  {
    TrajectoryWriter writer(path);
    for (const auto& entry : entries) {
      writer.append(entry);
      EXPECT_EQ(read_trajectory_file(path).entries.size(), entry.index + 1);
    }
  }
  EXPECT_EQ(read_trajectory_file(path).entries, entries);
  std::filesystem::remove(path);
  EXPECT_THROW(TrajectoryWriter("/nonexistent-dir/x.aimtrj"), Error);
  EXPECT_THROW((void)read_trajectory_file("/nonexistent-dir/x.aimtrj"), Error);
}

TEST(Golden, FixtureMatchesScenarioUpToTimestamps) {
  const std::string fixture = read_file(testing::fixture_path("golden/expected_trajectory.aimtrj"));
  const testing::GoldenRun golden = testing::run_golden_scenario();
  EXPECT_EQ(testing::mask_timestamps(to_jsonl(golden.result.trajectory)), testing::mask_timestamps(fixture));
  EXPECT_EQ(read_trajectory(fixture).entries.size(), golden.result.trajectory.size());
}

}  // namespace
}  // namespace aimforge
