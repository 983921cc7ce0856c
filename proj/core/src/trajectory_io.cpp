#include "aimforge/trajectory_io.hpp"

#include <charconv>
#include <cstdio>
#include <json.hpp>
#include <ostream>

#include "aimforge/config.hpp"
#include "aimforge/error.hpp"

namespace aimforge {
namespace {

using nlohmann::ordered_json;

constexpr std::string_view kKnownFields[] = {"index",   "entry_type", "correctness", "statement",
                                             "proof",   "comment",    "reviews",     "timestamp"};

bool is_known_field(std::string_view name) {
  for (const std::string_view known : kKnownFields) {
    if (known == name) return true;
  }
  return false;
}

// Civil calendar conversions (proleptic Gregorian), after H. Hinnant.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const auto doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp < 10 ? mp + 3 : mp - 9;
  y += m <= 2;
}

ordered_json encode_review(const Review& review) {
  return ordered_json{{"verdict", to_string(review.verdict)},
                      {"rationale", review.rationale},
                      {"reviewer_index", review.reviewer_index},
                      {"raw_output", review.raw_output},
                      {"round", review.round},
                      {"superseded", review.superseded}};
}

Review decode_review(const ordered_json& j) {
  Review review;
  review.verdict = parse_verdict(j.at("verdict").get<std::string>());
  review.rationale = j.at("rationale").get<std::string>();
  review.reviewer_index = j.at("reviewer_index").get<std::size_t>();
  review.raw_output = j.at("raw_output").get<std::string>();
  review.round = j.value("round", std::size_t{0});
  review.superseded = j.value("superseded", false);
  return review;
}

template <typename T>
std::optional<T> optional_field(const ordered_json& j, const char* name) {
  if (!j.contains(name) || j[name].is_null()) return std::nullopt;
  return j[name].get<T>();
}

TrajectoryEntry decode_entry(std::string_view line) {
  const ordered_json j = ordered_json::parse(line);
  if (!j.is_object()) throw Error(ErrorCode::invalid_argument, "record is not a JSON object");
  TrajectoryEntry entry;
  entry.index = j.at("index").get<std::uint64_t>();
  entry.entry_type = parse_entry_type(j.at("entry_type").get<std::string>());
  entry.correctness = optional_field<bool>(j, "correctness");
  entry.statement = optional_field<std::string>(j, "statement");
  entry.proof = optional_field<std::string>(j, "proof");
  entry.comment = optional_field<std::string>(j, "comment");
  if (j.contains("reviews") && !j["reviews"].is_null()) {
    std::vector<Review> reviews;
    for (const ordered_json& r : j.at("reviews")) reviews.push_back(decode_review(r));
    entry.reviews = std::move(reviews);
  }
  entry.timestamp = parse_timestamp(j.at("timestamp").get<std::string>());
  for (const auto& [key, value] : j.items()) {
    if (!is_known_field(key)) entry.extra.emplace_back(key, value.dump());
  }
  return entry;
}

}  // namespace

std::string format_timestamp(Timestamp ts) {
  const auto ms = ts.time_since_epoch().count();
  std::int64_t days = ms / 86'400'000;
  std::int64_t rem = ms % 86'400'000;
  if (rem < 0) {
    rem += 86'400'000;
    --days;
  }
  std::int64_t y = 0;
  unsigned m = 0;
  unsigned d = 0;
  civil_from_days(days, y, m, d);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld:%02lld.%03lldZ",
                static_cast<long long>(y), m, d, static_cast<long long>(rem / 3'600'000),
                static_cast<long long>(rem / 60'000 % 60), static_cast<long long>(rem / 1000 % 60),
                static_cast<long long>(rem % 1000));
  return buf;
}

Timestamp parse_timestamp(std::string_view text) {
  // YYYY-MM-DDTHH:MM:SS.mmmZ
  const auto bad = [&] {
    return Error(ErrorCode::invalid_argument, "bad timestamp '" + std::string(text) + "'");
  };
  if (text.size() != 24 || text[4] != '-' || text[7] != '-' || text[10] != 'T' ||
      text[13] != ':' || text[16] != ':' || text[19] != '.' || text[23] != 'Z') {
    throw bad();
  }
  const auto number = [&](std::size_t pos, std::size_t len) {
    long long value = 0;
    const auto* first = text.data() + pos;
    const auto [ptr, ec] = std::from_chars(first, first + len, value);
    if (ec != std::errc() || ptr != first + len) throw bad();
    return value;
  };
  const long long y = number(0, 4);
  const long long mo = number(5, 2);
  const long long d = number(8, 2);
  const long long h = number(11, 2);
  const long long mi = number(14, 2);
  const long long s = number(17, 2);
  const long long ms = number(20, 3);
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || s > 60) throw bad();
  const std::int64_t days = days_from_civil(y, static_cast<unsigned>(mo), static_cast<unsigned>(d));
  const std::int64_t total = ((days * 24 + h) * 60 + mi) * 60'000 + s * 1000 + ms;
  return Timestamp(std::chrono::milliseconds(total));
}

std::string encode_entry(const TrajectoryEntry& entry) {
  const auto nullable = [](const auto& value) -> ordered_json {
    if (!value) return nullptr;
    return ordered_json(*value);
  };
  ordered_json j;
  j["index"] = entry.index;
  j["entry_type"] = to_string(entry.entry_type);
  j["correctness"] = nullable(entry.correctness);
  j["statement"] = nullable(entry.statement);
  j["proof"] = nullable(entry.proof);
  j["comment"] = nullable(entry.comment);
  if (entry.reviews) {
    ordered_json reviews = ordered_json::array();
    for (const Review& review : *entry.reviews) reviews.push_back(encode_review(review));
    j["reviews"] = std::move(reviews);
  } else {
    j["reviews"] = nullptr;
  }
  j["timestamp"] = format_timestamp(entry.timestamp);
  for (const auto& [key, raw] : entry.extra) {
    if (!is_known_field(key)) j[key] = ordered_json::parse(raw);
  }
  return j.dump(-1, ' ', false, ordered_json::error_handler_t::replace);
}

void write_trajectory(std::span<const TrajectoryEntry> entries, std::ostream& sink) {
  for (const TrajectoryEntry& entry : entries) {
    const std::string line = encode_entry(entry) + "\n";
    sink.write(line.data(), static_cast<std::streamsize>(line.size()));
  }
  sink.flush();
  if (!sink) throw Error(ErrorCode::io_failure, "trajectory sink write failed");
}

ReadResult read_trajectory(std::string_view bytes) {
  ReadResult result;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    ++line_number;
    const auto newline = bytes.find('\n', pos);
    const bool terminated = newline != std::string_view::npos;
    const std::string_view line =
        bytes.substr(pos, terminated ? newline - pos : bytes.size() - pos);
    pos = terminated ? newline + 1 : bytes.size();
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      result.entries.push_back(decode_entry(line));
    } catch (const std::exception& err) {
      if (!terminated) {
        result.warnings.push_back("dropped partial final record at line " +
                                  std::to_string(line_number));
        break;
      }
      throw MalformedRecord(line_number, err.what());
    }
  }
  return result;
}

ReadResult read_trajectory_file(const std::filesystem::path& path) {
  return read_trajectory(read_file(path));
}

TrajectoryWriter::TrajectoryWriter(const std::filesystem::path& path)
    : path_(path), out_(path, std::ios::binary | std::ios::app) {
  if (!out_) throw Error(ErrorCode::io_failure, "cannot open " + path.string() + " for writing");
}

void TrajectoryWriter::append(const TrajectoryEntry& entry) {
  const std::string line = encode_entry(entry) + "\n";
  out_.write(line.data(), static_cast<std::streamsize>(line.size()));
  out_.flush();
  if (!out_) throw Error(ErrorCode::io_failure, "write to " + path_.string() + " failed");
}

}  // namespace aimforge
