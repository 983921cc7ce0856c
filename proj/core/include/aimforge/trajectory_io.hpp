#pragma once

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aimforge/model.hpp"

namespace aimforge {

/// Extension used for trajectory files.
inline constexpr std::string_view kTrajectoryExtension = ".aimtrj";

/// One JSON object per line, no trailing newline. Field names follow
/// TrajectoryEntry; unknown fields kept in `extra` are written back after
/// the known ones.
[[nodiscard]] std::string encode_entry(const TrajectoryEntry& entry);

/// Writes one line per entry and flushes. Throws Error(io_failure) when
/// the stream fails.
void write_trajectory(std::span<const TrajectoryEntry> entries, std::ostream& sink);

struct ReadResult {
  std::vector<TrajectoryEntry> entries;
  /// Non-fatal problems such as a dropped partial final line.
  std::vector<std::string> warnings;
};

/// Inverse of write_trajectory. A final line without its newline that does
/// not parse is dropped with a warning; any other unparseable line throws
/// MalformedRecord with its 1-based line number.
[[nodiscard]] ReadResult read_trajectory(std::string_view bytes);
[[nodiscard]] ReadResult read_trajectory_file(const std::filesystem::path& path);

[[nodiscard]] std::string format_timestamp(Timestamp ts);
/// Parses `YYYY-MM-DDTHH:MM:SS.mmmZ`; throws Error(invalid_argument).
[[nodiscard]] Timestamp parse_timestamp(std::string_view text);

/// Appending writer for a run in progress: every entry becomes one whole
/// line on disk before append() returns.
class TrajectoryWriter {
 public:
  explicit TrajectoryWriter(const std::filesystem::path& path);

  void append(const TrajectoryEntry& entry);

  [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace aimforge
