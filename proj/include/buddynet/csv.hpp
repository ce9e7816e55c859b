#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "buddynet/common.hpp"

namespace buddynet {

// One row of backings.csv, before identifier resolution. line is the source
// line for diagnostics; 0 when the row was built in memory.
struct RawBacking {
    std::string backer;
    std::string project;
    Timestamp time;
    std::size_t line = 0;
};

// One row of projects.csv. start is absent when the column is missing or
// left empty; the loader derives it from the first backing.
struct RawProject {
    std::string id;
    std::string founder;
    Timestamp deadline;
    std::optional<Timestamp> start;
    std::size_t line = 0;
};

// Accepts integer epoch seconds, YYYY-MM-DD, or YYYY-MM-DD[T ]HH:MM:SS with
// an optional trailing Z or +-HH:MM offset. Throws ParseError otherwise.
Timestamp parse_timestamp(std::string_view text, const std::string& file, std::size_t line);

// Readers for the two CSV formats. Both require the exact documented header
// and throw ParseError with the file name and line number on any malformed
// row. Blank lines are skipped.
std::vector<RawBacking> read_backings_csv(std::istream& in, const std::string& name);
std::vector<RawProject> read_projects_csv(std::istream& in, const std::string& name);

extern const char* const kBackingsHeader;   // backer_id,project_id,timestamp
extern const char* const kProjectsHeader;   // project_id,founder_id,deadline,start

}  // namespace buddynet
