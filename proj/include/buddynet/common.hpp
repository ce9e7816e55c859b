#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace buddynet {

// Seconds since the Unix epoch, UTC.
using Timestamp = std::int64_t;

// Dense internal indexes. String identifiers live in the graph's name
// tables; everything past ingestion works on these.
using UserIdx = std::uint32_t;
using ProjectIdx = std::uint32_t;
using EdgeIdx = std::uint32_t;

inline constexpr std::uint32_t kInvalidIdx = 0xffffffffu;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file; carries the offending location.
class ParseError : public Error {
public:
    ParseError(std::string file, std::size_t line, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what),
          file_(std::move(file)),
          line_(line) {}

    const std::string& file() const { return file_; }
    std::size_t line() const { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

// Requested statistic has no defined value on an empty input.
class EmptyInputError : public Error {
public:
    using Error::Error;
};

// A ratio with a zero denominator; never silently reported as 0.
class UndefinedRatioError : public Error {
public:
    using Error::Error;
};

}  // namespace buddynet
