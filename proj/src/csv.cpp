#include "buddynet/csv.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <istream>

namespace buddynet {

const char* const kBackingsHeader = "backer_id,project_id,timestamp";
const char* const kProjectsHeader = "project_id,founder_id,deadline,start";

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

bool parse_int(std::string_view s, std::int64_t& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

bool is_leap(std::int64_t y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

// Days since 1970-01-01 for a proleptic Gregorian civil date
// (Howard Hinnant's algorithm).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

bool parse_fixed_number(std::string_view s, std::size_t pos, std::size_t len, std::int64_t& out) {
    if (pos + len > s.size()) return false;
    std::string_view part = s.substr(pos, len);
    if (!all_digits(part)) return false;
    return parse_int(part, out);
}

bool parse_date(std::string_view s, std::int64_t& days) {
    // YYYY-MM-DD, strict digits and separators
    std::int64_t y, m, d;
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    if (!parse_fixed_number(s, 0, 4, y) || !parse_fixed_number(s, 5, 2, m) ||
        !parse_fixed_number(s, 8, 2, d)) {
        return false;
    }
    static constexpr std::array<int, 12> dim = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m < 1 || m > 12) return false;
    int max_d = dim[static_cast<std::size_t>(m - 1)];
    if (m == 2 && is_leap(y)) max_d = 29;
    if (d < 1 || d > max_d) return false;
    days = days_from_civil(y, static_cast<unsigned>(m), static_cast<unsigned>(d));
    return true;
}

bool parse_time_of_day(std::string_view s, std::int64_t& secs) {
    // HH:MM:SS
    std::int64_t h, m, sec;
    if (s.size() != 8 || s[2] != ':' || s[5] != ':') return false;
    if (!parse_fixed_number(s, 0, 2, h) || !parse_fixed_number(s, 3, 2, m) ||
        !parse_fixed_number(s, 6, 2, sec)) {
        return false;
    }
    if (h > 23 || m > 59 || sec > 60) return false;  // 60 tolerates leap-second stamps
    secs = h * 3600 + m * 60 + sec;
    return true;
}

}  // namespace

Timestamp parse_timestamp(std::string_view text, const std::string& file, std::size_t line) {
    // Plain integer: epoch seconds (possibly negative).
    if (!text.empty() && (all_digits(text) ||
                          ((text[0] == '-' || text[0] == '+') && all_digits(text.substr(1))))) {
        std::int64_t v;
        if (parse_int(text, v)) return v;
        throw ParseError(file, line, "integer timestamp out of range: '" + std::string(text) + "'");
    }

    std::string_view s = text;
    std::int64_t offset = 0;
    if (!s.empty() && (s.back() == 'Z' || s.back() == 'z')) {
        s.remove_suffix(1);
    } else if (s.size() > 6 && (s[s.size() - 6] == '+' || s[s.size() - 6] == '-')) {
        std::int64_t oh, om;
        std::string_view tz = s.substr(s.size() - 6);
        if (tz[3] == ':' && parse_fixed_number(tz, 1, 2, oh) && parse_fixed_number(tz, 4, 2, om)) {
            offset = (oh * 3600 + om * 60) * (tz[0] == '+' ? 1 : -1);
            s.remove_suffix(6);
        }
    }

    std::int64_t days = 0;
    std::int64_t secs = 0;
    if (s.size() == 10 && parse_date(s, days)) {
        return days * 86400 - offset;
    }
    if (s.size() == 19 && (s[10] == 'T' || s[10] == ' ') && parse_date(s.substr(0, 10), days) &&
        parse_time_of_day(s.substr(11), secs)) {
        return days * 86400 + secs - offset;
    }
    throw ParseError(file, line,
                     "unrecognized timestamp '" + std::string(text) +
                         "' (want epoch seconds or ISO-8601)");
}

namespace {

// Reads one logical line; strips trailing \r. Returns false at EOF.
bool get_line(std::istream& in, std::string& out) {
    if (!std::getline(in, out)) return false;
    if (!out.empty() && out.back() == '\r') out.pop_back();
    return true;
}

std::vector<std::string_view> split_fields(const std::string& s) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == ',') {
            fields.emplace_back(s.data() + start, i - start);
            start = i + 1;
        }
    }
    return fields;
}

void strip_bom(std::string& s) {
    if (s.size() >= 3 && s[0] == '\xef' && s[1] == '\xbb' && s[2] == '\xbf') {
        s.erase(0, 3);
    }
}

}  // namespace

std::vector<RawBacking> read_backings_csv(std::istream& in, const std::string& name) {
    std::string line;
    if (!get_line(in, line)) throw ParseError(name, 1, "empty file, expected header");
    strip_bom(line);
    if (line != kBackingsHeader) {
        throw ParseError(name, 1, "bad header, expected '" + std::string(kBackingsHeader) + "'");
    }
    std::vector<RawBacking> rows;
    std::size_t lineno = 1;
    while (get_line(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto f = split_fields(line);
        if (f.size() != 3) {
            throw ParseError(name, lineno,
                             "expected 3 fields, got " + std::to_string(f.size()));
        }
        if (f[0].empty()) throw ParseError(name, lineno, "empty backer_id");
        if (f[1].empty()) throw ParseError(name, lineno, "empty project_id");
        rows.push_back({std::string(f[0]), std::string(f[1]), parse_timestamp(f[2], name, lineno),
                        lineno});
    }
    return rows;
}

std::vector<RawProject> read_projects_csv(std::istream& in, const std::string& name) {
    std::string line;
    if (!get_line(in, line)) throw ParseError(name, 1, "empty file, expected header");
    strip_bom(line);
    bool has_start_column;
    if (line == kProjectsHeader) {
        has_start_column = true;
    } else if (line == "project_id,founder_id,deadline") {
        has_start_column = false;
    } else {
        throw ParseError(name, 1, "bad header, expected '" + std::string(kProjectsHeader) +
                                      "' (start column optional)");
    }
    std::vector<RawProject> rows;
    std::size_t lineno = 1;
    while (get_line(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto f = split_fields(line);
        const std::size_t expected = has_start_column ? 4 : 3;
        if (f.size() != expected) {
            throw ParseError(name, lineno, "expected " + std::to_string(expected) +
                                               " fields, got " + std::to_string(f.size()));
        }
        if (f[0].empty()) throw ParseError(name, lineno, "empty project_id");
        if (f[1].empty()) throw ParseError(name, lineno, "empty founder_id");
        RawProject p{std::string(f[0]), std::string(f[1]),
                     parse_timestamp(f[2], name, lineno), std::nullopt, lineno};
        if (has_start_column && !f[3].empty()) {
            p.start = parse_timestamp(f[3], name, lineno);
        }
        rows.push_back(std::move(p));
    }
    return rows;
}

}  // namespace buddynet
