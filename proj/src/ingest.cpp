#include "retnet/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "retnet/errors.hpp"

namespace retnet {
namespace {

constexpr std::int64_t kSecsPerDay = 86400;

// Howard Hinnant's days-from-civil; avoids timezone-dependent timegm.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);            // [0, 399]
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;  // [0, 365]
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;           // [0, 146096]
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y += m <= 2;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c); });
}

unsigned parse_fixed_uint(std::string_view s, std::size_t pos, std::size_t len) {
    unsigned v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        char c = s[i];
        if (c < '0' || c > '9') throw DataError("bad digit in timestamp");
        v = v * 10 + static_cast<unsigned>(c - '0');
    }
    return v;
}

unsigned days_in_month(std::int64_t y, unsigned m) {
    static const unsigned lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2) {
        bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
        return leap ? 29 : 28;
    }
    return lengths[m - 1];
}

bool has_whitespace(std::string_view s) {
    return std::any_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isspace(c); });
}

void check_token(std::string_view value, const char* field) {
    if (value.empty()) throw DataError(std::string(field) + " is empty");
    if (has_whitespace(value))
        throw DataError(std::string(field) + " contains whitespace");
}

RetweetEvent make_event(std::string_view time_text, std::string author,
                        std::string retweeter, std::string post_id) {
    check_token(author, "author");
    check_token(retweeter, "retweeter");
    if (post_id.empty()) throw DataError("post_id is empty");
    RetweetEvent ev;
    ev.time = parse_timestamp(time_text);
    if (ev.time < 0) throw DataError("timestamp before the epoch");
    ev.author = std::move(author);
    ev.retweeter = std::move(retweeter);
    ev.post_id = std::move(post_id);
    return ev;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

RetweetEvent parse_csv_record(const std::string& line) {
    auto fields = split_csv_line(line);
    if (fields.size() != 4)
        throw DataError("expected 4 comma-separated fields, got " +
                        std::to_string(fields.size()));
    return make_event(fields[0], fields[1], fields[2], fields[3]);
}

RetweetEvent parse_jsonl_record(const std::string& line) {
    nlohmann::json obj;
    try {
        obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) throw DataError("JSONL record is not an object");
    for (const char* key : {"time", "author", "retweeter", "post_id"}) {
        if (!obj.contains(key))
            throw DataError(std::string("missing key '") + key + "'");
    }
    std::string time_text;
    const auto& t = obj["time"];
    if (t.is_number_integer()) {
        time_text = std::to_string(t.get<std::int64_t>());
    } else if (t.is_number_float()) {
        // sub-second precision truncated
        time_text = std::to_string(static_cast<std::int64_t>(t.get<double>()));
    } else if (t.is_string()) {
        time_text = t.get<std::string>();
    } else {
        throw DataError("'time' must be an integer or an ISO-8601 string");
    }
    auto str = [&](const char* key) {
        if (!obj[key].is_string())
            throw DataError(std::string("'") + key + "' must be a string");
        return obj[key].get<std::string>();
    };
    return make_event(time_text, str("author"), str("retweeter"), str("post_id"));
}

}  // namespace

std::int64_t parse_timestamp(std::string_view text) {
    if (text.empty()) throw DataError("empty timestamp");
    if (all_digits(text) || (text[0] == '-' && all_digits(text.substr(1)))) {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            throw DataError("invalid epoch timestamp '" + std::string(text) + "'");
        return v;
    }
    // YYYY-MM-DD[T ]HH:MM:SS[.frac](Z|+00:00|-00:00|+0000)
    if (text.size() < 20)
        throw DataError("timestamp too short: '" + std::string(text) + "'");
    if (text[4] != '-' || text[7] != '-' || (text[10] != 'T' && text[10] != ' ') ||
        text[13] != ':' || text[16] != ':')
        throw DataError("malformed ISO-8601 timestamp '" + std::string(text) + "'");
    const std::int64_t year = parse_fixed_uint(text, 0, 4);
    const unsigned month = parse_fixed_uint(text, 5, 2);
    const unsigned day = parse_fixed_uint(text, 8, 2);
    const unsigned hour = parse_fixed_uint(text, 11, 2);
    const unsigned minute = parse_fixed_uint(text, 14, 2);
    const unsigned second = parse_fixed_uint(text, 17, 2);
    if (month < 1 || month > 12)
        throw DataError("month out of range in '" + std::string(text) + "'");
    if (day < 1 || day > days_in_month(year, month))
        throw DataError("day out of range in '" + std::string(text) + "'");
    if (hour > 23 || minute > 59 || second > 59)
        throw DataError("time of day out of range in '" + std::string(text) + "'");

    std::size_t pos = 19;
    if (pos < text.size() && text[pos] == '.') {  // sub-second digits truncated
        ++pos;
        std::size_t digits = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++pos;
            ++digits;
        }
        if (digits == 0)
            throw DataError("empty fraction in '" + std::string(text) + "'");
    }
    const std::string_view zone = text.substr(pos);
    if (!(zone == "Z" || zone == "z" || zone == "+00:00" || zone == "-00:00" ||
          zone == "+0000"))
        throw DataError("timestamp must be UTC ('Z' or '+00:00'): '" +
                        std::string(text) + "'");
    return days_from_civil(year, month, day) * kSecsPerDay + hour * 3600 +
           minute * 60 + second;
}

std::string format_timestamp(std::int64_t epoch_seconds) {
    std::int64_t days = epoch_seconds / kSecsPerDay;
    std::int64_t rem = epoch_seconds % kSecsPerDay;
    if (rem < 0) {
        rem += kSecsPerDay;
        --days;
    }
    std::int64_t year;
    unsigned month, day;
    civil_from_days(days, year, month, day);
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02u:%02u:%02uZ",
                  static_cast<long long>(year), month, day,
                  static_cast<unsigned>(rem / 3600),
                  static_cast<unsigned>(rem / 60 % 60),
                  static_cast<unsigned>(rem % 60));
    return buf;
}

ParseReport parse_events(std::istream& in, EventFormat format, ErrorPolicy policy) {
    ParseReport report;
    std::string line;
    std::size_t line_no = 0;
    bool header_checked = format != EventFormat::csv;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!header_checked) {
            header_checked = true;
            if (line != "time,author,retweeter,post_id")
                throw DataError("line 1: expected CSV header "
                                "'time,author,retweeter,post_id', got '" + line + "'");
            continue;
        }
        if (line.empty()) continue;
        ++report.records;
        try {
            RetweetEvent ev = format == EventFormat::csv ? parse_csv_record(line)
                                                         : parse_jsonl_record(line);
            if (ev.author == ev.retweeter) {
                ++report.dropped_self;
                continue;
            }
            report.events.push_back(std::move(ev));
        } catch (const DataError& e) {
            if (policy == ErrorPolicy::fail_fast)
                throw DataError("line " + std::to_string(line_no) + ": " + e.what());
            ++report.skipped;
            report.issues.push_back("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    std::stable_sort(report.events.begin(), report.events.end(),
                     [](const RetweetEvent& a, const RetweetEvent& b) {
                         return a.time < b.time;
                     });
    return report;
}

ParseReport parse_events_file(const std::string& path, EventFormat format,
                              ErrorPolicy policy) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open events file '" + path + "'");
    return parse_events(in, format, policy);
}

void write_events_csv(std::ostream& out, const std::vector<RetweetEvent>& events) {
    out << "time,author,retweeter,post_id\n";
    for (const auto& ev : events) {
        out << format_timestamp(ev.time) << ',' << ev.author << ',' << ev.retweeter
            << ',' << ev.post_id << '\n';
    }
}

void write_events_jsonl(std::ostream& out, const std::vector<RetweetEvent>& events) {
    for (const auto& ev : events) {
        nlohmann::json obj{{"time", ev.time},
                           {"author", ev.author},
                           {"retweeter", ev.retweeter},
                           {"post_id", ev.post_id}};
        out << obj.dump() << '\n';
    }
}

}  // namespace retnet
