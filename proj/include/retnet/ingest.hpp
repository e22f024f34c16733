#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "retnet/event.hpp"

namespace retnet {

enum class EventFormat { csv, jsonl };
enum class ErrorPolicy { fail_fast, skip_and_count };

struct ParseReport {
    std::vector<RetweetEvent> events;  // retained, sorted ascending by time
    std::size_t records = 0;           // data records seen (header excluded)
    std::size_t dropped_self = 0;      // valid records with author == retweeter
    std::size_t skipped = 0;           // malformed records (skip_and_count only)
    std::vector<std::string> issues;   // one line-numbered message per skipped record
};

// Parses a line-oriented event stream. CSV expects the header
// `time,author,retweeter,post_id`; JSONL expects one object per line with
// the same keys. Timestamps are ISO-8601 UTC or epoch seconds.
// Self-retweets are dropped and counted. With fail_fast, the first bad
// record throws DataError carrying its line number.
ParseReport parse_events(std::istream& in, EventFormat format,
                         ErrorPolicy policy = ErrorPolicy::fail_fast);

ParseReport parse_events_file(const std::string& path, EventFormat format,
                              ErrorPolicy policy = ErrorPolicy::fail_fast);

void write_events_csv(std::ostream& out, const std::vector<RetweetEvent>& events);
void write_events_jsonl(std::ostream& out, const std::vector<RetweetEvent>& events);

// "2018-01-01T00:00:00Z" (or "+00:00" offset, or plain epoch seconds) ->
// epoch seconds. Sub-second digits are truncated. Throws DataError on
// anything unparseable or not anchored to UTC.
std::int64_t parse_timestamp(std::string_view text);

std::string format_timestamp(std::int64_t epoch_seconds);

}  // namespace retnet
