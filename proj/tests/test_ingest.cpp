#include <doctest.h>

#include <sstream>

#include "retnet/errors.hpp"
#include "retnet/ingest.hpp"
#include "retnet/rng.hpp"

using namespace retnet;

TEST_CASE("csv record maps fields directly") {
    std::istringstream in(
        "time,author,retweeter,post_id\n"
        "2018-01-01T00:00:00Z,alice,bob,p1\n");
    auto report = parse_events(in, EventFormat::csv);
    REQUIRE(report.events.size() == 1);
    CHECK(report.events[0].author == "alice");
    CHECK(report.events[0].retweeter == "bob");
    CHECK(report.events[0].post_id == "p1");
    CHECK(report.events[0].time == 1514764800);
    CHECK(report.records == 1);
}

TEST_CASE("self-retweets are dropped and counted") {
    std::istringstream in(
        "time,author,retweeter,post_id\n"
        "2018-01-01T00:00:00Z,alice,alice,p2\n");
    auto report = parse_events(in, EventFormat::csv);
    CHECK(report.events.empty());
    CHECK(report.dropped_self == 1);
}

TEST_CASE("events are returned sorted ascending by time") {
    std::istringstream in(
        "time,author,retweeter,post_id\n"
        "300,a,b,p1\n"
        "100,c,d,p2\n"
        "200,e,f,p3\n");
    auto report = parse_events(in, EventFormat::csv);
    REQUIRE(report.events.size() == 3);
    CHECK(report.events[0].time == 100);
    CHECK(report.events[1].time == 200);
    CHECK(report.events[2].time == 300);
}

TEST_CASE("fail-fast reports the offending line number") {
    std::istringstream in(
        "time,author,retweeter,post_id\n"
        "100,a,b,p1\n"
        "not-a-time,c,d,p2\n");
    CHECK_THROWS_WITH_AS(parse_events(in, EventFormat::csv),
                         doctest::Contains("line 3"), DataError);
}

TEST_CASE("skip-and-count keeps going and balances the counts") {
    std::istringstream in(
        "time,author,retweeter,post_id\n"
        "100,a,b,p1\n"
        "bad line\n"
        "2018-13-01T00:00:00Z,c,d,p2\n"
        "200,e,e,p3\n"
        "300,f,g,p4\n");
    auto report = parse_events(in, EventFormat::csv, ErrorPolicy::skip_and_count);
    CHECK(report.events.size() == 2);
    CHECK(report.skipped == 2);
    CHECK(report.dropped_self == 1);
    CHECK(report.records == 5);
    CHECK(report.events.size() + report.skipped + report.dropped_self == report.records);
    REQUIRE(report.issues.size() == 2);
    CHECK(report.issues[0].find("line 3") != std::string::npos);
}

TEST_CASE("timestamps must be UTC") {
    CHECK(parse_timestamp("2018-01-01T00:00:00Z") == 1514764800);
    CHECK(parse_timestamp("2018-01-01T00:00:00+00:00") == 1514764800);
    CHECK(parse_timestamp("2018-01-01 00:00:00Z") == 1514764800);
    CHECK(parse_timestamp("1514764800") == 1514764800);
    CHECK(parse_timestamp("2018-01-01T00:00:00.999Z") == 1514764800);  // truncated
    CHECK_THROWS_AS(parse_timestamp("2018-01-01T00:00:00+01:00"), DataError);
    CHECK_THROWS_AS(parse_timestamp("2018-01-01T00:00:00"), DataError);
    CHECK_THROWS_AS(parse_timestamp("2018-02-30T00:00:00Z"), DataError);
    CHECK_THROWS_AS(parse_timestamp(""), DataError);
}

TEST_CASE("timestamp formatting round-trips") {
    for (std::int64_t t : {0L, 1514764800L, 1609113600L, 86399L, 1529280000L}) {
        CHECK(parse_timestamp(format_timestamp(t)) == t);
    }
    CHECK(format_timestamp(1514764800) == "2018-01-01T00:00:00Z");
}

TEST_CASE("jsonl records parse with numeric or ISO times") {
    std::istringstream in(
        R"({"time": 100, "author": "a", "retweeter": "b", "post_id": "p"})"
        "\n"
        R"({"time": "2018-01-01T00:00:00Z", "author": "c", "retweeter": "d", "post_id": "q"})"
        "\n");
    auto report = parse_events(in, EventFormat::jsonl);
    REQUIRE(report.events.size() == 2);
    CHECK(report.events[0].time == 100);
    CHECK(report.events[1].time == 1514764800);
}

TEST_CASE("whitespace in user ids is malformed") {
    std::istringstream in(
        "time,author,retweeter,post_id\n"
        "100,a user,b,p1\n");
    CHECK_THROWS_AS(parse_events(in, EventFormat::csv), DataError);
}

TEST_CASE("parse-serialize-parse is the identity on retained events") {
    SplitMix64 rng(11);
    std::vector<RetweetEvent> events;
    for (int i = 0; i < 200; ++i) {
        RetweetEvent ev;
        ev.author = "user" + std::to_string(rng.next_below(20));
        do {
            ev.retweeter = "user" + std::to_string(rng.next_below(20));
        } while (ev.retweeter == ev.author);
        ev.post_id = "post" + std::to_string(rng.next_below(50));
        ev.time = static_cast<std::int64_t>(rng.next_below(1000000000));
        events.push_back(ev);
    }
    std::stable_sort(events.begin(), events.end(),
                     [](const RetweetEvent& a, const RetweetEvent& b) {
                         return a.time < b.time;
                     });

    std::ostringstream csv;
    write_events_csv(csv, events);
    std::istringstream csv_in(csv.str());
    auto csv_report = parse_events(csv_in, EventFormat::csv);
    CHECK(csv_report.events == events);

    std::ostringstream jsonl;
    write_events_jsonl(jsonl, events);
    std::istringstream jsonl_in(jsonl.str());
    auto jsonl_report = parse_events(jsonl_in, EventFormat::jsonl);
    CHECK(jsonl_report.events == events);
}
