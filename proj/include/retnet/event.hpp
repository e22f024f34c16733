#pragma once

#include <cstdint>
#include <string>

namespace retnet {

// Opaque user token (handle or numeric id). Non-empty, no whitespace,
// compared by exact byte equality.
using UserId = std::string;

// One retweet action, directed author -> retweeter.
struct RetweetEvent {
    UserId author;
    UserId retweeter;
    std::string post_id;  // the original tweet being retweeted
    std::int64_t time = 0;  // seconds since Unix epoch, UTC

    friend bool operator==(const RetweetEvent&, const RetweetEvent&) = default;
};

}  // namespace retnet
