#!/usr/bin/env python3
"""Regenerates the synthetic event fixtures under tests/data/.

Deterministic: reruns produce byte-identical files. The fixtures are
synthetic retweet event streams shaped to exercise the pipeline end to
end (community drift, node churn, skewed per-post retweet counts).
"""
import random

EPOCH_2021_01_04 = 1609718400  # Monday 2021-01-04T00:00:00Z
WEEK = 604800
DAY = 86400


def iso(t):
    import datetime
    return datetime.datetime.fromtimestamp(t, datetime.timezone.utc).strftime(
        "%Y-%m-%dT%H:%M:%SZ")


def write_tiny(path):
    """50 events, 12 weeks, a handful of users; window math checkable by hand."""
    rng = random.Random(20210104)
    users = [f"u{i:02d}" for i in range(8)]
    rows = []
    for k in range(50):
        t = EPOCH_2021_01_04 + (k * 12 * WEEK) // 50 + rng.randrange(0, 3600)
        author = users[k % 4]
        retweeter = users[4 + (k + k // 7) % 4]
        rows.append((t, author, retweeter, f"{author}-p{k % 6}"))
    rows.sort()
    with open(path, "w") as f:
        f.write("time,author,retweeter,post_id\n")
        for t, a, r, p in rows:
            f.write(f"{iso(t)},{a},{r},{p}\n")
    return len(rows)


def write_pipeline(path):
    """Three planted communities over 12 weeks; C dissolves into A from week 6,
    per-week node churn, and skewed post popularity for h-index ranking."""
    rng = random.Random(97)
    groups = {
        "a": [f"a{i:02d}" for i in range(24)],
        "b": [f"b{i:02d}" for i in range(22)],
        "c": [f"c{i:02d}" for i in range(16)],
    }
    hubs = {"a": groups["a"][:4], "b": groups["b"][:4], "c": groups["c"][:3]}
    drifters = [f"d{i:02d}" for i in range(10)]  # join from week 4 on
    rows = []
    for week in range(12):
        wstart = EPOCH_2021_01_04 + week * WEEK
        # within-group traffic
        for g, members in groups.items():
            n_events = 90 if g != "c" else 60
            for _ in range(n_events):
                author = hubs[g][rng.randrange(len(hubs[g]))] if rng.random() < 0.6 \
                    else members[rng.randrange(len(members))]
                retweeter = members[rng.randrange(len(members))]
                if retweeter == author:
                    continue
                # c members drift toward a after week 6
                if g == "c" and week >= 6 and rng.random() < (week - 5) * 0.12:
                    author = hubs["a"][rng.randrange(len(hubs["a"]))]
                post = f"{author}-w{week}-p{rng.randrange(5)}"
                t = wstart + rng.randrange(0, WEEK)
                rows.append((t, author, retweeter, post))
        # sparse cross-group noise
        flat = [u for m in groups.values() for u in m]
        for _ in range(12):
            author, retweeter = rng.sample(flat, 2)
            t = wstart + rng.randrange(0, WEEK)
            rows.append((t, author, retweeter, f"{author}-w{week}-x"))
        # drifters appear from week 4, retweeting a-hubs
        if week >= 4:
            for d in drifters:
                if rng.random() < 0.7:
                    author = hubs["a"][rng.randrange(len(hubs["a"]))]
                    t = wstart + rng.randrange(0, WEEK)
                    rows.append((t, author, d, f"{author}-w{week}-p0"))
    rows.sort()
    with open(path, "w") as f:
        f.write("time,author,retweeter,post_id\n")
        for t, a, r, p in rows:
            f.write(f"{t},{a},{r},{p}\n")
    return len(rows)


if __name__ == "__main__":
    import os
    base = os.path.join(os.path.dirname(__file__), "..", "tests", "data")
    n1 = write_tiny(os.path.join(base, "tiny_events.csv"))
    n2 = write_pipeline(os.path.join(base, "pipeline_events.csv"))
    print(f"tiny_events.csv: {n1} events")
    print(f"pipeline_events.csv: {n2} events")
