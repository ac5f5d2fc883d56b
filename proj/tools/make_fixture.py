#!/usr/bin/env python3
"""Regenerate tests/fixtures/mini_corpus.jsonl and friends.

The corpus is synthetic but exercises every ingestion path: both timestamp
formats, both hashtag schemas, string and numeric ids, retweets, duplicate
ids, whitespace-variant duplicate texts, non-English texts, out-of-window
dates, non-allowlisted hashtags, and a few malformed lines. Five planted
themes give the topic model clear structure, and two of them carry emotion
words so the significance grid has real contrasts.

Deterministic: re-running this script reproduces the files byte for byte.
"""

import json
import random
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "tests" / "fixtures"

RNG = random.Random(7)

THEMES = [
    # name, content words, injected emotion words (rate applied per doc)
    ("lockdown", ["wuhan", "china", "lockdown", "quarantine", "city", "travel",
                  "flights", "airport", "border", "evacuation"],
     ["afraid", "scared", "terrified", "panic", "fear", "frightening",
      "deadly", "dangerous", "worried", "dread"], 0.75),
    ("health", ["symptoms", "fever", "cough", "hospital", "doctors",
                "patients", "breathing", "testing"], [], 0.0),
    ("economy", ["stocks", "market", "economy", "prices", "supply",
                 "business", "impact", "jobs", "workers"], [], 0.0),
    ("hygiene", ["soap", "masks", "sanitizer", "stay", "home", "distancing",
                 "prevention"],
     ["happy", "glad", "love", "wonderful", "amazing", "joy", "cheerful",
      "delighted"], 0.45),
    ("politics", ["government", "president", "response", "media", "policy",
                  "briefing", "officials", "public"], [], 0.0),
]

FILLER = ["today", "people", "time", "week", "reports", "update", "latest",
          "total", "number", "world", "spread", "confirmed"]

ALLOWLIST = ["coronavirus", "coronavirusoutbreak", "wuhan", "wuhancoronavirus",
             "wuhanvirus", "ncov", "ncov2019", "2019ncov", "covid19",
             "covid2019", "covid", "sarscov2", "coronaoutbreak", "chinavirus",
             "chinesevirus", "coronaviruschina", "chinacoronavirus",
             "chinesedontcometojapan"]

CJK = "疫情武汉封城医院口罩防护隔离确诊病例新增湖北加油注意安全健康"

MONTH_NAMES = ["Jan", "Feb", "Mar", "Apr", "May", "Jun",
               "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"]
DAY_NAMES = ["Thu", "Fri", "Sat", "Sun", "Mon", "Tue", "Wed"]


def in_window_date():
    # 2020-01-23 .. 2020-03-07 inclusive (45 days).
    return RNG.randrange(45)


def date_parts(day_index):
    """day_index counts from 2020-01-23."""
    month_days = [31, 29, 31]
    month, day = 1, 23 + day_index
    while day > month_days[month - 1]:
        day -= month_days[month - 1]
        month += 1
    return month, day


def timestamp(day_index, iso):
    month, day = date_parts(day_index)
    hh, mm, ss = RNG.randrange(24), RNG.randrange(60), RNG.randrange(60)
    if iso:
        return f"2020-{month:02d}-{day:02d}T{hh:02d}:{mm:02d}:{ss:02d}Z"
    # Weekday for 2020-01-23 (a Thursday) plus the offset.
    wd = DAY_NAMES[day_index % 7]
    return f"{wd} {MONTH_NAMES[month - 1]} {day:02d} {hh:02d}:{mm:02d}:{ss:02d} +0000 2020"


def theme_text(theme_index):
    name, words, emo, rate = THEMES[theme_index]
    n = RNG.randrange(8, 14)
    toks = [RNG.choice(words) for _ in range(n)]
    toks += [RNG.choice(FILLER) for _ in range(RNG.randrange(1, 4))]
    if emo and RNG.random() < rate:
        toks += [RNG.choice(emo) for _ in range(RNG.randrange(1, 3))]
    RNG.shuffle(toks)
    # Planted bigrams: every hygiene doc urges washing hands, and roughly a
    # third of all docs mention the disease name, which normalizes to a
    # "covid 19" pair.
    if name == "hygiene":
        toks.insert(RNG.randrange(len(toks) + 1), "wash hands")
    if RNG.random() < 0.35:
        toks.append("COVID-19")
    return " ".join(toks)


def base_record(idx, theme_index):
    text = theme_text(theme_index)
    tags = [RNG.choice(ALLOWLIST)]
    if RNG.random() < 0.3:
        tags.append(RNG.choice(ALLOWLIST))
    rec = {
        "created_at": timestamp(in_window_date(), iso=RNG.random() < 0.5),
        "text": text + " #" + " #".join(tags),
    }
    # Rotate through the id and hashtag schemas the reader accepts.
    style = idx % 4
    if style == 0:
        rec["id"] = f"t{idx:05d}"
        rec["hashtags"] = tags
    elif style == 1:
        rec["id_str"] = f"t{idx:05d}"
        rec["hashtags"] = tags
    elif style == 2:
        rec["id"] = 9000000 + idx
        rec["entities"] = {"hashtags": [{"text": t} for t in tags]}
    else:
        rec["id"] = f"t{idx:05d}"
        # No hashtags key: the reader falls back to parsing them from text.
    if RNG.random() < 0.5:
        rec["favorite_count"] = RNG.randrange(50)
        rec["retweet_count"] = RNG.randrange(20)
    if RNG.random() < 0.4:
        rec["user"] = {"followers_count": RNG.randrange(5000),
                       "friends_count": RNG.randrange(2000),
                       "location": RNG.choice(["", "London", "NYC", "Lagos"]),
                       "description": ""}
    return rec


def main():
    lines = []
    records = []  # (record, retained_clean) for dup sourcing
    idx = 0

    def push(rec, clean=False):
        nonlocal idx
        lines.append(json.dumps(rec, sort_keys=True, separators=(",", ":")))
        records.append((rec, clean))
        idx += 1

    # 1640 clean records across five themes.
    for _ in range(1640):
        push(base_record(idx, idx % 5), clean=True)

    # 40 outside the date window (still allowlisted, English).
    for i in range(40):
        rec = base_record(idx, idx % 5)
        month, day = (1, 5 + i % 15) if i % 2 == 0 else (3, 10 + i % 15)
        rec["created_at"] = f"2020-{month:02d}-{day:02d}T12:00:00Z"
        push(rec)

    # 60 with no allowlisted hashtag anywhere.
    for _ in range(60):
        rec = base_record(idx, idx % 5)
        rec["text"] = theme_text(idx % 5) + " #flu #news"
        rec["hashtags"] = ["flu", "news"]
        rec.pop("entities", None)
        rec.pop("id_str", None)
        rec["id"] = f"t{idx:05d}"
        push(rec)

    # 80 non-English (mostly CJK text, valid tags and dates).
    for _ in range(80):
        rec = base_record(idx, idx % 5)
        body = "".join(RNG.choice(CJK) for _ in range(RNG.randrange(20, 40)))
        rec["text"] = body + " #" + rec.get("hashtags", ["coronavirus"])[0]
        push(rec)

    # 80 retweets: half flagged by text prefix, half by metadata.
    for i in range(80):
        rec = base_record(idx, idx % 5)
        if i % 2 == 0:
            rec["text"] = "RT @someone: " + rec["text"]
        elif i % 4 == 1:
            rec["is_retweet"] = True
        else:
            rec["retweeted_status"] = {"id": 1}
        push(rec)

    # 60 duplicate texts of retained clean records (whitespace variants).
    clean = [r for r, ok in records if ok]
    for i in range(60):
        src = clean[RNG.randrange(len(clean))]
        rec = base_record(idx, idx % 5)
        rec["text"] = "  " + src["text"].replace(" ", "  ", 2) + " "
        push(rec)

    # 40 duplicate ids of retained clean records (fresh text).
    reused = RNG.sample([r for r in clean if "id" in r and isinstance(r["id"], str)], 40)
    for src in reused:
        rec = base_record(idx, idx % 5)
        rec.pop("id_str", None)
        rec.pop("entities", None)
        rec["id"] = src["id"]
        rec["hashtags"] = [RNG.choice(ALLOWLIST)]
        rec["text"] = theme_text(idx % 5) + " #" + rec["hashtags"][0]
        push(rec)

    # Three malformed lines, spliced into fixed positions.
    lines.insert(500, "{ not json at all")
    lines.insert(1200, json.dumps({"created_at": "2020-02-01T00:00:00Z",
                                   "text": "no id here #coronavirus"}))
    lines.insert(1900, json.dumps({"id": "tbadts", "created_at": "whenever",
                                   "text": "bad timestamp #coronavirus"}))

    FIXTURES.mkdir(parents=True, exist_ok=True)
    (FIXTURES / "mini_corpus.jsonl").write_text("\n".join(lines) + "\n",
                                                encoding="utf-8")

    (FIXTURES / "themes.txt").write_text(
        "# Human labels for the mini corpus themes (topic indexes are\n"
        "# whatever the fitted model assigns; these cover 0 and 1 only).\n"
        "0\tfirst theme\n"
        "1\tsecond theme\n",
        encoding="utf-8")

    config = {
        "input": ["tests/fixtures/mini_corpus.jsonl"],
        "output_dir": "out",
        "date_start": "2020-01-23",
        "date_end": "2020-03-07",
        "k_sweep": [3, 4, 5, 6, 7],
        "iterations": 400,
        "burn_in": 200,
        "sample_every": 10,
        "seed": 42,
        "coherence_top_t": 10,
        "top_terms": 10,
        "threads": 4,
    }
    (ROOT / "configs" / "example.json").write_text(
        json.dumps(config, indent=2) + "\n", encoding="utf-8")

    print(f"wrote {len(lines)} lines")


if __name__ == "__main__":
    main()
