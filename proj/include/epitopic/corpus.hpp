#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "epitopic/timeutil.hpp"

// Corpus ingestion: tweet JSONL parsing, hashtag/date/language filtering,
// duplicate and retweet removal, and funnel statistics.

namespace epitopic {

struct TweetRecord {
    std::string id;
    std::int64_t created_at = 0;  // seconds since epoch, UTC
    std::string text;
    std::vector<std::string> hashtags;  // lowercase, without '#'
    std::int64_t favorite_count = 0;
    std::int64_t retweet_count = 0;
    std::int64_t followers_count = 0;
    std::int64_t friends_count = 0;
    std::string user_location;     // empty when absent
    std::string user_description;  // empty when absent
    bool is_retweet = false;

    std::int32_t date() const { return day_of(created_at); }
};

struct CorpusFilter {
    // Record is retained when its hashtag set intersects the allowlist.
    // An empty allowlist disables hashtag filtering.
    std::unordered_set<std::string> hashtag_allowlist;
    // Inclusive date window (days since epoch); unset bound = open.
    std::optional<std::int32_t> date_start;
    std::optional<std::int32_t> date_end;
    bool english_only = true;
    double ascii_letter_ratio_min = 0.9;

    void validate() const;
    bool matches_hashtag(const TweetRecord& r) const;
    bool matches_date(const TweetRecord& r) const;
    bool matches_english(const TweetRecord& r) const;
    bool matches(const TweetRecord& r) const;
};

// The 18 tracked hashtags (lowercase, no '#').
const std::vector<std::string>& default_hashtag_allowlist();

// Heuristic language check: fraction of alphabetic characters that are ASCII
// letters. Texts with no alphabetic characters score 1.0.
double ascii_letter_ratio(std::string_view text);

// '#'-prefixed tags extracted from raw tweet text, lowercased, de-duplicated
// in first-seen order. Used when a record carries no hashtag list.
std::vector<std::string> hashtags_from_text(std::string_view text);

struct SkippedLine {
    std::size_t line_number = 0;  // 1-based
    std::string reason;
};

struct JsonlReadResult {
    std::vector<TweetRecord> records;
    std::vector<SkippedLine> skipped;
};

// Read tweet records from JSONL. Lines that are blank are ignored; lines
// that fail to parse or lack required fields (id, created_at, text) are
// collected in `skipped` — unless `strict`, in which case the first bad
// line throws with its line number.
JsonlReadResult read_jsonl(std::istream& in, bool strict = false);

// Keep records matching all filter predicates. Order is preserved.
std::vector<TweetRecord> filter_records(const std::vector<TweetRecord>& records,
                                        const CorpusFilter& filter);

struct DedupResult {
    std::vector<TweetRecord> records;
    std::int64_t removed = 0;
};

// Drop retweets, then exact-duplicate ids and duplicate texts
// (case/whitespace-insensitive). First occurrence wins; order is preserved.
DedupResult deduplicate(const std::vector<TweetRecord>& records);

// True when the record is flagged as a retweet or its text starts "RT @".
bool is_retweet_record(const TweetRecord& r);

// Lowercased, whitespace-collapsed text key used for duplicate detection.
std::string dedup_text_key(std::string_view text);

struct CorpusStats {
    std::int64_t total_in = 0;
    std::int64_t removed_by_other_filters = 0;  // hashtag/date misses
    std::int64_t removed_non_english = 0;
    std::int64_t removed_duplicates_retweets = 0;
    std::int64_t retained = 0;
    // (hashtag, day) -> tweet count over retained records, allowlist tags only.
    std::map<std::pair<std::string, std::int32_t>, std::int64_t> per_hashtag_daily;
};

// Funnel accounting between the raw corpus and its filtered+deduplicated
// result (`after` must be a sub-multiset of `before` by id). Each lost
// record lands in exactly one bucket, assigned in pipeline order:
// hashtag/date first, then language, then duplicates/retweets. The
// per-hashtag daily map covers retained records only.
CorpusStats corpus_stats(const std::vector<TweetRecord>& before,
                         const std::vector<TweetRecord>& after,
                         const CorpusFilter& filter);

}  // namespace epitopic
