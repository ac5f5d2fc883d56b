#include "epitopic/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "epitopic/error.hpp"
#include "epitopic/log.hpp"
#include "json.hpp"

namespace epitopic {

namespace {

using nlohmann::json;

bool is_ascii_letter(char32_t c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}

// Rough "is this codepoint part of some script's alphabet" test. Covers the
// Latin supplements, Greek/Cyrillic/Hebrew/Arabic/Indic/Thai blocks, CJK and
// Hangul. Symbol, punctuation and emoji planes are deliberately excluded so
// a tweet full of emoji still counts as English.
bool is_foreign_letter(char32_t c) {
    if (c < 0xC0) return false;
    if (c <= 0x2FF) return true;                  // Latin-1 supplement .. IPA
    if (c >= 0x370 && c <= 0x1FFF) return true;   // Greek .. Greek extended
    if (c >= 0x2E80 && c <= 0xD7FF) return true;  // CJK radicals .. Hangul
    if (c >= 0xF900 && c <= 0xFDFF) return true;  // compatibility blocks
    return false;
}

// Tolerant UTF-8 decode: invalid sequences yield U+FFFD and advance one byte.
char32_t decode_utf8(std::string_view s, std::size_t& i) {
    unsigned char b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    int extra = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        extra = 1;
        cp = b0 & 0x1Fu;
    } else if ((b0 & 0xF0) == 0xE0) {
        extra = 2;
        cp = b0 & 0x0Fu;
    } else if ((b0 & 0xF8) == 0xF0) {
        extra = 3;
        cp = b0 & 0x07u;
    } else {
        ++i;
        return 0xFFFD;
    }
    if (i + static_cast<std::size_t>(extra) >= s.size()) {
        ++i;
        return 0xFFFD;
    }
    for (int k = 1; k <= extra; ++k) {
        unsigned char b = static_cast<unsigned char>(s[i + static_cast<std::size_t>(k)]);
        if ((b & 0xC0) != 0x80) {
            ++i;
            return 0xFFFD;
        }
        cp = (cp << 6) | (b & 0x3Fu);
    }
    i += static_cast<std::size_t>(extra) + 1;
    return cp;
}

std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
    return out;
}

bool is_tag_char(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
           (c >= '0' && c <= '9') || c == '_';
}

std::string normalize_tag(std::string_view tag) {
    while (!tag.empty() && tag.front() == '#') tag.remove_prefix(1);
    return to_lower_ascii(tag);
}

// Pull a field out of a parsed tweet object, tolerating the common layout
// variants of archived Twitter data.
std::optional<std::string> get_id(const json& j) {
    if (auto it = j.find("id_str"); it != j.end() && it->is_string())
        return it->get<std::string>();
    if (auto it = j.find("id"); it != j.end()) {
        if (it->is_string()) return it->get<std::string>();
        if (it->is_number_integer())
            return std::to_string(it->get<std::int64_t>());
    }
    return std::nullopt;
}

std::optional<std::int64_t> get_created_at(const json& j) {
    auto it = j.find("created_at");
    if (it == j.end()) return std::nullopt;
    if (it->is_number_integer()) return it->get<std::int64_t>();
    if (it->is_string()) return parse_timestamp(it->get<std::string>());
    return std::nullopt;
}

std::optional<std::string> get_text(const json& j) {
    for (const char* key : {"text", "full_text"}) {
        if (auto it = j.find(key); it != j.end() && it->is_string())
            return it->get<std::string>();
    }
    return std::nullopt;
}

std::int64_t get_count(const json& j, const char* key) {
    if (auto it = j.find(key); it != j.end() && it->is_number())
        return it->get<std::int64_t>();
    return 0;
}

std::string get_string(const json& j, const char* key) {
    if (auto it = j.find(key); it != j.end() && it->is_string())
        return it->get<std::string>();
    return {};
}

// hashtags: either a flat array of strings or the API's
// entities.hashtags: [{"text": ...}, ...].
std::optional<std::vector<std::string>> get_hashtags(const json& j) {
    const json* arr = nullptr;
    if (auto it = j.find("hashtags"); it != j.end() && it->is_array()) {
        arr = &*it;
    } else if (auto ent = j.find("entities"); ent != j.end() && ent->is_object()) {
        if (auto ht = ent->find("hashtags"); ht != ent->end() && ht->is_array())
            arr = &*ht;
    }
    if (!arr) return std::nullopt;
    std::vector<std::string> tags;
    for (const auto& e : *arr) {
        if (e.is_string()) {
            tags.push_back(normalize_tag(e.get<std::string>()));
        } else if (e.is_object()) {
            if (auto t = e.find("text"); t != e.end() && t->is_string())
                tags.push_back(normalize_tag(t->get<std::string>()));
        }
    }
    return tags;
}

std::optional<TweetRecord> parse_record(const json& j, std::string& why) {
    if (!j.is_object()) {
        why = "not a JSON object";
        return std::nullopt;
    }
    TweetRecord r;
    auto id = get_id(j);
    if (!id) {
        why = "missing id";
        return std::nullopt;
    }
    r.id = *id;
    auto ts = get_created_at(j);
    if (!ts) {
        why = "missing or unparseable created_at";
        return std::nullopt;
    }
    r.created_at = *ts;
    auto text = get_text(j);
    if (!text) {
        why = "missing text";
        return std::nullopt;
    }
    r.text = *text;
    if (auto tags = get_hashtags(j))
        r.hashtags = std::move(*tags);
    else
        r.hashtags = hashtags_from_text(r.text);
    r.favorite_count = get_count(j, "favorite_count");
    r.retweet_count = get_count(j, "retweet_count");
    r.followers_count = get_count(j, "followers_count");
    r.friends_count = get_count(j, "friends_count");
    r.user_location = get_string(j, "user_location");
    r.user_description = get_string(j, "user_description");
    if (auto u = j.find("user"); u != j.end() && u->is_object()) {
        if (r.followers_count == 0) r.followers_count = get_count(*u, "followers_count");
        if (r.friends_count == 0) r.friends_count = get_count(*u, "friends_count");
        if (r.user_location.empty()) r.user_location = get_string(*u, "location");
        if (r.user_description.empty()) r.user_description = get_string(*u, "description");
    }
    if (auto it = j.find("is_retweet"); it != j.end() && it->is_boolean())
        r.is_retweet = it->get<bool>();
    else if (j.contains("retweeted_status"))
        r.is_retweet = true;
    return r;
}

}  // namespace

void CorpusFilter::validate() const {
    if (date_start && date_end)
        require(*date_start <= *date_end, "corpus filter: date_start is after date_end");
    require(ascii_letter_ratio_min >= 0.0 && ascii_letter_ratio_min <= 1.0,
            "corpus filter: ascii_letter_ratio_min must lie in [0, 1]");
}

bool CorpusFilter::matches_hashtag(const TweetRecord& r) const {
    if (hashtag_allowlist.empty()) return true;
    for (const auto& tag : r.hashtags)
        if (hashtag_allowlist.count(tag)) return true;
    return false;
}

bool CorpusFilter::matches_date(const TweetRecord& r) const {
    std::int32_t d = r.date();
    if (date_start && d < *date_start) return false;
    if (date_end && d > *date_end) return false;
    return true;
}

bool CorpusFilter::matches_english(const TweetRecord& r) const {
    if (!english_only) return true;
    return ascii_letter_ratio(r.text) >= ascii_letter_ratio_min;
}

bool CorpusFilter::matches(const TweetRecord& r) const {
    return matches_hashtag(r) && matches_date(r) && matches_english(r);
}

const std::vector<std::string>& default_hashtag_allowlist() {
    static const std::vector<std::string> tags = {
        "coronavirus",
        "coronavirusoutbreak",
        "wuhan",
        "wuhancoronavirus",
        "wuhanvirus",
        "ncov",
        "ncov2019",
        "2019ncov",
        "covid19",
        "covid2019",
        "covid",
        "sarscov2",
        "coronaoutbreak",
        "chinavirus",
        "chinesevirus",
        "coronaviruschina",
        "chinacoronavirus",
        "chinesedontcometojapan",
    };
    return tags;
}

double ascii_letter_ratio(std::string_view text) {
    std::int64_t ascii = 0;
    std::int64_t foreign = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        char32_t cp = decode_utf8(text, i);
        if (is_ascii_letter(cp))
            ++ascii;
        else if (is_foreign_letter(cp))
            ++foreign;
    }
    std::int64_t total = ascii + foreign;
    if (total == 0) return 1.0;
    return static_cast<double>(ascii) / static_cast<double>(total);
}

std::vector<std::string> hashtags_from_text(std::string_view text) {
    std::vector<std::string> tags;
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '#') continue;
        std::size_t j = i + 1;
        while (j < text.size() && is_tag_char(text[j])) ++j;
        if (j > i + 1) {
            std::string tag = to_lower_ascii(text.substr(i + 1, j - i - 1));
            if (seen.insert(tag).second) tags.push_back(std::move(tag));
            i = j - 1;
        }
    }
    return tags;
}

JsonlReadResult read_jsonl(std::istream& in, bool strict) {
    JsonlReadResult result;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        bool blank = line.find_first_not_of(" \t") == std::string::npos;
        if (blank) continue;
        std::string why;
        json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
        std::optional<TweetRecord> rec;
        if (j.is_discarded())
            why = "invalid JSON";
        else
            rec = parse_record(j, why);
        if (!rec) {
            if (strict)
                fail("line " + std::to_string(line_number) + ": " + why);
            result.skipped.push_back({line_number, why});
            continue;
        }
        result.records.push_back(std::move(*rec));
    }
    if (!result.skipped.empty())
        log_warn("read_jsonl: skipped " + std::to_string(result.skipped.size()) +
                 " malformed line(s)");
    return result;
}

std::vector<TweetRecord> filter_records(const std::vector<TweetRecord>& records,
                                        const CorpusFilter& filter) {
    filter.validate();
    std::vector<TweetRecord> kept;
    for (const auto& r : records)
        if (filter.matches(r)) kept.push_back(r);
    return kept;
}

bool is_retweet_record(const TweetRecord& r) {
    if (r.is_retweet) return true;
    return r.text.rfind("RT @", 0) == 0;
}

std::string dedup_text_key(std::string_view text) {
    std::string key;
    key.reserve(text.size());
    bool pending_space = false;
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            pending_space = !key.empty();
            continue;
        }
        if (pending_space) {
            key += ' ';
            pending_space = false;
        }
        key += (c >= 'A' && c <= 'Z') ? static_cast<char>(c + ('a' - 'A')) : c;
    }
    return key;
}

DedupResult deduplicate(const std::vector<TweetRecord>& records) {
    DedupResult out;
    std::unordered_set<std::string> seen_ids;
    std::unordered_set<std::string> seen_texts;
    for (const auto& r : records) {
        if (is_retweet_record(r)) {
            ++out.removed;
            continue;
        }
        if (!seen_ids.insert(r.id).second) {
            ++out.removed;
            continue;
        }
        if (!seen_texts.insert(dedup_text_key(r.text)).second) {
            ++out.removed;
            continue;
        }
        out.records.push_back(r);
    }
    return out;
}

CorpusStats corpus_stats(const std::vector<TweetRecord>& before,
                         const std::vector<TweetRecord>& after,
                         const CorpusFilter& filter) {
    filter.validate();
    CorpusStats stats;
    stats.total_in = static_cast<std::int64_t>(before.size());
    stats.retained = static_cast<std::int64_t>(after.size());
    // Attribute each lost record to the first pipeline step that rejects it.
    std::unordered_map<std::string, std::int64_t> kept_ids;
    for (const auto& r : after) ++kept_ids[r.id];
    for (const auto& r : before) {
        if (auto it = kept_ids.find(r.id); it != kept_ids.end() && it->second > 0) {
            --it->second;
            continue;
        }
        if (!filter.matches_hashtag(r) || !filter.matches_date(r))
            ++stats.removed_by_other_filters;
        else if (!filter.matches_english(r))
            ++stats.removed_non_english;
        else
            ++stats.removed_duplicates_retweets;
    }
    for (const auto& r : after) {
        for (const auto& tag : r.hashtags) {
            if (!filter.hashtag_allowlist.empty() &&
                !filter.hashtag_allowlist.count(tag))
                continue;
            ++stats.per_hashtag_daily[{tag, r.date()}];
        }
    }
    return stats;
}

}  // namespace epitopic
