#include "epitopic/emotion.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "epitopic/error.hpp"

namespace epitopic {

// data/emotion_lexicon.tsv, embedded so the binary needs no data directory.
// Defined in emotion_lexicon_data.cpp; a parity test keeps it and the file
// identical.
namespace detail {
extern const char kBuiltinLexicon[];
}

namespace {

constexpr std::array<std::string_view, kNumEmotionLabels> kNames = {
    "joy",      "sadness",      "trust",   "disgust", "fear",
    "anger",    "surprise",     "anticipation", "neutral",
};

}  // namespace

std::string_view emotion_name(EmotionLabel label) {
    return kNames[static_cast<std::size_t>(label)];
}

std::optional<EmotionLabel> emotion_from_name(std::string_view name) {
    std::string lower(name);
    for (char& c : lower)
        if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (lower == kNames[i]) return static_cast<EmotionLabel>(i);
    return std::nullopt;
}

EmotionLabel emotion_opposite(EmotionLabel label) {
    switch (label) {
        case EmotionLabel::kJoy: return EmotionLabel::kSadness;
        case EmotionLabel::kSadness: return EmotionLabel::kJoy;
        case EmotionLabel::kTrust: return EmotionLabel::kDisgust;
        case EmotionLabel::kDisgust: return EmotionLabel::kTrust;
        case EmotionLabel::kFear: return EmotionLabel::kAnger;
        case EmotionLabel::kAnger: return EmotionLabel::kFear;
        case EmotionLabel::kSurprise: return EmotionLabel::kAnticipation;
        case EmotionLabel::kAnticipation: return EmotionLabel::kSurprise;
        case EmotionLabel::kNeutral: return EmotionLabel::kNeutral;
    }
    fail("emotion_opposite: invalid label");
}

EmotionLexicon EmotionLexicon::parse(std::istream& in, std::string name) {
    EmotionLexicon lex;
    lex.name_ = std::move(name);
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            fail("emotion lexicon line " + std::to_string(line_number) +
                 ": expected word<TAB>emotion");
        std::string word = line.substr(0, tab);
        std::string emo = line.substr(tab + 1);
        if (auto t2 = emo.find('\t'); t2 != std::string::npos) emo.erase(t2);
        while (!emo.empty() && (emo.back() == ' ' || emo.back() == '\t'))
            emo.pop_back();
        if (word.empty())
            fail("emotion lexicon line " + std::to_string(line_number) + ": empty word");
        auto label = emotion_from_name(emo);
        if (!label || *label == EmotionLabel::kNeutral)
            fail("emotion lexicon line " + std::to_string(line_number) +
                 ": unknown emotion '" + emo + "'");
        for (char& c : word)
            if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
        lex.entries_[word] |= static_cast<std::uint8_t>(1u << static_cast<unsigned>(*label));
    }
    return lex;
}

const EmotionLexicon& EmotionLexicon::builtin() {
    static const EmotionLexicon lex = [] {
        std::istringstream in(detail::kBuiltinLexicon);
        return parse(in, "builtin");
    }();
    return lex;
}

EmotionLabel classify(const std::vector<std::string>& tokens,
                      const EmotionLexicon& lexicon, const ClassifierConfig& cfg) {
    std::array<std::int64_t, kNumBasicEmotions> hits{};
    for (const auto& tok : tokens) {
        std::uint8_t mask = lexicon.emotions_of(tok);
        while (mask != 0) {
            unsigned bit = static_cast<unsigned>(__builtin_ctz(mask));
            ++hits[bit];
            mask = static_cast<std::uint8_t>(mask & (mask - 1));
        }
    }
    EmotionLabel best = EmotionLabel::kNeutral;
    std::int64_t best_hits = 0;
    for (EmotionLabel candidate : cfg.tie_break) {
        std::int64_t h = hits[static_cast<std::size_t>(candidate)];
        if (h > best_hits) {
            best_hits = h;
            best = candidate;
        }
    }
    return best;
}

std::vector<EmotionSeriesPoint> daily_series(
    const std::vector<std::pair<std::int32_t, EmotionLabel>>& labeled) {
    std::map<std::int32_t, std::array<std::int64_t, kNumEmotionLabels>> by_day;
    for (const auto& [date, label] : labeled)
        ++by_day[date][static_cast<std::size_t>(label)];
    std::vector<EmotionSeriesPoint> series;
    series.reserve(by_day.size());
    for (const auto& [date, counts] : by_day) {
        EmotionSeriesPoint pt;
        pt.date = date;
        for (std::int64_t c : counts) pt.tweet_count += c;
        for (std::size_t i = 0; i < kNumEmotionLabels; ++i)
            pt.proportions[i] =
                static_cast<double>(counts[i]) / static_cast<double>(pt.tweet_count);
        series.push_back(pt);
    }
    return series;
}

TopicEmotionTable topic_emotion_table(const std::vector<EmotionLabel>& labels,
                                      const std::vector<std::int32_t>& dominant,
                                      std::int32_t num_topics) {
    require(labels.size() == dominant.size(),
            "topic_emotion_table: labels and dominant topics must be the same length");
    require(num_topics >= 1, "topic_emotion_table: num_topics must be >= 1");
    TopicEmotionTable table;
    table.num_topics = num_topics;
    table.counts.assign(static_cast<std::size_t>(num_topics), {});
    table.totals.assign(static_cast<std::size_t>(num_topics), 0);
    for (std::size_t d = 0; d < labels.size(); ++d) {
        std::int32_t topic = dominant[d];
        if (topic < 0) continue;  // document had no tokens
        require(topic < num_topics, "topic_emotion_table: topic index out of range");
        ++table.counts[static_cast<std::size_t>(topic)]
                      [static_cast<std::size_t>(labels[d])];
        ++table.totals[static_cast<std::size_t>(topic)];
    }
    return table;
}

}  // namespace epitopic
