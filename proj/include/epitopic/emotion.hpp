#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

// Lexicon-based emotion classification over the eight basic emotions plus
// Neutral, daily emotion proportions, and per-topic emotion tables.

namespace epitopic {

enum class EmotionLabel : std::uint8_t {
    kJoy = 0,
    kSadness,
    kTrust,
    kDisgust,
    kFear,
    kAnger,
    kSurprise,
    kAnticipation,
    kNeutral,
};

inline constexpr std::size_t kNumEmotionLabels = 9;
inline constexpr std::size_t kNumBasicEmotions = 8;

inline constexpr std::array<EmotionLabel, kNumEmotionLabels> kAllEmotions = {
    EmotionLabel::kJoy,      EmotionLabel::kSadness,  EmotionLabel::kTrust,
    EmotionLabel::kDisgust,  EmotionLabel::kFear,     EmotionLabel::kAnger,
    EmotionLabel::kSurprise, EmotionLabel::kAnticipation, EmotionLabel::kNeutral,
};

std::string_view emotion_name(EmotionLabel label);
std::optional<EmotionLabel> emotion_from_name(std::string_view name);

// The four opposing pairs: joy/sadness, trust/disgust, fear/anger,
// surprise/anticipation. Neutral maps to itself.
EmotionLabel emotion_opposite(EmotionLabel label);

class EmotionLexicon {
public:
    // Format: word<TAB>emotion per line; '#' at line start (after optional
    // whitespace) comments the line out; a word may appear on several lines.
    // Throws on malformed lines or unknown emotion names.
    static EmotionLexicon parse(std::istream& in, std::string name = "custom");

    // Built-in default (identical to data/emotion_lexicon.tsv).
    static const EmotionLexicon& builtin();

    const std::string& name() const { return name_; }
    std::size_t size() const { return entries_.size(); }

    // Bitmask over the eight basic emotions (bit = enum value), 0 if absent.
    std::uint8_t emotions_of(const std::string& word) const {
        auto it = entries_.find(word);
        return it == entries_.end() ? 0 : it->second;
    }

private:
    std::string name_;
    std::unordered_map<std::string, std::uint8_t> entries_;
};

struct ClassifierConfig {
    // Tie-break priority among equally counted emotions.
    std::array<EmotionLabel, kNumBasicEmotions> tie_break = {
        EmotionLabel::kFear,  EmotionLabel::kJoy,     EmotionLabel::kTrust,
        EmotionLabel::kSurprise, EmotionLabel::kAnger, EmotionLabel::kSadness,
        EmotionLabel::kAnticipation, EmotionLabel::kDisgust,
    };
};

// Count lexicon hits per emotion over the tokens (every association of a
// matched word counts once per occurrence) and return the argmax; ties go to
// the earlier entry in the tie-break order, and a hitless document is
// Neutral.
EmotionLabel classify(const std::vector<std::string>& tokens,
                      const EmotionLexicon& lexicon,
                      const ClassifierConfig& cfg = {});

struct EmotionSeriesPoint {
    std::int32_t date = 0;  // days since epoch
    std::int64_t tweet_count = 0;
    std::array<double, kNumEmotionLabels> proportions{};  // indexed by label
};

// Per-day label proportions, ascending by date; days with no tweets are
// absent. Input order does not matter.
std::vector<EmotionSeriesPoint> daily_series(
    const std::vector<std::pair<std::int32_t, EmotionLabel>>& labeled);

struct TopicEmotionTable {
    std::int32_t num_topics = 0;
    // counts[topic][label], totals[topic] = documents whose dominant topic
    // is `topic`; documents without a dominant topic are excluded.
    std::vector<std::array<std::int64_t, kNumEmotionLabels>> counts;
    std::vector<std::int64_t> totals;

    double proportion(std::int32_t topic, EmotionLabel label) const {
        std::int64_t n = totals[static_cast<std::size_t>(topic)];
        if (n == 0) return 0.0;
        return static_cast<double>(
                   counts[static_cast<std::size_t>(topic)][static_cast<std::size_t>(label)]) /
               static_cast<double>(n);
    }
};

// Cross-tabulate per-document labels against dominant topics. `dominant`
// entries of -1 (documents with no tokens) are skipped.
TopicEmotionTable topic_emotion_table(const std::vector<EmotionLabel>& labels,
                                      const std::vector<std::int32_t>& dominant,
                                      std::int32_t num_topics);

}  // namespace epitopic
