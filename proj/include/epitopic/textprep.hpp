#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

// Text preparation: tweet normalization, stopword-aware tokenization,
// unigram+bigram vocabulary construction and document vectorization.

namespace epitopic {

struct NormalizeConfig {
    bool strip_numbers = false;  // default keeps digit runs ("covid 19", "20 seconds")
};

// Canonical tweet text cleanup. In order: strip hashtags, @-mentions and
// URLs; drop non-ASCII bytes; delete apostrophes ("don't" -> "dont"); map
// remaining punctuation/specials to spaces ("self-isolate" -> "self isolate");
// optionally drop digits; lowercase; collapse runs of 3+ identical letters
// to one ("sooooo" -> "so"); collapse whitespace and trim.
// Idempotent: normalize(normalize(x)) == normalize(x).
std::string normalize(std::string_view text, const NormalizeConfig& cfg = {});

// Split normalized text on spaces, drop stopwords and tokens shorter than
// two characters unless they are purely numeric ("1" and "19" survive).
std::vector<std::string> tokenize(const std::string& normalized,
                                  const std::unordered_set<std::string>& stopwords);

// One stopword per line; '#' starts a comment; blank lines ignored.
std::unordered_set<std::string> load_stopwords(std::istream& in);

// Built-in default list (identical to data/stopwords.txt).
const std::unordered_set<std::string>& default_stopwords();
const std::vector<std::string>& default_stopwords_ordered();

struct Vocabulary {
    // Terms ordered by descending collection frequency, ties lexicographic.
    // Bigram terms are stored as "first second".
    std::vector<std::string> terms;
    std::vector<std::uint8_t> is_bigram;
    std::vector<std::int64_t> collection_frequency;
    std::vector<std::int64_t> doc_frequency;
    std::unordered_map<std::string, std::int32_t> index;

    std::int32_t size() const { return static_cast<std::int32_t>(terms.size()); }
    std::optional<std::int32_t> find(const std::string& term) const {
        auto it = index.find(term);
        if (it == index.end()) return std::nullopt;
        return it->second;
    }
};

struct VocabularyConfig {
    std::int64_t min_unigram_count = 5;   // minimum collection frequency
    std::int64_t min_bigram_count = 10;
    bool bigrams = true;                  // include adjacent-pair bigram terms
};

// Count unigrams and (optionally) adjacent-pair bigrams over tokenized
// documents — pairs are formed after stopword removal — and keep terms at or
// above the frequency floors.
Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& docs,
                            const VocabularyConfig& cfg = {});

struct DocTermMatrix {
    std::int32_t num_terms = 0;
    std::vector<std::string> doc_ids;
    std::vector<std::int32_t> doc_dates;  // days since epoch
    // Sparse rows: (term index, count), sorted by term index.
    std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> rows;

    std::size_t num_docs() const { return rows.size(); }
    bool empty_row(std::size_t d) const { return rows[d].empty(); }
    std::int64_t row_token_count(std::size_t d) const {
        std::int64_t n = 0;
        for (auto [t, c] : rows[d]) n += c;
        return n;
    }
};

// Count in-vocabulary unigram and bigram occurrences per document. Bigram
// occurrences are counted over adjacent token pairs; the constituent
// unigram occurrences are still counted as themselves.
DocTermMatrix vectorize(const std::vector<std::vector<std::string>>& docs,
                        const Vocabulary& vocab,
                        std::vector<std::string> doc_ids,
                        std::vector<std::int32_t> doc_dates);

// The document as a sequence of in-vocabulary surface terms, in reading
// order, with in-vocabulary bigrams interleaved at the position of their
// first word. This is the token stream the coherence windows slide over.
std::vector<std::string> coherence_tokens(const std::vector<std::string>& doc,
                                          const Vocabulary& vocab);

}  // namespace epitopic
