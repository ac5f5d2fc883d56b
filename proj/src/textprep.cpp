#include "epitopic/textprep.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "epitopic/error.hpp"

namespace epitopic {

namespace {

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_alpha(char c) { return is_lower(c) || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_word_char(char c) { return is_alpha(c) || is_digit(c) || c == '_'; }

bool iequal_prefix(std::string_view s, std::size_t pos, std::string_view prefix) {
    if (pos + prefix.size() > s.size()) return false;
    for (std::size_t k = 0; k < prefix.size(); ++k) {
        char a = s[pos + k];
        if (a >= 'A' && a <= 'Z') a += 'a' - 'A';
        if (a != prefix[k]) return false;
    }
    return true;
}

// URL matches only at a token boundary so "awww.but" is not mangled.
bool url_starts_at(std::string_view s, std::size_t pos) {
    if (pos > 0) {
        char prev = s[pos - 1];
        if (is_word_char(prev)) return false;
    }
    return iequal_prefix(s, pos, "http://") || iequal_prefix(s, pos, "https://") ||
           iequal_prefix(s, pos, "www.");
}

}  // namespace

std::string normalize(std::string_view text, const NormalizeConfig& cfg) {
    // Pass 1: strip patterns and map character classes.
    std::string buf;
    buf.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (static_cast<unsigned char>(c) >= 0x80) {
            ++i;  // drop non-ASCII bytes outright
            continue;
        }
        if (url_starts_at(text, i)) {
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
                ++i;
            buf += ' ';
            continue;
        }
        if (c == '#' || c == '@') {
            // Drop the marker run and the word attached to it ("#StayHome",
            // "@who"). A bare marker degrades to plain punctuation.
            std::size_t j = i + 1;
            while (j < text.size() && text[j] == c) ++j;
            while (j < text.size() && is_word_char(text[j])) ++j;
            buf += ' ';
            i = j;
            continue;
        }
        if (is_alpha(c)) {
            buf += is_lower(c) ? c : static_cast<char>(c + ('a' - 'A'));
        } else if (is_digit(c)) {
            buf += cfg.strip_numbers ? ' ' : c;
        } else if (c == '\'') {
            // Apostrophes vanish without splitting the word: don't -> dont.
        } else {
            buf += ' ';  // punctuation, symbols, whitespace, controls
        }
        ++i;
    }

    // Pass 2: collapse runs of 3+ identical letters to one (sooooo -> so).
    std::string collapsed;
    collapsed.reserve(buf.size());
    for (std::size_t p = 0; p < buf.size();) {
        std::size_t q = p + 1;
        while (q < buf.size() && buf[q] == buf[p]) ++q;
        std::size_t run = q - p;
        if (is_lower(buf[p]) && run >= 3)
            collapsed += buf[p];
        else
            collapsed.append(buf, p, run);
        p = q;
    }

    // Pass 3: collapse whitespace and trim.
    std::string out;
    out.reserve(collapsed.size());
    bool pending_space = false;
    for (char c : collapsed) {
        if (c == ' ') {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out += ' ';
            pending_space = false;
        }
        out += c;
    }
    return out;
}

std::vector<std::string> tokenize(const std::string& normalized,
                                  const std::unordered_set<std::string>& stopwords) {
    std::vector<std::string> tokens;
    std::size_t pos = 0;
    while (pos < normalized.size()) {
        std::size_t end = normalized.find(' ', pos);
        if (end == std::string::npos) end = normalized.size();
        if (end > pos) {
            std::string tok = normalized.substr(pos, end - pos);
            bool numeric = std::all_of(tok.begin(), tok.end(), is_digit);
            if ((tok.size() >= 2 || numeric) && !stopwords.count(tok))
                tokens.push_back(std::move(tok));
        }
        pos = end + 1;
    }
    return tokens;
}

std::unordered_set<std::string> load_stopwords(std::istream& in) {
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        std::size_t b = line.find_last_not_of(" \t\r");
        std::string word = line.substr(a, b - a + 1);
        for (char& c : word)
            if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
        words.insert(std::move(word));
    }
    return words;
}

const std::vector<std::string>& default_stopwords_ordered() {
    static const std::vector<std::string> words = {
        "a", "about", "above", "after", "again", "against", "all", "am", "amp",
        "an", "and", "any", "are", "as", "at", "be", "because", "been",
        "before", "being", "below", "between", "both", "but", "by", "can",
        "could", "did", "do", "does", "doing", "down", "during", "each", "few",
        "for", "from", "further", "had", "has", "have", "having", "he", "her",
        "here", "hers", "herself", "him", "himself", "his", "how", "i", "if",
        "in", "into", "is", "it", "its", "itself", "just", "me", "more",
        "most", "my", "myself", "no", "nor", "not", "now", "of", "off", "on",
        "once", "only", "or", "other", "our", "ours", "ourselves", "out",
        "over", "own", "rt", "same", "she", "should", "so", "some", "such",
        "than", "that", "the", "their", "theirs", "them", "themselves", "then",
        "there", "these", "they", "this", "those", "through", "to", "too",
        "under", "until", "up", "very", "was", "we", "were", "what", "when",
        "where", "which", "while", "who", "whom", "why", "will", "with", "you",
        "your", "yours", "yourself", "yourselves",
    };
    return words;
}

const std::unordered_set<std::string>& default_stopwords() {
    static const std::unordered_set<std::string> words(
        default_stopwords_ordered().begin(), default_stopwords_ordered().end());
    return words;
}

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& docs,
                            const VocabularyConfig& cfg) {
    require(!docs.empty(), "build_vocabulary: no documents");
    require(cfg.min_unigram_count >= 1, "build_vocabulary: min_unigram_count must be >= 1");
    require(cfg.min_bigram_count >= 1, "build_vocabulary: min_bigram_count must be >= 1");

    struct Counts {
        std::int64_t cf = 0;
        std::int64_t df = 0;
        std::int32_t last_doc = -1;
    };
    // std::map keeps term iteration deterministic without a sort pass later.
    std::map<std::string, Counts> uni, bi;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        const auto& toks = docs[d];
        auto bump = [&](std::map<std::string, Counts>& table, const std::string& term) {
            Counts& c = table[term];
            ++c.cf;
            if (c.last_doc != static_cast<std::int32_t>(d)) {
                c.last_doc = static_cast<std::int32_t>(d);
                ++c.df;
            }
        };
        for (const auto& t : toks) bump(uni, t);
        if (cfg.bigrams) {
            for (std::size_t k = 0; k + 1 < toks.size(); ++k)
                bump(bi, toks[k] + ' ' + toks[k + 1]);
        }
    }

    struct Entry {
        std::string term;
        bool bigram;
        std::int64_t cf;
        std::int64_t df;
    };
    std::vector<Entry> kept;
    for (const auto& [term, c] : uni)
        if (c.cf >= cfg.min_unigram_count) kept.push_back({term, false, c.cf, c.df});
    for (const auto& [term, c] : bi)
        if (c.cf >= cfg.min_bigram_count) kept.push_back({term, true, c.cf, c.df});
    require(!kept.empty(), "build_vocabulary: empty vocabulary after thresholding");
    std::sort(kept.begin(), kept.end(), [](const Entry& a, const Entry& b) {
        if (a.cf != b.cf) return a.cf > b.cf;
        return a.term < b.term;
    });

    Vocabulary vocab;
    vocab.terms.reserve(kept.size());
    for (const auto& e : kept) {
        vocab.index.emplace(e.term, static_cast<std::int32_t>(vocab.terms.size()));
        vocab.terms.push_back(e.term);
        vocab.is_bigram.push_back(e.bigram ? 1 : 0);
        vocab.collection_frequency.push_back(e.cf);
        vocab.doc_frequency.push_back(e.df);
    }
    return vocab;
}

DocTermMatrix vectorize(const std::vector<std::vector<std::string>>& docs,
                        const Vocabulary& vocab,
                        std::vector<std::string> doc_ids,
                        std::vector<std::int32_t> doc_dates) {
    require(docs.size() == doc_ids.size() && docs.size() == doc_dates.size(),
            "vectorize: docs, ids and dates must be the same length");
    DocTermMatrix dtm;
    dtm.num_terms = vocab.size();
    dtm.doc_ids = std::move(doc_ids);
    dtm.doc_dates = std::move(doc_dates);
    dtm.rows.resize(docs.size());
    for (std::size_t d = 0; d < docs.size(); ++d) {
        const auto& toks = docs[d];
        std::map<std::int32_t, std::int32_t> counts;
        for (const auto& t : toks)
            if (auto idx = vocab.find(t)) ++counts[*idx];
        for (std::size_t k = 0; k + 1 < toks.size(); ++k)
            if (auto idx = vocab.find(toks[k] + ' ' + toks[k + 1])) ++counts[*idx];
        auto& row = dtm.rows[d];
        row.assign(counts.begin(), counts.end());
    }
    return dtm;
}

std::vector<std::string> coherence_tokens(const std::vector<std::string>& doc,
                                          const Vocabulary& vocab) {
    std::vector<std::string> stream;
    for (std::size_t k = 0; k < doc.size(); ++k) {
        if (vocab.index.count(doc[k])) stream.push_back(doc[k]);
        if (k + 1 < doc.size()) {
            std::string big = doc[k] + ' ' + doc[k + 1];
            if (vocab.index.count(big)) stream.push_back(std::move(big));
        }
    }
    return stream;
}

}  // namespace epitopic
