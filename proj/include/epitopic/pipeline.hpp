#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "epitopic/corpus.hpp"
#include "epitopic/lda.hpp"
#include "epitopic/modelselect.hpp"
#include "epitopic/textprep.hpp"

// Pipeline orchestration: one flat configuration drives a chain of cached
// stages (ingest -> prep -> model -> topics/map/emotions -> ztest), each of
// which persists its artifacts under the output directory and in a
// content-hash-keyed cache so unchanged stages are skipped on re-runs.

namespace epitopic {

inline constexpr std::string_view kToolVersion = "0.1.0";

// Flat run configuration. Every field maps 1:1 to a JSON key of the same
// name and to a CLI flag; precedence is CLI > config file > default.
struct PipelineConfig {
    // Input / output.
    std::vector<std::string> input;  // JSONL paths, shell-style globs allowed
    std::string output_dir = "out";

    // Corpus filter. `hashtags` defaults to the tracked allowlist; an empty
    // list disables hashtag filtering. Dates are inclusive "YYYY-MM-DD"
    // bounds; an empty string leaves that side open.
    std::vector<std::string> hashtags = default_hashtag_allowlist();
    std::string date_start;
    std::string date_end;
    bool english_only = true;
    double ascii_letter_ratio_min = 0.9;
    bool strict = false;  // abort on malformed input lines

    // Preprocessing.
    std::string stopword_file;  // empty selects the built-in list
    bool strip_numbers = false;
    bool bigrams = true;
    std::int64_t min_unigram_count = 5;
    std::int64_t min_bigram_count = 10;

    // Model. Exactly one of `k` (> 0) or `k_sweep` (non-empty) must be set.
    std::int32_t k = 0;
    std::vector<std::int32_t> k_sweep;
    double alpha = 0.0;  // <= 0 selects the 50/K default
    double beta = 0.01;
    std::int32_t iterations = 1000;
    std::int32_t burn_in = 500;
    std::int32_t sample_every = 10;
    std::uint64_t seed = 42;

    // Coherence.
    std::int32_t coherence_top_t = 20;
    std::int32_t coherence_window = 110;

    // Reporting.
    std::int32_t top_terms = 10;  // rows per topic in topics.csv
    std::string lexicon_file;     // empty selects the built-in lexicon
    double ztest_alpha = 0.001;
    std::string themes_file;  // empty: no theme report during `run`
    std::int32_t threads = 1;

    CorpusFilter corpus_filter() const;
    NormalizeConfig normalize_config() const;
    VocabularyConfig vocabulary_config() const;
    LdaConfig lda_config() const;  // num_topics filled by the model stage
    CoherenceConfig coherence_config() const;
    void validate() const;
};

PipelineConfig config_from_json(const std::string& text);
PipelineConfig config_from_file(const std::string& path);
// Canonical snapshot: every key explicit, keys sorted, values normalized.
std::string config_to_json(const PipelineConfig& config);

struct StageInfo {
    std::string name;
    bool cache_hit = false;
    std::int64_t millis = 0;
};

struct RunManifest {
    std::string tool_version;
    std::string created_at;  // wall clock; the only non-deterministic field
    PipelineConfig config;
    CorpusStats funnel;
    std::int64_t invalid_lines = 0;  // unparseable JSONL lines skipped
    std::int32_t selected_k = 0;
    std::vector<StageInfo> stages;
    std::map<std::string, std::string> outputs;  // artifact -> fnv1a64 hex
};

// Full pipeline. Writes every stage artifact plus manifest.json (atomically,
// last); failures abort with the stage name and leave a marker under
// <output_dir>/failed/. Completed stages are cached under
// <output_dir>/cache/ and reused when nothing they depend on changed.
RunManifest run(const PipelineConfig& config);

// Stage names in execution order: "ingest", "prep", "model", "topics",
// "map", "emotions", "ztest", "report".
const std::vector<std::string>& stage_names();

// Artifact files a stage writes into the output directory.
const std::vector<std::string>& stage_artifacts(const std::string& stage);

// Execute `target` and its transitive dependencies, sharing run()'s cache.
// Backs the per-stage subcommands. Returns timing/cache info per executed
// stage.
std::vector<StageInfo> run_until(const PipelineConfig& config,
                                 const std::string& target);

// Group each topic's top bigrams (fallback: its top terms, when the top
// list holds no bigrams) under human-assigned theme labels. `topics_csv` is
// the content of topics.csv; `themes_text` holds lines of
// "topic_index<TAB>theme" with '#' comments (topic indices zero-based,
// each at most once; many topics may share one theme). Unlabeled topics are
// grouped under "unlabeled", last. Returns CSV text with columns
// theme,topic,terms; themes appear in order of their smallest topic index.
// Errors when a theme line references a topic absent from `topics_csv`.
std::string render_theme_report(const std::string& topics_csv,
                                const std::string& themes_text);

// Expand shell-style glob patterns into a sorted, de-duplicated file list.
// A pattern without wildcard characters must name an existing file.
std::vector<std::string> expand_input_globs(
    const std::vector<std::string>& patterns);

}  // namespace epitopic
