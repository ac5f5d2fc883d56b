#include "epitopic/pipeline.hpp"

#include <glob.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "epitopic/csv.hpp"
#include "epitopic/emotion.hpp"
#include "epitopic/error.hpp"
#include "epitopic/log.hpp"
#include "epitopic/parallel.hpp"
#include "epitopic/rng.hpp"
#include "epitopic/stats.hpp"
#include "epitopic/timeutil.hpp"
#include "epitopic/topicmap.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace epitopic {

namespace {

using json = nlohmann::json;

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    require(!in.bad() && !ss.bad(), "error reading " + path.string());
    return std::move(ss).str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    require(out.good(), "cannot write " + path.string());
    out << content;
    out.flush();
    require(out.good(), "error writing " + path.string());
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    char buf[16];
    for (int i = 15; i >= 0; --i) {
        buf[i] = digits[v & 0xf];
        v >>= 4;
    }
    return std::string(buf, 16);
}

std::string file_checksum(const fs::path& path) {
    return hex64(fnv1a64(read_file(path)));
}

json parse_json_text(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    require(!j.is_discarded(), what + ": invalid JSON");
    return j;
}

json parse_json_file(const fs::path& path) {
    return parse_json_text(read_file(path), path.string());
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return lines;
}

std::string_view trim_view(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

// Full configuration as a canonical JSON object (keys sorted by nlohmann).
json config_json(const PipelineConfig& c) {
    json j;
    j["alpha"] = c.alpha;
    j["ascii_letter_ratio_min"] = c.ascii_letter_ratio_min;
    j["beta"] = c.beta;
    j["bigrams"] = c.bigrams;
    j["burn_in"] = c.burn_in;
    j["coherence_top_t"] = c.coherence_top_t;
    j["coherence_window"] = c.coherence_window;
    j["date_end"] = c.date_end;
    j["date_start"] = c.date_start;
    j["english_only"] = c.english_only;
    j["hashtags"] = c.hashtags;
    j["input"] = c.input;
    j["iterations"] = c.iterations;
    j["k"] = c.k;
    j["k_sweep"] = c.k_sweep;
    j["lexicon_file"] = c.lexicon_file;
    j["min_bigram_count"] = c.min_bigram_count;
    j["min_unigram_count"] = c.min_unigram_count;
    j["output_dir"] = c.output_dir;
    j["sample_every"] = c.sample_every;
    j["seed"] = c.seed;
    j["stopword_file"] = c.stopword_file;
    j["strict"] = c.strict;
    j["strip_numbers"] = c.strip_numbers;
    j["themes_file"] = c.themes_file;
    j["threads"] = c.threads;
    j["top_terms"] = c.top_terms;
    j["ztest_alpha"] = c.ztest_alpha;
    return j;
}

std::vector<std::string> string_list(const json& value, const std::string& key) {
    if (value.is_string()) return {value.get<std::string>()};
    require(value.is_array(), "config key '" + key + "': expected a string or an array of strings");
    std::vector<std::string> out;
    for (const auto& v : value) {
        require(v.is_string(), "config key '" + key + "': expected a string or an array of strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

std::uint64_t get_u64(const json& value, const std::string& key) {
    require(value.is_number_integer() || value.is_number_unsigned(),
            "config key '" + key + "': expected a non-negative integer");
    if (value.is_number_unsigned()) return value.get<std::uint64_t>();
    std::int64_t v = value.get<std::int64_t>();
    require(v >= 0, "config key '" + key + "': expected a non-negative integer");
    return static_cast<std::uint64_t>(v);
}

struct StageSpec {
    const char* name;
    const char* dep;  // direct dependency, nullptr for the root
    std::vector<std::string> artifacts;
};

const std::vector<StageSpec>& stage_specs() {
    static const std::vector<StageSpec> specs = {
        {"ingest", nullptr, {"records.jsonl", "funnel.json", "hashtag_daily.csv"}},
        {"prep", "ingest", {"dtm.json", "dtm.csv", "tokens.tsv"}},
        {"model", "prep",
         {"lda_config.json", "phi.csv", "theta.csv", "assignments.csv",
          "coherence.csv", "coherence_topics.csv"}},
        {"topics", "model", {"topics.csv"}},
        {"map", "model", {"topic_map.csv", "topic_overlaps.csv"}},
        {"emotions", "model", {"emotion_daily.csv", "topic_emotions.csv"}},
        {"ztest", "emotions", {"ztest_grid.csv"}},
        {"report", "topics", {"themes.csv"}},
    };
    return specs;
}

const StageSpec& spec_of(const std::string& stage) {
    for (const auto& s : stage_specs())
        if (stage == s.name) return s;
    fail("unknown stage '" + stage + "'");
}

// Runs the stage chain against one output directory, holding each stage's
// in-memory products so later stages can consume them whether the earlier
// stage was computed or restored from the cache.
class Executor {
public:
    explicit Executor(const PipelineConfig& cfg)
        : cfg_(cfg), out_(cfg.output_dir), cache_(out_ / "cache") {}

    void prepare_output() {
        fs::create_directories(out_);
        fs::create_directories(cache_);
        fs::remove_all(out_ / "failed");  // stale marker from a prior attempt
    }

    void execute(const std::string& target) {
        if (done_.count(target)) return;
        const StageSpec& s = spec_of(target);
        if (s.dep) execute(s.dep);
        auto t0 = std::chrono::steady_clock::now();
        std::string key;
        bool hit = false;
        try {
            key = stage_key(s);
            fs::path dir = cache_ / s.name / key;
            hit = cache_complete(dir, s);
            if (hit) {
                restore(dir, s);
                load(s.name);
            } else {
                compute(s.name);
                store(dir, s);
            }
        } catch (const std::exception& e) {
            record_failure(s.name, e.what());
        }
        auto millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        info_.push_back({target, hit, millis});
        keys_[target] = key;
        done_.insert(target);
        log_info("stage " + target + (hit ? ": cache hit (" : ": computed (") +
                 std::to_string(millis) + " ms)");
    }

    RunManifest finish_manifest() {
        RunManifest m;
        m.tool_version = std::string(kToolVersion);
        m.created_at = timestamp_to_string(
            std::chrono::duration_cast<std::chrono::seconds>(
                std::chrono::system_clock::now().time_since_epoch())
                .count());
        m.config = cfg_;
        m.funnel = funnel_;
        m.invalid_lines = invalid_lines_;
        m.selected_k = model_.num_topics;
        m.stages = info_;
        try {
            for (const auto& si : info_)
                for (const auto& artifact : spec_of(si.name).artifacts)
                    m.outputs[artifact] = file_checksum(out_ / artifact);
            json j;
            j["config"] = config_json(cfg_);
            j["created_at"] = m.created_at;
            j["funnel"] = {{"invalid_lines", m.invalid_lines},
                           {"removed_by_other_filters", funnel_.removed_by_other_filters},
                           {"removed_duplicates_retweets", funnel_.removed_duplicates_retweets},
                           {"removed_non_english", funnel_.removed_non_english},
                           {"retained", funnel_.retained},
                           {"total_in", funnel_.total_in}};
            j["outputs"] = m.outputs;
            j["selected_k"] = m.selected_k;
            json stages = json::array();
            for (const auto& si : info_)
                stages.push_back({{"cache_hit", si.cache_hit},
                                  {"millis", si.millis},
                                  {"name", si.name}});
            j["stages"] = stages;
            j["tool_version"] = m.tool_version;
            // Atomic: readers never observe a half-written manifest.
            fs::path tmp = out_ / "manifest.json.tmp";
            write_file(tmp, j.dump(2) + "\n");
            fs::rename(tmp, out_ / "manifest.json");
        } catch (const std::exception& e) {
            record_failure("manifest", e.what());
        }
        log_info("wrote " + (out_ / "manifest.json").string());
        return m;
    }

    const std::vector<StageInfo>& info() const { return info_; }

private:
    [[noreturn]] void record_failure(const std::string& stage, const std::string& what) {
        try {
            fs::create_directories(out_ / "failed");
            write_file(out_ / "failed" / (stage + ".txt"),
                       "stage: " + stage + "\nerror: " + what + "\n");
        } catch (...) {
            // Marker writing must not mask the original failure.
        }
        throw Error("stage " + stage + ": " + what);
    }

    std::string stage_key(const StageSpec& s) {
        json j;
        j["stage"] = s.name;
        j["version"] = std::string(kToolVersion);
        if (s.dep) j["dep"] = keys_.at(s.dep);
        std::string name = s.name;
        if (name == "ingest") {
            json inputs = json::array();
            for (const auto& p : expand_input_globs(cfg_.input))
                inputs.push_back(json::array({p, hex64(fnv1a64(read_file(p)))}));
            j["inputs"] = inputs;
            CorpusFilter f = cfg_.corpus_filter();
            std::vector<std::string> tags(f.hashtag_allowlist.begin(),
                                          f.hashtag_allowlist.end());
            std::sort(tags.begin(), tags.end());
            j["hashtags"] = tags;
            j["date_start"] = cfg_.date_start;
            j["date_end"] = cfg_.date_end;
            j["english_only"] = cfg_.english_only;
            j["ascii_letter_ratio_min"] = cfg_.ascii_letter_ratio_min;
            j["strict"] = cfg_.strict;
        } else if (name == "prep") {
            j["stopwords"] = cfg_.stopword_file.empty()
                                 ? std::string("builtin")
                                 : hex64(fnv1a64(read_file(cfg_.stopword_file)));
            j["strip_numbers"] = cfg_.strip_numbers;
            j["bigrams"] = cfg_.bigrams;
            j["min_unigram_count"] = cfg_.min_unigram_count;
            j["min_bigram_count"] = cfg_.min_bigram_count;
        } else if (name == "model") {
            j["k"] = cfg_.k;
            j["k_sweep"] = cfg_.k_sweep;
            j["alpha"] = cfg_.alpha;
            j["beta"] = cfg_.beta;
            j["iterations"] = cfg_.iterations;
            j["burn_in"] = cfg_.burn_in;
            j["sample_every"] = cfg_.sample_every;
            j["seed"] = cfg_.seed;
            j["coherence_top_t"] = cfg_.coherence_top_t;
            j["coherence_window"] = cfg_.coherence_window;
        } else if (name == "topics") {
            j["top_terms"] = cfg_.top_terms;
        } else if (name == "emotions") {
            j["lexicon"] = cfg_.lexicon_file.empty()
                               ? std::string("builtin")
                               : hex64(fnv1a64(read_file(cfg_.lexicon_file)));
        } else if (name == "ztest") {
            j["ztest_alpha"] = cfg_.ztest_alpha;
        } else if (name == "report") {
            j["themes"] = cfg_.themes_file.empty()
                              ? std::string()
                              : hex64(fnv1a64(read_file(cfg_.themes_file)));
        }
        // "map" consumes nothing beyond its dependency.
        return hex64(fnv1a64(j.dump()));
    }

    bool cache_complete(const fs::path& dir, const StageSpec& s) const {
        if (!fs::is_directory(dir)) return false;
        for (const auto& artifact : s.artifacts)
            if (!fs::is_regular_file(dir / artifact)) return false;
        return true;
    }

    void restore(const fs::path& dir, const StageSpec& s) const {
        for (const auto& artifact : s.artifacts)
            fs::copy_file(dir / artifact, out_ / artifact,
                          fs::copy_options::overwrite_existing);
    }

    void store(const fs::path& dir, const StageSpec& s) const {
        fs::create_directories(dir.parent_path());
        fs::path tmp = dir.parent_path() /
                       ("tmp." + std::to_string(::getpid()) + "." + dir.filename().string());
        fs::remove_all(tmp);
        fs::create_directories(tmp);
        for (const auto& artifact : s.artifacts)
            fs::copy_file(out_ / artifact, tmp / artifact,
                          fs::copy_options::overwrite_existing);
        std::error_code ec;
        fs::rename(tmp, dir, ec);
        // A concurrent writer may have landed the same key first; its copy
        // is byte-identical, so losing the race is fine.
        if (ec) fs::remove_all(tmp);
    }

    void compute(const std::string& stage) {
        if (stage == "ingest") compute_ingest();
        else if (stage == "prep") compute_prep();
        else if (stage == "model") compute_model();
        else if (stage == "topics") compute_topics();
        else if (stage == "map") compute_map();
        else if (stage == "emotions") compute_emotions();
        else if (stage == "ztest") compute_ztest();
        else if (stage == "report") compute_report();
        else fail("unknown stage '" + stage + "'");
    }

    void load(const std::string& stage) {
        if (stage == "ingest") load_ingest();
        else if (stage == "prep") load_prep();
        else if (stage == "model") load_model();
        else if (stage == "emotions") load_emotions();
        // topics, map, ztest and report have no downstream consumers in
        // memory; their restored files are the whole product.
    }

    // ---- ingest ----------------------------------------------------------

    void compute_ingest() {
        auto files = expand_input_globs(cfg_.input);
        std::string patterns;
        for (const auto& p : cfg_.input) {
            if (!patterns.empty()) patterns += ", ";
            patterns += p;
        }
        require(!files.empty(),
                "no input records: nothing matches input patterns (" + patterns + ")");
        std::vector<TweetRecord> raw;
        invalid_lines_ = 0;
        for (const auto& path : files) {
            std::ifstream in(path, std::ios::binary);
            require(in.good(), "cannot open " + path);
            JsonlReadResult result;
            try {
                result = read_jsonl(in, cfg_.strict);
            } catch (const Error& e) {
                fail(path + ": " + e.what());
            }
            for (const auto& skip : result.skipped)
                log_warn(path + ":" + std::to_string(skip.line_number) +
                         ": skipped: " + skip.reason);
            invalid_lines_ += static_cast<std::int64_t>(result.skipped.size());
            std::move(result.records.begin(), result.records.end(),
                      std::back_inserter(raw));
        }
        require(!raw.empty(), "no input records: the input files hold no parseable records");

        CorpusFilter filter = cfg_.corpus_filter();
        filter.validate();
        auto kept = filter_records(raw, filter);
        auto dedup = deduplicate(kept);
        records_ = std::move(dedup.records);
        funnel_ = corpus_stats(raw, records_, filter);
        log_info("ingest: " + std::to_string(funnel_.retained) + " of " +
                 std::to_string(funnel_.total_in) + " records retained");

        std::string text;
        for (const auto& r : records_) {
            json j;
            j["created_at"] = timestamp_to_string(r.created_at);
            j["favorite_count"] = r.favorite_count;
            j["followers_count"] = r.followers_count;
            j["friends_count"] = r.friends_count;
            j["hashtags"] = r.hashtags;
            j["id"] = r.id;
            if (r.is_retweet) j["is_retweet"] = true;
            j["retweet_count"] = r.retweet_count;
            j["text"] = r.text;
            if (!r.user_description.empty()) j["user_description"] = r.user_description;
            if (!r.user_location.empty()) j["user_location"] = r.user_location;
            text += j.dump();
            text += '\n';
        }
        write_file(out_ / "records.jsonl", text);

        json funnel;
        funnel["invalid_lines"] = invalid_lines_;
        funnel["removed_by_other_filters"] = funnel_.removed_by_other_filters;
        funnel["removed_duplicates_retweets"] = funnel_.removed_duplicates_retweets;
        funnel["removed_non_english"] = funnel_.removed_non_english;
        funnel["retained"] = funnel_.retained;
        funnel["total_in"] = funnel_.total_in;
        write_file(out_ / "funnel.json", funnel.dump(2) + "\n");

        std::string daily = csv_row({"hashtag", "date", "count"});
        for (const auto& [key, count] : funnel_.per_hashtag_daily)
            daily += csv_row({key.first, date_to_string(key.second), std::to_string(count)});
        write_file(out_ / "hashtag_daily.csv", daily);
    }

    void load_ingest() {
        std::ifstream in(out_ / "records.jsonl", std::ios::binary);
        require(in.good(), "cannot open " + (out_ / "records.jsonl").string());
        auto result = read_jsonl(in, /*strict=*/true);
        records_ = std::move(result.records);
        json j = parse_json_file(out_ / "funnel.json");
        invalid_lines_ = j.at("invalid_lines").get<std::int64_t>();
        funnel_ = CorpusStats{};
        funnel_.total_in = j.at("total_in").get<std::int64_t>();
        funnel_.removed_by_other_filters = j.at("removed_by_other_filters").get<std::int64_t>();
        funnel_.removed_non_english = j.at("removed_non_english").get<std::int64_t>();
        funnel_.removed_duplicates_retweets =
            j.at("removed_duplicates_retweets").get<std::int64_t>();
        funnel_.retained = j.at("retained").get<std::int64_t>();
        // per_hashtag_daily lives in hashtag_daily.csv; no later stage
        // consumes it in memory.
    }

    // ---- prep ------------------------------------------------------------

    void compute_prep() {
        std::unordered_set<std::string> stopwords;
        if (cfg_.stopword_file.empty()) {
            stopwords = default_stopwords();
        } else {
            std::ifstream in(cfg_.stopword_file, std::ios::binary);
            require(in.good(), "cannot open stopword file " + cfg_.stopword_file);
            stopwords = load_stopwords(in);
        }
        NormalizeConfig ncfg = cfg_.normalize_config();
        tokens_.assign(records_.size(), {});
        parallel_for(records_.size(), cfg_.threads, [&](std::size_t i) {
            tokens_[i] = tokenize(normalize(records_[i].text, ncfg), stopwords);
        });
        vocab_ = build_vocabulary(tokens_, cfg_.vocabulary_config());
        std::vector<std::string> ids;
        std::vector<std::int32_t> dates;
        ids.reserve(records_.size());
        dates.reserve(records_.size());
        for (const auto& r : records_) {
            ids.push_back(r.id);
            dates.push_back(r.date());
        }
        dtm_ = vectorize(tokens_, vocab_, std::move(ids), std::move(dates));
        log_info("prep: " + std::to_string(vocab_.size()) + " vocabulary terms over " +
                 std::to_string(dtm_.num_docs()) + " documents");

        json header;
        header["collection_frequency"] = vocab_.collection_frequency;
        std::vector<std::string> date_strings;
        date_strings.reserve(dtm_.doc_dates.size());
        for (auto d : dtm_.doc_dates) date_strings.push_back(date_to_string(d));
        header["doc_dates"] = date_strings;
        header["doc_frequency"] = vocab_.doc_frequency;
        header["doc_ids"] = dtm_.doc_ids;
        header["is_bigram"] = std::vector<int>(vocab_.is_bigram.begin(), vocab_.is_bigram.end());
        header["terms"] = vocab_.terms;
        write_file(out_ / "dtm.json", header.dump() + "\n");

        std::string triplets = csv_row({"doc_index", "term_index", "count"});
        for (std::size_t d = 0; d < dtm_.num_docs(); ++d)
            for (auto [term, count] : dtm_.rows[d])
                triplets += csv_row({std::to_string(d), std::to_string(term),
                                     std::to_string(count)});
        write_file(out_ / "dtm.csv", triplets);

        std::string streams;
        for (std::size_t d = 0; d < dtm_.num_docs(); ++d) {
            const std::string& id = dtm_.doc_ids[d];
            require(id.find_first_of("\t\n\r") == std::string::npos,
                    "tweet id contains control characters: '" + id + "'");
            streams += id;
            for (const auto& tok : tokens_[d]) {
                streams += '\t';
                streams += tok;
            }
            streams += '\n';
        }
        write_file(out_ / "tokens.tsv", streams);
    }

    void load_prep() {
        json header = parse_json_file(out_ / "dtm.json");
        vocab_ = Vocabulary{};
        vocab_.terms = header.at("terms").get<std::vector<std::string>>();
        for (int b : header.at("is_bigram").get<std::vector<int>>())
            vocab_.is_bigram.push_back(static_cast<std::uint8_t>(b));
        vocab_.collection_frequency =
            header.at("collection_frequency").get<std::vector<std::int64_t>>();
        vocab_.doc_frequency = header.at("doc_frequency").get<std::vector<std::int64_t>>();
        require(vocab_.is_bigram.size() == vocab_.terms.size() &&
                    vocab_.collection_frequency.size() == vocab_.terms.size() &&
                    vocab_.doc_frequency.size() == vocab_.terms.size(),
                "dtm.json: inconsistent vocabulary arrays");
        for (std::size_t i = 0; i < vocab_.terms.size(); ++i)
            vocab_.index[vocab_.terms[i]] = static_cast<std::int32_t>(i);

        dtm_ = DocTermMatrix{};
        dtm_.num_terms = vocab_.size();
        dtm_.doc_ids = header.at("doc_ids").get<std::vector<std::string>>();
        for (const auto& s : header.at("doc_dates").get<std::vector<std::string>>()) {
            auto d = date_from_string(s);
            require(d.has_value(), "dtm.json: bad date '" + s + "'");
            dtm_.doc_dates.push_back(*d);
        }
        require(dtm_.doc_dates.size() == dtm_.doc_ids.size(),
                "dtm.json: doc_ids and doc_dates differ in length");
        dtm_.rows.assign(dtm_.doc_ids.size(), {});

        const std::string triplet_text = read_file(out_ / "dtm.csv");
        auto triplets = split_lines(triplet_text);
        require(!triplets.empty(), "dtm.csv: missing header");
        for (std::size_t i = 1; i < triplets.size(); ++i) {
            auto fields = csv_split(triplets[i]);
            require(fields.size() == 3, "dtm.csv: malformed row " + std::to_string(i + 1));
            auto d = parse_int(fields[0]);
            auto t = parse_int(fields[1]);
            auto c = parse_int(fields[2]);
            require(d >= 0 && static_cast<std::size_t>(d) < dtm_.num_docs() && t >= 0 &&
                        t < dtm_.num_terms && c > 0,
                    "dtm.csv: out-of-range row " + std::to_string(i + 1));
            dtm_.rows[static_cast<std::size_t>(d)].emplace_back(
                static_cast<std::int32_t>(t), static_cast<std::int32_t>(c));
        }

        const std::string token_text = read_file(out_ / "tokens.tsv");
        auto lines = split_lines(token_text);
        require(lines.size() == dtm_.num_docs(), "tokens.tsv: wrong number of lines");
        tokens_.assign(dtm_.num_docs(), {});
        for (std::size_t d = 0; d < lines.size(); ++d) {
            std::string_view line = lines[d];
            std::size_t pos = line.find('\t');
            std::string_view id = line.substr(0, pos == std::string_view::npos ? line.size() : pos);
            require(id == dtm_.doc_ids[d], "tokens.tsv: out of sync with dtm.json at line " +
                                               std::to_string(d + 1));
            while (pos != std::string_view::npos) {
                std::size_t next = line.find('\t', pos + 1);
                std::string_view tok =
                    line.substr(pos + 1, (next == std::string_view::npos ? line.size() : next) -
                                             pos - 1);
                tokens_[d].emplace_back(tok);
                pos = next;
            }
        }
    }

    // ---- model -----------------------------------------------------------

    std::vector<std::vector<std::string>> coherence_streams() const {
        std::vector<std::vector<std::string>> streams(tokens_.size());
        parallel_for(tokens_.size(), cfg_.threads, [&](std::size_t i) {
            streams[i] = coherence_tokens(tokens_[i], vocab_);
        });
        return streams;
    }

    void compute_model() {
        LdaConfig base = cfg_.lda_config();
        CoherenceConfig ccfg = cfg_.coherence_config();
        auto streams = coherence_streams();
        if (!cfg_.k_sweep.empty()) {
            SweepResult result =
                sweep(dtm_, streams, vocab_, cfg_.k_sweep, base, ccfg, cfg_.threads);
            model_ = std::move(result.model);
            sweep_scores_ = result.report.scores;
            topic_scores_ = result.report.selected_per_topic;
            model_seed_ = result.config.seed;
            selected_by_sweep_ = true;
            mean_coherence_ = 0.0;
            for (const auto& [k, score] : sweep_scores_)
                if (k == result.report.selected_k) mean_coherence_ = score;
        } else {
            base.num_topics = cfg_.k;
            model_ = fit(dtm_, base);
            std::unordered_set<std::string> interest;
            for (std::int32_t t = 0; t < model_.num_topics; ++t)
                for (const auto& [term, p] : top_terms(model_, vocab_, t, ccfg.top_t))
                    interest.insert(term);
            auto probs = window_counts(streams, ccfg.window, &interest, cfg_.threads);
            mean_coherence_ = model_coherence(model_, vocab_, probs, ccfg, &topic_scores_);
            sweep_scores_ = {{cfg_.k, mean_coherence_}};
            model_seed_ = base.seed;
            selected_by_sweep_ = false;
        }
        log_likelihood_ = log_likelihood(model_, dtm_);
        log_info("model: K=" + std::to_string(model_.num_topics) +
                 " coherence=" + fmt_double(mean_coherence_) +
                 " log_likelihood=" + fmt_double(log_likelihood_));

        json j;
        j["alpha"] = model_.alpha;
        j["beta"] = model_.beta;
        j["burn_in"] = cfg_.burn_in;
        j["iterations"] = cfg_.iterations;
        j["k"] = model_.num_topics;
        j["log_likelihood"] = log_likelihood_;
        j["mean_coherence"] = mean_coherence_;
        j["model_seed"] = model_seed_;
        j["num_docs"] = dtm_.num_docs();
        j["num_terms"] = model_.num_terms;
        j["sample_every"] = cfg_.sample_every;
        j["seed"] = cfg_.seed;
        j["selected_by_sweep"] = selected_by_sweep_;
        write_file(out_ / "lda_config.json", j.dump(2) + "\n");

        std::string phi = csv_row({"topic", "term_index", "probability"});
        for (std::int32_t k = 0; k < model_.num_topics; ++k)
            for (std::int32_t v = 0; v < model_.num_terms; ++v)
                phi += csv_row({std::to_string(k), std::to_string(v),
                                fmt_double(model_.phi[k][v])});
        write_file(out_ / "phi.csv", phi);

        std::string theta = csv_row({"doc_index", "topic", "probability"});
        for (std::size_t d = 0; d < model_.num_docs(); ++d)
            for (std::int32_t k = 0; k < model_.num_topics; ++k)
                theta += csv_row({std::to_string(d), std::to_string(k),
                                  fmt_double(model_.theta[d][k])});
        write_file(out_ / "theta.csv", theta);

        auto dominant = dominant_topics(model_, dtm_);
        std::string assignments = csv_row({"doc_id", "topic"});
        for (std::size_t d = 0; d < dtm_.num_docs(); ++d)
            if (dominant.per_doc[d] >= 0)
                assignments +=
                    csv_row({dtm_.doc_ids[d], std::to_string(dominant.per_doc[d])});
        write_file(out_ / "assignments.csv", assignments);

        std::string coherence = csv_row({"k", "coherence"});
        for (const auto& [k, score] : sweep_scores_)
            coherence += csv_row({std::to_string(k), fmt_double(score)});
        write_file(out_ / "coherence.csv", coherence);

        std::string per_topic = csv_row({"topic", "score"});
        for (std::size_t t = 0; t < topic_scores_.size(); ++t)
            per_topic += csv_row({std::to_string(t), fmt_double(topic_scores_[t])});
        write_file(out_ / "coherence_topics.csv", per_topic);
    }

    void load_model() {
        json j = parse_json_file(out_ / "lda_config.json");
        model_ = LdaModel{};
        model_.num_topics = j.at("k").get<std::int32_t>();
        model_.num_terms = j.at("num_terms").get<std::int32_t>();
        model_.alpha = j.at("alpha").get<double>();
        model_.beta = j.at("beta").get<double>();
        model_.seed = j.at("model_seed").get<std::uint64_t>();
        model_seed_ = model_.seed;
        log_likelihood_ = j.at("log_likelihood").get<double>();
        mean_coherence_ = j.at("mean_coherence").get<double>();
        selected_by_sweep_ = j.at("selected_by_sweep").get<bool>();
        auto num_docs = j.at("num_docs").get<std::size_t>();
        require(num_docs == dtm_.num_docs() && model_.num_terms == dtm_.num_terms,
                "lda_config.json: model does not match the document-term matrix");

        model_.phi.assign(static_cast<std::size_t>(model_.num_topics),
                          std::vector<double>(static_cast<std::size_t>(model_.num_terms), 0.0));
        const std::string phi_text = read_file(out_ / "phi.csv");
        auto phi_lines = split_lines(phi_text);
        require(!phi_lines.empty(), "phi.csv: missing header");
        for (std::size_t i = 1; i < phi_lines.size(); ++i) {
            auto fields = csv_split(phi_lines[i]);
            require(fields.size() == 3, "phi.csv: malformed row " + std::to_string(i + 1));
            auto k = parse_int(fields[0]);
            auto v = parse_int(fields[1]);
            require(k >= 0 && k < model_.num_topics && v >= 0 && v < model_.num_terms,
                    "phi.csv: out-of-range row " + std::to_string(i + 1));
            model_.phi[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)] =
                parse_double(fields[2]);
        }

        model_.theta.assign(num_docs,
                            std::vector<double>(static_cast<std::size_t>(model_.num_topics), 0.0));
        const std::string theta_text = read_file(out_ / "theta.csv");
        auto theta_lines = split_lines(theta_text);
        require(!theta_lines.empty(), "theta.csv: missing header");
        for (std::size_t i = 1; i < theta_lines.size(); ++i) {
            auto fields = csv_split(theta_lines[i]);
            require(fields.size() == 3, "theta.csv: malformed row " + std::to_string(i + 1));
            auto d = parse_int(fields[0]);
            auto k = parse_int(fields[1]);
            require(d >= 0 && static_cast<std::size_t>(d) < num_docs && k >= 0 &&
                        k < model_.num_topics,
                    "theta.csv: out-of-range row " + std::to_string(i + 1));
            model_.theta[static_cast<std::size_t>(d)][static_cast<std::size_t>(k)] =
                parse_double(fields[2]);
        }
        // Count tables stay empty: reloaded models carry distributions only,
        // which is all that later stages consume.
    }

    // ---- topics ----------------------------------------------------------

    void compute_topics() {
        std::string text = csv_row({"topic", "rank", "term", "probability"});
        for (std::int32_t k = 0; k < model_.num_topics; ++k) {
            std::int32_t rank = 1;
            for (const auto& [term, p] : top_terms(model_, vocab_, k, cfg_.top_terms))
                text += csv_row({std::to_string(k), std::to_string(rank++), term,
                                 fmt_double(p)});
        }
        write_file(out_ / "topics.csv", text);
    }

    // ---- map --------------------------------------------------------------

    void compute_map() {
        std::vector<std::int64_t> doc_tokens(dtm_.num_docs());
        for (std::size_t d = 0; d < dtm_.num_docs(); ++d)
            doc_tokens[d] = dtm_.row_token_count(d);
        TopicMap map = build_map(model_.phi, model_.theta, doc_tokens);
        log_info("map: stress=" + fmt_double(map.stress) + " overlaps=" +
                 std::to_string(map.overlaps.size()));

        std::string text = csv_row({"topic", "x", "y", "prevalence", "radius"});
        for (std::size_t k = 0; k < map.coords.size(); ++k)
            text += csv_row({std::to_string(k), fmt_double(map.coords[k][0]),
                             fmt_double(map.coords[k][1]), fmt_double(map.prevalence[k]),
                             fmt_double(map.radii[k])});
        write_file(out_ / "topic_map.csv", text);

        std::string overlaps = csv_row({"topic_a", "topic_b"});
        for (const auto& [a, b] : map.overlaps)
            overlaps += csv_row({std::to_string(a), std::to_string(b)});
        write_file(out_ / "topic_overlaps.csv", overlaps);
    }

    // ---- emotions ----------------------------------------------------------

    void compute_emotions() {
        EmotionLexicon lexicon;
        if (cfg_.lexicon_file.empty()) {
            lexicon = EmotionLexicon::builtin();
        } else {
            std::ifstream in(cfg_.lexicon_file, std::ios::binary);
            require(in.good(), "cannot open lexicon file " + cfg_.lexicon_file);
            lexicon = EmotionLexicon::parse(in, cfg_.lexicon_file);
        }
        std::vector<EmotionLabel> labels(tokens_.size(), EmotionLabel::kNeutral);
        parallel_for(tokens_.size(), cfg_.threads, [&](std::size_t i) {
            labels[i] = classify(tokens_[i], lexicon);
        });

        std::vector<std::pair<std::int32_t, EmotionLabel>> labeled;
        labeled.reserve(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i)
            labeled.emplace_back(dtm_.doc_dates[i], labels[i]);
        auto series = daily_series(labeled);

        auto dominant = dominant_topics(model_, dtm_);
        table_ = topic_emotion_table(labels, dominant.per_doc, model_.num_topics);

        std::string daily = csv_row({"date", "joy", "sadness", "trust", "disgust", "fear",
                                     "anger", "surprise", "anticipation", "neutral",
                                     "count"});
        for (const auto& point : series) {
            std::vector<std::string> row{date_to_string(point.date)};
            for (auto label : kAllEmotions)
                row.push_back(fmt_double(point.proportions[static_cast<std::size_t>(label)]));
            row.push_back(std::to_string(point.tweet_count));
            daily += csv_row(row);
        }
        write_file(out_ / "emotion_daily.csv", daily);

        std::string by_topic = csv_row({"topic", "emotion", "proportion", "count"});
        for (std::int32_t t = 0; t < table_.num_topics; ++t)
            for (auto label : kAllEmotions)
                by_topic += csv_row(
                    {std::to_string(t), std::string(emotion_name(label)),
                     fmt_double(table_.proportion(t, label)),
                     std::to_string(
                         table_.counts[static_cast<std::size_t>(t)][static_cast<std::size_t>(label)])});
        write_file(out_ / "topic_emotions.csv", by_topic);
    }

    void load_emotions() {
        table_ = TopicEmotionTable{};
        table_.num_topics = model_.num_topics;
        table_.counts.assign(static_cast<std::size_t>(model_.num_topics), {});
        table_.totals.assign(static_cast<std::size_t>(model_.num_topics), 0);
        const std::string table_text = read_file(out_ / "topic_emotions.csv");
        auto lines = split_lines(table_text);
        require(!lines.empty(), "topic_emotions.csv: missing header");
        for (std::size_t i = 1; i < lines.size(); ++i) {
            auto fields = csv_split(lines[i]);
            require(fields.size() == 4,
                    "topic_emotions.csv: malformed row " + std::to_string(i + 1));
            auto t = parse_int(fields[0]);
            auto label = emotion_from_name(fields[1]);
            require(t >= 0 && t < table_.num_topics && label.has_value(),
                    "topic_emotions.csv: out-of-range row " + std::to_string(i + 1));
            auto count = parse_int(fields[3]);
            table_.counts[static_cast<std::size_t>(t)][static_cast<std::size_t>(*label)] = count;
        }
        for (std::int32_t t = 0; t < table_.num_topics; ++t) {
            std::int64_t total = 0;
            for (auto c : table_.counts[static_cast<std::size_t>(t)]) total += c;
            table_.totals[static_cast<std::size_t>(t)] = total;
        }
    }

    // ---- ztest -------------------------------------------------------------

    void compute_ztest() {
        auto cells = significance_grid(table_, cfg_.ztest_alpha);
        std::string text = csv_row({"topic", "emotion", "proportion", "z", "p", "significant"});
        for (const auto& cell : cells)
            text += csv_row({std::to_string(cell.topic),
                             std::string(emotion_name(cell.emotion)),
                             fmt_double(cell.proportion), fmt_double(cell.test.z),
                             fmt_double(cell.test.p_value),
                             cell.test.significant ? "true" : "false"});
        write_file(out_ / "ztest_grid.csv", text);
    }

    // ---- report ------------------------------------------------------------

    void compute_report() {
        std::string topics_csv = read_file(out_ / "topics.csv");
        std::string themes_text =
            cfg_.themes_file.empty() ? std::string() : read_file(cfg_.themes_file);
        write_file(out_ / "themes.csv", render_theme_report(topics_csv, themes_text));
    }

    const PipelineConfig& cfg_;
    fs::path out_;
    fs::path cache_;

    std::set<std::string> done_;
    std::map<std::string, std::string> keys_;
    std::vector<StageInfo> info_;

    // Stage products.
    std::vector<TweetRecord> records_;
    CorpusStats funnel_;
    std::int64_t invalid_lines_ = 0;
    std::vector<std::vector<std::string>> tokens_;
    Vocabulary vocab_;
    DocTermMatrix dtm_;
    LdaModel model_;
    bool selected_by_sweep_ = false;
    std::uint64_t model_seed_ = 0;
    double mean_coherence_ = 0.0;
    double log_likelihood_ = 0.0;
    std::vector<std::pair<std::int32_t, double>> sweep_scores_;
    std::vector<double> topic_scores_;
    TopicEmotionTable table_;
};

}  // namespace

CorpusFilter PipelineConfig::corpus_filter() const {
    CorpusFilter f;
    for (const auto& tag : hashtags) {
        std::string t = tag;
        if (!t.empty() && t[0] == '#') t.erase(0, 1);
        for (char& c : t)
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        if (!t.empty()) f.hashtag_allowlist.insert(t);
    }
    if (!date_start.empty()) {
        auto d = date_from_string(date_start);
        require(d.has_value(), "config: bad date_start '" + date_start + "'");
        f.date_start = *d;
    }
    if (!date_end.empty()) {
        auto d = date_from_string(date_end);
        require(d.has_value(), "config: bad date_end '" + date_end + "'");
        f.date_end = *d;
    }
    f.english_only = english_only;
    f.ascii_letter_ratio_min = ascii_letter_ratio_min;
    return f;
}

NormalizeConfig PipelineConfig::normalize_config() const {
    NormalizeConfig n;
    n.strip_numbers = strip_numbers;
    return n;
}

VocabularyConfig PipelineConfig::vocabulary_config() const {
    VocabularyConfig v;
    v.min_unigram_count = min_unigram_count;
    v.min_bigram_count = min_bigram_count;
    v.bigrams = bigrams;
    return v;
}

LdaConfig PipelineConfig::lda_config() const {
    LdaConfig l;
    l.num_topics = k > 0 ? k : 1;  // the model stage sets the real value
    l.alpha = alpha;
    l.beta = beta;
    l.iterations = iterations;
    l.burn_in = burn_in;
    l.sample_every = sample_every;
    l.seed = seed;
    return l;
}

CoherenceConfig PipelineConfig::coherence_config() const {
    CoherenceConfig c;
    c.top_t = coherence_top_t;
    c.window = coherence_window;
    return c;
}

void PipelineConfig::validate() const {
    require(!input.empty(), "config: no input files configured");
    require(!output_dir.empty(), "config: output_dir must not be empty");
    require(k >= 0, "config: k must not be negative");
    bool fixed = k > 0;
    bool sweeping = !k_sweep.empty();
    require(fixed != sweeping,
            "config: exactly one of a fixed 'k' and a 'k_sweep' list must be set");
    std::vector<std::int32_t> sorted = k_sweep;
    std::sort(sorted.begin(), sorted.end());
    for (auto kk : sorted) require(kk >= 1, "config: k_sweep entries must be >= 1");
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
            "config: k_sweep entries must be distinct");
    require(iterations >= 1, "config: iterations must be >= 1");
    require(burn_in >= 0 && burn_in < iterations,
            "config: burn_in must lie in [0, iterations)");
    require(sample_every >= 1, "config: sample_every must be >= 1");
    require(beta > 0.0, "config: beta must be positive");
    require(min_unigram_count >= 1, "config: min_unigram_count must be >= 1");
    require(min_bigram_count >= 1, "config: min_bigram_count must be >= 1");
    require(coherence_top_t >= 2, "config: coherence_top_t must be >= 2");
    require(coherence_window >= 2, "config: coherence_window must be >= 2");
    require(top_terms >= 1, "config: top_terms must be >= 1");
    require(threads >= 1, "config: threads must be >= 1");
    require(ascii_letter_ratio_min >= 0.0 && ascii_letter_ratio_min <= 1.0,
            "config: ascii_letter_ratio_min must lie in [0, 1]");
    require(ztest_alpha > 0.0 && ztest_alpha < 1.0,
            "config: ztest_alpha must lie in (0, 1)");
    std::optional<std::int32_t> start, end;
    if (!date_start.empty()) {
        start = date_from_string(date_start);
        require(start.has_value(), "config: bad date_start '" + date_start + "'");
    }
    if (!date_end.empty()) {
        end = date_from_string(date_end);
        require(end.has_value(), "config: bad date_end '" + date_end + "'");
    }
    if (start && end)
        require(*start <= *end, "config: date_start must not exceed date_end");
    auto require_file = [](const char* label, const std::string& path) {
        if (!path.empty())
            require(fs::is_regular_file(path),
                    std::string("config: ") + label + " does not exist: " + path);
    };
    require_file("stopword_file", stopword_file);
    require_file("lexicon_file", lexicon_file);
    require_file("themes_file", themes_file);
}

PipelineConfig config_from_json(const std::string& text) {
    json j = parse_json_text(text, "config");
    require(j.is_object(), "config: top level must be a JSON object");
    PipelineConfig c;
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "input") c.input = string_list(value, key);
            else if (key == "output_dir") c.output_dir = value.get<std::string>();
            else if (key == "hashtags") c.hashtags = string_list(value, key);
            else if (key == "date_start") c.date_start = value.get<std::string>();
            else if (key == "date_end") c.date_end = value.get<std::string>();
            else if (key == "english_only") c.english_only = value.get<bool>();
            else if (key == "ascii_letter_ratio_min")
                c.ascii_letter_ratio_min = value.get<double>();
            else if (key == "strict") c.strict = value.get<bool>();
            else if (key == "stopword_file") c.stopword_file = value.get<std::string>();
            else if (key == "strip_numbers") c.strip_numbers = value.get<bool>();
            else if (key == "bigrams") c.bigrams = value.get<bool>();
            else if (key == "min_unigram_count")
                c.min_unigram_count = value.get<std::int64_t>();
            else if (key == "min_bigram_count")
                c.min_bigram_count = value.get<std::int64_t>();
            else if (key == "k") c.k = value.get<std::int32_t>();
            else if (key == "k_sweep") c.k_sweep = value.get<std::vector<std::int32_t>>();
            else if (key == "alpha") c.alpha = value.get<double>();
            else if (key == "beta") c.beta = value.get<double>();
            else if (key == "iterations") c.iterations = value.get<std::int32_t>();
            else if (key == "burn_in") c.burn_in = value.get<std::int32_t>();
            else if (key == "sample_every") c.sample_every = value.get<std::int32_t>();
            else if (key == "seed") c.seed = get_u64(value, key);
            else if (key == "coherence_top_t")
                c.coherence_top_t = value.get<std::int32_t>();
            else if (key == "coherence_window")
                c.coherence_window = value.get<std::int32_t>();
            else if (key == "top_terms") c.top_terms = value.get<std::int32_t>();
            else if (key == "lexicon_file") c.lexicon_file = value.get<std::string>();
            else if (key == "ztest_alpha") c.ztest_alpha = value.get<double>();
            else if (key == "themes_file") c.themes_file = value.get<std::string>();
            else if (key == "threads") c.threads = value.get<std::int32_t>();
            else fail("config: unknown key '" + key + "'");
        } catch (const json::exception& e) {
            fail("config key '" + key + "': " + e.what());
        }
    }
    return c;
}

PipelineConfig config_from_file(const std::string& path) {
    return config_from_json(read_file(path));
}

std::string config_to_json(const PipelineConfig& config) {
    return config_json(config).dump(2) + "\n";
}

const std::vector<std::string>& stage_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& s : stage_specs()) out.emplace_back(s.name);
        return out;
    }();
    return names;
}

const std::vector<std::string>& stage_artifacts(const std::string& stage) {
    return spec_of(stage).artifacts;
}

RunManifest run(const PipelineConfig& config) {
    config.validate();
    Executor ex(config);
    ex.prepare_output();
    for (const char* stage : {"ingest", "prep", "model", "topics", "map", "emotions", "ztest"})
        ex.execute(stage);
    // Theme labeling is a human step; the report stage joins the chain only
    // once a label file is configured.
    if (!config.themes_file.empty()) ex.execute("report");
    return ex.finish_manifest();
}

std::vector<StageInfo> run_until(const PipelineConfig& config, const std::string& target) {
    spec_of(target);  // validates the name
    config.validate();
    Executor ex(config);
    ex.prepare_output();
    ex.execute(target);
    return ex.info();
}

std::string render_theme_report(const std::string& topics_csv,
                                const std::string& themes_text) {
    auto lines = split_lines(topics_csv);
    require(!lines.empty(), "topics.csv: empty");
    require(csv_split(lines[0]) ==
                std::vector<std::string>({"topic", "rank", "term", "probability"}),
            "topics.csv: unexpected header");
    std::map<std::int32_t, std::vector<std::string>> terms_of;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto fields = csv_split(lines[i]);
        require(fields.size() == 4, "topics.csv: malformed row " + std::to_string(i + 1));
        auto topic = parse_int(fields[0]);
        require(topic >= 0, "topics.csv: negative topic index");
        terms_of[static_cast<std::int32_t>(topic)].push_back(fields[2]);
    }
    require(!terms_of.empty(), "topics.csv: no topics");

    std::map<std::int32_t, std::string> theme_of;
    std::size_t line_no = 0;
    for (auto line : split_lines(themes_text)) {
        ++line_no;
        auto stripped = trim_view(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const std::string where = "themes file line " + std::to_string(line_no);
        std::size_t tab = line.find('\t');
        require(tab != std::string_view::npos,
                where + ": expected 'topic_index<TAB>theme'");
        auto index_text = trim_view(line.substr(0, tab));
        std::string theme(trim_view(line.substr(tab + 1)));
        require(!theme.empty(), where + ": empty theme label");
        std::int64_t index = 0;
        try {
            index = parse_int(index_text);
        } catch (const Error&) {
            fail(where + ": bad topic index '" + std::string(index_text) + "'");
        }
        require(terms_of.count(static_cast<std::int32_t>(index)) != 0,
                where + ": topic index " + std::to_string(index) + " does not exist");
        require(theme_of.count(static_cast<std::int32_t>(index)) == 0,
                where + ": duplicate topic index " + std::to_string(index));
        theme_of[static_cast<std::int32_t>(index)] = theme;
    }

    // Themes in order of their smallest topic; unlabeled topics always last.
    std::vector<std::pair<std::string, std::vector<std::int32_t>>> groups;
    auto group_for = [&](const std::string& theme) -> std::vector<std::int32_t>& {
        for (auto& [name, topics] : groups)
            if (name == theme) return topics;
        groups.emplace_back(theme, std::vector<std::int32_t>{});
        return groups.back().second;
    };
    std::vector<std::int32_t> unlabeled;
    for (const auto& [topic, terms] : terms_of) {
        auto it = theme_of.find(topic);
        if (it == theme_of.end())
            unlabeled.push_back(topic);
        else
            group_for(it->second).push_back(topic);
    }
    if (!unlabeled.empty()) {
        auto& topics = group_for("unlabeled");
        topics.insert(topics.end(), unlabeled.begin(), unlabeled.end());
    }

    std::string out = csv_row({"theme", "topic", "terms"});
    for (const auto& [theme, topics] : groups) {
        for (auto topic : topics) {
            const auto& all = terms_of.at(topic);
            std::vector<std::string> bigrams;
            for (const auto& term : all)
                if (term.find(' ') != std::string::npos) bigrams.push_back(term);
            const auto& chosen = bigrams.empty() ? all : bigrams;
            std::string joined;
            for (const auto& term : chosen) {
                if (!joined.empty()) joined += "; ";
                joined += term;
            }
            out += csv_row({theme, std::to_string(topic), joined});
        }
    }
    return out;
}

std::vector<std::string> expand_input_globs(const std::vector<std::string>& patterns) {
    std::vector<std::string> files;
    for (const auto& pattern : patterns) {
        ::glob_t g{};
        int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
        if (rc == 0) {
            for (std::size_t i = 0; i < g.gl_pathc; ++i) files.emplace_back(g.gl_pathv[i]);
            ::globfree(&g);
        }
        if (rc == GLOB_NOMATCH) {
            // A wildcard-free pattern is a literal path and must exist.
            require(pattern.find_first_of("*?[") != std::string::npos,
                    "input file not found: " + pattern);
        } else if (rc != 0) {
            fail("glob failed for input pattern '" + pattern + "'");
        }
    }
    std::sort(files.begin(), files.end());
    files.erase(std::unique(files.begin(), files.end()), files.end());
    return files;
}

}  // namespace epitopic
