// epitopic: offline tweet topic and emotion analytics.
//
// Each subcommand executes one pipeline stage (plus whatever earlier stages
// it needs, reusing cached results under <out>/cache); `run` executes the
// whole chain and writes manifest.json. Every configuration value can come
// from a JSON file (--config) or be overridden by the flag of the same
// name; precedence is CLI > config file > built-in default. The EPITOPIC_LOG
// environment variable (error|warn|info|debug) controls stderr verbosity.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "epitopic/error.hpp"
#include "epitopic/log.hpp"
#include "epitopic/pipeline.hpp"

namespace {

// Raw flag values; only the ones the user actually passed (count > 0) are
// copied over the file/default configuration.
struct CliValues {
    std::string config_path;
    std::vector<std::string> input;
    std::string output_dir;
    std::vector<std::string> hashtags;
    std::string date_start;
    std::string date_end;
    bool english_only = true;
    double ascii_letter_ratio_min = 0.9;
    bool strict = false;
    std::string stopword_file;
    bool strip_numbers = false;
    bool bigrams = true;
    std::int64_t min_unigram_count = 5;
    std::int64_t min_bigram_count = 10;
    std::int32_t k = 0;
    std::vector<std::int32_t> k_sweep;
    double alpha = 0.0;
    double beta = 0.01;
    std::int32_t iterations = 1000;
    std::int32_t burn_in = 500;
    std::int32_t sample_every = 10;
    std::uint64_t seed = 42;
    std::int32_t coherence_top_t = 20;
    std::int32_t coherence_window = 110;
    std::int32_t top_terms = 10;
    std::string lexicon_file;
    double ztest_alpha = 0.001;
    std::string themes_file;
    std::int32_t threads = 1;
};

void add_options(CLI::App* sub, CliValues* v) {
    sub->add_option("--config", v->config_path, "JSON configuration file")
        ->check(CLI::ExistingFile);
    sub->add_option("--input", v->input,
                    "input JSONL files (shell-style globs allowed; repeatable)");
    sub->add_option("--out,--output_dir", v->output_dir, "output directory");
    sub->add_option("--hashtags", v->hashtags,
                    "hashtag allowlist, comma separated ('' disables the filter)")
        ->delimiter(',');
    sub->add_option("--date_start,--date-start", v->date_start,
                    "inclusive start date (YYYY-MM-DD)");
    sub->add_option("--date_end,--date-end", v->date_end,
                    "inclusive end date (YYYY-MM-DD)");
    sub->add_option("--english_only,--english-only", v->english_only,
                    "keep only heuristically English tweets (true/false)");
    sub->add_option("--ascii_letter_ratio_min,--ascii-letter-ratio-min",
                    v->ascii_letter_ratio_min,
                    "minimum ASCII share of alphabetic characters");
    sub->add_flag("--strict", v->strict, "abort on malformed input lines");
    sub->add_option("--stopword_file,--stopword-file", v->stopword_file,
                    "stopword list (one per line; default: built-in)");
    sub->add_option("--strip_numbers,--strip-numbers", v->strip_numbers,
                    "drop digit runs during normalization (true/false)");
    sub->add_option("--bigrams", v->bigrams,
                    "include adjacent-pair bigram terms (true/false)");
    sub->add_option("--min_unigram_count,--min-unigram-count", v->min_unigram_count,
                    "vocabulary floor for unigrams");
    sub->add_option("--min_bigram_count,--min-bigram-count", v->min_bigram_count,
                    "vocabulary floor for bigrams");
    sub->add_option("--k", v->k, "fixed number of topics");
    sub->add_option("--k-sweep,--k_sweep", v->k_sweep,
                    "candidate topic counts, comma separated")
        ->delimiter(',');
    sub->add_option("--alpha", v->alpha,
                    "document-topic Dirichlet prior (<= 0 selects 50/K)");
    sub->add_option("--beta", v->beta, "topic-word Dirichlet prior");
    sub->add_option("--iterations", v->iterations, "Gibbs sweeps");
    sub->add_option("--burn_in,--burn-in", v->burn_in, "sweeps discarded before averaging");
    sub->add_option("--sample_every,--sample-every", v->sample_every,
                    "thinning interval for retained samples");
    sub->add_option("--seed", v->seed, "master RNG seed");
    sub->add_option("--coherence_top_t,--coherence-top-t", v->coherence_top_t,
                    "top terms per topic entering the coherence score");
    sub->add_option("--coherence_window,--coherence-window", v->coherence_window,
                    "sliding-window width for coherence");
    sub->add_option("--top_terms,--top-terms", v->top_terms,
                    "rows per topic in topics.csv");
    sub->add_option("--lexicon_file,--lexicon-file", v->lexicon_file,
                    "emotion lexicon TSV (default: built-in)");
    sub->add_option("--ztest_alpha,--ztest-alpha", v->ztest_alpha,
                    "significance threshold for the z-test grid");
    sub->add_option("--themes_file,--themes-file", v->themes_file,
                    "topic-index<TAB>theme labels for the theme report");
    sub->add_option("--threads", v->threads, "worker cap (never changes results)");
}

epitopic::PipelineConfig build_config(const CLI::App& sub, const CliValues& v) {
    epitopic::PipelineConfig cfg;
    if (sub.count("--config") > 0) cfg = epitopic::config_from_file(v.config_path);
    auto given = [&sub](const std::string& flag) { return sub.count(flag) > 0; };
    if (given("--input")) cfg.input = v.input;
    if (given("--out")) cfg.output_dir = v.output_dir;
    if (given("--hashtags")) {
        cfg.hashtags.clear();
        for (const auto& tag : v.hashtags)
            if (!tag.empty()) cfg.hashtags.push_back(tag);
    }
    if (given("--date_start")) cfg.date_start = v.date_start;
    if (given("--date_end")) cfg.date_end = v.date_end;
    if (given("--english_only")) cfg.english_only = v.english_only;
    if (given("--ascii_letter_ratio_min"))
        cfg.ascii_letter_ratio_min = v.ascii_letter_ratio_min;
    if (given("--strict")) cfg.strict = true;
    if (given("--stopword_file")) cfg.stopword_file = v.stopword_file;
    if (given("--strip_numbers")) cfg.strip_numbers = v.strip_numbers;
    if (given("--bigrams")) cfg.bigrams = v.bigrams;
    if (given("--min_unigram_count")) cfg.min_unigram_count = v.min_unigram_count;
    if (given("--min_bigram_count")) cfg.min_bigram_count = v.min_bigram_count;
    if (given("--k")) cfg.k = v.k;
    if (given("--k-sweep")) cfg.k_sweep = v.k_sweep;
    if (given("--alpha")) cfg.alpha = v.alpha;
    if (given("--beta")) cfg.beta = v.beta;
    if (given("--iterations")) cfg.iterations = v.iterations;
    if (given("--burn_in")) cfg.burn_in = v.burn_in;
    if (given("--sample_every")) cfg.sample_every = v.sample_every;
    if (given("--seed")) cfg.seed = v.seed;
    if (given("--coherence_top_t")) cfg.coherence_top_t = v.coherence_top_t;
    if (given("--coherence_window")) cfg.coherence_window = v.coherence_window;
    if (given("--top_terms")) cfg.top_terms = v.top_terms;
    if (given("--lexicon_file")) cfg.lexicon_file = v.lexicon_file;
    if (given("--ztest_alpha")) cfg.ztest_alpha = v.ztest_alpha;
    if (given("--themes_file")) cfg.themes_file = v.themes_file;
    if (given("--threads")) cfg.threads = v.threads;
    return cfg;
}

void print_stages(const std::vector<epitopic::StageInfo>& stages) {
    for (const auto& s : stages)
        std::cout << "stage " << s.name << ": " << (s.cache_hit ? "cache hit" : "computed")
                  << " in " << s.millis << " ms\n";
}

void print_artifacts(const std::string& out_dir, const std::vector<std::string>& files) {
    for (const auto& f : files) std::cout << "wrote " << out_dir << "/" << f << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"epitopic: offline tweet topic and emotion analytics"};
    app.set_version_flag("--version", std::string(epitopic::kToolVersion));
    app.require_subcommand(1);

    // Subcommand -> pipeline stage it runs up to. fit/sweep/coherence all end
    // at the model stage; fit demands fixed-K mode and sweep demands a
    // candidate list.
    const std::vector<std::pair<const char*, const char*>> commands = {
        {"ingest", "read, filter and deduplicate the input JSONL"},
        {"prep", "normalize, tokenize and build the document-term matrix"},
        {"fit", "fit the topic model at a fixed K"},
        {"sweep", "fit candidate Ks and select the most coherent"},
        {"coherence", "compute coherence for the configured model"},
        {"topics", "write the per-topic top-term table"},
        {"map", "write the intertopic distance map"},
        {"emotions", "classify emotions; write daily and per-topic tables"},
        {"ztest", "write the topic-vs-rest significance grid"},
        {"report", "group topic top bigrams under human theme labels"},
        {"run", "run the full pipeline and write the manifest"},
    };
    CliValues values;
    for (const auto& [name, description] : commands)
        add_options(app.add_subcommand(name, description), &values);

    CLI11_PARSE(app, argc, argv);

    try {
        CLI::App* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        epitopic::PipelineConfig cfg = build_config(*sub, values);

        if (name == "fit") {
            epitopic::require(cfg.k > 0, "fit requires a fixed K (--k or the 'k' config key)");
            cfg.k_sweep.clear();
        } else if (name == "sweep") {
            epitopic::require(!cfg.k_sweep.empty(),
                              "sweep requires candidates (--k-sweep or the 'k_sweep' config key)");
            cfg.k = 0;
        }

        if (name == "run") {
            epitopic::RunManifest manifest = epitopic::run(cfg);
            print_stages(manifest.stages);
            std::cout << "selected K: " << manifest.selected_k << "\n";
            std::cout << "wrote " << cfg.output_dir << "/manifest.json\n";
            return 0;
        }

        std::string target = name;
        if (name == "fit" || name == "sweep" || name == "coherence") target = "model";
        auto stages = epitopic::run_until(cfg, target);
        print_stages(stages);
        if (name == "coherence")
            print_artifacts(cfg.output_dir, {"coherence.csv", "coherence_topics.csv"});
        else
            print_artifacts(cfg.output_dir, epitopic::stage_artifacts(target));
        return 0;
    } catch (const std::exception& e) {
        epitopic::log_error(e.what());
        return 1;
    }
}
