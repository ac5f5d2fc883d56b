// End-to-end acceptance checks. Each criterion prints exactly one PASS or
// FAIL line (with informational notes indented below it) and the process
// exits nonzero if any criterion fails. Numeric expectations are checked
// against oracles computed independently inside this file: a brute-force
// coherence scorer, adaptive-Simpson tail integration, planted generative
// corpora, and a frozen 11-topic emotion share table.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "epitopic/lda.hpp"
#include "epitopic/modelselect.hpp"
#include "epitopic/pipeline.hpp"
#include "epitopic/rng.hpp"
#include "epitopic/stats.hpp"
#include "epitopic/textprep.hpp"
#include "epitopic/topicmap.hpp"

using namespace epitopic;
namespace fs = std::filesystem;

namespace {

// ---- tiny check harness ----------------------------------------------------

struct Outcome {
    bool ok = true;
    std::vector<std::string> notes;  // printed indented under the status line

    void require(bool cond, const std::string& detail) {
        if (!cond) {
            ok = false;
            notes.push_back("check failed: " + detail);
        }
    }
    void note(const std::string& text) { notes.push_back(text); }
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

bool close_abs(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// ---- criterion 1: normalization -------------------------------------------

Outcome check_normalization() {
    Outcome out;
    const std::vector<std::pair<std::string, std::string>> golden = {
        {"sooooo terrified", "so terrified"},
        {"Check out #COVID19 update @WHO https://t.co/abc123 NOW!!!",
         "check out update now"},
        {"I'm sooooo TERRIFIED!!! Wash your hands for 20 seconds",
         "im so terrified wash your hands for 20 seconds"},
        {"Don't panic \xE2\x80\x94 self-isolate & stay safe",
         "dont panic self isolate stay safe"},
        {"caf\xC3\xA9 closed, COVID-19 cases rising... www.example.com/page",
         "caf closed covid 19 cases rising"},
        {"@user1 @user2 #tag", ""},
        {"  spaced\tout\n\nlines  ", "spaced out lines"},
        {"YESSSS goood news", "yes god news"},
        {"100% effective!!", "100 effective"},
    };
    for (const auto& [raw, want] : golden) {
        auto got = normalize(raw);
        out.require(got == want,
                    "normalize(\"" + raw + "\") == \"" + got + "\", wanted \"" + want + "\"");
    }
    NormalizeConfig no_digits;
    no_digits.strip_numbers = true;
    out.require(normalize("COVID-19 cases: 42", no_digits) == "covid cases",
                "strip_numbers drops digit runs");

    // Idempotence over adversarial random byte strings.
    Xoshiro256 rng(0x5eedULL);
    const std::string alphabet =
        "abcXYZ 0189#@'.-_!?\t\n\xC3\xA9\xE2\x80\x94\xF0\x9F\x98\xB7://";
    int violations = 0;
    for (int i = 0; i < 1000; ++i) {
        std::string s;
        auto len = rng.next_below(60);
        for (std::uint64_t j = 0; j < len; ++j)
            s += alphabet[static_cast<std::size_t>(rng.next_below(alphabet.size()))];
        auto once = normalize(s);
        if (normalize(once) != once) ++violations;
    }
    out.require(violations == 0,
                std::to_string(violations) + " of 1000 random strings were not idempotent");
    return out;
}

// ---- planted corpus shared by criteria 2 and 5 -----------------------------

constexpr int kPlantedTopics = 3;
constexpr int kPlantedVocab = 30;
constexpr int kPlantedDocs = 300;
constexpr int kPlantedDocLen = 25;

struct PlantedCorpus {
    std::vector<std::vector<std::string>> docs;
    std::vector<int> home_topic;                // ground truth per document
    std::vector<std::vector<double>> phi;       // planted topic-word rows
    Vocabulary vocab;
    DocTermMatrix dtm;
};

std::string planted_word(int w) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "w%02d", w);
    return buf;
}

// Three disjoint 8-word blocks plus 6 background words shared by every
// topic (words 24-29). Each topic puts 75% of its mass on its own block,
// 20% on the background and 5% on the other blocks; documents draw 90% of
// their tokens from their home topic. The background mass matters for model
// selection: a surplus topic collects the background plus stray words from
// several blocks, and that mixed top-term list scores far lower than the
// pure blocks, so the coherence curve peaks at the true topic count.
PlantedCorpus make_planted_corpus(std::uint64_t seed) {
    PlantedCorpus pc;
    pc.phi.assign(kPlantedTopics, std::vector<double>(kPlantedVocab, 0.05 / 16.0));
    for (int k = 0; k < kPlantedTopics; ++k) {
        for (int w = 8 * k; w < 8 * (k + 1); ++w) pc.phi[k][w] = 0.70 / 8.0;
        for (int w = 24; w < 30; ++w) pc.phi[k][w] = 0.25 / 6.0;
    }

    Xoshiro256 rng(seed);
    auto draw = [&](const std::vector<double>& dist) {
        double u = rng.next_double(), acc = 0.0;
        for (std::size_t i = 0; i < dist.size(); ++i) {
            acc += dist[i];
            if (u < acc) return static_cast<int>(i);
        }
        return static_cast<int>(dist.size()) - 1;
    };

    std::vector<std::string> ids;
    std::vector<std::int32_t> dates;
    for (int d = 0; d < kPlantedDocs; ++d) {
        int home = d % kPlantedTopics;
        std::vector<double> theta(kPlantedTopics, 0.10 / (kPlantedTopics - 1));
        theta[static_cast<std::size_t>(home)] = 0.90;
        std::vector<std::string> doc;
        for (int t = 0; t < kPlantedDocLen; ++t) {
            int topic = draw(theta);
            doc.push_back(planted_word(draw(pc.phi[static_cast<std::size_t>(topic)])));
        }
        pc.docs.push_back(std::move(doc));
        pc.home_topic.push_back(home);
        char id[8];
        std::snprintf(id, sizeof id, "d%03d", d);
        ids.emplace_back(id);
        dates.push_back(18284);
    }

    VocabularyConfig vcfg;
    vcfg.min_unigram_count = 1;
    vcfg.min_bigram_count = 10;
    vcfg.bigrams = false;
    pc.vocab = build_vocabulary(pc.docs, vcfg);
    pc.dtm = vectorize(pc.docs, pc.vocab, ids, dates);
    return pc;
}

// Planted phi re-indexed into the vocabulary's term order.
std::vector<std::vector<double>> planted_phi_in_vocab(const PlantedCorpus& pc) {
    std::vector<std::vector<double>> rows(kPlantedTopics,
                                          std::vector<double>(pc.vocab.size(), 0.0));
    for (int k = 0; k < kPlantedTopics; ++k)
        for (int w = 0; w < kPlantedVocab; ++w) {
            auto idx = pc.vocab.find(planted_word(w));
            if (idx) rows[k][static_cast<std::size_t>(*idx)] = pc.phi[k][w];
        }
    return rows;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return 0.5 * s;
}

// ---- criterion 2: planted-topic recovery -----------------------------------

Outcome check_planted_recovery() {
    Outcome out;
    auto pc = make_planted_corpus(0xC0FFEEULL);
    LdaConfig cfg;
    cfg.num_topics = kPlantedTopics;
    cfg.alpha = 0.5;
    cfg.beta = 0.01;
    cfg.iterations = 400;
    cfg.burn_in = 200;
    cfg.sample_every = 5;
    cfg.seed = 20200315;
    auto model = fit(pc.dtm, cfg);

    // Greedy matching: repeatedly take the closest (planted, fitted) pair.
    auto truth = planted_phi_in_vocab(pc);
    std::vector<std::tuple<double, int, int>> pairs;  // (tv, planted, fitted)
    for (int k = 0; k < kPlantedTopics; ++k)
        for (int f = 0; f < kPlantedTopics; ++f)
            pairs.emplace_back(total_variation(truth[static_cast<std::size_t>(k)],
                                               model.phi[static_cast<std::size_t>(f)]),
                               k, f);
    std::sort(pairs.begin(), pairs.end());
    std::array<int, kPlantedTopics> matched_fit{};
    std::array<bool, kPlantedTopics> planted_used{}, fitted_used{};
    for (const auto& [tv, k, f] : pairs) {
        if (planted_used[static_cast<std::size_t>(k)] || fitted_used[static_cast<std::size_t>(f)])
            continue;
        planted_used[static_cast<std::size_t>(k)] = fitted_used[static_cast<std::size_t>(f)] = true;
        matched_fit[static_cast<std::size_t>(k)] = f;
        out.note("planted topic " + std::to_string(k) + " ~ fitted topic " +
                 std::to_string(f) + ": total variation " + fmt(tv));
        out.require(tv < 0.1, "total variation " + fmt(tv) + " >= 0.1 for planted topic " +
                                  std::to_string(k));
    }

    std::array<int, kPlantedTopics> inverse{};
    for (int k = 0; k < kPlantedTopics; ++k)
        inverse[static_cast<std::size_t>(matched_fit[static_cast<std::size_t>(k)])] = k;
    auto dom = dominant_topics(model, pc.dtm);
    int correct = 0;
    for (int d = 0; d < kPlantedDocs; ++d)
        if (dom.per_doc[static_cast<std::size_t>(d)] >= 0 &&
            inverse[static_cast<std::size_t>(dom.per_doc[static_cast<std::size_t>(d)])] ==
                pc.home_topic[static_cast<std::size_t>(d)])
            ++correct;
    double recovery = static_cast<double>(correct) / kPlantedDocs;
    out.note("dominant-topic recovery: " + std::to_string(correct) + "/300");
    out.require(recovery >= 0.95, "recovery " + fmt(recovery) + " < 0.95");
    return out;
}

// ---- criterion 3: Gibbs full conditionals ----------------------------------

Outcome check_gibbs_conditionals() {
    Outcome out;

    // Hand-built two-document, two-topic, three-term state. Document 0 holds
    // tokens (w0 -> topic 0, w1 -> topic 0, w2 -> topic 1); document 1 holds
    // (w0 -> topic 1, w1 -> topic 1). Resampling document 0's w0 token with
    // its assignment removed leaves: doc-topic counts (1, 1), counts of w0
    // per topic (0, 1), topic totals (1, 3). With alpha = 25 and beta = 0.01:
    //   weight(0) = 26 * 0.01 / 1.03 = 0.25242718446601941748
    //   weight(1) = 26 * 1.01 / 3.03 = 8.6666666666666666667
    // which normalize to 3/106 and 103/106.
    auto w = gibbs_topic_weights({1, 1}, {0, 1}, {1, 3}, 25.0, 0.01, 3);
    out.require(w.size() == 2, "weight vector length");
    out.require(close_rel(w[0], 0.25242718446601941748, 1e-12),
                "weight(0) == " + fmt(w[0]));
    out.require(close_rel(w[1], 8.6666666666666666667, 1e-12),
                "weight(1) == " + fmt(w[1]));
    double p0 = w[0] / (w[0] + w[1]);
    out.require(close_rel(p0, 0.028301886792452830189, 1e-12),
                "conditional P(topic 0) == " + fmt(p0));
    out.require(close_rel(1.0 - p0, 0.97169811320754716981, 1e-12),
                "conditional P(topic 1) == " + fmt(1.0 - p0));

    struct Case {
        std::vector<std::int32_t> doc_topic, topic_word;
        std::vector<std::int64_t> topic_counts;
        double alpha, beta;
        std::int32_t num_terms;
    };
    const std::vector<Case> cases = {
        {{2, 1, 0}, {3, 0, 1}, {10, 5, 7}, 0.3, 0.01, 30},
        {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, 12.5, 0.5, 4},
        {{5, 1, 9, 2, 7, 0, 3}, {2, 0, 4, 1, 1, 0, 6}, {40, 11, 63, 9, 28, 2, 31},
         50.0 / 7.0, 0.01, 515},
    };
    for (std::size_t c = 0; c < cases.size(); ++c) {
        const auto& cs = cases[c];
        auto got = gibbs_topic_weights(cs.doc_topic, cs.topic_word, cs.topic_counts,
                                       cs.alpha, cs.beta, cs.num_terms);
        out.require(got.size() == cs.doc_topic.size(), "weight vector length");
        for (std::size_t k = 0; k < got.size(); ++k) {
            double want = (cs.doc_topic[k] + cs.alpha) * (cs.topic_word[k] + cs.beta) /
                          (static_cast<double>(cs.topic_counts[k]) +
                           cs.num_terms * cs.beta);
            if (!close_rel(got[k], want, 1e-12))
                out.require(false, "case " + std::to_string(c) + " topic " +
                                       std::to_string(k) + ": " + fmt(got[k]) +
                                       " != " + fmt(want));
        }
    }
    return out;
}

// ---- criterion 4: coherence vs. brute force --------------------------------

// Brute-force C_v: enumerate every window, count boolean occurrences, build
// the NPMI matrix (diagonal included), score mean cosine of each row against
// the summed reference row. Written from the definitions, independent of the
// library's incremental counting.
double brute_force_cv(const std::vector<std::string>& top_words,
                      const std::vector<std::vector<std::string>>& docs,
                      int window, double eps) {
    const int n = static_cast<int>(top_words.size());
    std::map<std::string, int> id;
    for (int i = 0; i < n; ++i) id[top_words[static_cast<std::size_t>(i)]] = i;

    long total = 0;
    std::vector<long> marginal(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<long>> joint(static_cast<std::size_t>(n),
                                         std::vector<long>(static_cast<std::size_t>(n), 0));
    for (const auto& doc : docs) {
        const long len = static_cast<long>(doc.size());
        const long windows = len <= window ? 1 : len - window + 1;
        for (long s = 0; s < windows; ++s) {
            std::set<int> present;
            for (long j = s; j < std::min<long>(len, s + window); ++j) {
                auto it = id.find(doc[static_cast<std::size_t>(j)]);
                if (it != id.end()) present.insert(it->second);
            }
            ++total;
            for (int a : present)
                for (int b : present) ++joint[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            for (int a : present) ++marginal[static_cast<std::size_t>(a)];
        }
    }

    auto npmi_of = [&](int a, int b) {
        double pa = static_cast<double>(marginal[static_cast<std::size_t>(a)]) / static_cast<double>(total);
        double pb = static_cast<double>(marginal[static_cast<std::size_t>(b)]) / static_cast<double>(total);
        double pj = static_cast<double>(joint[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) /
                    static_cast<double>(total);
        if (pa <= 0.0 || pb <= 0.0) return 0.0;
        double den = -std::log(pj + eps);
        if (den <= 0.0) return 0.0;
        return std::min(1.0, std::log((pj + eps) / (pa * pb)) / den);
    };

    std::vector<std::vector<double>> ctx(static_cast<std::size_t>(n),
                                         std::vector<double>(static_cast<std::size_t>(n)));
    std::vector<double> ref(static_cast<std::size_t>(n), 0.0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            ctx[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = npmi_of(a, b);
            ref[static_cast<std::size_t>(b)] += ctx[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        }
    double mean = 0.0;
    for (int a = 0; a < n; ++a) {
        double dot = 0.0, na = 0.0, nr = 0.0;
        for (int b = 0; b < n; ++b) {
            double va = ctx[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            double vr = ref[static_cast<std::size_t>(b)];
            dot += va * vr;
            na += va * va;
            nr += vr * vr;
        }
        mean += (na <= 0.0 || nr <= 0.0) ? 0.0 : dot / (std::sqrt(na) * std::sqrt(nr));
    }
    return mean / n;
}

Outcome check_coherence_oracle() {
    Outcome out;

    // Toy corpus, seven tokens in all: one multi-window document, one short
    // document, one single-token document and one empty document. The word
    // "e" never occurs, exercising the zero-marginal convention.
    const std::vector<std::vector<std::string>> toy = {
        {"a", "b", "c", "a"}, {"b", "c"}, {"d"}, {}};
    const std::vector<std::string> toy_tops = {"a", "b", "c", "d", "e"};
    auto toy_probs = window_counts(toy, 3);
    double toy_lib = cv_coherence(toy_tops, toy_probs, 1e-12);
    double toy_oracle = brute_force_cv(toy_tops, toy, 3, 1e-12);
    out.note("toy corpus C_v " + fmt(toy_lib) + ", brute force " + fmt(toy_oracle));
    out.require(close_abs(toy_lib, toy_oracle, 1e-10),
                "toy C_v differs from brute force by " +
                    fmt(std::abs(toy_lib - toy_oracle)));

    const std::vector<std::string> lexicon = {"a", "b", "c", "d", "e", "f",
                                              "g", "h", "i", "j", "k", "l"};
    Xoshiro256 rng(0xFACADEULL);
    std::vector<std::vector<std::string>> docs;
    for (int d = 0; d < 80; ++d) {
        std::vector<std::string> doc;
        auto len = d == 0 ? 0 : rng.next_below(31);
        for (std::uint64_t j = 0; j < len; ++j)
            doc.push_back(lexicon[static_cast<std::size_t>(rng.next_below(lexicon.size()))]);
        docs.push_back(std::move(doc));
    }
    const std::vector<std::string> tops = {"b", "e", "g", "k", "a"};
    const int window = 10;
    const double eps = 1e-12;

    auto probs = window_counts(docs, window);
    double lib = cv_coherence(tops, probs, eps);
    double oracle = brute_force_cv(tops, docs, window, eps);
    out.note("library C_v " + fmt(lib) + ", brute force " + fmt(oracle));
    out.require(close_abs(lib, oracle, 1e-10),
                "C_v differs from brute force by " + fmt(std::abs(lib - oracle)));

    // Independent words: P(xy) == P(x) P(y) must give NPMI ~ 0. 100 windows
    // with P(x) = 0.3, P(y) = 0.4, P(xy) = 0.12 exactly.
    std::vector<std::vector<std::string>> indep;
    for (int i = 0; i < 12; ++i) indep.push_back({"x", "y"});
    for (int i = 0; i < 18; ++i) indep.push_back({"x"});
    for (int i = 0; i < 28; ++i) indep.push_back({"y"});
    for (int i = 0; i < 42; ++i) indep.push_back({"z"});
    auto p2 = window_counts(indep, window);
    double v = npmi("x", "y", p2, eps);
    out.note("NPMI at independence: " + fmt(v));
    out.require(std::abs(v) < 1e-6, "NPMI at independence |" + fmt(v) + "| >= 1e-6");
    return out;
}

// ---- criterion 5: model selection ------------------------------------------

Outcome check_sweep_selection() {
    Outcome out;
    auto pc = make_planted_corpus(0xBADA55ULL);
    std::vector<std::vector<std::string>> cdocs;
    for (const auto& doc : pc.docs) cdocs.push_back(coherence_tokens(doc, pc.vocab));

    LdaConfig base;
    base.alpha = 0.5;
    base.beta = 0.01;
    base.iterations = 600;
    base.burn_in = 300;
    base.sample_every = 5;
    base.seed = 777;
    CoherenceConfig ccfg;
    ccfg.top_t = 10;
    ccfg.window = 5;  // narrower than the documents so the windows truly slide
    auto result = sweep(pc.dtm, cdocs, pc.vocab, {2, 3, 4, 5, 6}, base, ccfg, 4);

    double best = -2.0, at3 = -2.0;
    for (auto [k, score] : result.report.scores) {
        out.note("K=" + std::to_string(k) + ": mean C_v " + fmt(score));
        best = std::max(best, score);
        if (k == 3) at3 = score;
    }
    out.note("selected K: " + std::to_string(result.report.selected_k));
    out.require(result.report.scores.size() == 5, "expected five candidate scores");
    out.require(at3 > -2.0, "no score recorded for K=3");
    out.require(at3 >= best - 0.05 * std::abs(best),
                "coherence at K=3 (" + fmt(at3) + ") more than 5% below the maximum (" +
                    fmt(best) + ")");
    out.require(result.report.selected_k == 3,
                "selected K " + std::to_string(result.report.selected_k) + " != 3");
    return out;
}

// ---- criterion 6: divergence and embedding ----------------------------------

Outcome check_divergence_and_embedding() {
    Outcome out;
    const std::vector<double> p = {0.2, 0.3, 0.5};
    out.require(jsd(p, p) == 0.0, "jsd(p, p) != 0");
    const std::vector<double> one = {1.0, 0.0}, two = {0.0, 1.0};
    out.require(jsd(one, two) == 1.0, "jsd of disjoint distributions != 1");
    const std::vector<double> half = {0.5, 0.5}, skew = {0.9, 0.1};
    double mid = jsd(half, skew);
    out.require(close_abs(mid, 0.14679310243605201, 1e-13),
                "jsd((.5,.5),(.9,.1)) == " + fmt(mid));

    // A genuinely planar configuration (unit square) must embed exactly:
    // every pairwise distance reproduced to numerical precision.
    const std::vector<std::array<double, 2>> pts = {
        {0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
    std::vector<std::vector<double>> dist(4, std::vector<double>(4, 0.0));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                std::hypot(pts[static_cast<std::size_t>(i)][0] - pts[static_cast<std::size_t>(j)][0],
                           pts[static_cast<std::size_t>(i)][1] - pts[static_cast<std::size_t>(j)][1]);
    auto coords = classical_mds(dist, 2);
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double dij = std::hypot(
                coords[static_cast<std::size_t>(i)][0] - coords[static_cast<std::size_t>(j)][0],
                coords[static_cast<std::size_t>(i)][1] - coords[static_cast<std::size_t>(j)][1]);
            worst = std::max(worst,
                             std::abs(dij - dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
        }
    out.note("worst planar distance error: " + fmt(worst));
    out.require(worst < 1e-6, "planar embedding distance error " + fmt(worst));

    // Two identical topics must land on the same point and overlap.
    std::vector<std::vector<double>> phi = {
        {0.5, 0.3, 0.2, 0.0}, {0.5, 0.3, 0.2, 0.0}, {0.0, 0.1, 0.2, 0.7}};
    std::vector<std::vector<double>> theta = {
        {0.4, 0.4, 0.2}, {0.3, 0.3, 0.4}, {0.5, 0.2, 0.3}};
    auto map = build_map(phi, theta, {10, 10, 10});
    bool found = false;
    for (auto [i, j] : map.overlaps)
        if (i == 0 && j == 1) found = true;
    out.require(found, "duplicate topics not reported as overlapping");
    return out;
}

// ---- criterion 7: tail probabilities ----------------------------------------

double std_normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / 2.5066282746310005024;
}

double simpson_recurse(double a, double b, double fa, double fb, double fm,
                       double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = std_normal_pdf(lm), frm = std_normal_pdf(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_recurse(a, m, fa, fm, flm, left, 0.5 * tol, depth - 1) +
           simpson_recurse(m, b, fm, fb, frm, right, 0.5 * tol, depth - 1);
}

// Independent survival-function oracle: adaptive Simpson quadrature of the
// standard normal density over [z, z + 14]; the remaining tail is below
// 1e-40 and irrelevant at the tolerances used here.
double integrated_sf(double z) {
    if (z < 0.0) return 1.0 - integrated_sf(-z);
    double a = z, b = z + 14.0;
    double fa = std_normal_pdf(a), fb = std_normal_pdf(b);
    double m = 0.5 * (a + b), fm = std_normal_pdf(m);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_recurse(a, b, fa, fb, fm, whole, 1e-14, 48);
}

Outcome check_tail_probabilities() {
    Outcome out;
    out.require(close_abs(normal_sf(1.96), 0.0249979, 1e-6),
                "normal_sf(1.96) == " + fmt(normal_sf(1.96)));
    for (double z : {0.0, -1.0, 1.0, 1.96, 2.5, 3.2905, 5.0}) {
        double lib = normal_sf(z), oracle = integrated_sf(z);
        if (!close_abs(lib, oracle, 1e-12))
            out.require(false, "normal_sf(" + fmt(z) + ") = " + fmt(lib) +
                                   " vs integral " + fmt(oracle));
    }

    Xoshiro256 rng(0xD06F00DULL);
    double worst_z = 0.0, worst_p = 0.0;
    for (int i = 0; i < 100; ++i) {
        auto n1 = static_cast<std::int64_t>(50 + rng.next_below(5000));
        auto n2 = static_cast<std::int64_t>(50 + rng.next_below(8000));
        double q1 = 0.05 + 0.55 * rng.next_double();
        double q2 = 0.05 + 0.55 * rng.next_double();
        auto x1 = std::clamp<std::int64_t>(
            std::llround(static_cast<double>(n1) * q1), 1, n1 - 1);
        auto x2 = std::clamp<std::int64_t>(
            std::llround(static_cast<double>(n2) * q2), 1, n2 - 1);

        auto lib = two_proportion_z(x1, n1, x2, n2);
        long double p1 = static_cast<long double>(x1) / static_cast<long double>(n1);
        long double p2 = static_cast<long double>(x2) / static_cast<long double>(n2);
        long double pp = static_cast<long double>(x1 + x2) / static_cast<long double>(n1 + n2);
        long double se = sqrtl(pp * (1.0L - pp) *
                               (1.0L / static_cast<long double>(n1) +
                                1.0L / static_cast<long double>(n2)));
        double z = static_cast<double>((p1 - p2) / se);
        double p = integrated_sf(z);
        worst_z = std::max(worst_z, std::abs(lib.z - z) / std::max(1.0, std::abs(z)));
        worst_p = std::max(worst_p, std::abs(lib.p_value - p));
    }
    out.note("worst relative z error: " + fmt(worst_z));
    out.note("worst absolute p error: " + fmt(worst_p));
    out.require(worst_z <= 1e-9, "z mismatch " + fmt(worst_z) + " > 1e-9");
    out.require(worst_p <= 1e-9, "p mismatch " + fmt(worst_p) + " > 1e-9");
    return out;
}

// ---- criterion 8: frozen 11-topic emotion grid -------------------------------

Outcome check_reference_grid() {
    Outcome out;
    constexpr std::array<std::int64_t, 11> sizes = {
        334193, 158704, 161361, 160237, 145781, 152724,
        151935, 165730, 162623, 157064, 170834};
    // Column order: anger, anticipation, disgust, fear, joy, sadness,
    // surprise, trust. Shares are percentages of each topic's tweets.
    constexpr std::array<std::array<double, 8>, 11> percent = {{
        {1.3, 1.2, 0.6, 47.6, 15.5, 1.5, 8.7, 23.7},
        {1.4, 1.1, 0.8, 45.3, 19.5, 1.4, 6.3, 24.2},
        {1.5, 1.2, 0.8, 46.3, 19.6, 1.4, 6.1, 23.1},
        {1.5, 1.1, 0.8, 47.4, 18.9, 1.3, 6.1, 23.1},
        {1.3, 1.2, 0.8, 45.9, 20.9, 1.3, 6.2, 22.4},
        {1.6, 1.1, 0.8, 45.8, 19.7, 1.2, 6.0, 23.8},
        {1.6, 1.0, 0.7, 45.8, 20.3, 1.2, 5.8, 23.6},
        {1.6, 1.1, 0.8, 44.9, 20.5, 1.2, 6.3, 23.5},
        {1.3, 1.1, 0.7, 47.6, 19.3, 1.3, 6.2, 22.6},
        {1.6, 1.1, 0.9, 44.9, 19.4, 1.4, 5.9, 24.7},
        {1.1, 1.4, 0.6, 47.7, 20.4, 1.1, 7.2, 20.6},
    }};
    const std::array<std::string, 8> label = {"anger",   "anticipation", "disgust",
                                              "fear",    "joy",          "sadness",
                                              "surprise", "trust"};
    // Expected over-represented (column, 1-based topic) highlights.
    const std::set<std::pair<int, int>> expected = {
        {3, 1}, {3, 4}, {3, 9}, {3, 11},          // fear
        {7, 1}, {7, 2}, {7, 10},                  // trust
        {6, 1}, {6, 11},                          // surprise
        {4, 5}, {4, 7}, {4, 8}, {4, 11},          // joy
    };

    std::array<std::array<std::int64_t, 8>, 11> counts{};
    for (int t = 0; t < 11; ++t)
        for (int e = 0; e < 8; ++e)
            counts[static_cast<std::size_t>(t)][static_cast<std::size_t>(e)] = std::llround(
                static_cast<double>(sizes[static_cast<std::size_t>(t)]) *
                percent[static_cast<std::size_t>(t)][static_cast<std::size_t>(e)] / 100.0);

    int missed = 0;
    for (int e = 0; e < 8; ++e)
        for (int t = 0; t < 11; ++t) {
            std::int64_t rest_hits = 0, rest_total = 0;
            for (int o = 0; o < 11; ++o)
                if (o != t) {
                    rest_hits += counts[static_cast<std::size_t>(o)][static_cast<std::size_t>(e)];
                    rest_total += sizes[static_cast<std::size_t>(o)];
                }
            auto r = two_proportion_z(counts[static_cast<std::size_t>(t)][static_cast<std::size_t>(e)],
                                      sizes[static_cast<std::size_t>(t)], rest_hits,
                                      rest_total, 0.001);
            bool want = expected.count({e, t + 1}) > 0;
            bool borderline = r.p_value >= 1e-4 && r.p_value <= 1e-2;
            if (want && !r.significant) {
                if (borderline) {
                    out.note("borderline, not failed: " + label[static_cast<std::size_t>(e)] +
                             " topic " + std::to_string(t + 1) + " p=" + fmt(r.p_value));
                } else {
                    ++missed;
                    out.require(false, "expected highlight not significant: " +
                                           label[static_cast<std::size_t>(e)] + " topic " +
                                           std::to_string(t + 1) + " p=" + fmt(r.p_value));
                }
            } else if (!want && r.significant) {
                out.note("also significant (not in the expected set): " +
                         label[static_cast<std::size_t>(e)] + " topic " + std::to_string(t + 1) +
                         " z=" + fmt(r.z) + " p=" + fmt(r.p_value));
            }
        }
    out.note(std::to_string(expected.size() - static_cast<std::size_t>(missed)) + " of " +
             std::to_string(expected.size()) + " expected highlights reproduced");
    return out;
}

// ---- criterion 9: CLI reproducibility ----------------------------------------

int run_cli(const std::string& args, const fs::path& log) {
    std::string cmd = std::string(EPITOPIC_CLI_PATH) + " " + args + " > " +
                      log.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

Outcome check_cli_reproducibility() {
    Outcome out;
    fs::path base = fs::temp_directory_path() /
                    ("epitopic_accept_" + std::to_string(::getpid()));
    fs::remove_all(base);
    fs::create_directories(base);
    fs::path cfg_path = base / "config.json";
    {
        std::ofstream cfg(cfg_path);
        cfg << "{\n"
            << "  \"input\": [\"" << EPITOPIC_FIXTURE_DIR << "/mini_corpus.jsonl\"],\n"
            << "  \"output_dir\": \"" << (base / "unused").string() << "\",\n"
            << "  \"date_start\": \"2020-01-23\",\n"
            << "  \"date_end\": \"2020-03-07\",\n"
            << "  \"k_sweep\": [3, 4, 5, 6, 7],\n"
            << "  \"iterations\": 400,\n"
            << "  \"burn_in\": 200,\n"
            << "  \"sample_every\": 10,\n"
            << "  \"seed\": 42,\n"
            << "  \"coherence_top_t\": 10,\n"
            << "  \"top_terms\": 10\n"
            << "}\n";
    }

    auto slurp = [](const fs::path& p) -> std::string {
        std::ifstream in(p, std::ios::binary);
        if (!in.good()) return "<<missing " + p.string() + ">>";
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    };
    auto launch = [&](const std::string& dir, int threads) {
        std::string args = "run --config " + cfg_path.string() + " --out " +
                           (base / dir).string() + " --threads " +
                           std::to_string(threads);
        int rc = run_cli(args, base / (dir + ".log"));
        if (rc != 0) {
            out.require(false, "CLI run into " + dir + " exited with " +
                                   std::to_string(rc));
            out.note("--- " + dir + ".log ---");
            out.note(slurp(base / (dir + ".log")));
        }
        return rc == 0;
    };

    bool up = launch("a", 4) && launch("b", 4) && launch("c", 1) && launch("d", 8);
    if (up) {
        std::vector<std::string> artifacts;
        for (const auto& stage : stage_names())
            if (stage != "report")
                for (const auto& a : stage_artifacts(stage)) artifacts.push_back(a);
        int diffs = 0;
        auto compare = [&](const std::string& lhs, const std::string& rhs) {
            for (const auto& a : artifacts)
                if (slurp(base / lhs / a) != slurp(base / rhs / a)) {
                    ++diffs;
                    out.require(false, a + " differs between runs " + lhs + " and " + rhs);
                }
        };
        compare("a", "b");  // identical invocations
        compare("c", "d");  // single- vs. multi-threaded
        compare("a", "c");  // thread count must not leak into any artifact
        if (diffs == 0)
            out.note("all " + std::to_string(artifacts.size()) +
                     " artifacts byte-identical across 4 runs");
    }
    fs::remove_all(base);
    return out;
}

// ---- driver -------------------------------------------------------------------

struct Criterion {
    const char* description;
    std::function<Outcome()> check;
    long budget_ms;  // 0 = no explicit budget
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"text normalization: golden outputs and idempotence", check_normalization, 1000},
        {"topic recovery on a planted three-topic corpus", check_planted_recovery, 30000},
        {"collapsed Gibbs full-conditional weights match the closed form",
         check_gibbs_conditionals, 0},
        {"sliding-window coherence matches a brute-force oracle", check_coherence_oracle, 0},
        {"coherence sweep selects the planted topic count", check_sweep_selection, 0},
        {"divergence bounds and planar embedding recovery",
         check_divergence_and_embedding, 0},
        {"tail probabilities match adaptive numeric integration",
         check_tail_probabilities, 0},
        {"frozen 11-topic emotion grid reproduces the expected contrasts",
         check_reference_grid, 1000},
        {"command-line runs are byte-identical across reruns and thread counts",
         check_cli_reproducibility, 60000},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& c = criteria[i];
        auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.check();
        } catch (const std::exception& e) {
            out.ok = false;
            out.notes.push_back(std::string("unexpected exception: ") + e.what());
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        if (c.budget_ms > 0 && ms > c.budget_ms) {
            out.ok = false;
            out.notes.push_back("took " + std::to_string(ms) + " ms, budget " +
                                std::to_string(c.budget_ms) + " ms");
        }
        std::cout << (out.ok ? "PASS" : "FAIL") << "  criterion " << i + 1 << ": "
                  << c.description << " (" << ms << " ms)\n";
        for (const auto& note : out.notes) std::cout << "      - " << note << "\n";
        if (!out.ok) ++failures;
    }
    std::cout << (9 - failures) << " of 9 criteria passed\n";
    return failures == 0 ? 0 : 1;
}
