#include "epitopic/modelselect.hpp"

#include <algorithm>
#include <cmath>

#include "epitopic/csv.hpp"
#include "epitopic/error.hpp"
#include "epitopic/log.hpp"
#include "epitopic/parallel.hpp"
#include "epitopic/rng.hpp"

namespace epitopic {

namespace {

std::uint64_t pair_key(std::int32_t a, std::int32_t b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

}  // namespace

void CoherenceConfig::validate() const {
    require(top_t >= 2, "coherence: top_t must be >= 2");
    require(window >= 2, "coherence: window must be >= 2");
    require(epsilon > 0.0, "coherence: epsilon must be positive");
}

double WindowProbabilities::probability(const std::string& w) const {
    auto it = ids_.find(w);
    if (it == ids_.end() || total_windows_ == 0) return 0.0;
    return static_cast<double>(marginal_[static_cast<std::size_t>(it->second)]) /
           static_cast<double>(total_windows_);
}

double WindowProbabilities::joint_probability(const std::string& a,
                                              const std::string& b) const {
    if (a == b) return probability(a);
    auto ia = ids_.find(a);
    auto ib = ids_.find(b);
    if (ia == ids_.end() || ib == ids_.end() || total_windows_ == 0) return 0.0;
    auto it = joint_.find(pair_key(ia->second, ib->second));
    if (it == joint_.end()) return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(total_windows_);
}

WindowProbabilities window_counts(
    const std::vector<std::vector<std::string>>& docs, std::int32_t window,
    const std::unordered_set<std::string>* vocabulary_of_interest, int threads) {
    require(window >= 2, "window_counts: window must be >= 2");

    WindowProbabilities probs;
    // Fix the word-id table up front so parallel chunks agree on ids.
    if (vocabulary_of_interest) {
        std::vector<std::string> sorted(vocabulary_of_interest->begin(),
                                        vocabulary_of_interest->end());
        std::sort(sorted.begin(), sorted.end());
        for (auto& w : sorted)
            probs.ids_.emplace(std::move(w), static_cast<std::int32_t>(probs.ids_.size()));
    } else {
        for (const auto& doc : docs)
            for (const auto& tok : doc)
                probs.ids_.emplace(tok, static_cast<std::int32_t>(probs.ids_.size()));
    }
    const std::size_t n_ids = probs.ids_.size();
    probs.marginal_.assign(n_ids, 0);

    struct Partial {
        std::int64_t windows = 0;
        std::vector<std::int64_t> marginal;
        std::unordered_map<std::uint64_t, std::int64_t> joint;
    };
    threads = std::max(1, threads);
    std::size_t chunks = std::min<std::size_t>(static_cast<std::size_t>(threads),
                                               std::max<std::size_t>(docs.size(), 1));
    std::vector<Partial> partials(chunks);
    for (auto& p : partials) p.marginal.assign(n_ids, 0);

    parallel_for(chunks, static_cast<int>(chunks), [&](std::size_t chunk) {
        Partial& part = partials[chunk];
        std::size_t begin = docs.size() * chunk / chunks;
        std::size_t end = docs.size() * (chunk + 1) / chunks;
        std::vector<std::int32_t> present_count(n_ids, 0);
        std::vector<std::int32_t> present;  // ids with nonzero count, unsorted
        auto add_id = [&](std::int32_t id) {
            if (present_count[static_cast<std::size_t>(id)]++ == 0)
                present.push_back(id);
        };
        auto commit_window = [&] {
            ++part.windows;
            std::sort(present.begin(), present.end());
            for (std::size_t i = 0; i < present.size(); ++i) {
                ++part.marginal[static_cast<std::size_t>(present[i])];
                for (std::size_t j = i + 1; j < present.size(); ++j)
                    ++part.joint[pair_key(present[i], present[j])];
            }
        };
        for (std::size_t d = begin; d < end; ++d) {
            const auto& doc = docs[d];
            std::vector<std::int32_t> ids(doc.size(), -1);
            for (std::size_t t = 0; t < doc.size(); ++t) {
                auto it = probs.ids_.find(doc[t]);
                if (it != probs.ids_.end()) ids[t] = it->second;
            }
            std::int64_t n = static_cast<std::int64_t>(ids.size());
            if (n <= window) {
                // Short (or empty) documents form exactly one window.
                present.clear();
                std::fill(present_count.begin(), present_count.end(), 0);
                for (std::int32_t id : ids)
                    if (id >= 0) add_id(id);
                commit_window();
                continue;
            }
            // Stride-1 sliding window with multiplicity bookkeeping.
            present.clear();
            std::fill(present_count.begin(), present_count.end(), 0);
            for (std::int64_t t = 0; t < window; ++t)
                if (ids[static_cast<std::size_t>(t)] >= 0)
                    add_id(ids[static_cast<std::size_t>(t)]);
            commit_window();
            for (std::int64_t start = 1; start + window <= n; ++start) {
                std::int32_t out_id = ids[static_cast<std::size_t>(start - 1)];
                if (out_id >= 0) {
                    if (--present_count[static_cast<std::size_t>(out_id)] == 0)
                        present.erase(
                            std::find(present.begin(), present.end(), out_id));
                }
                std::int32_t in_id = ids[static_cast<std::size_t>(start + window - 1)];
                if (in_id >= 0) add_id(in_id);
                commit_window();
            }
        }
    });

    for (const auto& part : partials) {
        probs.total_windows_ += part.windows;
        for (std::size_t i = 0; i < n_ids; ++i) probs.marginal_[i] += part.marginal[i];
        for (const auto& [key, count] : part.joint) probs.joint_[key] += count;
    }
    return probs;
}

double npmi_value(double p_a, double p_b, double p_joint, double epsilon) {
    if (p_a <= 0.0 || p_b <= 0.0) return 0.0;
    double numerator = std::log((p_joint + epsilon) / (p_a * p_b));
    double denominator = -std::log(p_joint + epsilon);
    if (denominator <= 0.0) return 0.0;
    // Epsilon smoothing can push a perfect pair a few ulps above 1; the
    // contract bounds NPMI to [-1, 1], so clamp the top end.
    return std::min(1.0, numerator / denominator);
}

double npmi(const std::string& a, const std::string& b,
            const WindowProbabilities& probs, double epsilon) {
    return npmi_value(probs.probability(a), probs.probability(b),
                      probs.joint_probability(a, b), epsilon);
}

double cv_coherence(const std::vector<std::string>& top_words,
                    const WindowProbabilities& probs, double epsilon) {
    const std::size_t n = top_words.size();
    require(n >= 1, "cv_coherence: empty word set");
    // Symmetric NPMI matrix; row i is word i's context vector.
    std::vector<std::vector<double>> sim(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double v = npmi(top_words[i], top_words[j], probs, epsilon);
            sim[i][j] = v;
            sim[j][i] = v;
        }
    }
    std::vector<double> reference(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) reference[j] += sim[i][j];

    double ref_norm = 0.0;
    for (double v : reference) ref_norm += v * v;
    ref_norm = std::sqrt(ref_norm);

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dot = 0.0, norm = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            dot += sim[i][j] * reference[j];
            norm += sim[i][j] * sim[i][j];
        }
        norm = std::sqrt(norm);
        if (norm > 0.0 && ref_norm > 0.0) total += dot / (norm * ref_norm);
    }
    return total / static_cast<double>(n);
}

double model_coherence(const LdaModel& model, const Vocabulary& vocab,
                       const WindowProbabilities& probs, const CoherenceConfig& cfg,
                       std::vector<double>* per_topic) {
    cfg.validate();
    if (per_topic) per_topic->assign(static_cast<std::size_t>(model.num_topics), 0.0);
    double total = 0.0;
    for (std::int32_t k = 0; k < model.num_topics; ++k) {
        auto terms = top_terms(model, vocab, k, cfg.top_t);
        std::vector<std::string> words;
        words.reserve(terms.size());
        for (auto& [term, prob] : terms) words.push_back(term);
        double score = cv_coherence(words, probs, cfg.epsilon);
        if (per_topic) (*per_topic)[static_cast<std::size_t>(k)] = score;
        total += score;
    }
    return total / static_cast<double>(model.num_topics);
}

std::uint64_t seed_for_k(std::uint64_t master_seed, std::int32_t k) {
    return mix_seed(master_seed, static_cast<std::uint64_t>(k));
}

SweepResult sweep(const DocTermMatrix& dtm,
                  const std::vector<std::vector<std::string>>& coherence_docs,
                  const Vocabulary& vocab, const std::vector<std::int32_t>& candidates,
                  const LdaConfig& base, const CoherenceConfig& coherence_cfg,
                  int threads) {
    require(!candidates.empty(), "sweep: no candidate topic counts");
    coherence_cfg.validate();
    {
        std::vector<std::int32_t> sorted(candidates);
        std::sort(sorted.begin(), sorted.end());
        require(sorted.front() >= 1, "sweep: candidates must be >= 1");
        require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
                "sweep: duplicate candidate topic counts");
    }

    struct Candidate {
        std::int32_t k = 0;
        double score = 0.0;
        std::vector<double> per_topic;
    };
    std::vector<Candidate> results(candidates.size());
    parallel_for(candidates.size(), threads, [&](std::size_t i) {
        LdaConfig cfg = base;
        cfg.num_topics = candidates[i];
        cfg.seed = seed_for_k(base.seed, candidates[i]);
        LdaModel model = fit(dtm, cfg);
        std::unordered_set<std::string> interest;
        for (std::int32_t k = 0; k < model.num_topics; ++k)
            for (auto& [term, prob] : top_terms(model, vocab, k, coherence_cfg.top_t))
                interest.insert(term);
        WindowProbabilities probs =
            window_counts(coherence_docs, coherence_cfg.window, &interest, 1);
        Candidate& out = results[i];
        out.k = candidates[i];
        out.score = model_coherence(model, vocab, probs, coherence_cfg, &out.per_topic);
        log_info("sweep: K=" + std::to_string(out.k) +
                 " mean coherence=" + fmt_double(out.score));
    });

    std::sort(results.begin(), results.end(),
              [](const Candidate& a, const Candidate& b) { return a.k < b.k; });
    std::size_t best = 0;
    for (std::size_t i = 1; i < results.size(); ++i)
        if (results[i].score > results[best].score) best = i;

    SweepResult out;
    for (const auto& c : results) out.report.scores.emplace_back(c.k, c.score);
    out.report.selected_k = results[best].k;
    out.report.selected_per_topic = results[best].per_topic;
    out.config = base;
    out.config.num_topics = results[best].k;
    out.config.seed = seed_for_k(base.seed, results[best].k);
    // Refit instead of keeping every candidate's model in memory; the fit is
    // deterministic, so this reproduces the scored model bit-for-bit.
    out.model = fit(dtm, out.config);
    return out;
}

}  // namespace epitopic
