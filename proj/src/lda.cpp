#include "epitopic/lda.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "epitopic/error.hpp"
#include "epitopic/log.hpp"
#include "epitopic/rng.hpp"

namespace epitopic {

void LdaConfig::validate() const {
    require(num_topics >= 1, "lda: num_topics must be >= 1");
    require(beta > 0.0, "lda: beta must be positive");
    require(alpha >= 0.0, "lda: alpha must be >= 0 (0 selects 50/K)");
    require(iterations >= 1, "lda: iterations must be >= 1");
    require(burn_in >= 0 && burn_in < iterations,
            "lda: burn_in must lie in [0, iterations)");
    require(sample_every >= 1, "lda: sample_every must be >= 1");
}

std::vector<double> gibbs_topic_weights(const std::vector<std::int32_t>& doc_topic,
                                        const std::vector<std::int32_t>& topic_word_w,
                                        const std::vector<std::int64_t>& topic_counts,
                                        double alpha, double beta,
                                        std::int32_t num_terms) {
    std::size_t k_count = doc_topic.size();
    require(topic_word_w.size() == k_count && topic_counts.size() == k_count,
            "gibbs_topic_weights: count vectors must share one length");
    require(num_terms >= 1, "gibbs_topic_weights: num_terms must be >= 1");
    std::vector<double> weights(k_count);
    double v_beta = static_cast<double>(num_terms) * beta;
    for (std::size_t k = 0; k < k_count; ++k) {
        weights[k] = (static_cast<double>(doc_topic[k]) + alpha) *
                     (static_cast<double>(topic_word_w[k]) + beta) /
                     (static_cast<double>(topic_counts[k]) + v_beta);
    }
    return weights;
}

LdaModel fit(const DocTermMatrix& dtm, const LdaConfig& cfg) {
    cfg.validate();
    const std::int32_t v_terms = dtm.num_terms;
    require(v_terms >= 1, "lda: empty vocabulary");
    const std::size_t d_docs = dtm.num_docs();
    require(d_docs >= 1, "lda: empty corpus");
    {
        bool any_tokens = false;
        for (std::size_t d = 0; d < d_docs && !any_tokens; ++d)
            any_tokens = !dtm.rows[d].empty();
        require(any_tokens, "lda: no document has in-vocabulary tokens");
    }
    const std::int32_t k_topics = cfg.num_topics;
    const double alpha = cfg.effective_alpha();
    const double beta = cfg.beta;
    const double v_beta = static_cast<double>(v_terms) * beta;
    const double k_alpha = static_cast<double>(k_topics) * alpha;
    if (v_terms < k_topics)
        log_warn("lda: more topics (" + std::to_string(k_topics) + ") than terms (" +
                 std::to_string(v_terms) + ")");

    // Expand sparse rows into flat token lists (term ids in ascending order).
    std::vector<std::vector<std::int32_t>> tokens(d_docs);
    for (std::size_t d = 0; d < d_docs; ++d) {
        auto& list = tokens[d];
        list.reserve(static_cast<std::size_t>(dtm.row_token_count(d)));
        for (auto [term, count] : dtm.rows[d])
            for (std::int32_t c = 0; c < count; ++c) list.push_back(term);
    }

    // Canonical visitation order: lexicographic doc id (row index breaks
    // exact duplicates). Combined with per-document RNG substreams this
    // makes the fit invariant under row permutations.
    std::vector<std::size_t> order;
    order.reserve(d_docs);
    for (std::size_t d = 0; d < d_docs; ++d)
        if (!tokens[d].empty()) order.push_back(d);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (dtm.doc_ids[a] != dtm.doc_ids[b]) return dtm.doc_ids[a] < dtm.doc_ids[b];
        return a < b;
    });

    std::vector<Xoshiro256> streams;
    streams.reserve(d_docs);
    for (std::size_t d = 0; d < d_docs; ++d)
        streams.emplace_back(mix_seed(cfg.seed, fnv1a64(dtm.doc_ids[d])));

    // Gibbs count tables (flat row-major).
    std::vector<std::int32_t> n_dk(d_docs * static_cast<std::size_t>(k_topics), 0);
    std::vector<std::int32_t> n_kw(static_cast<std::size_t>(k_topics) *
                                       static_cast<std::size_t>(v_terms),
                                   0);
    std::vector<std::int64_t> n_k(static_cast<std::size_t>(k_topics), 0);
    std::vector<std::vector<std::int32_t>> z(d_docs);

    for (std::size_t idx : order) {
        auto& rng = streams[idx];
        auto& zs = z[idx];
        zs.resize(tokens[idx].size());
        for (std::size_t t = 0; t < tokens[idx].size(); ++t) {
            auto k = static_cast<std::int32_t>(
                rng.next_below(static_cast<std::uint64_t>(k_topics)));
            zs[t] = k;
            ++n_dk[idx * static_cast<std::size_t>(k_topics) + static_cast<std::size_t>(k)];
            ++n_kw[static_cast<std::size_t>(k) * static_cast<std::size_t>(v_terms) +
                   static_cast<std::size_t>(tokens[idx][t])];
            ++n_k[static_cast<std::size_t>(k)];
        }
    }

    std::vector<double> weights(static_cast<std::size_t>(k_topics));
    std::vector<double> phi_acc(n_kw.size(), 0.0);
    std::vector<double> theta_acc(n_dk.size(), 0.0);
    std::vector<std::int64_t> n_d(d_docs, 0);
    for (std::size_t d = 0; d < d_docs; ++d)
        n_d[d] = static_cast<std::int64_t>(tokens[d].size());
    std::int32_t samples = 0;

    auto take_sample = [&] {
        for (std::int32_t k = 0; k < k_topics; ++k) {
            double denom = static_cast<double>(n_k[static_cast<std::size_t>(k)]) + v_beta;
            std::size_t base = static_cast<std::size_t>(k) * static_cast<std::size_t>(v_terms);
            for (std::int32_t w = 0; w < v_terms; ++w)
                phi_acc[base + static_cast<std::size_t>(w)] +=
                    (static_cast<double>(n_kw[base + static_cast<std::size_t>(w)]) + beta) /
                    denom;
        }
        for (std::size_t d = 0; d < d_docs; ++d) {
            double denom = static_cast<double>(n_d[d]) + k_alpha;
            std::size_t base = d * static_cast<std::size_t>(k_topics);
            for (std::int32_t k = 0; k < k_topics; ++k)
                theta_acc[base + static_cast<std::size_t>(k)] +=
                    (static_cast<double>(n_dk[base + static_cast<std::size_t>(k)]) + alpha) /
                    denom;
        }
        ++samples;
    };

    for (std::int32_t sweep = 1; sweep <= cfg.iterations; ++sweep) {
        for (std::size_t idx : order) {
            auto& rng = streams[idx];
            auto& zs = z[idx];
            const auto& toks = tokens[idx];
            std::size_t dk_base = idx * static_cast<std::size_t>(k_topics);
            for (std::size_t t = 0; t < toks.size(); ++t) {
                std::int32_t w = toks[t];
                std::int32_t old_k = zs[t];
                --n_dk[dk_base + static_cast<std::size_t>(old_k)];
                --n_kw[static_cast<std::size_t>(old_k) * static_cast<std::size_t>(v_terms) +
                       static_cast<std::size_t>(w)];
                --n_k[static_cast<std::size_t>(old_k)];

                double total = 0.0;
                for (std::int32_t k = 0; k < k_topics; ++k) {
                    double wk =
                        (static_cast<double>(n_dk[dk_base + static_cast<std::size_t>(k)]) +
                         alpha) *
                        (static_cast<double>(
                             n_kw[static_cast<std::size_t>(k) *
                                      static_cast<std::size_t>(v_terms) +
                                  static_cast<std::size_t>(w)]) +
                         beta) /
                        (static_cast<double>(n_k[static_cast<std::size_t>(k)]) + v_beta);
                    weights[static_cast<std::size_t>(k)] = wk;
                    total += wk;
                }
                double u = rng.next_double() * total;
                std::int32_t new_k = k_topics - 1;
                double cum = 0.0;
                for (std::int32_t k = 0; k < k_topics; ++k) {
                    cum += weights[static_cast<std::size_t>(k)];
                    if (u < cum) {
                        new_k = k;
                        break;
                    }
                }
                zs[t] = new_k;
                ++n_dk[dk_base + static_cast<std::size_t>(new_k)];
                ++n_kw[static_cast<std::size_t>(new_k) * static_cast<std::size_t>(v_terms) +
                       static_cast<std::size_t>(w)];
                ++n_k[static_cast<std::size_t>(new_k)];
            }
        }
        if (sweep > cfg.burn_in && (sweep - cfg.burn_in) % cfg.sample_every == 0)
            take_sample();
    }
    if (samples == 0) {
        // Too few post-burn-in sweeps for the thinning interval; fall back
        // to the final state so estimates are still well-defined.
        log_warn("lda: no thinned samples fit in " +
                 std::to_string(cfg.iterations - cfg.burn_in) +
                 " post-burn-in sweeps; using final state");
        take_sample();
    }

    LdaModel model;
    model.num_topics = k_topics;
    model.num_terms = v_terms;
    model.alpha = alpha;
    model.beta = beta;
    model.seed = cfg.seed;
    model.phi.assign(static_cast<std::size_t>(k_topics),
                     std::vector<double>(static_cast<std::size_t>(v_terms)));
    for (std::int32_t k = 0; k < k_topics; ++k)
        for (std::int32_t w = 0; w < v_terms; ++w)
            model.phi[static_cast<std::size_t>(k)][static_cast<std::size_t>(w)] =
                phi_acc[static_cast<std::size_t>(k) * static_cast<std::size_t>(v_terms) +
                        static_cast<std::size_t>(w)] /
                samples;
    model.theta.assign(d_docs, std::vector<double>(static_cast<std::size_t>(k_topics)));
    for (std::size_t d = 0; d < d_docs; ++d)
        for (std::int32_t k = 0; k < k_topics; ++k)
            model.theta[d][static_cast<std::size_t>(k)] =
                theta_acc[d * static_cast<std::size_t>(k_topics) +
                          static_cast<std::size_t>(k)] /
                samples;
    model.assignments = std::move(z);
    model.topic_counts = n_k;
    model.topic_term_counts.assign(static_cast<std::size_t>(k_topics),
                                   std::vector<std::int32_t>(static_cast<std::size_t>(v_terms)));
    for (std::int32_t k = 0; k < k_topics; ++k)
        for (std::int32_t w = 0; w < v_terms; ++w)
            model.topic_term_counts[static_cast<std::size_t>(k)][static_cast<std::size_t>(w)] =
                n_kw[static_cast<std::size_t>(k) * static_cast<std::size_t>(v_terms) +
                     static_cast<std::size_t>(w)];
    model.doc_topic_counts.assign(d_docs,
                                  std::vector<std::int32_t>(static_cast<std::size_t>(k_topics)));
    for (std::size_t d = 0; d < d_docs; ++d)
        for (std::int32_t k = 0; k < k_topics; ++k)
            model.doc_topic_counts[d][static_cast<std::size_t>(k)] =
                n_dk[d * static_cast<std::size_t>(k_topics) + static_cast<std::size_t>(k)];
    return model;
}

double log_likelihood(const LdaModel& model, const DocTermMatrix& dtm) {
    require(model.num_terms == dtm.num_terms,
            "log_likelihood: model and matrix disagree on vocabulary size");
    require(model.num_docs() == dtm.num_docs(),
            "log_likelihood: model and matrix disagree on document count");
    double ll = 0.0;
    for (std::size_t d = 0; d < dtm.num_docs(); ++d) {
        const auto& theta_d = model.theta[d];
        for (auto [w, count] : dtm.rows[d]) {
            double p = 0.0;
            for (std::int32_t k = 0; k < model.num_topics; ++k)
                p += theta_d[static_cast<std::size_t>(k)] *
                     model.phi[static_cast<std::size_t>(k)][static_cast<std::size_t>(w)];
            ll += static_cast<double>(count) * std::log(p);
        }
    }
    require(std::isfinite(ll), "log_likelihood: non-finite result");
    return ll;
}

std::vector<std::pair<std::string, double>> top_terms(const LdaModel& model,
                                                      const Vocabulary& vocab,
                                                      std::int32_t topic,
                                                      std::int32_t count,
                                                      bool bigrams_only) {
    require(topic >= 0 && topic < model.num_topics, "top_terms: topic out of range");
    require(count >= 1, "top_terms: count must be >= 1");
    require(vocab.size() == model.num_terms,
            "top_terms: vocabulary size does not match the model");
    std::vector<std::int32_t> idx;
    idx.reserve(static_cast<std::size_t>(model.num_terms));
    for (std::int32_t w = 0; w < model.num_terms; ++w)
        if (!bigrams_only || vocab.is_bigram[static_cast<std::size_t>(w)]) idx.push_back(w);
    const auto& row = model.phi[static_cast<std::size_t>(topic)];
    std::sort(idx.begin(), idx.end(), [&](std::int32_t a, std::int32_t b) {
        double pa = row[static_cast<std::size_t>(a)];
        double pb = row[static_cast<std::size_t>(b)];
        if (pa != pb) return pa > pb;
        return vocab.terms[static_cast<std::size_t>(a)] <
               vocab.terms[static_cast<std::size_t>(b)];
    });
    if (idx.size() > static_cast<std::size_t>(count)) idx.resize(static_cast<std::size_t>(count));
    std::vector<std::pair<std::string, double>> out;
    out.reserve(idx.size());
    for (std::int32_t w : idx)
        out.emplace_back(vocab.terms[static_cast<std::size_t>(w)],
                         row[static_cast<std::size_t>(w)]);
    return out;
}

std::vector<TopicSummary> topic_summaries(const LdaModel& model,
                                          const Vocabulary& vocab,
                                          const DocTermMatrix& dtm,
                                          std::int32_t terms_per_topic,
                                          bool bigrams_only) {
    DominantTopics dom = dominant_topics(model, dtm);
    std::vector<TopicSummary> summaries;
    summaries.reserve(static_cast<std::size_t>(model.num_topics));
    for (std::int32_t k = 0; k < model.num_topics; ++k) {
        TopicSummary s;
        s.topic_index = k;
        s.top_terms = top_terms(model, vocab, k, terms_per_topic, bigrams_only);
        s.tweet_count = dom.topic_sizes[static_cast<std::size_t>(k)];
        summaries.push_back(std::move(s));
    }
    return summaries;
}

DominantTopics dominant_topics(const LdaModel& model, const DocTermMatrix& dtm) {
    require(model.num_docs() == dtm.num_docs(),
            "dominant_topics: model and matrix disagree on document count");
    DominantTopics result;
    result.per_doc.resize(model.num_docs());
    result.topic_sizes.assign(static_cast<std::size_t>(model.num_topics), 0);
    for (std::size_t d = 0; d < model.num_docs(); ++d) {
        if (dtm.empty_row(d)) {
            result.per_doc[d] = -1;
            ++result.skipped_docs;
            continue;
        }
        const auto& row = model.theta[d];
        std::int32_t best = 0;
        for (std::int32_t k = 1; k < model.num_topics; ++k)
            if (row[static_cast<std::size_t>(k)] > row[static_cast<std::size_t>(best)])
                best = k;
        result.per_doc[d] = best;
        ++result.topic_sizes[static_cast<std::size_t>(best)];
    }
    return result;
}

}  // namespace epitopic
