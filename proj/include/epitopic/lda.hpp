#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "epitopic/textprep.hpp"

// Latent Dirichlet allocation via collapsed Gibbs sampling.

namespace epitopic {

struct LdaConfig {
    std::int32_t num_topics = 10;
    double alpha = 0.0;  // <= 0 selects the 50/K default
    double beta = 0.01;
    std::int32_t iterations = 1000;   // full Gibbs sweeps
    std::int32_t burn_in = 500;       // sweeps discarded before averaging
    std::int32_t sample_every = 10;   // thinning interval for retained samples
    std::uint64_t seed = 42;

    double effective_alpha() const {
        return alpha > 0.0 ? alpha : 50.0 / static_cast<double>(num_topics);
    }
    void validate() const;
};

struct LdaModel {
    std::int32_t num_topics = 0;
    std::int32_t num_terms = 0;
    double alpha = 0.0;
    double beta = 0.0;
    std::uint64_t seed = 0;

    // Posterior mean estimates averaged over retained samples.
    std::vector<std::vector<double>> phi;    // num_topics x num_terms
    std::vector<std::vector<double>> theta;  // num_docs x num_topics

    // Final Gibbs state: per-token topic labels (row d's tokens expanded in
    // ascending term order; empty rows give empty lists) and count tables.
    std::vector<std::vector<std::int32_t>> assignments;        // D x tokens(d)
    std::vector<std::int64_t> topic_counts;                    // n_k
    std::vector<std::vector<std::int32_t>> topic_term_counts;  // K x V
    std::vector<std::vector<std::int32_t>> doc_topic_counts;   // D x K

    std::size_t num_docs() const { return theta.size(); }
};

// Unnormalized full-conditional weights for one token of word `w` with its
// current assignment already removed from the counts:
//   weight(k) = (n_dk + alpha) * (n_kw + beta) / (n_k + V * beta)
// Exposed so the sampler's arithmetic can be tested directly.
std::vector<double> gibbs_topic_weights(const std::vector<std::int32_t>& doc_topic,
                                        const std::vector<std::int32_t>& topic_word_w,
                                        const std::vector<std::int64_t>& topic_counts,
                                        double alpha, double beta,
                                        std::int32_t num_terms);

// Run the collapsed Gibbs sampler. Deterministic for a fixed (dtm, config):
// documents are visited in lexicographic doc-id order and each document
// draws from its own seed-derived RNG substream, so reordering rows does not
// change any per-document result. Documents with no in-vocabulary tokens get
// uniform theta rows and are skipped by the sampler.
LdaModel fit(const DocTermMatrix& dtm, const LdaConfig& cfg);

// Predictive log-likelihood of the counts under the point estimates:
//   sum over (d, w) of count * log(sum_k theta[d][k] * phi[k][w])
// Higher is better; used for convergence sanity checks.
double log_likelihood(const LdaModel& model, const DocTermMatrix& dtm);

// Top `count` terms of one topic by descending phi (ties lexicographic).
// When `bigrams_only`, unigram terms are filtered out first.
std::vector<std::pair<std::string, double>> top_terms(const LdaModel& model,
                                                      const Vocabulary& vocab,
                                                      std::int32_t topic,
                                                      std::int32_t count,
                                                      bool bigrams_only = false);

struct DominantTopics {
    // Per document: argmax_k theta[d][k] (first index wins ties), or -1 for
    // documents with no tokens.
    std::vector<std::int32_t> per_doc;
    std::vector<std::int64_t> topic_sizes;  // documents per topic
    std::int64_t skipped_docs = 0;          // documents with no tokens
};

DominantTopics dominant_topics(const LdaModel& model, const DocTermMatrix& dtm);

struct TopicSummary {
    std::int32_t topic_index = 0;
    std::vector<std::pair<std::string, double>> top_terms;  // descending phi
    std::int64_t tweet_count = 0;  // documents whose dominant topic is this one
};

std::vector<TopicSummary> topic_summaries(const LdaModel& model,
                                          const Vocabulary& vocab,
                                          const DocTermMatrix& dtm,
                                          std::int32_t terms_per_topic,
                                          bool bigrams_only = false);

}  // namespace epitopic
