#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "epitopic/lda.hpp"

// Topic-count selection by C_v coherence: boolean sliding-window
// co-occurrence probabilities, NPMI similarities, one-set segmentation with
// cosine confirmation, aggregated by the arithmetic mean.

namespace epitopic {

struct CoherenceConfig {
    std::int32_t top_t = 20;     // top terms per topic entering the score
    std::int32_t window = 110;   // sliding-window width (tokens)
    double epsilon = 1e-12;      // smoothing inside the NPMI logarithm
    void validate() const;
};

// Boolean sliding-window occurrence probabilities. A document shorter than
// the window contributes a single window; otherwise every stride-1 window
// counts once. P(w) = windows containing w / total windows; P(wi, wj)
// likewise for joint containment.
class WindowProbabilities {
public:
    std::int64_t total_windows() const { return total_windows_; }
    double probability(const std::string& w) const;
    double joint_probability(const std::string& a, const std::string& b) const;

private:
    friend WindowProbabilities window_counts(
        const std::vector<std::vector<std::string>>& docs, std::int32_t window,
        const std::unordered_set<std::string>* vocabulary_of_interest, int threads);

    std::int64_t total_windows_ = 0;
    std::unordered_map<std::string, std::int32_t> ids_;
    std::vector<std::int64_t> marginal_;
    std::unordered_map<std::uint64_t, std::int64_t> joint_;  // key: lo32|hi32 id pair
};

// Count window occurrences over tokenized documents. When
// `vocabulary_of_interest` is given, only those words are tracked (the
// usual case: the union of all topics' top terms).
WindowProbabilities window_counts(
    const std::vector<std::vector<std::string>>& docs, std::int32_t window,
    const std::unordered_set<std::string>* vocabulary_of_interest = nullptr,
    int threads = 1);

// Normalized pointwise mutual information from probabilities:
//   npmi = log((p_joint + eps) / (p_a * p_b)) / -log(p_joint + eps)
// Zero marginals yield 0 by convention; the result is clamped to at most 1
// (epsilon smoothing can otherwise overshoot by a few ulps).
double npmi_value(double p_a, double p_b, double p_joint, double epsilon);

double npmi(const std::string& a, const std::string& b,
            const WindowProbabilities& probs, double epsilon);

// C_v coherence of one word set: context vectors of NPMI values against the
// set, compared to the summed reference vector by cosine similarity, then
// averaged. Zero-norm vectors contribute 0.
double cv_coherence(const std::vector<std::string>& top_words,
                    const WindowProbabilities& probs, double epsilon);

// Mean C_v over all topics of a fitted model; per-topic scores optional out.
double model_coherence(const LdaModel& model, const Vocabulary& vocab,
                       const WindowProbabilities& probs, const CoherenceConfig& cfg,
                       std::vector<double>* per_topic = nullptr);

struct CoherenceReport {
    std::vector<std::pair<std::int32_t, double>> scores;  // (K, mean C_v) sorted by K
    std::int32_t selected_k = 0;  // highest score; smaller K wins exact ties
    std::vector<double> selected_per_topic;
};

struct SweepResult {
    CoherenceReport report;
    LdaModel model;      // refit of the winning K
    LdaConfig config;    // configuration the winner used (incl. derived seed)
};

// Deterministic per-candidate seed for a sweep.
std::uint64_t seed_for_k(std::uint64_t master_seed, std::int32_t k);

// Fit every candidate K (each from its own seed substream), score mean C_v
// on the coherence token streams, pick the maximum (exact ties go to the
// smaller K). Candidates must be distinct; they can run in parallel and the
// result is independent of scheduling.
SweepResult sweep(const DocTermMatrix& dtm,
                  const std::vector<std::vector<std::string>>& coherence_docs,
                  const Vocabulary& vocab, const std::vector<std::int32_t>& candidates,
                  const LdaConfig& base, const CoherenceConfig& coherence_cfg,
                  int threads = 1);

}  // namespace epitopic
