#pragma once

#include <cstdint>
#include <vector>

#include "epitopic/emotion.hpp"

// One-tailed two-proportion z-tests for topic-emotion enrichment.

namespace epitopic {

// Standard normal survival function P(Z > z), accurate to ~1e-15 via the
// complementary error function.
double normal_sf(double z);

struct ZTestResult {
    double z = 0.0;
    double p_value = 1.0;  // one-tailed, H1: p1 > p2
    bool significant = false;
    std::int64_t successes1 = 0, trials1 = 0;
    std::int64_t successes2 = 0, trials2 = 0;

    double p1() const {
        return trials1 ? static_cast<double>(successes1) / static_cast<double>(trials1) : 0.0;
    }
    double p2() const {
        return trials2 ? static_cast<double>(successes2) / static_cast<double>(trials2) : 0.0;
    }
};

// Pooled two-proportion z-test, one-tailed (H1: p1 > p2).
//   z = (p1 - p2) / sqrt(pp * (1 - pp) * (1/n1 + 1/n2)), pp pooled
// Degenerate pooled proportions (0 or 1) give z = 0, p = 0.5. Requires
// n1, n2 >= 1 and 0 <= x <= n in each group.
ZTestResult two_proportion_z(std::int64_t successes1, std::int64_t trials1,
                             std::int64_t successes2, std::int64_t trials2,
                             double alpha = 0.001);

struct SignificanceCell {
    std::int32_t topic = 0;  // zero-based
    EmotionLabel emotion = EmotionLabel::kNeutral;
    double proportion = 0.0;  // emotion share within the topic
    ZTestResult test;         // topic vs. all other topics pooled
};

// For every (topic, non-neutral emotion) pair, test whether the emotion is
// over-represented among the topic's tweets relative to all other topics
// pooled. Cells are ordered topic-major, then emotion enum order. A table
// with fewer than two topics has nothing to compare: empty grid.
std::vector<SignificanceCell> significance_grid(const TopicEmotionTable& table,
                                                double alpha = 0.001);

}  // namespace epitopic
