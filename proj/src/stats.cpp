#include "epitopic/stats.hpp"

#include <cmath>

#include "epitopic/error.hpp"

namespace epitopic {

double normal_sf(double z) {
    require(std::isfinite(z), "normal_sf: z must be finite");
    return 0.5 * std::erfc(z / std::sqrt(2.0));
}

ZTestResult two_proportion_z(std::int64_t successes1, std::int64_t trials1,
                             std::int64_t successes2, std::int64_t trials2,
                             double alpha) {
    require(trials1 >= 1 && trials2 >= 1, "two_proportion_z: empty group");
    require(successes1 >= 0 && successes1 <= trials1,
            "two_proportion_z: successes1 out of range");
    require(successes2 >= 0 && successes2 <= trials2,
            "two_proportion_z: successes2 out of range");
    require(alpha > 0.0 && alpha < 1.0, "two_proportion_z: alpha must lie in (0, 1)");

    ZTestResult r;
    r.successes1 = successes1;
    r.trials1 = trials1;
    r.successes2 = successes2;
    r.trials2 = trials2;

    double n1 = static_cast<double>(trials1);
    double n2 = static_cast<double>(trials2);
    double pooled = (static_cast<double>(successes1) + static_cast<double>(successes2)) /
                    (n1 + n2);
    double var = pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2);
    if (var <= 0.0) {
        // All successes or all failures in both groups: no evidence either way.
        r.z = 0.0;
        r.p_value = 0.5;
    } else {
        r.z = (r.p1() - r.p2()) / std::sqrt(var);
        r.p_value = normal_sf(r.z);
    }
    // One-tailed "greater": both the p-value and the raw direction must agree,
    // which keeps permissive alphas (> 0.5) from starring reversed contrasts.
    r.significant = r.p_value < alpha && r.p1() > r.p2();
    return r;
}

std::vector<SignificanceCell> significance_grid(const TopicEmotionTable& table,
                                                double alpha) {
    // A single topic leaves nothing to contrast against.
    if (table.num_topics < 2) return {};
    std::array<std::int64_t, kNumEmotionLabels> grand_counts{};
    std::int64_t grand_total = 0;
    for (std::int32_t t = 0; t < table.num_topics; ++t) {
        for (std::size_t e = 0; e < kNumEmotionLabels; ++e)
            grand_counts[e] += table.counts[static_cast<std::size_t>(t)][e];
        grand_total += table.totals[static_cast<std::size_t>(t)];
    }

    std::vector<SignificanceCell> cells;
    cells.reserve(static_cast<std::size_t>(table.num_topics) * kNumBasicEmotions);
    for (std::int32_t t = 0; t < table.num_topics; ++t) {
        std::int64_t n1 = table.totals[static_cast<std::size_t>(t)];
        std::int64_t n2 = grand_total - n1;
        for (std::size_t e = 0; e < kNumBasicEmotions; ++e) {
            SignificanceCell cell;
            cell.topic = t;
            cell.emotion = static_cast<EmotionLabel>(e);
            std::int64_t x1 = table.counts[static_cast<std::size_t>(t)][e];
            std::int64_t x2 = grand_counts[e] - x1;
            cell.proportion =
                n1 ? static_cast<double>(x1) / static_cast<double>(n1) : 0.0;
            if (n1 >= 1 && n2 >= 1) {
                cell.test = two_proportion_z(x1, n1, x2, n2, alpha);
            } else {
                // A topic holding all (or none of) the corpus cannot be
                // contrasted with the rest; report the degenerate result.
                cell.test.successes1 = x1;
                cell.test.trials1 = n1;
                cell.test.successes2 = x2;
                cell.test.trials2 = n2;
                cell.test.z = 0.0;
                cell.test.p_value = 0.5;
                cell.test.significant = false;
            }
            cells.push_back(cell);
        }
    }
    return cells;
}

}  // namespace epitopic
