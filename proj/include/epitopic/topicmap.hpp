#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "epitopic/lda.hpp"

// Intertopic distance map: pairwise Jensen-Shannon divergence between topic
// word distributions, embedded into the plane by classical multidimensional
// scaling, with marker radii scaled by topic prevalence.

namespace epitopic {

// Jensen-Shannon divergence with base-2 logarithms; symmetric and bounded
// to [0, 1]. Inputs must be equal-length distributions (non-negative,
// summing to 1 within 1e-9).
double jsd(std::span<const double> p, std::span<const double> q);

// K x K symmetric JSD matrix over the model's topic-word rows.
std::vector<std::vector<double>> distance_matrix(const LdaModel& model);

// Classical (Torgerson) MDS: double-center the squared distances, take the
// top `dims` eigenpairs, scale by sqrt of the (clamped) eigenvalues. Each
// output dimension is sign-fixed so its largest-magnitude coordinate is
// positive. Rank-deficient inputs (including dims > number of points) yield
// zero columns.
std::vector<std::vector<double>> classical_mds(
    const std::vector<std::vector<double>>& distances, std::int32_t dims = 2);

struct TopicMap {
    std::vector<std::array<double, 2>> coords;  // per topic
    std::vector<double> prevalence;             // token-mass share, sums to 1
    std::vector<double> radii;
    // Marker pairs (i < j) whose circles overlap: distance < r_i + r_j.
    std::vector<std::pair<std::int32_t, std::int32_t>> overlaps;
    double stress = 0.0;  // Kruskal stress-1 residual (0 = exact embedding)
};

// Project a fitted model to the plane. Prevalence weights theta rows by
// document token counts; radii scale with sqrt(prevalence), normalized so
// the largest marker has radius 0.15 * (half the maximum coordinate extent).
TopicMap build_map(const LdaModel& model);

// As above but with explicit inputs (used when the model was reloaded
// without its count tables).
TopicMap build_map(const std::vector<std::vector<double>>& phi,
                   const std::vector<std::vector<double>>& theta,
                   const std::vector<std::int64_t>& doc_token_counts);

}  // namespace epitopic
