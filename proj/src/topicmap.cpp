#include "epitopic/topicmap.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "epitopic/error.hpp"
#include "epitopic/log.hpp"

namespace epitopic {

namespace {

constexpr double kDistributionTolerance = 1e-9;

void check_distribution(std::span<const double> p, const char* which) {
    double sum = 0.0;
    for (double v : p) {
        require(v >= 0.0, std::string("jsd: ") + which + " has a negative entry");
        sum += v;
    }
    require(std::abs(sum - 1.0) <= kDistributionTolerance,
            std::string("jsd: ") + which + " does not sum to 1");
}

std::vector<std::vector<double>> jsd_matrix(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = jsd(rows[i], rows[j]);
            dist[i][j] = d;
            dist[j][i] = d;
        }
    }
    return dist;
}

}  // namespace

double jsd(std::span<const double> p, std::span<const double> q) {
    require(p.size() == q.size(), "jsd: distributions differ in length");
    require(!p.empty(), "jsd: empty distributions");
    check_distribution(p, "p");
    check_distribution(q, "q");
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        double m = 0.5 * (p[i] + q[i]);
        if (p[i] > 0.0) total += 0.5 * p[i] * std::log2(p[i] / m);
        if (q[i] > 0.0) total += 0.5 * q[i] * std::log2(q[i] / m);
    }
    // Mathematically in [0, 1] for base-2 logs; clamp away rounding noise.
    return std::min(1.0, std::max(0.0, total));
}

std::vector<std::vector<double>> distance_matrix(const LdaModel& model) {
    require(model.num_topics >= 1, "distance_matrix: model has no topics");
    return jsd_matrix(model.phi);
}

std::vector<std::vector<double>> classical_mds(
    const std::vector<std::vector<double>>& distances, std::int32_t dims) {
    const std::size_t n = distances.size();
    require(n >= 1, "classical_mds: empty distance matrix");
    require(dims >= 1, "classical_mds: dims must be >= 1");
    for (const auto& row : distances)
        require(row.size() == n, "classical_mds: distance matrix is not square");

    // B = -1/2 * J * (D o D) * J, J the centering matrix.
    Eigen::MatrixXd sq(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            sq(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                distances[i][j] * distances[i][j];
    Eigen::MatrixXd centering =
        Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))
            .array() -
        1.0 / static_cast<double>(n);
    Eigen::MatrixXd b = -0.5 * centering * sq * centering;
    // Symmetrize against rounding so the solver sees an exact symmetric input.
    b = 0.5 * (b + b.transpose()).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
    require(solver.info() == Eigen::Success, "classical_mds: eigendecomposition failed");
    // Eigenvalues come out ascending; we want the largest `dims`. Axes past
    // the available rank stay zero.
    std::vector<std::vector<double>> coords(n, std::vector<double>(static_cast<std::size_t>(dims), 0.0));
    const std::int32_t usable = std::min<std::int32_t>(dims, static_cast<std::int32_t>(n));
    for (std::int32_t d = 0; d < usable; ++d) {
        Eigen::Index col = static_cast<Eigen::Index>(n) - 1 - d;
        double eigenvalue = solver.eigenvalues()(col);
        if (eigenvalue < -1e-9)
            log_warn("classical_mds: clamping negative eigenvalue " +
                     std::to_string(eigenvalue) + " (non-Euclidean distances)");
        double scale = std::sqrt(std::max(0.0, eigenvalue));
        for (std::size_t i = 0; i < n; ++i)
            coords[i][static_cast<std::size_t>(d)] =
                solver.eigenvectors()(static_cast<Eigen::Index>(i), col) * scale;
        // Sign convention: largest-magnitude coordinate positive.
        std::size_t arg = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs(coords[i][static_cast<std::size_t>(d)]) >
                std::abs(coords[arg][static_cast<std::size_t>(d)]))
                arg = i;
        if (coords[arg][static_cast<std::size_t>(d)] < 0.0)
            for (std::size_t i = 0; i < n; ++i)
                coords[i][static_cast<std::size_t>(d)] = -coords[i][static_cast<std::size_t>(d)];
    }
    return coords;
}

TopicMap build_map(const std::vector<std::vector<double>>& phi,
                   const std::vector<std::vector<double>>& theta,
                   const std::vector<std::int64_t>& doc_token_counts) {
    const std::size_t k_topics = phi.size();
    require(k_topics >= 1, "build_map: need at least one topic");
    require(theta.size() == doc_token_counts.size(),
            "build_map: theta and token counts disagree on document count");

    TopicMap map;
    map.prevalence.assign(k_topics, 0.0);
    double total_tokens = 0.0;
    for (std::size_t d = 0; d < theta.size(); ++d) {
        require(theta[d].size() == k_topics, "build_map: theta row has wrong width");
        double n_d = static_cast<double>(doc_token_counts[d]);
        for (std::size_t k = 0; k < k_topics; ++k)
            map.prevalence[k] += n_d * theta[d][k];
        total_tokens += n_d;
    }
    require(total_tokens > 0.0, "build_map: corpus has no tokens");
    for (double& p : map.prevalence) p /= total_tokens;

    auto distances = jsd_matrix(phi);
    auto coords = classical_mds(distances, 2);
    map.coords.resize(k_topics);
    for (std::size_t k = 0; k < k_topics; ++k)
        map.coords[k] = {coords[k][0], coords[k][1]};

    // Residual distortion: Kruskal stress-1 between embedded Euclidean and
    // original JSD distances (0 = exact).
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < k_topics; ++i) {
        for (std::size_t j = i + 1; j < k_topics; ++j) {
            double dx = map.coords[i][0] - map.coords[j][0];
            double dy = map.coords[i][1] - map.coords[j][1];
            double embedded = std::sqrt(dx * dx + dy * dy);
            double target = distances[i][j];
            num += (embedded - target) * (embedded - target);
            den += target * target;
        }
    }
    map.stress = den > 0.0 ? std::sqrt(num / den) : 0.0;

    // Radius r_k = r0 * sqrt(prevalence_k), r0 chosen so the largest marker
    // spans 0.15 of the plot's half-extent.
    double half_extent = 0.0;
    for (std::size_t dim = 0; dim < 2; ++dim) {
        double lo = map.coords[0][dim], hi = lo;
        for (const auto& c : map.coords) {
            lo = std::min(lo, c[dim]);
            hi = std::max(hi, c[dim]);
        }
        half_extent = std::max(half_extent, 0.5 * (hi - lo));
    }
    if (half_extent <= 0.0) half_extent = 1.0;  // all points coincide
    double max_prev = *std::max_element(map.prevalence.begin(), map.prevalence.end());
    double r0 = max_prev > 0.0 ? 0.15 * half_extent / std::sqrt(max_prev) : 0.0;
    map.radii.resize(k_topics);
    for (std::size_t k = 0; k < k_topics; ++k)
        map.radii[k] = r0 * std::sqrt(map.prevalence[k]);

    for (std::size_t i = 0; i < k_topics; ++i) {
        for (std::size_t j = i + 1; j < k_topics; ++j) {
            double dx = map.coords[i][0] - map.coords[j][0];
            double dy = map.coords[i][1] - map.coords[j][1];
            double gap = std::sqrt(dx * dx + dy * dy);
            if (gap < map.radii[i] + map.radii[j])
                map.overlaps.emplace_back(static_cast<std::int32_t>(i),
                                          static_cast<std::int32_t>(j));
        }
    }
    return map;
}

TopicMap build_map(const LdaModel& model) {
    std::vector<std::int64_t> doc_tokens(model.num_docs(), 0);
    for (std::size_t d = 0; d < model.num_docs(); ++d) {
        std::int64_t n = 0;
        for (std::int32_t c : model.doc_topic_counts[d]) n += c;
        doc_tokens[d] = n;
    }
    return build_map(model.phi, model.theta, doc_tokens);
}

}  // namespace epitopic
