#include <array>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "epitopic/error.hpp"
#include "epitopic/topicmap.hpp"

using namespace epitopic;

namespace {

double dist2d(const std::vector<double>& a, const std::vector<double>& b) {
    return std::hypot(a[0] - b[0], a[1] - b[1]);
}

}  // namespace

TEST_SUITE("topicmap") {

TEST_CASE("jsd frozen values, symmetry and bounds") {
    std::vector<double> p = {0.5, 0.5}, q = {0.9, 0.1};
    CHECK(jsd(p, q) == doctest::Approx(0.14679310243605200759).epsilon(1e-13));
    CHECK(jsd(q, p) == doctest::Approx(jsd(p, q)).epsilon(1e-15));
    CHECK(jsd(p, p) == 0.0);

    std::vector<double> e0 = {1.0, 0.0}, e1 = {0.0, 1.0};
    CHECK(jsd(e0, e1) == 1.0);  // disjoint supports, exactly

    std::vector<double> u = {0.25, 0.25, 0.25, 0.25}, v = {0.7, 0.1, 0.1, 0.1};
    double d = jsd(u, v);
    CHECK(d > 0.0);
    CHECK(d < 1.0);
}

TEST_CASE("jsd rejects malformed distributions") {
    std::vector<double> p = {0.5, 0.5}, short_q = {1.0};
    CHECK_THROWS_AS(jsd(p, short_q), Error);
    std::vector<double> not_normalized = {0.9, 0.9};
    CHECK_THROWS_AS(jsd(p, not_normalized), Error);
}

TEST_CASE("distance_matrix is symmetric with a zero diagonal") {
    LdaModel model;
    model.num_topics = 3;
    model.num_terms = 2;
    model.phi = {{1.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}};
    auto d = distance_matrix(model);
    REQUIRE(d.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(d[i][i] == 0.0);
        for (int j = 0; j < 3; ++j) CHECK(d[i][j] == d[j][i]);
    }
    CHECK(d[0][1] == 1.0);
    CHECK(d[0][2] == doctest::Approx(jsd(model.phi[0], model.phi[2])).epsilon(1e-15));
}

TEST_CASE("classical_mds reproduces an equilateral triangle") {
    double s = 1.0;
    std::vector<std::vector<double>> d = {
        {0, s, s},
        {s, 0, s},
        {s, s, 0},
    };
    auto pts = classical_mds(d, 2);
    REQUIRE(pts.size() == 3);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            CHECK(dist2d(pts[i], pts[j]) == doctest::Approx(s).epsilon(1e-9));
}

TEST_CASE("classical_mds recovers a planar four-point configuration") {
    // A unit square: distances 1 on edges, sqrt(2) on diagonals.
    const double r2 = std::sqrt(2.0);
    std::vector<std::vector<double>> d = {
        {0, 1, r2, 1},
        {1, 0, 1, r2},
        {r2, 1, 0, 1},
        {1, r2, 1, 0},
    };
    auto pts = classical_mds(d, 2);
    REQUIRE(pts.size() == 4);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            CHECK(dist2d(pts[i], pts[j]) == doctest::Approx(d[i][j]).epsilon(1e-6));
    // Sign convention: each dimension's largest-magnitude coordinate is
    // positive, making the embedding fully deterministic.
    for (int dim = 0; dim < 2; ++dim) {
        double best = 0.0;
        for (const auto& p : pts)
            if (std::fabs(p[dim]) > std::fabs(best)) best = p[dim];
        CHECK(best >= 0.0);
    }
}

TEST_CASE("classical_mds zero-pads rank-deficient requests") {
    // Two points can only span one dimension.
    std::vector<std::vector<double>> d = {{0, 2}, {2, 0}};
    auto pts = classical_mds(d, 2);
    REQUIRE(pts.size() == 2);
    CHECK(std::fabs(dist2d(pts[0], pts[1]) - 2.0) < 1e-9);
    CHECK(pts[0][1] == 0.0);
    CHECK(pts[1][1] == 0.0);

    auto wide = classical_mds(d, 5);  // dims > points
    REQUIRE(wide[0].size() == 5);
    for (const auto& p : wide)
        for (std::size_t k = 1; k < 5; ++k) CHECK(p[k] == 0.0);
}

TEST_CASE("classical_mds clamps non-Euclidean negative eigenvalues") {
    // Distances violating the triangle inequality cannot embed exactly; the
    // solver must still return finite coordinates.
    std::vector<std::vector<double>> d = {
        {0, 10, 1},
        {10, 0, 1},
        {1, 1, 0},
    };
    auto pts = classical_mds(d, 2);
    REQUIRE(pts.size() == 3);
    for (const auto& p : pts)
        for (double c : p) CHECK(std::isfinite(c));
}

TEST_CASE("build_map on a single topic centers it at the origin") {
    LdaModel model;
    model.num_topics = 1;
    model.num_terms = 2;
    model.phi = {{0.5, 0.5}};
    model.theta = {{1.0}};
    auto map = build_map(model.phi, model.theta, {4});
    REQUIRE(map.coords.size() == 1);
    CHECK(map.coords[0][0] == 0.0);
    CHECK(map.coords[0][1] == 0.0);
    CHECK(map.prevalence[0] == 1.0);
    CHECK(map.overlaps.empty());
}

TEST_CASE("prevalence weights theta by document token mass") {
    std::vector<std::vector<double>> phi = {{1.0, 0.0}, {0.0, 1.0}};
    // Doc 0 (9 tokens) is pure topic 0; doc 1 (1 token) is pure topic 1.
    std::vector<std::vector<double>> theta = {{1.0, 0.0}, {0.0, 1.0}};
    auto map = build_map(phi, theta, {9, 1});
    CHECK(map.prevalence[0] == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(map.prevalence[1] == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(map.prevalence[0] + map.prevalence[1] == doctest::Approx(1.0).epsilon(1e-12));
    // Radii grow with prevalence; the largest is pinned to the 0.15 cap.
    CHECK(map.radii[0] > map.radii[1]);
    double half_extent = 0.0;
    for (const auto& c : map.coords)
        for (double x : c) half_extent = std::max(half_extent, std::fabs(x));
    CHECK(map.radii[0] == doctest::Approx(0.15 * half_extent).epsilon(1e-12));
}

TEST_CASE("duplicate topics land on the same point and overlap") {
    std::vector<std::vector<double>> phi = {{0.7, 0.3}, {0.7, 0.3}, {0.0, 1.0}};
    std::vector<std::vector<double>> theta = {
        {0.4, 0.4, 0.2}, {0.3, 0.3, 0.4}, {0.5, 0.3, 0.2}};
    auto map = build_map(phi, theta, {5, 5, 5});
    CHECK(dist2d({map.coords[0][0], map.coords[0][1]},
                 {map.coords[1][0], map.coords[1][1]}) < 1e-6);
    REQUIRE(map.overlaps.size() == 1);
    CHECK(map.overlaps[0].first == 0);
    CHECK(map.overlaps[0].second == 1);
}

TEST_CASE("uniform theta gives equal radii and zero-ish stress for 2 topics") {
    std::vector<std::vector<double>> phi = {{1.0, 0.0}, {0.0, 1.0}};
    std::vector<std::vector<double>> theta = {{0.5, 0.5}, {0.5, 0.5}};
    auto map = build_map(phi, theta, {3, 3});
    CHECK(map.radii[0] == doctest::Approx(map.radii[1]).epsilon(1e-12));
    CHECK(map.prevalence[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(map.stress == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("build_map from a fitted model matches the explicit-input overload") {
    DocTermMatrix dtm;
    dtm.num_terms = 4;
    dtm.rows = {{{0, 3}, {1, 1}}, {{2, 2}, {3, 2}}, {{0, 1}, {3, 1}}};
    dtm.doc_ids = {"a", "b", "c"};
    dtm.doc_dates = {0, 0, 0};
    LdaConfig cfg;
    cfg.num_topics = 2;
    cfg.iterations = 20;
    cfg.burn_in = 10;
    auto model = fit(dtm, cfg);
    auto from_model = build_map(model);
    std::vector<std::int64_t> counts;
    for (std::size_t d = 0; d < dtm.num_docs(); ++d)
        counts.push_back(dtm.row_token_count(d));
    auto explicit_map = build_map(model.phi, model.theta, counts);
    CHECK(from_model.coords == explicit_map.coords);
    CHECK(from_model.prevalence == explicit_map.prevalence);
    CHECK(from_model.radii == explicit_map.radii);
    CHECK(from_model.stress == explicit_map.stress);
}

}  // TEST_SUITE
