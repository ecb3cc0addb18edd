#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "corona/graph.hpp"
#include "corona/oracle.hpp"
#include "corona/structural.hpp"

using namespace corona;

namespace {

Graph corona_of(const Graph& seed, std::uint64_t m) {
    Graph g = seed;
    for (std::uint64_t i = 0; i < m; ++i) g = corona_product(g, seed);
    return g;
}

const std::vector<std::pair<std::string, Graph>>& seed_matrix() {
    static const std::vector<std::pair<std::string, Graph>> seeds = {
        {"K3", complete_graph(3)}, {"P3", path_graph(3)},     {"C4", cycle_graph(4)},
        {"S4", star_graph(4)},     {"K5", complete_graph(5)}, {"P1", path_graph(1)}};
    return seeds;
}

double p_at_least(const DistributionSeries& cum, double k) {
    for (const auto& pt : cum.points)
        if (pt.value >= k) return pt.p;
    return 0.0;
}

}  // namespace

TEST(Degrees, CountsMatchFormulaAcrossSeeds) {
    for (const auto& [name, seed] : seed_matrix())
        for (std::uint64_t m = 0; m <= 4; ++m) {
            if (node_count_formula(seed.node_count(), m) > 60000) continue;
            EXPECT_EQ(degree_counts(corona_of(seed, m)), degree_count_formula(seed, m)) << name << " m=" << m;
        }
}

TEST(Degrees, HistogramIsNormalized) {
    const DistributionSeries h = degree_histogram(corona_of(cycle_graph(4), 3));
    double total = 0;
    for (const auto& pt : h.points) total += pt.p;
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_FALSE(h.cumulative);
    EXPECT_EQ(h.population, 500u);
    const DistributionSeries f = degree_distribution_formula(cycle_graph(4), 3);
    ASSERT_EQ(f.points.size(), h.points.size());
    for (std::size_t i = 0; i < f.points.size(); ++i) {
        EXPECT_EQ(f.points[i].value, h.points[i].value);
        EXPECT_NEAR(f.points[i].p, h.points[i].p, 1e-15);
    }
}

TEST(Degrees, CumulativeLawOnTriangleSixSteps) {
    const Graph g = corona_of(complete_graph(3), 6);
    ASSERT_EQ(g.node_count(), 12288u);
    const DistributionSeries cum = cumulative_series(degree_histogram(g));
    EXPECT_TRUE(cum.cumulative);
    EXPECT_EQ(cum.points.front().p, 1.0);
    for (int j = 0; j <= 5; ++j) {
        const double k = 3 + 3 * j;
        EXPECT_NEAR(p_at_least(cum, k), cumulative_degree_formula_regular(3, 2, k), 1e-12) << "k=" << k;
        EXPECT_NEAR(p_at_least(cum, k), std::pow(4.0, -j), 1e-15);
    }
    // Seed nodes sit off the lattice at degree r + mn = 20.
    EXPECT_DOUBLE_EQ(p_at_least(cum, 20), 3.0 / 12288.0);
    const ExponentialFit fit = fit_exponential(cum);
    EXPECT_NEAR(fit.rate, std::log(4.0) / 3.0, 0.05 * std::log(4.0) / 3.0);
}

TEST(Degrees, CumulativeFormulaDomain) {
    EXPECT_DOUBLE_EQ(cumulative_degree_formula_regular(3, 2, 3), 1.0);
    EXPECT_THROW(cumulative_degree_formula_regular(3, 2, 2), DomainError);
}

TEST(Scalars, AverageDegreeAndDensity) {
    const Graph seed = complete_graph(3);
    EXPECT_DOUBLE_EQ(average_degree(seed), 2.0);
    EXPECT_DOUBLE_EQ(density(seed), 1.0);
    const double limit = average_degree_limit(3, 3);
    EXPECT_DOUBLE_EQ(limit, 2.0 * (3 + 3) / 3.0);
    double prev_gap = 1e9;
    for (std::uint64_t m = 1; m <= 5; ++m) {
        const Graph g = corona_of(seed, m);
        const double gap = std::abs(average_degree(g) - limit);
        EXPECT_LT(gap, prev_gap);
        prev_gap = gap;
        EXPECT_NEAR(density(g), average_degree(g) / (g.node_count() - 1.0), 1e-15);
    }
    EXPECT_LT(prev_gap, 0.01);
    EXPECT_THROW(density(path_graph(1)), DomainError);
}

TEST(Diameter, MatchesFormulaAndBrute) {
    EXPECT_EQ(diameter_measured(corona_of(path_graph(3), 2)), 6u);
    for (const auto& [name, seed] : seed_matrix()) {
        if (seed.node_count() < 2) continue;
        const std::size_t d0 = diameter_measured(seed);
        for (std::uint64_t m = 0; m <= 3; ++m) {
            const Graph g = corona_of(seed, m);
            if (g.node_count() > 20000) continue;
            EXPECT_EQ(diameter_measured(g), diameter_formula(d0, m)) << name << " m=" << m;
            if (g.node_count() <= kBruteCap) EXPECT_EQ(diameter_measured(g), brute_diameter(g));
        }
    }
}

TEST(Diameter, SingleNodeSeedGrowsByOneLess) {
    // K_1 ∘ K_1 is an edge and every later step extends a path, so the
    // diameter is 2m - 1 rather than 0 + 2m.
    for (std::uint64_t m = 1; m <= 4; ++m) EXPECT_EQ(diameter_measured(corona_of(path_graph(1), m)), 2 * m - 1);
}

TEST(Diameter, ThreadCountDoesNotMatter) {
    const Graph g = corona_of(cycle_graph(4), 3);
    EXPECT_EQ(diameter_measured(g, 1), diameter_measured(g, 5));
}

TEST(Diameter, DisconnectedThrows) {
    std::istringstream in("0 1\n2 3\n");
    EXPECT_THROW(diameter_measured(read_edge_list(in)), DisconnectedGraph);
}

TEST(Betweenness, SmallGraphs) {
    const auto p3 = betweenness_exact(path_graph(3)).values;
    EXPECT_EQ(p3, (std::vector<double>{0, 1, 0}));
    EXPECT_EQ(betweenness_exact(star_graph(4)).values[0], 3.0);
    for (double b : betweenness_exact(complete_graph(5)).values) EXPECT_EQ(b, 0.0);
    for (double b : betweenness_exact(cycle_graph(4)).values) EXPECT_DOUBLE_EQ(b, 0.5);
    const auto ordered = betweenness_exact(star_graph(4), PairConvention::ordered).values;
    EXPECT_EQ(ordered[0], 6.0);
}

TEST(Betweenness, MatchesBruteReference) {
    for (const auto& [name, seed] : seed_matrix()) {
        const Graph g = corona_of(seed, seed.node_count() <= 3 ? 2 : 1);
        if (g.node_count() < 2 || g.node_count() > kBruteCap) continue;
        const auto fast = betweenness_exact(g).values;
        const auto brute = brute_betweenness(g).b.values;
        ASSERT_EQ(fast.size(), brute.size());
        for (std::size_t v = 0; v < fast.size(); ++v)
            EXPECT_NEAR(fast[v], brute[v], 1e-9 * std::max(1.0, brute[v])) << name << " node " << v;
    }
}

TEST(Betweenness, DeterministicAcrossThreadCounts) {
    const Graph g = corona_of(cycle_graph(4), 3);
    const auto a = betweenness_exact(g, PairConvention::unordered, 1).values;
    const auto b = betweenness_exact(g, PairConvention::unordered, 3).values;
    const auto c = betweenness_exact(g, PairConvention::unordered, 8).values;
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
}

TEST(Betweenness, PathCountEqualsBrandesOnCliqueSeeds) {
    for (std::size_t k : {3u, 4u}) {
        const Graph g = corona_of(complete_graph(k), 3);
        const auto brandes = betweenness_exact(g).values;
        const auto counts = betweenness_clique_pathcount(g);
        ASSERT_EQ(counts.size(), brandes.size());
        for (std::size_t v = 0; v < counts.size(); ++v)
            EXPECT_NEAR(static_cast<double>(counts[v]), brandes[v], 1e-9 * std::max(1.0, brandes[v]));
    }
}

TEST(Betweenness, PathCountRejectsNonUniquePaths) {
    EXPECT_THROW(betweenness_clique_pathcount(cycle_graph(4)), NonUniqueShortestPath);
    EXPECT_THROW(betweenness_clique_pathcount(corona_of(cycle_graph(4), 1)), NonUniqueShortestPath);
}

TEST(Betweenness, StepApproximationTracksAge) {
    EXPECT_EQ(betweenness_step_approx(3, 5, 1), 3u * 1024u);
    EXPECT_EQ(betweenness_step_approx(3, 5, 5), 3u * 262144u);
    EXPECT_THROW(betweenness_step_approx(3, 5, 0), DomainError);
    EXPECT_THROW(betweenness_step_approx(3, 5, 6), DomainError);

    const std::uint64_t t = 4;
    const Graph g = corona_of(complete_graph(3), t);
    const auto b = betweenness_exact(g).values;
    std::map<std::uint64_t, std::pair<double, std::size_t>> by_tau;
    for (std::size_t v = 0; v < b.size(); ++v) {
        const std::uint64_t s = birth_step(v, 3);
        if (s >= t) continue;
        auto& [sum, count] = by_tau[t - s];
        sum += b[v];
        ++count;
    }
    double prev = -1;
    for (const auto& [tau, acc] : by_tau) {
        const double mean = acc.first / acc.second;
        EXPECT_GE(mean, prev) << "tau=" << tau;
        prev = mean;
        const double approx = to_double(betweenness_step_approx(3, t, tau));
        EXPECT_LT(std::abs(std::log10(mean / approx)), 1.0) << "tau=" << tau;
    }
}

TEST(Distributions, GroupingAndCumulative) {
    const DistributionSeries d = value_distribution({1.0, 2.0, 1.0 + 1e-12, 4.0});
    ASSERT_EQ(d.points.size(), 3u);
    EXPECT_DOUBLE_EQ(d.points[0].p, 0.5);
    EXPECT_EQ(d.population, 4u);
    const DistributionSeries c = cumulative_series(d);
    EXPECT_EQ(c.points[0].p, 1.0);
    EXPECT_DOUBLE_EQ(c.points[1].p, 0.5);
    EXPECT_DOUBLE_EQ(c.points[2].p, 0.25);
}

TEST(Fits, RecoverSyntheticLaws) {
    std::vector<double> values;
    // P(X >= x) = 1/x on x = 1..64 by weights proportional to 1/x - 1/(x+1)
    DistributionSeries d;
    for (int x = 1; x <= 64; ++x) {
        const double p = x < 64 ? 1.0 / x - 1.0 / (x + 1) : 1.0 / 64;
        d.points.push_back({static_cast<double>(x), p});
    }
    d.population = 1000;
    const PowerLawFit pl = fit_power_law(d);
    EXPECT_NEAR(pl.gamma, 2.0, 1e-9);
    EXPECT_NEAR(pl.r_squared, 1.0, 1e-9);
    EXPECT_EQ(pl.fit_range.first, 1.0);
    EXPECT_EQ(pl.fit_range.second, 64.0);
    const PowerLawFit sub = fit_power_law(d, std::pair{4.0, 16.0});
    EXPECT_EQ(sub.fit_range.first, 4.0);
    EXPECT_NEAR(sub.gamma, 2.0, 1e-9);

    DistributionSeries e;
    for (int x = 0; x < 10; ++x) {
        const double p = x < 9 ? std::exp(-0.5 * x) - std::exp(-0.5 * (x + 1)) : std::exp(-4.5);
        e.points.push_back({static_cast<double>(x), p});
    }
    EXPECT_NEAR(fit_exponential(e).rate, 0.5, 1e-9);

    DistributionSeries tiny;
    tiny.points = {{1, 0.5}, {2, 0.5}};
    EXPECT_THROW(fit_power_law(tiny), DomainError);
    EXPECT_THROW(fit_exponential(tiny), DomainError);
}

TEST(Fits, TriangleBetweennessExponentNearTwo) {
    const Graph g = corona_of(complete_graph(3), 5);
    const PowerLawFit fit = fit_power_law(value_distribution(betweenness_exact(g).values));
    EXPECT_GT(fit.gamma, 1.7);
    EXPECT_LT(fit.gamma, 2.3);
}
