// structural.hpp: degree/betweenness distributions, density, diameter, fits.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "corona/graph.hpp"
#include "corona/wide_int.hpp"

namespace corona {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct DisconnectedGraph : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DistributionPoint {
    double value = 0;
    double p = 0;
    friend bool operator==(const DistributionPoint&, const DistributionPoint&) = default;
};

// Sorted by value. Plain series sum to 1; cumulative series hold P(X >= value).
struct DistributionSeries {
    std::vector<DistributionPoint> points;
    bool cumulative = false;
    u128 population = 0;
};

struct DegreeCount {
    std::uint64_t degree = 0;
    u128 count = 0;
    friend bool operator==(const DegreeCount&, const DegreeCount&) = default;
};

// Exact integer counts; the probability series below are derived from these.
std::vector<DegreeCount> degree_counts(const Graph& g);
std::vector<DegreeCount> degree_count_formula(const Graph& seed, std::uint64_t m);

DistributionSeries degree_histogram(const Graph& g);
DistributionSeries degree_distribution_formula(const Graph& seed, std::uint64_t m);

// (n+1)^((r+1-k)/n); valid for k >= r+1 on an r-regular seed with n nodes.
double cumulative_degree_formula_regular(std::uint64_t n, std::uint64_t r, double k);

double average_degree(const Graph& g);
double average_degree_limit(std::uint64_t n, std::uint64_t e);
double density(const Graph& g);

// Exact diameter by BFS from every source; throws DisconnectedGraph.
std::size_t diameter_measured(const Graph& g, unsigned threads = 0);
std::uint64_t diameter_formula(std::uint64_t d0, std::uint64_t m);

enum class PairConvention { unordered, ordered };

struct BetweennessVector {
    std::vector<double> values;
};

// Brandes accumulation over BFS DAGs. Sources are processed in fixed-size
// blocks reduced in block order, so the result does not depend on threads.
BetweennessVector betweenness_exact(const Graph& g, PairConvention conv = PairConvention::unordered,
                                    unsigned threads = 0);

// Throws when some pair has more than one shortest path.
struct NonUniqueShortestPath : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Integer count of pairs {j,k} whose unique shortest path has i as an interior node.
std::vector<std::uint64_t> betweenness_clique_pathcount(const Graph& g, unsigned threads = 0);

// n(n+1)^(t+tau-1), for 1 <= tau <= t. tau counts the corona steps during
// which the node has been acquiring offspring (t - birth step).
u128 betweenness_step_approx(std::uint64_t n, std::uint64_t t, std::uint64_t tau);

// Plain distribution of values, grouping values equal within 1e-9 relative.
DistributionSeries value_distribution(const std::vector<double>& values);
DistributionSeries cumulative_series(const DistributionSeries& d);

struct PowerLawFit {
    double gamma = 0;
    double intercept = 0;
    double r_squared = 0;
    std::pair<double, double> fit_range{0, 0};
};

struct ExponentialFit {
    double rate = 0;
    double intercept = 0;
    double r_squared = 0;
};

// Least squares of log P_c against log value over points with value > 0
// (restricted to `range` when given). gamma = |slope| + 1.
PowerLawFit fit_power_law(const DistributionSeries& d,
                          std::optional<std::pair<double, double>> range = std::nullopt);
// Least squares of log P_c against value; rate = -slope.
ExponentialFit fit_exponential(const DistributionSeries& d);

}  // namespace corona
