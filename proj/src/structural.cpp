#include "corona/structural.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "parallel.hpp"

namespace corona {

namespace {

constexpr std::size_t kSourceBlock = 32;
constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

DistributionSeries series_from_counts(const std::vector<DegreeCount>& counts) {
    DistributionSeries d;
    for (const auto& c : counts) d.population = checked_add(d.population, c.count);
    const double total = to_double(d.population);
    for (const auto& c : counts)
        d.points.push_back({static_cast<double>(c.degree), to_double(c.count) / total});
    return d;
}

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
};

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double count = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= count;
    my /= count;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0) throw DomainError("degenerate fit range: all values equal");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r_squared = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return f;
}

DistributionSeries as_cumulative(const DistributionSeries& d) {
    return d.cumulative ? d : cumulative_series(d);
}

}  // namespace

std::vector<DegreeCount> degree_counts(const Graph& g) {
    std::map<std::uint64_t, u128> counts;
    for (node_t v = 0; v < g.node_count(); ++v) counts[g.degree(v)] += 1;
    std::vector<DegreeCount> out;
    for (const auto& [deg, c] : counts) out.push_back({deg, c});
    return out;
}

std::vector<DegreeCount> degree_count_formula(const Graph& seed, std::uint64_t m) {
    const std::uint64_t n = seed.node_count();
    std::map<std::uint64_t, u128> counts;
    for (node_t j = 0; j < n; ++j) {
        const std::uint64_t d = seed.degree(j);
        // Seed node: gains n neighbors per step.
        counts[d + m * n] = checked_add(counts[d + m * n], 1);
        // Copy of seed node j created at step s: starts at d+1, then gains n per step.
        // One copy per node of G^(s-1), i.e. n(n+1)^(s-1) of them.
        for (std::uint64_t s = 1; s <= m; ++s) {
            const std::uint64_t deg = d + 1 + (m - s) * n;
            counts[deg] = checked_add(counts[deg], node_count_formula(n, s - 1));
        }
    }
    std::vector<DegreeCount> out;
    for (const auto& [deg, c] : counts) out.push_back({deg, c});
    return out;
}

DistributionSeries degree_histogram(const Graph& g) {
    if (g.empty()) throw DomainError("degree histogram of an empty graph");
    return series_from_counts(degree_counts(g));
}

DistributionSeries degree_distribution_formula(const Graph& seed, std::uint64_t m) {
    if (seed.empty()) throw DomainError("degree distribution needs a nonempty seed");
    return series_from_counts(degree_count_formula(seed, m));
}

double cumulative_degree_formula_regular(std::uint64_t n, std::uint64_t r, double k) {
    if (k < static_cast<double>(r) + 1)
        throw DomainError("cumulative degree law holds for k >= r+1 (k=" + std::to_string(k) + ", r=" +
                          std::to_string(r) + ")");
    const double nn = static_cast<double>(n);
    return std::pow(nn + 1, (static_cast<double>(r) + 1 - k) / nn);
}

double average_degree(const Graph& g) {
    if (g.empty()) throw DomainError("average degree of an empty graph");
    return 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.node_count());
}

double average_degree_limit(std::uint64_t n, std::uint64_t e) {
    if (n < 1) throw DomainError("average degree limit needs n >= 1");
    return 2.0 * (1.0 + static_cast<double>(e) / static_cast<double>(n));
}

double density(const Graph& g) {
    if (g.node_count() < 2) throw DomainError("density needs at least two nodes");
    const double n = static_cast<double>(g.node_count());
    return static_cast<double>(g.edge_count()) / (n * (n - 1) / 2.0);
}

std::size_t diameter_measured(const Graph& g, unsigned threads) {
    const std::size_t n = g.node_count();
    if (n == 0) throw DomainError("diameter of an empty graph");
    if (!g.is_connected()) throw DisconnectedGraph("diameter is infinite: graph is disconnected");
    struct State {
        std::vector<std::uint32_t> dist;
        std::vector<node_t> queue;
        std::size_t best = 0;
    };
    std::size_t diameter = 0;
    const std::size_t blocks = (n + kSourceBlock - 1) / kSourceBlock;
    detail::ordered_blocks<State>(
        blocks, detail::resolve_threads(threads),
        [n] { return State{std::vector<std::uint32_t>(n), std::vector<node_t>(n), 0}; },
        [&](std::size_t block, State& st) {
            st.best = 0;
            const std::size_t end = std::min(n, (block + 1) * kSourceBlock);
            for (std::size_t s = block * kSourceBlock; s < end; ++s) {
                std::fill(st.dist.begin(), st.dist.end(), kUnreached);
                std::size_t head = 0, tail = 0;
                st.queue[tail++] = static_cast<node_t>(s);
                st.dist[s] = 0;
                while (head < tail) {
                    const node_t u = st.queue[head++];
                    for (node_t v : g.neighbors(u))
                        if (st.dist[v] == kUnreached) {
                            st.dist[v] = st.dist[u] + 1;
                            st.queue[tail++] = v;
                        }
                }
                st.best = std::max<std::size_t>(st.best, st.dist[st.queue[tail - 1]]);
            }
        },
        [&](std::size_t, State& st) { diameter = std::max(diameter, st.best); });
    return diameter;
}

std::uint64_t diameter_formula(std::uint64_t d0, std::uint64_t m) { return d0 + 2 * m; }

BetweennessVector betweenness_exact(const Graph& g, PairConvention conv, unsigned threads) {
    const std::size_t n = g.node_count();
    if (n == 0) return {};
    if (!g.is_connected()) throw DisconnectedGraph("betweenness requires a connected graph");
    struct State {
        std::vector<double> acc, sigma, delta;
        std::vector<std::uint32_t> dist;
        std::vector<node_t> order;
    };
    std::vector<double> total(n, 0.0);
    const std::size_t blocks = (n + kSourceBlock - 1) / kSourceBlock;
    detail::ordered_blocks<State>(
        blocks, detail::resolve_threads(threads),
        [n] {
            return State{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n),
                         std::vector<std::uint32_t>(n), std::vector<node_t>(n)};
        },
        [&](std::size_t block, State& st) {
            std::fill(st.acc.begin(), st.acc.end(), 0.0);
            const std::size_t end = std::min(n, (block + 1) * kSourceBlock);
            for (std::size_t s = block * kSourceBlock; s < end; ++s) {
                std::fill(st.dist.begin(), st.dist.end(), kUnreached);
                std::fill(st.sigma.begin(), st.sigma.end(), 0.0);
                std::fill(st.delta.begin(), st.delta.end(), 0.0);
                std::size_t head = 0, tail = 0;
                st.order[tail++] = static_cast<node_t>(s);
                st.dist[s] = 0;
                st.sigma[s] = 1.0;
                while (head < tail) {
                    const node_t u = st.order[head++];
                    for (node_t v : g.neighbors(u)) {
                        if (st.dist[v] == kUnreached) {
                            st.dist[v] = st.dist[u] + 1;
                            st.order[tail++] = v;
                        }
                        if (st.dist[v] == st.dist[u] + 1) st.sigma[v] += st.sigma[u];
                    }
                }
                // Dependencies in reverse BFS order; predecessors are neighbors one level up.
                for (std::size_t idx = tail; idx-- > 1;) {
                    const node_t w = st.order[idx];
                    const double coeff = (1.0 + st.delta[w]) / st.sigma[w];
                    for (node_t v : g.neighbors(w))
                        if (st.dist[v] + 1 == st.dist[w]) st.delta[v] += st.sigma[v] * coeff;
                    st.acc[w] += st.delta[w];
                }
            }
        },
        [&](std::size_t, State& st) {
            for (std::size_t v = 0; v < n; ++v) total[v] += st.acc[v];
        });
    // Each unordered pair was visited from both endpoints.
    if (conv == PairConvention::unordered)
        for (double& b : total) b /= 2.0;
    return {std::move(total)};
}

std::vector<std::uint64_t> betweenness_clique_pathcount(const Graph& g, unsigned threads) {
    const std::size_t n = g.node_count();
    if (n == 0) return {};
    if (!g.is_connected()) throw DisconnectedGraph("path counting requires a connected graph");
    struct State {
        std::vector<std::uint64_t> acc, subtree;
        std::vector<std::uint32_t> dist;
        std::vector<node_t> order, parent;
    };
    std::vector<std::uint64_t> total(n, 0);
    const std::size_t blocks = (n + kSourceBlock - 1) / kSourceBlock;
    detail::ordered_blocks<State>(
        blocks, detail::resolve_threads(threads),
        [n] {
            return State{std::vector<std::uint64_t>(n), std::vector<std::uint64_t>(n),
                         std::vector<std::uint32_t>(n), std::vector<node_t>(n), std::vector<node_t>(n)};
        },
        [&](std::size_t block, State& st) {
            std::fill(st.acc.begin(), st.acc.end(), 0);
            const std::size_t end = std::min(n, (block + 1) * kSourceBlock);
            for (std::size_t s = block * kSourceBlock; s < end; ++s) {
                std::fill(st.dist.begin(), st.dist.end(), kUnreached);
                std::size_t head = 0, tail = 0;
                st.order[tail++] = static_cast<node_t>(s);
                st.dist[s] = 0;
                while (head < tail) {
                    const node_t u = st.order[head++];
                    for (node_t v : g.neighbors(u)) {
                        if (st.dist[v] == kUnreached) {
                            st.dist[v] = st.dist[u] + 1;
                            st.parent[v] = u;
                            st.order[tail++] = v;
                        } else if (st.dist[v] == st.dist[u] + 1) {
                            throw NonUniqueShortestPath("nodes " + std::to_string(s) + " and " + std::to_string(v) +
                                                        " are joined by more than one shortest path");
                        }
                    }
                }
                // With unique paths the BFS DAG is a tree: every proper descendant
                // of w is a target whose path from s passes through w.
                for (std::size_t idx = 0; idx < tail; ++idx) st.subtree[st.order[idx]] = 1;
                for (std::size_t idx = tail; idx-- > 1;) {
                    const node_t w = st.order[idx];
                    st.acc[w] += st.subtree[w] - 1;
                    st.subtree[st.parent[w]] += st.subtree[w];
                }
            }
        },
        [&](std::size_t, State& st) {
            for (std::size_t v = 0; v < n; ++v) total[v] += st.acc[v];
        });
    for (auto& b : total) b /= 2;
    return total;
}

u128 betweenness_step_approx(std::uint64_t n, std::uint64_t t, std::uint64_t tau) {
    if (tau < 1 || tau > t) throw DomainError("betweenness step approximation needs 1 <= tau <= t");
    return checked_mul(n, checked_pow(static_cast<u128>(n) + 1, t + tau - 1));
}

DistributionSeries value_distribution(const std::vector<double>& values) {
    if (values.empty()) throw DomainError("distribution of an empty value set");
    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    DistributionSeries d;
    d.population = sorted.size();
    const double total = static_cast<double>(sorted.size());
    std::size_t i = 0;
    while (i < sorted.size()) {
        const double anchor = sorted[i];
        std::size_t j = i;
        while (j < sorted.size() &&
               std::abs(sorted[j] - anchor) <= 1e-9 * std::max({1.0, std::abs(anchor), std::abs(sorted[j])}))
            ++j;
        d.points.push_back({anchor, static_cast<double>(j - i) / total});
        i = j;
    }
    return d;
}

DistributionSeries cumulative_series(const DistributionSeries& d) {
    if (d.cumulative) return d;
    DistributionSeries c;
    c.cumulative = true;
    c.population = d.population;
    c.points.resize(d.points.size());
    double tail = 0;
    for (std::size_t i = d.points.size(); i-- > 0;) {
        tail += d.points[i].p;
        c.points[i] = {d.points[i].value, tail};
    }
    if (!c.points.empty()) c.points.front().p = 1.0;
    return c;
}

PowerLawFit fit_power_law(const DistributionSeries& d, std::optional<std::pair<double, double>> range) {
    const DistributionSeries c = as_cumulative(d);
    std::vector<double> x, y;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& pt : c.points) {
        if (pt.value <= 0) continue;
        if (range && (pt.value < range->first || pt.value > range->second)) continue;
        if (pt.p <= 0) throw DomainError("nonpositive probability in power-law fit range");
        x.push_back(std::log(pt.value));
        y.push_back(std::log(pt.p));
        lo = std::min(lo, pt.value);
        hi = std::max(hi, pt.value);
    }
    if (x.size() < 3) throw DomainError("power-law fit needs at least 3 distinct positive values");
    const LinearFit f = least_squares(x, y);
    return {std::abs(f.slope) + 1.0, f.intercept, f.r_squared, {lo, hi}};
}

ExponentialFit fit_exponential(const DistributionSeries& d) {
    const DistributionSeries c = as_cumulative(d);
    std::vector<double> x, y;
    for (const auto& pt : c.points) {
        if (pt.p <= 0) throw DomainError("nonpositive probability in exponential fit range");
        x.push_back(pt.value);
        y.push_back(std::log(pt.p));
    }
    if (x.size() < 3) throw DomainError("exponential fit needs at least 3 distinct values");
    const LinearFit f = least_squares(x, y);
    return {-f.slope, f.intercept, f.r_squared};
}

}  // namespace corona
