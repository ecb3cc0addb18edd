// graph.hpp: immutable CSR graph, seed families, and the corona product.
//
// Node layout of g ∘ seed (|V(g)| = N, |V(seed)| = n):
//   [0, N)                      original nodes of g, same indices
//   [N + i*n, N + (i+1)*n)      copy of seed attached to g-node i, seed order kept
// Iterating this layout makes G^(s) a prefix of G^(m) for every s <= m.
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corona/wide_int.hpp"

namespace corona {

using node_t = std::uint32_t;
using Edge = std::pair<node_t, node_t>;

inline constexpr std::size_t kDefaultNodeCap = 2'000'000;

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Materialization refused because the predicted size exceeds the configured cap.
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Graph {
public:
    Graph() : offsets_{0} {}

    // Builds from an undirected edge list; rejects self-loops, duplicate pairs
    // and out-of-range endpoints.
    static Graph from_edges(std::size_t node_count, std::span<const Edge> edges);

    std::size_t node_count() const noexcept { return offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return targets_.size() / 2; }
    bool empty() const noexcept { return node_count() == 0; }

    std::span<const node_t> neighbors(node_t v) const noexcept {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }
    std::size_t degree(node_t v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
    bool has_edge(node_t u, node_t v) const noexcept;

    const std::vector<std::size_t>& offsets() const noexcept { return offsets_; }
    const std::vector<node_t>& targets() const noexcept { return targets_; }

    // Edges with u < v, lexicographically sorted.
    std::vector<Edge> edges() const;

    // Common degree when every node has the same degree.
    std::optional<std::size_t> regular_degree() const;

    std::size_t component_count() const;
    bool is_connected() const { return component_count() == 1; }

    // Symmetric, simple, sorted adjacency; edge_count consistent.
    bool check_invariants() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    Graph(std::vector<std::size_t> offsets, std::vector<node_t> targets)
        : offsets_(std::move(offsets)), targets_(std::move(targets)) {}

    friend Graph corona_product(const Graph& g, const Graph& seed, std::size_t node_cap);

    std::vector<std::size_t> offsets_;
    std::vector<node_t> targets_;
};

Graph complete_graph(std::size_t k);
Graph path_graph(std::size_t k);
Graph cycle_graph(std::size_t k);
// k vertices: node 0 is the center, nodes 1..k-1 are leaves.
Graph star_graph(std::size_t k);

enum class SeedKind { complete, path, cycle, star, file };

struct SeedDescriptor {
    SeedKind kind = SeedKind::complete;
    std::size_t k = 0;
    std::string path;

    // Micro-grammar: "complete:<k>", "path:<k>", "cycle:<k>", "star:<k>", "file:<path>".
    static SeedDescriptor parse(std::string_view spec);
    std::string canonical() const;

    friend bool operator==(const SeedDescriptor&, const SeedDescriptor&) = default;
};

inline constexpr std::string_view kSeedGrammar =
    "complete:<k> | path:<k> | cycle:<k> | star:<k> | file:<path>";

struct Seed {
    SeedDescriptor descriptor;
    Graph graph;
    bool disconnected_warning = false;
};

Graph build_seed(const SeedDescriptor& descriptor);
Seed resolve_seed(const SeedDescriptor& descriptor);

// |V^(m)| = n(n+1)^m.
u128 node_count_formula(std::uint64_t n, std::uint64_t m);
// |E^(m)| = |E| + (|E| + n)((n+1)^m - 1).
u128 edge_count_formula(std::uint64_t n, std::uint64_t e, std::uint64_t m);
// Nodes created by step i of the iteration (1 <= i): n^2 (n+1)^(i-1).
u128 nodes_added_at_step(std::uint64_t n, std::uint64_t i);

struct CoronaPlan {
    Seed seed;
    std::uint64_t m = 0;
    std::uint64_t n = 0;
    std::uint64_t seed_edges = 0;
    u128 predicted_nodes = 0;
    u128 predicted_edges = 0;

    static CoronaPlan make(Seed seed, std::uint64_t m);
    bool within_cap(std::size_t node_cap) const { return predicted_nodes <= node_cap; }
};

Graph corona_product(const Graph& g, const Graph& seed, std::size_t node_cap = kDefaultNodeCap);
Graph corona_iterate(const CoronaPlan& plan, std::size_t node_cap = kDefaultNodeCap);

// Corona step at which node v of G^(m) was created (0 for seed nodes).
std::uint64_t birth_step(std::uint64_t v, std::uint64_t n);

Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace corona
