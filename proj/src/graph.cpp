#include "corona/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace corona {

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges) {
    if (node_count > std::numeric_limits<node_t>::max())
        throw GraphError("node count exceeds 32-bit node index range");
    std::vector<std::size_t> deg(node_count, 0);
    for (const auto& [u, v] : edges) {
        if (u >= node_count || v >= node_count)
            throw GraphError("edge endpoint " + std::to_string(std::max(u, v)) + " out of range");
        if (u == v) throw GraphError("self-loop at node " + std::to_string(u));
        ++deg[u];
        ++deg[v];
    }
    std::vector<std::size_t> offsets(node_count + 1, 0);
    std::partial_sum(deg.begin(), deg.end(), offsets.begin() + 1);
    std::vector<node_t> targets(offsets.back());
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const auto& [u, v] : edges) {
        targets[cursor[u]++] = v;
        targets[cursor[v]++] = u;
    }
    for (std::size_t v = 0; v < node_count; ++v) {
        auto first = targets.begin() + static_cast<std::ptrdiff_t>(offsets[v]);
        auto last = targets.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]);
        std::sort(first, last);
        if (auto dup = std::adjacent_find(first, last); dup != last)
            throw GraphError("duplicate edge " + std::to_string(v) + " " + std::to_string(*dup));
    }
    return Graph(std::move(offsets), std::move(targets));
}

bool Graph::has_edge(node_t u, node_t v) const noexcept {
    if (u >= node_count() || v >= node_count()) return false;
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (node_t u = 0; u < node_count(); ++u)
        for (node_t v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

std::optional<std::size_t> Graph::regular_degree() const {
    if (empty()) return std::nullopt;
    const std::size_t d = degree(0);
    for (node_t v = 1; v < node_count(); ++v)
        if (degree(v) != d) return std::nullopt;
    return d;
}

std::size_t Graph::component_count() const {
    const std::size_t n = node_count();
    std::vector<char> seen(n, 0);
    std::vector<node_t> stack;
    std::size_t components = 0;
    for (node_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        ++components;
        seen[s] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            node_t u = stack.back();
            stack.pop_back();
            for (node_t v : neighbors(u))
                if (!seen[v]) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
        }
    }
    return components;
}

bool Graph::check_invariants() const {
    if (offsets_.empty() || offsets_.front() != 0 || offsets_.back() != targets_.size()) return false;
    if (targets_.size() % 2 != 0) return false;
    for (node_t u = 0; u < node_count(); ++u) {
        auto nb = neighbors(u);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            if (nb[i] >= node_count() || nb[i] == u) return false;
            if (i > 0 && nb[i - 1] >= nb[i]) return false;
            if (!has_edge(nb[i], u)) return false;
        }
    }
    return true;
}

Graph complete_graph(std::size_t k) {
    if (k < 1) throw GraphError("complete graph needs k >= 1");
    std::vector<Edge> e;
    for (node_t u = 0; u < k; ++u)
        for (node_t v = u + 1; v < k; ++v) e.emplace_back(u, v);
    return Graph::from_edges(k, e);
}

Graph path_graph(std::size_t k) {
    if (k < 1) throw GraphError("path graph needs k >= 1");
    std::vector<Edge> e;
    for (node_t u = 0; u + 1 < k; ++u) e.emplace_back(u, u + 1);
    return Graph::from_edges(k, e);
}

Graph cycle_graph(std::size_t k) {
    if (k < 3) throw GraphError("cycle graph needs k >= 3");
    std::vector<Edge> e;
    for (node_t u = 0; u + 1 < k; ++u) e.emplace_back(u, u + 1);
    e.emplace_back(0, static_cast<node_t>(k - 1));
    return Graph::from_edges(k, e);
}

Graph star_graph(std::size_t k) {
    if (k < 3) throw GraphError("star graph needs k >= 3");
    std::vector<Edge> e;
    for (node_t v = 1; v < k; ++v) e.emplace_back(0, v);
    return Graph::from_edges(k, e);
}

namespace {

std::size_t parse_size(std::string_view text, std::string_view context) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw GraphError("invalid integer '" + std::string(text) + "' in " + std::string(context));
    return value;
}

}  // namespace

SeedDescriptor SeedDescriptor::parse(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos)
        throw GraphError("bad seed '" + std::string(spec) + "'; expected " + std::string(kSeedGrammar));
    const auto name = spec.substr(0, colon);
    const auto arg = spec.substr(colon + 1);
    SeedDescriptor d;
    if (name == "file") {
        if (arg.empty()) throw GraphError("file seed needs a path; expected " + std::string(kSeedGrammar));
        d.kind = SeedKind::file;
        d.path = std::string(arg);
        return d;
    }
    if (name == "complete") d.kind = SeedKind::complete;
    else if (name == "path") d.kind = SeedKind::path;
    else if (name == "cycle") d.kind = SeedKind::cycle;
    else if (name == "star") d.kind = SeedKind::star;
    else throw GraphError("unknown seed kind '" + std::string(name) + "'; expected " + std::string(kSeedGrammar));
    d.k = parse_size(arg, "seed spec");
    return d;
}

std::string SeedDescriptor::canonical() const {
    switch (kind) {
        case SeedKind::complete: return "complete:" + std::to_string(k);
        case SeedKind::path: return "path:" + std::to_string(k);
        case SeedKind::cycle: return "cycle:" + std::to_string(k);
        case SeedKind::star: return "star:" + std::to_string(k);
        case SeedKind::file: return "file:" + path;
    }
    return {};
}

Graph build_seed(const SeedDescriptor& d) {
    switch (d.kind) {
        case SeedKind::complete: return complete_graph(d.k);
        case SeedKind::path: return path_graph(d.k);
        case SeedKind::cycle: return cycle_graph(d.k);
        case SeedKind::star: return star_graph(d.k);
        case SeedKind::file: {
            Graph g = read_edge_list_file(d.path);
            if (g.empty()) throw GraphError("seed file '" + d.path + "' has no nodes");
            return g;
        }
    }
    throw GraphError("unreachable seed kind");
}

Seed resolve_seed(const SeedDescriptor& d) {
    Seed s{d, build_seed(d), false};
    s.disconnected_warning = !s.graph.is_connected();
    return s;
}

u128 node_count_formula(std::uint64_t n, std::uint64_t m) {
    if (n < 1) throw GraphError("node count formula needs n >= 1");
    return checked_mul(n, checked_pow(static_cast<u128>(n) + 1, m));
}

u128 edge_count_formula(std::uint64_t n, std::uint64_t e, std::uint64_t m) {
    if (n < 1) throw GraphError("edge count formula needs n >= 1");
    const u128 growth = checked_pow(static_cast<u128>(n) + 1, m) - 1;
    return checked_add(e, checked_mul(checked_add(e, n), growth));
}

u128 nodes_added_at_step(std::uint64_t n, std::uint64_t i) {
    if (i < 1) throw GraphError("corona steps are numbered from 1");
    return checked_mul(checked_mul(n, n), checked_pow(static_cast<u128>(n) + 1, i - 1));
}

CoronaPlan CoronaPlan::make(Seed seed, std::uint64_t m) {
    CoronaPlan p;
    p.n = seed.graph.node_count();
    p.seed_edges = seed.graph.edge_count();
    p.m = m;
    p.predicted_nodes = node_count_formula(p.n, m);
    p.predicted_edges = edge_count_formula(p.n, p.seed_edges, m);
    p.seed = std::move(seed);
    return p;
}

Graph corona_product(const Graph& g, const Graph& seed, std::size_t node_cap) {
    if (seed.empty()) throw GraphError("corona product needs a nonempty seed");
    const std::size_t big_n = g.node_count();
    const std::size_t n = seed.node_count();
    const u128 total = checked_mul(big_n, static_cast<u128>(n) + 1);
    if (total > node_cap || total > std::numeric_limits<node_t>::max())
        throw CapExceeded("corona product would have " + to_string(total) + " nodes (cap " +
                          std::to_string(node_cap) + ")");
    const std::size_t nodes = static_cast<std::size_t>(total);

    std::vector<std::size_t> offsets(nodes + 1, 0);
    for (std::size_t v = 0; v < big_n; ++v) offsets[v + 1] = g.degree(static_cast<node_t>(v)) + n;
    for (std::size_t i = 0; i < big_n; ++i)
        for (std::size_t p = 0; p < n; ++p)
            offsets[big_n + i * n + p + 1] = seed.degree(static_cast<node_t>(p)) + 1;
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());

    std::vector<node_t> targets(offsets.back());
    for (std::size_t v = 0; v < big_n; ++v) {
        std::size_t at = offsets[v];
        for (node_t u : g.neighbors(static_cast<node_t>(v))) targets[at++] = u;
        const std::size_t base = big_n + v * n;
        for (std::size_t p = 0; p < n; ++p) targets[at++] = static_cast<node_t>(base + p);
    }
    for (std::size_t i = 0; i < big_n; ++i) {
        const std::size_t base = big_n + i * n;
        for (std::size_t p = 0; p < n; ++p) {
            std::size_t at = offsets[base + p];
            targets[at++] = static_cast<node_t>(i);
            for (node_t q : seed.neighbors(static_cast<node_t>(p)))
                targets[at++] = static_cast<node_t>(base + q);
        }
    }
    return Graph(std::move(offsets), std::move(targets));
}

Graph corona_iterate(const CoronaPlan& plan, std::size_t node_cap) {
    if (!plan.within_cap(node_cap))
        throw CapExceeded("G^(" + std::to_string(plan.m) + ") would have " + to_string(plan.predicted_nodes) +
                          " nodes (cap " + std::to_string(node_cap) + ")");
    Graph g = plan.seed.graph;
    for (std::uint64_t step = 0; step < plan.m; ++step) g = corona_product(g, plan.seed.graph, node_cap);
    return g;
}

std::uint64_t birth_step(std::uint64_t v, std::uint64_t n) {
    u128 prefix = n;
    std::uint64_t step = 0;
    while (v >= prefix) {
        prefix = checked_mul(prefix, static_cast<u128>(n) + 1);
        ++step;
    }
    return step;
}

Graph read_edge_list(std::istream& in) {
    std::optional<std::size_t> declared;
    std::vector<Edge> edges;
    std::size_t max_node = 0;
    bool any = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            if (line_no == 1) {
                std::string_view rest(line);
                rest.remove_prefix(first + 1);
                while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) rest.remove_prefix(1);
                if (rest.starts_with("n=")) declared = parse_size(rest.substr(2), "edge-list header");
            }
            continue;
        }
        std::istringstream fields(line);
        long long u = -1, v = -1;
        std::string extra;
        if (!(fields >> u >> v) || (fields >> extra) || u < 0 || v < 0 ||
            u > static_cast<long long>(std::numeric_limits<node_t>::max()) ||
            v > static_cast<long long>(std::numeric_limits<node_t>::max()))
            throw GraphError("malformed edge-list line " + std::to_string(line_no) + ": '" + line + "'");
        edges.emplace_back(static_cast<node_t>(u), static_cast<node_t>(v));
        max_node = std::max<std::size_t>(max_node, static_cast<std::size_t>(std::max(u, v)));
        any = true;
    }
    const std::size_t n = declared ? *declared : (any ? max_node + 1 : 0);
    if (declared && any && max_node >= *declared)
        throw GraphError("edge endpoint " + std::to_string(max_node) + " exceeds declared n=" +
                         std::to_string(*declared));
    return Graph::from_edges(n, edges);
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GraphError("cannot open edge-list file '" + path + "'");
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << "# n=" << g.node_count() << '\n';
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

}  // namespace corona
