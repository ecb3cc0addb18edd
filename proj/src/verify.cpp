#include "corona/verify.hpp"

#include <algorithm>
#include <cmath>

#include "corona/spectral.hpp"

namespace corona {

SeedShape classify_seed(const Graph& seed) {
    if (seed.regular_degree()) return SeedShape::regular;
    const std::size_t n = seed.node_count();
    if (n < 3 || seed.edge_count() != n - 1) return SeedShape::other;
    std::size_t hubs = 0;
    for (node_t v = 0; v < n; ++v) {
        if (seed.degree(v) == n - 1) ++hubs;
        else if (seed.degree(v) != 1) return SeedShape::other;
    }
    return hubs == 1 ? SeedShape::star : SeedShape::other;
}

std::optional<Spectrum> closed_form_spectrum(const Graph& seed, MatrixKind kind, std::uint64_t m,
                                             DiscrepancyLog* log) {
    if (kind == MatrixKind::laplacian) {
        if (!seed.is_connected()) return std::nullopt;
        return laplacian_spectrum(seed, m);
    }
    switch (classify_seed(seed)) {
        case SeedShape::regular: {
            const auto p = SpectralStepParams::for_regular_seed(seed, kind);
            return kind == MatrixKind::adjacency ? adjacency_spectrum_regular(p, m) : signless_spectrum_regular(p, m);
        }
        case SeedShape::star:
            return kind == MatrixKind::adjacency ? star_adjacency_spectrum(seed.node_count(), m, log)
                                                 : star_signless_spectrum(seed.node_count(), m, log);
        case SeedShape::other: return std::nullopt;
    }
    return std::nullopt;
}

VerificationReport verify_spectrum(const Seed& seed, MatrixKind kind, std::uint64_t m, double tol,
                                   std::size_t node_cap, std::size_t oracle_cap) {
    VerificationReport report;
    report.seed = seed.descriptor.canonical();
    report.kind = kind;
    report.m = m;
    auto closed = closed_form_spectrum(seed.graph, kind, m, &report.discrepancies);
    if (!closed)
        throw SpectralError("no closed form for " + std::string(to_string(kind)) + " spectrum of seed " + report.seed);

    const CoronaPlan plan = CoronaPlan::make(seed, m);
    if (plan.predicted_nodes > oracle_cap)
        throw CapExceeded("G^(" + std::to_string(m) + ") has " + to_string(plan.predicted_nodes) +
                          " nodes, above the oracle cap " + std::to_string(oracle_cap));
    const Graph g = corona_iterate(plan, node_cap);
    report.nodes = g.node_count();
    const EigenDecomposition eig = jacobi_eigen(build_matrix(g, kind, oracle_cap), true);
    report.match = compare_spectra(*closed, eig.values, tol);
    double residual = 0;
    for (std::size_t i = 0; i < eig.values.size(); ++i)
        residual = std::max(residual, eigen_residual(g, kind, eig.values[i], eig.vectors[i]));
    report.match.residual_max = residual;
    return report;
}

}  // namespace corona
