#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "corona/graph.hpp"
#include "corona/oracle.hpp"
#include "corona/spectral.hpp"
#include "corona/verify.hpp"

using namespace corona;

namespace {

Graph corona_of(const Graph& seed, std::uint64_t m) {
    Graph g = seed;
    for (std::uint64_t i = 0; i < m; ++i) g = corona_product(g, seed);
    return g;
}

void expect_matches_oracle(const Spectrum& closed, const Graph& g, MatrixKind kind, const std::string& label) {
    const MatchReport r = compare_spectra(closed, sym_eigenvalues(build_matrix(g, kind)), 1e-8);
    EXPECT_TRUE(r.passed) << label << " max delta " << r.max_abs_delta;
}

}  // namespace

TEST(Spectrum, CoalesceAndQueries) {
    Spectrum s = Spectrum::from_values(MatrixKind::adjacency, {1.0, 2.0, 1.0 + 1e-12, -3.0}, 0, 4,
                                       Provenance::oracle);
    ASSERT_EQ(s.entries.size(), 3u);
    EXPECT_EQ(s.entries[1].multiplicity, 2u);
    EXPECT_EQ(s.total_multiplicity(), 4u);
    EXPECT_NEAR(s.weighted_sum(), 1.0, 1e-11);
    EXPECT_NEAR(s.weighted_sum_squares(), 15.0, 1e-11);
    EXPECT_EQ(s.expanded().size(), 4u);
    EXPECT_THROW(s.expanded(3), SpectralError);
    EXPECT_EQ(s.multiplicity_near(1.0, 1e-9), 2u);
    EXPECT_EQ(s.multiplicity_near(5.0, 1e-9), 0u);
    EXPECT_EQ(parse_matrix_kind("signless"), MatrixKind::signless);
    EXPECT_THROW(parse_matrix_kind("normalized"), SpectralError);
}

TEST(Regular, LaplacianOfTriangleOneStep) {
    const Spectrum s = laplacian_spectrum(complete_graph(3), 1);
    EXPECT_EQ(s.total_multiplicity(), 12u);
    EXPECT_EQ(s.multiplicity_near(4.0, 1e-9), 7u);
    EXPECT_EQ(s.multiplicity_near(0.0, 1e-9), 1u);
    EXPECT_EQ(s.multiplicity_near((7 - std::sqrt(37.0)) / 2, 1e-9), 2u);
    EXPECT_EQ(s.multiplicity_near((7 + std::sqrt(37.0)) / 2, 1e-9), 2u);
    EXPECT_NEAR(algebraic_connectivity(s), (7 - std::sqrt(37.0)) / 2, 1e-12);
    EXPECT_EQ(s.provenance, Provenance::closed_form);
    EXPECT_EQ(s.level, 1u);
}

TEST(Regular, SpectralRadiusOfSeed) {
    const auto p = SpectralStepParams::for_regular_seed(complete_graph(3), MatrixKind::adjacency);
    EXPECT_NEAR(spectral_radius(adjacency_spectrum_regular(p, 0)), 2.0, 1e-12);
    // One K_3 step: the principal branch solves (x - 2)(x - 2) = 3 over lambda = 2.
    EXPECT_NEAR(spectral_radius(adjacency_spectrum_regular(p, 1)), 2 + std::sqrt(3.0), 1e-12);
}

TEST(Regular, MatchesOracleForEveryKind) {
    for (const Graph& seed : {complete_graph(3), cycle_graph(4), complete_graph(4)})
        for (std::uint64_t m : {1u, 2u}) {
            const Graph g = corona_of(seed, m);
            if (g.node_count() > 400) continue;
            for (MatrixKind kind : {MatrixKind::adjacency, MatrixKind::signless}) {
                const auto p = SpectralStepParams::for_regular_seed(seed, kind);
                const Spectrum s = kind == MatrixKind::adjacency ? adjacency_spectrum_regular(p, m)
                                                                 : signless_spectrum_regular(p, m);
                expect_matches_oracle(s, g, kind, std::string(to_string(kind)) + " m=" + std::to_string(m));
            }
            expect_matches_oracle(laplacian_spectrum(seed, m), g, MatrixKind::laplacian, "laplacian");
        }
}

TEST(Laplacian, AnyConnectedSeed) {
    for (const Graph& seed : {path_graph(3), star_graph(4), path_graph(2)})
        for (std::uint64_t m : {1u, 2u}) {
            const Graph g = corona_of(seed, m);
            if (g.node_count() > 400) continue;
            expect_matches_oracle(laplacian_spectrum(seed, m), g, MatrixKind::laplacian, "laplacian");
        }
    std::istringstream in("0 1\n2 3\n");
    EXPECT_THROW(laplacian_spectrum(read_edge_list(in), 1), SpectralError);
}

TEST(Regular, RejectsIrregularSeeds) {
    EXPECT_THROW(SpectralStepParams::for_regular_seed(path_graph(3), MatrixKind::adjacency), SpectralError);
    EXPECT_THROW(SpectralStepParams::for_star(2, MatrixKind::adjacency), SpectralError);
    EXPECT_THROW(SpectralStepParams::for_star(4, MatrixKind::laplacian), SpectralError);
    const auto p = SpectralStepParams::for_regular_seed(complete_graph(3), MatrixKind::adjacency);
    const Spectrum l = laplacian_spectrum(complete_graph(3), 1);
    EXPECT_THROW(adjacency_step_regular(l, p), SpectralError);
    EXPECT_THROW(algebraic_connectivity(adjacency_spectrum_regular(p, 1)), SpectralError);
}

TEST(Regular, TotalsAndTraceIdentitiesToSixSteps) {
    for (const Graph& seed : {complete_graph(3), cycle_graph(4), complete_graph(4)}) {
        const std::uint64_t n = seed.node_count();
        const auto pa = SpectralStepParams::for_regular_seed(seed, MatrixKind::adjacency);
        const auto pq = SpectralStepParams::for_regular_seed(seed, MatrixKind::signless);
        for (std::uint64_t m = 0; m <= 6; ++m) {
            const double two_e = 2.0 * to_double(edge_count_formula(n, seed.edge_count(), m));
            const Spectrum a = adjacency_spectrum_regular(pa, m);
            const Spectrum l = laplacian_spectrum(seed, m);
            const Spectrum q = signless_spectrum_regular(pq, m);
            for (const Spectrum* s : {&a, &l, &q}) EXPECT_EQ(s->total_multiplicity(), node_count_formula(n, m));
            EXPECT_NEAR(a.weighted_sum(), 0.0, 1e-9 * two_e);
            EXPECT_NEAR(a.weighted_sum_squares(), two_e, 1e-9 * two_e);
            EXPECT_NEAR(l.weighted_sum(), two_e, 1e-9 * two_e);
            EXPECT_NEAR(q.weighted_sum(), two_e, 1e-9 * two_e);
            if (m >= 1) EXPECT_LT(algebraic_connectivity(l), 1.0);
        }
    }
}

TEST(Regular, EntryCapStopsRunawayIteration) {
    const auto p = SpectralStepParams::for_regular_seed(complete_graph(3), MatrixKind::adjacency);
    EXPECT_THROW(adjacency_spectrum_regular(p, 64), CapExceeded);
}

TEST(Star, CubicRootsOfTheSmallestStar) {
    DiscrepancyLog log;
    auto roots = star_cubic_roots(std::sqrt(2.0), 3, MatrixKind::adjacency, &log);
    std::sort(roots.begin(), roots.end());
    const auto reference = star_secular_roots(std::sqrt(2.0), 3, MatrixKind::adjacency);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(roots[i], reference[i], 1e-9);
    EXPECT_NEAR(roots[2], 3.1307839, 1e-6);
}

TEST(Star, SignlessTrigConstantIsLoggedAndReplaced) {
    DiscrepancyLog log;
    auto roots = star_cubic_roots(3.0, 3, MatrixKind::signless, &log);
    std::sort(roots.begin(), roots.end());
    const auto reference = star_secular_roots(3.0, 3, MatrixKind::signless);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(roots[i], reference[i], 1e-9);
    ASSERT_FALSE(log.empty());
    bool has_root = false;
    for (const auto& d : log) has_root |= d.category == "root";
    EXPECT_TRUE(has_root);
    EXPECT_EQ(log.front().kind, MatrixKind::signless);
    EXPECT_EQ(log.front().k, 3u);
}

TEST(Star, SpectraMatchOracle) {
    for (std::uint64_t k : {3u, 4u})
        for (std::uint64_t m : {1u, 2u}) {
            const Graph g = corona_of(star_graph(k), m);
            if (g.node_count() > 400) continue;
            DiscrepancyLog log;
            expect_matches_oracle(star_adjacency_spectrum(k, m, &log), g, MatrixKind::adjacency, "star adjacency");
            expect_matches_oracle(star_signless_spectrum(k, m, &log), g, MatrixKind::signless, "star signless");
        }
}

TEST(Star, TotalsAndTraces) {
    for (std::uint64_t k : {3u, 4u, 5u})
        for (std::uint64_t m = 0; m <= 6; ++m) {
            const double two_e = 2.0 * to_double(edge_count_formula(k, k - 1, m));
            const Spectrum a = star_adjacency_spectrum(k, m);
            const Spectrum q = star_signless_spectrum(k, m);
            EXPECT_EQ(a.total_multiplicity(), node_count_formula(k, m));
            EXPECT_EQ(q.total_multiplicity(), node_count_formula(k, m));
            EXPECT_NEAR(a.weighted_sum(), 0.0, 1e-9 * two_e);
            EXPECT_NEAR(a.weighted_sum_squares(), two_e, 1e-9 * two_e);
            EXPECT_NEAR(q.weighted_sum(), two_e, 1e-9 * two_e);
        }
}

TEST(Dispatch, ClassifiesSeedsByStructure) {
    EXPECT_EQ(classify_seed(complete_graph(4)), SeedShape::regular);
    EXPECT_EQ(classify_seed(star_graph(5)), SeedShape::star);
    EXPECT_EQ(classify_seed(path_graph(3)), SeedShape::star);
    EXPECT_EQ(classify_seed(path_graph(4)), SeedShape::other);
    EXPECT_FALSE(closed_form_spectrum(path_graph(4), MatrixKind::adjacency, 1));
    EXPECT_TRUE(closed_form_spectrum(path_graph(4), MatrixKind::laplacian, 1));
}

TEST(Eigenpairs, OneStepResiduals) {
    for (const Graph& seed : {complete_graph(3), cycle_graph(4)}) {
        const std::uint64_t r = *seed.regular_degree();
        const auto pairs = build_one_step_eigenpairs(seed, r);
        const std::size_t n = seed.node_count();
        ASSERT_EQ(pairs.size(), n * (n + 1));
        const Graph g = corona_product(seed, seed);
        for (const auto& p : pairs) {
            ASSERT_EQ(p.vector.size(), g.node_count());
            double norm = 0;
            for (double x : p.vector) norm += x * x;
            norm = std::sqrt(norm);
            EXPECT_GT(norm, 0.0);
            EXPECT_LE(eigen_residual(g, MatrixKind::adjacency, p.value, p.vector), 1e-8 * norm);
        }
    }
    EXPECT_THROW(build_one_step_eigenpairs(path_graph(3), 1), SpectralError);
}
