// spectral.hpp: closed-form spectra of corona graphs by per-step recursion.
//
// One corona step G' = G ∘ H maps each eigenvalue of G to the roots of a
// secular equation (quadratic for a regular H, cubic for a star H) and
// appends the eigenvalues of H whose eigenvectors are orthogonal to the
// all-ones vector, once per node of G. Iterating the step from the seed
// spectrum enumerates every sign branch of the unrolled closed forms.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "corona/graph.hpp"
#include "corona/spectrum.hpp"

namespace corona {

// Distinct values kept per closed-form spectrum; iterating past it throws CapExceeded.
inline constexpr std::size_t kMaxSpectrumEntries = std::size_t{1} << 22;

struct SpectralStepParams {
    std::uint64_t n = 0;  // seed node count
    std::uint64_t r = 0;  // regularity degree (regular modes)
    std::uint64_t k = 0;  // star size (star modes)
    Spectrum seed_spectrum;

    // Seed spectrum of the requested kind via the oracle. Adjacency and
    // signless kinds require a regular seed.
    static SpectralStepParams for_regular_seed(const Graph& seed, MatrixKind kind);
    static SpectralStepParams for_any_seed(const Graph& seed, MatrixKind kind);
    static SpectralStepParams for_star(std::uint64_t k, MatrixKind kind);
};

struct StepStats {
    u128 spawned = 0;   // total multiplicity of the secular roots
    u128 appended = 0;  // total multiplicity of the appended seed values
};

Spectrum adjacency_step_regular(const Spectrum& s, const SpectralStepParams& p, StepStats* stats = nullptr);
Spectrum adjacency_spectrum_regular(const SpectralStepParams& p, std::uint64_t m);

Spectrum laplacian_step(const Spectrum& s, const SpectralStepParams& p, StepStats* stats = nullptr);
Spectrum laplacian_spectrum(const Graph& seed, std::uint64_t m);

Spectrum signless_step_regular(const Spectrum& s, const SpectralStepParams& p, StepStats* stats = nullptr);
Spectrum signless_spectrum_regular(const SpectralStepParams& p, std::uint64_t m);

double spectral_radius(const Spectrum& s);
// Second-smallest eigenvalue counting multiplicity.
double algebraic_connectivity(const Spectrum& s);

// Trigonometric roots of the star-seed cubic for host eigenvalue mu, in
// branch order y = 0, 2, 4. Each root is checked against the secular
// quotient; disagreements and bracket violations go to `log`, and a root
// that fails is replaced by the secular root so the result is always valid.
std::array<double, 3> star_cubic_roots(double mu, std::uint64_t k, MatrixKind kind, DiscrepancyLog* log = nullptr);

// Raw trigonometric root formula, without checking or replacement.
std::array<double, 3> star_trig_roots(double mu, std::uint64_t k, MatrixKind kind);

Spectrum star_step(const Spectrum& s, std::uint64_t k, DiscrepancyLog* log = nullptr, StepStats* stats = nullptr);
Spectrum star_adjacency_spectrum(std::uint64_t k, std::uint64_t m, DiscrepancyLog* log = nullptr);
Spectrum star_signless_spectrum(std::uint64_t k, std::uint64_t m, DiscrepancyLog* log = nullptr);

struct EigenPair {
    double value = 0;
    std::vector<double> vector;
};

// All n(n+1) adjacency eigenpairs of seed ∘ seed for an r-regular connected
// seed, in the node layout of corona_product.
std::vector<EigenPair> build_one_step_eigenpairs(const Graph& seed, std::uint64_t r);

}  // namespace corona
