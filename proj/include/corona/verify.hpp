// verify.hpp: closed-form dispatch and closed-form vs oracle verification.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "corona/graph.hpp"
#include "corona/oracle.hpp"
#include "corona/spectrum.hpp"

namespace corona {

enum class SeedShape { regular, star, other };

// Structural class of a seed, independent of node labeling (so path:3 is a star).
SeedShape classify_seed(const Graph& seed);

// Closed-form spectrum of G^(m) where one exists: adjacency/signless for
// regular and star seeds, Laplacian for any connected seed.
std::optional<Spectrum> closed_form_spectrum(const Graph& seed, MatrixKind kind, std::uint64_t m,
                                             DiscrepancyLog* log = nullptr);

struct VerificationReport {
    std::string seed;
    MatrixKind kind = MatrixKind::adjacency;
    std::uint64_t m = 0;
    std::uint64_t nodes = 0;
    MatchReport match;
    DiscrepancyLog discrepancies;
    bool passed() const { return match.passed; }
};

// Materializes G^(m), runs the Jacobi oracle (with eigenvectors, for the
// residual column), and compares. Throws SpectralError when no closed form
// covers (seed, kind) and CapExceeded beyond the caps.
VerificationReport verify_spectrum(const Seed& seed, MatrixKind kind, std::uint64_t m, double tol,
                                   std::size_t node_cap = kDefaultNodeCap,
                                   std::size_t oracle_cap = kDefaultOracleCap);

}  // namespace corona
