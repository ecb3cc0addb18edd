// spectrum.hpp: eigenvalue multisets and formula-discrepancy records.
#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "corona/wide_int.hpp"

namespace corona {

enum class MatrixKind { adjacency, laplacian, signless };
enum class Provenance { closed_form, oracle };

std::string_view to_string(MatrixKind kind);
std::string_view to_string(Provenance p);
MatrixKind parse_matrix_kind(std::string_view text);

struct SpectralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SpectrumEntry {
    double value = 0;
    u128 multiplicity = 0;
};

// Two values merge when |a-b| <= kCoalesceRel * max(1, |a|, |b|).
inline constexpr double kCoalesceRel = 1e-9;

struct Spectrum {
    MatrixKind kind = MatrixKind::adjacency;
    std::uint64_t level = 0;
    std::uint64_t seed_nodes = 0;
    Provenance provenance = Provenance::closed_form;
    std::vector<SpectrumEntry> entries;  // ascending, coalesced

    static Spectrum from_values(MatrixKind kind, const std::vector<double>& values, std::uint64_t level,
                                std::uint64_t seed_nodes, Provenance provenance);

    // Sorts and merges entries within the coalescing tolerance.
    void coalesce();

    u128 total_multiplicity() const;
    double weighted_sum() const;          // sum of value * multiplicity
    double weighted_sum_squares() const;  // sum of value^2 * multiplicity
    // Ascending list with multiplicities expanded; refuses more than `limit` values.
    std::vector<double> expanded(std::size_t limit = 10'000'000) const;
    u128 multiplicity_near(double value, double tol = 1e-9) const;
};

// A closed-form root formula that disagreed with the independent secular computation.
struct FormulaDiscrepancy {
    std::string operation;   // e.g. "star_cubic_roots"
    std::string category;    // "root" | "bracket" | "arccos_domain"
    MatrixKind kind = MatrixKind::adjacency;
    std::uint64_t k = 0;
    double mu = 0;           // eigenvalue fed into the cubic
    int branch = 0;          // y in {0, 2, 4}; -1 when not branch-specific
    double formula_value = 0;
    double reference_value = 0;
    double delta = 0;
};

using DiscrepancyLog = std::vector<FormulaDiscrepancy>;

}  // namespace corona
