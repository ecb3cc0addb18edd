#include "corona/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace corona {

std::string_view to_string(MatrixKind kind) {
    switch (kind) {
        case MatrixKind::adjacency: return "adjacency";
        case MatrixKind::laplacian: return "laplacian";
        case MatrixKind::signless: return "signless";
    }
    return "unknown";
}

std::string_view to_string(Provenance p) {
    return p == Provenance::closed_form ? "closed_form" : "oracle";
}

MatrixKind parse_matrix_kind(std::string_view text) {
    if (text == "adjacency") return MatrixKind::adjacency;
    if (text == "laplacian") return MatrixKind::laplacian;
    if (text == "signless") return MatrixKind::signless;
    throw SpectralError("unknown matrix kind '" + std::string(text) + "' (adjacency|laplacian|signless)");
}

Spectrum Spectrum::from_values(MatrixKind kind, const std::vector<double>& values, std::uint64_t level,
                               std::uint64_t seed_nodes, Provenance provenance) {
    Spectrum s;
    s.kind = kind;
    s.level = level;
    s.seed_nodes = seed_nodes;
    s.provenance = provenance;
    s.entries.reserve(values.size());
    for (double v : values) s.entries.push_back({v, 1});
    s.coalesce();
    return s;
}

void Spectrum::coalesce() {
    std::sort(entries.begin(), entries.end(),
              [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.value < b.value; });
    std::vector<SpectrumEntry> merged;
    merged.reserve(entries.size());
    for (const auto& e : entries) {
        if (e.multiplicity == 0) continue;
        if (!merged.empty()) {
            const double a = merged.back().value;
            if (std::abs(e.value - a) <= kCoalesceRel * std::max({1.0, std::abs(a), std::abs(e.value)})) {
                merged.back().multiplicity = checked_add(merged.back().multiplicity, e.multiplicity);
                continue;
            }
        }
        merged.push_back(e);
    }
    entries = std::move(merged);
}

u128 Spectrum::total_multiplicity() const {
    u128 t = 0;
    for (const auto& e : entries) t = checked_add(t, e.multiplicity);
    return t;
}

double Spectrum::weighted_sum() const {
    long double s = 0;
    for (const auto& e : entries) s += static_cast<long double>(e.value) * static_cast<long double>(e.multiplicity);
    return static_cast<double>(s);
}

double Spectrum::weighted_sum_squares() const {
    long double s = 0;
    for (const auto& e : entries)
        s += static_cast<long double>(e.value) * e.value * static_cast<long double>(e.multiplicity);
    return static_cast<double>(s);
}

std::vector<double> Spectrum::expanded(std::size_t limit) const {
    const u128 total = total_multiplicity();
    if (total > limit) throw SpectralError("spectrum too large to expand: " + to_string(total) + " values");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(total));
    for (const auto& e : entries)
        for (u128 i = 0; i < e.multiplicity; ++i) out.push_back(e.value);
    return out;
}

u128 Spectrum::multiplicity_near(double value, double tol) const {
    u128 m = 0;
    for (const auto& e : entries)
        if (std::abs(e.value - value) <= tol * std::max(1.0, std::abs(value))) m += e.multiplicity;
    return m;
}

}  // namespace corona
