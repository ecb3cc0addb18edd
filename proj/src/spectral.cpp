#include "corona/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "corona/oracle.hpp"

namespace corona {

namespace {

constexpr double kNegativeSlack = 1e-9;
constexpr double kRootRel = 1e-9;
constexpr double kArccosSlack = 1e-9;

void require_kind(const Spectrum& s, MatrixKind kind, const char* op) {
    if (s.kind != kind)
        throw SpectralError(std::string(op) + " expects a " + std::string(to_string(kind)) + " spectrum, got " +
                            std::string(to_string(s.kind)));
}

// Seed values whose eigenvectors are orthogonal to the all-ones vector: the
// seed spectrum with one copy of the principal value removed.
std::vector<SpectrumEntry> non_principal(const Spectrum& seed, double principal) {
    std::vector<SpectrumEntry> out = seed.entries;
    auto best = out.end();
    double best_gap = 0;
    for (auto it = out.begin(); it != out.end(); ++it) {
        const double gap = std::abs(it->value - principal);
        if (best == out.end() || gap < best_gap) {
            best = it;
            best_gap = gap;
        }
    }
    if (best == out.end() || best_gap > 1e-8 * std::max(1.0, std::abs(principal)))
        throw SpectralError("seed spectrum lacks the principal value " + std::to_string(principal));
    best->multiplicity -= 1;
    return out;
}

// Roots of x^2 - b x + c with b > 0 and nonnegative discriminant `disc`,
// computed without cancellation.
std::pair<double, double> stable_quadratic(double b, double c, double disc) {
    const double big = (b + std::sqrt(disc)) / 2.0;
    return {c / big, big};
}

Spectrum next_level(const Spectrum& s) {
    Spectrum out;
    out.kind = s.kind;
    out.level = s.level + 1;
    out.seed_nodes = s.seed_nodes;
    out.provenance = Provenance::closed_form;
    return out;
}

void append_seed_values(Spectrum& out, const std::vector<SpectrumEntry>& values, double shift, u128 host_total,
                        StepStats* stats) {
    for (const auto& e : values) {
        if (e.multiplicity == 0) continue;
        const u128 m = checked_mul(e.multiplicity, host_total);
        out.entries.push_back({e.value + shift, m});
        if (stats) stats->appended = checked_add(stats->appended, m);
    }
}

Spectrum oracle_seed_spectrum(const Graph& seed, MatrixKind kind) {
    return Spectrum::from_values(kind, sym_eigenvalues(build_matrix(seed, kind)), 0, seed.node_count(),
                                 Provenance::oracle);
}

Spectrum iterate(Spectrum s, std::uint64_t m, auto&& step) {
    for (std::uint64_t i = 0; i < m; ++i) {
        s = step(s);
        if (s.entries.size() > kMaxSpectrumEntries)
            throw CapExceeded("closed-form spectrum exceeds " + std::to_string(kMaxSpectrumEntries) +
                              " distinct values at level " + std::to_string(s.level));
    }
    return s;
}

struct TrigParameters {
    double radicand = 0;   // under the square root of the amplitude
    double numerator = 0;  // of the arccos argument
    double shift = 0;
    double arg() const { return numerator / (2.0 * std::pow(radicand, 1.5)); }
};

// Coefficients of the trigonometric root formula for star seeds. The signless
// constant term is 8 below the one of the true secular cubic, so its roots never
// pass the check in star_cubic_roots and are always replaced.
TrigParameters trig_parameters(double mu, std::uint64_t k, MatrixKind kind) {
    const double kk = static_cast<double>(k);
    TrigParameters t;
    if (kind == MatrixKind::adjacency) {
        t.radicand = mu * mu + (6.0 * kk - 3.0);
        t.numerator = 2.0 * mu * mu * mu + mu * (18.0 - 9.0 * kk) + (54.0 * kk - 54.0);
        t.shift = mu / 3.0;
    } else if (kind == MatrixKind::signless) {
        t.radicand = mu * mu + mu * (kk - 2.0) + (kk + 1.0) * (kk + 1.0);
        double tail = 0;
        for (std::uint64_t a = 1; a + 2 <= k; ++a)
            tail += static_cast<double>(a + 2) * static_cast<double>(k - a - 1);
        t.numerator = 2.0 * mu * mu * mu + (3.0 * kk - 6.0) * mu * mu - 3.0 * (kk * kk - kk - 2.0) * mu +
                      (70.0 * kk - 94.0 - 12.0 * tail);
        t.shift = (mu + 2.0 * kk + 2.0) / 3.0;
    } else {
        throw SpectralError("star cubic is defined for adjacency and signless kinds");
    }
    return t;
}

}  // namespace

SpectralStepParams SpectralStepParams::for_regular_seed(const Graph& seed, MatrixKind kind) {
    const auto r = seed.regular_degree();
    if (!r) throw SpectralError("closed form requires a regular seed");
    SpectralStepParams p;
    p.n = seed.node_count();
    p.r = *r;
    p.seed_spectrum = oracle_seed_spectrum(seed, kind);
    return p;
}

SpectralStepParams SpectralStepParams::for_any_seed(const Graph& seed, MatrixKind kind) {
    SpectralStepParams p;
    p.n = seed.node_count();
    p.r = seed.regular_degree().value_or(0);
    p.seed_spectrum = oracle_seed_spectrum(seed, kind);
    return p;
}

SpectralStepParams SpectralStepParams::for_star(std::uint64_t k, MatrixKind kind) {
    if (k < 3) throw SpectralError("star modes require k >= 3");
    if (kind == MatrixKind::laplacian) throw SpectralError("star closed forms cover adjacency and signless kinds");
    SpectralStepParams p;
    p.n = k;
    p.k = k;
    p.seed_spectrum = oracle_seed_spectrum(star_graph(k), kind);
    return p;
}

Spectrum adjacency_step_regular(const Spectrum& s, const SpectralStepParams& p, StepStats* stats) {
    require_kind(s, MatrixKind::adjacency, "adjacency_step_regular");
    require_kind(p.seed_spectrum, MatrixKind::adjacency, "adjacency_step_regular");
    const double r = static_cast<double>(p.r), n = static_cast<double>(p.n);
    Spectrum out = next_level(s);
    const u128 host_total = s.total_multiplicity();
    for (const auto& e : s.entries) {
        // (x - lambda)(x - r) = n
        const double lambda = e.value;
        const double disc = (r - lambda) * (r - lambda) + 4.0 * n;
        const double sum = lambda + r;
        double lo, hi;
        if (sum >= 0) {
            std::tie(lo, hi) = stable_quadratic(sum, lambda * r - n, disc);
        } else {
            auto [a, b] = stable_quadratic(-sum, lambda * r - n, disc);
            lo = -b;
            hi = -a;
        }
        out.entries.push_back({std::min(lo, hi), e.multiplicity});
        out.entries.push_back({std::max(lo, hi), e.multiplicity});
        if (stats) stats->spawned = checked_add(stats->spawned, checked_mul(2, e.multiplicity));
    }
    append_seed_values(out, non_principal(p.seed_spectrum, r), 0.0, host_total, stats);
    out.coalesce();
    return out;
}

Spectrum adjacency_spectrum_regular(const SpectralStepParams& p, std::uint64_t m) {
    require_kind(p.seed_spectrum, MatrixKind::adjacency, "adjacency_spectrum_regular");
    Spectrum s = p.seed_spectrum;
    s.provenance = Provenance::closed_form;
    return iterate(std::move(s), m, [&](const Spectrum& cur) { return adjacency_step_regular(cur, p); });
}

Spectrum laplacian_step(const Spectrum& s, const SpectralStepParams& p, StepStats* stats) {
    require_kind(s, MatrixKind::laplacian, "laplacian_step");
    require_kind(p.seed_spectrum, MatrixKind::laplacian, "laplacian_step");
    const double n = static_cast<double>(p.n);
    Spectrum out = next_level(s);
    const u128 host_total = s.total_multiplicity();
    for (const auto& e : s.entries) {
        if (e.value < -kNegativeSlack)
            throw SpectralError("negative Laplacian eigenvalue " + std::to_string(e.value));
        const double nu = std::max(0.0, e.value);
        // (x - nu - n)(x - 1) = n
        const double b = nu + n + 1.0;
        const auto [lo, hi] = stable_quadratic(b, nu, b * b - 4.0 * nu);
        out.entries.push_back({lo, e.multiplicity});
        out.entries.push_back({hi, e.multiplicity});
        if (stats) stats->spawned = checked_add(stats->spawned, checked_mul(2, e.multiplicity));
    }
    append_seed_values(out, non_principal(p.seed_spectrum, 0.0), 1.0, host_total, stats);
    out.coalesce();
    return out;
}

Spectrum laplacian_spectrum(const Graph& seed, std::uint64_t m) {
    if (!seed.is_connected()) throw SpectralError("Laplacian closed form requires a connected seed");
    const SpectralStepParams p = SpectralStepParams::for_any_seed(seed, MatrixKind::laplacian);
    Spectrum s = p.seed_spectrum;
    s.provenance = Provenance::closed_form;
    return iterate(std::move(s), m, [&](const Spectrum& cur) { return laplacian_step(cur, p); });
}

Spectrum signless_step_regular(const Spectrum& s, const SpectralStepParams& p, StepStats* stats) {
    require_kind(s, MatrixKind::signless, "signless_step_regular");
    require_kind(p.seed_spectrum, MatrixKind::signless, "signless_step_regular");
    const double r = static_cast<double>(p.r), n = static_cast<double>(p.n);
    Spectrum out = next_level(s);
    const u128 host_total = s.total_multiplicity();
    for (const auto& e : s.entries) {
        // (x - q - n)(x - 2r - 1) = n
        const double q = e.value;
        const double b = q + n + 2.0 * r + 1.0;
        const double gap = (q + n) - (2.0 * r + 1.0);
        const auto [lo, hi] = stable_quadratic(b, (q + n) * (2.0 * r + 1.0) - n, gap * gap + 4.0 * n);
        out.entries.push_back({lo, e.multiplicity});
        out.entries.push_back({hi, e.multiplicity});
        if (stats) stats->spawned = checked_add(stats->spawned, checked_mul(2, e.multiplicity));
    }
    append_seed_values(out, non_principal(p.seed_spectrum, 2.0 * r), 1.0, host_total, stats);
    out.coalesce();
    return out;
}

Spectrum signless_spectrum_regular(const SpectralStepParams& p, std::uint64_t m) {
    require_kind(p.seed_spectrum, MatrixKind::signless, "signless_spectrum_regular");
    Spectrum s = p.seed_spectrum;
    s.provenance = Provenance::closed_form;
    return iterate(std::move(s), m, [&](const Spectrum& cur) { return signless_step_regular(cur, p); });
}

double spectral_radius(const Spectrum& s) {
    if (s.entries.empty()) throw SpectralError("spectral radius of an empty spectrum");
    double best = 0;
    for (const auto& e : s.entries) best = std::max(best, std::abs(e.value));
    return best;
}

double algebraic_connectivity(const Spectrum& s) {
    require_kind(s, MatrixKind::laplacian, "algebraic_connectivity");
    if (s.total_multiplicity() < 2) throw SpectralError("algebraic connectivity needs at least two eigenvalues");
    const auto& first = s.entries.front();
    return first.multiplicity >= 2 ? first.value : s.entries[1].value;
}

std::array<double, 3> star_trig_roots(double mu, std::uint64_t k, MatrixKind kind) {
    const TrigParameters t = trig_parameters(mu, k, kind);
    const double theta = std::acos(std::clamp(t.arg(), -1.0, 1.0));
    const double amplitude = (2.0 / 3.0) * std::sqrt(t.radicand);
    std::array<double, 3> roots{};
    for (int z = 0; z < 3; ++z) {
        const double y = 2.0 * z;
        roots[z] = amplitude * std::cos((y * std::numbers::pi + theta) / 3.0) + t.shift;
    }
    return roots;
}

std::array<double, 3> star_cubic_roots(double mu, std::uint64_t k, MatrixKind kind, DiscrepancyLog* log) {
    if (k < 3) throw SpectralError("star cubic requires k >= 3");
    const double kk = static_cast<double>(k);
    auto record = [&](std::string category, int branch, double formula, double reference) {
        if (log)
            log->push_back({"star_cubic_roots", std::move(category), kind, k, mu, branch, formula, reference,
                            std::abs(formula - reference)});
    };

    const double arg = trig_parameters(mu, k, kind).arg();
    const bool domain_ok = std::abs(arg) <= 1.0 + kArccosSlack;
    if (!domain_ok) record("arccos_domain", -1, arg, std::clamp(arg, -1.0, 1.0));

    const std::array<double, 3> trig = star_trig_roots(mu, k, kind);
    const std::array<double, 3> secular = star_secular_roots(mu, k, kind);

    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return trig[a] < trig[b]; });
    std::array<double, 3> out{};
    for (int i = 0; i < 3; ++i) {
        const int z = order[i];
        const double ref = secular[i];
        const bool ok = domain_ok && std::abs(trig[z] - ref) <= kRootRel * std::max(1.0, std::abs(ref));
        if (!ok && domain_ok) record("root", 2 * z, trig[z], ref);
        out[z] = ok ? trig[z] : ref;
    }

    // Claimed enclosure of the three roots.
    double lo = 0, hi = 0;
    if (kind == MatrixKind::adjacency) {
        const double w = 2.0 * std::sqrt(6.0 * kk - 3.0) / 3.0;
        lo = -mu + 2.0 * mu / 3.0 - w;
        hi = mu + w;
    } else {
        const double a = kk - 2.0, b = (kk + 1.0) * (kk + 1.0), y = 2.0 * kk + 2.0;
        const double spread = a + std::sqrt(4.0 * b - a * a);
        lo = -mu + 2.0 * mu / 3.0 + (y - spread) / 3.0;
        hi = mu + (y + spread) / 3.0;
    }
    for (int z = 0; z < 3; ++z) {
        const double slack = 1e-9 * std::max(1.0, std::abs(out[z]));
        if (out[z] < lo - slack) record("bracket", 2 * z, out[z], lo);
        else if (out[z] > hi + slack) record("bracket", 2 * z, out[z], hi);
    }
    return out;
}

Spectrum star_step(const Spectrum& s, std::uint64_t k, DiscrepancyLog* log, StepStats* stats) {
    if (s.kind == MatrixKind::laplacian) throw SpectralError("star_step covers adjacency and signless kinds");
    Spectrum out = next_level(s);
    const u128 host_total = s.total_multiplicity();
    for (const auto& e : s.entries) {
        for (double root : star_cubic_roots(e.value, k, s.kind, log)) out.entries.push_back({root, e.multiplicity});
        if (stats) stats->spawned = checked_add(stats->spawned, checked_mul(3, e.multiplicity));
    }
    // Leaf-difference vectors of each copy: A-eigenvalue 0, (Q+I)-eigenvalue 2.
    const double appended = s.kind == MatrixKind::adjacency ? 0.0 : 2.0;
    const u128 m = checked_mul(k - 2, host_total);
    out.entries.push_back({appended, m});
    if (stats) stats->appended = checked_add(stats->appended, m);
    out.coalesce();
    return out;
}

Spectrum star_adjacency_spectrum(std::uint64_t k, std::uint64_t m, DiscrepancyLog* log) {
    Spectrum s = SpectralStepParams::for_star(k, MatrixKind::adjacency).seed_spectrum;
    s.provenance = Provenance::closed_form;
    return iterate(std::move(s), m, [&](const Spectrum& cur) { return star_step(cur, k, log); });
}

Spectrum star_signless_spectrum(std::uint64_t k, std::uint64_t m, DiscrepancyLog* log) {
    Spectrum s = SpectralStepParams::for_star(k, MatrixKind::signless).seed_spectrum;
    s.provenance = Provenance::closed_form;
    return iterate(std::move(s), m, [&](const Spectrum& cur) { return star_step(cur, k, log); });
}

std::vector<EigenPair> build_one_step_eigenpairs(const Graph& seed, std::uint64_t r) {
    const auto deg = seed.regular_degree();
    if (!deg || *deg != r) throw SpectralError("one-step eigenpairs require an r-regular seed");
    if (!seed.is_connected()) throw SpectralError("one-step eigenpairs require a connected seed");
    const std::size_t n = seed.node_count();
    const std::size_t total = n * (n + 1);
    const EigenDecomposition eig = jacobi_eigen(build_matrix(seed, MatrixKind::adjacency), true);
    const double rr = static_cast<double>(r);
    const std::size_t principal = n - 1;  // r is the largest, simple eigenvalue

    std::vector<EigenPair> pairs;
    pairs.reserve(total);
    for (std::size_t i = 0; i < n; ++i) {
        const double mu = eig.values[i];
        const std::vector<double>& z = eig.vectors[i];
        const double disc = (rr - mu) * (rr - mu) + 4.0 * static_cast<double>(n);
        for (double sign : {-1.0, 1.0}) {
            const double lambda = (mu + rr + sign * std::sqrt(disc)) / 2.0;
            if (std::abs(lambda - rr) < 1e-12) throw SpectralError("degenerate eigenvector denominator lambda = r");
            EigenPair ep{lambda, std::vector<double>(total, 0.0)};
            const double scale = 1.0 / (lambda - rr);
            for (std::size_t j = 0; j < n; ++j) {
                ep.vector[j] = z[j];
                for (std::size_t p = 0; p < n; ++p) ep.vector[n + j * n + p] = scale * z[j];
            }
            pairs.push_back(std::move(ep));
        }
        if (i == principal) continue;
        for (std::size_t j = 0; j < n; ++j) {
            EigenPair ep{mu, std::vector<double>(total, 0.0)};
            for (std::size_t p = 0; p < n; ++p) ep.vector[n + j * n + p] = z[p];
            pairs.push_back(std::move(ep));
        }
    }
    return pairs;
}

}  // namespace corona
