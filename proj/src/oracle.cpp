#include "corona/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace corona {

double DenseSymMatrix::trace() const noexcept {
    double t = 0;
    for (std::size_t i = 0; i < order_; ++i) t += a_[i * order_ + i];
    return t;
}

double DenseSymMatrix::frobenius_norm() const noexcept {
    double s = 0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
}

std::vector<double> DenseSymMatrix::multiply(std::span<const double> x) const {
    std::vector<double> y(order_, 0.0);
    for (std::size_t i = 0; i < order_; ++i) {
        const double* r = a_.data() + i * order_;
        double acc = 0;
        for (std::size_t j = 0; j < order_; ++j) acc += r[j] * x[j];
        y[i] = acc;
    }
    return y;
}

DenseSymMatrix build_matrix(const Graph& g, MatrixKind kind, std::size_t cap) {
    const std::size_t n = g.node_count();
    if (n > cap)
        throw CapExceeded("dense matrix of order " + std::to_string(n) + " exceeds oracle cap " + std::to_string(cap));
    DenseSymMatrix m(n);
    const double off = kind == MatrixKind::laplacian ? -1.0 : 1.0;
    for (node_t u = 0; u < n; ++u) {
        for (node_t v : g.neighbors(u))
            if (u < v) m.set(u, v, off);
        if (kind != MatrixKind::adjacency) m.set(u, u, static_cast<double>(g.degree(u)));
    }
    return m;
}

EigenDecomposition jacobi_eigen(const DenseSymMatrix& mat, bool want_vectors, std::size_t max_sweeps) {
    const std::size_t n = mat.order();
    if (n == 0) throw SpectralError("eigenvalues of an empty matrix");
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = mat(i, j);
    std::vector<double> v;
    if (want_vectors) {
        v.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
    }
    const double target = 1e-12 * mat.frobenius_norm();

    auto off_norm = [&] {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a[i * n + j] * a[i * n + j];
        return std::sqrt(s);
    };

    EigenDecomposition out;
    bool converged = false;
    for (std::size_t sweep = 0; sweep <= max_sweeps; ++sweep) {
        if (off_norm() <= target) {
            converged = true;
            out.sweeps = sweep;
            break;
        }
        if (sweep == max_sweeps) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double app = a[p * n + p], aqq = a[q * n + q];
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                double* rp = a.data() + p * n;
                double* rq = a.data() + q * n;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = rp[k], akq = rq[k];
                    const double np = c * akp - s * akq;
                    const double nq = s * akp + c * akq;
                    rp[k] = np;
                    rq[k] = nq;
                    a[k * n + p] = np;
                    a[k * n + q] = nq;
                }
                rp[p] = app - t * apq;
                rq[q] = aqq + t * apq;
                rp[q] = 0.0;
                rq[p] = 0.0;
                if (want_vectors) {
                    for (std::size_t k = 0; k < n; ++k) {
                        double* row = v.data() + k * n;
                        const double vkp = row[p], vkq = row[q];
                        row[p] = c * vkp - s * vkq;
                        row[q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
    if (!converged)
        throw NonConvergence("Jacobi did not converge within " + std::to_string(max_sweeps) + " sweeps (order " +
                             std::to_string(n) + ")");

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });
    out.values.reserve(n);
    for (std::size_t i : idx) out.values.push_back(a[i * n + i]);
    if (want_vectors) {
        out.vectors.reserve(n);
        for (std::size_t i : idx) {
            std::vector<double> col(n);
            for (std::size_t k = 0; k < n; ++k) col[k] = v[k * n + i];
            out.vectors.push_back(std::move(col));
        }
    }
    return out;
}

std::vector<double> sym_eigenvalues(const DenseSymMatrix& mat) { return jacobi_eigen(mat, false).values; }

double eigen_residual(const Graph& g, MatrixKind kind, double value, std::span<const double> x) {
    double s = 0;
    for (node_t u = 0; u < g.node_count(); ++u) {
        double nb = 0;
        for (node_t v : g.neighbors(u)) nb += x[v];
        const double deg = static_cast<double>(g.degree(u));
        double y = 0;
        switch (kind) {
            case MatrixKind::adjacency: y = nb; break;
            case MatrixKind::laplacian: y = deg * x[u] - nb; break;
            case MatrixKind::signless: y = deg * x[u] + nb; break;
        }
        const double r = y - value * x[u];
        s += r * r;
    }
    return std::sqrt(s);
}

MatchReport compare_spectra(const Spectrum& closed, std::vector<double> numeric, double tol) {
    if (closed.total_multiplicity() != static_cast<u128>(numeric.size()))
        throw MultiplicityMismatch("closed-form total " + to_string(closed.total_multiplicity()) +
                                   " != numeric count " + std::to_string(numeric.size()));
    const std::vector<double> expanded = closed.expanded();
    std::sort(numeric.begin(), numeric.end());
    MatchReport r;
    r.tolerance = tol;
    double sum = 0;
    for (std::size_t i = 0; i < expanded.size(); ++i) {
        const double d = std::abs(expanded[i] - numeric[i]);
        sum += d;
        r.max_abs_delta = std::max(r.max_abs_delta, d);
        if (d > tol) {
            ++r.count_mismatched;
            r.mismatches.push_back({i, expanded[i], numeric[i]});
        }
    }
    r.mean_abs_delta = expanded.empty() ? 0.0 : sum / static_cast<double>(expanded.size());
    r.passed = r.max_abs_delta <= tol;
    return r;
}

namespace {

struct AllPairs {
    std::size_t n = 0;
    std::vector<std::uint32_t> dist;
    std::vector<std::uint64_t> sigma;
    std::vector<double> sigma_real;
    bool sigma_exact = true;
};

AllPairs all_pairs_bfs(const Graph& g) {
    AllPairs ap;
    const std::size_t n = g.node_count();
    ap.n = n;
    constexpr auto unreached = std::numeric_limits<std::uint32_t>::max();
    ap.dist.assign(n * n, unreached);
    ap.sigma.assign(n * n, 0);
    ap.sigma_real.assign(n * n, 0.0);
    std::vector<node_t> queue(n);
    for (std::size_t s = 0; s < n; ++s) {
        auto* dist = ap.dist.data() + s * n;
        auto* sig = ap.sigma.data() + s * n;
        auto* sigr = ap.sigma_real.data() + s * n;
        std::size_t head = 0, tail = 0;
        queue[tail++] = static_cast<node_t>(s);
        dist[s] = 0;
        sig[s] = 1;
        sigr[s] = 1.0;
        while (head < tail) {
            const node_t u = queue[head++];
            for (node_t v : g.neighbors(u)) {
                if (dist[v] == unreached) {
                    dist[v] = dist[u] + 1;
                    queue[tail++] = v;
                }
                if (dist[v] == dist[u] + 1) {
                    if (__builtin_add_overflow(sig[v], sig[u], &sig[v])) ap.sigma_exact = false;
                    sigr[v] += sigr[u];
                }
            }
        }
    }
    return ap;
}

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        const u128 r = a % b;
        a = b;
        b = r;
    }
    return a;
}

// Running sum of nonnegative fractions; drops to floating point on overflow.
struct RationalAccumulator {
    std::uint64_t num = 0;
    std::uint64_t den = 1;
    double real = 0;
    bool exact = true;

    void add(u128 a, u128 b) {
        real += to_double(a) / to_double(b);
        if (!exact) return;
        const u128 g0 = gcd128(a, b);
        a /= g0;
        b /= g0;
        const u128 g = gcd128(static_cast<u128>(den), b);
        const u128 lcm_den = static_cast<u128>(den) / g * b;
        u128 n1, n2, total;
        if (__builtin_mul_overflow(static_cast<u128>(num), lcm_den / den, &n1) ||
            __builtin_mul_overflow(a, lcm_den / b, &n2) || __builtin_add_overflow(n1, n2, &total)) {
            exact = false;
            return;
        }
        const u128 r = gcd128(total, lcm_den);
        const u128 nn = total / r, dd = lcm_den / r;
        if (!fits_u64(nn) || !fits_u64(dd)) {
            exact = false;
            return;
        }
        num = static_cast<std::uint64_t>(nn);
        den = static_cast<std::uint64_t>(dd);
    }

    double value() const {
        return exact ? static_cast<double>(num) / static_cast<double>(den) : real;
    }
};

}  // namespace

BruteBetweenness brute_betweenness(const Graph& g) {
    const std::size_t n = g.node_count();
    if (n > kBruteCap)
        throw CapExceeded("brute betweenness limited to " + std::to_string(kBruteCap) + " nodes");
    if (n > 0 && !g.is_connected()) throw DisconnectedGraph("brute betweenness requires a connected graph");
    const AllPairs ap = all_pairs_bfs(g);
    std::vector<RationalAccumulator> acc(n);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = s + 1; t < n; ++t) {
            const std::uint32_t dst = ap.dist[s * n + t];
            for (std::size_t i = 0; i < n; ++i) {
                if (i == s || i == t) continue;
                if (ap.dist[s * n + i] + ap.dist[i * n + t] != dst) continue;
                if (ap.sigma_exact) {
                    acc[i].add(static_cast<u128>(ap.sigma[s * n + i]) * ap.sigma[i * n + t], ap.sigma[s * n + t]);
                } else {
                    acc[i].exact = false;
                    acc[i].real += ap.sigma_real[s * n + i] * ap.sigma_real[i * n + t] / ap.sigma_real[s * n + t];
                }
            }
        }
    BruteBetweenness out;
    out.b.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.b.values[i] = acc[i].value();
        out.exact = out.exact && acc[i].exact;
    }
    return out;
}

std::size_t brute_diameter(const Graph& g) {
    const std::size_t n = g.node_count();
    if (n > kBruteCap) throw CapExceeded("brute diameter limited to " + std::to_string(kBruteCap) + " nodes");
    if (n == 0) throw DomainError("diameter of an empty graph");
    const AllPairs ap = all_pairs_bfs(g);
    std::uint32_t best = 0;
    for (std::uint32_t d : ap.dist) {
        if (d == std::numeric_limits<std::uint32_t>::max()) throw DisconnectedGraph("diameter is infinite");
        best = std::max(best, d);
    }
    return best;
}

DenseSymMatrix star_quotient(double mu, std::uint64_t k, MatrixKind kind) {
    if (k < 3) throw SpectralError("star quotient needs k >= 3");
    const double root = std::sqrt(static_cast<double>(k - 1));
    DenseSymMatrix q(3);
    switch (kind) {
        case MatrixKind::adjacency:
            q.set(0, 0, mu);
            q.set(1, 1, 0.0);
            q.set(2, 2, 0.0);
            break;
        case MatrixKind::signless:
            q.set(0, 0, mu + static_cast<double>(k));
            q.set(1, 1, static_cast<double>(k));
            q.set(2, 2, 2.0);
            break;
        case MatrixKind::laplacian:
            throw SpectralError("star quotient is defined for adjacency and signless kinds");
    }
    q.set(0, 1, 1.0);
    q.set(0, 2, root);
    q.set(1, 2, root);
    return q;
}

double star_secular_polynomial(double lambda, double mu, std::uint64_t k, MatrixKind kind) {
    const DenseSymMatrix q = star_quotient(mu, k, kind);
    const double a = lambda - q(0, 0), d = lambda - q(1, 1), f = lambda - q(2, 2);
    const double b = -q(0, 1), c = -q(0, 2), e = -q(1, 2);
    return a * (d * f - e * e) - b * (b * f - c * e) + c * (b * e - c * d);
}

std::array<double, 3> star_secular_roots(double mu, std::uint64_t k, MatrixKind kind) {
    const auto values = sym_eigenvalues(star_quotient(mu, k, kind));
    std::array<double, 3> roots{values[0], values[1], values[2]};
    // Newton polish on the characteristic cubic; keep a step only if it helps.
    for (double& x : roots) {
        for (int it = 0; it < 3; ++it) {
            const double h = 1e-6 * std::max(1.0, std::abs(x));
            const double p = star_secular_polynomial(x, mu, k, kind);
            const double dp = (star_secular_polynomial(x + h, mu, k, kind) - star_secular_polynomial(x - h, mu, k, kind)) / (2 * h);
            if (dp == 0) break;
            const double next = x - p / dp;
            if (std::abs(star_secular_polynomial(next, mu, k, kind)) < std::abs(p)) x = next;
            else break;
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace corona
