// oracle.hpp: dense ground-truth numerics for desk-scale cross-checks.
#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "corona/graph.hpp"
#include "corona/spectrum.hpp"
#include "corona/structural.hpp"

namespace corona {

inline constexpr std::size_t kDefaultOracleCap = 5000;
inline constexpr std::size_t kBruteCap = 500;

struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MultiplicityMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Row-major symmetric matrix; set() writes both triangles.
class DenseSymMatrix {
public:
    explicit DenseSymMatrix(std::size_t order) : order_(order), a_(order * order, 0.0) {}

    std::size_t order() const noexcept { return order_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * order_ + j]; }
    void set(std::size_t i, std::size_t j, double v) noexcept {
        a_[i * order_ + j] = v;
        a_[j * order_ + i] = v;
    }
    double trace() const noexcept;
    double frobenius_norm() const noexcept;
    std::span<const double> row(std::size_t i) const noexcept { return {a_.data() + i * order_, order_}; }
    std::vector<double> multiply(std::span<const double> x) const;

private:
    std::size_t order_;
    std::vector<double> a_;
};

DenseSymMatrix build_matrix(const Graph& g, MatrixKind kind, std::size_t cap = kDefaultOracleCap);

struct EigenDecomposition {
    std::vector<double> values;                // ascending
    std::vector<std::vector<double>> vectors;  // vectors[i] pairs with values[i]; empty if not requested
    std::size_t sweeps = 0;
};

// Cyclic-by-row Jacobi. Converged when the off-diagonal Frobenius norm falls
// below 1e-12 * ||A||_F; throws NonConvergence after `max_sweeps`.
EigenDecomposition jacobi_eigen(const DenseSymMatrix& mat, bool want_vectors, std::size_t max_sweeps = 100);
std::vector<double> sym_eigenvalues(const DenseSymMatrix& mat);

// ||M x - value x||_2 computed against the sparse graph matrix.
double eigen_residual(const Graph& g, MatrixKind kind, double value, std::span<const double> x);

struct SpectrumMismatch {
    std::size_t index = 0;
    double closed = 0;
    double numeric = 0;
};

struct MatchReport {
    double max_abs_delta = 0;
    double mean_abs_delta = 0;
    std::size_t count_mismatched = 0;
    double residual_max = 0;
    bool passed = false;
    double tolerance = 0;
    std::vector<SpectrumMismatch> mismatches;
};

// Compares after expanding multiplicities and sorting both sides; a total
// mismatch throws MultiplicityMismatch.
MatchReport compare_spectra(const Spectrum& closed, std::vector<double> numeric, double tol);

struct BruteBetweenness {
    BetweennessVector b;
    bool exact = true;  // false when rational accumulation overflowed 64 bits
};

BruteBetweenness brute_betweenness(const Graph& g);
std::size_t brute_diameter(const Graph& g);

// Corona step of a star seed S_k on an eigenvalue mu of the host graph: the
// new eigenvalues are those of the 3x3 equitable quotient over
// {host node, copy center, copy leaves}, symmetrized by sqrt(k-1).
DenseSymMatrix star_quotient(double mu, std::uint64_t k, MatrixKind kind);
std::array<double, 3> star_secular_roots(double mu, std::uint64_t k, MatrixKind kind);
// det(lambda I - quotient), monic cubic.
double star_secular_polynomial(double lambda, double mu, std::uint64_t k, MatrixKind kind);

}  // namespace corona
