#pragma once
// Subspaces of a finite-dimensional inner-product space and the three
// quantum-logical connectives on them: meet (intersection), join (linear
// closure) and complement (orthocomplement). A Subspace is an immutable
// value: ambient dimension plus an orthonormal basis matrix. Equality is
// always projector equality, never basis comparison.

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "orthomod/numeric.hpp"

namespace orthomod {

using Index = Eigen::Index;

template <ScalarField S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <ScalarField S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

// Inner product, linear in the first argument: (x, y) = sum_i x_i conj(y_i).
template <ScalarField S>
S inner_product(const Vector<S>& x, const Vector<S>& y) {
    if (x.size() != y.size())
        throw DimensionMismatch("inner_product: vectors of dimension " +
                                std::to_string(x.size()) + " and " +
                                std::to_string(y.size()));
    return y.dot(x);
}

template <ScalarField S>
double norm(const Vector<S>& x) {
    return x.norm();
}

template <ScalarField S>
class Subspace {
public:
    // The zero subspace {0}: lattice bottom. Represented by an empty basis.
    static Subspace zero(Index ambient_dim) {
        check_ambient(ambient_dim);
        return Subspace(ambient_dim, Matrix<S>(ambient_dim, 0));
    }

    // The whole space: lattice top.
    static Subspace full(Index ambient_dim) {
        check_ambient(ambient_dim);
        return Subspace(ambient_dim,
                        Matrix<S>::Identity(ambient_dim, ambient_dim));
    }

    // Wrap a matrix whose columns are already orthonormal. Used by the
    // algebra routines below and by tests that build exact coordinate
    // subspaces; validated against the given tolerance.
    static Subspace from_orthonormal_basis(Index ambient_dim, Matrix<S> basis,
                                           const NumericPolicy& policy = {}) {
        check_ambient(ambient_dim);
        if (basis.rows() != ambient_dim || basis.cols() > ambient_dim)
            throw DimensionMismatch(
                "subspace basis must be n x k with k <= n");
        if (!basis.allFinite())
            throw std::invalid_argument("subspace basis has non-finite entries");
        const Index k = basis.cols();
        const double defect =
            (basis.adjoint() * basis - Matrix<S>::Identity(k, k)).norm();
        if (defect > policy.eq_tol)
            throw std::invalid_argument(
                "subspace basis columns are not orthonormal (defect " +
                std::to_string(defect) + ")");
        return Subspace(ambient_dim, std::move(basis));
    }

    Index ambient_dim() const { return ambient_dim_; }
    Index dim() const { return basis_.cols(); }
    const Matrix<S>& basis() const { return basis_; }

    // Orthogonal projector B B^H: the representation-independent fingerprint.
    Matrix<S> projector() const { return basis_ * basis_.adjoint(); }

private:
    Subspace(Index n, Matrix<S> basis)
        : ambient_dim_(n), basis_(std::move(basis)) {}

    static void check_ambient(Index n) {
        if (n < 1)
            throw std::invalid_argument("ambient dimension must be >= 1");
    }

    Index ambient_dim_;
    Matrix<S> basis_;  // n x k, orthonormal columns; k = 0 is the zero subspace
};

// Span of the columns of `generators`, with numerical rank determined by the
// policy: singular values are kept iff sigma_i > rank_cutoff_rel * sigma_max,
// and sigma_max = 0 yields the zero subspace.
template <ScalarField S>
Subspace<S> orthonormalize(const Matrix<S>& generators,
                           const NumericPolicy& policy) {
    const Index n = generators.rows();
    if (n < 1) throw std::invalid_argument("ambient dimension must be >= 1");
    if (!generators.allFinite())
        throw std::invalid_argument("generators have non-finite entries");
    if (generators.cols() == 0) return Subspace<S>::zero(n);

    Eigen::JacobiSVD<Matrix<S>> svd(generators, Eigen::ComputeThinU);
    const auto& sigma = svd.singularValues();
    const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
    Index rank = 0;
    if (sigma_max > 0.0) {
        for (Index i = 0; i < sigma.size(); ++i)
            if (sigma(i) > policy.rank_cutoff_rel * sigma_max) ++rank;
    }
    if (rank == 0) return Subspace<S>::zero(n);
    return Subspace<S>::from_orthonormal_basis(
        n, svd.matrixU().leftCols(rank), policy);
}

// Span of a list of generating vectors. The list may be empty, so the
// ambient dimension is passed explicitly.
template <ScalarField S>
Subspace<S> orthonormalize(Index ambient_dim,
                           const std::vector<Vector<S>>& generators,
                           const NumericPolicy& policy) {
    Matrix<S> m(ambient_dim, static_cast<Index>(generators.size()));
    for (Index j = 0; j < m.cols(); ++j) {
        const auto& g = generators[static_cast<std::size_t>(j)];
        if (g.size() != ambient_dim)
            throw DimensionMismatch(
                "generator " + std::to_string(j) + " has dimension " +
                std::to_string(g.size()) + ", expected " +
                std::to_string(ambient_dim));
        m.col(j) = g;
    }
    return orthonormalize<S>(m, policy);
}

// ||P_S v - v||, the distance from v to the subspace.
template <ScalarField S>
double membership_residual(const Subspace<S>& s, const Vector<S>& v) {
    if (v.size() != s.ambient_dim())
        throw DimensionMismatch("vector dimension " + std::to_string(v.size()) +
                                " does not match ambient dimension " +
                                std::to_string(s.ambient_dim()));
    const Vector<S> projected = s.basis() * (s.basis().adjoint() * v);
    return (projected - v).norm();
}

// Membership valuation: v in S iff ||P_S v - v|| <= tol * max(1, ||v||).
// The zero vector belongs to every subspace.
template <ScalarField S>
bool contains_vector(const Subspace<S>& s, const Vector<S>& v,
                     const NumericPolicy& policy) {
    const double scale = std::max(1.0, v.norm());
    return membership_residual(s, v) <= policy.membership_tol * scale;
}

namespace detail {

template <ScalarField S>
void require_same_ambient(const Subspace<S>& a, const Subspace<S>& b,
                          const char* op) {
    if (a.ambient_dim() != b.ambient_dim())
        throw DimensionMismatch(std::string(op) + ": ambient dimensions " +
                                std::to_string(a.ambient_dim()) + " and " +
                                std::to_string(b.ambient_dim()) + " differ");
}

}  // namespace detail

// Quantum negation: the orthogonal complement, dim(A') = n - dim(A).
template <ScalarField S>
Subspace<S> complement(const Subspace<S>& a, const NumericPolicy& policy) {
    const Index n = a.ambient_dim();
    const Index k = a.dim();
    if (k == 0) return Subspace<S>::full(n);
    if (k == n) return Subspace<S>::zero(n);
    // Basis columns are orthonormal, so the full left singular basis splits
    // exactly into range (first k columns) and complement (last n - k).
    Eigen::JacobiSVD<Matrix<S>> svd(a.basis(), Eigen::ComputeFullU);
    return Subspace<S>::from_orthonormal_basis(
        n, svd.matrixU().rightCols(n - k), policy);
}

// Quantum disjunction: the linear closure of the union.
template <ScalarField S>
Subspace<S> join(const Subspace<S>& a, const Subspace<S>& b,
                 const NumericPolicy& policy) {
    detail::require_same_ambient(a, b, "join");
    const Index n = a.ambient_dim();
    Matrix<S> cat(n, a.dim() + b.dim());
    cat.leftCols(a.dim()) = a.basis();
    cat.rightCols(b.dim()) = b.basis();
    return orthonormalize<S>(cat, policy);
}

// Quantum conjunction: the intersection, computed via the De Morgan route
// (A' v B')'.
template <ScalarField S>
Subspace<S> meet(const Subspace<S>& a, const Subspace<S>& b,
                 const NumericPolicy& policy) {
    detail::require_same_ambient(a, b, "meet");
    return complement(
        join(complement(a, policy), complement(b, policy), policy), policy);
}

// ||P_A - P_B||_F.
template <ScalarField S>
double projector_distance(const Subspace<S>& a, const Subspace<S>& b) {
    detail::require_same_ambient(a, b, "projector_distance");
    return (a.projector() - b.projector()).norm();
}

// Lattice order a <= b, i.e. a is a subspace of b: ||P_b P_a - P_a||_F <= tol.
template <ScalarField S>
bool contained_in(const Subspace<S>& a, const Subspace<S>& b,
                  const NumericPolicy& policy) {
    detail::require_same_ambient(a, b, "contained_in");
    const Matrix<S> pa = a.projector();
    return (b.projector() * pa - pa).norm() <= policy.eq_tol;
}

template <ScalarField S>
bool equal(const Subspace<S>& a, const Subspace<S>& b,
           const NumericPolicy& policy) {
    return projector_distance(a, b) <= policy.eq_tol;
}

namespace detail {

template <ScalarField S>
S draw_gaussian(std::mt19937_64& eng, std::normal_distribution<double>& dist) {
    if constexpr (std::same_as<S, double>) {
        return dist(eng);
    } else {
        const double re = dist(eng);
        const double im = dist(eng);
        return S(re, im);
    }
}

}  // namespace detail

// Haar-style random k-dimensional subspace: orthonormalization of k
// independent Gaussian vectors (real or complex per the scalar field).
// Deterministic for a fixed (n, k, seed).
template <ScalarField S>
Subspace<S> random_subspace(Index n, Index k, std::uint64_t seed,
                            const NumericPolicy& policy) {
    if (k < 0 || k > n)
        throw std::invalid_argument("random_subspace: need 0 <= k <= n");
    if (k == 0) return Subspace<S>::zero(n);
    std::normal_distribution<double> dist(0.0, 1.0);
    for (std::uint64_t attempt = 0; attempt < 16; ++attempt) {
        std::mt19937_64 eng(mix_seed(seed, attempt));
        Matrix<S> m(n, k);
        for (Index j = 0; j < k; ++j)
            for (Index i = 0; i < n; ++i)
                m(i, j) = detail::draw_gaussian<S>(eng, dist);
        Subspace<S> s = orthonormalize<S>(m, policy);
        if (s.dim() == k) return s;  // Gaussian draws are rank-deficient only
                                     // with probability zero
    }
    throw Error("random_subspace: failed to draw a full-rank sample");
}

}  // namespace orthomod
