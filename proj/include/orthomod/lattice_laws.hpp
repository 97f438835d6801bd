#pragma once
// Lattice-law checking on subspaces: the orthomodular and modular laws (which
// hold in every finite-dimensional subspace lattice), distributivity (which
// is contingent and generically fails), and the excluded-middle membership
// demonstration. Law checks never conflate precondition violations with law
// failures.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>

#include "orthomod/subspace.hpp"

namespace orthomod {

// A failing instance: the inputs, both computed sides as projectors, and
// their Frobenius distance. Everything needed to re-verify independently.
template <ScalarField S>
struct LawWitness {
    Subspace<S> x, y;
    std::optional<Subspace<S>> z;  // absent for the two-variable laws
    Matrix<S> lhs_projector, rhs_projector;
    Index lhs_dim = 0, rhs_dim = 0;
    double distance = 0.0;
};

template <ScalarField S>
struct LawReport {
    std::string law_name;
    bool holds = false;
    std::optional<LawWitness<S>> witness;  // present iff !holds
};

namespace detail {

template <ScalarField S>
LawReport<S> make_report(std::string name, const Subspace<S>& x,
                         const Subspace<S>& y, std::optional<Subspace<S>> z,
                         const Subspace<S>& lhs, const Subspace<S>& rhs,
                         const NumericPolicy& policy) {
    const double dist = projector_distance(lhs, rhs);
    LawReport<S> report{std::move(name), dist <= policy.eq_tol, std::nullopt};
    if (!report.holds) {
        report.witness = LawWitness<S>{
            x,         y,         std::move(z), lhs.projector(),
            rhs.projector(), lhs.dim(), rhs.dim(),    dist};
    }
    return report;
}

}  // namespace detail

// Orthomodular law: x <= y  =>  x v (x' ^ y) = y.
template <ScalarField S>
LawReport<S> check_orthomodular(const Subspace<S>& x, const Subspace<S>& y,
                                const NumericPolicy& policy) {
    if (!contained_in(x, y, policy))
        throw PreconditionError("orthomodular law requires x <= y");
    const auto lhs = join(x, meet(complement(x, policy), y, policy), policy);
    return detail::make_report<S>("orthomodular", x, y, std::nullopt, lhs, y,
                                  policy);
}

// Modular law: x <= y  =>  x v (y ^ z) = y ^ (x v z).
template <ScalarField S>
LawReport<S> check_modular(const Subspace<S>& x, const Subspace<S>& y,
                           const Subspace<S>& z, const NumericPolicy& policy) {
    if (!contained_in(x, y, policy))
        throw PreconditionError("modular law requires x <= y");
    detail::require_same_ambient(x, z, "check_modular");
    const auto lhs = join(x, meet(y, z, policy), policy);
    const auto rhs = meet(y, join(x, z, policy), policy);
    return detail::make_report<S>("modular", x, y, z, lhs, rhs, policy);
}

// Distributivity: x ^ (y v z) = (x ^ y) v (x ^ z). Contingent; either
// outcome is a legitimate report.
template <ScalarField S>
LawReport<S> check_distributivity(const Subspace<S>& x, const Subspace<S>& y,
                                  const Subspace<S>& z,
                                  const NumericPolicy& policy) {
    detail::require_same_ambient(x, y, "check_distributivity");
    detail::require_same_ambient(x, z, "check_distributivity");
    const auto lhs = meet(x, join(y, z, policy), policy);
    const auto rhs = join(meet(x, y, policy), meet(x, z, policy), policy);
    return detail::make_report<S>("distributivity", x, y, z, lhs, rhs, policy);
}

// Membership triple for p, p' and p v p' at a state vector. The lattice
// identity join(S, S') = H always holds; what fails is truth-functionality
// of the membership valuation.
struct MembershipTriple {
    bool in_subspace = false;
    bool in_complement = false;
    bool in_join = false;
};

template <ScalarField S>
MembershipTriple excluded_middle_demo(const Subspace<S>& s,
                                      const Vector<S>& v,
                                      const NumericPolicy& policy) {
    if (v.norm() == 0.0)
        throw std::invalid_argument(
            "excluded_middle_demo: the zero vector belongs to every subspace "
            "and is uninformative");
    const auto comp = complement(s, policy);
    return MembershipTriple{contains_vector(s, v, policy),
                            contains_vector(comp, v, policy),
                            contains_vector(join(s, comp, policy), v, policy)};
}

// Random pair x <= y, containment guaranteed by construction: y is drawn
// Haar-style and x spans random combinations of y's basis vectors.
template <ScalarField S>
std::pair<Subspace<S>, Subspace<S>> random_contained_pair(
    Index n, std::uint64_t seed, const NumericPolicy& policy) {
    std::mt19937_64 eng(splitmix64(seed));
    const Index ky = static_cast<Index>(eng() % static_cast<std::uint64_t>(n + 1));
    const auto y = random_subspace<S>(n, ky, mix_seed(seed, 1), policy);
    const Index kx = ky == 0 ? 0 : static_cast<Index>(eng() % static_cast<std::uint64_t>(ky + 1));
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix<S> combo(ky, kx);
    for (Index j = 0; j < kx; ++j)
        for (Index i = 0; i < ky; ++i)
            combo(i, j) = detail::draw_gaussian<S>(eng, dist);
    const auto x = orthonormalize<S>(Matrix<S>(y.basis() * combo), policy);
    return {x, y};
}

// Random 1-dim triple biased toward the classic failure configuration:
// y and z are independent random lines, x is a random line inside y v z
// (three coplanar lines). In dimension >= 3 independent lines would satisfy
// distributivity vacuously (both sides zero), so the coplanar draw is what
// makes counterexamples appear in every dimension.
template <ScalarField S>
std::array<Subspace<S>, 3> random_coplanar_line_triple(
    Index n, std::uint64_t seed, const NumericPolicy& policy) {
    const auto y = random_subspace<S>(n, 1, mix_seed(seed, 1), policy);
    const auto z = random_subspace<S>(n, 1, mix_seed(seed, 2), policy);
    const auto yz = join(y, z, policy);
    std::mt19937_64 eng(mix_seed(seed, 3));
    std::normal_distribution<double> dist(0.0, 1.0);
    for (int attempt = 0; attempt < 16; ++attempt) {
        Vector<S> coeff(yz.dim());
        for (Index i = 0; i < coeff.size(); ++i)
            coeff(i) = detail::draw_gaussian<S>(eng, dist);
        const auto x = orthonormalize<S>(Matrix<S>(yz.basis() * coeff), policy);
        if (x.dim() == 1) return {x, y, z};
    }
    throw Error("random_coplanar_line_triple: degenerate draw");
}

// Aggregate result of a seeded law sweep. Per-trial seeds are derived from
// (seed, trial index), so a partitioned run would reproduce the sequential
// result exactly.
template <ScalarField S>
struct LawSweep {
    std::string law_name;
    int trials = 0;
    int held = 0;
    std::optional<LawWitness<S>> first_failure;
};

template <ScalarField S>
LawSweep<S> sweep_orthomodular(Index n, int trials, std::uint64_t seed,
                               const NumericPolicy& policy) {
    LawSweep<S> sweep{"orthomodular", trials, 0, std::nullopt};
    for (int t = 0; t < trials; ++t) {
        const auto [x, y] = random_contained_pair<S>(
            n, mix_seed(seed, static_cast<std::uint64_t>(t)), policy);
        auto report = check_orthomodular(x, y, policy);
        if (report.holds)
            ++sweep.held;
        else if (!sweep.first_failure)
            sweep.first_failure = std::move(report.witness);
    }
    return sweep;
}

template <ScalarField S>
LawSweep<S> sweep_modular(Index n, int trials, std::uint64_t seed,
                          const NumericPolicy& policy) {
    LawSweep<S> sweep{"modular", trials, 0, std::nullopt};
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t ts = mix_seed(seed, static_cast<std::uint64_t>(t));
        const auto [x, y] = random_contained_pair<S>(n, ts, policy);
        std::mt19937_64 eng(mix_seed(ts, 4));
        const Index kz = static_cast<Index>(eng() % static_cast<std::uint64_t>(n + 1));
        const auto z = random_subspace<S>(n, kz, mix_seed(ts, 5), policy);
        auto report = check_modular(x, y, z, policy);
        if (report.holds)
            ++sweep.held;
        else if (!sweep.first_failure)
            sweep.first_failure = std::move(report.witness);
    }
    return sweep;
}

template <ScalarField S>
LawSweep<S> sweep_distributivity(Index n, int trials, std::uint64_t seed,
                                 const NumericPolicy& policy) {
    LawSweep<S> sweep{"distributivity", trials, 0, std::nullopt};
    for (int t = 0; t < trials; ++t) {
        const auto [x, y, z] = random_coplanar_line_triple<S>(
            n, mix_seed(seed, static_cast<std::uint64_t>(t)), policy);
        auto report = check_distributivity(x, y, z, policy);
        if (report.holds)
            ++sweep.held;
        else if (!sweep.first_failure)
            sweep.first_failure = std::move(report.witness);
    }
    return sweep;
}

// First failing triple of 1-dim subspaces, or nothing. Deterministic per
// seed. In dimension 1 the lattice is {0, H} (Boolean), so nothing is found.
template <ScalarField S>
std::optional<LawWitness<S>> find_distributivity_counterexample(
    Index n, int trials, std::uint64_t seed, const NumericPolicy& policy) {
    if (n < 1) throw std::invalid_argument("ambient dimension must be >= 1");
    return sweep_distributivity<S>(n, trials, seed, policy).first_failure;
}

}  // namespace orthomod
