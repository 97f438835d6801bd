#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>
#include <random>
#include <vector>

#include "coordinate_oracle.hpp"
#include "orthomod/subspace.hpp"

using namespace orthomod;
using Cplx = std::complex<double>;
using RSub = Subspace<double>;
using CSub = Subspace<Cplx>;

namespace {

const NumericPolicy kPolicy{};

Vector<double> vec2(double a, double b) {
    Vector<double> v(2);
    v << a, b;
    return v;
}

Vector<double> vec3(double a, double b, double c) {
    Vector<double> v(3);
    v << a, b, c;
    return v;
}

template <ScalarField S>
Vector<S> random_vector(Index n, std::mt19937_64& eng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Vector<S> v(n);
    for (Index i = 0; i < n; ++i) v(i) = detail::draw_gaussian<S>(eng, dist);
    return v;
}

}  // namespace

TEST_CASE("inner product on standard examples") {
    CHECK(inner_product<double>(vec2(1, 0), vec2(1, 0)) == doctest::Approx(1.0));
    CHECK(inner_product<double>(vec2(1, 0), vec2(0, 1)) == doctest::Approx(0.0));
    CHECK(inner_product<double>(vec2(1, 1), vec2(1, -1)) == doctest::Approx(0.0));
    CHECK_THROWS_AS(inner_product<double>(vec2(1, 0), vec3(1, 0, 0)),
                    DimensionMismatch);
}

TEST_CASE("inner product axioms on sampled complex vectors") {
    std::mt19937_64 eng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Index n = 1 + static_cast<Index>(eng() % 6);
        const auto x = random_vector<Cplx>(n, eng);
        const auto y = random_vector<Cplx>(n, eng);
        const auto z = random_vector<Cplx>(n, eng);
        const Cplx alpha(0.3, -1.2);

        // conjugate symmetry
        CHECK(std::abs(inner_product<Cplx>(x, y) -
                       std::conj(inner_product<Cplx>(y, x))) < 1e-12);
        // linearity in the first argument
        CHECK(std::abs(inner_product<Cplx>(Vector<Cplx>(alpha * x + y), z) -
                       (alpha * inner_product<Cplx>(x, z) +
                        inner_product<Cplx>(y, z))) < 1e-10);
        // (x, x) real and nonnegative
        const Cplx xx = inner_product<Cplx>(x, x);
        CHECK(std::abs(xx.imag()) < 1e-12);
        CHECK(xx.real() >= 0.0);
    }
}

TEST_CASE("norm examples and axioms") {
    CHECK(norm<double>(vec3(0, 0, 0)) == 0.0);
    CHECK(norm<double>(vec2(3, 4)) == doctest::Approx(5.0));

    std::mt19937_64 eng(12);
    std::uniform_real_distribution<double> lam(-4.0, 4.0);
    for (int trial = 0; trial < 50; ++trial) {
        const Index n = 1 + static_cast<Index>(eng() % 6);
        const auto x = random_vector<double>(n, eng);
        const auto y = random_vector<double>(n, eng);
        const double l = lam(eng);
        CHECK(norm<double>(Vector<double>(l * x)) ==
              doctest::Approx(std::abs(l) * norm<double>(x)));
        CHECK(norm<double>(Vector<double>(x + y)) <=
              norm<double>(x) + norm<double>(y) + 1e-12);
        CHECK(norm<double>(x) == doctest::Approx(std::sqrt(
                                     inner_product<double>(x, x))));
    }
}

TEST_CASE("orthonormalize: empty, parallel and independent generators") {
    const auto empty = orthonormalize<double>(3, {}, kPolicy);
    CHECK(empty.dim() == 0);
    CHECK(empty.ambient_dim() == 3);

    const auto line =
        orthonormalize<double>(2, {vec2(1, 0), vec2(2, 0)}, kPolicy);
    CHECK(line.dim() == 1);
    CHECK(equal(line, oracle::coordinate_subspace<double>(2, 0b01), kPolicy));

    const auto plane =
        orthonormalize<double>(2, {vec2(1, 0), vec2(0, 1)}, kPolicy);
    CHECK(plane.dim() == 2);
    CHECK(equal(plane, RSub::full(2), kPolicy));

    // all-zero generators span nothing
    const auto zero = orthonormalize<double>(3, {vec3(0, 0, 0)}, kPolicy);
    CHECK(zero.dim() == 0);

    Vector<double> bad = vec2(1, 0);
    bad(1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(orthonormalize<double>(2, {bad}, kPolicy),
                    std::invalid_argument);
    CHECK_THROWS_AS(orthonormalize<double>(2, {vec3(1, 0, 0)}, kPolicy),
                    DimensionMismatch);
}

TEST_CASE("zero and full subspaces") {
    CHECK(RSub::zero(3).dim() == 0);
    CHECK(RSub::full(3).dim() == 3);
    CHECK(equal(complement(RSub::zero(4), kPolicy), RSub::full(4), kPolicy));
    CHECK(equal(complement(RSub::full(4), kPolicy), RSub::zero(4), kPolicy));
    CHECK_THROWS_AS(RSub::zero(0), std::invalid_argument);
}

TEST_CASE("vector membership") {
    const auto e1 = oracle::coordinate_subspace<double>(2, 0b01);
    CHECK(contains_vector(e1, vec2(1, 0), kPolicy));
    CHECK_FALSE(contains_vector(e1, vec2(1, 1), kPolicy));
    CHECK(contains_vector(RSub::zero(2), vec2(0, 0), kPolicy));
    CHECK_FALSE(contains_vector(RSub::zero(2), vec2(1, 0), kPolicy));
    CHECK(contains_vector(RSub::full(2), vec2(5, -3), kPolicy));
    CHECK_THROWS_AS(contains_vector(e1, vec3(1, 0, 0), kPolicy),
                    DimensionMismatch);

    // residual of (1,1) against span{e1} is exactly 1
    CHECK(membership_residual(e1, vec2(1, 1)) == doctest::Approx(1.0));
}

TEST_CASE("meet examples") {
    const auto e1 = oracle::coordinate_subspace<double>(2, 0b01);
    const auto e2 = oracle::coordinate_subspace<double>(2, 0b10);
    CHECK(equal(meet(e1, e1, kPolicy), e1, kPolicy));
    CHECK(meet(e1, e2, kPolicy).dim() == 0);

    const auto a = oracle::coordinate_subspace<double>(3, 0b011);  // e1,e2
    const auto b = oracle::coordinate_subspace<double>(3, 0b110);  // e2,e3
    CHECK(equal(meet(a, b, kPolicy),
                oracle::coordinate_subspace<double>(3, 0b010), kPolicy));
    CHECK_THROWS_AS(meet(e1, a, kPolicy), DimensionMismatch);
}

TEST_CASE("join examples") {
    const auto e1 = oracle::coordinate_subspace<double>(2, 0b01);
    const auto e2 = oracle::coordinate_subspace<double>(2, 0b10);
    CHECK(equal(join(e1, RSub::zero(2), kPolicy), e1, kPolicy));
    CHECK(equal(join(e1, e2, kPolicy), RSub::full(2), kPolicy));

    // the disjunction may be true at vectors where both disjuncts are false
    const auto diag = orthonormalize<double>(2, {vec2(1, 1)}, kPolicy);
    const auto j = join(e1, diag, kPolicy);
    CHECK(equal(j, RSub::full(2), kPolicy));
    const auto w = vec2(0, 7);
    CHECK(contains_vector(j, w, kPolicy));
    CHECK_FALSE(contains_vector(e1, w, kPolicy));
    CHECK_FALSE(contains_vector(diag, w, kPolicy));
}

TEST_CASE("complement examples") {
    const auto e1 = oracle::coordinate_subspace<double>(2, 0b01);
    const auto e2 = oracle::coordinate_subspace<double>(2, 0b10);
    CHECK(equal(complement(e1, kPolicy), e2, kPolicy));

    const auto diag = orthonormalize<double>(2, {vec2(1, 1)}, kPolicy);
    const auto anti = orthonormalize<double>(2, {vec2(1, -1)}, kPolicy);
    CHECK(equal(complement(diag, kPolicy), anti, kPolicy));
}

TEST_CASE("ordering and equality predicates") {
    const auto a = oracle::coordinate_subspace<double>(3, 0b011);
    CHECK(contained_in(RSub::zero(3), a, kPolicy));
    CHECK(contained_in(a, RSub::full(3), kPolicy));
    CHECK_FALSE(contained_in(a, oracle::coordinate_subspace<double>(3, 0b110),
                             kPolicy));

    const auto line1 = orthonormalize<double>(2, {vec2(1, 0)}, kPolicy);
    const auto line2 = orthonormalize<double>(2, {vec2(2, 0)}, kPolicy);
    CHECK(equal(line1, line2, kPolicy));

    Matrix<double> p = oracle::coordinate_subspace<double>(2, 0b01).projector();
    CHECK(p(0, 0) == doctest::Approx(1.0));
    CHECK(p(0, 1) == doctest::Approx(0.0));
    CHECK(p(1, 0) == doctest::Approx(0.0));
    CHECK(p(1, 1) == doctest::Approx(0.0));
}

TEST_CASE("random subspaces: bounds and determinism") {
    CHECK(random_subspace<double>(4, 0, 7, kPolicy).dim() == 0);
    CHECK(equal(random_subspace<double>(4, 4, 7, kPolicy), RSub::full(4),
                kPolicy));
    const auto a = random_subspace<Cplx>(5, 2, 99, kPolicy);
    const auto b = random_subspace<Cplx>(5, 2, 99, kPolicy);
    CHECK(a.dim() == 2);
    CHECK(equal(a, b, kPolicy));
    CHECK(projector_distance(a, b) == 0.0);
    const auto c = random_subspace<Cplx>(5, 2, 100, kPolicy);
    CHECK_FALSE(equal(a, c, kPolicy));
    CHECK_THROWS_AS(random_subspace<double>(3, 4, 0, kPolicy),
                    std::invalid_argument);
}

namespace {

// shared property-check body for both scalar fields
template <ScalarField S>
void check_lattice_properties(std::uint64_t seed) {
    for (Index n = 1; n <= 8; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            const std::uint64_t s0 = mix_seed(seed, (n << 8) + trial);
            std::mt19937_64 eng(s0);
            const Index ka = static_cast<Index>(eng() % (n + 1));
            const Index kb = static_cast<Index>(eng() % (n + 1));
            const auto a = random_subspace<S>(n, ka, mix_seed(s0, 1), kPolicy);
            const auto b = random_subspace<S>(n, kb, mix_seed(s0, 2), kPolicy);

            // involution
            CHECK(equal(complement(complement(a, kPolicy), kPolicy), a,
                        kPolicy));

            // De Morgan, both directions
            CHECK(equal(complement(join(a, b, kPolicy), kPolicy),
                        meet(complement(a, kPolicy), complement(b, kPolicy),
                             kPolicy),
                        kPolicy));
            CHECK(equal(complement(meet(a, b, kPolicy), kPolicy),
                        join(complement(a, kPolicy), complement(b, kPolicy),
                             kPolicy),
                        kPolicy));

            // complement laws
            const auto ac = complement(a, kPolicy);
            CHECK(meet(a, ac, kPolicy).dim() == 0);
            CHECK(equal(join(a, ac, kPolicy), Subspace<S>::full(n), kPolicy));
            CHECK(a.dim() + ac.dim() == n);

            // ordering and dimension bounds
            const auto m = meet(a, b, kPolicy);
            const auto j = join(a, b, kPolicy);
            CHECK(contained_in(m, a, kPolicy));
            CHECK(contained_in(a, j, kPolicy));
            CHECK(j.dim() <= a.dim() + b.dim());
            CHECK(m.dim() >= a.dim() + b.dim() - n);

            // commutativity
            CHECK(equal(m, meet(b, a, kPolicy), kPolicy));
            CHECK(equal(j, join(b, a, kPolicy), kPolicy));

            // projector is Hermitian and idempotent
            const Matrix<S> p = a.projector();
            CHECK((p - p.adjoint()).norm() <= kPolicy.eq_tol);
            CHECK((p * p - p).norm() <= kPolicy.eq_tol);

            // basis columns stay orthonormal through the algebra
            const auto& jb = j.basis();
            CHECK((jb.adjoint() * jb -
                   Matrix<S>::Identity(j.dim(), j.dim()))
                      .norm() <= kPolicy.eq_tol);

            // membership agrees with the projector residual by definition
            const auto v = random_vector<S>(n, eng);
            CHECK(contains_vector(a, v, kPolicy) ==
                  (membership_residual(a, v) <=
                   kPolicy.membership_tol * std::max(1.0, v.norm())));
        }
    }
}

template <ScalarField S>
void check_associativity(std::uint64_t seed) {
    for (Index n = 2; n <= 6; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            const std::uint64_t s0 = mix_seed(seed, (n << 8) + trial);
            std::mt19937_64 eng(s0);
            const auto a = random_subspace<S>(n, static_cast<Index>(eng() % (n + 1)),
                                              mix_seed(s0, 1), kPolicy);
            const auto b = random_subspace<S>(n, static_cast<Index>(eng() % (n + 1)),
                                              mix_seed(s0, 2), kPolicy);
            const auto c = random_subspace<S>(n, static_cast<Index>(eng() % (n + 1)),
                                              mix_seed(s0, 3), kPolicy);
            CHECK(equal(join(join(a, b, kPolicy), c, kPolicy),
                        join(a, join(b, c, kPolicy), kPolicy), kPolicy));
            CHECK(equal(meet(meet(a, b, kPolicy), c, kPolicy),
                        meet(a, meet(b, c, kPolicy), kPolicy), kPolicy));
        }
    }
}

}  // namespace

TEST_CASE("lattice properties over random real subspaces") {
    check_lattice_properties<double>(2024);
}

TEST_CASE("lattice properties over random complex subspaces") {
    check_lattice_properties<Cplx>(2025);
}

TEST_CASE("meet and join are associative within tolerance") {
    check_associativity<double>(31);
    check_associativity<Cplx>(32);
}

TEST_CASE("coordinate-subspace oracle: exhaustive over R^4") {
    const Index n = 4;
    std::vector<RSub> subs;
    for (oracle::Mask m = 0; m < 16; ++m)
        subs.push_back(oracle::coordinate_subspace<double>(n, m));

    for (oracle::Mask a = 0; a < 16; ++a) {
        const auto ca = complement(subs[a], kPolicy);
        CHECK(equal(ca,
                    subs[oracle::complement_mask(n, a)], kPolicy));
        for (oracle::Mask b = 0; b < 16; ++b) {
            CHECK(equal(meet(subs[a], subs[b], kPolicy),
                        subs[oracle::meet_mask(a, b)], kPolicy));
            CHECK(equal(join(subs[a], subs[b], kPolicy),
                        subs[oracle::join_mask(a, b)], kPolicy));
            CHECK(contained_in(subs[a], subs[b], kPolicy) ==
                  oracle::contained_mask(a, b));
        }
    }
}
