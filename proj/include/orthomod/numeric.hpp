#pragma once
// Scalar field selection, numeric tolerances, errors, and deterministic
// seed derivation. Everything downstream funnels its numerical decisions
// through a NumericPolicy.

#include <complex>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace orthomod {

// The two scalar fields the calculus runs over. One field per ambient space,
// never mixed.
template <typename T>
concept ScalarField =
    std::same_as<T, double> || std::same_as<T, std::complex<double>>;

enum class Field { real, complex };

template <ScalarField S>
constexpr Field field_of() {
    if constexpr (std::same_as<S, double>) {
        return Field::real;
    } else {
        return Field::complex;
    }
}

inline const char* to_string(Field f) {
    return f == Field::real ? "real" : "complex";
}

// Tolerances governing every numerical decision: rank cuts when spanning,
// projector-distance equality, and vector membership.
struct NumericPolicy {
    double rank_cutoff_rel = 1e-10;  // keep sigma_i iff sigma_i > rank_cutoff_rel * sigma_max
    double eq_tol = 1e-8;            // ||P_A - P_B||_F threshold for subspace equality
    double membership_tol = 1e-8;    // residual threshold, scaled by max(1, ||v||)

    void validate() const {
        if (!(rank_cutoff_rel > 0.0) || !(rank_cutoff_rel < 1.0))
            throw std::invalid_argument(
                "policy: rank_cutoff_rel must lie in (0, 1)");
        if (!(eq_tol > 0.0))
            throw std::invalid_argument("policy: eq_tol must be positive");
        if (!(membership_tol > 0.0))
            throw std::invalid_argument(
                "policy: membership_tol must be positive");
    }
};

// Base class of all domain errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// A law-check precondition (such as x <= y) does not hold. Distinct from a
// law failure: a violated precondition never yields a LawReport.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// One step of the splitmix64 generator; used to decorrelate derived seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derive a child seed from (seed, salt); deterministic and order-sensitive.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    return splitmix64(seed ^ splitmix64(salt));
}

// FNV-1a, used to key random draws by name rather than by list position.
inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace orthomod
