#pragma once
// Scenario file loading. The format is a JSON document: dimension, optional
// field ("real" | "complex", default complex), optional seed, optional
// policy overrides, attributes (explicit basis rows or {random_dim: k}),
// objects, named formulas and named state vectors. Complex entries are
// written as [re, im] pairs and are only legal under the complex field.
// Validation failures name the offending key path.

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "orthomod/bilogic.hpp"
#include "orthomod/formula.hpp"

namespace orthomod {

class ScenarioFileError : public Error {
public:
    using Error::Error;
};

// Command-line overrides applied on top of the file's own settings.
struct LoadOptions {
    bool allow_unequal_dims = false;
    std::optional<std::uint64_t> seed_override;
    std::optional<double> eq_tol_override;
};

// A scenario plus its side tables, over one concrete scalar field.
template <ScalarField S>
struct ScenarioBundle {
    using scalar = S;

    Scenario<S> scenario;
    std::map<std::string, Formula> formulas;
    std::map<std::string, Vector<S>> state_vectors;
};

class LoadedScenario {
public:
    using Variant = std::variant<ScenarioBundle<double>,
                                 ScenarioBundle<std::complex<double>>>;

    explicit LoadedScenario(Variant bundle) : bundle_(std::move(bundle)) {}

    Field field() const {
        return std::holds_alternative<ScenarioBundle<double>>(bundle_)
                   ? Field::real
                   : Field::complex;
    }

    template <typename F>
    decltype(auto) visit(F&& f) const {
        return std::visit(std::forward<F>(f), bundle_);
    }

    const ScenarioBundle<double>& real() const {
        return std::get<ScenarioBundle<double>>(bundle_);
    }
    const ScenarioBundle<std::complex<double>>& complex() const {
        return std::get<ScenarioBundle<std::complex<double>>>(bundle_);
    }

    const std::vector<std::string>& warnings() const {
        return visit([](const auto& b) -> const std::vector<std::string>& {
            return b.scenario.warnings();
        });
    }

private:
    Variant bundle_;
};

LoadedScenario load_scenario(const std::string& path,
                             const LoadOptions& options = {});

// Same pipeline on an in-memory document; `origin` names it in errors.
LoadedScenario load_scenario_from_json(const std::string& text,
                                       const std::string& origin,
                                       const LoadOptions& options = {});

}  // namespace orthomod
