// orthomod: scenario-driven CLI over the quantum-logical subspace calculus.
// Subcommands: parse, eval, member, laws, bilogic, demo. Reports go to
// stdout as text, or as a deterministic JSON document under --json.

#include <chrono>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "orthomod/bilogic.hpp"
#include "orthomod/lattice_laws.hpp"
#include "orthomod/scenario_io.hpp"

namespace {

using nlohmann::ordered_json;
using namespace orthomod;

// Command-line misuse detected after CLI11 parsing; exits with code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    bool json = false;
    bool allow_unequal_dims = false;
    std::optional<std::uint64_t> seed;
    std::optional<double> eq_tol;
};

LoadOptions to_load_options(const Globals& g) {
    return {g.allow_unequal_dims, g.seed, g.eq_tol};
}

std::string fmt6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string entry_text(double x) { return fmt6(x); }

std::string entry_text(const std::complex<double>& z) {
    return fmt6(z.real()) + (z.imag() < 0.0 ? "-" : "+") +
           fmt6(std::abs(z.imag())) + "i";
}

ordered_json entry_json(double x) { return x; }

ordered_json entry_json(const std::complex<double>& z) {
    return ordered_json::array({z.real(), z.imag()});
}

template <ScalarField S>
std::string vector_text(const Vector<S>& v) {
    std::string out = "[";
    for (Index i = 0; i < v.size(); ++i) {
        if (i > 0) out += ", ";
        out += entry_text(v(i));
    }
    return out + "]";
}

template <ScalarField S>
ordered_json vector_json(const Vector<S>& v) {
    ordered_json row = ordered_json::array();
    for (Index i = 0; i < v.size(); ++i) row.push_back(entry_json(v(i)));
    return row;
}

template <ScalarField S>
ordered_json basis_json(const Subspace<S>& s) {
    ordered_json rows = ordered_json::array();
    for (Index j = 0; j < s.dim(); ++j)
        rows.push_back(vector_json<S>(s.basis().col(j)));
    return rows;
}

template <ScalarField S>
void print_basis_text(const Subspace<S>& s) {
    if (s.dim() == 0) {
        std::cout << "basis: (zero subspace)\n";
        return;
    }
    std::cout << "basis:\n";
    for (Index j = 0; j < s.dim(); ++j)
        std::cout << "  " << vector_text<S>(Vector<S>(s.basis().col(j)))
                  << "\n";
}

ordered_json policy_json(const NumericPolicy& p) {
    return ordered_json{{"rank_cutoff_rel", p.rank_cutoff_rel},
                        {"eq_tol", p.eq_tol},
                        {"membership_tol", p.membership_tol}};
}

template <ScalarField S>
void scenario_header(ordered_json& report, const ScenarioBundle<S>& bundle,
                     const std::string& path) {
    report["scenario"] = path;
    report["field"] = to_string(bundle.scenario.field());
    report["seed"] = bundle.scenario.seed();
    report["policy"] = policy_json(bundle.scenario.policy());
    report["warnings"] = bundle.scenario.warnings();
}

template <ScalarField S>
void print_warnings(const ScenarioBundle<S>& bundle) {
    for (const auto& w : bundle.scenario.warnings())
        std::cerr << "warning: " << w << "\n";
}

void emit(const Globals& g, const ordered_json& report) {
    if (g.json) std::cout << report.dump(2) << "\n";
}

ordered_json ast_json(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::Var:
            return ordered_json{{"kind", "var"}, {"name", f.var_name()}};
        case K::Not:
            return ordered_json{{"kind", "not"},
                                {"child", ast_json(f.child())}};
        case K::And:
            return ordered_json{{"kind", "and"},
                                {"left", ast_json(f.left())},
                                {"right", ast_json(f.right())}};
        case K::Or:
            return ordered_json{{"kind", "or"},
                                {"left", ast_json(f.left())},
                                {"right", ast_json(f.right())}};
        case K::Top:
            return ordered_json{{"kind", "top"}};
        case K::Bottom:
            break;
    }
    return ordered_json{{"kind", "bottom"}};
}

// A formula argument is first looked up among the scenario's named
// formulas, then parsed as DSL text.
template <ScalarField S>
std::pair<Formula, std::optional<std::string>> resolve_formula(
    const ScenarioBundle<S>& bundle, const std::string& arg) {
    const auto it = bundle.formulas.find(arg);
    if (it != bundle.formulas.end()) return {it->second, arg};
    return {parse(arg), std::nullopt};
}

template <typename Fn>
int with_scenario(const Globals& g, const std::string& path, Fn&& fn) {
    const LoadedScenario loaded = load_scenario(path, to_load_options(g));
    return loaded.visit([&](const auto& bundle) {
        print_warnings(bundle);
        return fn(bundle);
    });
}

int run_parse(const Globals& g, const std::string& text) {
    const Formula f = parse(text);
    ordered_json report{{"command", "parse"},
                        {"input", text},
                        {"pretty", pretty_print(f)},
                        {"variables", free_variables(f)},
                        {"ast", ast_json(f)}};
    if (!g.json) {
        std::cout << "pretty: " << pretty_print(f) << "\n" << ast_to_string(f);
    }
    emit(g, report);
    return 0;
}

int run_eval(const Globals& g, const std::string& path,
             const std::string& formula_arg) {
    return with_scenario(g, path, [&](const auto& bundle) {
        using S = typename std::decay_t<decltype(bundle)>::scalar;
        const auto [f, name] = resolve_formula(bundle, formula_arg);
        const Subspace<S> result = eval_subspace(
            f, bundle.scenario.make_assignment(), bundle.scenario.policy());

        ordered_json report{{"command", "eval"}};
        scenario_header(report, bundle, path);
        report["formula_name"] = name ? ordered_json(*name) : ordered_json();
        report["formula"] = pretty_print(f);
        report["ambient_dim"] = result.ambient_dim();
        report["dim"] = result.dim();
        report["basis"] = basis_json(result);

        if (!g.json) {
            std::cout << "formula: " << pretty_print(f) << "\n"
                      << "dim: " << result.dim() << " (ambient "
                      << result.ambient_dim() << ")\n";
            print_basis_text(result);
        }
        emit(g, report);
        return 0;
    });
}

int run_member(const Globals& g, const std::string& path,
               const std::string& formula_arg,
               const std::string& vector_name) {
    return with_scenario(g, path, [&](const auto& bundle) {
        using S = typename std::decay_t<decltype(bundle)>::scalar;
        const auto [f, name] = resolve_formula(bundle, formula_arg);
        const auto it = bundle.state_vectors.find(vector_name);
        if (it == bundle.state_vectors.end()) {
            std::string known;
            for (const auto& [k, v] : bundle.state_vectors) {
                if (!known.empty()) known += ", ";
                known += k;
            }
            throw UnknownName("unknown state vector '" + vector_name +
                              "' (available: " +
                              (known.empty() ? "none" : known) + ")");
        }
        const Vector<S>& v = it->second;
        const NumericPolicy& policy = bundle.scenario.policy();
        if (v.norm() == 0.0)
            throw Error("state vector '" + vector_name +
                        "' is the zero vector; membership would be "
                        "trivially true");
        const Subspace<S> sub =
            eval_subspace(f, bundle.scenario.make_assignment(), policy);
        const double residual = membership_residual(sub, v);
        const bool member = contains_vector(sub, v, policy);

        ordered_json report{{"command", "member"}};
        scenario_header(report, bundle, path);
        report["formula_name"] = name ? ordered_json(*name) : ordered_json();
        report["formula"] = pretty_print(f);
        report["vector"] = vector_name;
        report["dim"] = sub.dim();
        report["member"] = member;
        report["residual"] = residual;

        if (!g.json) {
            std::cout << "formula: " << pretty_print(f) << "\n"
                      << "vector: " << vector_name << " = " << vector_text(v)
                      << "\n"
                      << "member: " << (member ? "true" : "false")
                      << " (residual " << fmt6(residual) << ", subspace dim "
                      << sub.dim() << ")\n";
        }
        emit(g, report);
        return 0;
    });
}

// Aggregated law table row; in scenario mode the witness also names the
// participating attributes.
struct LawRow {
    std::string law;
    long long checks = 0;
    long long held = 0;
    ordered_json witness;  // null when every check held

    ordered_json to_json() const {
        return ordered_json{{"law", law},
                            {"checks", checks},
                            {"held", held},
                            {"witness", witness}};
    }

    void print_text() const {
        std::cout << law << ": holds " << held << "/" << checks;
        if (!witness.is_null()) {
            std::cout << "; witness: ";
            if (witness.contains("x") && witness["x"].is_string())
                std::cout << "x=" << witness["x"].get<std::string>() << " y="
                          << witness["y"].get<std::string>() << " z="
                          << witness["z"].get<std::string>() << ", ";
            std::cout << "lhs dim "
                      << witness["lhs_dim"].get<long long>() << ", rhs dim "
                      << witness["rhs_dim"].get<long long>() << ", distance "
                      << fmt6(witness["distance"].get<double>());
        }
        std::cout << "\n";
    }
};

template <ScalarField S>
ordered_json witness_json(const LawWitness<S>& w) {
    ordered_json out{{"lhs_dim", w.lhs_dim},
                     {"rhs_dim", w.rhs_dim},
                     {"distance", w.distance},
                     {"x_dim", w.x.dim()},
                     {"y_dim", w.y.dim()}};
    if (w.z) out["z_dim"] = w.z->dim();
    return out;
}

template <ScalarField S>
int run_laws_random(const Globals& g, Index n, int trials,
                    std::uint64_t seed) {
    NumericPolicy policy;
    if (g.eq_tol) policy.eq_tol = *g.eq_tol;
    policy.validate();

    const auto om = sweep_orthomodular<S>(n, trials, seed, policy);
    const auto mod = sweep_modular<S>(n, trials, seed, policy);
    const auto dist = sweep_distributivity<S>(n, trials, seed, policy);

    std::vector<LawRow> rows;
    for (const auto* sweep : {&om, &mod, &dist}) {
        LawRow row{sweep->law_name, sweep->trials, sweep->held,
                   ordered_json()};
        if (sweep->first_failure)
            row.witness = witness_json(*sweep->first_failure);
        rows.push_back(std::move(row));
    }

    ordered_json results = ordered_json::array();
    for (const auto& row : rows) results.push_back(row.to_json());
    ordered_json report{{"command", "laws"},
                        {"mode", "random"},
                        {"dimension", n},
                        {"trials", trials},
                        {"seed", seed},
                        {"field", to_string(field_of<S>())},
                        {"policy", policy_json(policy)},
                        {"results", results}};

    if (!g.json) {
        std::cout << "random sweep: dimension " << n << ", " << trials
                  << " trials, seed " << seed << ", field "
                  << to_string(field_of<S>()) << "\n";
        for (const auto& row : rows) row.print_text();
    }
    emit(g, report);
    return 0;
}

template <ScalarField S>
int run_laws_scenario(const Globals& g, const std::string& path,
                      const ScenarioBundle<S>& bundle) {
    const auto& attrs = bundle.scenario.attributes();
    const NumericPolicy& policy = bundle.scenario.policy();

    LawRow om_row{"orthomodular", 0, 0, ordered_json()};
    LawRow mod_row{"modular", 0, 0, ordered_json()};
    LawRow dist_row{"distributivity", 0, 0, ordered_json()};

    const auto record = [](LawRow& row, const LawReport<S>& report,
                           const std::string& x, const std::string& y,
                           const std::string* z) {
        ++row.checks;
        if (report.holds) {
            ++row.held;
            return;
        }
        if (!row.witness.is_null()) return;
        row.witness = witness_json(*report.witness);
        row.witness["x"] = x;
        row.witness["y"] = y;
        if (z) row.witness["z"] = *z;
    };

    // the two conditional laws run over every ordered attribute pair x <= y,
    // the containment checked first; distributivity over all ordered triples
    for (const auto& a : attrs) {
        for (const auto& b : attrs) {
            if (!contained_in(a.subspace, b.subspace, policy)) continue;
            record(om_row, check_orthomodular(a.subspace, b.subspace, policy),
                   a.name, b.name, nullptr);
            for (const auto& c : attrs)
                record(mod_row,
                       check_modular(a.subspace, b.subspace, c.subspace,
                                     policy),
                       a.name, b.name, &c.name);
        }
    }
    for (const auto& a : attrs)
        for (const auto& b : attrs)
            for (const auto& c : attrs)
                record(dist_row,
                       check_distributivity(a.subspace, b.subspace,
                                            c.subspace, policy),
                       a.name, b.name, &c.name);

    ordered_json results = ordered_json::array();
    for (const auto* row : {&om_row, &mod_row, &dist_row})
        results.push_back(row->to_json());
    ordered_json report{{"command", "laws"}, {"mode", "scenario"}};
    scenario_header(report, bundle, path);
    report["results"] = results;

    if (!g.json) {
        std::cout << "laws over " << attrs.size() << " attributes of "
                  << path << "\n";
        for (const auto* row : {&om_row, &mod_row, &dist_row})
            row->print_text();
    }
    emit(g, report);
    return 0;
}

template <ScalarField S>
ordered_json subspace_result_json(const Subspace<S>& s) {
    return ordered_json{{"ambient_dim", s.ambient_dim()},
                        {"dim", s.dim()},
                        {"basis", basis_json(s)}};
}

template <ScalarField S>
int run_bilogic_repr(const Globals& g, const std::string& path,
                     const ScenarioBundle<S>& bundle,
                     const std::string& object_name, bool generalized) {
    const BilogicObject& obj = bundle.scenario.object(object_name);
    const Subspace<S> result = generalized
                                   ? generalize(obj, bundle.scenario)
                                   : asymmetric_repr(obj, bundle.scenario);

    ordered_json report{{"command", "bilogic"},
                        {"subcommand", generalized ? "generalize" : "repr"}};
    scenario_header(report, bundle, path);
    ordered_json res = ordered_json{{"object", object_name}};
    res.update(subspace_result_json(result));
    if (generalized)
        res["is_full"] = result.dim() == result.ambient_dim();
    else
        res["unrealizable"] = result.dim() == 0;
    report["results"] = res;

    if (!g.json) {
        std::cout << (generalized ? "generalization" : "representation")
                  << " of " << object_name << "\n"
                  << "dim: " << result.dim() << " (ambient "
                  << result.ambient_dim() << ")\n";
        if (!generalized && result.dim() == 0)
            std::cout << "unrealizable object: the attributes are "
                         "contradictory\n";
        if (generalized && result.dim() == result.ambient_dim())
            std::cout << "the generalization is the whole space\n";
        print_basis_text(result);
    }
    emit(g, report);
    return 0;
}

template <ScalarField S>
int run_bilogic_symmetry(const Globals& g, const std::string& path,
                         const ScenarioBundle<S>& bundle) {
    const auto classes =
        symmetric_classes(bundle.scenario.objects(), bundle.scenario);

    ordered_json report{{"command", "bilogic"}, {"subcommand", "symmetry"}};
    scenario_header(report, bundle, path);
    report["results"] =
        ordered_json{{"count", classes.size()}, {"classes", classes}};

    if (!g.json) {
        std::cout << classes.size() << " symmetric class"
                  << (classes.size() == 1 ? "" : "es") << "\n";
        for (std::size_t i = 0; i < classes.size(); ++i) {
            std::cout << "  class " << i + 1 << ": {";
            for (std::size_t j = 0; j < classes[i].size(); ++j)
                std::cout << (j ? ", " : "") << classes[i][j];
            std::cout << "}\n";
        }
    }
    emit(g, report);
    return 0;
}

template <ScalarField S>
int run_bilogic_condense(const Globals& g, const std::string& path,
                         const ScenarioBundle<S>& bundle,
                         const std::string& a_name,
                         const std::string& b_name) {
    const auto& s = bundle.scenario;
    const auto& a = s.object(a_name);
    const auto& b = s.object(b_name);
    const Subspace<S> fused = condense(a, b, s);
    const bool holds_a = contained_in(asymmetric_repr(a, s), fused,
                                      s.policy());
    const bool holds_b = contained_in(asymmetric_repr(b, s), fused,
                                      s.policy());

    ordered_json report{{"command", "bilogic"}, {"subcommand", "condense"}};
    scenario_header(report, bundle, path);
    ordered_json res{{"a", a_name}, {"b", b_name}};
    res.update(subspace_result_json(fused));
    res["contains_a_repr"] = holds_a;
    res["contains_b_repr"] = holds_b;
    report["results"] = res;

    if (!g.json) {
        std::cout << "condense(" << a_name << ", " << b_name << ")\n"
                  << "dim: " << fused.dim() << " (ambient "
                  << fused.ambient_dim() << ")\n"
                  << "contains repr(" << a_name << "): "
                  << (holds_a ? "true" : "false") << "\n"
                  << "contains repr(" << b_name << "): "
                  << (holds_b ? "true" : "false") << "\n";
        print_basis_text(fused);
    }
    emit(g, report);
    return 0;
}

template <ScalarField S>
int run_bilogic_displace(const Globals& g, const std::string& path,
                         const ScenarioBundle<S>& bundle,
                         const std::string& target_name,
                         const std::string& source_name,
                         const std::vector<std::string>& transferred) {
    const auto& s = bundle.scenario;
    const auto& target = s.object(target_name);
    const auto& source = s.object(source_name);
    const Subspace<S> result = displace(target, source, transferred, s);
    const Subspace<S> repr = asymmetric_repr(target, s);
    const bool unchanged = equal(result, repr, s.policy());
    const bool is_condense =
        equal(result, condense(target, source, s), s.policy());

    ordered_json report{{"command", "bilogic"}, {"subcommand", "displace"}};
    scenario_header(report, bundle, path);
    ordered_json res{{"target", target_name},
                     {"source", source_name},
                     {"transferred", transferred}};
    res.update(subspace_result_json(result));
    res["contains_target_repr"] =
        contained_in(repr, result, s.policy());
    res["equals_target_repr"] = unchanged;
    res["equals_condense"] = is_condense;
    report["results"] = res;

    if (!g.json) {
        std::cout << "displace(target " << target_name << " <- source "
                  << source_name << ")\ntransferred: ";
        if (transferred.empty())
            std::cout << "(none)";
        for (std::size_t i = 0; i < transferred.size(); ++i)
            std::cout << (i ? ", " : "") << transferred[i];
        std::cout << "\ndim: " << result.dim() << " (ambient "
                  << result.ambient_dim() << ")\n"
                  << "equals target repr: " << (unchanged ? "true" : "false")
                  << "\nequals condense: " << (is_condense ? "true" : "false")
                  << "\n";
        print_basis_text(result);
    }
    emit(g, report);
    return 0;
}

ordered_json kinds_json(const KindsReport& kinds) {
    ordered_json objects = ordered_json::array();
    for (const auto& entry : kinds.objects)
        objects.push_back(ordered_json{{"object", entry.object},
                                       {"temporal", entry.temporal},
                                       {"reality", entry.reality}});
    return ordered_json{{"temporal", kinds.temporal},
                        {"reality", kinds.reality},
                        {"objects", objects}};
}

void print_kinds_text(const KindsReport& kinds) {
    if (kinds.empty()) {
        std::cout << "no temporal or reality attributes\n";
        return;
    }
    const auto list = [](const std::vector<std::string>& names) {
        std::string out;
        for (std::size_t i = 0; i < names.size(); ++i)
            out += (i ? ", " : "") + names[i];
        return out.empty() ? std::string("(none)") : out;
    };
    std::cout << "temporal: " << list(kinds.temporal) << "\n"
              << "reality: " << list(kinds.reality) << "\n";
    for (const auto& entry : kinds.objects) {
        std::cout << "  " << entry.object << ":";
        if (!entry.temporal.empty())
            std::cout << " temporal {" << list(entry.temporal) << "}";
        if (!entry.reality.empty())
            std::cout << " reality {" << list(entry.reality) << "}";
        std::cout << "\n";
    }
}

template <ScalarField S>
int run_bilogic_kinds(const Globals& g, const std::string& path,
                      const ScenarioBundle<S>& bundle) {
    const KindsReport kinds = attribute_kinds_report(bundle.scenario);
    ordered_json report{{"command", "bilogic"}, {"subcommand", "kinds"}};
    scenario_header(report, bundle, path);
    report["results"] = kinds_json(kinds);
    if (!g.json) print_kinds_text(kinds);
    emit(g, report);
    return 0;
}

// ----- demo drivers, one per Freud characteristic -----

template <ScalarField S>
void require_objects(const ScenarioBundle<S>& bundle, std::size_t count,
                     const char* demo) {
    if (bundle.scenario.objects().size() < count)
        throw Error(std::string(demo) + ": the scenario must define at "
                                        "least " +
                    std::to_string(count) + " objects");
}

template <ScalarField S>
ordered_json demo_contradiction(const ScenarioBundle<S>& bundle) {
    const auto& s = bundle.scenario;
    ordered_json objects = ordered_json::array();
    for (const auto& obj : s.objects()) {
        const auto verdict = negation_identity_check(obj, s);
        const auto repr = asymmetric_repr(obj, s);
        const auto gen = generalize(obj, s);
        objects.push_back(ordered_json{
            {"object", obj.name},
            {"repr_dim", repr.dim()},
            {"generalize_dim", gen.dim()},
            {"generalized_equal", verdict.generalized_equal},
            {"complement_contained", verdict.complement_contained},
            {"join_is_full", gen.dim() == s.ambient_dim()}});
    }
    return ordered_json{{"objects", objects}};
}

template <ScalarField S>
ordered_json demo_displacement(const ScenarioBundle<S>& bundle) {
    require_objects(bundle, 2, "displacement demo");
    const auto& s = bundle.scenario;
    const auto& target = s.objects()[0];
    const auto& source = s.objects()[1];
    const auto repr = asymmetric_repr(target, s);

    const auto none = displace(target, source, {}, s);
    const std::vector<std::string> partial{source.attributes.back()};
    const auto part = displace(target, source, partial, s);
    const auto full = displace(target, source, source.attributes, s);

    return ordered_json{
        {"target", target.name},
        {"source", source.name},
        {"target_repr_dim", repr.dim()},
        {"no_transfer",
         {{"dim", none.dim()},
          {"equals_target_repr", equal(none, repr, s.policy())}}},
        {"partial_transfer",
         {{"transferred", partial}, {"dim", part.dim()}}},
        {"full_transfer",
         {{"transferred", source.attributes},
          {"dim", full.dim()},
          {"equals_condense",
           equal(full, condense(target, source, s), s.policy())}}}};
}

template <ScalarField S>
ordered_json demo_condensation(const ScenarioBundle<S>& bundle) {
    require_objects(bundle, 2, "condensation demo");
    const auto& s = bundle.scenario;
    const auto& a = s.objects()[0];
    const auto& b = s.objects()[1];
    const auto fused = condense(a, b, s);

    ordered_json memberships = ordered_json::object();
    for (const auto& [name, v] : bundle.state_vectors)
        memberships[name] = contains_vector(fused, v, s.policy());

    return ordered_json{
        {"a", a.name},
        {"b", b.name},
        {"a_repr_dim", asymmetric_repr(a, s).dim()},
        {"b_repr_dim", asymmetric_repr(b, s).dim()},
        {"dim", fused.dim()},
        {"contains_a_repr",
         contained_in(asymmetric_repr(a, s), fused, s.policy())},
        {"contains_b_repr",
         contained_in(asymmetric_repr(b, s), fused, s.policy())},
        {"memberships", memberships}};
}

template <ScalarField S>
ordered_json demo_time(const ScenarioBundle<S>& bundle) {
    const auto& s = bundle.scenario;
    const auto classes = symmetric_classes(s.objects(), s);
    return ordered_json{{"classes", classes},
                        {"kinds", kinds_json(attribute_kinds_report(s))}};
}

template <ScalarField S>
ordered_json demo_reality(const ScenarioBundle<S>& bundle) {
    require_objects(bundle, 2, "reality demo");
    const auto& s = bundle.scenario;
    const auto& target = s.objects()[0];
    const auto& source = s.objects()[1];
    std::vector<std::string> transferred;
    for (const auto& name : source.attributes)
        if (s.attribute(name).kind == AttributeKind::reality)
            transferred.push_back(name);

    const auto repr = asymmetric_repr(target, s);
    const auto result = displace(target, source, transferred, s);
    return ordered_json{
        {"target", target.name},
        {"source", source.name},
        {"transferred", transferred},
        {"target_repr_dim", repr.dim()},
        {"dim", result.dim()},
        {"reality_acquired", !equal(result, repr, s.policy())},
        {"kinds", kinds_json(attribute_kinds_report(s))}};
}

int run_demo(const Globals& g, const std::string& dir) {
    struct DemoSpec {
        const char* file;
        const char* characteristic;
        ordered_json (*real_driver)(const ScenarioBundle<double>&);
        ordered_json (*complex_driver)(
            const ScenarioBundle<std::complex<double>>&);
    };
    const DemoSpec specs[] = {
        {"demo_contradiction.scenario", "absence of mutual contradiction",
         &demo_contradiction<double>,
         &demo_contradiction<std::complex<double>>},
        {"demo_displacement.scenario", "displacement",
         &demo_displacement<double>,
         &demo_displacement<std::complex<double>>},
        {"demo_condensation.scenario", "condensation",
         &demo_condensation<double>,
         &demo_condensation<std::complex<double>>},
        {"demo_time.scenario", "absence of time", &demo_time<double>,
         &demo_time<std::complex<double>>},
        {"demo_reality.scenario", "replacement of external reality",
         &demo_reality<double>, &demo_reality<std::complex<double>>},
    };

    ordered_json items = ordered_json::array();
    for (const auto& spec : specs) {
        const std::string path = dir + "/" + spec.file;
        const LoadedScenario loaded = load_scenario(path, to_load_options(g));
        ordered_json item{{"scenario", spec.file},
                          {"characteristic", spec.characteristic}};
        loaded.visit([&](const auto& bundle) {
            using S = typename std::decay_t<decltype(bundle)>::scalar;
            print_warnings(bundle);
            item["field"] = to_string(bundle.scenario.field());
            item["seed"] = bundle.scenario.seed();
            if constexpr (std::same_as<S, double>)
                item["results"] = spec.real_driver(bundle);
            else
                item["results"] = spec.complex_driver(bundle);
        });
        items.push_back(std::move(item));

        if (!g.json) {
            const ordered_json& it = items.back();
            std::cout << it["characteristic"].get<std::string>() << " ("
                      << spec.file << ")\n"
                      << "  " << it["results"].dump() << "\n";
        }
    }

    ordered_json report{{"command", "demo"}, {"results", items}};
    emit(g, report);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);

    CLI::App app{"orthomod: a quantum-logical subspace calculus with "
                 "Bi-logic operators"};
    app.require_subcommand(1);

    Globals g;
    app.add_flag("--json", g.json, "emit a JSON report on stdout");
    app.add_option("--seed", g.seed, "override the scenario seed");
    app.add_option("--policy-eq-tol", g.eq_tol,
                   "override the subspace equality tolerance");
    app.add_flag("--allow-unequal-dims", g.allow_unequal_dims,
                 "permit attribute subspaces of unequal dimension");

    std::string parse_text;
    auto* cmd_parse = app.add_subcommand("parse", "parse a formula and "
                                                  "print its tree");
    cmd_parse->add_option("formula", parse_text, "formula text")->required();
    cmd_parse->fallthrough();

    std::string eval_path, eval_formula;
    auto* cmd_eval = app.add_subcommand(
        "eval", "evaluate a formula over a scenario's attributes");
    cmd_eval->add_option("scenario", eval_path, "scenario file")->required();
    cmd_eval->add_option("formula", eval_formula,
                         "formula name from the scenario, or DSL text")
        ->required();
    cmd_eval->fallthrough();

    std::string member_path, member_formula, member_vector;
    auto* cmd_member = app.add_subcommand(
        "member", "membership of a named state vector in a formula's "
                  "subspace");
    cmd_member->add_option("scenario", member_path, "scenario file")
        ->required();
    cmd_member->add_option("formula", member_formula,
                           "formula name or DSL text")
        ->required();
    cmd_member->add_option("vector", member_vector,
                           "state vector name from the scenario")
        ->required();
    cmd_member->fallthrough();

    std::string laws_path;
    std::vector<long long> laws_random;
    std::string laws_field = "complex";
    auto* cmd_laws = app.add_subcommand(
        "laws", "check the orthomodular, modular and distributive laws");
    cmd_laws->add_option("scenario", laws_path,
                         "scenario file (laws over its attributes)");
    cmd_laws->add_option("--random", laws_random,
                         "random sweep: DIMENSION TRIALS SEED")
        ->expected(3);
    cmd_laws->add_option("--field", laws_field,
                         "scalar field for --random (real|complex)");
    cmd_laws->fallthrough();

    std::string bilogic_path;
    auto* cmd_bilogic = app.add_subcommand(
        "bilogic", "Bi-logic operators over a scenario");
    cmd_bilogic->add_option("scenario", bilogic_path, "scenario file")
        ->required();
    cmd_bilogic->require_subcommand(1);
    cmd_bilogic->fallthrough();

    std::string repr_object;
    auto* cmd_repr = cmd_bilogic->add_subcommand(
        "repr", "asymmetric (conscious) representation of an object");
    cmd_repr->add_option("--object", repr_object, "object name")->required();
    cmd_repr->fallthrough();

    std::string gen_object;
    auto* cmd_generalize = cmd_bilogic->add_subcommand(
        "generalize", "generalized (unconscious) representation");
    cmd_generalize->add_option("--object", gen_object, "object name")
        ->required();
    cmd_generalize->fallthrough();

    auto* cmd_symmetry = cmd_bilogic->add_subcommand(
        "symmetry", "partition objects into symmetric classes");
    cmd_symmetry->fallthrough();

    std::string condense_a, condense_b;
    auto* cmd_condense = cmd_bilogic->add_subcommand(
        "condense", "fuse two objects into one representation");
    cmd_condense->add_option("--a", condense_a, "first object")->required();
    cmd_condense->add_option("--b", condense_b, "second object")->required();
    cmd_condense->fallthrough();

    std::string displace_target, displace_source;
    std::vector<std::string> displace_transfer;
    auto* cmd_displace = cmd_bilogic->add_subcommand(
        "displace", "transfer source attributes onto a target object");
    cmd_displace->add_option("--target", displace_target, "target object")
        ->required();
    cmd_displace->add_option("--source", displace_source, "source object")
        ->required();
    cmd_displace->add_option("--transfer", displace_transfer,
                             "source attribute to carry over (repeatable; "
                             "none = no transfer)");
    cmd_displace->fallthrough();

    auto* cmd_kinds = cmd_bilogic->add_subcommand(
        "kinds", "list temporal and reality attributes");
    cmd_kinds->fallthrough();

    std::string demo_dir = "scenarios";
    auto* cmd_demo = app.add_subcommand(
        "demo", "run the five shipped Freud-characteristic scenarios");
    cmd_demo->add_option("--dir", demo_dir,
                         "directory holding the demo scenario files");
    cmd_demo->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const auto start = std::chrono::steady_clock::now();
    int rc = 0;
    try {
        if (cmd_parse->parsed()) {
            rc = run_parse(g, parse_text);
        } else if (cmd_eval->parsed()) {
            rc = run_eval(g, eval_path, eval_formula);
        } else if (cmd_member->parsed()) {
            rc = run_member(g, member_path, member_formula, member_vector);
        } else if (cmd_laws->parsed()) {
            const bool has_random = !laws_random.empty();
            const bool has_path = !laws_path.empty();
            if (has_random == has_path)
                throw UsageError("laws: give a scenario file or --random "
                                 "DIMENSION TRIALS SEED (exactly one)");
            if (has_random) {
                if (laws_random[0] < 1)
                    throw UsageError("laws --random: dimension must be >= 1");
                if (laws_random[1] < 0)
                    throw UsageError("laws --random: trials must be >= 0");
                if (laws_random[2] < 0)
                    throw UsageError("laws --random: seed must be >= 0");
                const Index n = static_cast<Index>(laws_random[0]);
                const int trials = static_cast<int>(laws_random[1]);
                const auto seed =
                    static_cast<std::uint64_t>(laws_random[2]);
                if (laws_field == "real")
                    rc = run_laws_random<double>(g, n, trials, seed);
                else if (laws_field == "complex")
                    rc = run_laws_random<std::complex<double>>(g, n, trials,
                                                               seed);
                else
                    throw UsageError("laws --field: must be real or complex");
            } else {
                rc = with_scenario(g, laws_path, [&](const auto& bundle) {
                    return run_laws_scenario(g, laws_path, bundle);
                });
            }
        } else if (cmd_bilogic->parsed()) {
            rc = with_scenario(g, bilogic_path, [&](const auto& bundle) {
                if (cmd_repr->parsed())
                    return run_bilogic_repr(g, bilogic_path, bundle,
                                            repr_object, false);
                if (cmd_generalize->parsed())
                    return run_bilogic_repr(g, bilogic_path, bundle,
                                            gen_object, true);
                if (cmd_symmetry->parsed())
                    return run_bilogic_symmetry(g, bilogic_path, bundle);
                if (cmd_condense->parsed())
                    return run_bilogic_condense(g, bilogic_path, bundle,
                                                condense_a, condense_b);
                if (cmd_displace->parsed())
                    return run_bilogic_displace(g, bilogic_path, bundle,
                                                displace_target,
                                                displace_source,
                                                displace_transfer);
                return run_bilogic_kinds(g, bilogic_path, bundle);
            });
        } else if (cmd_demo->parsed()) {
            rc = run_demo(g, demo_dir);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    const double elapsed_ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - start)
            .count();
    // timing never enters the JSON report, keeping reports diffable
    (g.json ? std::cerr : std::cout)
        << "elapsed: " << fmt6(elapsed_ms) << " ms\n";
    return rc;
}
