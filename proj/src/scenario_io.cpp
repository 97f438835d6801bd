#include "orthomod/scenario_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace orthomod {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& detail) {
    throw ScenarioFileError(origin + ": " + detail);
}

bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    const auto head = [](char c) {
        return c == '_' || std::isalpha(static_cast<unsigned char>(c));
    };
    const auto tail = [](char c) {
        return c == '_' || std::isalnum(static_cast<unsigned char>(c));
    };
    if (!head(s[0])) return false;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!tail(s[i])) return false;
    return true;
}

void reject_unknown_keys(const std::string& origin, const json& obj,
                         const std::string& where,
                         std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) fail(origin, where + ": unknown key '" + key + "'");
    }
}

// One numeric entry: a plain number, or an [re, im] pair under the complex
// field only.
std::complex<double> parse_entry(const std::string& origin, const json& j,
                                 bool complex_field, const std::string& at) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        if (!complex_field)
            fail(origin, at + ": [re, im] entries need \"field\": \"complex\"");
        return {j[0].get<double>(), j[1].get<double>()};
    }
    fail(origin, at + (complex_field ? ": expected a number or an [re, im] pair"
                                     : ": expected a number"));
}

struct ParsedDocument {
    Index dimension = 0;
    Field field = Field::complex;
    std::uint64_t seed = 0;
    NumericPolicy policy;
    const json* attributes = nullptr;
    const json* objects = nullptr;
    const json* formulas = nullptr;
    const json* state_vectors = nullptr;
};

template <ScalarField S>
S narrow_entry(const std::complex<double>& z) {
    if constexpr (std::same_as<S, double>) {
        return z.real();  // pairs were rejected for the real field upstream
    } else {
        return z;
    }
}

template <ScalarField S>
LoadedScenario build(const std::string& origin, const ParsedDocument& doc,
                     const LoadOptions& options) {
    constexpr bool complex_field = !std::same_as<S, double>;
    const Index n = doc.dimension;

    std::vector<AttributeClass<S>> attributes;
    if (doc.attributes) {
        if (!doc.attributes->is_array())
            fail(origin, "attributes: expected an array");
        for (std::size_t i = 0; i < doc.attributes->size(); ++i) {
            const json& item = (*doc.attributes)[i];
            const std::string where = "attributes[" + std::to_string(i) + "]";
            if (!item.is_object()) fail(origin, where + ": expected an object");
            reject_unknown_keys(origin, item, where,
                                {"name", "kind", "basis", "random_dim"});

            if (!item.contains("name") || !item["name"].is_string())
                fail(origin, where + ": needs a string 'name'");
            const std::string name = item["name"].get<std::string>();
            if (!valid_identifier(name))
                fail(origin, where + ": name '" + name +
                                 "' is not a valid variable identifier");
            const std::string label = "attribute '" + name + "'";

            AttributeKind kind = AttributeKind::regular;
            if (item.contains("kind")) {
                if (!item["kind"].is_string())
                    fail(origin, label + ": kind must be a string");
                const auto parsed =
                    attribute_kind_from_string(item["kind"].get<std::string>());
                if (!parsed)
                    fail(origin, label + ": kind must be regular, temporal "
                                         "or reality");
                kind = *parsed;
            }

            const bool has_basis = item.contains("basis");
            const bool has_random = item.contains("random_dim");
            if (has_basis == has_random)
                fail(origin, label +
                                 ": needs exactly one of 'basis' (rows) or "
                                 "'random_dim'");

            if (has_basis) {
                const json& rows = item["basis"];
                if (!rows.is_array())
                    fail(origin, label + ": basis must be an array of rows");
                const Index k = static_cast<Index>(rows.size());
                if (k > n)
                    fail(origin, label + ": " + std::to_string(k) +
                                     " basis rows in dimension " +
                                     std::to_string(n));
                Matrix<S> gen(n, k);
                for (Index r = 0; r < k; ++r) {
                    const json& row = rows[static_cast<std::size_t>(r)];
                    if (!row.is_array() ||
                        static_cast<Index>(row.size()) != n)
                        fail(origin, label + ": basis row " +
                                         std::to_string(r) + " must have " +
                                         std::to_string(n) + " entries");
                    for (Index c = 0; c < n; ++c)
                        gen(c, r) = narrow_entry<S>(parse_entry(
                            origin, row[static_cast<std::size_t>(c)],
                            complex_field,
                            label + ": basis row " + std::to_string(r) +
                                ", entry " + std::to_string(c)));
                }
                Subspace<S> span = orthonormalize<S>(gen, doc.policy);
                if (span.dim() != k)
                    fail(origin, label + ": basis rows are linearly "
                                         "dependent (rank " +
                                     std::to_string(span.dim()) + " of " +
                                     std::to_string(k) + ")");
                attributes.push_back({name, kind, std::move(span)});
            } else {
                const json& rd = item["random_dim"];
                if (!rd.is_number_integer() || rd.get<Index>() < 0 ||
                    rd.get<Index>() > n)
                    fail(origin, label + ": random_dim must be an integer "
                                         "in [0, " +
                                     std::to_string(n) + "]");
                attributes.push_back(
                    {name, kind,
                     random_subspace<S>(n, rd.get<Index>(),
                                        mix_seed(doc.seed, fnv1a64(name)),
                                        doc.policy)});
            }
        }
    }

    std::vector<BilogicObject> objects;
    if (doc.objects) {
        if (!doc.objects->is_array())
            fail(origin, "objects: expected an array");
        for (std::size_t i = 0; i < doc.objects->size(); ++i) {
            const json& item = (*doc.objects)[i];
            const std::string where = "objects[" + std::to_string(i) + "]";
            if (!item.is_object()) fail(origin, where + ": expected an object");
            reject_unknown_keys(origin, item, where, {"name", "attributes"});
            if (!item.contains("name") || !item["name"].is_string())
                fail(origin, where + ": needs a string 'name'");
            if (!item.contains("attributes") || !item["attributes"].is_array())
                fail(origin, where + ": needs an 'attributes' array");
            BilogicObject obj{item["name"].get<std::string>(), {}};
            for (const json& ref : item["attributes"]) {
                if (!ref.is_string())
                    fail(origin, "object '" + obj.name +
                                     "': attribute references must be "
                                     "strings");
                obj.attributes.push_back(ref.get<std::string>());
            }
            objects.push_back(std::move(obj));
        }
    }

    typename Scenario<S>::Options scenario_options;
    scenario_options.allow_unequal_dims = options.allow_unequal_dims;
    std::optional<Scenario<S>> scenario;
    try {
        scenario.emplace(n, std::move(attributes), std::move(objects),
                         doc.policy, doc.seed, scenario_options);
    } catch (const ScenarioValidationError& e) {
        fail(origin, e.what());
    }

    std::map<std::string, Formula> formulas;
    if (doc.formulas) {
        if (!doc.formulas->is_object())
            fail(origin, "formulas: expected an object of name -> text");
        for (const auto& [name, text] : doc.formulas->items()) {
            if (!text.is_string())
                fail(origin, "formulas." + name + ": expected a string");
            try {
                formulas.emplace(name,
                                 parse(text.template get<std::string>()));
            } catch (const ParseError& e) {
                fail(origin, "formulas." + name + ": " + e.what());
            }
        }
    }

    std::map<std::string, Vector<S>> state_vectors;
    if (doc.state_vectors) {
        if (!doc.state_vectors->is_object())
            fail(origin,
                 "state_vectors: expected an object of name -> entries");
        for (const auto& [name, entries] : doc.state_vectors->items()) {
            const std::string where = "state_vectors." + name;
            if (!entries.is_array() ||
                static_cast<Index>(entries.size()) != n)
                fail(origin, where + ": must be an array of " +
                                 std::to_string(n) + " entries");
            Vector<S> v(n);
            for (Index c = 0; c < n; ++c)
                v(c) = narrow_entry<S>(parse_entry(
                    origin, entries[static_cast<std::size_t>(c)],
                    complex_field, where + ", entry " + std::to_string(c)));
            state_vectors.emplace(name, std::move(v));
        }
    }

    return LoadedScenario(ScenarioBundle<S>{
        std::move(*scenario), std::move(formulas), std::move(state_vectors)});
}

}  // namespace

LoadedScenario load_scenario_from_json(const std::string& text,
                                       const std::string& origin,
                                       const LoadOptions& options) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(origin, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) fail(origin, "top level must be an object");
    reject_unknown_keys(origin, doc, "top level",
                        {"dimension", "field", "seed", "policy", "attributes",
                         "objects", "formulas", "state_vectors"});

    ParsedDocument parsed;

    if (!doc.contains("dimension") || !doc["dimension"].is_number_integer() ||
        doc["dimension"].get<Index>() < 1)
        fail(origin, "dimension: required, a positive integer");
    parsed.dimension = doc["dimension"].get<Index>();

    if (doc.contains("field")) {
        const json& f = doc["field"];
        if (f == "real")
            parsed.field = Field::real;
        else if (f == "complex")
            parsed.field = Field::complex;
        else
            fail(origin, "field: must be \"real\" or \"complex\"");
    }

    if (doc.contains("seed")) {
        const json& s = doc["seed"];
        if (!s.is_number_integer() ||
            (s.is_number_integer() && !s.is_number_unsigned() &&
             s.get<std::int64_t>() < 0))
            fail(origin, "seed: must be a non-negative integer");
        parsed.seed = s.get<std::uint64_t>();
    }
    if (options.seed_override) parsed.seed = *options.seed_override;

    if (doc.contains("policy")) {
        const json& p = doc["policy"];
        if (!p.is_object()) fail(origin, "policy: expected an object");
        reject_unknown_keys(origin, p, "policy",
                            {"rank_cutoff_rel", "eq_tol", "membership_tol"});
        const auto take = [&](const char* key, double& out) {
            if (!p.contains(key)) return;
            if (!p[key].is_number())
                fail(origin, std::string("policy.") + key +
                                 ": expected a number");
            out = p[key].get<double>();
        };
        take("rank_cutoff_rel", parsed.policy.rank_cutoff_rel);
        take("eq_tol", parsed.policy.eq_tol);
        take("membership_tol", parsed.policy.membership_tol);
    }
    if (options.eq_tol_override) parsed.policy.eq_tol = *options.eq_tol_override;
    try {
        parsed.policy.validate();
    } catch (const std::invalid_argument& e) {
        fail(origin, e.what());
    }

    if (doc.contains("attributes")) parsed.attributes = &doc["attributes"];
    if (doc.contains("objects")) parsed.objects = &doc["objects"];
    if (doc.contains("formulas")) parsed.formulas = &doc["formulas"];
    if (doc.contains("state_vectors"))
        parsed.state_vectors = &doc["state_vectors"];

    return parsed.field == Field::real
               ? build<double>(origin, parsed, options)
               : build<std::complex<double>>(origin, parsed, options);
}

LoadedScenario load_scenario(const std::string& path,
                             const LoadOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioFileError(path + ": cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_scenario_from_json(buffer.str(), path, options);
}

}  // namespace orthomod
