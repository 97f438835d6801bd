#pragma once
// Bi-logic operators over the subspace calculus: asymmetric representation
// (conjunction of attribute classes), generalization (linear closure),
// symmetric-class identification, condensation and displacement. Attribute
// kinds (temporal, reality) are descriptive tags and never change what any
// operator computes.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orthomod/formula.hpp"
#include "orthomod/subspace.hpp"

namespace orthomod {

enum class AttributeKind { regular, temporal, reality };

inline const char* to_string(AttributeKind kind) {
    switch (kind) {
        case AttributeKind::temporal: return "temporal";
        case AttributeKind::reality: return "reality";
        default: return "regular";
    }
}

inline std::optional<AttributeKind> attribute_kind_from_string(
    std::string_view s) {
    if (s == "regular") return AttributeKind::regular;
    if (s == "temporal") return AttributeKind::temporal;
    if (s == "reality") return AttributeKind::reality;
    return std::nullopt;
}

// A named class of objects sharing one attribute, modeled as a closed
// subspace of the scenario's ambient space.
template <ScalarField S>
struct AttributeClass {
    std::string name;
    AttributeKind kind = AttributeKind::regular;
    Subspace<S> subspace;
};

// An object is a nonempty bag of attribute references; its logical content
// is derived entirely from the referenced subspaces.
struct BilogicObject {
    std::string name;
    std::vector<std::string> attributes;
};

class ScenarioValidationError : public Error {
public:
    using Error::Error;
};

class UnknownName : public Error {
public:
    using Error::Error;
};

template <ScalarField S>
class Scenario {
public:
    struct Options {
        bool allow_unequal_dims = false;
    };

    Scenario(Index ambient_dim, std::vector<AttributeClass<S>> attributes,
             std::vector<BilogicObject> objects, NumericPolicy policy = {},
             std::uint64_t seed = 0, Options options = {})
        : ambient_dim_(ambient_dim),
          attributes_(std::move(attributes)),
          objects_(std::move(objects)),
          policy_(policy),
          seed_(seed) {
        if (ambient_dim_ < 1)
            throw ScenarioValidationError("ambient dimension must be >= 1");
        policy_.validate();

        for (std::size_t i = 0; i < attributes_.size(); ++i) {
            const auto& a = attributes_[i];
            if (a.name.empty())
                throw ScenarioValidationError("attribute names must be nonempty");
            if (!attribute_index_.emplace(a.name, i).second)
                throw ScenarioValidationError("duplicate attribute name '" +
                                              a.name + "'");
            if (a.subspace.ambient_dim() != ambient_dim_)
                throw ScenarioValidationError(
                    "attribute '" + a.name + "' lives in dimension " +
                    std::to_string(a.subspace.ambient_dim()) +
                    ", scenario ambient dimension is " +
                    std::to_string(ambient_dim_));
        }

        // Attribute classes are spaces of one common dimension unless the
        // caller opts out, in which case the mismatch is only warned about.
        if (!attributes_.empty()) {
            const Index k0 = attributes_.front().subspace.dim();
            bool unequal = false;
            std::string detail;
            for (const auto& a : attributes_) {
                if (a.subspace.dim() != k0) unequal = true;
                if (!detail.empty()) detail += ", ";
                detail += a.name + "=" + std::to_string(a.subspace.dim());
            }
            if (unequal) {
                if (!options.allow_unequal_dims)
                    throw ScenarioValidationError(
                        "attribute subspaces must share one dimension (" +
                        detail + "); enable allow_unequal_dims to override");
                warnings_.push_back("attribute dimensions are unequal: " +
                                    detail);
            }
        }

        for (std::size_t i = 0; i < objects_.size(); ++i) {
            const auto& obj = objects_[i];
            if (obj.name.empty())
                throw ScenarioValidationError("object names must be nonempty");
            if (!object_index_.emplace(obj.name, i).second)
                throw ScenarioValidationError("duplicate object name '" +
                                              obj.name + "'");
            if (obj.attributes.empty())
                throw ScenarioValidationError(
                    "object '" + obj.name +
                    "' must reference at least one attribute");
            std::set<std::string> seen;
            for (const auto& ref : obj.attributes) {
                if (!attribute_index_.count(ref))
                    throw ScenarioValidationError("object '" + obj.name +
                                                  "' references unknown "
                                                  "attribute '" +
                                                  ref + "'");
                if (!seen.insert(ref).second)
                    throw ScenarioValidationError("object '" + obj.name +
                                                  "' repeats attribute '" +
                                                  ref + "'");
            }
        }
    }

    Index ambient_dim() const { return ambient_dim_; }
    Field field() const { return field_of<S>(); }
    const NumericPolicy& policy() const { return policy_; }
    std::uint64_t seed() const { return seed_; }
    const std::vector<AttributeClass<S>>& attributes() const {
        return attributes_;
    }
    const std::vector<BilogicObject>& objects() const { return objects_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    const AttributeClass<S>& attribute(const std::string& name) const {
        const auto it = attribute_index_.find(name);
        if (it == attribute_index_.end())
            throw UnknownName("unknown attribute '" + name + "'");
        return attributes_[it->second];
    }

    bool has_object(const std::string& name) const {
        return object_index_.count(name) != 0;
    }

    const BilogicObject& object(const std::string& name) const {
        const auto it = object_index_.find(name);
        if (it == object_index_.end())
            throw UnknownName("unknown object '" + name + "'");
        return objects_[it->second];
    }

    // Every attribute bound under its own name, for formula evaluation.
    Assignment<S> make_assignment() const {
        Assignment<S> a(ambient_dim_);
        for (const auto& attr : attributes_) a.bind(attr.name, attr.subspace);
        return a;
    }

private:
    Index ambient_dim_;
    std::vector<AttributeClass<S>> attributes_;
    std::vector<BilogicObject> objects_;
    NumericPolicy policy_;
    std::uint64_t seed_;
    std::vector<std::string> warnings_;
    std::map<std::string, std::size_t> attribute_index_;
    std::map<std::string, std::size_t> object_index_;
};

namespace detail {

// Objects passed to operators need not be stored in the scenario, but their
// attribute references must resolve and be duplicate-free.
template <ScalarField S>
void validate_object(const BilogicObject& obj, const Scenario<S>& s) {
    if (obj.attributes.empty())
        throw PreconditionError("object '" + obj.name +
                                "' must have at least one attribute");
    std::set<std::string> seen;
    for (const auto& name : obj.attributes) {
        s.attribute(name);  // throws UnknownName when unresolvable
        if (!seen.insert(name).second)
            throw PreconditionError("object '" + obj.name +
                                    "' repeats attribute '" + name + "'");
    }
}

template <ScalarField S>
Subspace<S> fold_meet(const std::vector<std::string>& names,
                      const Scenario<S>& s) {
    auto it = names.begin();
    Subspace<S> acc = s.attribute(*it).subspace;
    for (++it; it != names.end(); ++it)
        acc = meet(acc, s.attribute(*it).subspace, s.policy());
    return acc;
}

template <ScalarField S>
Subspace<S> fold_join(const std::vector<std::string>& names,
                      const Scenario<S>& s) {
    auto it = names.begin();
    Subspace<S> acc = s.attribute(*it).subspace;
    for (++it; it != names.end(); ++it)
        acc = join(acc, s.attribute(*it).subspace, s.policy());
    return acc;
}

}  // namespace detail

// Conscious, asymmetric representation: the intersection of all attribute
// classes. A zero-dimensional result marks an unrealizable object and is a
// legitimate value, not an error.
template <ScalarField S>
Subspace<S> asymmetric_repr(const BilogicObject& obj, const Scenario<S>& s) {
    detail::validate_object(obj, s);
    return detail::fold_meet(obj.attributes, s);
}

// Generalization: the linear closure of all attribute classes.
template <ScalarField S>
Subspace<S> generalize(const BilogicObject& obj, const Scenario<S>& s) {
    detail::validate_object(obj, s);
    return detail::fold_join(obj.attributes, s);
}

// Partition object names by equality of their generalized subspaces, in
// first-occurrence order. Objects with identical attribute sets necessarily
// land in one class.
template <ScalarField S>
std::vector<std::vector<std::string>> symmetric_classes(
    const std::vector<BilogicObject>& objs, const Scenario<S>& s) {
    std::vector<std::vector<std::string>> classes;
    std::vector<Subspace<S>> reps;
    for (const auto& obj : objs) {
        Subspace<S> g = generalize(obj, s);
        bool placed = false;
        for (std::size_t i = 0; i < reps.size(); ++i) {
            if (equal(reps[i], g, s.policy())) {
                classes[i].push_back(obj.name);
                placed = true;
                break;
            }
        }
        if (!placed) {
            reps.push_back(std::move(g));
            classes.push_back({obj.name});
        }
    }
    return classes;
}

struct NegationIdentity {
    bool generalized_equal;     // generalization of the object equals that
                                // of its negation
    bool complement_contained;  // complement of the asymmetric representation
                                // lies inside the generalization
};

// The identity "an object equals its negation" lives at the level of
// generalized representations: negating an object leaves its attribute set
// untouched, so both generalize to the same linear closure (recomputed here
// over the reversed attribute list as a fold-order sanity check). The
// complement of the asymmetric representation is contained in that closure
// exactly when the closure is the whole space.
template <ScalarField S>
NegationIdentity negation_identity_check(const BilogicObject& obj,
                                         const Scenario<S>& s) {
    detail::validate_object(obj, s);
    const Subspace<S> generalized = detail::fold_join(obj.attributes, s);
    std::vector<std::string> reversed(obj.attributes.rbegin(),
                                      obj.attributes.rend());
    const Subspace<S> negated_generalized = detail::fold_join(reversed, s);
    const Subspace<S> repr = detail::fold_meet(obj.attributes, s);
    return {equal(generalized, negated_generalized, s.policy()),
            contained_in(complement(repr, s.policy()), generalized,
                         s.policy())};
}

// Condensation: the linear closure of two object representations, housing
// every superposition of the two.
template <ScalarField S>
Subspace<S> condense(const BilogicObject& a, const BilogicObject& b,
                     const Scenario<S>& s) {
    return join(asymmetric_repr(a, s), asymmetric_repr(b, s), s.policy());
}

// Displacement: graft the conjunction of the transferred source attributes
// onto the target's representation. Transferring nothing returns the target
// unchanged; transferring every source attribute coincides with condense.
template <ScalarField S>
Subspace<S> displace(const BilogicObject& target, const BilogicObject& source,
                     const std::vector<std::string>& transferred,
                     const Scenario<S>& s) {
    detail::validate_object(target, s);
    detail::validate_object(source, s);
    const std::set<std::string> source_attrs(source.attributes.begin(),
                                             source.attributes.end());
    std::vector<std::string> carried;
    std::set<std::string> seen;
    for (const auto& name : transferred) {
        if (!source_attrs.count(name))
            throw PreconditionError(
                "transferred attribute '" + name +
                "' is not an attribute of source object '" + source.name +
                "'");
        if (seen.insert(name).second) carried.push_back(name);
    }
    Subspace<S> repr = asymmetric_repr(target, s);
    if (carried.empty()) return repr;
    return join(repr, detail::fold_meet(carried, s), s.policy());
}

// Descriptive survey of temporal and reality attributes; it feeds reports
// only and has no bearing on any operator.
struct KindsReport {
    std::vector<std::string> temporal;  // attribute names, declaration order
    std::vector<std::string> reality;
    struct ObjectEntry {
        std::string object;
        std::vector<std::string> temporal;
        std::vector<std::string> reality;
    };
    std::vector<ObjectEntry> objects;  // objects carrying tagged attributes

    bool empty() const { return temporal.empty() && reality.empty(); }
};

template <ScalarField S>
KindsReport attribute_kinds_report(const Scenario<S>& s) {
    KindsReport report;
    for (const auto& a : s.attributes()) {
        if (a.kind == AttributeKind::temporal)
            report.temporal.push_back(a.name);
        else if (a.kind == AttributeKind::reality)
            report.reality.push_back(a.name);
    }
    for (const auto& obj : s.objects()) {
        KindsReport::ObjectEntry entry{obj.name, {}, {}};
        for (const auto& name : obj.attributes) {
            const auto kind = s.attribute(name).kind;
            if (kind == AttributeKind::temporal)
                entry.temporal.push_back(name);
            else if (kind == AttributeKind::reality)
                entry.reality.push_back(name);
        }
        if (!entry.temporal.empty() || !entry.reality.empty())
            report.objects.push_back(std::move(entry));
    }
    return report;
}

}  // namespace orthomod
