#pragma once
// Propositional DSL over the quantum connectives. Formulas are immutable
// trees with shared structure; parsing and printing round-trip structurally.
// Grammar: variables [A-Za-z_][A-Za-z0-9_]*; '&'/'∧' (and), '|'/'∨' (or),
// '!'/'~'/'¬' (not), constants '1' (top) and '0' (bottom), parentheses.
// Precedence not > and > or; binary connectives associate to the left.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "orthomod/subspace.hpp"

namespace orthomod {

class Formula {
public:
    enum class Kind { Var, Not, And, Or, Top, Bottom };

    static Formula var(std::string name);
    static Formula top();
    static Formula bottom();
    static Formula negation(Formula child);
    static Formula conjunction(Formula left, Formula right);
    static Formula disjunction(Formula left, Formula right);

    Kind kind() const { return node_->kind; }
    const std::string& var_name() const { return node_->name; }
    Formula child() const { return Formula(node_->left); }  // Not
    Formula left() const { return Formula(node_->left); }   // And/Or
    Formula right() const { return Formula(node_->right); }

    bool operator==(const Formula& other) const;  // structural equality

private:
    struct Node {
        Kind kind;
        std::string name;  // Var only
        std::shared_ptr<const Node> left, right;
    };

    explicit Formula(std::shared_ptr<const Node> node)
        : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

// Thrown on malformed input; carries the byte offset and the token set the
// parser would have accepted there.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected,
               const std::string& found);

    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

Formula parse(std::string_view text);

// Minimal parenthesization; parse(pretty_print(f)) == f structurally.
std::string pretty_print(const Formula& f);

// Indented tree rendering for diagnostics and the CLI.
std::string ast_to_string(const Formula& f);

// Free variables in first-occurrence order.
std::vector<std::string> free_variables(const Formula& f);

class UnboundVariable : public Error {
public:
    explicit UnboundVariable(const std::vector<std::string>& names);
    const std::vector<std::string>& names() const { return names_; }

private:
    std::vector<std::string> names_;
};

// Variable bindings into one common ambient space.
template <ScalarField S>
class Assignment {
public:
    explicit Assignment(Index ambient_dim) : ambient_dim_(ambient_dim) {
        if (ambient_dim < 1)
            throw std::invalid_argument("ambient dimension must be >= 1");
    }

    Index ambient_dim() const { return ambient_dim_; }

    void bind(std::string name, Subspace<S> subspace) {
        if (subspace.ambient_dim() != ambient_dim_)
            throw DimensionMismatch(
                "binding '" + name + "': subspace ambient dimension " +
                std::to_string(subspace.ambient_dim()) + ", expected " +
                std::to_string(ambient_dim_));
        bindings_.insert_or_assign(std::move(name), std::move(subspace));
    }

    const Subspace<S>* find(const std::string& name) const {
        const auto it = bindings_.find(name);
        return it == bindings_.end() ? nullptr : &it->second;
    }

private:
    Index ambient_dim_;
    std::map<std::string, Subspace<S>> bindings_;
};

// Subspace-valued semantics: And -> meet, Or -> join, Not -> complement,
// Top -> H, Bottom -> {0}. All unbound variables are reported at once.
template <ScalarField S>
Subspace<S> eval_subspace(const Formula& f, const Assignment<S>& assignment,
                          const NumericPolicy& policy) {
    std::vector<std::string> unbound;
    for (const auto& name : free_variables(f))
        if (!assignment.find(name)) unbound.push_back(name);
    if (!unbound.empty()) throw UnboundVariable(unbound);

    struct Eval {
        const Assignment<S>& a;
        const NumericPolicy& policy;
        Subspace<S> operator()(const Formula& f) const {
            switch (f.kind()) {
                case Formula::Kind::Var:
                    return *a.find(f.var_name());
                case Formula::Kind::Not:
                    return complement((*this)(f.child()), policy);
                case Formula::Kind::And:
                    return meet((*this)(f.left()), (*this)(f.right()), policy);
                case Formula::Kind::Or:
                    return join((*this)(f.left()), (*this)(f.right()), policy);
                case Formula::Kind::Top:
                    return Subspace<S>::full(a.ambient_dim());
                case Formula::Kind::Bottom:
                    break;
            }
            return Subspace<S>::zero(a.ambient_dim());
        }
    };
    return Eval{assignment, policy}(f);
}

// Membership valuation of a formula at a nonzero state vector.
template <ScalarField S>
bool eval_membership(const Formula& f, const Assignment<S>& assignment,
                     const Vector<S>& v, const NumericPolicy& policy) {
    if (v.size() != assignment.ambient_dim())
        throw DimensionMismatch(
            "state vector dimension " + std::to_string(v.size()) +
            ", expected " + std::to_string(assignment.ambient_dim()));
    if (v.norm() == 0.0)
        throw std::invalid_argument("membership at the zero state vector is "
                                    "trivially true and uninformative");
    return contains_vector(eval_subspace(f, assignment, policy), v, policy);
}

}  // namespace orthomod
