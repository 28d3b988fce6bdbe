#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vecgate/value.hpp"

namespace vecgate {

enum class CompareOp : std::uint8_t { eq, ne, gt, gte, lt, lte, in, nin };

std::string_view to_string(CompareOp op) noexcept;
/// Accepts the DSL token form ("$gte").
std::optional<CompareOp> parse_compare_op(std::string_view token) noexcept;
CompareOp complement(CompareOp op) noexcept;
bool is_ordering(CompareOp op) noexcept;
bool is_membership(CompareOp op) noexcept;

/// Scalar for eq..lte, list for in/nin.
using Literal = std::variant<Scalar, ScalarList>;

class FilterAst;

struct MatchAll {
    friend bool operator==(const MatchAll&, const MatchAll&) = default;
};

struct And {
    std::vector<FilterAst> children;
};

struct Or {
    std::vector<FilterAst> children;
};

struct Not {
    std::shared_ptr<const FilterAst> child;
};

struct Compare {
    std::string field;
    CompareOp op = CompareOp::eq;
    Literal literal;

    friend bool operator==(const Compare&, const Compare&) = default;
};

/// Universal filter representation. Immutable once built; copies share
/// subtrees under Not.
class FilterAst {
public:
    using Node = std::variant<MatchAll, And, Or, Not, Compare>;

    FilterAst() : node_(MatchAll{}) {}
    FilterAst(MatchAll n) : node_(n) {}
    FilterAst(And n) : node_(std::move(n)) {}
    FilterAst(Or n) : node_(std::move(n)) {}
    FilterAst(Compare n) : node_(std::move(n)) {}
    FilterAst(Not n) : node_(std::move(n)) {}

    const Node& node() const noexcept { return node_; }

    template <class T>
    const T* as() const noexcept {
        return std::get_if<T>(&node_);
    }
    bool is_match_all() const noexcept { return std::holds_alternative<MatchAll>(node_); }

    friend bool operator==(const FilterAst& a, const FilterAst& b);

private:
    Node node_;
};

bool operator==(const And& a, const And& b);
bool operator==(const Or& a, const Or& b);
bool operator==(const Not& a, const Not& b);

// Builders, mostly for tests and programmatic callers.
FilterAst make_not(FilterAst child);
FilterAst make_and(std::vector<FilterAst> children);
FilterAst make_or(std::vector<FilterAst> children);
FilterAst make_compare(std::string field, CompareOp op, Literal literal);

/// Compact debug rendering, e.g. And[Compare(genre,eq,"drama"),Compare(year,gte,2020)].
std::string to_debug_string(const FilterAst& ast);

/// Checks node invariants (non-empty children, literal kinds, field names).
/// Throws ValidationError with the path of the first offending node.
void validate_filter(const FilterAst& ast);

/// Collapses single-child And/Or nodes, recursively.
FilterAst canonicalize(const FilterAst& ast);

bool contains_not(const FilterAst& ast) noexcept;

/// Field names referenced anywhere in the tree, sorted and de-duplicated.
std::vector<std::string> referenced_fields(const FilterAst& ast);

namespace detail {
/// Literal/field checks for one comparison; `path` is the parent clause path.
void check_compare(const Compare& compare, const std::string& path);
}  // namespace detail

}  // namespace vecgate
