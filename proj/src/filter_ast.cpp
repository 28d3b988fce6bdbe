#include "vecgate/filter_ast.hpp"

#include <algorithm>
#include <cmath>

#include "vecgate/errors.hpp"

namespace vecgate {

namespace {

struct OpName {
    CompareOp op;
    std::string_view name;
    std::string_view token;
};

constexpr OpName kOps[] = {
    {CompareOp::eq, "eq", "$eq"},   {CompareOp::ne, "ne", "$ne"},     {CompareOp::gt, "gt", "$gt"},
    {CompareOp::gte, "gte", "$gte"}, {CompareOp::lt, "lt", "$lt"},    {CompareOp::lte, "lte", "$lte"},
    {CompareOp::in, "in", "$in"},   {CompareOp::nin, "nin", "$nin"},
};

bool children_equal(const std::vector<FilterAst>& a, const std::vector<FilterAst>& b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

void debug_literal(const Literal& literal, std::string& out) {
    if (const auto* s = std::get_if<Scalar>(&literal)) {
        out += to_string(*s);
        return;
    }
    out += '[';
    const auto& list = std::get<ScalarList>(literal);
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (i) out += ',';
        out += to_string(list[i]);
    }
    out += ']';
}

void debug(const FilterAst& ast, std::string& out) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, MatchAll>) {
                out += "MatchAll";
            } else if constexpr (std::is_same_v<T, Not>) {
                out += "Not(";
                debug(*n.child, out);
                out += ')';
            } else if constexpr (std::is_same_v<T, Compare>) {
                out += "Compare(" + n.field + ',' + std::string(to_string(n.op)) + ',';
                debug_literal(n.literal, out);
                out += ')';
            } else {
                out += std::is_same_v<T, And> ? "And[" : "Or[";
                for (std::size_t i = 0; i < n.children.size(); ++i) {
                    if (i) out += ',';
                    debug(n.children[i], out);
                }
                out += ']';
            }
        },
        ast.node());
}

bool finite_scalar(const Scalar& s) {
    const auto* d = std::get_if<double>(&s);
    return !d || std::isfinite(*d);
}

}  // namespace

void detail::check_compare(const Compare& c, const std::string& path) {
    const std::string where = path.empty() ? c.field : path + "." + c.field;
    if (c.field.empty()) throw_validation((path.empty() ? std::string("<root>") : path) + ": empty field name");
    if (c.field.front() == '$') throw_validation(where + ": field names may not begin with '$'");
    if (is_membership(c.op)) {
        const auto* list = std::get_if<ScalarList>(&c.literal);
        if (!list) throw_validation(where + ": $" + std::string(to_string(c.op)) + " requires a list literal");
        if (list->empty()) throw_validation(where + ": $" + std::string(to_string(c.op)) + " requires a non-empty list");
        if (!is_homogeneous(*list)) throw_validation(where + ": list literal mixes value kinds");
        for (const auto& s : *list) {
            if (!finite_scalar(s)) throw_validation(where + ": non-finite literal");
        }
        return;
    }
    const auto* scalar = std::get_if<Scalar>(&c.literal);
    if (!scalar) throw_validation(where + ": $" + std::string(to_string(c.op)) + " requires a scalar literal");
    if (!finite_scalar(*scalar)) throw_validation(where + ": non-finite literal");
    if (is_ordering(c.op) && !is_numeric(*scalar)) {
        throw_validation(where + ": $" + std::string(to_string(c.op)) + " requires a numeric literal");
    }
}

namespace {

void validate_at(const FilterAst& ast, const std::string& path, bool root) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, MatchAll>) {
                if (!root) throw_validation(path + ": empty clause");
            } else if constexpr (std::is_same_v<T, Not>) {
                if (!n.child) throw_validation(path + ": $not without operand");
                validate_at(*n.child, path.empty() ? "$not" : path + ".$not", false);
            } else if constexpr (std::is_same_v<T, Compare>) {
                detail::check_compare(n, path);
            } else {
                const std::string token = std::is_same_v<T, And> ? "$and" : "$or";
                const std::string base = path.empty() ? token : path + "." + token;
                if (n.children.empty()) throw_validation(base + ": requires at least one clause");
                for (std::size_t i = 0; i < n.children.size(); ++i) {
                    validate_at(n.children[i], base + "[" + std::to_string(i) + "]", false);
                }
            }
        },
        ast.node());
}

void collect_fields(const FilterAst& ast, std::vector<std::string>& out) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Compare>) {
                out.push_back(n.field);
            } else if constexpr (std::is_same_v<T, Not>) {
                collect_fields(*n.child, out);
            } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
                for (const auto& c : n.children) collect_fields(c, out);
            }
        },
        ast.node());
}

}  // namespace

std::string_view to_string(CompareOp op) noexcept {
    for (const auto& o : kOps) {
        if (o.op == op) return o.name;
    }
    return "eq";
}

std::optional<CompareOp> parse_compare_op(std::string_view token) noexcept {
    for (const auto& o : kOps) {
        if (o.token == token) return o.op;
    }
    return std::nullopt;
}

CompareOp complement(CompareOp op) noexcept {
    switch (op) {
        case CompareOp::eq: return CompareOp::ne;
        case CompareOp::ne: return CompareOp::eq;
        case CompareOp::gt: return CompareOp::lte;
        case CompareOp::lte: return CompareOp::gt;
        case CompareOp::lt: return CompareOp::gte;
        case CompareOp::gte: return CompareOp::lt;
        case CompareOp::in: return CompareOp::nin;
        case CompareOp::nin: return CompareOp::in;
    }
    return op;
}

bool is_ordering(CompareOp op) noexcept {
    return op == CompareOp::gt || op == CompareOp::gte || op == CompareOp::lt || op == CompareOp::lte;
}

bool is_membership(CompareOp op) noexcept { return op == CompareOp::in || op == CompareOp::nin; }

bool operator==(const And& a, const And& b) { return children_equal(a.children, b.children); }
bool operator==(const Or& a, const Or& b) { return children_equal(a.children, b.children); }
bool operator==(const Not& a, const Not& b) {
    if (a.child == b.child) return true;
    if (!a.child || !b.child) return false;
    return *a.child == *b.child;
}

bool operator==(const FilterAst& a, const FilterAst& b) { return a.node_ == b.node_; }

FilterAst make_not(FilterAst child) { return Not{std::make_shared<const FilterAst>(std::move(child))}; }
FilterAst make_and(std::vector<FilterAst> children) { return And{std::move(children)}; }
FilterAst make_or(std::vector<FilterAst> children) { return Or{std::move(children)}; }
FilterAst make_compare(std::string field, CompareOp op, Literal literal) {
    return Compare{std::move(field), op, std::move(literal)};
}

std::string to_debug_string(const FilterAst& ast) {
    std::string out;
    debug(ast, out);
    return out;
}

void validate_filter(const FilterAst& ast) { validate_at(ast, "", true); }

FilterAst canonicalize(const FilterAst& ast) {
    return std::visit(
        [](const auto& n) -> FilterAst {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
                if (n.children.size() == 1) return canonicalize(n.children.front());
                T out;
                out.children.reserve(n.children.size());
                for (const auto& c : n.children) out.children.push_back(canonicalize(c));
                return out;
            } else if constexpr (std::is_same_v<T, Not>) {
                return make_not(canonicalize(*n.child));
            } else {
                return n;
            }
        },
        ast.node());
}

bool contains_not(const FilterAst& ast) noexcept {
    return std::visit(
        [](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Not>) {
                return true;
            } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
                return std::any_of(n.children.begin(), n.children.end(),
                                   [](const FilterAst& c) { return contains_not(c); });
            } else {
                return false;
            }
        },
        ast.node());
}

std::vector<std::string> referenced_fields(const FilterAst& ast) {
    std::vector<std::string> out;
    collect_fields(ast, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace vecgate
