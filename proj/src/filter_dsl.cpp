#include "vecgate/filter_dsl.hpp"

#include <algorithm>

#include "vecgate/errors.hpp"

namespace vecgate {

namespace {

std::string join(const std::string& path, std::string_view key) {
    if (path.empty()) return std::string(key);
    std::string out = path;
    out += '.';
    out += key;
    return out;
}

FilterAst conjoin(std::vector<FilterAst> parts) {
    if (parts.size() == 1) return std::move(parts.front());
    return And{std::move(parts)};
}

Literal literal_from_json(const Json& value, CompareOp op, const std::string& where) {
    if (is_membership(op)) {
        if (!value.is_array()) throw_validation(where + ": $" + std::string(to_string(op)) + " requires a list literal");
        ScalarList list;
        list.reserve(value.size());
        for (const auto& item : value) list.push_back(scalar_from_json(item, where));
        return list;
    }
    if (value.is_array()) {
        throw_validation(where + ": list literal under scalar operator $" + std::string(to_string(op)));
    }
    return scalar_from_json(value, where);
}

FilterAst parse_field(const std::string& parent, const std::string& field, const Json& value) {
    const std::string where = join(parent, field);
    std::vector<FilterAst> parts;
    if (value.is_object()) {
        if (value.empty()) throw_validation(where + ": empty operator document");
        for (const auto& [token, operand] : value.items()) {
            const auto op = parse_compare_op(token);
            if (!op) throw_validation(where + ": unknown operator '" + token + "'");
            Compare compare{field, *op, literal_from_json(operand, *op, where)};
            detail::check_compare(compare, parent);
            parts.emplace_back(std::move(compare));
        }
    } else if (value.is_array()) {
        throw_validation(where + ": list literal requires $in or $nin");
    } else {
        Compare compare{field, CompareOp::eq, scalar_from_json(value, where)};
        detail::check_compare(compare, parent);
        parts.emplace_back(std::move(compare));
    }
    return conjoin(std::move(parts));
}

FilterAst parse_clause(const Json& doc, const std::string& path, bool root) {
    if (!doc.is_object()) throw_validation((path.empty() ? std::string("<root>") : path) + ": clause must be an object");
    if (doc.empty()) {
        if (root) return MatchAll{};
        throw_validation(path + ": empty clause");
    }

    std::vector<FilterAst> parts;
    for (const auto& [key, value] : doc.items()) {
        if (key.empty()) throw_validation((path.empty() ? std::string("<root>") : path) + ": empty field name");
        if (key.front() != '$') {
            parts.push_back(parse_field(path, key, value));
            continue;
        }
        const std::string where = join(path, key);
        if (key == "$and" || key == "$or") {
            if (!value.is_array()) throw_validation(where + ": expected a list of clauses");
            if (value.empty()) throw_validation(where + ": requires at least one clause");
            std::vector<FilterAst> children;
            children.reserve(value.size());
            for (std::size_t i = 0; i < value.size(); ++i) {
                children.push_back(parse_clause(value[i], where + "[" + std::to_string(i) + "]", false));
            }
            if (children.size() == 1) {
                parts.push_back(std::move(children.front()));
            } else if (key == "$and") {
                parts.emplace_back(And{std::move(children)});
            } else {
                parts.emplace_back(Or{std::move(children)});
            }
        } else if (key == "$not") {
            parts.push_back(make_not(parse_clause(value, where, false)));
        } else if (parse_compare_op(key)) {
            throw_validation(where + ": comparison operator must appear under a field name");
        } else {
            throw_validation(where + ": unknown operator");
        }
    }
    return conjoin(std::move(parts));
}

Json literal_to_json(const Literal& literal) {
    if (const auto* s = std::get_if<Scalar>(&literal)) return scalar_to_json(*s);
    Json list = Json::array();
    for (const auto& s : std::get<ScalarList>(literal)) list.push_back(scalar_to_json(s));
    return list;
}

FilterAst push(const FilterAst& ast, bool negate) {
    return std::visit(
        [&](const auto& n) -> FilterAst {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, MatchAll>) {
                if (negate) throw_validation("negated empty filter matches nothing and cannot be expressed");
                return n;
            } else if constexpr (std::is_same_v<T, Compare>) {
                if (!negate) return n;
                return Compare{n.field, complement(n.op), n.literal};
            } else if constexpr (std::is_same_v<T, Not>) {
                return push(*n.child, !negate);
            } else {
                std::vector<FilterAst> children;
                children.reserve(n.children.size());
                for (const auto& c : n.children) children.push_back(push(c, negate));
                constexpr bool is_and = std::is_same_v<T, And>;
                if (is_and != negate) return And{std::move(children)};
                return Or{std::move(children)};
            }
        },
        ast.node());
}

bool evaluate_compare(const Compare& c, const Payload& payload) {
    const auto it = payload.find(c.field);
    if (it == payload.end()) return false;
    const auto value = scalar_of(it->second);
    if (!value) return false;

    if (is_membership(c.op)) {
        const auto& list = std::get<ScalarList>(c.literal);
        const bool found =
            std::any_of(list.begin(), list.end(), [&](const Scalar& s) { return scalar_equal(*value, s); });
        return c.op == CompareOp::in ? found : !found;
    }
    const auto& literal = std::get<Scalar>(c.literal);
    switch (c.op) {
        case CompareOp::eq: return scalar_equal(*value, literal);
        case CompareOp::ne: return !scalar_equal(*value, literal);
        case CompareOp::gt: return compare_numeric(*value, literal) > 0;
        case CompareOp::gte: return compare_numeric(*value, literal) >= 0;
        case CompareOp::lt: return compare_numeric(*value, literal) < 0;
        case CompareOp::lte: return compare_numeric(*value, literal) <= 0;
        default: return false;
    }
}

bool evaluate(const FilterAst& ast, const Payload& payload) {
    return std::visit(
        [&](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, MatchAll>) {
                return true;
            } else if constexpr (std::is_same_v<T, Compare>) {
                return evaluate_compare(n, payload);
            } else if constexpr (std::is_same_v<T, Not>) {
                return !evaluate(*n.child, payload);
            } else if constexpr (std::is_same_v<T, And>) {
                return std::all_of(n.children.begin(), n.children.end(),
                                   [&](const FilterAst& c) { return evaluate(c, payload); });
            } else {
                return std::any_of(n.children.begin(), n.children.end(),
                                   [&](const FilterAst& c) { return evaluate(c, payload); });
            }
        },
        ast.node());
}

const Payload& empty_payload() {
    static const Payload empty;
    return empty;
}

}  // namespace

FilterAst parse_filter(const FilterSource& source) { return parse_clause(source, "", true); }

FilterAst parse_filter_text(std::string_view text) {
    FilterSource source;
    try {
        source = FilterSource::parse(text);
    } catch (const FilterSource::parse_error& e) {
        throw_validation(std::string("<root>: malformed filter JSON: ") + e.what());
    }
    return parse_filter(source);
}

FilterSource serialize_filter(const FilterAst& ast) {
    return std::visit(
        [](const auto& n) -> FilterSource {
            using T = std::decay_t<decltype(n)>;
            FilterSource out = FilterSource::object();
            if constexpr (std::is_same_v<T, MatchAll>) {
                return out;
            } else if constexpr (std::is_same_v<T, Compare>) {
                FilterSource op = FilterSource::object();
                op["$" + std::string(to_string(n.op))] = literal_to_json(n.literal);
                out[n.field] = std::move(op);
            } else if constexpr (std::is_same_v<T, Not>) {
                out["$not"] = serialize_filter(*n.child);
            } else {
                FilterSource list = FilterSource::array();
                for (const auto& c : n.children) list.push_back(serialize_filter(c));
                out[std::is_same_v<T, And> ? "$and" : "$or"] = std::move(list);
            }
            return out;
        },
        ast.node());
}

FilterAst push_negations(const FilterAst& ast) { return push(ast, false); }

bool evaluate_filter(const FilterAst& ast, const Payload* payload) {
    return evaluate(ast, payload ? *payload : empty_payload());
}

bool evaluate_filter(const FilterAst& ast, const std::optional<Payload>& payload) {
    return evaluate_filter(ast, payload ? &*payload : nullptr);
}

}  // namespace vecgate
