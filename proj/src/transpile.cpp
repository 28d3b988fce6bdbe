#include "vecgate/transpile.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "vecgate/errors.hpp"
#include "vecgate/filter_dsl.hpp"

namespace vecgate {

namespace {

NativeJson scalar_json(const Scalar& s) {
    return std::visit([](const auto& v) { return NativeJson(v); }, s);
}

NativeJson literal_json(const Literal& literal) {
    if (const auto* s = std::get_if<Scalar>(&literal)) return scalar_json(*s);
    NativeJson list = NativeJson::array();
    for (const auto& s : std::get<ScalarList>(literal)) list.push_back(scalar_json(s));
    return list;
}

std::string render_double(double d) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d);
    std::string out(buf, end);
    if (out.find_first_of(".e") == std::string::npos) out += ".0";
    return out;
}

/// Double-quoted with backslash escapes; control characters as \uXXXX.
std::string quote(std::string_view s) {
    std::string out;
    out.reserve(s.size() + 2);
    out += '"';
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char esc[8];
                    std::snprintf(esc, sizeof esc, "\\u%04x", static_cast<unsigned>(static_cast<unsigned char>(ch)));
                    out += esc;
                } else {
                    out += ch;
                }
        }
    }
    out += '"';
    return out;
}

std::string render_scalar(const Scalar& s) {
    switch (s.index()) {
        case 0: return std::get<bool>(s) ? "true" : "false";
        case 1: return std::to_string(std::get<std::int64_t>(s));
        case 2: return render_double(std::get<double>(s));
        default: return quote(std::get<std::string>(s));
    }
}

// --- pinecone --------------------------------------------------------------

NativeJson pinecone_body(const FilterAst& ast) {
    return std::visit(
        [](const auto& n) -> NativeJson {
            using T = std::decay_t<decltype(n)>;
            NativeJson out = NativeJson::object();
            if constexpr (std::is_same_v<T, MatchAll>) {
                return out;
            } else if constexpr (std::is_same_v<T, Compare>) {
                out[n.field]["$" + std::string(to_string(n.op))] = literal_json(n.literal);
            } else if constexpr (std::is_same_v<T, Not>) {
                throw UnifiedError(ErrorCode::InternalError, "negation survived pushdown");
            } else {
                NativeJson list = NativeJson::array();
                for (const auto& c : n.children) list.push_back(pinecone_body(c));
                out[std::is_same_v<T, And> ? "$and" : "$or"] = std::move(list);
            }
            return out;
        },
        ast.node());
}

// --- weaviate --------------------------------------------------------------

WeaviateOperator leaf_operator(CompareOp op) {
    switch (op) {
        case CompareOp::eq: return WeaviateOperator::Equal;
        case CompareOp::ne: return WeaviateOperator::NotEqual;
        case CompareOp::gt: return WeaviateOperator::GreaterThan;
        case CompareOp::gte: return WeaviateOperator::GreaterThanEqual;
        case CompareOp::lt: return WeaviateOperator::LessThan;
        case CompareOp::lte: return WeaviateOperator::LessThanEqual;
        default: break;
    }
    throw UnifiedError(ErrorCode::InternalError, "membership operator reached a weaviate leaf");
}

WeaviateWhere weaviate_leaf(const std::string& field, WeaviateOperator op, const Scalar& value) {
    return WeaviateWhere{WeaviateLeaf{{field}, op, value_key_for(value), value}};
}

WeaviateWhere weaviate_tree(const FilterAst& ast) {
    return std::visit(
        [](const auto& n) -> WeaviateWhere {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Compare>) {
                if (!is_membership(n.op)) return weaviate_leaf(n.field, leaf_operator(n.op), std::get<Scalar>(n.literal));
                const auto& list = std::get<ScalarList>(n.literal);
                const bool in = n.op == CompareOp::in;
                const auto leaf_op = in ? WeaviateOperator::Equal : WeaviateOperator::NotEqual;
                if (list.size() == 1) return weaviate_leaf(n.field, leaf_op, list.front());
                WeaviateLogical logical{in ? WeaviateOperator::Or : WeaviateOperator::And, {}};
                for (const auto& s : list) logical.operands.push_back(weaviate_leaf(n.field, leaf_op, s));
                return WeaviateWhere{std::move(logical)};
            } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
                WeaviateLogical logical{std::is_same_v<T, And> ? WeaviateOperator::And : WeaviateOperator::Or, {}};
                for (const auto& c : n.children) logical.operands.push_back(weaviate_tree(c));
                return WeaviateWhere{std::move(logical)};
            } else if constexpr (std::is_same_v<T, MatchAll>) {
                // Only reachable below the root; an empty And matches everything.
                return WeaviateWhere{WeaviateLogical{WeaviateOperator::And, {}}};
            } else {
                throw UnifiedError(ErrorCode::InternalError, "negation survived pushdown");
            }
        },
        ast.node());
}

void render(const WeaviateWhere& where, std::string& out) {
    if (const auto* leaf = std::get_if<WeaviateLeaf>(&where.node)) {
        out += "{path: [";
        for (std::size_t i = 0; i < leaf->path.size(); ++i) {
            if (i) out += ", ";
            out += quote(leaf->path[i]);
        }
        out += "], operator: ";
        out += to_string(leaf->op);
        out += ", ";
        out += to_string(leaf->value_key);
        out += ": ";
        out += render_scalar(leaf->value);
        out += '}';
        return;
    }
    const auto& logical = std::get<WeaviateLogical>(where.node);
    out += "{operator: ";
    out += to_string(logical.op);
    out += ", operands: [";
    for (std::size_t i = 0; i < logical.operands.size(); ++i) {
        if (i) out += ", ";
        render(logical.operands[i], out);
    }
    out += "]}";
}

// --- qdrant ----------------------------------------------------------------

NativeJson qdrant_condition(const FilterAst& ast);

NativeJson qdrant_field_condition(const Compare& c) {
    NativeJson cond = NativeJson::object();
    cond["key"] = c.field;
    switch (c.op) {
        case CompareOp::eq: cond["match"]["value"] = literal_json(c.literal); break;
        case CompareOp::ne: cond["match"]["except"] = NativeJson::array({literal_json(c.literal)}); break;
        case CompareOp::in: cond["match"]["any"] = literal_json(c.literal); break;
        case CompareOp::nin: cond["match"]["except"] = literal_json(c.literal); break;
        default: cond["range"][std::string(to_string(c.op))] = literal_json(c.literal); break;
    }
    return cond;
}

NativeJson qdrant_condition(const FilterAst& ast) {
    return std::visit(
        [](const auto& n) -> NativeJson {
            using T = std::decay_t<decltype(n)>;
            NativeJson out = NativeJson::object();
            if constexpr (std::is_same_v<T, MatchAll>) {
                return out;
            } else if constexpr (std::is_same_v<T, Compare>) {
                return qdrant_field_condition(n);
            } else if constexpr (std::is_same_v<T, Not>) {
                out["must_not"] = NativeJson::array({qdrant_condition(*n.child)});
            } else {
                NativeJson list = NativeJson::array();
                for (const auto& c : n.children) list.push_back(qdrant_condition(c));
                out[std::is_same_v<T, And> ? "must" : "should"] = std::move(list);
            }
            return out;
        },
        ast.node());
}

// --- milvus ----------------------------------------------------------------

std::string milvus_list(const ScalarList& list) {
    std::string out = "[";
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (i) out += ", ";
        out += render_scalar(list[i]);
    }
    out += ']';
    return out;
}

std::string milvus_expr(const FilterAst& ast);

/// Comparisons render already parenthesized; anything else gets wrapped.
std::string milvus_operand(const FilterAst& ast) {
    if (ast.as<Compare>()) return milvus_expr(ast);
    return "(" + milvus_expr(ast) + ")";
}

std::string milvus_expr(const FilterAst& ast) {
    return std::visit(
        [&](const auto& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, MatchAll>) {
                return "";
            } else if constexpr (std::is_same_v<T, Compare>) {
                switch (n.op) {
                    case CompareOp::in: return "(" + n.field + " in " + milvus_list(std::get<ScalarList>(n.literal)) + ")";
                    case CompareOp::nin:
                        return "(not (" + n.field + " in " + milvus_list(std::get<ScalarList>(n.literal)) + "))";
                    default: break;
                }
                static constexpr std::string_view kSymbols[] = {"==", "!=", ">", ">=", "<", "<="};
                return "(" + n.field + " " + std::string(kSymbols[static_cast<int>(n.op)]) + " " +
                       render_scalar(std::get<Scalar>(n.literal)) + ")";
            } else if constexpr (std::is_same_v<T, Not>) {
                return "!" + milvus_operand(*n.child);
            } else {
                const std::string_view sep = std::is_same_v<T, And> ? " && " : " || ";
                std::string out;
                for (std::size_t i = 0; i < n.children.size(); ++i) {
                    if (i) out += sep;
                    out += milvus_operand(n.children[i]);
                }
                return out;
            }
        },
        ast.node());
}

}  // namespace

std::string_view to_string(Target target) noexcept {
    switch (target) {
        case Target::pinecone: return "pinecone";
        case Target::weaviate: return "weaviate";
        case Target::qdrant: return "qdrant";
        case Target::milvus: return "milvus";
    }
    return "pinecone";
}

std::optional<Target> parse_target(std::string_view name) noexcept {
    for (auto t : {Target::pinecone, Target::weaviate, Target::qdrant, Target::milvus}) {
        if (to_string(t) == name) return t;
    }
    return std::nullopt;
}

std::string_view to_string(WeaviateOperator op) noexcept {
    switch (op) {
        case WeaviateOperator::And: return "And";
        case WeaviateOperator::Or: return "Or";
        case WeaviateOperator::Equal: return "Equal";
        case WeaviateOperator::NotEqual: return "NotEqual";
        case WeaviateOperator::GreaterThan: return "GreaterThan";
        case WeaviateOperator::GreaterThanEqual: return "GreaterThanEqual";
        case WeaviateOperator::LessThan: return "LessThan";
        case WeaviateOperator::LessThanEqual: return "LessThanEqual";
    }
    return "Equal";
}

std::string_view to_string(WeaviateValueKey key) noexcept {
    switch (key) {
        case WeaviateValueKey::valueText: return "valueText";
        case WeaviateValueKey::valueInt: return "valueInt";
        case WeaviateValueKey::valueNumber: return "valueNumber";
        case WeaviateValueKey::valueBoolean: return "valueBoolean";
    }
    return "valueText";
}

WeaviateValueKey value_key_for(const Scalar& value) noexcept {
    switch (value.index()) {
        case 0: return WeaviateValueKey::valueBoolean;
        case 1: return WeaviateValueKey::valueInt;
        case 2: return WeaviateValueKey::valueNumber;
        default: return WeaviateValueKey::valueText;
    }
}

bool operator==(const WeaviateLogical& a, const WeaviateLogical& b) {
    return a.op == b.op && a.operands == b.operands;
}

bool operator==(const WeaviateWhere& a, const WeaviateWhere& b) { return a.node == b.node; }

std::string render_weaviate(const WeaviateWhere& where) {
    std::string out;
    render(where, out);
    return out;
}

std::string NativeFilter::text() const {
    if (const auto* json = std::get_if<NativeJson>(&body)) return json->dump();
    if (const auto* weaviate = std::get_if<WeaviateFilter>(&body)) return weaviate->text;
    return std::get<std::string>(body);
}

NativeFilter transpile_pinecone(const FilterAst& ast) {
    return NativeFilter{Target::pinecone, pinecone_body(push_negations(ast))};
}

NativeFilter transpile_weaviate(const FilterAst& ast) {
    const FilterAst pushed = push_negations(ast);
    WeaviateFilter filter;
    if (!pushed.is_match_all()) {
        filter.where = weaviate_tree(pushed);
        filter.text = "where: " + render_weaviate(*filter.where);
    }
    return NativeFilter{Target::weaviate, std::move(filter)};
}

NativeFilter transpile_qdrant(const FilterAst& ast) {
    if (const auto* c = ast.as<Compare>()) {
        NativeJson root = NativeJson::object();
        root["must"] = NativeJson::array({qdrant_field_condition(*c)});
        return NativeFilter{Target::qdrant, std::move(root)};
    }
    return NativeFilter{Target::qdrant, qdrant_condition(ast)};
}

NativeFilter transpile_milvus(const FilterAst& ast) { return NativeFilter{Target::milvus, milvus_expr(ast)}; }

NativeFilter transpile(Target target, const FilterAst& ast) {
    switch (target) {
        case Target::pinecone: return transpile_pinecone(ast);
        case Target::weaviate: return transpile_weaviate(ast);
        case Target::qdrant: return transpile_qdrant(ast);
        case Target::milvus: return transpile_milvus(ast);
    }
    throw UnifiedError(ErrorCode::InternalError, "unknown transpile target");
}

}  // namespace vecgate
