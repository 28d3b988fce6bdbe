#include "vecgate/native_interpreter.hpp"

#include <cmath>
#include <string>

#include "vecgate/errors.hpp"

namespace vecgate {

namespace {

// Payload lookup shared by all targets: a present, scalar value or nothing.
const PayloadValue* lookup(const Payload* payload, const std::string& key) {
    if (!payload) return nullptr;
    const auto it = payload->find(key);
    if (it == payload->end() || std::holds_alternative<ScalarList>(it->second)) return nullptr;
    return &it->second;
}

// Numeric view of a payload value; integers widen exactly.
std::optional<long double> numeric(const PayloadValue& v) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<long double>(*i);
    if (const auto* d = std::get_if<double>(&v)) return static_cast<long double>(*d);
    return std::nullopt;
}

std::optional<long double> numeric(const NativeJson& j) {
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) return static_cast<long double>(j.get<std::uint64_t>());
        return static_cast<long double>(j.get<std::int64_t>());
    }
    if (j.is_number_float()) return static_cast<long double>(j.get<double>());
    return std::nullopt;
}

bool json_equals_payload(const NativeJson& literal, const PayloadValue& value) {
    if (auto a = numeric(literal)) {
        auto b = numeric(value);
        return b && *a == *b;
    }
    if (literal.is_string()) {
        const auto* s = std::get_if<std::string>(&value);
        return s && *s == literal.get_ref<const std::string&>();
    }
    if (literal.is_boolean()) {
        const auto* b = std::get_if<bool>(&value);
        return b && *b == literal.get<bool>();
    }
    throw_validation("literal must be a string, number or boolean");
}

// -1/0/1 or nullopt when either side is not numeric.
std::optional<int> json_order(const PayloadValue& value, const NativeJson& literal) {
    auto bound = numeric(literal);
    if (!bound) throw_validation("range bound must be numeric");
    auto v = numeric(value);
    if (!v) return std::nullopt;
    return (*v > *bound) - (*v < *bound);
}

const NativeJson& require_array(const NativeJson& node, const char* what) {
    if (!node.is_array()) throw_validation(std::string(what) + " must be a list");
    return node;
}

// --- pinecone --------------------------------------------------------------

bool pinecone_operator(const std::string& op, const NativeJson& operand, const PayloadValue* value) {
    if (op == "$in" || op == "$nin") {
        const auto& list = require_array(operand, op.c_str());
        if (list.empty()) throw_validation(op + " requires a non-empty list");
        if (!value) return false;
        bool found = false;
        for (const auto& item : list) found = found || json_equals_payload(item, *value);
        return op == "$in" ? found : !found;
    }
    if (operand.is_array() || operand.is_object() || operand.is_null()) throw_validation(op + " requires a scalar");
    if (op == "$eq") return value && json_equals_payload(operand, *value);
    if (op == "$ne") return value && !json_equals_payload(operand, *value);
    std::optional<int> order;
    if (op == "$gt" || op == "$gte" || op == "$lt" || op == "$lte") {
        if (!value) {
            if (!numeric(operand)) throw_validation(op + " requires a number");
            return false;
        }
        order = json_order(*value, operand);
        if (!order) return false;
    } else {
        throw_validation("unsupported pinecone operator '" + op + "'");
    }
    if (op == "$gt") return *order > 0;
    if (op == "$gte") return *order >= 0;
    if (op == "$lt") return *order < 0;
    return *order <= 0;
}

bool pinecone_clause(const NativeJson& clause, const Payload* payload) {
    if (!clause.is_object()) throw_validation("pinecone filter clause must be an object");
    bool result = true;
    for (const auto& [key, value] : clause.items()) {
        bool part;
        if (key == "$and" || key == "$or") {
            const auto& list = require_array(value, key.c_str());
            if (list.empty()) throw_validation(key + " requires at least one clause");
            const bool conj = key == "$and";
            part = conj;
            for (const auto& c : list) {
                const bool r = pinecone_clause(c, payload);
                part = conj ? (part && r) : (part || r);
            }
        } else if (!key.empty() && key.front() == '$') {
            throw_validation("unsupported pinecone operator '" + key + "'");
        } else {
            const PayloadValue* field = lookup(payload, key);
            if (value.is_object()) {
                if (value.empty()) throw_validation("empty operator document for '" + key + "'");
                part = true;
                for (const auto& [op, operand] : value.items()) {
                    part = pinecone_operator(op, operand, field) && part;
                }
            } else {
                part = pinecone_operator("$eq", value, field);
            }
        }
        result = result && part;
    }
    return result;
}

// --- qdrant ----------------------------------------------------------------

bool qdrant_filter(const NativeJson& filter, const Payload* payload);

bool qdrant_field_condition(const NativeJson& cond, const Payload* payload) {
    if (!cond.at("key").is_string()) throw_validation("qdrant condition key must be a string");
    const bool has_match = cond.contains("match");
    const bool has_range = cond.contains("range");
    if (has_match == has_range) throw_validation("qdrant condition needs exactly one of match/range");
    if (cond.size() != 2) throw_validation("qdrant condition has unexpected keys");
    const PayloadValue* value = lookup(payload, cond.at("key").get_ref<const std::string&>());

    if (has_match) {
        const auto& match = cond.at("match");
        if (!match.is_object() || match.size() != 1) throw_validation("qdrant match needs exactly one clause");
        const auto entry = match.begin();
        const std::string& kind = entry.key();
        const NativeJson& operand = entry.value();
        if (kind == "value") {
            if (operand.is_structured() || operand.is_null()) throw_validation("match.value must be a scalar");
            return value && json_equals_payload(operand, *value);
        }
        if (kind == "any" || kind == "except") {
            const auto& list = require_array(operand, "match list");
            if (!value) return false;
            bool found = false;
            for (const auto& item : list) found = found || json_equals_payload(item, *value);
            return kind == "any" ? found : !found;
        }
        throw_validation("unsupported qdrant match '" + kind + "'");
    }

    const auto& range = cond.at("range");
    if (!range.is_object() || range.empty()) throw_validation("qdrant range must be a non-empty object");
    bool ok = value != nullptr;
    for (const auto& [bound, limit] : range.items()) {
        if (bound != "gt" && bound != "gte" && bound != "lt" && bound != "lte") {
            throw_validation("unsupported range bound '" + bound + "'");
        }
        if (!numeric(limit)) throw_validation("range bound must be numeric");
        const std::optional<int> order = value ? json_order(*value, limit) : std::nullopt;
        if (!order) {
            ok = false;
            continue;
        }
        if (bound == "gt") ok = ok && *order > 0;
        else if (bound == "gte") ok = ok && *order >= 0;
        else if (bound == "lt") ok = ok && *order < 0;
        else ok = ok && *order <= 0;
    }
    return ok;
}

bool qdrant_condition(const NativeJson& cond, const Payload* payload) {
    if (!cond.is_object()) throw_validation("qdrant condition must be an object");
    if (cond.contains("key")) return qdrant_field_condition(cond, payload);
    return qdrant_filter(cond, payload);
}

bool qdrant_filter(const NativeJson& filter, const Payload* payload) {
    if (!filter.is_object()) throw_validation("qdrant filter must be an object");
    bool ok = true;
    for (const auto& [clause, conditions] : filter.items()) {
        const auto& list = require_array(conditions, clause.c_str());
        if (clause == "must") {
            for (const auto& c : list) ok = qdrant_condition(c, payload) && ok;
        } else if (clause == "should") {
            bool any = list.empty();
            for (const auto& c : list) any = qdrant_condition(c, payload) || any;
            ok = ok && any;
        } else if (clause == "must_not") {
            for (const auto& c : list) ok = !qdrant_condition(c, payload) && ok;
        } else {
            throw_validation("unsupported qdrant filter clause '" + clause + "'");
        }
    }
    return ok;
}

// --- weaviate --------------------------------------------------------------

bool weaviate_leaf(const WeaviateLeaf& leaf, const Payload* payload) {
    if (leaf.path.size() != 1 || leaf.path.front().empty()) throw_validation("weaviate path must name one property");
    if (leaf.value_key != value_key_for(leaf.value)) throw_validation("weaviate value key does not match value");
    const PayloadValue* value = lookup(payload, leaf.path.front());
    if (!value) return false;

    const PayloadValue literal = std::visit([](const auto& v) { return PayloadValue{v}; }, leaf.value);
    auto lhs = numeric(*value);
    auto rhs = numeric(literal);
    switch (leaf.op) {
        case WeaviateOperator::Equal:
        case WeaviateOperator::NotEqual: {
            bool equal;
            if (rhs) equal = lhs && *lhs == *rhs;
            else equal = *value == literal;
            return (leaf.op == WeaviateOperator::Equal) == equal;
        }
        case WeaviateOperator::GreaterThan: return lhs && rhs && *lhs > *rhs;
        case WeaviateOperator::GreaterThanEqual: return lhs && rhs && *lhs >= *rhs;
        case WeaviateOperator::LessThan: return lhs && rhs && *lhs < *rhs;
        case WeaviateOperator::LessThanEqual: return lhs && rhs && *lhs <= *rhs;
        default: throw_validation("logical operator on a weaviate leaf");
    }
}

bool weaviate_node(const WeaviateWhere& where, const Payload* payload) {
    if (const auto* leaf = std::get_if<WeaviateLeaf>(&where.node)) return weaviate_leaf(*leaf, payload);
    const auto& logical = std::get<WeaviateLogical>(where.node);
    if (logical.op == WeaviateOperator::And) {
        bool ok = true;
        for (const auto& o : logical.operands) ok = weaviate_node(o, payload) && ok;
        return ok;
    }
    if (logical.op == WeaviateOperator::Or) {
        if (logical.operands.empty()) throw_validation("weaviate Or needs operands");
        bool any = false;
        for (const auto& o : logical.operands) any = weaviate_node(o, payload) || any;
        return any;
    }
    throw_validation("comparison operator on a weaviate logical node");
}

}  // namespace

bool interpret_pinecone(const NativeJson& body, const Payload* payload) { return pinecone_clause(body, payload); }

bool interpret_qdrant(const NativeJson& body, const Payload* payload) { return qdrant_filter(body, payload); }

bool interpret_weaviate(const WeaviateWhere* where, const Payload* payload) {
    return where == nullptr || weaviate_node(*where, payload);
}

bool interpret_native(const NativeFilter& filter, const Payload* payload) {
    switch (filter.target) {
        case Target::pinecone: return interpret_pinecone(std::get<NativeJson>(filter.body), payload);
        case Target::qdrant: return interpret_qdrant(std::get<NativeJson>(filter.body), payload);
        case Target::weaviate: {
            const auto& w = std::get<WeaviateFilter>(filter.body);
            return interpret_weaviate(w.where ? &*w.where : nullptr, payload);
        }
        case Target::milvus: break;
    }
    throw_validation("milvus expressions are not interpreted");
}

}  // namespace vecgate
