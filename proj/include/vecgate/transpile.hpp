#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "vecgate/filter_ast.hpp"

namespace vecgate {

enum class Target : std::uint8_t { pinecone, weaviate, qdrant, milvus };

std::string_view to_string(Target target) noexcept;
std::optional<Target> parse_target(std::string_view name) noexcept;

/// Native JSON bodies use sorted keys so identical trees dump identically.
using NativeJson = nlohmann::json;

// ---------------------------------------------------------------------------
// Weaviate where-tree

enum class WeaviateOperator : std::uint8_t {
    And,
    Or,
    Equal,
    NotEqual,
    GreaterThan,
    GreaterThanEqual,
    LessThan,
    LessThanEqual,
};

enum class WeaviateValueKey : std::uint8_t { valueText, valueInt, valueNumber, valueBoolean };

std::string_view to_string(WeaviateOperator op) noexcept;
std::string_view to_string(WeaviateValueKey key) noexcept;
WeaviateValueKey value_key_for(const Scalar& value) noexcept;

struct WeaviateWhere;

struct WeaviateLeaf {
    std::vector<std::string> path;
    WeaviateOperator op = WeaviateOperator::Equal;
    WeaviateValueKey value_key = WeaviateValueKey::valueText;
    Scalar value;

    friend bool operator==(const WeaviateLeaf&, const WeaviateLeaf&) = default;
};

struct WeaviateLogical {
    WeaviateOperator op = WeaviateOperator::And;
    std::vector<WeaviateWhere> operands;
};

struct WeaviateWhere {
    std::variant<WeaviateLogical, WeaviateLeaf> node;
};

bool operator==(const WeaviateLogical& a, const WeaviateLogical& b);
bool operator==(const WeaviateWhere& a, const WeaviateWhere& b);

struct WeaviateFilter {
    /// Absent for MatchAll.
    std::optional<WeaviateWhere> where;
    /// GraphQL argument text ("where: {...}"), empty for MatchAll.
    std::string text;
};

/// Renders a where-tree as a GraphQL argument value (without "where: ").
std::string render_weaviate(const WeaviateWhere& where);

// ---------------------------------------------------------------------------

struct NativeFilter {
    Target target = Target::pinecone;
    /// pinecone/qdrant: JSON document; weaviate: where-tree plus text;
    /// milvus: boolean expression.
    std::variant<NativeJson, WeaviateFilter, std::string> body;

    /// Compact textual form: JSON dump, GraphQL text, or the expression.
    std::string text() const;
};

/// MongoDB-style JSON after negation pushdown. MatchAll gives {}.
NativeFilter transpile_pinecone(const FilterAst& ast);

/// Where-tree after negation pushdown, with $in expanded to an Or of
/// Equal and $nin to an And of NotEqual.
NativeFilter transpile_weaviate(const FilterAst& ast);

/// must / should / must_not JSON. Negated comparisons (ne, nin) use
/// match.except so a missing key still fails the condition.
NativeFilter transpile_qdrant(const FilterAst& ast);

/// Fully parenthesized boolean expression; MatchAll gives "".
NativeFilter transpile_milvus(const FilterAst& ast);

NativeFilter transpile(Target target, const FilterAst& ast);

}  // namespace vecgate
