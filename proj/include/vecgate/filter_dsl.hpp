#pragma once

#include <string_view>

#include "vecgate/filter_ast.hpp"
#include "vecgate/record_json.hpp"

namespace vecgate {

/// Filter documents are JSON with source key order preserved.
using FilterSource = Json;

/// Parses a MongoDB-style filter document into a canonical AST.
///
/// Desugaring: a bare scalar under a field means $eq; several operators
/// under one field, or several keys in one document, form an implicit
/// $and; `{}` is MatchAll; single-child $and/$or collapse to the child.
///
/// Malformed input raises ValidationError whose message starts with the
/// path of the offending node, e.g. "$and[1].year: ...".
FilterAst parse_filter(const FilterSource& source);

/// Convenience wrapper that parses JSON text first.
FilterAst parse_filter_text(std::string_view text);

/// Emits the explicit canonical form: every comparison spelled as
/// {field: {"$op": literal}}, every conjunction as "$and".
FilterSource serialize_filter(const FilterAst& ast);

/// Rewrites the tree so that it contains no Not node (De Morgan plus
/// operator complements). Throws ValidationError on Not(MatchAll).
///
/// The rewrite is exact only when every referenced field is present: the
/// complement of a comparison still fails on a missing field.
FilterAst push_negations(const FilterAst& ast);

/// Reference semantics. A comparison on a missing field is false for every
/// operator, including ne and nin; list-valued payload entries never match.
bool evaluate_filter(const FilterAst& ast, const Payload* payload);
bool evaluate_filter(const FilterAst& ast, const std::optional<Payload>& payload);

}  // namespace vecgate
