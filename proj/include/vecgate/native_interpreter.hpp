#pragma once

#include "vecgate/transpile.hpp"
#include "vecgate/value.hpp"

namespace vecgate {

// Evaluators for native filter bodies, written against each target's filter
// format rather than the AST. They serve as the independent check that
// transpilation preserves meaning. A condition on a missing key fails, and
// list-valued payload entries never satisfy a condition. Malformed bodies
// raise ValidationError.

bool interpret_pinecone(const NativeJson& body, const Payload* payload);
bool interpret_qdrant(const NativeJson& body, const Payload* payload);
/// Null `where` means no filter.
bool interpret_weaviate(const WeaviateWhere* where, const Payload* payload);

/// Dispatches on the filter's target. Milvus expressions are not
/// interpreted and raise ValidationError.
bool interpret_native(const NativeFilter& filter, const Payload* payload);

}  // namespace vecgate
