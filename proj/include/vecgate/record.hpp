#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vecgate/metric.hpp"
#include "vecgate/value.hpp"

namespace vecgate {

struct Record {
    RecordId id;
    std::vector<double> vector;
    std::optional<Payload> payload;

    friend bool operator==(const Record&, const Record&) = default;
};

struct CollectionSpec {
    std::string name;
    std::size_t dimension = 0;
    MetricKind metric = MetricKind::cosine;

    friend bool operator==(const CollectionSpec&, const CollectionSpec&) = default;
};

struct QueryResult {
    RecordId id;
    double similarity_score = 0.0;
    double raw_score = 0.0;
    std::optional<Payload> payload;

    friend bool operator==(const QueryResult&, const QueryResult&) = default;
};

/// Checks everything about a record that does not depend on a collection:
/// id, finite non-empty vector, payload keys and value kinds.
void validate_record_shape(const Record& record);

/// Shape check plus the collection's dimension. Throws ValidationError or
/// SchemaError (dimension mismatch).
void validate_record(const Record& record, const CollectionSpec& spec);

void validate_collection_spec(const CollectionSpec& spec);

/// Finite, non-empty query vector. Dimension is checked by the backend.
void validate_query_vector(std::span<const double> vector);

/// Score descending, then id ascending.
bool result_order(const QueryResult& a, const QueryResult& b) noexcept;

}  // namespace vecgate
