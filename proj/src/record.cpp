#include "vecgate/record.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cmath>

#include "vecgate/errors.hpp"

namespace vecgate {

namespace {

// Exponent bits all set means inf or nan; the reduction vectorizes.
bool all_finite(std::span<const double> values) noexcept {
    constexpr std::uint64_t exponent = 0x7ff0000000000000ULL;
    std::uint64_t bad = 0;
    for (double x : values) bad |= static_cast<std::uint64_t>((std::bit_cast<std::uint64_t>(x) & exponent) == exponent);
    return bad == 0;
}

void validate_payload(const Payload& payload) {
    for (const auto& [key, value] : payload) {
        if (key.empty()) throw_validation("payload keys must be non-empty");
        if (const auto* d = std::get_if<double>(&value); d && !std::isfinite(*d)) {
            throw_validation("payload value for '" + key + "' is not finite");
        }
        if (const auto* list = std::get_if<ScalarList>(&value)) {
            if (!is_homogeneous(*list)) throw_validation("payload list '" + key + "' mixes value kinds");
            for (const auto& item : *list) {
                if (kind_of(item) == ScalarKind::boolean) {
                    throw_validation("payload list '" + key + "' may hold only strings or numbers");
                }
                if (const auto* d = std::get_if<double>(&item); d && !std::isfinite(*d)) {
                    throw_validation("payload list '" + key + "' holds a non-finite number");
                }
            }
        }
    }
}

}  // namespace

void validate_record_shape(const Record& record) {
    if (const auto* s = std::get_if<std::string>(&record.id); s && s->empty()) {
        throw_validation("record id must be non-empty");
    }
    if (record.vector.empty()) throw_validation("record " + to_string(record.id) + " has an empty vector");
    if (!all_finite(record.vector)) throw_validation("record " + to_string(record.id) + " has a non-finite component");
    if (record.payload) validate_payload(*record.payload);
}

void validate_record(const Record& record, const CollectionSpec& spec) {
    validate_record_shape(record);
    if (record.vector.size() != spec.dimension) {
        throw_schema("record " + to_string(record.id) + " has dimension " + std::to_string(record.vector.size()) +
                     ", collection '" + spec.name + "' expects " + std::to_string(spec.dimension));
    }
    if (spec.metric == MetricKind::cosine &&
        std::all_of(record.vector.begin(), record.vector.end(), [](double x) { return x == 0.0; })) {
        throw_validation("record " + to_string(record.id) + " has a zero vector in cosine collection '" +
                         spec.name + "'");
    }
}

void validate_collection_spec(const CollectionSpec& spec) {
    if (spec.name.empty()) throw_validation("collection name must be non-empty");
    if (spec.dimension < 1) throw_validation("collection dimension must be at least 1");
}

void validate_query_vector(std::span<const double> vector) {
    if (vector.empty()) throw_validation("query vector must be non-empty");
    if (!all_finite(vector)) throw_validation("query vector has a non-finite component");
}

bool result_order(const QueryResult& a, const QueryResult& b) noexcept {
    if (a.similarity_score != b.similarity_score) return a.similarity_score > b.similarity_score;
    return a.id < b.id;
}

}  // namespace vecgate
