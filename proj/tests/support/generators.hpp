#pragma once

#include <random>
#include <vector>

#include "vecgate/filter_ast.hpp"
#include "vecgate/metric.hpp"
#include "vecgate/record.hpp"

namespace vecgate::fixtures {

using Rng = std::mt19937_64;

/// Field pool shared by the AST and payload generators so comparisons hit.
inline const std::vector<std::string>& field_pool() {
    static const std::vector<std::string> fields{"genre", "year", "rating", "flag", "tag"};
    return fields;
}

Scalar random_scalar(Rng& rng);
Scalar random_number(Rng& rng);

/// Random valid AST of bounded depth. Never produces Not(MatchAll) and only
/// produces MatchAll at the root (with low probability) when allow_match_all.
FilterAst random_ast(Rng& rng, int max_depth = 4, bool allow_match_all = true);

/// Each pool field is present with probability `presence`; values come from a
/// small domain overlapping the literal domain. Occasionally list-valued.
Payload random_payload(Rng& rng, double presence = 0.7);

/// Payload with every pool field present and scalar.
Payload full_payload(Rng& rng);

std::vector<double> random_vector(Rng& rng, std::size_t dimension);

/// Records with integer and string ids mixed, payloads from random_payload.
std::vector<Record> random_records(Rng& rng, std::size_t count, std::size_t dimension, MetricKind metric);

/// Exhaustive scan with its own scoring arithmetic: filter, score, sort by
/// (score desc, id asc), truncate.
std::vector<QueryResult> exhaustive_knn(const std::vector<Record>& rows, MetricKind metric,
                                        const std::vector<double>& query, std::size_t top_k, const FilterAst& filter);

/// True if some comparison beneath a Not node is inapplicable to the payload:
/// the field is absent or list-valued, or an ordering op meets a non-numeric
/// value. Only there can push_negations differ from logical negation.
bool negation_inexact(const FilterAst& ast, const Payload& payload);

}  // namespace vecgate::fixtures
