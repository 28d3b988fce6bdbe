#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace vecgate {

/// A single metadata value. Integers and floats are kept apart so backends
/// that distinguish them (valueInt vs valueNumber) can be targeted exactly.
using Scalar = std::variant<bool, std::int64_t, double, std::string>;
using ScalarList = std::vector<Scalar>;

/// Payload values are scalars or homogeneous lists of strings/numbers.
using PayloadValue = std::variant<bool, std::int64_t, double, std::string, ScalarList>;
using Payload = std::map<std::string, PayloadValue, std::less<>>;

/// Integers order before strings; within a kind the natural order applies.
using RecordId = std::variant<std::int64_t, std::string>;

enum class ScalarKind : std::uint8_t { boolean, number, string };

ScalarKind kind_of(const Scalar& value) noexcept;
bool is_numeric(const Scalar& value) noexcept;
double as_double(const Scalar& value);

/// Numeric comparison between integer/float scalars, exact for the full
/// int64 range. Unordered if either side is not numeric.
std::partial_ordering compare_numeric(const Scalar& a, const Scalar& b) noexcept;

/// Scalar equality: integer and float compare numerically, otherwise the
/// kinds must match.
bool scalar_equal(const Scalar& a, const Scalar& b) noexcept;

/// True if every element has the same ScalarKind (empty lists count).
bool is_homogeneous(const ScalarList& list) noexcept;

/// Returns the scalar held by a payload value, or nullopt for lists.
std::optional<Scalar> scalar_of(const PayloadValue& value);

std::string to_string(const RecordId& id);
std::string to_string(const Scalar& value);

}  // namespace vecgate
