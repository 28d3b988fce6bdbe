#include "vecgate/value.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace vecgate {

ScalarKind kind_of(const Scalar& value) noexcept {
    switch (value.index()) {
        case 0: return ScalarKind::boolean;
        case 3: return ScalarKind::string;
        default: return ScalarKind::number;
    }
}

bool is_numeric(const Scalar& value) noexcept { return kind_of(value) == ScalarKind::number; }

double as_double(const Scalar& value) {
    if (const auto* i = std::get_if<std::int64_t>(&value)) return static_cast<double>(*i);
    if (const auto* d = std::get_if<double>(&value)) return *d;
    throw std::invalid_argument("scalar is not numeric");
}

std::partial_ordering compare_numeric(const Scalar& a, const Scalar& b) noexcept {
    const auto* ai = std::get_if<std::int64_t>(&a);
    const auto* bi = std::get_if<std::int64_t>(&b);
    if (ai && bi) return *ai <=> *bi;
    if (!is_numeric(a) || !is_numeric(b)) return std::partial_ordering::unordered;
    // long double carries a 64-bit mantissa on the supported targets, so the
    // int64 side converts exactly.
    auto widen = [](const Scalar& s) -> long double {
        if (const auto* i = std::get_if<std::int64_t>(&s)) return static_cast<long double>(*i);
        return static_cast<long double>(std::get<double>(s));
    };
    return widen(a) <=> widen(b);
}

bool scalar_equal(const Scalar& a, const Scalar& b) noexcept {
    if (is_numeric(a) && is_numeric(b)) return compare_numeric(a, b) == std::partial_ordering::equivalent;
    return a == b;
}

bool is_homogeneous(const ScalarList& list) noexcept {
    for (const auto& v : list) {
        if (kind_of(v) != kind_of(list.front())) return false;
    }
    return true;
}

std::optional<Scalar> scalar_of(const PayloadValue& value) {
    return std::visit(
        [](const auto& v) -> std::optional<Scalar> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ScalarList>) {
                return std::nullopt;
            } else {
                return Scalar{v};
            }
        },
        value);
}

std::string to_string(const RecordId& id) {
    if (const auto* i = std::get_if<std::int64_t>(&id)) return std::to_string(*i);
    return std::get<std::string>(id);
}

std::string to_string(const Scalar& value) {
    switch (value.index()) {
        case 0: return std::get<bool>(value) ? "true" : "false";
        case 1: return std::to_string(std::get<std::int64_t>(value));
        case 2: {
            char buf[64];
            auto [end, ec] = std::to_chars(buf, buf + sizeof buf, std::get<double>(value));
            std::string out(buf, end);
            if (std::isfinite(std::get<double>(value)) &&
                out.find_first_of(".e") == std::string::npos) {
                out += ".0";
            }
            return out;
        }
        default: return "\"" + std::get<std::string>(value) + "\"";
    }
}

}  // namespace vecgate
