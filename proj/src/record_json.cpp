#include "vecgate/record_json.hpp"

#include <cmath>
#include <limits>

#include "vecgate/errors.hpp"

namespace vecgate {

Scalar scalar_from_json(const Json& value, std::string_view where) {
    switch (value.type()) {
        case Json::value_t::boolean: return value.get<bool>();
        case Json::value_t::number_integer: return value.get<std::int64_t>();
        case Json::value_t::number_unsigned: {
            const auto u = value.get<std::uint64_t>();
            if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
                throw_validation(std::string(where) + ": integer out of range");
            }
            return static_cast<std::int64_t>(u);
        }
        case Json::value_t::number_float: return value.get<double>();
        case Json::value_t::string: return value.get<std::string>();
        default: throw_validation(std::string(where) + ": expected a string, number or boolean");
    }
}

Json scalar_to_json(const Scalar& value) {
    return std::visit([](const auto& v) { return Json(v); }, value);
}

RecordId record_id_from_json(const Json& value) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_number_integer()) {
        const Scalar s = scalar_from_json(value, "id");
        return std::get<std::int64_t>(s);
    }
    throw_validation("id must be a string or an integer");
}

Json record_id_to_json(const RecordId& id) {
    return std::visit([](const auto& v) { return Json(v); }, id);
}

Payload payload_from_json(const Json& value) {
    if (!value.is_object()) throw_validation("payload must be an object");
    Payload payload;
    for (const auto& [key, item] : value.items()) {
        const std::string where = "payload." + key;
        if (item.is_array()) {
            ScalarList list;
            list.reserve(item.size());
            for (const auto& element : item) list.push_back(scalar_from_json(element, where));
            payload.emplace(key, std::move(list));
        } else if (item.is_object()) {
            throw_validation(where + ": nested objects are not allowed in payloads");
        } else {
            std::visit([&](auto&& s) { payload.emplace(key, PayloadValue{std::move(s)}); },
                       scalar_from_json(item, where));
        }
    }
    return payload;
}

Json payload_to_json(const Payload& payload) {
    Json out = Json::object();
    for (const auto& [key, value] : payload) {
        out[key] = std::visit(
            [](const auto& v) -> Json {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, ScalarList>) {
                    Json list = Json::array();
                    for (const auto& s : v) list.push_back(scalar_to_json(s));
                    return list;
                } else {
                    return Json(v);
                }
            },
            value);
    }
    return out;
}

Record record_from_json(const Json& value) {
    if (!value.is_object()) throw_validation("record must be an object");
    for (const auto& [key, _] : value.items()) {
        if (key != "id" && key != "vector" && key != "payload") throw_validation("unknown record key '" + key + "'");
    }
    if (!value.contains("id")) throw_validation("record is missing 'id'");
    if (!value.contains("vector")) throw_validation("record is missing 'vector'");
    Record record;
    record.id = record_id_from_json(value.at("id"));
    const Json& vector = value.at("vector");
    if (!vector.is_array()) throw_validation("vector must be an array");
    record.vector.reserve(vector.size());
    for (const auto& x : vector) {
        if (!x.is_number()) throw_validation("vector components must be numbers");
        record.vector.push_back(x.get<double>());
    }
    if (auto it = value.find("payload"); it != value.end() && !it->is_null()) {
        record.payload = payload_from_json(*it);
    }
    validate_record_shape(record);
    return record;
}

Json record_to_json(const Record& record) {
    Json out = Json::object();
    out["id"] = record_id_to_json(record.id);
    out["vector"] = record.vector;
    if (record.payload) out["payload"] = payload_to_json(*record.payload);
    return out;
}

std::string record_to_line(const Record& record) { return record_to_json(record).dump(); }

Record record_from_line(std::string_view line) {
    Json parsed;
    try {
        parsed = Json::parse(line);
    } catch (const Json::parse_error& e) {
        throw_validation(std::string("malformed JSON: ") + e.what());
    }
    return record_from_json(parsed);
}

}  // namespace vecgate
