#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "vecgate/record.hpp"

namespace vecgate {

/// Insertion-ordered JSON, used wherever key order is part of the format.
using Json = nlohmann::ordered_json;

/// Decoders throw ValidationError naming the offending key.
Scalar scalar_from_json(const Json& value, std::string_view where);
Json scalar_to_json(const Scalar& value);

RecordId record_id_from_json(const Json& value);
Json record_id_to_json(const RecordId& id);

Payload payload_from_json(const Json& value);
Json payload_to_json(const Payload& payload);

/// {"id":...,"vector":[...],"payload":{...}}; "payload" is omitted when absent.
Record record_from_json(const Json& value);
Json record_to_json(const Record& record);

/// One JSONL line, no trailing newline.
std::string record_to_line(const Record& record);
Record record_from_line(std::string_view line);

}  // namespace vecgate
