#include "vecgate/memory_store.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <unistd.h>

#include "vecgate/errors.hpp"
#include "vecgate/record_json.hpp"

namespace vecgate {

struct MemoryStore::Collection {
    explicit Collection(CollectionSpec s) : spec(std::move(s)) {}

    const CollectionSpec spec;
    mutable std::shared_mutex mutex;
    std::map<RecordId, Record> rows;
};

namespace {

[[noreturn]] void throw_missing(std::string_view name) {
    throw NativeError("no such collection: " + std::string(name), ErrorCode::NotFoundError);
}

}  // namespace

MemoryStore::MemoryStore() : mutex_(std::make_unique<std::shared_mutex>()) {}
MemoryStore::~MemoryStore() = default;
MemoryStore::MemoryStore(MemoryStore&&) noexcept = default;
MemoryStore& MemoryStore::operator=(MemoryStore&&) noexcept = default;

std::shared_ptr<MemoryStore::Collection> MemoryStore::find(std::string_view name) const {
    std::shared_lock lock(*mutex_);
    const auto it = collections_.find(name);
    if (it == collections_.end()) throw_missing(name);
    return it->second;
}

void MemoryStore::create_collection(const CollectionSpec& spec) {
    validate_collection_spec(spec);
    std::unique_lock lock(*mutex_);
    if (collections_.contains(spec.name)) {
        throw NativeError("collection already exists: " + spec.name, ErrorCode::SchemaError);
    }
    collections_.emplace(spec.name, std::make_shared<Collection>(spec));
}

void MemoryStore::delete_collection(std::string_view name) {
    std::unique_lock lock(*mutex_);
    const auto it = collections_.find(name);
    if (it == collections_.end()) throw_missing(name);
    collections_.erase(it);
}

std::vector<std::string> MemoryStore::list_collections() const {
    std::shared_lock lock(*mutex_);
    std::vector<std::string> names;
    names.reserve(collections_.size());
    for (const auto& [name, _] : collections_) names.push_back(name);
    return names;
}

std::optional<CollectionSpec> MemoryStore::describe(std::string_view name) const {
    std::shared_lock lock(*mutex_);
    const auto it = collections_.find(name);
    if (it == collections_.end()) return std::nullopt;
    return it->second->spec;
}

std::size_t MemoryStore::upsert(std::string_view name, std::span<const Record> records) {
    const auto collection = find(name);
    for (const auto& r : records) validate_record(r, collection->spec);
    std::unique_lock lock(collection->mutex);
    for (const auto& r : records) collection->rows.insert_or_assign(r.id, r);
    return records.size();
}

std::vector<Record> MemoryStore::fetch(std::string_view name, std::span<const RecordId> ids) const {
    const auto collection = find(name);
    std::shared_lock lock(collection->mutex);
    std::vector<Record> out;
    out.reserve(ids.size());
    for (const auto& id : ids) {
        if (const auto it = collection->rows.find(id); it != collection->rows.end()) out.push_back(it->second);
    }
    return out;
}

std::size_t MemoryStore::remove(std::string_view name, std::span<const RecordId> ids) {
    const auto collection = find(name);
    std::unique_lock lock(collection->mutex);
    std::size_t removed = 0;
    for (const auto& id : ids) removed += collection->rows.erase(id);
    return removed;
}

std::vector<QueryResult> MemoryStore::query(std::string_view name, std::span<const double> vector,
                                            std::size_t top_k, const RowPredicate& keep) const {
    const auto collection = find(name);
    const CollectionSpec& spec = collection->spec;
    if (top_k < 1) throw_validation("top_k must be at least 1");
    validate_query_vector(vector);
    if (vector.size() != spec.dimension) {
        throw_schema("query vector has dimension " + std::to_string(vector.size()) + ", collection '" + spec.name +
                     "' expects " + std::to_string(spec.dimension));
    }
    if (spec.metric == MetricKind::cosine &&
        std::all_of(vector.begin(), vector.end(), [](double x) { return x == 0.0; })) {
        throw_validation("cosine query vector must be non-zero");
    }

    struct Scored {
        const Record* row;
        double score;
        double raw;
    };
    std::vector<Scored> candidates;
    {
        std::shared_lock lock(collection->mutex);
        candidates.reserve(collection->rows.size());
        for (const auto& [id, row] : collection->rows) {
            const Payload* payload = row.payload ? &*row.payload : nullptr;
            if (keep && !keep(payload)) continue;
            const double raw = raw_score(spec.metric, vector, row.vector);
            candidates.push_back({&row, normalize_score(spec.metric, raw), raw});
        }
        const auto order = [](const Scored& a, const Scored& b) {
            if (a.score != b.score) return a.score > b.score;
            return a.row->id < b.row->id;
        };
        const std::size_t k = std::min(top_k, candidates.size());
        std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k), candidates.end(),
                          order);
        candidates.resize(k);

        std::vector<QueryResult> results;
        results.reserve(k);
        for (const auto& c : candidates) results.push_back({c.row->id, c.score, c.raw, c.row->payload});
        return results;
    }
}

std::vector<MemoryStore::CollectionData> MemoryStore::export_data() const {
    std::vector<std::shared_ptr<Collection>> snapshot;
    {
        std::shared_lock lock(*mutex_);
        for (const auto& [_, c] : collections_) snapshot.push_back(c);
    }
    std::vector<CollectionData> out;
    out.reserve(snapshot.size());
    for (const auto& c : snapshot) {
        std::shared_lock lock(c->mutex);
        CollectionData data{c->spec, {}};
        data.records.reserve(c->rows.size());
        for (const auto& [_, row] : c->rows) data.records.push_back(row);
        out.push_back(std::move(data));
    }
    return out;
}

MemoryStore MemoryStore::import_data(std::vector<CollectionData> data) {
    MemoryStore store;
    for (auto& d : data) {
        store.create_collection(d.spec);
        store.upsert(d.spec.name, d.records);
    }
    return store;
}

// --- snapshots -------------------------------------------------------------

std::string snapshot_dump(const MemoryStore& store) {
    Json doc = Json::object();
    doc["collections"] = Json::array();
    for (const auto& c : store.export_data()) {
        Json entry = Json::object();
        entry["spec"]["name"] = c.spec.name;
        entry["spec"]["dimension"] = c.spec.dimension;
        entry["spec"]["metric"] = std::string(to_string(c.spec.metric));
        entry["records"] = Json::array();
        for (const auto& r : c.records) entry["records"].push_back(record_to_json(r));
        doc["collections"].push_back(std::move(entry));
    }
    return doc.dump() + "\n";
}

MemoryStore snapshot_parse(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw_validation(std::string("corrupt snapshot: ") + e.what());
    }
    try {
        std::vector<MemoryStore::CollectionData> data;
        for (const auto& entry : doc.at("collections")) {
            const auto& spec = entry.at("spec");
            const auto metric = parse_metric(spec.at("metric").get<std::string>());
            if (!metric) throw_validation("corrupt snapshot: unknown metric");
            MemoryStore::CollectionData c{{spec.at("name").get<std::string>(), spec.at("dimension").get<std::size_t>(),
                                           *metric},
                                          {}};
            for (const auto& r : entry.at("records")) c.records.push_back(record_from_json(r));
            data.push_back(std::move(c));
        }
        return MemoryStore::import_data(std::move(data));
    } catch (const Json::exception& e) {
        throw_validation(std::string("corrupt snapshot: ") + e.what());
    } catch (const NativeError& e) {
        throw_validation(std::string("corrupt snapshot: ") + e.what());
    } catch (const UnifiedError& e) {
        throw_validation("corrupt snapshot: " + e.message());
    }
}

void snapshot_save(const MemoryStore& store, const std::string& path) {
    const std::string text = snapshot_dump(store);
    const std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << text;
        out.flush();
        if (!out) {
            std::remove(tmp.c_str());
            throw UnifiedError(ErrorCode::ConnectionError, "cannot write snapshot '" + tmp + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::remove(tmp.c_str());
        throw UnifiedError(ErrorCode::ConnectionError, "cannot replace snapshot '" + path + "': " + ec.message());
    }
}

MemoryStore snapshot_load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UnifiedError(ErrorCode::ConnectionError, "cannot read snapshot '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return snapshot_parse(buffer.str());
}

}  // namespace vecgate
