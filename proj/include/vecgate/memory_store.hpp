#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vecgate/record.hpp"

namespace vecgate {

/// Exact in-memory vector store: brute-force scoring over every row that
/// passes the filter predicate.
///
/// Thread safety: the collection map has its own lock; each collection
/// admits concurrent readers and one writer.
class MemoryStore {
public:
    using RowPredicate = std::function<bool(const Payload*)>;

    struct CollectionData {
        CollectionSpec spec;
        /// Sorted by id.
        std::vector<Record> records;

        friend bool operator==(const CollectionData&, const CollectionData&) = default;
    };

    MemoryStore();
    ~MemoryStore();
    MemoryStore(MemoryStore&&) noexcept;
    MemoryStore& operator=(MemoryStore&&) noexcept;

    void create_collection(const CollectionSpec& spec);
    void delete_collection(std::string_view name);
    std::vector<std::string> list_collections() const;
    std::optional<CollectionSpec> describe(std::string_view name) const;

    std::size_t upsert(std::string_view name, std::span<const Record> records);
    std::vector<Record> fetch(std::string_view name, std::span<const RecordId> ids) const;
    std::size_t remove(std::string_view name, std::span<const RecordId> ids);

    /// Pre-filter, score, normalize, sort by (score desc, id asc), truncate.
    std::vector<QueryResult> query(std::string_view name, std::span<const double> vector, std::size_t top_k,
                                   const RowPredicate& keep) const;

    /// Collections sorted by name, records sorted by id.
    std::vector<CollectionData> export_data() const;
    static MemoryStore import_data(std::vector<CollectionData> data);

private:
    struct Collection;
    std::shared_ptr<Collection> find(std::string_view name) const;

    std::unique_ptr<std::shared_mutex> mutex_;
    std::map<std::string, std::shared_ptr<Collection>, std::less<>> collections_;
};

/// Byte-stable JSON snapshot. Written to a temporary file and renamed into
/// place. I/O failures raise ConnectionError; corrupt content raises
/// ValidationError.
void snapshot_save(const MemoryStore& store, const std::string& path);
MemoryStore snapshot_load(const std::string& path);
std::string snapshot_dump(const MemoryStore& store);
MemoryStore snapshot_parse(std::string_view text);

}  // namespace vecgate
