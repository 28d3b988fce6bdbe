#pragma once

#include <chrono>
#include <deque>
#include <mutex>
#include <optional>
#include <string>

#include "vecgate/adapter.hpp"
#include "vecgate/errors.hpp"
#include "vecgate/memory_store.hpp"
#include "vecgate/transpile.hpp"

namespace vecgate {

/// Reference backend over a MemoryStore. Filters are evaluated directly on
/// the AST. With a persist path the store is loaded at construction (when
/// the file exists) and written back after every mutation.
class MemoryAdapter final : public Adapter {
public:
    explicit MemoryAdapter(std::string provider, std::optional<std::string> persist_path = std::nullopt);

    const std::string& provider() const noexcept override { return provider_; }

    void create_collection(const CollectionSpec& spec, const ProviderParams& params) override;
    void delete_collection(std::string_view name) override;
    std::vector<std::string> list_collections() override;
    std::size_t upsert(std::string_view collection, std::span<const Record> records) override;
    std::vector<Record> fetch(std::string_view collection, std::span<const RecordId> ids) override;
    std::size_t delete_records(std::string_view collection, std::span<const RecordId> ids) override;
    std::vector<QueryResult> query(std::string_view collection, std::span<const double> vector, std::size_t top_k,
                                   const FilterAst& filter, const ProviderParams& params) override;

    const MemoryStore& store() const noexcept { return store_; }

private:
    void persist();

    std::string provider_;
    std::optional<std::string> persist_path_;
    std::mutex persist_mutex_;
    MemoryStore store_;
};

struct SimulatedLatency {
    double per_call_ms = 0.0;
    double per_record_ms = 0.0;

    std::chrono::nanoseconds cost(std::size_t batch) const;
};

/// Backend with a controllable cost model: every operation waits
/// per_call_ms + per_record_ms * batch before touching its in-memory store.
/// Queries go through a native filter dialect (qdrant by default), so the
/// adapter transpiles like a real one would. The wait holds no lock.
class SimulatedAdapter final : public Adapter {
public:
    SimulatedAdapter(std::string provider, SimulatedLatency latency, Target dialect = Target::qdrant);

    const std::string& provider() const noexcept override { return provider_; }

    void create_collection(const CollectionSpec& spec, const ProviderParams& params) override;
    void delete_collection(std::string_view name) override;
    std::vector<std::string> list_collections() override;
    std::size_t upsert(std::string_view collection, std::span<const Record> records) override;
    std::vector<Record> fetch(std::string_view collection, std::span<const RecordId> ids) override;
    std::size_t delete_records(std::string_view collection, std::span<const RecordId> ids) override;
    std::vector<QueryResult> query(std::string_view collection, std::span<const double> vector, std::size_t top_k,
                                   const FilterAst& filter, const ProviderParams& params) override;

    /// The backend's own query entry point, taking a filter already in the
    /// dialect. This is what a caller using the vendor SDK directly would hit.
    std::vector<QueryResult> query_native(std::string_view collection, std::span<const double> vector,
                                          std::size_t top_k, const NativeFilter& filter);

    /// Queues a failure; the next operation throws it instead of running.
    void inject_fault(NativeError fault);

    const SimulatedLatency& latency() const noexcept { return latency_; }
    Target dialect() const noexcept { return dialect_; }

private:
    void pay(std::size_t batch);

    std::string provider_;
    SimulatedLatency latency_;
    Target dialect_;
    std::mutex fault_mutex_;
    std::deque<NativeError> faults_;
    MemoryStore store_;
};

/// Busy-waits (sleeping for most of the interval) until `duration` elapsed.
void wait_for(std::chrono::nanoseconds duration);

}  // namespace vecgate
