#include "vecgate/backends.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <thread>

#include "vecgate/errors.hpp"
#include "vecgate/filter_dsl.hpp"
#include "vecgate/native_interpreter.hpp"

namespace vecgate {

namespace {

// Sleep granularity is coarse; the tail of each wait spins.
constexpr auto kSpinMargin = std::chrono::microseconds(250);

void require_batch(std::size_t n) {
    if (n == 0) throw_validation("batch must not be empty");
}

bool matches_everything(const NativeFilter& filter) {
    if (const auto* json = std::get_if<NativeJson>(&filter.body)) return json->is_object() && json->empty();
    if (const auto* weaviate = std::get_if<WeaviateFilter>(&filter.body)) return !weaviate->where;
    return std::get<std::string>(filter.body).empty();
}

}  // namespace

void wait_for(std::chrono::nanoseconds duration) {
    if (duration <= std::chrono::nanoseconds::zero()) return;
    const auto deadline = std::chrono::steady_clock::now() + duration;
    if (duration > kSpinMargin) std::this_thread::sleep_until(deadline - kSpinMargin);
    while (std::chrono::steady_clock::now() < deadline) std::this_thread::yield();
}

// --- MemoryAdapter ---------------------------------------------------------

MemoryAdapter::MemoryAdapter(std::string provider, std::optional<std::string> persist_path)
    : provider_(std::move(provider)), persist_path_(std::move(persist_path)) {
    if (persist_path_ && std::filesystem::exists(*persist_path_)) {
        try {
            store_ = snapshot_load(*persist_path_);
        } catch (const UnifiedError& e) {
            if (e.code() == ErrorCode::ConnectionError) throw NativeError(e.message(), ErrorCode::ConnectionError);
            throw NativeError("cannot open store '" + *persist_path_ + "': " + e.message(), e.code());
        }
    }
}

void MemoryAdapter::persist() {
    if (!persist_path_) return;
    std::lock_guard lock(persist_mutex_);
    snapshot_save(store_, *persist_path_);
}

void MemoryAdapter::create_collection(const CollectionSpec& spec, const ProviderParams&) {
    store_.create_collection(spec);
    persist();
}

void MemoryAdapter::delete_collection(std::string_view name) {
    store_.delete_collection(name);
    persist();
}

std::vector<std::string> MemoryAdapter::list_collections() { return store_.list_collections(); }

std::size_t MemoryAdapter::upsert(std::string_view collection, std::span<const Record> records) {
    require_batch(records.size());
    const auto n = store_.upsert(collection, records);
    persist();
    return n;
}

std::vector<Record> MemoryAdapter::fetch(std::string_view collection, std::span<const RecordId> ids) {
    return store_.fetch(collection, ids);
}

std::size_t MemoryAdapter::delete_records(std::string_view collection, std::span<const RecordId> ids) {
    const auto n = store_.remove(collection, ids);
    if (n > 0) persist();
    return n;
}

std::vector<QueryResult> MemoryAdapter::query(std::string_view collection, std::span<const double> vector,
                                              std::size_t top_k, const FilterAst& filter, const ProviderParams&) {
    if (filter.is_match_all()) return store_.query(collection, vector, top_k, nullptr);
    return store_.query(collection, vector, top_k,
                        [&filter](const Payload* payload) { return evaluate_filter(filter, payload); });
}

// --- SimulatedAdapter ------------------------------------------------------

std::chrono::nanoseconds SimulatedLatency::cost(std::size_t batch) const {
    const double ms = per_call_ms + per_record_ms * static_cast<double>(batch);
    return std::chrono::nanoseconds(static_cast<std::int64_t>(std::llround(ms * 1e6)));
}

SimulatedAdapter::SimulatedAdapter(std::string provider, SimulatedLatency latency, Target dialect)
    : provider_(std::move(provider)), latency_(latency), dialect_(dialect) {
    if (!std::isfinite(latency.per_call_ms) || !std::isfinite(latency.per_record_ms) || latency.per_call_ms < 0.0 ||
        latency.per_record_ms < 0.0) {
        throw UnifiedError(ErrorCode::ConfigurationError, "simulated latencies must be finite and non-negative");
    }
    if (dialect == Target::milvus) {
        throw UnifiedError(ErrorCode::ConfigurationError, "simulated backend cannot evaluate the milvus dialect");
    }
}

void SimulatedAdapter::inject_fault(NativeError fault) {
    std::lock_guard lock(fault_mutex_);
    faults_.push_back(std::move(fault));
}

void SimulatedAdapter::pay(std::size_t batch) {
    {
        std::lock_guard lock(fault_mutex_);
        if (!faults_.empty()) {
            NativeError fault = std::move(faults_.front());
            faults_.pop_front();
            throw fault;
        }
    }
    wait_for(latency_.cost(batch));
}

void SimulatedAdapter::create_collection(const CollectionSpec& spec, const ProviderParams&) {
    pay(0);
    store_.create_collection(spec);
}

void SimulatedAdapter::delete_collection(std::string_view name) {
    pay(0);
    store_.delete_collection(name);
}

std::vector<std::string> SimulatedAdapter::list_collections() {
    pay(0);
    return store_.list_collections();
}

std::size_t SimulatedAdapter::upsert(std::string_view collection, std::span<const Record> records) {
    require_batch(records.size());
    pay(records.size());
    return store_.upsert(collection, records);
}

std::vector<Record> SimulatedAdapter::fetch(std::string_view collection, std::span<const RecordId> ids) {
    require_batch(ids.size());
    pay(ids.size());
    return store_.fetch(collection, ids);
}

std::size_t SimulatedAdapter::delete_records(std::string_view collection, std::span<const RecordId> ids) {
    require_batch(ids.size());
    pay(ids.size());
    return store_.remove(collection, ids);
}

std::vector<QueryResult> SimulatedAdapter::query(std::string_view collection, std::span<const double> vector,
                                                 std::size_t top_k, const FilterAst& filter, const ProviderParams&) {
    return query_native(collection, vector, top_k, transpile(dialect_, filter));
}

std::vector<QueryResult> SimulatedAdapter::query_native(std::string_view collection, std::span<const double> vector,
                                                        std::size_t top_k, const NativeFilter& filter) {
    if (filter.target != dialect_) {
        throw NativeError("filter dialect " + std::string(to_string(filter.target)) + " is not " +
                              std::string(to_string(dialect_)),
                          ErrorCode::ValidationError);
    }
    pay(1);
    if (matches_everything(filter)) return store_.query(collection, vector, top_k, nullptr);
    return store_.query(collection, vector, top_k,
                        [&filter](const Payload* payload) { return interpret_native(filter, payload); });
}

}  // namespace vecgate
