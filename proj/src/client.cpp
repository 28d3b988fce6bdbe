#include "vecgate/client.hpp"

#include "vecgate/errors.hpp"

namespace vecgate {

namespace {

void require_collection_name(std::string_view name) {
    if (name.empty()) throw_validation("collection name must be non-empty");
}

}  // namespace

template <class Fn>
auto Client::guarded(Fn&& fn) const -> decltype(fn()) {
    try {
        return fn();
    } catch (...) {
        throw map_error(provider_, std::current_exception());
    }
}

Client Client::connect(const ClientConfig& config, const ProviderRegistry& registry) {
    try {
        return Client(std::shared_ptr<Adapter>(registry.create(config)));
    } catch (const NativeError& e) {
        // Startup failures without a declared category are connection problems.
        if (!e.category()) throw UnifiedError(ErrorCode::ConnectionError, e.what(), config.provider, e.what());
        throw map_error(config.provider, e);
    } catch (...) {
        throw map_error(config.provider, std::current_exception());
    }
}

Client::Client(std::shared_ptr<Adapter> adapter) : adapter_(std::move(adapter)) {
    if (!adapter_) throw UnifiedError(ErrorCode::ConfigurationError, "client requires an adapter");
    provider_ = adapter_->provider();
}

void Client::create_collection(const std::string& name, std::size_t dimension, MetricKind metric,
                               const ProviderParams& provider_params) const {
    guarded([&] {
        const CollectionSpec spec{name, dimension, metric};
        validate_collection_spec(spec);
        adapter_->create_collection(spec, provider_params);
    });
}

void Client::delete_collection(std::string_view name) const {
    guarded([&] {
        require_collection_name(name);
        adapter_->delete_collection(name);
    });
}

std::vector<std::string> Client::list_collections() const {
    return guarded([&] { return adapter_->list_collections(); });
}

std::size_t Client::upsert(std::string_view collection, std::span<const Record> records) const {
    return guarded([&] {
        require_collection_name(collection);
        if (records.empty()) throw_validation("upsert requires at least one record");
        for (const auto& r : records) validate_record_shape(r);
        return adapter_->upsert(collection, records);
    });
}

std::vector<Record> Client::fetch(std::string_view collection, std::span<const RecordId> ids) const {
    return guarded([&] {
        require_collection_name(collection);
        if (ids.empty()) throw_validation("fetch requires at least one id");
        return adapter_->fetch(collection, ids);
    });
}

std::size_t Client::delete_records(std::string_view collection, std::span<const RecordId> ids) const {
    return guarded([&] {
        require_collection_name(collection);
        if (ids.empty()) throw_validation("delete requires at least one id");
        return adapter_->delete_records(collection, ids);
    });
}

std::vector<QueryResult> Client::query(std::string_view collection, std::span<const double> vector, std::size_t top_k,
                                       const std::optional<FilterSource>& filter,
                                       const ProviderParams& provider_params) const {
    return guarded([&] {
        require_collection_name(collection);
        const FilterAst ast = filter ? parse_filter(*filter) : FilterAst{};
        validate_query_vector(vector);
        if (top_k < 1) throw_validation("top_k must be at least 1");
        return adapter_->query(collection, vector, top_k, ast, provider_params);
    });
}

}  // namespace vecgate
