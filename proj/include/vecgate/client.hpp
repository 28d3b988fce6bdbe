#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vecgate/adapter.hpp"
#include "vecgate/filter_dsl.hpp"

namespace vecgate {

/// Unified API over one bound adapter.
///
/// Inputs are validated before the adapter is called, filters are parsed to
/// an AST here and handed to the adapter, and every failure leaves as a
/// UnifiedError carrying the provider name. provider_params are forwarded
/// untouched. The client holds no mutable state, so one instance can be
/// shared across threads to the extent the adapter allows.
class Client {
public:
    static Client connect(const ClientConfig& config, const ProviderRegistry& registry = default_registry());

    /// Binds an existing adapter (tests, benchmarks).
    explicit Client(std::shared_ptr<Adapter> adapter);

    const std::string& provider() const noexcept { return provider_; }
    Adapter& adapter() const noexcept { return *adapter_; }

    void create_collection(const std::string& name, std::size_t dimension, MetricKind metric = MetricKind::cosine,
                           const ProviderParams& provider_params = ProviderParams::object()) const;
    void delete_collection(std::string_view name) const;
    std::vector<std::string> list_collections() const;

    std::size_t upsert(std::string_view collection, std::span<const Record> records) const;
    std::vector<Record> fetch(std::string_view collection, std::span<const RecordId> ids) const;
    std::size_t delete_records(std::string_view collection, std::span<const RecordId> ids) const;

    /// An absent filter means match everything.
    std::vector<QueryResult> query(std::string_view collection, std::span<const double> vector, std::size_t top_k,
                                   const std::optional<FilterSource>& filter = std::nullopt,
                                   const ProviderParams& provider_params = ProviderParams::object()) const;

private:
    template <class Fn>
    auto guarded(Fn&& fn) const -> decltype(fn());

    std::shared_ptr<Adapter> adapter_;
    std::string provider_;
};

}  // namespace vecgate
