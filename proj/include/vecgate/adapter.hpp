#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vecgate/filter_ast.hpp"
#include "vecgate/record.hpp"

namespace vecgate {

/// Provider-specific parameters. Never inspected outside the adapter that
/// receives them.
using ProviderParams = nlohmann::json;

/// Contract every backend implements. Each operation either succeeds or
/// throws; the client funnels whatever is thrown through map_error.
/// Implementations must be safe to call from several threads at once.
class Adapter {
public:
    virtual ~Adapter() = default;

    virtual const std::string& provider() const noexcept = 0;

    virtual void create_collection(const CollectionSpec& spec, const ProviderParams& params) = 0;
    virtual void delete_collection(std::string_view name) = 0;
    /// Sorted ascending.
    virtual std::vector<std::string> list_collections() = 0;

    /// All-or-nothing; returns the batch size.
    virtual std::size_t upsert(std::string_view collection, std::span<const Record> records) = 0;
    /// Records for the ids that exist, in request order.
    virtual std::vector<Record> fetch(std::string_view collection, std::span<const RecordId> ids) = 0;
    /// Returns how many ids were present.
    virtual std::size_t delete_records(std::string_view collection, std::span<const RecordId> ids) = 0;

    virtual std::vector<QueryResult> query(std::string_view collection, std::span<const double> vector,
                                           std::size_t top_k, const FilterAst& filter,
                                           const ProviderParams& params) = 0;
};

struct ClientConfig {
    std::string provider;
    /// The full configuration document, provider key included.
    nlohmann::json settings = nlohmann::json::object();

    /// Throws ConfigurationError on a missing or empty provider, or a "port"
    /// that is neither an integer nor a numeric string.
    static ClientConfig from_json(const nlohmann::json& document);
    static ClientConfig load(const std::string& path);
};

using AdapterFactory = std::function<std::unique_ptr<Adapter>(const ClientConfig&)>;

/// Provider name -> adapter factory. Lookups never fall back to a default.
class ProviderRegistry {
public:
    void add(std::string name, AdapterFactory factory);
    bool contains(std::string_view name) const;
    std::vector<std::string> names() const;

    /// Throws ConfigurationError naming the provider when it is not registered.
    std::unique_ptr<Adapter> create(const ClientConfig& config) const;

private:
    std::vector<std::pair<std::string, AdapterFactory>> entries_;
};

/// memory, memory-a, memory-b and simulated.
const ProviderRegistry& default_registry();

std::unique_ptr<Adapter> connect(const ClientConfig& config, const ProviderRegistry& registry = default_registry());

}  // namespace vecgate
