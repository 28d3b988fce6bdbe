#include <algorithm>
#include <cmath>
#include <fstream>

#include "vecgate/adapter.hpp"
#include "vecgate/backends.hpp"
#include "vecgate/errors.hpp"

namespace vecgate {

namespace {

[[noreturn]] void config_error(std::string message) {
    throw UnifiedError(ErrorCode::ConfigurationError, std::move(message));
}

double latency_setting(const nlohmann::json& settings, const char* key) {
    const auto it = settings.find(key);
    if (it == settings.end()) return 0.0;
    if (!it->is_number()) config_error(std::string(key) + " must be a number");
    const double value = it->get<double>();
    if (!std::isfinite(value) || value < 0.0) config_error(std::string(key) + " must be finite and >= 0");
    return value;
}

std::unique_ptr<Adapter> make_memory(const ClientConfig& config) {
    std::optional<std::string> persist;
    if (const auto it = config.settings.find("persist_path"); it != config.settings.end() && !it->is_null()) {
        if (!it->is_string() || it->get_ref<const std::string&>().empty()) {
            config_error("persist_path must be a non-empty string");
        }
        persist = it->get<std::string>();
    }
    return std::make_unique<MemoryAdapter>(config.provider, std::move(persist));
}

std::unique_ptr<Adapter> make_simulated(const ClientConfig& config) {
    SimulatedLatency latency{latency_setting(config.settings, "per_call_latency_ms"),
                             latency_setting(config.settings, "per_record_latency_ms")};
    Target dialect = Target::qdrant;
    if (const auto it = config.settings.find("dialect"); it != config.settings.end()) {
        const auto parsed = it->is_string() ? parse_target(it->get<std::string>()) : std::nullopt;
        if (!parsed || *parsed == Target::milvus) config_error("dialect must be one of pinecone, weaviate, qdrant");
        dialect = *parsed;
    }
    return std::make_unique<SimulatedAdapter>(config.provider, latency, dialect);
}

ProviderRegistry build_default_registry() {
    ProviderRegistry registry;
    registry.add("memory", make_memory);
    registry.add("memory-a", make_memory);
    registry.add("memory-b", make_memory);
    registry.add("simulated", make_simulated);
    return registry;
}

}  // namespace

ClientConfig ClientConfig::from_json(const nlohmann::json& document) {
    if (!document.is_object()) config_error("configuration must be a JSON object");
    const auto it = document.find("provider");
    if (it == document.end()) config_error("configuration is missing 'provider'");
    if (!it->is_string() || it->get_ref<const std::string&>().empty()) {
        config_error("'provider' must be a non-empty string");
    }
    if (const auto port = document.find("port"); port != document.end()) {
        const bool numeric_string = port->is_string() && !port->get_ref<const std::string&>().empty() &&
                                    std::all_of(port->get_ref<const std::string&>().begin(),
                                                port->get_ref<const std::string&>().end(),
                                                [](unsigned char c) { return std::isdigit(c); });
        if (!port->is_number_integer() && !numeric_string) config_error("'port' must be an integer or numeric string");
    }
    return ClientConfig{it->get<std::string>(), document};
}

ClientConfig ClientConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) config_error("cannot read configuration '" + path + "'");
    nlohmann::json document;
    try {
        document = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        config_error("malformed configuration '" + path + "': " + e.what());
    }
    return from_json(document);
}

void ProviderRegistry::add(std::string name, AdapterFactory factory) {
    if (name.empty()) config_error("provider name must be non-empty");
    if (contains(name)) config_error("provider already registered: " + name);
    entries_.emplace_back(std::move(name), std::move(factory));
}

bool ProviderRegistry::contains(std::string_view name) const {
    return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == name; });
}

std::vector<std::string> ProviderRegistry::names() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : entries_) out.push_back(name);
    std::sort(out.begin(), out.end());
    return out;
}

std::unique_ptr<Adapter> ProviderRegistry::create(const ClientConfig& config) const {
    for (const auto& [name, factory] : entries_) {
        if (name == config.provider) return factory(config);
    }
    config_error("unknown provider '" + config.provider + "'");
}

const ProviderRegistry& default_registry() {
    static const ProviderRegistry registry = build_default_registry();
    return registry;
}

std::unique_ptr<Adapter> connect(const ClientConfig& config, const ProviderRegistry& registry) {
    return registry.create(config);
}

}  // namespace vecgate
