#include "vecgate/errors.hpp"

#include <array>
#include <utility>

namespace vecgate {

namespace {

constexpr std::array<std::pair<ErrorCode, std::string_view>, 8> kCodeNames{{
    {ErrorCode::ConfigurationError, "ConfigurationError"},
    {ErrorCode::AuthenticationError, "AuthenticationError"},
    {ErrorCode::SchemaError, "SchemaError"},
    {ErrorCode::ValidationError, "ValidationError"},
    {ErrorCode::NotFoundError, "NotFoundError"},
    {ErrorCode::ConnectionError, "ConnectionError"},
    {ErrorCode::RateLimitError, "RateLimitError"},
    {ErrorCode::InternalError, "InternalError"},
}};

std::string compose_what(ErrorCode code, const std::string& message) {
    std::string out{to_string(code)};
    out += ": ";
    out += message;
    return out;
}

}  // namespace

std::string_view to_string(ErrorCode code) noexcept {
    for (const auto& [c, name] : kCodeNames) {
        if (c == code) return name;
    }
    return "InternalError";
}

std::optional<ErrorCode> parse_error_code(std::string_view name) noexcept {
    for (const auto& [c, n] : kCodeNames) {
        if (n == name) return c;
    }
    return std::nullopt;
}

bool is_transient(ErrorCode code) noexcept {
    return code == ErrorCode::RateLimitError || code == ErrorCode::ConnectionError;
}

UnifiedError::UnifiedError(ErrorCode code, std::string message, std::string provider,
                           std::optional<std::string> native_detail)
    : UnifiedError(code, std::move(message), is_transient(code), std::move(provider),
                   std::move(native_detail)) {}

UnifiedError::UnifiedError(ErrorCode code, std::string message, bool transient, std::string provider,
                           std::optional<std::string> native_detail)
    : std::runtime_error(compose_what(code, message)),
      code_(code),
      message_(std::move(message)),
      // Only InternalError may deviate from the per-code default.
      transient_(code == ErrorCode::InternalError ? transient : is_transient(code)),
      provider_(std::move(provider)),
      native_detail_(std::move(native_detail)) {}

UnifiedError UnifiedError::with_provider(std::string provider) const {
    return UnifiedError(code_, message_, transient_, std::move(provider), native_detail_);
}

void throw_validation(std::string message) {
    throw UnifiedError(ErrorCode::ValidationError, std::move(message));
}

void throw_schema(std::string message) {
    throw UnifiedError(ErrorCode::SchemaError, std::move(message));
}

NativeError::NativeError(std::string detail, std::optional<ErrorCode> category, bool transient_hint)
    : std::runtime_error(std::move(detail)), category_(category), transient_hint_(transient_hint) {}

UnifiedError map_error(std::string_view provider, const NativeError& native) {
    std::string detail = native.what();
    if (native.category()) {
        ErrorCode code = *native.category();
        return UnifiedError(code, detail, native.transient_hint(), std::string(provider), detail);
    }
    return UnifiedError(ErrorCode::InternalError, "unclassified " + std::string(provider) + " error",
                        native.transient_hint(), std::string(provider), std::move(detail));
}

UnifiedError map_error(std::string_view provider, std::exception_ptr error) noexcept {
    try {
        try {
            std::rethrow_exception(error);
        } catch (const UnifiedError& e) {
            if (e.provider().empty()) return e.with_provider(std::string(provider));
            return e;
        } catch (const NativeError& e) {
            return map_error(provider, e);
        } catch (const std::exception& e) {
            return UnifiedError(ErrorCode::InternalError, "unclassified " + std::string(provider) + " error",
                                false, std::string(provider), std::string(e.what()));
        } catch (...) {
            return UnifiedError(ErrorCode::InternalError, "unclassified " + std::string(provider) + " error",
                                false, std::string(provider), std::string("non-standard exception"));
        }
    } catch (...) {
        // Allocation failure while building the error.
        return UnifiedError(ErrorCode::InternalError, "error classification failed");
    }
}

}  // namespace vecgate
