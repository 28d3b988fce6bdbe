#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vecgate {

/// Canonical error codes shared by every backend.
enum class ErrorCode : std::uint8_t {
    ConfigurationError,
    AuthenticationError,
    SchemaError,
    ValidationError,
    NotFoundError,
    ConnectionError,
    RateLimitError,
    InternalError,
};

std::string_view to_string(ErrorCode code) noexcept;
std::optional<ErrorCode> parse_error_code(std::string_view name) noexcept;

/// Default retry advice for a code. InternalError defaults to permanent.
bool is_transient(ErrorCode code) noexcept;

/// The only exception type that escapes a Client.
///
/// `provider` is empty for errors raised outside a bound client (pure
/// validation helpers); the client fills it in before rethrowing.
class UnifiedError : public std::runtime_error {
public:
    UnifiedError(ErrorCode code, std::string message, std::string provider = {},
                 std::optional<std::string> native_detail = std::nullopt);
    UnifiedError(ErrorCode code, std::string message, bool transient, std::string provider,
                 std::optional<std::string> native_detail);

    ErrorCode code() const noexcept { return code_; }
    const std::string& message() const noexcept { return message_; }
    bool transient() const noexcept { return transient_; }
    const std::string& provider() const noexcept { return provider_; }
    const std::optional<std::string>& native_detail() const noexcept { return native_detail_; }

    UnifiedError with_provider(std::string provider) const;

private:
    ErrorCode code_;
    std::string message_;
    bool transient_;
    std::string provider_;
    std::optional<std::string> native_detail_;
};

[[noreturn]] void throw_validation(std::string message);
[[noreturn]] void throw_schema(std::string message);

/// Error raised by an adapter in its own terms. Adapters declare a category
/// when they know one; anything without a category is treated as internal.
class NativeError : public std::runtime_error {
public:
    explicit NativeError(std::string detail, std::optional<ErrorCode> category = std::nullopt,
                         bool transient_hint = false);

    const std::optional<ErrorCode>& category() const noexcept { return category_; }
    bool transient_hint() const noexcept { return transient_hint_; }

private:
    std::optional<ErrorCode> category_;
    bool transient_hint_;
};

/// Classifies a native failure into the canonical taxonomy.
UnifiedError map_error(std::string_view provider, const NativeError& native);

/// Classifies whatever is held by `error`. Never throws; unknown exception
/// types become InternalError with their text preserved as native_detail.
UnifiedError map_error(std::string_view provider, std::exception_ptr error) noexcept;

}  // namespace vecgate
