#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace vecgate {

enum class MetricKind : std::uint8_t { cosine, euclidean, dotproduct };
enum class Direction : std::uint8_t { higher_better, lower_better };

std::string_view to_string(MetricKind kind) noexcept;
std::optional<MetricKind> parse_metric(std::string_view name) noexcept;

constexpr Direction direction_of(MetricKind kind) noexcept {
    return kind == MetricKind::euclidean ? Direction::lower_better : Direction::higher_better;
}

/// Native metric value: cosine similarity, L2 distance or inner product.
/// Throws ValidationError on length mismatch, non-finite input, or a zero
/// vector under cosine.
double raw_score(MetricKind kind, std::span<const double> a, std::span<const double> b);

/// Maps a native value into [0,1], strictly monotone in the metric's
/// "better" direction:
///   cosine      (s + 1) / 2
///   euclidean   1 / (1 + d)
///   dotproduct  1 / (1 + exp(-s))
/// Cosine inputs within 1e-9 of +-1 are clamped.
double normalize_score(MetricKind kind, double raw);

}  // namespace vecgate
