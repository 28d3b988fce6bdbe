#include "vecgate/metric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vecgate/errors.hpp"

namespace vecgate {

namespace {

constexpr double kCosineSlack = 1e-9;

void check_pair(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw_validation("vector length mismatch: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
    }
    if (a.empty()) throw_validation("vectors must be non-empty");
}

}  // namespace

std::string_view to_string(MetricKind kind) noexcept {
    switch (kind) {
        case MetricKind::cosine: return "cosine";
        case MetricKind::euclidean: return "euclidean";
        case MetricKind::dotproduct: return "dotproduct";
    }
    return "cosine";
}

std::optional<MetricKind> parse_metric(std::string_view name) noexcept {
    if (name == "cosine") return MetricKind::cosine;
    if (name == "euclidean") return MetricKind::euclidean;
    if (name == "dotproduct") return MetricKind::dotproduct;
    return std::nullopt;
}

double raw_score(MetricKind kind, std::span<const double> a, std::span<const double> b) {
    check_pair(a, b);
    double dot = 0.0;
    double norm_a = 0.0;
    double norm_b = 0.0;
    double dist = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!std::isfinite(a[i]) || !std::isfinite(b[i])) throw_validation("non-finite vector component");
        dot += a[i] * b[i];
        norm_a += a[i] * a[i];
        norm_b += b[i] * b[i];
        const double diff = a[i] - b[i];
        dist += diff * diff;
    }
    switch (kind) {
        case MetricKind::cosine: {
            if (norm_a == 0.0 || norm_b == 0.0) throw_validation("cosine is undefined for a zero vector");
            const double s = dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
            return std::clamp(s, -1.0, 1.0);
        }
        case MetricKind::euclidean: return std::sqrt(dist);
        case MetricKind::dotproduct: return dot;
    }
    return dot;
}

double normalize_score(MetricKind kind, double raw) {
    if (!std::isfinite(raw)) throw_validation("non-finite raw score");
    switch (kind) {
        case MetricKind::cosine: {
            if (std::abs(raw) > 1.0 + kCosineSlack) {
                throw_validation("cosine score out of range: " + std::to_string(raw));
            }
            const double s = std::clamp(raw, -1.0, 1.0);
            return (s + 1.0) / 2.0;
        }
        case MetricKind::euclidean:
            if (raw < 0.0) throw_validation("negative euclidean distance: " + std::to_string(raw));
            return 1.0 / (1.0 + raw);
        case MetricKind::dotproduct:
            // Split form avoids exp overflow for large |raw|.
            if (raw >= 0.0) return 1.0 / (1.0 + std::exp(-raw));
            {
                const double e = std::exp(raw);
                return e / (1.0 + e);
            }
    }
    return 0.0;
}

}  // namespace vecgate
