#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vecgate/adapter.hpp"

namespace vecgate::bench {

enum class Op : std::uint8_t { upsert, query, query_filtered };

std::string_view to_string(Op op) noexcept;
std::optional<Op> parse_op(std::string_view name) noexcept;

struct LatencyStats {
    double mean_ms = 0.0;
    double p50_ms = 0.0;
    double p99_ms = 0.0;
};

/// Nearest-rank percentiles over the samples (milliseconds).
LatencyStats summarize(std::vector<double> samples_ms);

/// (middleware - direct) / direct * 100.
double overhead_percent(double direct_mean_ms, double middleware_mean_ms);

struct Options {
    /// Backend configuration; provider must be "simulated" or a memory provider.
    nlohmann::json config = {{"provider", "simulated"}, {"per_call_latency_ms", 1.0}, {"per_record_latency_ms", 0.01}};
    Op op = Op::upsert;
    std::vector<std::size_t> batch_sizes = {1, 100, 1000};
    std::size_t top_k = 10;
    std::size_t iterations = 1000;
    std::size_t warmup = 100;
    std::size_t concurrency = 16;
    /// Throughput window per mode; zero skips the throughput phase.
    double window_seconds = 10.0;
    std::uint64_t seed = 42;
    std::size_t dimension = 25;
    /// Rows preloaded for query benchmarks.
    std::size_t corpus_size = 1000;
};

struct Report {
    Op op = Op::upsert;
    std::size_t batch_size = 1;
    std::size_t top_k = 0;
    std::size_t iterations = 0;
    std::size_t concurrency = 1;
    std::uint64_t seed = 0;
    std::string provider;
    LatencyStats direct;
    LatencyStats middleware;
    std::optional<double> direct_throughput_ops_per_sec;
    std::optional<double> middleware_throughput_ops_per_sec;
    double overhead_percent = 0.0;
};

/// One report per batch size (upsert) or a single report (queries).
///
/// Direct mode calls the adapter with pre-validated records and, for
/// queries, a filter already in the backend's form. Middleware mode goes
/// through Client with the filter as a JSON document. Both modes replay the
/// same seeded workload against separate, identically configured backends,
/// interleaved call by call.
std::vector<Report> run(const Options& options);

nlohmann::ordered_json to_json(const Report& report);
std::string render_table(const std::vector<Report>& reports);

}  // namespace vecgate::bench
