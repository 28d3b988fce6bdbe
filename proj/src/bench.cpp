#include "vecgate/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <thread>

#include "vecgate/backends.hpp"
#include "vecgate/client.hpp"
#include "vecgate/errors.hpp"
#include "vecgate/transpile.hpp"

namespace vecgate::bench {

namespace {

using Clock = std::chrono::steady_clock;

constexpr const char* kCollection = "bench";
constexpr std::size_t kCategories = 10;
constexpr std::size_t kBatchPool = 4;
constexpr std::size_t kQueryPool = 64;

double elapsed_ms(Clock::time_point start, Clock::time_point end) {
    return std::chrono::duration<double, std::milli>(end - start).count();
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t dimension) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> v(dimension);
    for (auto& x : v) x = normal(rng);
    return v;
}

Record random_record(std::mt19937_64& rng, std::int64_t id, std::size_t dimension) {
    std::uniform_int_distribution<std::size_t> category(0, kCategories - 1);
    std::uniform_int_distribution<std::int64_t> year(1990, 2025);
    Record r{id, random_vector(rng, dimension), Payload{}};
    r.payload->emplace("category", "c" + std::to_string(category(rng)));
    r.payload->emplace("year", year(rng));
    return r;
}

FilterSource five_value_filter() {
    FilterSource values = FilterSource::array();
    for (int i = 0; i < 5; ++i) values.push_back("c" + std::to_string(i));
    FilterSource filter = FilterSource::object();
    filter["category"]["$in"] = values;
    return filter;
}

struct Backends {
    std::shared_ptr<Adapter> direct;
    std::shared_ptr<Adapter> middleware;
};

Backends make_backends(const ClientConfig& config, std::size_t dimension) {
    Backends b{std::shared_ptr<Adapter>(connect(config)), std::shared_ptr<Adapter>(connect(config))};
    for (const auto& a : {b.direct, b.middleware}) {
        a->create_collection({kCollection, dimension, MetricKind::cosine}, ProviderParams::object());
    }
    return b;
}

/// Runs `call(i)` for `iterations` after `warmup`, alternating the two modes.
template <class Direct, class Middleware>
std::pair<std::vector<double>, std::vector<double>> measure(std::size_t warmup, std::size_t iterations,
                                                            Direct&& direct, Middleware&& middleware) {
    std::vector<double> d;
    std::vector<double> m;
    d.reserve(iterations);
    m.reserve(iterations);
    for (std::size_t i = 0; i < warmup + iterations; ++i) {
        // Alternate which mode goes first to cancel ordering effects.
        const bool direct_first = (i % 2) == 0;
        double td = 0.0;
        double tm = 0.0;
        for (int pass = 0; pass < 2; ++pass) {
            const bool run_direct = (pass == 0) == direct_first;
            const auto start = Clock::now();
            if (run_direct) direct(i); else middleware(i);
            const auto end = Clock::now();
            (run_direct ? td : tm) = elapsed_ms(start, end);
        }
        if (i >= warmup) {
            d.push_back(td);
            m.push_back(tm);
        }
    }
    return {std::move(d), std::move(m)};
}

template <class Call>
double throughput(std::size_t workers, double window_seconds, Call&& call) {
    std::atomic<bool> stop{false};
    std::atomic<std::size_t> completed{0};
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const auto start = Clock::now();
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            std::size_t i = w;
            while (!stop.load(std::memory_order_relaxed)) {
                call(i);
                i += workers;
                completed.fetch_add(1, std::memory_order_relaxed);
            }
        });
    }
    std::this_thread::sleep_for(std::chrono::duration<double>(window_seconds));
    stop = true;
    for (auto& t : threads) t.join();
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return static_cast<double>(completed.load()) / seconds;
}

Report make_report(const Options& options, const std::string& provider, std::vector<double> direct_ms,
                   std::vector<double> middleware_ms) {
    Report r;
    r.op = options.op;
    r.iterations = options.iterations;
    r.concurrency = options.concurrency;
    r.seed = options.seed;
    r.provider = provider;
    r.direct = summarize(std::move(direct_ms));
    r.middleware = summarize(std::move(middleware_ms));
    r.overhead_percent = overhead_percent(r.direct.mean_ms, r.middleware.mean_ms);
    return r;
}

Report run_upsert(const Options& options, const ClientConfig& config, std::size_t batch) {
    std::mt19937_64 rng(options.seed ^ (0x9e3779b97f4a7c15ULL * batch));
    std::vector<std::vector<Record>> pool(kBatchPool);
    std::int64_t next_id = 0;
    for (auto& records : pool) {
        records.reserve(batch);
        for (std::size_t i = 0; i < batch; ++i) records.push_back(random_record(rng, next_id++, options.dimension));
    }

    const Backends backends = make_backends(config, options.dimension);
    const Client client(backends.middleware);
    auto direct = [&](std::size_t i) { backends.direct->upsert(kCollection, pool[i % kBatchPool]); };
    auto middleware = [&](std::size_t i) { client.upsert(kCollection, pool[i % kBatchPool]); };

    auto [d, m] = measure(options.warmup, options.iterations, direct, middleware);
    Report r = make_report(options, config.provider, std::move(d), std::move(m));
    r.batch_size = batch;
    if (options.window_seconds > 0.0 && options.concurrency > 0) {
        r.direct_throughput_ops_per_sec = throughput(options.concurrency, options.window_seconds, direct);
        r.middleware_throughput_ops_per_sec = throughput(options.concurrency, options.window_seconds, middleware);
    }
    return r;
}

Report run_query(const Options& options, const ClientConfig& config) {
    std::mt19937_64 rng(options.seed);
    std::vector<Record> corpus;
    corpus.reserve(options.corpus_size);
    for (std::size_t i = 0; i < options.corpus_size; ++i) {
        corpus.push_back(random_record(rng, static_cast<std::int64_t>(i), options.dimension));
    }
    std::vector<std::vector<double>> queries;
    for (std::size_t i = 0; i < kQueryPool; ++i) queries.push_back(random_vector(rng, options.dimension));

    const Backends backends = make_backends(config, options.dimension);
    if (!corpus.empty()) {
        backends.direct->upsert(kCollection, corpus);
        backends.middleware->upsert(kCollection, corpus);
    }
    const Client client(backends.middleware);

    const bool filtered = options.op == Op::query_filtered;
    const std::optional<FilterSource> source = filtered ? std::optional(five_value_filter()) : std::nullopt;
    const FilterAst ast = source ? parse_filter(*source) : FilterAst{};
    const ProviderParams no_params = ProviderParams::object();

    // Direct mode against the simulated backend skips the middleware's parse
    // and transpile steps by handing over a filter already in its dialect.
    auto* simulated = dynamic_cast<SimulatedAdapter*>(backends.direct.get());
    const std::optional<NativeFilter> native =
        simulated ? std::optional(transpile(simulated->dialect(), ast)) : std::nullopt;

    const std::size_t top_k = options.top_k;
    auto direct = [&](std::size_t i) {
        const auto& v = queries[i % kQueryPool];
        if (native) {
            simulated->query_native(kCollection, v, top_k, *native);
        } else {
            backends.direct->query(kCollection, v, top_k, ast, no_params);
        }
    };
    auto middleware = [&](std::size_t i) { client.query(kCollection, queries[i % kQueryPool], top_k, source); };

    auto [d, m] = measure(options.warmup, options.iterations, direct, middleware);
    Report r = make_report(options, config.provider, std::move(d), std::move(m));
    r.top_k = top_k;
    if (options.window_seconds > 0.0 && options.concurrency > 0) {
        r.direct_throughput_ops_per_sec = throughput(options.concurrency, options.window_seconds, direct);
        r.middleware_throughput_ops_per_sec = throughput(options.concurrency, options.window_seconds, middleware);
    }
    return r;
}

std::string format(const char* fmt, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, value);
    return buf;
}

}  // namespace

std::string_view to_string(Op op) noexcept {
    switch (op) {
        case Op::upsert: return "upsert";
        case Op::query: return "query";
        case Op::query_filtered: return "query-filtered";
    }
    return "upsert";
}

std::optional<Op> parse_op(std::string_view name) noexcept {
    for (auto op : {Op::upsert, Op::query, Op::query_filtered}) {
        if (to_string(op) == name) return op;
    }
    return std::nullopt;
}

LatencyStats summarize(std::vector<double> samples_ms) {
    if (samples_ms.empty()) return {};
    std::sort(samples_ms.begin(), samples_ms.end());
    double sum = 0.0;
    for (double s : samples_ms) sum += s;
    const auto rank = [&](double p) {
        const auto n = samples_ms.size();
        auto idx = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
        idx = std::clamp<std::size_t>(idx, 1, n);
        return samples_ms[idx - 1];
    };
    return {sum / static_cast<double>(samples_ms.size()), rank(0.50), rank(0.99)};
}

double overhead_percent(double direct_mean_ms, double middleware_mean_ms) {
    return (middleware_mean_ms - direct_mean_ms) / direct_mean_ms * 100.0;
}

std::vector<Report> run(const Options& options) {
    const ClientConfig config = ClientConfig::from_json(options.config);
    const bool simulated = config.provider == "simulated";
    const bool memory = config.provider == "memory" || config.provider == "memory-a" || config.provider == "memory-b";
    if (!simulated && !memory) {
        throw UnifiedError(ErrorCode::ConfigurationError,
                           "benchmarks run only against simulated or memory providers, not '" + config.provider + "'",
                           config.provider);
    }
    if (memory && config.settings.contains("persist_path")) {
        throw UnifiedError(ErrorCode::ConfigurationError, "benchmarks need a non-persistent memory provider",
                           config.provider);
    }
    if (options.iterations < 1) throw UnifiedError(ErrorCode::ValidationError, "iterations must be at least 1");
    if (options.concurrency < 1) throw UnifiedError(ErrorCode::ValidationError, "concurrency must be at least 1");
    if (options.dimension < 1) throw UnifiedError(ErrorCode::ValidationError, "dimension must be at least 1");

    std::vector<Report> reports;
    if (options.op == Op::upsert) {
        if (options.batch_sizes.empty()) throw UnifiedError(ErrorCode::ValidationError, "no batch sizes given");
        for (std::size_t batch : options.batch_sizes) {
            if (batch < 1) throw UnifiedError(ErrorCode::ValidationError, "batch sizes must be at least 1");
            reports.push_back(run_upsert(options, config, batch));
        }
    } else {
        if (options.top_k < 1) throw UnifiedError(ErrorCode::ValidationError, "top_k must be at least 1");
        reports.push_back(run_query(options, config));
    }
    return reports;
}

nlohmann::ordered_json to_json(const Report& report) {
    const auto stats = [](const LatencyStats& s) {
        nlohmann::ordered_json j;
        j["mean"] = s.mean_ms;
        j["p50"] = s.p50_ms;
        j["p99"] = s.p99_ms;
        return j;
    };
    const auto opt = [](const std::optional<double>& v) { return v ? nlohmann::ordered_json(*v) : nullptr; };
    nlohmann::ordered_json j;
    j["op_kind"] = std::string(to_string(report.op));
    j["provider"] = report.provider;
    j["batch_size"] = report.batch_size;
    j["top_k"] = report.top_k;
    j["iterations"] = report.iterations;
    j["concurrency"] = report.concurrency;
    j["seed"] = report.seed;
    j["direct_latency_ms"] = stats(report.direct);
    j["middleware_latency_ms"] = stats(report.middleware);
    j["direct_throughput_ops_per_sec"] = opt(report.direct_throughput_ops_per_sec);
    j["middleware_throughput_ops_per_sec"] = opt(report.middleware_throughput_ops_per_sec);
    j["overhead_percent"] = report.overhead_percent;
    return j;
}

std::string render_table(const std::vector<Report>& reports) {
    std::string out =
        "op              size  direct_ms  mw_ms      p99_direct  p99_mw     overhead_%  tput_direct  tput_mw\n";
    for (const auto& r : reports) {
        char line[256];
        const std::size_t size = r.op == Op::upsert ? r.batch_size : r.top_k;
        const auto tput = [](const std::optional<double>& v) { return v ? format("%.1f", *v) : std::string("-"); };
        std::snprintf(line, sizeof line, "%-15s %5zu  %-9.4f  %-9.4f  %-10.4f  %-9.4f  %-10.3f  %-11s  %s\n",
                      std::string(to_string(r.op)).c_str(), size, r.direct.mean_ms, r.middleware.mean_ms,
                      r.direct.p99_ms, r.middleware.p99_ms, r.overhead_percent,
                      tput(r.direct_throughput_ops_per_sec).c_str(), tput(r.middleware_throughput_ops_per_sec).c_str());
        out += line;
    }
    return out;
}

}  // namespace vecgate::bench
