#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "vecgate/bench.hpp"
#include "vecgate/client.hpp"
#include "vecgate/errors.hpp"
#include "vecgate/record_json.hpp"
#include "vecgate/transpile.hpp"

namespace vecgate::cli {

namespace {

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::ValidationError:
        case ErrorCode::SchemaError:
        case ErrorCode::ConfigurationError: return kUsage;
        default: return kBackend;
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UnifiedError(ErrorCode::ConfigurationError, "cannot read '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_csv(std::string_view text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto end = comma == std::string_view::npos ? text.size() : comma;
        parts.push_back(trim(text.substr(start, end - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return parts;
}

Json parse_json(std::string_view text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw_validation(what + " is not valid JSON: " + e.what());
    }
}

/// A JSON array, or comma/whitespace separated numbers.
std::vector<double> parse_vector(const std::string& text) {
    const std::string body = trim(text);
    std::vector<double> v;
    if (!body.empty() && body.front() == '[') {
        const Json j = parse_json(body, "vector");
        if (!j.is_array()) throw_validation("vector must be a list of numbers");
        for (const auto& x : j) {
            if (!x.is_number()) throw_validation("vector must be a list of numbers");
            v.push_back(x.get<double>());
        }
        return v;
    }
    std::string normalized = body;
    for (auto& c : normalized) {
        if (c == ',') c = ' ';
    }
    std::istringstream in(normalized);
    std::string token;
    while (in >> token) {
        double x = 0.0;
        const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), x);
        if (ec != std::errc() || end != token.data() + token.size()) {
            throw_validation("vector component '" + token + "' is not a number");
        }
        v.push_back(x);
    }
    return v;
}

/// A JSON array of ids, or comma separated tokens where integers become
/// integer ids.
std::vector<RecordId> parse_ids(const std::string& text) {
    const std::string body = trim(text);
    std::vector<RecordId> ids;
    if (!body.empty() && body.front() == '[') {
        const Json j = parse_json(body, "ids");
        if (!j.is_array()) throw_validation("ids must be a list");
        for (const auto& id : j) ids.push_back(record_id_from_json(id));
        return ids;
    }
    for (const auto& token : split_csv(body)) {
        if (token.empty()) throw_validation("empty id in list");
        std::int64_t n = 0;
        const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), n);
        if (ec == std::errc() && end == token.data() + token.size()) ids.emplace_back(n);
        else ids.emplace_back(token);
    }
    return ids;
}

MetricKind metric_or_throw(const std::string& name) {
    const auto m = parse_metric(name);
    if (!m) throw_validation("unknown metric '" + name + "'");
    return *m;
}

Client open_client(const std::string& config_path) {
    return Client::connect(ClientConfig::load(config_path));
}

bool has_collection(const Client& client, const std::string& name) {
    const auto names = client.list_collections();
    return std::find(names.begin(), names.end(), name) != names.end();
}

struct Settings {
    std::string config;
    std::string collection;
    std::size_t dimension = 0;
    std::string metric = "cosine";
    std::string file;
    std::size_t batch_size = 100;
    bool create = false;
    std::string vector;
    std::string vector_file;
    std::size_t top_k = 10;
    std::string filter;
    std::string params;
    std::string ids;
    std::string target;
    // bench
    std::string op = "upsert";
    std::string batch_sizes;
    std::size_t iterations = 1000;
    std::size_t warmup = 100;
    std::size_t concurrency = 16;
    std::optional<double> per_call_ms;
    std::optional<double> per_record_ms;
    std::uint64_t seed = 42;
    std::string json_path;
    double window_s = 10.0;
};

int cmd_ingest(const Settings& s, std::ostream& out) {
    const Client client = open_client(s.config);
    if (s.batch_size < 1) throw_validation("--batch-size must be at least 1");
    if (s.create && !has_collection(client, s.collection)) {
        if (s.dimension < 1) throw_validation("--create needs --dimension");
        client.create_collection(s.collection, s.dimension, metric_or_throw(s.metric));
    }
    std::ifstream in(s.file);
    if (!in) throw UnifiedError(ErrorCode::ConfigurationError, "cannot read '" + s.file + "'");

    std::vector<Record> batch;
    std::size_t first_line = 0;
    std::size_t line_no = 0;
    std::size_t total = 0;
    const auto flush = [&] {
        if (batch.empty()) return;
        try {
            total += client.upsert(s.collection, batch);
        } catch (const UnifiedError& e) {
            throw UnifiedError(e.code(), "lines " + std::to_string(first_line) + "-" + std::to_string(line_no) + ": " +
                                             e.message(), e.provider());
        }
        batch.clear();
    };
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        try {
            if (batch.empty()) first_line = line_no;
            batch.push_back(record_from_line(line));
        } catch (const UnifiedError& e) {
            throw UnifiedError(e.code(), "line " + std::to_string(line_no) + ": " + e.message(), e.provider());
        }
        if (batch.size() == s.batch_size) flush();
    }
    flush();
    out << "ingested " << total << "\n";
    return kSuccess;
}

int cmd_query(const Settings& s, std::ostream& out) {
    if (s.vector.empty() == s.vector_file.empty()) throw_validation("give exactly one of --vector or --vector-file");
    const auto vector = parse_vector(s.vector.empty() ? read_file(s.vector_file) : s.vector);
    std::optional<FilterSource> filter;
    if (!s.filter.empty()) filter = parse_json(s.filter, "filter");
    ProviderParams params = ProviderParams::object();
    if (!s.params.empty()) {
        try {
            params = ProviderParams::parse(s.params);
        } catch (const ProviderParams::parse_error& e) {
            throw_validation(std::string("params is not valid JSON: ") + e.what());
        }
    }
    const Client client = open_client(s.config);
    for (const auto& r : client.query(s.collection, vector, s.top_k, filter, params)) {
        Json line = Json::object();
        line["id"] = record_id_to_json(r.id);
        line["similarity_score"] = r.similarity_score;
        line["payload"] = r.payload ? payload_to_json(*r.payload) : Json(nullptr);
        out << line.dump() << "\n";
    }
    return kSuccess;
}

int cmd_translate(const Settings& s, std::ostream& out) {
    const auto target = parse_target(s.target);
    if (!target) throw_validation("unknown target '" + s.target + "'");
    const NativeFilter native = transpile(*target, parse_filter_text(s.filter));
    std::string text;
    if (const auto* json = std::get_if<NativeJson>(&native.body)) text = json->dump(2);
    else text = native.text();
    if (!text.empty()) out << text << "\n";
    return kSuccess;
}

int cmd_bench(const Settings& s, std::ostream& out) {
    bench::Options options;
    if (!s.config.empty()) options.config = nlohmann::json::parse(read_file(s.config), nullptr, false);
    if (options.config.is_discarded() || !options.config.is_object()) {
        throw UnifiedError(ErrorCode::ConfigurationError, "config must be a JSON object");
    }
    if (s.per_call_ms) options.config["per_call_latency_ms"] = *s.per_call_ms;
    if (s.per_record_ms) options.config["per_record_latency_ms"] = *s.per_record_ms;
    const auto op = bench::parse_op(s.op);
    if (!op) throw_validation("unknown bench op '" + s.op + "'");
    options.op = *op;
    if (!s.batch_sizes.empty()) {
        options.batch_sizes.clear();
        for (const auto& token : split_csv(s.batch_sizes)) {
            std::size_t n = 0;
            const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), n);
            if (ec != std::errc() || end != token.data() + token.size() || n < 1) {
                throw_validation("batch size '" + token + "' must be a positive integer");
            }
            options.batch_sizes.push_back(n);
        }
    }
    if (s.iterations < 1) throw_validation("--iterations must be at least 1");
    if (s.concurrency < 1) throw_validation("--concurrency must be at least 1");
    if (s.window_s < 0.0) throw_validation("--window-s must not be negative");
    options.top_k = s.top_k;
    options.iterations = s.iterations;
    options.warmup = s.warmup;
    options.concurrency = s.concurrency;
    options.seed = s.seed;
    options.window_seconds = s.window_s;

    const auto reports = bench::run(options);
    nlohmann::ordered_json document = nlohmann::ordered_json::array();
    for (const auto& r : reports) document.push_back(bench::to_json(r));
    out << bench::render_table(reports) << document.dump(2) << "\n";
    if (!s.json_path.empty()) {
        std::ofstream file(s.json_path, std::ios::binary | std::ios::trunc);
        if (!file) throw UnifiedError(ErrorCode::ConfigurationError, "cannot write '" + s.json_path + "'");
        file << document.dump(2) << "\n";
    }
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Settings s;
    CLI::App app{"Unified vector database client", "vecgate"};
    app.require_subcommand(1);

    const auto add_config = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--config", s.config, "JSON client configuration");
        if (required) opt->required();
    };
    const auto add_collection = [&](CLI::App* sub) {
        sub->add_option("--collection", s.collection, "Collection name")->required();
    };

    auto* create = app.add_subcommand("create-collection", "Create a collection");
    add_config(create, true);
    add_collection(create);
    create->add_option("--dimension", s.dimension)->required();
    create->add_option("--metric", s.metric, "cosine, euclidean or dotproduct");

    auto* drop = app.add_subcommand("delete-collection", "Delete a collection");
    add_config(drop, true);
    add_collection(drop);

    auto* list = app.add_subcommand("list-collections", "List collections");
    add_config(list, true);

    auto* ingest = app.add_subcommand("ingest", "Upsert records from a JSONL file");
    add_config(ingest, true);
    add_collection(ingest);
    ingest->add_option("--file", s.file, "JSONL records")->required();
    ingest->add_option("--batch-size", s.batch_size);
    ingest->add_flag("--create", s.create, "Create the collection when missing");
    ingest->add_option("--dimension", s.dimension);
    ingest->add_option("--metric", s.metric);

    auto* query = app.add_subcommand("query", "Nearest-neighbour query");
    add_config(query, true);
    add_collection(query);
    query->add_option("--vector", s.vector, "JSON list or comma separated numbers");
    query->add_option("--vector-file", s.vector_file);
    query->add_option("--top-k", s.top_k);
    query->add_option("--filter", s.filter, "Filter document (JSON)");
    query->add_option("--params", s.params, "Provider parameters (JSON), passed through");

    auto* fetch = app.add_subcommand("fetch", "Fetch records by id");
    add_config(fetch, true);
    add_collection(fetch);
    fetch->add_option("--ids", s.ids)->required();

    auto* remove = app.add_subcommand("delete", "Delete records by id");
    add_config(remove, true);
    add_collection(remove);
    remove->add_option("--ids", s.ids)->required();

    auto* translate = app.add_subcommand("translate", "Print the native form of a filter");
    translate->add_option("--target", s.target, "pinecone, weaviate, qdrant or milvus")->required();
    translate->add_option("--filter", s.filter)->required();

    auto* bench_cmd = app.add_subcommand("bench", "Measure middleware overhead against direct calls");
    add_config(bench_cmd, false);
    bench_cmd->add_option("--op", s.op, "upsert, query or query-filtered");
    bench_cmd->add_option("--batch-sizes", s.batch_sizes, "e.g. 1,100,1000");
    bench_cmd->add_option("--top-k", s.top_k);
    bench_cmd->add_option("--iterations", s.iterations);
    bench_cmd->add_option("--warmup", s.warmup);
    bench_cmd->add_option("--concurrency", s.concurrency);
    bench_cmd->add_option("--per-call-ms", s.per_call_ms);
    bench_cmd->add_option("--per-record-ms", s.per_record_ms);
    bench_cmd->add_option("--seed", s.seed);
    bench_cmd->add_option("--json", s.json_path, "Also write the reports here");
    bench_cmd->add_option("--window-s", s.window_s, "Throughput window per mode; 0 skips it");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        if (create->parsed()) {
            open_client(s.config).create_collection(s.collection, s.dimension, metric_or_throw(s.metric));
            return kSuccess;
        }
        if (drop->parsed()) {
            open_client(s.config).delete_collection(s.collection);
            return kSuccess;
        }
        if (list->parsed()) {
            for (const auto& name : open_client(s.config).list_collections()) out << name << "\n";
            return kSuccess;
        }
        if (ingest->parsed()) return cmd_ingest(s, out);
        if (query->parsed()) return cmd_query(s, out);
        if (fetch->parsed()) {
            const auto ids = parse_ids(s.ids);
            for (const auto& r : open_client(s.config).fetch(s.collection, ids)) out << record_to_line(r) << "\n";
            return kSuccess;
        }
        if (remove->parsed()) {
            const auto ids = parse_ids(s.ids);
            out << "deleted " << open_client(s.config).delete_records(s.collection, ids) << "\n";
            return kSuccess;
        }
        if (translate->parsed()) return cmd_translate(s, out);
        return cmd_bench(s, out);
    } catch (const UnifiedError& e) {
        err << "error: " << to_string(e.code()) << ": " << e.message() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: InternalError: " << e.what() << "\n";
        return kBackend;
    }
}

}  // namespace vecgate::cli
