// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "generators.hpp"
#include "vecgate/backends.hpp"
#include "vecgate/bench.hpp"
#include "vecgate/client.hpp"
#include "vecgate/errors.hpp"
#include "vecgate/filter_dsl.hpp"
#include "vecgate/metric.hpp"
#include "vecgate/native_interpreter.hpp"
#include "vecgate/transpile.hpp"

using namespace vecgate;
namespace fs = std::filesystem;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& what) {
        if (!condition && ok) detail = what;
        ok = ok && condition;
    }
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string strip_newline(std::string s) {
    if (!s.empty() && s.back() == '\n') s.pop_back();
    return s;
}

Record rec(RecordId id, std::vector<double> v, std::optional<Payload> p = std::nullopt) {
    return Record{std::move(id), std::move(v), std::move(p)};
}

Check filter_round_trip() {
    Check c;
    const FilterSource drama = FilterSource::parse(R"({"genre":{"$eq":"drama"},"year":{"$gte":2020}})");
    const FilterAst a = parse_filter(drama);
    c.require(a == make_and({make_compare("genre", CompareOp::eq, Scalar{std::string("drama")}),
                             make_compare("year", CompareOp::gte, Scalar{std::int64_t{2020}})}),
              "drama/year structure: " + to_debug_string(a));
    c.require(parse_filter(serialize_filter(a)) == a, "drama/year round trip");

    const FilterSource scifi = FilterSource::parse(R"({"$and":[{"year":{"$gt":2020}},{"genre":"sci-fi"}]})");
    const FilterAst b = parse_filter(scifi);
    const auto* root = std::get_if<And>(&b.node());
    c.require(root && root->children.size() == 2, "sci-fi root is not a two-child And");
    if (root && root->children.size() == 2) {
        const auto* gt = std::get_if<Compare>(&root->children[0].node());
        const auto* eq = std::get_if<Compare>(&root->children[1].node());
        c.require(gt && gt->op == CompareOp::gt && gt->field == "year", "first child is not GT on year");
        c.require(eq && eq->op == CompareOp::eq && eq->field == "genre", "second child is not EQ on genre");
    }
    c.require(parse_filter(serialize_filter(b)) == b, "sci-fi round trip");
    c.require(serialize_filter(parse_filter(serialize_filter(b))) == serialize_filter(b), "canonical form unstable");
    return c;
}

Check transpiler_semantics() {
    Check c;
    fixtures::Rng rng(2024);
    constexpr int kPairs = 10000;
    int qdrant = 0, pinecone_strict = 0, weaviate_strict = 0, exact_pairs = 0, pushdown_ok = 0, inexact = 0;
    for (int i = 0; i < kPairs; ++i) {
        const FilterAst ast = fixtures::random_ast(rng);
        const Payload p = fixtures::random_payload(rng, 0.8);
        const bool expected = evaluate_filter(ast, &p);
        const bool q = interpret_native(transpile_qdrant(ast), &p);
        const bool pc = interpret_native(transpile_pinecone(ast), &p);
        const bool wv = interpret_native(transpile_weaviate(ast), &p);
        qdrant += q == expected;
        pinecone_strict += pc == expected;
        weaviate_strict += wv == expected;
        if (fixtures::negation_inexact(ast, p)) {
            ++inexact;
            const bool pushed = evaluate_filter(push_negations(ast), &p);
            pushdown_ok += (pc == pushed && wv == pushed);
        } else {
            exact_pairs += (pc == expected && wv == expected);
        }
    }
    const int exact_total = kPairs - inexact;
    std::ostringstream d;
    d << "qdrant " << qdrant << "/" << kPairs << "; pinecone " << pinecone_strict << "/" << kPairs << ", weaviate "
      << weaviate_strict << "/" << kPairs << " strict; negation-exact pairs " << exact_pairs << "/" << exact_total
      << "; negation-inexact pairs vs pushdown " << pushdown_ok << "/" << inexact;
    c.require(qdrant == kPairs && exact_pairs == exact_total && pushdown_ok == inexact, d.str());
    if (c.ok) c.detail = d.str();
    return c;
}

Check mapping_fidelity() {
    Check c;
    const auto qdrant = [](const char* text) {
        return std::get<NativeJson>(transpile_qdrant(parse_filter_text(text)).body);
    };
    c.require(qdrant(R"({"$and":[{"a":1},{"b":2}]})").contains("must"), "$and is not must");
    c.require(qdrant(R"({"$or":[{"a":1},{"b":2}]})").contains("should"), "$or is not should");
    c.require(qdrant(R"({"$not":{"a":1}})").contains("must_not"), "$not is not must_not");

    const auto leaf = transpile_weaviate(parse_filter_text(R"({"year":{"$gte":2020}})"));
    const auto* l = std::get_if<WeaviateLeaf>(&std::get<WeaviateFilter>(leaf.body).where->node);
    c.require(l && l->op == WeaviateOperator::GreaterThanEqual, "$gte is not GreaterThanEqual");
    c.require(leaf.text().find("operator: GreaterThanEqual") != std::string::npos, "rendered $gte");

    const auto both = transpile_weaviate(parse_filter_text(R"({"genre":"drama","year":{"$gte":2020}})"));
    const auto* logical = std::get_if<WeaviateLogical>(&std::get<WeaviateFilter>(both.body).where->node);
    c.require(logical && logical->op == WeaviateOperator::And && logical->operands.size() == 2,
              "And is not operator And with two operands");
    c.require(both.text().find("operator: And, operands: [") != std::string::npos, "rendered And");

    const fs::path golden = VECGATE_GOLDEN_DIR;
    int files = 0;
    for (const auto& entry : fs::directory_iterator(golden)) {
        const std::string name = entry.path().filename().string();
        const std::string suffix = ".filter.json";
        if (name.size() <= suffix.size() || name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0) {
            continue;
        }
        const std::string stem = name.substr(0, name.size() - suffix.size());
        const FilterAst ast = parse_filter_text(slurp(entry.path()));
        c.require(transpile_weaviate(ast).text() == strip_newline(slurp(golden / (stem + ".weaviate.txt"))),
                  "golden weaviate mismatch: " + stem);
        c.require(transpile_milvus(ast).text() == strip_newline(slurp(golden / (stem + ".milvus.txt"))),
                  "golden milvus mismatch: " + stem);
        files += 2;
    }
    c.require(files >= 18, "golden files missing");
    if (c.ok) c.detail = std::to_string(files) + " golden files";
    return c;
}

Check knn_exactness() {
    Check c;
    fixtures::Rng rng(1000);
    int queries = 0;
    for (int store = 0; store < 100 && c.ok; ++store) {
        const auto metric = static_cast<MetricKind>(store % 3);
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 1000)(rng);
        const auto rows = fixtures::random_records(rng, n, 25, metric);
        MemoryAdapter adapter("memory");
        adapter.create_collection({"c", 25, metric}, ProviderParams::object());
        adapter.upsert("c", rows);
        for (int q = 0; q < 6; ++q) {
            const auto v = fixtures::random_vector(rng, 25);
            const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 100)(rng);
            const FilterAst filter = q < 2 ? FilterAst{} : fixtures::random_ast(rng, 3);
            const auto got = adapter.query("c", v, k, filter, ProviderParams::object());
            const auto want = fixtures::exhaustive_knn(rows, metric, v, k, filter);
            ++queries;
            bool same = got.size() == want.size();
            for (std::size_t i = 0; same && i < got.size(); ++i) {
                same = got[i].id == want[i].id && got[i].payload == want[i].payload &&
                       std::abs(got[i].similarity_score - want[i].similarity_score) <= 1e-12;
            }
            c.require(same, "store " + std::to_string(store) + " query " + std::to_string(q) + " differs");
        }
    }
    if (c.ok) c.detail = "100 stores, " + std::to_string(queries) + " queries";
    return c;
}

Check score_normalization() {
    Check c;
    fixtures::Rng rng(5);
    struct Range {
        MetricKind metric;
        double lo, hi;
    };
    for (const auto& [metric, lo, hi] :
         {Range{MetricKind::cosine, -1.0, 1.0}, Range{MetricKind::euclidean, 0.0, 50.0},
          Range{MetricKind::dotproduct, -20.0, 20.0}}) {
        std::uniform_real_distribution<double> dist(lo, hi);
        for (int set = 0; set < 1000; ++set) {
            std::vector<double> raw(32);
            for (auto& r : raw) r = dist(rng);
            std::vector<double> norm;
            for (double r : raw) {
                const double s = normalize_score(metric, r);
                c.require(s >= 0.0 && s <= 1.0, "score out of [0,1]");
                norm.push_back(s);
            }
            std::vector<std::size_t> native(raw.size()), normalized(raw.size());
            std::iota(native.begin(), native.end(), 0);
            std::iota(normalized.begin(), normalized.end(), 0);
            const bool higher = direction_of(metric) == Direction::higher_better;
            std::stable_sort(native.begin(), native.end(),
                             [&](auto a, auto b) { return higher ? raw[a] > raw[b] : raw[a] < raw[b]; });
            std::stable_sort(normalized.begin(), normalized.end(), [&](auto a, auto b) { return norm[a] > norm[b]; });
            c.require(native == normalized, std::string("rank order differs for ") + std::string(to_string(metric)));
        }
    }
    c.require(normalize_score(MetricKind::cosine, 1.0) == 1.0, "cosine(1) != 1");
    c.require(normalize_score(MetricKind::euclidean, 0.0) == 1.0, "euclidean(0) != 1");
    c.require(normalize_score(MetricKind::cosine, -1.0) == 0.0, "cosine(-1) != 0");
    return c;
}

Check migration_demo() {
    Check c;
    const fs::path demo = VECGATE_DEMO_DIR;
    const fs::path root =
        fs::temp_directory_path() /
        ("vecgate-acceptance-" + std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
    const std::string original = slurp(demo / "config.json");
    const auto at = original.find("\"memory-a\"");
    c.require(at != std::string::npos, "demo config lacks memory-a");
    if (!c.ok) return c;
    std::string migrated = original;
    migrated.replace(at, 10, "\"memory-b\"");
    std::vector<std::string> outputs;
    for (const auto& [name, text] : {std::pair{"a", original}, std::pair{"b", migrated}}) {
        const fs::path work = root / name;
        fs::create_directories(work);
        std::ofstream(work / "config.json") << text;
        const std::string cmd = "cd '" + work.string() + "' && sh '" + (demo / "run.sh").string() + "' '" +
                                VECGATE_CLI_PATH + "' config.json > out.txt 2>&1";
        c.require(std::system(cmd.c_str()) == 0, std::string("demo failed under provider ") + name);
        outputs.push_back(slurp(work / "out.txt"));
    }
    fs::remove_all(root);
    c.require(!outputs[0].empty() && outputs[0] == outputs[1], "outputs differ");
    if (c.ok) c.detail = std::to_string(outputs[0].size()) + " identical bytes";
    return c;
}

Check overhead_trend() {
    Check c;
    bench::Options options;
    options.config = {{"provider", "simulated"}, {"per_call_latency_ms", 1.0}, {"per_record_latency_ms", 0.01}};
    options.batch_sizes = {1, 1000};
    options.iterations = 1000;
    options.warmup = 100;
    options.window_seconds = 0.0;
    const auto upserts = bench::run(options);

    options.op = bench::Op::query_filtered;
    options.top_k = 10;
    const auto filtered = bench::run(options);

    for (const auto& r : upserts) {
        const auto j = bench::to_json(r);
        const double direct = j["direct_latency_ms"]["mean"].get<double>();
        const double middle = j["middleware_latency_ms"]["mean"].get<double>();
        c.require(std::abs(j["overhead_percent"].get<double>() - (middle - direct) / direct * 100.0) <= 1e-9,
                  "reported overhead does not match its means");
    }
    const double added_ms = filtered[0].middleware.mean_ms - filtered[0].direct.mean_ms;
    c.require(added_ms < 1.0, "filtered query added latency " + std::to_string(added_ms) + " ms");

    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "overhead batch=1 %.4f%% (%.4f vs %.4f ms), batch=1000 %.4f%% (%.4f vs %.4f ms); "
                  "filtered query added %.4f ms",
                  upserts[0].overhead_percent, upserts[0].middleware.mean_ms, upserts[0].direct.mean_ms,
                  upserts[1].overhead_percent, upserts[1].middleware.mean_ms, upserts[1].direct.mean_ms, added_ms);
    c.require(upserts[1].overhead_percent < upserts[0].overhead_percent,
              std::string("trend not observed: ") + buf);
    if (c.ok) c.detail = buf;
    return c;
}

/// Adapter that throws whatever `fault` throws before delegating.
class FaultyAdapter : public Adapter {
public:
    std::function<void()> fault;

    const std::string& provider() const noexcept override { return inner_.provider(); }
    void create_collection(const CollectionSpec& s, const ProviderParams& p) override {
        hit();
        inner_.create_collection(s, p);
    }
    void delete_collection(std::string_view n) override {
        hit();
        inner_.delete_collection(n);
    }
    std::vector<std::string> list_collections() override {
        hit();
        return inner_.list_collections();
    }
    std::size_t upsert(std::string_view c, std::span<const Record> r) override {
        hit();
        return inner_.upsert(c, r);
    }
    std::vector<Record> fetch(std::string_view c, std::span<const RecordId> i) override {
        hit();
        return inner_.fetch(c, i);
    }
    std::size_t delete_records(std::string_view c, std::span<const RecordId> i) override {
        hit();
        return inner_.delete_records(c, i);
    }
    std::vector<QueryResult> query(std::string_view c, std::span<const double> v, std::size_t k, const FilterAst& f,
                                   const ProviderParams& p) override {
        hit();
        return inner_.query(c, v, k, f, p);
    }

private:
    void hit() {
        if (fault) fault();
    }
    MemoryAdapter inner_{"faulty"};
};

Check error_unification() {
    Check c;
    struct Fault {
        std::string name;
        std::function<void()> raise;
        ErrorCode code;
        bool transient;
    };
    std::vector<Fault> faults;
    for (auto code : {ErrorCode::ConfigurationError, ErrorCode::AuthenticationError, ErrorCode::SchemaError,
                      ErrorCode::ValidationError, ErrorCode::NotFoundError, ErrorCode::ConnectionError,
                      ErrorCode::RateLimitError, ErrorCode::InternalError}) {
        const bool transient = code == ErrorCode::RateLimitError || code == ErrorCode::ConnectionError;
        faults.push_back({std::string(to_string(code)), [code] { throw NativeError("native", code); }, code, transient});
    }
    faults.push_back({"uncategorized", [] { throw NativeError("xyz"); }, ErrorCode::InternalError, false});
    faults.push_back({"uncategorized-transient", [] { throw NativeError("blip", std::nullopt, true); },
                      ErrorCode::InternalError, true});
    faults.push_back({"runtime_error", [] { throw std::runtime_error("raw"); }, ErrorCode::InternalError, false});
    faults.push_back({"bad_alloc", [] { throw std::bad_alloc(); }, ErrorCode::InternalError, false});
    faults.push_back({"int", [] { throw 7; }, ErrorCode::InternalError, false});

    const std::vector<std::pair<std::string, std::function<void(const Client&)>>> ops{
        {"create", [](const Client& cl) { cl.create_collection("z", 2); }},
        {"drop", [](const Client& cl) { cl.delete_collection("c"); }},
        {"list", [](const Client& cl) { cl.list_collections(); }},
        {"upsert", [](const Client& cl) { cl.upsert("c", std::vector{rec("a", {1, 1})}); }},
        {"fetch", [](const Client& cl) { cl.fetch("c", std::vector<RecordId>{"a"}); }},
        {"delete", [](const Client& cl) { cl.delete_records("c", std::vector<RecordId>{"a"}); }},
        {"query", [](const Client& cl) { cl.query("c", std::vector<double>{1, 1}, 3, FilterSource::parse(R"({"a":1})")); }},
    };
    int cases = 0;
    for (const auto& f : faults) {
        for (const auto& [op_name, op] : ops) {
            auto adapter = std::make_shared<FaultyAdapter>();
            const Client client(adapter);
            client.create_collection("c", 2);
            adapter->fault = f.raise;
            const std::string label = f.name + " via " + op_name;
            ++cases;
            try {
                op(client);
                c.require(false, label + ": no error raised");
            } catch (const UnifiedError& e) {
                c.require(e.code() == f.code, label + ": code " + std::string(to_string(e.code())));
                c.require(e.transient() == f.transient, label + ": transient flag");
                c.require(e.provider() == "faulty", label + ": provider");
            } catch (...) {
                c.require(false, label + ": raw error escaped");
            }
        }
    }
    // Simulated backend one-shot faults through the registry path.
    auto client = Client::connect(ClientConfig::from_json({{"provider", "simulated"}, {"per_call_latency_ms", 0.0}}));
    auto& sim = dynamic_cast<SimulatedAdapter&>(client.adapter());
    sim.inject_fault(NativeError("429 Too Many Requests", ErrorCode::RateLimitError));
    try {
        client.list_collections();
        c.require(false, "simulated fault not raised");
    } catch (const UnifiedError& e) {
        c.require(e.code() == ErrorCode::RateLimitError && e.transient(), "simulated rate limit");
    }
    ++cases;
    if (c.ok) c.detail = std::to_string(cases) + " injected faults";
    return c;
}

Check crud_contracts() {
    Check c;
    auto client = Client::connect(ClientConfig::from_json({{"provider", "memory"}}));
    client.create_collection("c", 3, MetricKind::cosine);
    const Record r1 = rec("r1", {1, 2, 3}, Payload{{"k", std::string("v")}});
    c.require(client.upsert("c", std::vector{r1}) == 1, "first upsert count");
    c.require(client.upsert("c", std::vector{r1}) == 1, "second upsert count");
    const std::vector<RecordId> all{"r1", "r2", "r3"};
    c.require(client.fetch("c", all) == std::vector{r1}, "idempotent upsert left extra rows");

    const Record replaced = rec("r1", {3, 2, 1});
    client.upsert("c", std::vector{replaced});
    c.require(client.fetch("c", all) == std::vector{replaced}, "replace-on-upsert");

    client.upsert("c", std::vector{rec("r2", {0, 1, 0})});
    const std::vector<RecordId> probe{"r3", "r2", "missing"};
    const auto fetched = client.fetch("c", probe);
    c.require(fetched.size() == 1 && fetched[0].id == RecordId{"r2"}, "fetch-omits-absent");

    const std::vector<RecordId> one{"r2"};
    const auto first = client.delete_records("c", one);
    const auto second = client.delete_records("c", one);
    c.require(first == 1 && second == 0, "delete twice counts");

    try {
        client.create_collection("c", 3, MetricKind::cosine);
        c.require(false, "duplicate create accepted");
    } catch (const UnifiedError& e) {
        c.require(e.code() == ErrorCode::SchemaError, "duplicate create code");
    }
    try {
        client.upsert("c", std::vector{rec("ok", {1, 1, 1}), rec("bad", {1, 1})});
        c.require(false, "wrong dimension accepted");
    } catch (const UnifiedError& e) {
        c.require(e.code() == ErrorCode::SchemaError, "wrong dimension code");
    }
    c.require(client.fetch("c", std::vector<RecordId>{"ok"}).empty(), "partial batch written");
    return c;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
        {"filter round trip", filter_round_trip},
        {"transpiler semantic preservation", transpiler_semantics},
        {"mapping fidelity", mapping_fidelity},
        {"k-NN exactness", knn_exactness},
        {"score normalization", score_normalization},
        {"migration case study", migration_demo},
        {"overhead trend", overhead_trend},
        {"error unification", error_unification},
        {"CRUD contracts", crud_contracts},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Check result;
        try {
            result = criteria[i].second();
        } catch (const std::exception& e) {
            result = {false, std::string("unexpected exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += !result.ok;
        std::printf("criterion %zu %s: %s (%.2f s)%s%s\n", i + 1, criteria[i].first.c_str(), result.ok ? "PASS" : "FAIL",
                    seconds, result.detail.empty() ? "" : " - ", result.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
