#include <gtest/gtest.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

class CliTest : public ::testing::Test {
protected:
    fs::path dir;
    std::string config;

    void SetUp() override {
        dir = fs::temp_directory_path() /
              ("vecgate-cli-" + std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
        fs::create_directories(dir);
        config = (dir / "config.json").string();
        std::ofstream(config) << nlohmann::json{{"provider", "memory"}, {"persist_path", (dir / "store.json").string()}};
    }
    void TearDown() override { fs::remove_all(dir); }

    Outcome run(std::vector<std::string> args) {
        std::ostringstream out, err;
        const int code = vecgate::cli::run(args, out, err);
        return {code, out.str(), err.str()};
    }

    std::string write_lines(const std::string& name, const std::vector<std::string>& lines) {
        const auto path = (dir / name).string();
        std::ofstream f(path);
        for (const auto& l : lines) f << l << "\n";
        return path;
    }

    std::vector<std::string> documents(int n) {
        std::vector<std::string> lines;
        for (int i = 0; i < n; ++i) {
            nlohmann::ordered_json j;
            j["id"] = "d" + std::to_string(i);
            j["vector"] = {1.0 + i, 0.5, -0.25 * i};
            j["payload"] = {{"n", i}};
            lines.push_back(j.dump());
        }
        return lines;
    }
};

}  // namespace

TEST_F(CliTest, IngestReportsCountAndIsIdempotent) {
    const auto file = write_lines("docs.jsonl", documents(100));
    const std::vector<std::string> args{"ingest",      "--config",     config, "--collection", "c", "--file", file,
                                        "--batch-size", "10",          "--create", "--dimension", "3"};
    auto r = run(args);
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "ingested 100\n");
    r = run(args);
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "ingested 100\n");

    r = run({"query", "--config", config, "--collection", "c", "--vector", "1,0.5,0", "--top-k", "1000"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(lines_of(r.out).size(), 100u);
}

TEST_F(CliTest, IngestNamesBadLine) {
    auto docs = documents(10);
    docs[6] = R"({"id":"d6","vector":[1,2,)";
    const auto file = write_lines("bad.jsonl", docs);
    const auto r = run({"ingest", "--config", config, "--collection", "c", "--file", file, "--create", "--dimension",
                        "3"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("line 7"), std::string::npos) << r.err;
    EXPECT_EQ(r.err.rfind("error: ValidationError: ", 0), 0u) << r.err;
}

TEST_F(CliTest, QueryOutput) {
    const auto file = write_lines("three.jsonl", {R"({"id":"a","vector":[0,0]})",
                                                  R"({"id":"b","vector":[3,4],"payload":{"tag":"x"}})",
                                                  R"({"id":7,"vector":[1,0]})"});
    ASSERT_EQ(run({"ingest", "--config", config, "--collection", "c", "--file", file, "--create", "--dimension", "2",
                   "--metric", "euclidean"})
                  .code,
              0);
    auto r = run({"query", "--config", config, "--collection", "c", "--vector", "0,0", "--top-k", "10"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out,
              "{\"id\":\"a\",\"similarity_score\":1.0,\"payload\":null}\n"
              "{\"id\":7,\"similarity_score\":0.5,\"payload\":null}\n"
              "{\"id\":\"b\",\"similarity_score\":0.16666666666666666,\"payload\":{\"tag\":\"x\"}}\n");
    r = run({"query", "--config", config, "--collection", "c", "--vector", "0,0", "--filter", R"({"tag":"x"})"});
    EXPECT_EQ(lines_of(r.out).size(), 1u);

    r = run({"fetch", "--config", config, "--collection", "c", "--ids", "7,zz"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(lines_of(r.out).size(), 1u);
    r = run({"delete", "--config", config, "--collection", "c", "--ids", "a,zz"});
    EXPECT_EQ(r.out, "deleted 1\n");
    r = run({"list-collections", "--config", config});
    EXPECT_EQ(r.out, "c\n");
}

TEST_F(CliTest, Translate) {
    auto r = run({"translate", "--target", "milvus", "--filter", R"({"genre":"drama","year":{"$gte":2020}})"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "(genre == \"drama\") && (year >= 2020)\n");
    r = run({"translate", "--target", "weaviate", "--filter", "{}"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "");
    r = run({"translate", "--target", "qdrant", "--filter", R"({"year":{"$lt":5}})"});
    EXPECT_EQ(nlohmann::json::parse(r.out), nlohmann::json::parse(R"({"must":[{"key":"year","range":{"lt":5}}]})"));
    r = run({"translate", "--target", "pinecone", "--filter", R"({"$not":{"a":1}})"});
    EXPECT_EQ(nlohmann::json::parse(r.out), nlohmann::json::parse(R"({"a":{"$ne":1}})"));
}

TEST_F(CliTest, ExitCodes) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"translate", "--target", "sql", "--filter", "{}"}).code, 2);
    auto r = run({"translate", "--target", "milvus", "--filter", R"({"$bogus":1})"});
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(r.err.rfind("error: ValidationError: ", 0), 0u) << r.err;
    r = run({"query", "--config", config, "--collection", "missing", "--vector", "1,2"});
    EXPECT_EQ(r.code, 3);
    EXPECT_EQ(r.err.rfind("error: NotFoundError: ", 0), 0u) << r.err;
    std::ofstream(config) << R"({"provider":"qdrant"})";
    r = run({"list-collections", "--config", config});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("qdrant"), std::string::npos);
    EXPECT_EQ(run({"list-collections", "--config", (dir / "none.json").string()}).code, 2);
}

TEST_F(CliTest, CollectionLifecycle) {
    EXPECT_EQ(run({"create-collection", "--config", config, "--collection", "x", "--dimension", "4"}).code, 0);
    EXPECT_EQ(run({"create-collection", "--config", config, "--collection", "x", "--dimension", "4"}).code, 2);
    EXPECT_EQ(run({"create-collection", "--config", config, "--collection", "y", "--dimension", "4", "--metric",
                   "manhattan"})
                  .code,
              2);
    EXPECT_EQ(run({"delete-collection", "--config", config, "--collection", "x"}).code, 0);
    EXPECT_EQ(run({"delete-collection", "--config", config, "--collection", "x"}).code, 3);
    EXPECT_EQ(run({"list-collections", "--config", config}).out, "");
}

TEST(MigrationDemoTest, ProvidersProduceIdenticalOutput) {
    const fs::path demo = VECGATE_DEMO_DIR;
    const fs::path root = fs::temp_directory_path() /
                          ("vecgate-demo-" + std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
    const std::string original = slurp(demo / "config.json");
    const auto at = original.find("\"memory-a\"");
    ASSERT_NE(at, std::string::npos);
    std::string migrated = original;
    migrated.replace(at, 10, "\"memory-b\"");

    std::vector<std::string> outputs;
    for (const auto& [name, text] : {std::pair{"a", original}, std::pair{"b", migrated}}) {
        const fs::path work = root / name;
        fs::create_directories(work);
        std::ofstream(work / "config.json") << text;
        const std::string cmd = "cd '" + work.string() + "' && sh '" + (demo / "run.sh").string() + "' '" +
                                VECGATE_CLI_PATH + "' config.json > out.txt 2>&1";
        ASSERT_EQ(std::system(cmd.c_str()), 0) << slurp(work / "out.txt");
        outputs.push_back(slurp(work / "out.txt"));
    }
    fs::remove_all(root);
    EXPECT_FALSE(outputs[0].empty());
    EXPECT_EQ(outputs[0], outputs[1]);
    EXPECT_NE(outputs[0].find("ingested 40"), std::string::npos);
}
