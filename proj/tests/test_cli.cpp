// Copyright 2026 The simullat Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "simullat/cli.hpp"
#include "simullat/logio.hpp"

namespace fs = std::filesystem;
using simullat::cli::run;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("simullat_cli_" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }

    std::string write(const std::string& name, const std::string& body) const {
        std::ofstream(path / name, std::ios::binary) << body;
        return (path / name).string();
    }
    std::string at(const std::string& name) const { return (path / name).string(); }
};

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

const char* kLog =
    R"({"prediction":"a b c","delays":[1000,2000,3000],"source_length":3000}
{"prediction":"x y z","delays":[500,3000,3000],"source_length":3000}
)";
const char* kRefs = "a b c\nx y z\n";
const char* kTables =
    R"({"source_words":[{"word":"a","start_ms":0,"end_ms":800}],"links":[[0,0],[1,0]]}
{"source_words":[{"word":"x","start_ms":0,"end_ms":300}],"links":[[0,0]]}
)";

}  // namespace

TEST_CASE("eval reports the requested corpus metrics") {
    TempDir dir;
    const auto logs = dir.write("run.log", kLog);
    const auto refs = dir.write("refs.txt", kRefs);
    const auto r = call({"eval", "--logs", logs, "--refs", refs, "--metrics", "AL,LAAL,YAAL"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema_version"] == simullat::cli::kSchemaVersion);
    CHECK(j["corpus"].size() == 3);
    CHECK(j["corpus"]["YAAL"]["value"].get<double>() == doctest::Approx(750));
    CHECK(j["corpus"]["LAAL"]["value"].get<double>() == doctest::Approx(1125));
    CHECK(j["tail_fraction"].get<double>() == doctest::Approx(3.0 / 6.0));
    CHECK(j["system_id"] == "run");
    CHECK(j["config"]["seed"] == 20250101);
}

TEST_CASE("eval without references for AL is a usage error") {
    TempDir dir;
    const auto logs = dir.write("run.log", kLog);
    const auto r = call({"eval", "--logs", logs, "--metrics", "AL"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--refs") != std::string::npos);
    CHECK(call({"eval", "--logs", logs, "--metrics", "AP,DAL,ATD"}).code == 0);
}

TEST_CASE("eval in character mode") {
    TempDir dir;
    const auto logs = dir.write(
        "zh.log", R"({"prediction":"你好。","delays":[500,1000,2000],"source_length":2000})");
    const auto r = call({"eval", "--logs", logs, "--metrics", "AP", "--lang-mode", "char"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["corpus"]["AP"]["value"].get<double>() == doctest::Approx(3.5 / 6.0));
    CHECK(j["segments"][0]["n_tokens"] == 3);
}

TEST_CASE("reports are byte-identical across runs and never partial") {
    TempDir dir;
    const auto logs = dir.write("run.log", kLog);
    const auto refs = dir.write("refs.txt", kRefs);
    const auto tables = dir.write("tables.jsonl", kTables);
    for (const char* name : {"one.json", "two.json"})
        REQUIRE(call({"eval", "--logs", logs, "--refs", refs, "--align-tables", tables, "--out",
                      dir.at(name)})
                    .code == 0);
    CHECK(simullat::io::read_file(dir.at("one.json")) ==
          simullat::io::read_file(dir.at("two.json")));

    const auto bad = dir.write("bad.log", "{\"prediction\":\"a\",\n");
    const auto r = call({"eval", "--logs", bad, "--refs", refs, "--out", dir.at("bad.json")});
    CHECK(r.code == 1);
    CHECK(r.err.find("line 1") != std::string::npos);
    CHECK_FALSE(fs::exists(dir.at("bad.json")));
    CHECK_FALSE(fs::exists(dir.at("bad.json.tmp")));
}

TEST_CASE("reseg writes per-segment text and delays") {
    TempDir dir;
    const auto logs = dir.write(
        "stream.log",
        R"({"prediction":"Hello world, good night.","delays":[500,900,1600,2100],"source_length":2500})");
    const auto manifest = dir.write("m.json", R"([
        {"start_ms":0,"duration_ms":1000,"reference":"Hello world,"},
        {"start_ms":1000,"duration_ms":1500,"reference":"good night."}])");
    const auto r = call({"reseg", "--logs", logs, "--manifest", manifest});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.size() == 2);
    CHECK(j[0]["text"] == "Hello world,");
    CHECK(j[1]["text"] == "good night.");
    CHECK(j[1]["delays_rel_ms"][0].get<double>() == 600);
    CHECK(call({"reseg", "--logs", logs}).code == 2);

    const auto lf = call({"eval", "--logs", logs, "--manifest", manifest});
    REQUIRE(lf.code == 0);
    const auto report = nlohmann::json::parse(lf.out);
    CHECK(report["regime"] == "long");
    CHECK(report["corpus"].contains("LongYAAL"));
}

TEST_CASE("truelat") {
    TempDir dir;
    const auto logs = dir.write("run.log", kLog);
    const auto tables = dir.write("tables.jsonl", kTables);
    const auto r = call({"truelat", "--logs", logs, "--align-tables", tables, "--format", "tsv"});
    REQUIRE(r.code == 0);
    // Segment 1: (1000-800 + 2000-800) / 2 = 700; segment 2: 500-300 = 200.
    CHECK(r.out == "metric\tvalue\tn_defined\tn_skipped\nTL\t450.000000\t2\t0\n");
}

TEST_CASE("compare and anomalous over a run directory") {
    TempDir dir;
    const auto refs = dir.write("refs.txt", kRefs);
    fs::create_directories(dir.path / "runs");
    const std::vector<std::string> logs = {
        R"({"prediction":"a b c","delays":[1000,2000,3000],"source_length":3000}
{"prediction":"x y z","delays":[500,3000,3000],"source_length":3000})",
        R"({"prediction":"a b c","delays":[300,600,900],"source_length":3000}
{"prediction":"x y z","delays":[200,400,3000],"source_length":3000})",
        R"({"prediction":"a b c","delays":[3000,3000,3000],"source_length":3000}
{"prediction":"x y z","delays":[100,3000,3000],"source_length":3000})"};
    const auto tables = dir.write("tables.jsonl", kTables);
    for (std::size_t i = 0; i < logs.size(); ++i) {
        const auto id = "sys" + std::to_string(i);
        const auto log = dir.write(id + ".log", logs[i]);
        REQUIRE(call({"eval", "--logs", log, "--refs", refs, "--align-tables", tables, "--out",
                      dir.at("runs/" + id + ".json")})
                    .code == 0);
    }
    const std::vector<std::string> args = {"compare", "--runs", dir.at("runs"), "--metrics",
                                           "LAAL,YAAL", "--bootstrap-n", "300"};
    const auto a = call(args);
    REQUIRE(a.code == 0);
    CHECK(a.out.rfind("metric\tbucket\taccuracy\tci_low\tci_high\tn_pairs\n", 0) == 0);
    CHECK(a.out.find("LAAL\tall\t") != std::string::npos);
    CHECK(call(args).out == a.out);
    auto threaded = args;
    threaded.insert(threaded.end(), {"--threads", "3"});
    CHECK(call(threaded).out == a.out);

    const auto an = call({"anomalous", "--runs", dir.at("runs"), "--metrics", "YAAL"});
    REQUIRE(an.code == 0);
    CHECK(an.out.rfind("system\tO\tO_e(YAAL)\tflag\n", 0) == 0);
    CHECK(an.out.find("sys2\t") != std::string::npos);

    CHECK(call({"compare", "--runs", dir.at("missing")}).code == 2);
    CHECK(call({"compare"}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
}
