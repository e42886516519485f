#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct CmdResult {
    int status = -1;
    std::string out;
};

CmdResult run_cli(const std::string& args) {
    std::string cmd = std::string("\"") + BIN_PATH + "\" " + args + " 2>&1";
    CmdResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
    int rc = pclose(pipe);
    res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return res;
}

std::string write_temp(const std::string& name, const std::string& content) {
    fs::path p = fs::temp_directory_path() / name;
    std::ofstream(p) << content;
    return p.string();
}

std::string path_edges(int n) {
    std::string s;
    for (int i = 0; i + 1 < n; ++i) s += std::to_string(i) + " " + std::to_string(i + 1) + "\n";
    return s;
}

std::size_t count_of(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t at = text.find(needle); at != std::string::npos;
         at = text.find(needle, at + needle.size()))
        ++n;
    return n;
}

const char* kSixteen = "p=1;t=11;roots=(3:tree[0,0,0]),(5:path1),(7:path1)\n";

}  // namespace

TEST_CASE("exact command prints the number and a cover") {
    std::string caterpillar = write_temp(
        "cli_cat12.txt", "0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n2 8\n3 9\n4 10\n5 11\n");
    CmdResult res = run_cli("exact " + caterpillar);
    CHECK(res.status == 0);
    CHECK(res.out.rfind("b=4\n", 0) == 0);
    nlohmann::json j = nlohmann::json::parse(res.out.substr(res.out.find('\n') + 1));
    CHECK(j["valid"] == true);
    CHECK(j["max_radius"] == 3);

    std::string p16 = write_temp("cli_p16.txt", path_edges(16));
    CHECK(run_cli("exact " + p16).out.rfind("b=4\n", 0) == 0);
}

TEST_CASE("exact command refuses instances above the cap") {
    std::string p65 = write_temp("cli_p65.txt", path_edges(65));
    CmdResult res = run_cli("exact " + p65);
    CHECK(res.status == 3);
}

TEST_CASE("build command emits a certificate and a trace") {
    // Long spine: the leaf surplus is too thin for the direct route, so the
    // staged construction runs and leaves a trace.
    std::string bushy = write_temp(
        "cli_bushy.txt", "p=1;t=40;roots=(4:tree[0,0,0,0]),(6:tree[0,0,0,0]),(8:tree[0,0,0,0])\n");
    std::string trace = (fs::temp_directory_path() / "cli_trace.txt").string();
    CmdResult res = run_cli("build " + bushy + " --trace " + trace);
    REQUIRE(res.status == 0);
    nlohmann::json j = nlohmann::json::parse(res.out);
    CHECK(j["route"] == "proposition");
    CHECK(j["valid"] == true);
    CHECK(j["ball_count"] == 8);
    CHECK(j["n"] == 52);
    CHECK(j["trace_file"] == trace);

    std::ifstream in(trace);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.find("step=1 op=") != std::string::npos);

    std::string sixteen = write_temp("cli_sixteen.txt", kSixteen);
    nlohmann::json small = nlohmann::json::parse(run_cli("build " + sixteen).out);
    CHECK(small["route"] == "exact");
    CHECK(small["valid"] == true);
}

TEST_CASE("build command rejects what it cannot recognize") {
    std::string spider = write_temp(
        "cli_spider.txt", "0 1\n1 2\n2 3\n0 4\n4 5\n5 6\n0 7\n7 8\n8 9\n");
    CHECK(run_cli("build " + spider + " --p 1").status == 4);

    std::string junk = write_temp("cli_junk.txt", "zero one\n");
    CHECK(run_cli("build " + junk).status == 2);
    CHECK(run_cli("exact " + junk).status == 2);
}

TEST_CASE("verify campaign is deterministic across thread counts") {
    std::string campaign = write_temp("cli_campaign.txt",
                                      "# two small families\n"
                                      "p=0 t=20..40 k=0 mode=paths count=5\n"
                                      "p=1 t=12..30 k=1..3 mode=mixed count=7\n");
    CmdResult one = run_cli("verify --campaign " + campaign + " --seed 9 --jobs 1");
    CmdResult two = run_cli("verify --campaign " + campaign + " --seed 9 --jobs 2");
    CHECK(one.status == 0);
    CHECK(one.out == two.out);
    CHECK(one.out.find("total=12 passed=12 failed=0") != std::string::npos);

    CmdResult other = run_cli("verify --campaign " + campaign + " --seed 10");
    CHECK(other.status == 0);
    CHECK(other.out != one.out);
}

TEST_CASE("export renders roots and certificate balls") {
    std::string sixteen = write_temp("cli_sixteen.txt", kSixteen);
    CmdResult dot = run_cli("export " + sixteen + " --format dot");
    REQUIRE(dot.status == 0);
    CHECK(count_of(dot.out, "// root position=") == 3);
    CHECK(count_of(dot.out, "[label=\"s") == 11);

    std::string cert = write_temp("cli_cert.json", R"({"balls":[{"center":2,"radius":1}]})");
    CmdResult overlay = run_cli("export " + sixteen + " --format dot --certificate " + cert);
    CHECK(overlay.out.find("// ball 1: center=2 radius=1 spine=[2,4]") != std::string::npos);

    std::string out_path = (fs::temp_directory_path() / "cli_export.json").string();
    CmdResult filed = run_cli("export " + sixteen + " --format json --out " + out_path);
    CHECK(filed.status == 0);
    CHECK(filed.out.empty());
    std::ifstream in(out_path);
    nlohmann::json j = nlohmann::json::parse(in);
    CHECK(j["roots"].size() == 3);
    CHECK(j["n"] == 16);

    // Edge-list input retries recognition upward from the requested bound.
    std::string spider = write_temp(
        "cli_spider.txt", "0 1\n1 2\n2 3\n0 4\n4 5\n5 6\n0 7\n7 8\n8 9\n");
    CmdResult wide = run_cli("export " + spider + " --format dot --p 1");
    CHECK(wide.status == 0);
    CHECK(wide.out.find("p=3") != std::string::npos);
}
