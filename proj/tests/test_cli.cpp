#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

#ifndef WITTLAB_CLI_PATH
#error "WITTLAB_CLI_PATH must point at the built binary"
#endif
#ifndef WITTLAB_CONFIG_DIR
#error "WITTLAB_CONFIG_DIR must point at the configs directory"
#endif

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr interleaved
};

CmdResult run_cli(const std::string& args) {
    CmdResult res;
    std::string cmd = std::string(WITTLAB_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) res.output.append(buf, got);
    int status = pclose(pipe);
    res.exit_code = WEXITSTATUS(status);
    return res;
}

std::string cfg(const char* name) {
    return std::string("--config ") + WITTLAB_CONFIG_DIR + "/" + name + " ";
}

}  // namespace

TEST_CASE("exit codes") {
    CHECK(run_cli("ring info").exit_code == 0);
    CHECK(run_cli("").exit_code == 2);                    // subcommand required
    CHECK(run_cli("frobulate").exit_code == 2);           // unknown subcommand
    CHECK(run_cli("delta apply \"t +\"").exit_code == 2); // parse error
    CHECK(run_cli("verify nope").exit_code == 2);         // unknown suite
    CHECK(run_cli("witt add \"(1,0)\" \"(1,0,0)\"").exit_code == 2);  // length mismatch
    CHECK(run_cli(cfg("does_not_exist.cfg") + "ring info").exit_code == 2);
}

TEST_CASE("pinned text outputs") {
    CHECK(run_cli("delta exp --n 2 t").output == "(t, 1+t, t+t^2)\n");
    CHECK(run_cli("delta taylor --n 2 t").output == "(0, 1, 0)\n");
    CHECK(run_cli("delta taylor --n 2 t^2").output == "(0, 0, 1)\n");
    CHECK(run_cli("delta apply t*u").output == "(1+t)*u^2\n");
    CHECK(run_cli(cfg("mixed2.cfg") + "witt add \"(1,0)\" \"(1,0)\"").output == "(2, -1)\n");
    CHECK(run_cli(cfg("mixed2.cfg") + "witt unghost \"(2,2)\"").output == "(2, -1)\n");
    CHECK(run_cli(cfg("mixed2.cfg") + "witt frob \"(0,1)\"").output == "(2)\n");
    CHECK(run_cli(cfg("mixed2.cfg") + "delta exp --n 1 3").output == "(3, -3)\n");
    CHECK(run_cli(cfg("ramified.cfg") + "delta apply i").output == "1\n");
    CHECK(run_cli("witt teich --n 2 t").output == "(t, 0, 0)\n");
    CHECK(run_cli("witt ghost \"(t, 1+t, t+t^2)\"").output == "(t, t, t)\n");
}

TEST_CASE("universal polynomial output") {
    auto res = run_cli(cfg("mixed2.cfg") + "witt universal --n 1 --op add");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("S_1") != std::string::npos);
    CHECK(res.output.find("x0*y0") != std::string::npos);  // the p = 2 carry
}

TEST_CASE("json envelopes parse and carry the schema") {
    auto res = run_cli("--json delta exp --n 2 t");
    REQUIRE(res.exit_code == 0);
    auto j = nlohmann::json::parse(res.output);
    CHECK(j["schema"] == 1);
    CHECK(j["kind"] == "witt");
    CHECK(j["n"] == 2);
    REQUIRE(j["components"].size() == 3);
    CHECK(j["components"][0] == "t");
    CHECK(j["components"][1] == "1+t");
    CHECK(j["components"][2] == "t+t^2");

    auto ghost = nlohmann::json::parse(run_cli("--json witt ghost \"(t, 1+t, t+t^2)\"").output);
    CHECK(ghost["kind"] == "ghost");

    auto ring = nlohmann::json::parse(run_cli(cfg("eqchar4.cfg") + "--json ring info").output);
    CHECK(ring["ring"]["q"] == 4);
    CHECK(ring["ring"]["modulus"] == "1+z+z^2");

    auto table = nlohmann::json::parse(run_cli("--json delta terms --n 2 t").output);
    CHECK(table["kind"] == "term_table");
    CHECK(table["n"] == 2);
    CHECK(table["entries"].is_array());
    CHECK(table["sums"].is_array());
    for (const auto& ent : table["entries"]) {
        CHECK(ent.contains("i"));
        CHECK(ent.contains("j"));
        CHECK(ent.contains("poly"));
        CHECK(ent.contains("valuation"));
    }
}

TEST_CASE("global flags work after subcommands") {
    auto a = run_cli("--json delta exp --n 1 t");
    auto b = run_cli("delta exp --json --n 1 t");
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(a.output == b.output);
}

TEST_CASE("verify json is deterministic modulo timing") {
    auto strip = [](std::string s) {
        std::string out;
        std::size_t start = 0;
        while (start < s.size()) {
            std::size_t end = s.find('\n', start);
            if (end == std::string::npos) end = s.size();
            std::string line = s.substr(start, end - start);
            if (line.find("wall_ms") == std::string::npos) out += line + "\n";
            start = end + 1;
        }
        return out;
    };
    auto a = run_cli("--json verify ghost_hom --seed 9 --trials 5");
    auto b = run_cli("--json verify ghost_hom --seed 9 --trials 5");
    REQUIRE(a.exit_code == 0);
    CHECK(strip(a.output) == strip(b.output));

    auto j = nlohmann::json::parse(a.output);
    CHECK(j["kind"] == "verify");
    CHECK(j["verdict"] == "PASS");
    REQUIRE(j["reports"].size() == 5);  // one per default ring
    for (const auto& r : j["reports"]) {
        CHECK(r["status"] == "PASS");
        CHECK(r["seed"] == 9);
        CHECK(r["trials"] == 5);
        CHECK(r["failures"].empty());
    }
}

TEST_CASE("verify text mode reports skips") {
    auto res = run_cli("verify modpip --seed 1 --trials 3");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("SKIPPED modpip @ mixed2") != std::string::npos);
    CHECK(res.output.find("requires an EqualChar ring") != std::string::npos);
    CHECK(res.output.find("verdict: PASS") != std::string::npos);
}

TEST_CASE("verify restricted to the configured ring") {
    auto res = run_cli(cfg("eqchar2_perturbed.cfg") + "verify thm_val --seed 2 --trials 10");
    CHECK(res.exit_code == 0);
    auto lines = res.output;
    // Only one ring, labelled from the config.
    CHECK(lines.find("thm_val") != std::string::npos);
    CHECK(lines.find("mixed") == std::string::npos);
}

TEST_CASE("constants enumeration via the CLI") {
    auto res = run_cli("delta constants --gen-degree 2 --t-degree 2");
    CHECK(res.exit_code == 0);
    CHECK(res.output ==
          "0\n1\nu\n1 + u\nu^2\n1 + u^2\nu + u^2\n1 + u + u^2\n");
    // Mixed characteristic rings cannot enumerate.
    CHECK(run_cli(cfg("mixed2.cfg") + "delta constants").exit_code == 2);
}
