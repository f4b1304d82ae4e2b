#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "json.hpp"
#include "kaleph/certificate.hpp"

// Drives the installed binary end to end through a shell. KALEPH_CLI_PATH
// is injected by the build.

namespace fs = std::filesystem;
using namespace kaleph;

namespace {

const fs::path& work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "kaleph-cli-tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args, const std::string& stdin_file = "",
                  const std::string& env_prefix = "") {
    static int counter = 0;
    fs::path capture = work_dir() / ("cli-out-" + std::to_string(counter++) + ".txt");
    std::string cmd =
        "cd " + work_dir().string() + " && " + env_prefix + KALEPH_CLI_PATH + " " + args;
    if (!stdin_file.empty()) cmd += " < " + stdin_file;
    cmd += " > " + capture.string() + " 2>&1";
    int raw = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(capture);
    std::ostringstream buf;
    buf << in.rdbuf();
    r.out = buf.str();
    return r;
}

std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

GameTrace load_trace(const fs::path& p) { return parse_trace(read_text(p)); }

} // namespace

TEST_CASE("play writes a trace that replays and reports its chain") {
    RunResult r = run_cli("play --maker vanilla --breaker passive --horizon 7 --out t7.json");
    CAPTURE(r.out);
    REQUIRE(r.code == 0);
    CHECK(r.out.find("maker_edges=7") != std::string::npos);
    CHECK(r.out.find("chain=4") != std::string::npos);

    GameTrace t = load_trace(work_dir() / "t7.json");
    CHECK_NOTHROW(replay(t));
    std::vector<Edge> expected = {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}, {0, 4}};
    std::vector<Edge> maker;
    for (const Claim& c : t.moves)
        if (c.player == Player::Maker) maker.push_back(c.edge);
    CHECK(maker == expected);

    RunResult rep = run_cli("replay t7.json");
    CHECK(rep.code == 0);
    CHECK(rep.out.find("ok turns=14 maker_moves=7 breaker_moves=7") != std::string::npos);
}

TEST_CASE("identical play invocations produce identical bytes") {
    RunResult a = run_cli("play --maker infinite-colours --breaker random --seed 6 --horizon 80 --out da.json");
    RunResult b = run_cli("play --maker infinite-colours --breaker random --seed 6 --horizon 80 --out db.json");
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(read_text(work_dir() / "da.json") == read_text(work_dir() / "db.json"));
}

TEST_CASE("multi-game runs fan out over per-game seeds and suffixes") {
    RunResult r = run_cli(
        "play --maker vanilla --breaker random --seed 10 --horizon 15 --games 2 --jobs 1 --out multi.json");
    REQUIRE(r.code == 0);
    GameTrace g0 = load_trace(work_dir() / "multi-g0.json");
    GameTrace g1 = load_trace(work_dir() / "multi-g1.json");
    CHECK(g0.config.seed == 10);
    CHECK(g1.config.seed == 11);
    CHECK(dump_trace(g0) != dump_trace(g1));
}

TEST_CASE("traces land in the directory named by the environment") {
    fs::path dest = work_dir() / "envdir";
    RunResult r = run_cli("play --maker vanilla --breaker passive --horizon 3", "",
                          "KALEPH_TRACE_DIR=" + dest.string() + " ");
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dest / "trace-vanilla-passive-h3-s0.json"));
}

TEST_CASE("flag and file errors map to the documented exit codes") {
    CHECK(run_cli("play --maker vanilla --breaker passive --horizon 0").code == 1);
    CHECK(run_cli("nonsense").code == 1);
    CHECK(run_cli("play --florps 3").code == 1);
    CHECK(run_cli("replay").code == 1);
    CHECK(run_cli("play --maker vanilla --breaker pairing --colouring modk:3 --horizon 2").code == 1);
    CHECK(run_cli("replay no-such-file.json").code == 3);
    write_text(work_dir() / "garbage.json", "not json at all");
    CHECK(run_cli("replay garbage.json").code == 3);
    CHECK(run_cli("certify garbage.json").code == 3);
}

TEST_CASE("certify accepts the honest chain and writes its report") {
    RunResult r = run_cli("certify t7.json --variant vanilla --out t7-report.json");
    CAPTURE(r.out);
    REQUIRE(r.code == 0);
    CHECK(r.out.find("verify=pass") != std::string::npos);
    auto j = nlohmann::json::parse(read_text(work_dir() / "t7-report.json"));
    CHECK(j["variant"] == "vanilla");
    CHECK(j["pass"] == true);
    CHECK(j["levels"] == 4);
}

TEST_CASE("certify under the wrong variant fails loudly") {
    RunResult r = run_cli("certify t7.json --variant finite-colours --k 2");
    CHECK(r.code == 2);
    CHECK(r.out.find("verify=fail") != std::string::npos);
}

TEST_CASE("replay rejects tampered traces") {
    auto j = nlohmann::json::parse(read_text(work_dir() / "t7.json"));
    auto turned = j;
    turned["moves"][0]["turn"] = 5;
    write_text(work_dir() / "turned.json", turned.dump(2) + "\n");
    CHECK(run_cli("replay turned.json").code == 3);

    auto swapped = j;
    swapped["moves"][1]["player"] = "M"; // two Maker moves in a row
    write_text(work_dir() / "swapped.json", swapped.dump(2) + "\n");
    CHECK(run_cli("replay swapped.json").code == 3);
}

TEST_CASE("metrics emits the growth curve as csv") {
    RunResult r = run_cli("metrics t7.json --variant vanilla --out t7.csv");
    REQUIRE(r.code == 0);
    std::istringstream csv(read_text(work_dir() / "t7.csv"));
    std::string line;
    REQUIRE(std::getline(csv, line));
    CHECK(line == "horizon,chain_length");
    std::vector<std::string> rows;
    while (std::getline(csv, line)) rows.push_back(line);
    CHECK(rows == std::vector<std::string>{"1,1", "2,2", "3,2", "4,3", "5,3", "6,3", "7,4"});
}

TEST_CASE("an interactive session can mirror the pairing breaker move for move") {
    RunResult autoplay =
        run_cli("play --maker vanilla --breaker pairing --seed 4 --horizon 10 --out auto.json");
    REQUIRE(autoplay.code == 0);
    GameTrace reference = load_trace(work_dir() / "auto.json");

    std::ostringstream script;
    for (const Claim& c : reference.moves)
        if (c.player == Player::Breaker)
            script << c.edge.lo << " " << c.edge.hi << "\n";
    write_text(work_dir() / "script.txt", script.str());

    RunResult human = run_cli("interactive --maker vanilla --seed 4 --horizon 10 --out human.json",
                              (work_dir() / "script.txt").string());
    CAPTURE(human.out);
    REQUIRE(human.code == 0);
    CHECK(human.out.find("session complete") != std::string::npos);
    CHECK(read_text(work_dir() / "human.json") == read_text(work_dir() / "auto.json"));

    CHECK(run_cli("certify auto.json --variant vanilla --pairing").code == 0);
    RunResult crt = run_cli("certify human.json --variant vanilla --pairing");
    CHECK(crt.code == 0);
    CHECK(crt.out.find("pairing_guarantee=pass") != std::string::npos);
}

TEST_CASE("interactive sessions re-prompt on bad input and honour quits") {
    std::ostringstream script;
    script << "0\n";      // one token
    script << "3 3\n";    // loop
    script << "0 1\n";    // claimed by maker's opening
    script << "5 6\n";    // fine
    script << "q\n";      // quit during the second block
    write_text(work_dir() / "messy.txt", script.str());
    RunResult r = run_cli("interactive --maker vanilla --horizon 5 --out messy.json",
                          (work_dir() / "messy.txt").string());
    CAPTURE(r.out);
    REQUIRE(r.code == 0);
    CHECK(r.out.find("enter two distinct vertex ids") != std::string::npos);
    CHECK(r.out.find("claimed by M at turn 1") != std::string::npos);
    CHECK(r.out.find("session aborted") != std::string::npos);

    // the aborted flag lives in the session, not the file: the written
    // trace is an ordinary truncated game that replays cleanly
    GameTrace t = load_trace(work_dir() / "messy.json");
    CHECK_NOTHROW(replay(t));
    CHECK(t.moves.size() == 3); // two maker moves and the one accepted block
}
