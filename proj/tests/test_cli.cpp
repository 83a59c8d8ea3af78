// End-to-end tests against the installed binary: each case runs the real
// executable through the shell and freezes exact stdout text and exit codes.
// Diagnostics (the cost line, error text) go to stderr and are dropped here
// except where a case captures them on purpose.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
    std::string out;
    int code = -1;
};

Run cli(const std::string& args, const std::string& env_prefix = "",
        const std::string& redirect = "2>/dev/null") {
    std::string cmd = env_prefix + (env_prefix.empty() ? "" : " ") + FUSIBLE_CLI_PATH + " " +
                      args + " " + redirect;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    Run r;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempPath {
    std::string path;
    explicit TempPath(const std::string& stem)
        : path("/tmp/" + stem + "." + std::to_string(::getpid())) {
        std::remove(path.c_str());
    }
    ~TempPath() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("gap queries in text form") {
    CHECK(cli("m 2").out == "1/1024 (2^-10)\n");
    CHECK(cli("m 2").code == 0);
    CHECK(cli("m 33/16 --method erickson").out == "1/2048 (2^-11)\n");
    CHECK(cli("m 33/16 --method conjecture").out == "1/4096 (2^-12)\n");
    CHECK(cli("m 33/16 --method zigzag").out == "1/4096 (2^-12)\n");
    // Non-power-of-two results carry no annotation.
    CHECK(cli("m 0.4").out == "1/10\n");
    CHECK(cli("m -3/4").out == "3/4\n");
}

TEST_CASE("global flags are accepted before or after the subcommand") {
    Run leading = cli("--format csv m 2");
    Run trailing = cli("m 2 --format csv");
    CHECK(leading.code == 0);
    CHECK(leading.out == "x,method,m\n2,zigzag,1/1024\n");
    CHECK(trailing.out == leading.out);
}

TEST_CASE("gap query as JSON") {
    Run r = cli("m 2 --format json");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["command"] == "m");
    CHECK(j["x"] == "2");
    CHECK(j["method"] == "zigzag");
    CHECK(j["conjecture_assumed"] == false);
    CHECK(j["result"] == "1/1024");
    CHECK(j["pow2"] == -10);
    CHECK(j["budgets"]["memo_entries"] == 10000000);
    CHECK(j["budgets"]["loop_iterations"] == 100000000);
    CHECK(j["budgets"]["stack_frames"] == 200000);
    CHECK(j["budgets"]["enumeration_cap"] == 5000000);
}

TEST_CASE("repeated invocations are bit-identical") {
    Run a = cli("m 2 --format json");
    Run b = cli("m 2 --format json");
    CHECK(a.out == b.out);
    Run c = cli("verify statements --depth 5");
    Run d = cli("verify statements --depth 5");
    CHECK(c.out == d.out);
}

TEST_CASE("successor iterates") {
    CHECK(cli("successor 0 --n 3").out == "7/8\n");
    CHECK(cli("successor 1").out == "9/8\n");
    CHECK(cli("successor 1/2 --n 2").out == "7/8\n");
    CHECK(cli("successor 3/4 --n 0").out == "3/4\n");
}

TEST_CASE("table of gap exponents near 3") {
    Run r = cli("table1 --n-max 3 --method erickson");
    CHECK(r.code == 0);
    CHECK(r.out == "n,exponent\n1,31\n2,112\n3,503\n");

    Run j = cli("table1 --n-max 1 --method conjecture --format json");
    auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["command"] == "table1");
    CHECK(parsed["conjecture_assumed"] == true);
    REQUIRE(parsed["rows"].size() == 1);
    CHECK(parsed["rows"][0]["n"] == 1);
    CHECK(parsed["rows"][0]["exponent"] == 51);
}

TEST_CASE("level enumeration as CSV, with range filter and file sink") {
    CHECK(cli("enumerate --depth 2").out ==
          "value,min_depth,max_depth_observed\n"
          "0,0,0\n"
          "1/2,1,1\n"
          "3/4,2,2\n"
          "1,2,2\n");

    CHECK(cli("enumerate --depth 6 --min 1/2 --max 1").out ==
          "value,min_depth,max_depth_observed\n"
          "1/2,1,1\n"
          "3/4,2,2\n"
          "7/8,3,3\n"
          "15/16,4,4\n"
          "31/32,5,5\n"
          "63/64,6,6\n"
          "1,2,2\n");

    TempPath out("fusible_enum");
    Run r = cli("enumerate --depth 2 --out " + out.path);
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(slurp(out.path) ==
          "value,min_depth,max_depth_observed\n"
          "0,0,0\n"
          "1/2,1,1\n"
          "3/4,2,2\n"
          "1,2,2\n");
}

TEST_CASE("largest n-fuse values") {
    CHECK(cli("g 4").out == "5/4\n");
    CHECK(cli("g 8").out == "29/16\n");
    Run r = cli("g 12 --strategy conjecture");
    CHECK(r.code == 0);
    CHECK(r.out == "33/16 (conjecture assumed)\n");
}

TEST_CASE("pair decompositions of a target value") {
    CHECK(cli("dup 1").out == "1\n1/2 ~ 1/2\n");
    // Default completeness depth is the certified depth of the target, minus 1.
    CHECK(cli("dup 23/16").out ==
          "4\n"
          "1/2 ~ 11/8\n"
          "3/4 ~ 9/8\n"
          "7/8 ~ 1\n"
          "15/16 ~ 15/16\n");

    Run j = cli("dup 23/16 --format json");
    auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["count"] == 4);
    CHECK(parsed["depth"] == 4);
    REQUIRE(parsed["witnesses"].size() == 4);
    CHECK(parsed["witnesses"][0][0] == "1/2");
    CHECK(parsed["witnesses"][0][1] == "11/8");
}

TEST_CASE("ordinal position maps") {
    CHECK(cli("ordinal of 3/2").out == "w^(2) (conjecture assumed)\n");
    CHECK(cli("ordinal of 2").out == "w^(w) (conjecture assumed)\n");
    CHECK(cli("ordinal num 'w^(w)'").out == "2 (2^1) (conjecture assumed)\n");
    CHECK(cli("ordinal num w+1").out == "9/8 (conjecture assumed)\n");
    CHECK(cli("ordinal fs 1 --n 2").out == "5 (conjecture assumed)\n");
    CHECK(cli("ordinal exc w").out == "3 (conjecture assumed)\n");
}

TEST_CASE("growth hierarchy agrees across modes") {
    Run rec = cli("hierarchy w 2");
    Run def = cli("hierarchy w 2 --mode definition");
    CHECK(rec.code == 0);
    CHECK(rec.out == "12 (conjecture assumed)\n");
    CHECK(def.out == rec.out);
    // f at index w^(2) reaches the first deep-table exponent already at n = 1.
    CHECK(cli("hierarchy 'w^(2)' 1").out == "51 (conjecture assumed)\n");
    CHECK(cli("hierarchy 'w^(2)' 1 --mode definition").out == "51 (conjecture assumed)\n");
}

TEST_CASE("verification pass, refutation, and inconclusive map to the exit tristate") {
    Run pass = cli("verify counterexample");
    CHECK(pass.code == 0);
    CHECK(pass.out ==
          "counterexample: Pass\n"
          "  witness: simple recursion: m(31/16) = 1/2048\n"
          "  witness: simple recursion: m(33/16) = 1/2048\n"
          "  witness: 19/16 ~ 3969/2048 = 8449/4096 is a valid fuse, so the true gap at 33/16 "
          "is <= 1/4096\n"
          "  witness: zigzag: m(33/16) = 1/4096 <= 1/4096\n");

    Run fail = cli("verify counterexample --claimed-gap 1/1024");
    CHECK(fail.code == 2);
    CHECK(fail.out.find("counterexample: Fail") == 0);
    CHECK(fail.out.find("not 1/1024") != std::string::npos);

    // One level short of certifying the successor of 23/16: inconclusive-only.
    Run inc = cli("verify statements --depth 5");
    CHECK(inc.code == 3);
    CHECK(inc.out.find("gap-halving: Inconclusive") != std::string::npos);
    CHECK(inc.out.find("table too shallow for the successor of 23/16 (certified depth 5)") !=
          std::string::npos);

    CHECK(cli("verify statements --depth 6").code == 0);
}

TEST_CASE("verification families run green at their defaults") {
    Run cross = cli("verify cross");
    CHECK(cross.code == 0);
    CHECK(cross.out.find("first divergence at 33/16: simple recursion 1/2048 vs zigzag "
                         "1/4096") != std::string::npos);
    CHECK(cli("verify self-similarity").code == 0);
    CHECK(cli("verify closure").code == 0);
    CHECK(cli("verify self-similarity --a 1/2 --n 2 --depth 6").code == 0);
}

TEST_CASE("verification report as JSON and CSV") {
    Run j = cli("verify counterexample --format json");
    auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["command"] == "verify");
    CHECK(parsed["check"] == "counterexample");
    REQUIRE(parsed["reports"].size() == 1);
    const auto& rep = parsed["reports"][0];
    CHECK(rep["name"] == "counterexample");
    CHECK(rep["status"] == "Pass");
    CHECK(rep["conjecture_assumed"] == false);
    CHECK(rep["witnesses"].size() == 4);
    CHECK(rep["consumed"]["memo_entries"] == 404);
    CHECK(rep["consumed"]["peak_stack"] == 11);
    CHECK(rep["consumed"]["loop_iterations"] == 1106);

    Run c = cli("verify counterexample --format csv");
    CHECK(c.out.find("name,status,conjecture_assumed,witnesses,notes\n") == 0);
    CHECK(c.out.find("counterexample,Pass,false,\"simple recursion: m(31/16) = 1/2048; ") !=
          std::string::npos);
}

TEST_CASE("usage, parse, and domain errors exit 1") {
    CHECK(cli("m 1/0").code == 1);
    CHECK(cli("m x").code == 1);
    CHECK(cli("ordinal of 17/16").code == 1);
    CHECK(cli("ordinal num 1+w").code == 1);
    CHECK(cli("m 2 --bogus").code == 1);
    CHECK(cli("").code == 1);
    CHECK(cli("m 2 --method euler").code == 1);
    CHECK(cli("g 0").code == 1);
    CHECK(cli("table1 --n-max 0").code == 1);
}

TEST_CASE("an exhausted budget exits 4 with a typed message") {
    Run r = cli("m 2 --loop-iterations 5", "", "2>&1");
    CHECK(r.code == 4);
    CHECK(r.out.find("budget exceeded: loop iterations") != std::string::npos);
    CHECK(cli("m 2 --stack-frames 3").code == 4);
}

TEST_CASE("cache file round trip") {
    TempPath cache("fusible_cache");

    Run first = cli("--cache " + cache.path + " m 2");
    CHECK(first.code == 0);
    CHECK(first.out == "1/1024 (2^-10)\n");
    std::string contents = slurp(cache.path);
    CHECK(contents.find("zigzag\t2\t1/1024\n") != std::string::npos);

    Run second = cli("--cache " + cache.path + " m 2");
    CHECK(second.code == 0);
    CHECK(second.out == first.out);

    Run via_env = cli("m 2", "FUSIBLE_CACHE=" + cache.path);
    CHECK(via_env.code == 0);
    CHECK(via_env.out == first.out);

    // Scalar output is identical whether or not the cache primed the run.
    Run no_cache_json = cli("m 2 --format json");
    Run with_cache_json = cli("--cache " + cache.path + " m 2 --format json");
    CHECK(no_cache_json.out == with_cache_json.out);
}

TEST_CASE("cache corruption and poisoning are rejected") {
    TempPath cache("fusible_badcache");
    {
        std::ofstream out(cache.path);
        out << "garbage line here\n";
    }
    Run junk = cli("--cache " + cache.path + " m 2", "", "2>&1");
    CHECK(junk.code == 1);
    CHECK(junk.out.find("cache line needs 3 fields") != std::string::npos);

    {
        std::ofstream out(cache.path);
        out << "zigzag\t2\t1/512\n";
    }
    Run poisoned = cli("--cache " + cache.path + " m 2", "", "2>&1");
    CHECK(poisoned.code == 1);
    CHECK(poisoned.out.find("cache mismatch: zigzag m(2): cached 1/512, recomputed 1/1024") !=
          std::string::npos);
}

TEST_CASE("cost diagnostics go to the error stream, not stdout") {
    Run quiet = cli("m 2");
    CHECK(quiet.out.find("cost:") == std::string::npos);
    Run loud = cli("m 2", "", "2>&1");
    CHECK(loud.out.find("cost: memo=") != std::string::npos);
}
