#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtel/twistknot.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace qtel;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string out_file = std::string(QTEL_FIXTURES_DEFAULT) + "/../build/cli_test_out.txt";
    std::string cmd = std::string(QTEL_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
    int rc = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    std::remove(out_file.c_str());
    return {WEXITSTATUS(rc), ss.str()};
}

} // namespace

TEST_CASE("jones prints the exact Laurent polynomial") {
    RunResult r = run_cli("jones --p 1 --n 2 --format text");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "q + q^3 - q^4\n");
}

TEST_CASE("jhat agrees with the library") {
    RunResult r = run_cli("jhat --p 1 --n 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "q^5\n");
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("jones --p 1 --bogus 3").exit_code == 2);
    CHECK(run_cli("jones --p 1 --n 2 --format yaml").exit_code == 2);
}

TEST_CASE("recursion emits round-trippable json") {
    RunResult r = run_cli("recursion --p 1 --format json");
    REQUIRE(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j.at("order").get<int>() == 1);
    auto sym = ExprSymbols::operator_e();
    std::vector<RatFun> coeffs;
    for (auto& c : j.at("coeffs")) coeffs.push_back(parse_ratfun(c.get<std::string>(), sym));
    RatFun rhs = parse_ratfun(j.at("rhs").get<std::string>(), sym);
    InhomRec parsed{OreOp(coeffs), rhs};
    FixtureRec fix = load_fixture_rec(1, fixture_dir_or_default(""));
    CHECK(rec_equal_up_to_unit(parsed, fix.rec));
    CHECK(j.contains("certificates"));
}

TEST_CASE("output is byte-identical across runs") {
    RunResult a = run_cli("recursion --p 1 --format json --seed 42");
    RunResult b = run_cli("recursion --p 1 --format json --seed 42");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    RunResult c = run_cli("jones --p -2 --n 5");
    RunResult d = run_cli("jones --p -2 --n 5");
    CHECK(c.out == d.out);
}

TEST_CASE("verify passes for the figure-eight knot") {
    RunResult r = run_cli("verify --p -1 --nmax 8");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("verify: pass") != std::string::npos);
}

TEST_CASE("specialize reports the q = 1 shadow") {
    RunResult r = run_cli("specialize --p 1 --format json");
    REQUIRE(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    auto lq = ExprSymbols::comm_lq();
    RatFun op = parse_ratfun(j.at("operator_q1").get<std::string>(), lq);
    // up to a rational unit this is (Q-1)(L+Q^3)
    RatFun target = parse_ratfun("(Q-1)*(L+Q^3)", lq);
    RatFun ratio = op / target;
    CHECK(ratio.num().is_rational());
    CHECK(ratio.den().is_one());
    CHECK(j.at("degree_drop").get<bool>() == false);
}
