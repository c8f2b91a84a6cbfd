#include "doctest.h"

#include "sobolev/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace sobolev;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "sobolev_recon");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("sobolev_cli_test_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

} // namespace

TEST_CASE("identical configurations give byte-identical CSV") {
    const auto a = scratch_dir("a"), b = scratch_dir("b");
    const std::vector<std::string> common{"sweep", "--example", "poly-random", "--method", "legendre", "--gamma",
                                          "1,0",   "--degrees", "2,3,4",       "--seed",   "7"};
    auto args_a = common, args_b = common;
    args_a.insert(args_a.end(), {"--out", a.string()});
    args_b.insert(args_b.end(), {"--out", b.string()});
    REQUIRE(run(args_a).code == 0);
    REQUIRE(run(args_b).code == 0);
    const std::string name = "poly-random_legendre_gamma1-0.csv";
    const std::string ca = slurp(a / name), cb = slurp(b / name);
    CHECK(!ca.empty());
    CHECK(ca == cb);
    std::filesystem::remove_all(a);
    std::filesystem::remove_all(b);
}

TEST_CASE("expand x^2 y at (1,1)") {
    const auto r = run({"expand", "--example", "x2y", "--delta", "2,1", "--point", "1,1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    int rows = 0;
    std::istringstream in(r.out);
    for (std::string line; std::getline(in, line);)
        if (!line.empty() && line[0] == '(') ++rows;
    CHECK(rows == 6);
}

TEST_CASE("expand example1 at 0.5 and at order zero") {
    CHECK(run({"expand", "--example", "example1", "--point", "0.5"}).code == 0);
    const auto r = run({"expand", "--example", "example1", "--delta", "0", "--point", "0.5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("(1)") == std::string::npos);
}

TEST_CASE("invalid input gives a nonzero exit") {
    CHECK(run({"expand", "--example", "x2y", "--point", "2,1"}).code != 0);
    CHECK(run({"expand", "--example", "x2y", "--delta", "3,1", "--point", "0.5,0.5"}).code != 0);
    CHECK(run({"reproduce", "fig7"}).code != 0);
    CHECK(run({"verify", "everything"}).code != 0);
    CHECK(run({}).code != 0);
}

TEST_CASE("verify reports machine-readable lines") {
    const auto r = run({"verify", "roundtrip", "--trials", "5", "--seed", "3"});
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    int pass = 0;
    for (std::string line; std::getline(in, line);)
        if (line.rfind("PASS roundtrip", 0) == 0) ++pass;
    CHECK(pass == 9);
}
