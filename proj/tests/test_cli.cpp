#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "susyline/cli.hpp"

using namespace susyline;
using nlohmann::json;

namespace {

std::string run_binary(const std::string& args, int& exit_code) {
    std::string cmd = std::string(SUSYLINE_CLI_PATH) + " " + args + " > /tmp/susyline_out.txt 2>&1";
    int rc = std::system(cmd.c_str());
    exit_code = WEXITSTATUS(rc);
    std::ifstream in("/tmp/susyline_out.txt");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("half-integer parsing") {
    CHECK(cli::parse_half("3/2")->twice == 3);
    CHECK(cli::parse_half("-1/2")->twice == -1);
    CHECK(cli::parse_half("2")->twice == 4);
    CHECK(!cli::parse_half("1/3"));
    CHECK(!cli::parse_half("x/2"));
    CHECK(!cli::parse_half(""));
    CHECK(!cli::parse_half("3/2x"));
}

TEST_CASE("fmt17 is stable and digit-complete") {
    CHECK(cli::fmt17(-0.125) == "-0.125");
    CHECK(cli::fmt17(-0.5) == "-0.5");
    double v = 1.0 / 3.0;
    CHECK(std::stod(cli::fmt17(v)) == v); // round-trips exactly
}

TEST_CASE("spectrum command, csv") {
    cli::RunConfig cfg;
    cfg.jmax = HalfInt::halves(5);
    std::ostringstream os;
    CHECK(cli::cmd_spectrum(cfg, os) == 0);
    std::istringstream lines(os.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "j,epsilon,E_tilde,E_total,degeneracy");
    std::getline(lines, line);
    CHECK(line == "1/2,1,-0.5,-0.5,2");
    std::getline(lines, line);
    CHECK(line == "3/2,4,-0.125,-0.125,4");
    std::getline(lines, line);
    CHECK(line.substr(0, 4) == "5/2,");
}

TEST_CASE("spectrum command, json") {
    cli::RunConfig cfg;
    cfg.jmax = HalfInt::halves(1);
    cfg.g = 2.0;
    cfg.format = cli::Format::json;
    std::ostringstream os;
    CHECK(cli::cmd_spectrum(cfg, os) == 0);
    json doc = json::parse(os.str());
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 1);
    CHECK(doc[0]["j"] == "1/2");
    CHECK(doc[0]["epsilon"] == 1);
    CHECK(doc[0]["E_tilde"] == doctest::Approx(-2.0));
    CHECK(doc[0]["degeneracy"] == 2);
}

TEST_CASE("spectrum usage errors") {
    cli::RunConfig cfg; // missing jmax
    std::ostringstream os;
    CHECK(cli::cmd_spectrum(cfg, os) == 2);
    cfg.jmax = HalfInt::whole(1); // not half-odd
    CHECK(cli::cmd_spectrum(cfg, os) == 2);
    cfg.jmax = HalfInt::halves(3);
    cfg.g = -1;
    CHECK(cli::cmd_spectrum(cfg, os) == 2);
}

TEST_CASE("multiplet command serialization") {
    cli::RunConfig cfg;
    cfg.j = HalfInt::halves(1);
    std::ostringstream os;
    CHECK(cli::cmd_multiplet(cfg, os) == 0);
    json doc = json::parse(os.str());
    CHECK(doc["j"] == "1/2");
    CHECK(doc["epsilon"]["num"] == "1");
    CHECK(doc["epsilon"]["den"] == "1");
    CHECK(doc["degeneracy"] == 2);
    REQUIRE(doc["states"].size() == 2);
    // top state: jz = +1/2, upper = s^{1/2} c^{3/2}
    const json& top = doc["states"][1];
    CHECK(top["jz"] == "1/2");
    REQUIRE(top["upper"].size() == 1);
    CHECK(top["upper"][0]["num"] == "1");
    CHECK(top["upper"][0]["den"] == "1");
    CHECK(top["upper"][0]["a2"] == 1);
    CHECK(top["upper"][0]["b2"] == 3);
    for (const auto& st : doc["states"]) {
        CHECK(st["checks"]["hamiltonian"] == "pass");
        CHECK(st["checks"]["casimir"] == "pass");
        CHECK(st["checks"]["ladder"] == "pass");
    }
}

TEST_CASE("multiplet2 rejects integer j") {
    cli::RunConfig cfg;
    cfg.j = HalfInt::whole(2);
    std::ostringstream os;
    CHECK(cli::cmd_multiplet(cfg, os) == 2);
}

TEST_CASE("fd command table shape and monotone errors") {
    cli::RunConfig cfg;
    cfg.jz = HalfInt::halves(1);
    cfg.sign = Sector::minus;
    cfg.levels = 2;
    cfg.n_list = {64, 128, 256};
    std::ostringstream os;
    CHECK(cli::cmd_fd(cfg, os) == 0);
    std::istringstream lines(os.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "n,level,eigenvalue,error,order");
    int rows = 0;
    double prev_err_l0 = 1e300;
    while (std::getline(lines, line)) {
        ++rows;
        std::stringstream ss(line);
        std::string n_s, lev_s, val_s, err_s, ord_s;
        std::getline(ss, n_s, ',');
        std::getline(ss, lev_s, ',');
        std::getline(ss, val_s, ',');
        std::getline(ss, err_s, ',');
        std::getline(ss, ord_s, ',');
        if (lev_s == "0" && n_s != "0") {
            double err = std::stod(err_s);
            CHECK(err < prev_err_l0);
            prev_err_l0 = err;
        }
    }
    CHECK(rows == 3 * 2 + 2); // data rows plus one extrapolation row per level
}

TEST_CASE("transform command emits residual row") {
    cli::RunConfig cfg;
    cfg.j = HalfInt::halves(1);
    cfg.jz = HalfInt::halves(1);
    std::ostringstream os;
    CHECK(cli::cmd_transform(cfg, os) == 0);
    std::istringstream lines(os.str());
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header == "jz,j,r1,r2");
    CHECK(row.substr(0, 8) == "1/2,1/2,");
    std::stringstream ss(row);
    std::string a, b, r1s, r2s;
    std::getline(ss, a, ',');
    std::getline(ss, b, ',');
    std::getline(ss, r1s, ',');
    std::getline(ss, r2s, ',');
    CHECK(std::stod(r1s) < 1e-10);
    CHECK(std::stod(r2s) < 1e-10);
}

TEST_CASE("deterministic output: identical config, identical bytes") {
    cli::RunConfig cfg;
    cfg.jmax = HalfInt::halves(7);
    cfg.g = 1.7;
    std::ostringstream a, b;
    cli::cmd_spectrum(cfg, a);
    cli::cmd_spectrum(cfg, b);
    CHECK(a.str() == b.str());
}

TEST_CASE("binary end-to-end: exit codes and piping") {
    int rc = 0;
    std::string out = run_binary("spectrum --jmax 5/2 --G 1", rc);
    CHECK(rc == 0);
    CHECK(out.find("3/2,4,-0.125,-0.125,4") != std::string::npos);

    run_binary("spectrum", rc);
    CHECK(rc == 2); // missing --jmax

    run_binary("multiplet --j 2", rc);
    CHECK(rc == 2); // j must be half-odd

    run_binary("fd --jz 1/3 --sign minus --n 64,128,256", rc);
    CHECK(rc == 2); // not a half-integer

    run_binary("nosuchcommand", rc);
    CHECK(rc == 2);

    out = run_binary("transform --j 1/2 --jz 1/2 --G 1", rc);
    CHECK(rc == 0);
    CHECK(out.find("jz,j,r1,r2") != std::string::npos);

    // --out writes the same bytes as stdout
    std::string direct = run_binary("spectrum --jmax 3/2", rc);
    run_binary("spectrum --jmax 3/2 --out /tmp/susyline_spec.csv", rc);
    std::ifstream f("/tmp/susyline_spec.csv");
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == direct);
}

TEST_CASE("verify command aggregates the suites") {
    int rc = 0;
    std::string out = run_binary("verify --jmax 3/2", rc);
    CHECK(rc == 0);
    CHECK(out.find("CHECK multiplet[j=1/2] PASS") != std::string::npos);
    CHECK(out.find("CHECK commutators[j=3/2] PASS") != std::string::npos);
    CHECK(out.find("CHECK ladder_coeff[3/2,1/2] PASS") != std::string::npos);
    CHECK(out.find("FAIL") == std::string::npos);
    CHECK(out.find("ALL PASS") != std::string::npos);
}
