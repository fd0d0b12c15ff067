#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

using ramasum::cli_execute;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    std::vector<const char*> argv = {"ramasum"};
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli_execute(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("sum subcommand") {
    auto r = run({"sum", "--term", "1/n"});
    CHECK(r.code == 0);
    CHECK(r.out.find("5.77215664901532860606512090082402431") != std::string::npos);
    CHECK(r.out.find("ClosedForm") != std::string::npos);

    auto h = run({"sum", "--term", "H(n)*exp(-n*z)", "--z", "0.5", "--tol", "1e-36"});
    CHECK(h.code == 0);
    CHECK(h.out.find("2.97065223805845160564392528813379") != std::string::npos);
    CHECK(h.out.find("ClosedForm") != std::string::npos);
}

TEST_CASE("usage errors exit 1") {
    CHECK(run({"sum"}).code == 1);                      // missing --term
    CHECK(run({"frobnicate"}).code == 1);               // unknown subcommand
    CHECK(run({"sum", "--term", "n++"}).code == 1);     // parse error surfaces
    CHECK(run({"sum", "--term", "1/n", "--output", "yaml"}).code == 1);
}

TEST_CASE("bit-identical reruns") {
    auto a = run({"sum", "--term", "exp(-n*z)/n", "--z", "1.0"});
    auto b = run({"sum", "--term", "exp(-n*z)/n", "--z", "1.0"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    // text and json carry identical decimal values
    auto j = run({"sum", "--term", "exp(-n*z)/n", "--z", "1.0", "--output", "json"});
    auto parsed = nlohmann::json::parse(j.out);
    std::string v = parsed["value"].get<std::string>();
    CHECK(a.out.find(v) != std::string::npos);
}

TEST_CASE("zeta-prime-gf") {
    auto r = run({"zeta-prime-gf", "--z", "0.5", "--terms", "60", "--tol", "1e-40", "--prec-bits", "320"});
    CHECK(r.code == 0);
    CHECK(r.out.find("-1.0053225948976502297963131642") != std::string::npos);
    CHECK(r.out.find("remainder_estimate") != std::string::npos);
}

TEST_CASE("laplace and borel subcommands") {
    auto l = run({"laplace", "--f", "inv1p", "--z", "1"});
    CHECK(l.code == 0);
    CHECK(l.out.find("5.9634736232319407434107849936") != std::string::npos);
    auto b = run({"borel", "--series", "alt-factorial", "--z", "1"});
    CHECK(b.code == 0);
    CHECK(b.out.find("5.9634736232319407434107849936") != std::string::npos);
    // custom coefficients through the Pade fallback: 1/(1+x) prefix
    auto c = run({"borel", "--coeffs", "1,-1,2,-6,24,-120,720,-5040,40320,-362880,3628800",
                  "--pade", "5", "--z", "1"});
    CHECK(c.code == 0);
    CHECK(c.out.find("5.963473623231940") != std::string::npos);
}

TEST_CASE("verify subcommand with json") {
    std::string path = "/tmp/ramasum_verify_test.json";
    auto r = run({"verify", "--only", "residue_h", "--json", path});
    CHECK(r.code == 0);
    CHECK(r.out.find("[pass] residue_h") != std::string::npos);
    CHECK(r.out.find("summary: total=1 passed=1 failed=0") != std::string::npos);
    std::ifstream in(path);
    REQUIRE(in.good());
    nlohmann::json parsed;
    in >> parsed;
    CHECK(parsed["summary"]["passed"].get<int>() == 1);
    std::remove(path.c_str());
}

TEST_CASE("config file and flag precedence") {
    std::string path = "/tmp/ramasum_cfg_test.conf";
    {
        std::ofstream f(path);
        f << "# comment\nprec_bits = 320\noutput = json\n";
    }
    auto r = run({"--config", path, "sum", "--term", "1/n"});
    CHECK(r.code == 0);
    auto parsed = nlohmann::json::parse(r.out);
    CHECK(parsed.contains("value"));
    // flags override the config file
    auto t = run({"--config", path, "--output", "text", "sum", "--term", "1/n"});
    CHECK(t.out.find("value          =") != std::string::npos);
    // unknown keys are errors
    {
        std::ofstream f(path);
        f << "precision = 9\n";
    }
    CHECK(run({"--config", path, "sum", "--term", "1/n"}).code == 1);
    std::remove(path.c_str());
}

TEST_CASE("env var default") {
    setenv("RAMASUM_PREC_BITS", "128", 1);
    auto r = run({"sum", "--term", "1/n^2", "--output", "json"});
    unsetenv("RAMASUM_PREC_BITS");
    CHECK(r.code == 0);
    auto parsed = nlohmann::json::parse(r.out);
    // 128-bit run prints ~36 significant digits, far fewer than 256-bit
    CHECK(parsed["value"].get<std::string>().size() < 45);
}
