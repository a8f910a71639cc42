#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "doctest.h"
#include "rfh/floer.hpp"
#include "rfh/triple_io.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(RFHTOOL_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int status = pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

bool has(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("cz subcommand") {
    auto full = run("cz rot:1 T=6.283185307179586 --format csv");
    CHECK(full.exit_code == 0);
    CHECK(has(full.out, "mu_cz.value,2"));
    CHECK(has(full.out, "mu_cz.tag,computed"));

    auto hyp = run("cz hyp T=5 --format csv");
    CHECK(hyp.exit_code == 0);
    CHECK(has(hyp.out, "mu_cz.value,0"));

    CHECK(run("cz rot:x T=1").exit_code == 1);
    CHECK(run("cz").exit_code == 1);
    CHECK(run("cz rot:1 T=-3").exit_code == 1);
}

TEST_CASE("brieskorn subcommand") {
    auto sph = run("brieskorn 2,2,2,3 --format csv");
    CHECK(sph.exit_code == 0);
    CHECK(has(sph.out, "sphere.value,true"));
    CHECK(has(sph.out, "sphere.tag,paper"));

    auto tab = run("brieskorn 4,4,4,4 --rfh --lmax 40 --format csv");
    CHECK(tab.exit_code == 0);
    CHECK(has(tab.out, "inf"));

    CHECK(run("brieskorn 2,2").exit_code == 1);       // too short for the CLI
    CHECK(run("brieskorn 2,a,2,3").exit_code == 1);   // parse failure
    CHECK(run("brieskorn 2,2,2 --format csv").exit_code == 2);  // n < 3 sphere query
}

TEST_CASE("floer subcommand and exit codes") {
    const std::string good = "/tmp/rfh_cli_good.json";
    const std::string bad = "/tmp/rfh_cli_bad.json";
    rfh::floer::save_triple(rfh::floer::worked_example(), good);
    rfh::floer::FloerTriple t;
    t.gens.push_back({"x", 1, std::nullopt});
    t.gens.push_back({"y", 0, std::nullopt});
    t.boundary.emplace_back(0, 1);  // x in d(y): raises action
    rfh::floer::save_triple(t, bad);

    auto ok = run("floer " + good + " --format csv");
    CHECK(ok.exit_code == 0);
    CHECK(has(ok.out, "reduction.iso_certified,true"));

    CHECK(run("floer " + bad).exit_code == 2);
    CHECK(run("floer /nonexistent/missing.json").exit_code == 3);
    CHECK(run("floer " + good + " --out /nonexistent/dir/x.csv").exit_code == 3);

    std::remove(good.c_str());
    std::remove(bad.c_str());
}

TEST_CASE("rfh subcommand") {
    auto sstar = run("rfh 2,2,2 --format csv");
    CHECK(sstar.exit_code == 0);

    auto dist = run("rfh 2,2,2,10 --distinguish 2,2,2,14 --format csv");
    CHECK(dist.exit_code == 0);
    CHECK(has(dist.out, "11"));
}

TEST_CASE("morse subcommand") {
    auto count = run("morse --count c4+:c3+");
    CHECK(count.exit_code == 0);
    CHECK(count.out == "2\n");

    CHECK(run("morse --n 9").exit_code == 1);   // outside the supported range
    CHECK(run("morse --a 1.0").exit_code == 2);  // degenerate parameter
}

TEST_CASE("repeated runs are byte-identical") {
    for (const std::string args :
         {std::string("morse --n 3 --seed 7 --format json"),
          std::string("brieskorn 2,2,2,13 --rfh --lmax 30 --format table"),
          std::string("cz rot:1,hyp T=5 --format csv")}) {
        auto a = run(args);
        auto b = run(args);
        CHECK(a.exit_code == 0);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("unknown subcommand and bad format are parse errors") {
    CHECK(run("frobnicate").exit_code == 1);
    CHECK(run("cz rot:1 T=1 --format yaml").exit_code == 1);
}
