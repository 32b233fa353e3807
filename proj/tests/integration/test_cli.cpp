#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(SIGWALK_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("scalar verbs") {
    auto s = run("schur --lambda 2,1 --theta 1,1");
    CHECK(s.code == 0);
    CHECK(s.out == "2\n");
    // s_(1,0)(1/2, 3) = 7/2
    CHECK(run("schur --lambda 1,0 --theta 1/2,3").out == "7/2\n");
    CHECK(run("dim --lambda 2,1,0").out == "8\n");
    CHECK(run("dim --lambda=-1,-3").out == "3\n");
    auto lr = run("lr --lambda 2,1,0 --mu 3,2,1 --tau 4,3,2");
    CHECK(lr.code == 0);
    CHECK(lr.out == "2\n");
}

TEST_CASE("lr product and weights as json") {
    auto j = json_of(run("lr --lambda 1,0 --mu 1,0"));
    CHECK(j["terms"].size() == 2);
    auto w = json_of(run("weights --lambda 2,0"));
    CHECK(w["lambda"] == nlohmann::json({2, 0}));
    CHECK(w["terms"].size() == 3);
    for (const auto& t : w["terms"]) CHECK(t["mult"] == 1);
}

TEST_CASE("verify exit codes") {
    auto r = run("verify stochastic --F beta-:1/2 --n 2 --window 3");
    CHECK(r.code == 0);
    auto j = json_of(r);
    CHECK(j["check"] == "stochastic");
    CHECK(j["pass"] == true);
    CHECK(j["max_abs_error"] == "0");

    auto q = json_of(run("verify qrw --F beta+:1/2 --n 2 --window 2"));
    CHECK(q["pairing"] == "inverted");
    CHECK(q["family"] == "beta+");
    CHECK(q["pass"] == true);

    for (const char* c : {"semigroup --F beta-:1/2 --F2 alpha-:1/3 --n 2 --window 2", "star --F beta+:1/3 --n 2 --window 2",
                          "center --F beta-:1/2 --n 2 --window 2", "torus --F beta-:1/2 --F2 beta+:1/3 --n 2",
                          "doob --F gamma-:1/2 --n 2 --window 2", "lemma212 --F alpha+:1/2 --theta 1,3/4 --window 2",
                          "empirical --F beta-:1/2 --n 2 --samples 20000"}) {
        auto v = run(std::string("verify ") + c);
        CHECK_MESSAGE(v.code == 0, c);
        CHECK(json_of(v)["pass"] == true);
    }

    // a threshold no finite sample can meet
    CHECK(run("verify empirical --F beta-:1/2 --n 1 --samples 1000 --delta 0").code == 1);
}

TEST_CASE("usage and domain errors") {
    CHECK(run("").code == 2);
    CHECK(run("schur --lambda 2,x --theta 1,1").code == 2);
    CHECK(run("schur --lambda 1,2 --theta 1,1").code == 2);
    CHECK(run("verify nosuchcheck --n 2").code == 2);
    CHECK(run("verify stochastic --F beta-:1/2").code == 2);
    CHECK(run("verify stochastic --F bogus:1 --n 1").code == 2);
    CHECK(run("dim --lambda 1,0 --format csv").code == 2);
    CHECK(run("kernel-row --F beta-:2 --lambda 0").code == 3);
    CHECK(run("kernel-row --F alpha-:1/2 --theta 3 --lambda 0").code == 3);
    CHECK(run("verify doob --F alpha-:1/2 --n 2").code == 3);
}

TEST_CASE("kernel rows") {
    auto j = json_of(run("kernel-row --F beta-:1/2 --lambda 0,0"));
    REQUIRE(j.is_object());
    auto csv = run("kernel-row --F beta-:1/2 --lambda 0,0 --format csv");
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("mu,value\n", 0) == 0);
    // (0,0) -> (1,0): 2 * (1/2)/(3/2) * 1/(3/2) = 4/9
    CHECK(csv.out.find("\"1,0\",4/9\n") != std::string::npos);
}

TEST_CASE("rational strings survive a round trip") {
    for (const char* p : {"1/3", "2/7", "1", "0"}) {
        auto j = json_of(run(std::string("verify stochastic --n 1 --window 1 --F beta+:") + p));
        CHECK(j["F"] == std::string("beta+:") + p);
        auto again = json_of(run("verify stochastic --n 1 --window 1 --F " + j["F"].get<std::string>()));
        CHECK(again == j);
    }
    // decimals are read exactly and printed as reduced fractions
    CHECK(json_of(run("verify stochastic --n 1 --window 1 --F beta-:0.25"))["F"] == "beta-:1/4");
    auto j = json_of(run("verify stochastic --n 1 --window 1 --F laurent{-1:1/2,0:1}"));
    CHECK(json_of(run("verify stochastic --n 1 --window 1 --F " + j["F"].get<std::string>())) == j);
}

TEST_CASE("simulation output is reproducible") {
    auto a = run("simulate --F alpha-:1/2 --n 2 --steps 50 --seed 9");
    auto b = run("simulate --F alpha-:1/2 --n 2 --steps 50 --seed 9");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    auto j = json_of(a);
    CHECK(j["steps"] == 50);
    CHECK(j["seed"] == 9);
    CHECK(j["rng"] == "philox4x32-10/v1");
    auto csv = run("simulate --F alpha-:1/2 --n 2 --steps 50 --seed 9 --format csv");
    CHECK(csv.out.rfind("step,i,position\n0,1,-1\n0,2,-2\n", 0) == 0);
    CHECK(run("simulate --F alpha-:1/2 --n 2 --steps 50 --seed 10").out != a.out);
}
