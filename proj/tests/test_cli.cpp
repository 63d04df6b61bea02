#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + POLYBEND_CLI + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), got);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

const std::string data = POLYBEND_TEST_DATA;

}  // namespace

TEST_CASE("classify") {
    auto r = run("classify --r 1,1,1,1 --caterpillar --c 2");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["p"] == 0);
    CHECK(j["q"] == 0);
    CHECK(j["k"] == 1);
    CHECK(j["type"] == "II");

    r = run("classify --r 1,1,1,1 --caterpillar --c 1");
    CHECK(r.code == 0);
    j = nlohmann::json::parse(r.out);
    CHECK(j["p"] == 1);
    CHECK(j["q"] == 1);
    CHECK(j["type"] == "I");
    CHECK(j["lagrangian"] == true);

    r = run("classify --r 1,1,1,1,1 --diagonals 0-2,0-3 --c 2,1.125 --faces");
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["faces"].size() == 3);
}

TEST_CASE("exit codes") {
    CHECK(run("classify --r 1,1,1 --caterpillar --c").code == 64);
    CHECK(run("classify --r 1,1,1 --caterpillar --c 0").code == 64);
    CHECK(run("classify --r 1,1,1,1 --caterpillar --c 3").code == 2);
    CHECK(run("classify --r 1,x,1,1 --c 1").code == 64);
    CHECK(run("classify --r 1,1,1,1 --c 1,1").code == 64);
    CHECK(run("classify --r 1,1,1,1,1,1 --diagonals 0-2,1-3,0-4 --c 1,1,1").code == 64);
    CHECK(run("verify nonsense").code == 64);
    CHECK(run("").code == 64);
    CHECK(run("--help").code == 0);
    CHECK(run("flow --in " + data + "/missing.json --k 0 --t 1").code == 64);
    CHECK(run("flow --in " + data + "/worked_frame.json --k 0 --t 1").code == 64);
    CHECK(run("flow --in " + data + "/square.json --k 3 --t 1").code == 64);
}

TEST_CASE("verify exits 1 on a failed assertion") {
    CHECK(run("verify isotropy --n 4 --samples 4").code == 0);
    CHECK(run("verify isotropy --n 4 --samples 4 --tol isotropy=0").code == 1);
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
    const auto a = run("verify poisson --n 6 --samples 40 --seed 11", "POLYBEND_THREADS=1");
    const auto b = run("verify poisson --n 6 --samples 40 --seed 11", "POLYBEND_THREADS=4");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(nlohmann::json::parse(a.out)["config"]["seed"] == 11);
    const auto c = run("sample --r 1,1,1,1,1 --caterpillar --c 0.72,0.98 --count 5 --seed 3");
    CHECK(c.out == run("sample --r 1,1,1,1,1 --caterpillar --c 0.72,0.98 --count 5 --seed 3").out);
}

TEST_CASE("flow, sample and gc artifacts") {
    auto r = run("flow --in " + data + "/square.json --k 0 --t 3.14159 --normalized");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["u"].size() == 4);
    CHECK(j["u"][0][1].get<double>() == doctest::Approx(1).epsilon(1e-9));

    r = run("sample --r 1,1,1,1,1 --caterpillar --c 0.72,0.98 --count 5 --seed 3");
    CHECK(r.code == 0);
    j = nlohmann::json::parse(r.out);
    CHECK(j["polygons"].size() == 5);
    CHECK(j["max_c_error"].get<double>() < 1e-12);

    r = run("gc --r .5,.5,.5,.5 --c 0 --dot");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("graph", 0) == 0);
    CHECK(r.out.find("D1") != std::string::npos);

    r = run("gc --frame " + data + "/worked_frame.json");
    CHECK(r.code == 0);
    j = nlohmann::json::parse(r.out);
    CHECK(j["interlacing_violation"].get<double>() <= 0);
}
