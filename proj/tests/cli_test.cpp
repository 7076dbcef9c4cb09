#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Result {
    int status = -1;
    std::string out;
};

Result run(const std::string& args) {
    const std::string cmd = std::string(PLAUSET_CLI_PATH) + " " + args + " 2>&1";
    Result r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
    const int raw = ::pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("plauset_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::size_t lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("unknown subcommand") {
    auto r = run("frobnicate");
    CHECK(r.status != 0);
    CHECK(r.out.find("run") != std::string::npos);
    CHECK(run("").status != 0);
}

TEST_CASE("domains listing") {
    auto r = run("domains");
    CHECK(r.status == 0);
    CHECK(r.out.find("riverswim") != std::string::npos);
    CHECK(r.out.find("single_state") != std::string::npos);
}

TEST_CASE("run writes records and is reproducible") {
    auto dir = scratch("run");
    {
        std::ofstream cfg(dir / "exp.cfg");
        cfg << "domain = riverswim\nagents = psrl, bayesucrl, oracle\nepisodes = 3\nruns = 2\nhorizon = 5\n"
               "posterior_samples = 100\nseed = 11\n";
    }
    auto a = run("run " + (dir / "exp.cfg").string() + " --output-dir " + (dir / "a").string());
    REQUIRE(a.status == 0);
    auto b = run("run " + (dir / "exp.cfg").string() + " --output-dir " + (dir / "b").string() + " --no-plots");
    REQUIRE(b.status == 0);
    const auto rec = slurp(dir / "a" / "records.csv");
    CHECK(lines(rec) == 1 + 3 * 2 * 3);
    CHECK(rec == slurp(dir / "b" / "records.csv"));
    CHECK(fs::exists(dir / "a" / "average_case.svg"));
    CHECK_FALSE(fs::exists(dir / "b" / "average_case.svg"));

    std::istringstream summary(slurp(dir / "a" / "summary.csv"));
    std::string line;
    std::size_t oracle_rows = 0;
    while (std::getline(summary, line)) {
        if (line.rfind("oracle,", 0) != 0) continue;
        ++oracle_rows;
        CHECK(line.substr(line.size() - 4) == ",0,0");
    }
    CHECK(oracle_rows == 3);

    auto c = run("run " + (dir / "exp.cfg").string() + " --output-dir " + (dir / "c").string() + " --seed 12");
    REQUIRE(c.status == 0);
    CHECK(rec != slurp(dir / "c" / "records.csv"));
    fs::remove_all(dir);
}

TEST_CASE("bad configs exit nonzero with a message") {
    auto dir = scratch("bad");
    {
        std::ofstream cfg(dir / "bad.cfg");
        cfg << "domain = riverswim\ndelta = 1.5\n";
    }
    auto r = run("run " + (dir / "bad.cfg").string());
    CHECK(r.status != 0);
    CHECK(r.out.find("line 2") != std::string::npos);
    CHECK(r.out.find("delta out of (0,1)") != std::string::npos);
    CHECK(run("run " + (dir / "missing.cfg").string()).status != 0);
    fs::remove_all(dir);
}
