#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

// End-to-end checks against the installed command surface: exit codes and
// output shapes, driven through a shell like a user would.

namespace {

constexpr const char* kCli = CUBEKNOT_CLI_PATH;

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

RunResult run(const std::string& command_tail) {
    const std::string command = std::string(kCli) + " " + command_tail + " 2>&1";
    RunResult res;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) res.output.append(buf.data(), n);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

RunResult run_pipeline(const std::string& shell_line) {
    RunResult res;
    FILE* pipe = popen((shell_line + " 2>&1").c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) res.output.append(buf.data(), n);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string cli() { return kCli; }

}  // namespace

TEST_CASE("gen | validate pipelines") {
    CHECK(run_pipeline(cli() + " gen sphere | " + cli() + " validate").exit_code == 0);
    CHECK(run_pipeline(cli() + " gen square | " + cli() + " validate").exit_code == 0);

    const auto torus = run_pipeline(cli() + " gen torus | " + cli() + " validate");
    CHECK(torus.exit_code == 1);
    CHECK(torus.output.find("euler=0") != std::string::npos);

    const auto pinched = run_pipeline(cli() + " gen pinched | " + cli() + " validate");
    CHECK(pinched.exit_code == 1);
    CHECK(pinched.output.find("regular=no") != std::string::npos);
}

TEST_CASE("info reports counts and tubularity") {
    const auto res = run_pipeline(cli() + " gen sphere | " + cli() + " info");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("vertices: 8") != std::string::npos);
    CHECK(res.output.find("edges: 12") != std::string::npos);
    CHECK(res.output.find("faces: 6") != std::string::npos);
    CHECK(res.output.find("tubular: no") != std::string::npos);

    const auto fine = run_pipeline(cli() + " gen sphere | " + cli() + " subdivide -m 3 | " +
                                   cli() + " info");
    CHECK(fine.exit_code == 0);
    CHECK(fine.output.find("tubular: yes") != std::string::npos);
}

TEST_CASE("moves / apply / subdivide flow") {
    const auto moves = run_pipeline(cli() + " gen sphere | " + cli() + " moves");
    CHECK(moves.exit_code == 0);
    CHECK(moves.output.find("exchanges 1 for 5") != std::string::npos);

    const auto applied = run_pipeline(cli() + " gen sphere | " + cli() + " apply --move 0 | " +
                                      cli() + " validate");
    CHECK(applied.exit_code == 0);

    const auto fine = run_pipeline(cli() + " gen sphere | " + cli() + " subdivide -m 2 | " +
                                   cli() + " validate");
    CHECK(fine.exit_code == 0);
}

TEST_CASE("slicer commands") {
    const auto slice = run_pipeline(cli() + " gen product-cylinder | " + cli() +
                                    " slice --level 1.5 | " + cli() + " validate");
    CHECK(slice.exit_code == 0);

    const auto carry = run_pipeline(cli() + " gen product-cylinder | " + cli() + " carry | " +
                                    cli() + " replay");
    CHECK(carry.exit_code == 0);

    const auto shift = run_pipeline(cli() + " gen shift-cylinder | " + cli() + " carry | " +
                                    cli() + " replay");
    CHECK(shift.exit_code == 0);

    const auto sweep = run_pipeline(cli() + " gen shift-cylinder | " + cli() +
                                    " sweep --level 1 | " + cli() + " replay");
    CHECK(sweep.exit_code == 0);
}

TEST_CASE("search and replay exit codes") {
    char dir_template[] = "/tmp/cubeknot_cli_XXXXXX";
    REQUIRE(mkdtemp(dir_template) != nullptr);
    const std::string dir = dir_template;
    const std::string a = dir + "/a.cells", b = dir + "/b.cells", cert = dir + "/walk.cert";

    REQUIRE(run("gen sphere -o " + a).exit_code == 0);
    REQUIRE(run_pipeline(cli() + " gen sphere | " + cli() + " apply --move 0 -o " + b).exit_code ==
            0);

    SUBCASE("certificate found and replayable") {
        const auto found = run("search " + a + " " + b + " --max-moves 3 -o " + cert);
        CHECK(found.exit_code == 0);
        CHECK(run("replay " + cert).exit_code == 0);
    }
    SUBCASE("tiny budget is inconclusive, exit 2") {
        const auto res = run("search " + a + " " + b + " --max-moves 0");
        CHECK(res.exit_code == 2);
    }
    SUBCASE("corrupted certificates fail replay with exit 1") {
        REQUIRE(run("search " + a + " " + b + " --max-moves 3 -o " + cert).exit_code == 0);
        std::ifstream in(cert);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        const auto pos = text.find("digest sha256:");
        REQUIRE(pos != std::string::npos);
        text[pos + 14] = text[pos + 14] == '0' ? '1' : '0';
        std::ofstream(cert) << text;
        CHECK(run("replay " + cert).exit_code == 1);
    }
}

TEST_CASE("json output carries stable fields") {
    const auto validate = run_pipeline(cli() + " gen sphere | " + cli() + " validate --json");
    CHECK(validate.exit_code == 0);
    CHECK(validate.output.find("\"command\": \"validate\"") != std::string::npos);
    CHECK(validate.output.find("\"valid\": true") != std::string::npos);

    const auto gen = run("gen sphere --json");
    CHECK(gen.output.find("\"cells\"") != std::string::npos);
    CHECK(gen.output.find("\"count\": 6") != std::string::npos);

    const auto search = run_pipeline(
        "cd /tmp && " + cli() + " gen sphere -o s.cells && " + cli() +
        " gen sphere | " + cli() + " apply --move 0 -o t.cells && " + cli() +
        " search s.cells t.cells --max-moves 2 --json");
    CHECK(search.exit_code == 0);
    CHECK(search.output.find("\"found\": true") != std::string::npos);
    CHECK(search.output.find("\"digest\"") != std::string::npos);
}

TEST_CASE("usage errors exit 3") {
    CHECK(run("gen no-such-fixture").exit_code == 3);
    CHECK(run("definitely-not-a-command").exit_code == 3);
    CHECK(run_pipeline(cli() + " gen product-cylinder | " + cli() + " slice --level 2").exit_code ==
          3);
}

TEST_CASE("malformed input exits 1 with a line number") {
    const auto res = run_pipeline("printf 'cubeknot 2 4 1\\ncell 0 0 0 0 : 2 1\\n' | " + cli() +
                                  " validate");
    CHECK(res.exit_code == 1);
    CHECK(res.output.find("line 2") != std::string::npos);
}
