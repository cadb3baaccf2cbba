#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "bdcp/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

fs::path test_dir() {
    static const fs::path dir = [] {
        auto p = fs::temp_directory_path() /
                 ("bdcp_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

CliResult run_cli(const std::string &args) {
    const fs::path out_file = test_dir() / "stdout.txt";
    const std::string cmd = std::string(BDCP_CLI_PATH) + " " + args + " > " +
                            out_file.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = bdcp::read_text_file(out_file.string());
    return result;
}

void write_file(const fs::path &p, const std::string &content) {
    std::ofstream out(p);
    out << content;
}

}  // namespace

TEST_CASE("simulate writes reproducible series and truth files") {
    const auto csv = test_dir() / "sim.csv";
    const std::string args = "simulate --example 4.1.8 --n 40 --m 40 --seed 7 --output " +
                             csv.string();
    CHECK(run_cli(args).exit_code == 0);
    REQUIRE(fs::exists(csv));
    const auto truth_path = test_dir() / "sim.truth.json";
    REQUIRE(fs::exists(truth_path));

    const auto truth = json::parse(bdcp::read_text_file(truth_path.string()));
    CHECK(truth["T"] == 120);
    CHECK(truth["changepoints"] == json::array({40, 80}));

    // byte-identical on repetition
    const std::string first = bdcp::read_text_file(csv.string());
    CHECK(run_cli(args).exit_code == 0);
    CHECK(bdcp::read_text_file(csv.string()) == first);
}

TEST_CASE("simulate rejects unknown designs") {
    const auto csv = test_dir() / "bad.csv";
    const auto result = run_cli("simulate --example 9.9.9 --output " + csv.string());
    CHECK(result.exit_code == 2);
    CHECK(json::parse(result.out).contains("error"));
}

TEST_CASE("detect end to end on a simulated mean shift") {
    const auto csv = test_dir() / "detect_in.csv";
    REQUIRE(run_cli("simulate --example 4.1.8 --seed 19 --output " + csv.string())
                .exit_code == 0);

    const auto report_path = test_dir() / "report.json";
    const auto result = run_cli("detect " + csv.string() +
                                " --replicates 99 --seed 5 --threads 2 --output " +
                                report_path.string());
    REQUIRE(result.exit_code == 0);

    const auto report = json::parse(bdcp::read_text_file(report_path.string()));
    CHECK(report["T"] == 120);
    REQUIRE(report["changepoints"].size() == 2);
    const long long first = report["changepoints"][0].get<long long>();
    const long long second = report["changepoints"][1].get<long long>();
    CHECK(std::llabs(first - 40) <= 3);
    CHECK(std::llabs(second - 80) <= 3);

    SUBCASE("evaluate consumes the detect report unmodified") {
        const auto truth_path = test_dir() / "detect_in.truth.json";
        const auto eval = run_cli("evaluate " + truth_path.string() + " " +
                                  report_path.string());
        REQUIRE(eval.exit_code == 0);
        const auto metrics = json::parse(eval.out);
        CHECK(metrics["adjusted_rand_index"].get<double>() > 0.85);
        CHECK(metrics["hausdorff"].get<long long>() <= 3);
    }
}

TEST_CASE("evaluate of identical files is perfect") {
    const auto p = test_dir() / "truth_eq.json";
    write_file(p, R"({"T": 100, "changepoints": [30, 60]})");
    const auto result = run_cli("evaluate " + p.string() + " " + p.string());
    REQUIRE(result.exit_code == 0);
    const auto metrics = json::parse(result.out);
    CHECK(metrics["adjusted_rand_index"] == 1.0);
    CHECK(metrics["rand_index"] == 1.0);
    CHECK(metrics["hausdorff"] == 0);
}

TEST_CASE("evaluate hand case and length mismatch") {
    const auto a = test_dir() / "eval_a.json";
    const auto b = test_dir() / "eval_b.json";
    write_file(a, R"({"T": 120, "changepoints": [50]})");
    write_file(b, R"({"T": 120, "changepoints": [40]})");
    const auto result = run_cli("evaluate " + a.string() + " " + b.string());
    REQUIRE(result.exit_code == 0);
    CHECK(json::parse(result.out)["hausdorff"] == 10);

    const auto c = test_dir() / "eval_c.json";
    write_file(c, R"({"T": 80, "changepoints": [40]})");
    CHECK(run_cli("evaluate " + a.string() + " " + c.string()).exit_code == 2);
}

TEST_CASE("detect rejects malformed input files") {
    const auto bad_csv = test_dir() / "bad_rows.csv";
    write_file(bad_csv, "x1,x2\n1.0,2.0\n3.0\n");
    const auto r1 = run_cli("detect " + bad_csv.string());
    CHECK(r1.exit_code == 2);
    CHECK(json::parse(r1.out).contains("error"));

    const auto not_numbers = test_dir() / "bad_num.csv";
    write_file(not_numbers, "x1\n1.0\nబోగస్\n");
    CHECK(run_cli("detect " + not_numbers.string()).exit_code == 2);

    CHECK(run_cli("detect " + (test_dir() / "missing.csv").string()).exit_code == 2);
}

TEST_CASE("detect validates precomputed matrices and reports violations") {
    const auto mat = test_dir() / "asym.csv";
    write_file(mat, "a,b\n0,1\n2,0\n");
    const auto result = run_cli("detect " + mat.string() + " --metric precomputed");
    REQUIRE(result.exit_code == 2);
    const auto doc = json::parse(result.out);
    REQUIRE(doc.contains("violations"));
    CHECK(doc["violations"][0]["kind"] == "asymmetry");
}

TEST_CASE("detect on a too-short series reports the flag and succeeds") {
    const auto csv = test_dir() / "short.csv";
    write_file(csv, "x1\n1\n2\n3\n");
    const auto result = run_cli("detect " + csv.string());
    REQUIRE(result.exit_code == 0);
    const auto report = json::parse(result.out);
    CHECK(report["too_short"] == true);
    CHECK(report["changepoints"].empty());
}

TEST_CASE("circular metric requires an angle column") {
    const auto csv = test_dir() / "angles.csv";
    write_file(csv, "x1\n0.0\n1.0\n");
    CHECK(run_cli("detect " + csv.string() + " --metric circular").exit_code == 2);
}

TEST_CASE("profile exports the scan surface on the stride grid") {
    const auto csv = test_dir() / "profile_in.csv";
    std::string body = "x1\n";
    for (int i = 0; i < 8; ++i) body += i < 4 ? "0\n" : "7\n";
    write_file(csv, body);

    const auto result = run_cli("profile " + csv.string() + " --min-seg 2");
    REQUIRE(result.exit_code == 0);
    CHECK(result.out.substr(0, 6) == "M,L,V\n");

    const auto strided =
        run_cli("profile " + csv.string() + " --min-seg 2 --stride 2");
    REQUIRE(strided.exit_code == 0);
    std::size_t full_rows = std::count(result.out.begin(), result.out.end(), '\n');
    std::size_t coarse_rows = std::count(strided.out.begin(), strided.out.end(), '\n');
    CHECK(coarse_rows < full_rows);

    // segment shorter than 2 * min_seg
    CHECK(run_cli("profile " + csv.string() + " --min-seg 5").exit_code == 2);
}

TEST_CASE("unknown flags and missing subcommands exit with code 2") {
    CHECK(run_cli("detect --bogus").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
}
