#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

struct CmdResult {
    int exit_code;
    std::string output; // stdout + stderr combined
};

CmdResult run_cli(const std::string& args, const std::string& tag) {
    const std::string out_file = "cli_" + tag + ".txt";
    const std::string cmd =
        std::string(SECRECY_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
    const int rc = std::system(cmd.c_str());
    CmdResult result;
    result.exit_code = (rc == -1) ? -1 : WEXITSTATUS(rc);
    std::ifstream in(out_file, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    result.output = ss.str();
    return result;
}

double parse_value(const std::string& output, const std::string& key) {
    const std::string needle = key + " = ";
    const auto pos = output.find(needle);
    REQUIRE(pos != std::string::npos);
    return std::stod(output.substr(pos + needle.size()));
}

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    int column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        return -1;
    }
};

Csv parse_csv(const std::string& text) {
    Csv csv;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (first) {
            csv.header = cells;
            first = false;
        } else {
            std::vector<double> row;
            for (const auto& c : cells) row.push_back(std::stod(c));
            csv.rows.push_back(std::move(row));
        }
    }
    return csv;
}

const std::string kConfigDir = SECRECY_CONFIG_DIR;

} // namespace

TEST_CASE("eval prints the report and honors the ordinary-code case") {
    const auto r =
        run_cli("eval --rb 1 --rs 1 --theta 1 --snr-e-db 0 --snr-b-db 10", "eval_ordinary");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("p_out = 1.000000") != std::string::npos);
    CHECK(std::abs(parse_value(r.output, "avg_equivocation") - 0.331423) < 1e-5);
    CHECK(std::abs(parse_value(r.output, "p_tx") - 0.904837) < 1e-5);
}

TEST_CASE("eval matches the closed form for a wiretap pair") {
    const auto r =
        run_cli("eval --rb 1 --rs 0.5 --theta 1 --snr-e-db 0 --snr-b-db 10", "eval_pair");
    CHECK(r.exit_code == 0);
    const double expected = std::exp(-(std::sqrt(2.0) - 1.0));
    CHECK(std::abs(parse_value(r.output, "p_out") - expected) < 1e-6);
}

TEST_CASE("eval validation failures exit with code 2") {
    CHECK(run_cli("eval --rb 1 --theta 1 --snr-e-db 0 --snr-b-db 10", "eval_missing").exit_code ==
          2);
    CHECK(run_cli("eval --rb 0.5 --rs 1 --snr-e-db 0 --snr-b-db 10", "eval_bad").exit_code == 2);
    CHECK(run_cli("eval --rb 1 --rs 1 --theta 1.5 --snr-e-db 0 --snr-b-db 10", "eval_theta")
              .exit_code == 2);
}

TEST_CASE("eval --format json emits machine-readable output") {
    const auto r = run_cli(
        "eval --rb 1 --rs 1 --theta 1 --snr-e-db 0 --snr-b-db 10 --format json", "eval_json");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    CHECK(j["p_out"].get<double>() == 1.0);
    CHECK(std::abs(j["leakage_rate"].get<double>() +
                   j["avg_equivocation"].get<double>() * 1.0 - 1.0) < 1e-12);
}

TEST_CASE("eval --verify runs the oracle alongside") {
    const auto r = run_cli("eval --rb 1 --rs 0.5 --theta 1 --snr-e-db 0 --snr-b-db 10 "
                           "--verify --seed 3 --samples 100000",
                           "eval_verify");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("mc p_out") != std::string::npos);
    CHECK(r.output.find("PASS") != std::string::npos);
}

TEST_CASE("design reports solutions and detects infeasibility") {
    const auto infeasible =
        run_cli("design --objective outage --gamma 1.6 --snr-b-db 10 --snr-e-db 10",
                "design_infeasible");
    CHECK(infeasible.exit_code == 1);

    const auto r = run_cli("design --objective leakage --gamma 0.5 --snr-b-db 10 --snr-e-db 10",
                           "design_leakage");
    CHECK(r.exit_code == 0);
    CHECK(std::abs(parse_value(r.output, "throughput") - 0.5) <= 1e-8);
    CHECK(r.output.find("binding = ") != std::string::npos);

    const auto v = run_cli("design --objective outage --gamma 0.5 --snr-b-db 10 --snr-e-db 10 "
                           "--verify",
                           "design_verify");
    CHECK(v.exit_code == 0);
    CHECK(v.output.find("PASS") != std::string::npos);
}

TEST_CASE("sweep emits a header plus one row per grid point") {
    const auto r = run_cli("sweep --variable rate_secret --start 0.2 --stop 0.8 --steps 2 "
                           "--rb 1 --snr-b-db 10 --snr-e-db 0",
                           "sweep_two");
    CHECK(r.exit_code == 0);
    const auto csv = parse_csv(r.output);
    CHECK(csv.header.size() == 6);
    CHECK(csv.header[0] == "rate_secret");
    CHECK(csv.rows.size() == 2);
    CHECK(csv.rows[0][0] == 0.2);
    CHECK(csv.rows[1][0] == 0.8);
}

TEST_CASE("fig2 recipe: outage curves ordered by theta") {
    const auto r = run_cli("sweep --config " + kConfigDir + "/fig2.cfg", "sweep_fig2");
    CHECK(r.exit_code == 0);
    const auto csv = parse_csv(r.output);
    REQUIRE(csv.rows.size() == 20);
    const int c1 = csv.column("p_out_theta_1");
    const int c08 = csv.column("p_out_theta_0.8");
    const int c06 = csv.column("p_out_theta_0.6");
    REQUIRE(c1 >= 0);
    REQUIRE(c08 >= 0);
    REQUIRE(c06 >= 0);
    for (const auto& row : csv.rows) {
        CHECK(row[c06] <= row[c08]);
        CHECK(row[c08] <= row[c1]);
    }
}

TEST_CASE("command-line flags override config-file keys") {
    const auto r =
        run_cli("sweep --config " + kConfigDir + "/fig2.cfg --steps 2", "sweep_override");
    CHECK(r.exit_code == 0);
    CHECK(parse_csv(r.output).rows.size() == 2);
}

TEST_CASE("gamma sweep carries the design columns (fig6 recipe)") {
    const auto r = run_cli("sweep --variable gamma --start 0.3 --stop 1.5 --steps 4 "
                           "--snr-b-db 10 --snr-e-db 10 --theta 1",
                           "sweep_gamma");
    CHECK(r.exit_code == 0);
    const auto csv = parse_csv(r.output);
    REQUIRE(csv.rows.size() == 4);
    const int rs1 = csv.column("rs_outage_theta_1");
    const int rs2 = csv.column("rs_equivocation");
    const int rs3 = csv.column("rs_leakage");
    REQUIRE(rs1 >= 0);
    REQUIRE(rs2 >= 0);
    REQUIRE(rs3 >= 0);
    // The three designs differ away from the feasibility bound.
    CHECK(std::abs(csv.rows[0][rs1] - csv.rows[0][rs2]) > 1e-3);
    CHECK(std::abs(csv.rows[0][rs2] - csv.rows[0][rs3]) > 1e-3);
}

TEST_CASE("verify is deterministic for a fixed seed") {
    const auto a = run_cli("verify --seed 7 --samples 50000", "verify_a");
    const auto b = run_cli("verify --seed 7 --samples 50000", "verify_b");
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.find("checks passed") != std::string::npos);
}
