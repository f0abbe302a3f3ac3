#include "commands.hpp"

#include "asw/output.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "asw");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = asw::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
        } else if (c == ',' && !quoted) {
            cells.push_back(cell);
            cell.clear();
        } else {
            cell += c;
        }
    }
    cells.push_back(cell);
    return cells;
}

using Record = std::map<std::string, std::string>;

// Rows of one record type, keyed by the preceding header.
std::vector<Record> records(const std::string& csv, const std::string& name)
{
    std::vector<Record> rows;
    std::vector<std::string> header;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        auto cells = split(line);
        if (cells[0] == "record") {
            header = cells;
        } else if (cells[0] == name) {
            Record r;
            for (std::size_t i = 1; i < cells.size(); ++i) {
                r[header[i]] = cells[i];
            }
            rows.push_back(r);
        }
    }
    return rows;
}

double num(const Record& r, const std::string& key) { return std::stod(r.at(key)); }

}  // namespace

TEST_CASE("spectrum at v0 = 5")
{
    const auto r = run({"spectrum", "--v0", "5"});
    REQUIRE(r.code == 0);
    const auto rows = records(r.out, "spectrum");
    REQUIRE(rows.size() == 6);
    const double expect[6] = {-3.733845, -0.4354, 0.4972, 0.7227, 1.9639, 2.3852};
    for (int i = 0; i < 6; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        CHECK(std::stoi(row.at("index")) == i);
        CHECK(std::stoi(row.at("nodes")) == i);
        CHECK(std::abs(num(row, "energy") - expect[i]) < 1e-3);
        CHECK(num(row, "U") >= 0.5);
    }
}

TEST_CASE("spectrum snaps to a barrier-top value")
{
    const auto r = run({"spectrum", "--v0", "0.0655"});
    REQUIRE(r.code == 0);
    const auto rows = records(r.out, "spectrum");
    CHECK(rows[0].at("kind") == "BarrierTop");
    const auto params = records(r.out, "parameters");
    CHECK(params[0].at("snapped") == "true");
    CHECK(rows[0].at("energy") == params[0].at("v0_used"));

    const auto raw = run({"spectrum", "--v0", "0.0655", "--no-snap"});
    REQUIRE(raw.code == 0);
    CHECK(records(raw.out, "spectrum")[0].at("kind") == "Generic");
    CHECK(records(raw.out, "parameters")[0].at("snapped") == "false");
}

TEST_CASE("spectrum of the free box")
{
    const auto r = run({"spectrum", "--v0", "0", "--n-states", "4"});
    REQUIRE(r.code == 0);
    const auto rows = records(r.out, "spectrum");
    REQUIRE(rows.size() == 4);
    for (int n = 1; n <= 4; ++n) {
        CHECK(num(rows[static_cast<std::size_t>(n - 1)], "energy") == doctest::Approx(n * n * M_PI * M_PI / 144).epsilon(1e-11));
    }
}

TEST_CASE("spectrum with an energy cut-off")
{
    const auto r = run({"spectrum", "--v0", "5", "--e-max", "1"});
    REQUIRE(r.code == 0);
    CHECK(records(r.out, "spectrum").size() == 4);
}

TEST_CASE("special root lists")
{
    const auto f = run({"special", "f", "--count", "4"});
    REQUIRE(f.code == 0);
    const auto f_rows = records(f.out, "special");
    const double f_expect[4] = {0.3333, 4.09982, 12.7396, 26.31113};
    REQUIRE(f_rows.size() == 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(num(f_rows[static_cast<std::size_t>(i)], "v0") - f_expect[i]) < 1e-3);
    }
    const auto g = run({"special", "g"});
    REQUIRE(g.code == 0);
    const auto g_rows = records(g.out, "special");
    const double g_expect[4] = {0.0655, 0.2981, 0.5816, 1.3322};
    REQUIRE(g_rows.size() == 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(num(g_rows[static_cast<std::size_t>(i)], "v0") - g_expect[i]) < 1e-3);
        CHECK(std::stoi(g_rows[static_cast<std::size_t>(i)].at("state_index")) == i);
    }
}

TEST_CASE("special both reports nearest pairs and fails without a simultaneous root")
{
    const auto r = run({"special", "both", "--count", "1"});
    CHECK(r.code == 3);
    CHECK(records(r.out, "special").empty());
    const auto pairs = records(r.out, "special_pair");
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].at("simultaneous") == "false");
    CHECK(std::stoi(pairs[0].at("zero_index")) == 0);
    CHECK(std::stoi(pairs[0].at("top_index")) == 1);
    CHECK(r.err.find("simultaneous") != std::string::npos);
}

TEST_CASE("wavefunction samples")
{
    SUBCASE("zero-energy ground state has linear tails")
    {
        const auto r = run({"wavefunction", "0", "--v0", "0.3333", "--samples", "1201"});
        REQUIRE(r.code == 0);
        const auto meta = records(r.out, "state");
        CHECK(meta[0].at("kind") == "ZeroEnergy");
        CHECK(num(meta[0], "norm") > 0);
        const auto s = records(r.out, "sample");
        REQUIRE(s.size() == 1201);
        CHECK(s.front().at("x") == "-6");
        CHECK(s.front().at("psi") == "0");
        CHECK(s.back().at("x") == "6");
        CHECK(s.back().at("psi") == "0");
        // x = -6 + i/100: second differences vanish on both tails.
        for (std::size_t i : {50u, 200u, 350u, 850u, 1000u, 1150u}) {
            const double second = num(s[i - 1], "psi") - 2 * num(s[i], "psi") + num(s[i + 1], "psi");
            CHECK(std::abs(second) < 1e-11);
        }
    }
    SUBCASE("barrier-top ground state is linear on the barrier")
    {
        const auto r = run({"wavefunction", "0", "--v0", "0.0655", "--samples", "1201"});
        REQUIRE(r.code == 0);
        CHECK(records(r.out, "state")[0].at("kind") == "BarrierTop");
        const auto s = records(r.out, "sample");
        for (std::size_t i = 610; i < 800; i += 20) {
            const double second = num(s[i - 1], "psi") - 2 * num(s[i], "psi") + num(s[i + 1], "psi");
            CHECK(std::abs(second) < 1e-11);
        }
        const std::size_t outside = 300;
        CHECK(std::abs(num(s[outside - 1], "psi") - 2 * num(s[outside], "psi") + num(s[outside + 1], "psi")) > 1e-8);
    }
}

TEST_CASE("oracle command")
{
    const auto r = run({"oracle", "--v0", "5", "--grid-n", "8000"});
    REQUIRE(r.code == 0);
    for (const auto& row : records(r.out, "oracle")) {
        CHECK(std::abs(num(row, "deviation")) <= 1e-3);
    }
    CHECK(records(r.out, "oracle_grid").size() == 18);

    const auto box = run({"oracle", "--v0", "0"});
    REQUIRE(box.code == 0);
    for (const auto& row : records(box.out, "oracle")) {
        CHECK(std::abs(num(row, "deviation")) <= 1e-5);
    }

    const auto zero = run({"oracle", "--v0", "12.7396"});
    REQUIRE(zero.code == 0);
    const auto rows = records(zero.out, "oracle");
    CHECK(rows[2].at("kind") == "ZeroEnergy");
    CHECK(std::abs(num(rows[2], "extrapolated")) < 1e-6);
}

TEST_CASE("table1 command")
{
    const auto r = run({"table1"});
    const auto rows = records(r.out, "table1");
    REQUIRE(rows.size() == 66);
    const auto star = records(r.out, "table1_star");
    REQUIRE(star.size() == 3);
    bool zero_in_row10 = false;
    for (const auto& row : rows) {
        if (row.at("row") == "10" && row.at("index") == "3") {
            zero_in_row10 = row.at("kind") == "ZeroEnergy" && row.at("computed") == "0";
        }
    }
    CHECK(zero_in_row10);
    CHECK(star[2].at("row") == "10");
    CHECK(star[2].at("index") == "17");
    // The exit status reflects every printed comparison; entries that do not
    // reproduce are listed on stderr.
    const auto summary = records(r.out, "table1_summary");
    REQUIRE(summary.size() == 1);
    CHECK(r.code == (summary[0].at("failures") == "0" ? 0 : 3));
    CHECK(r.err.find("table1 runtime") != std::string::npos);
}

TEST_CASE("usage errors")
{
    CHECK(run({}).code == 2);
    CHECK(run({"spectrum"}).code == 2);
    CHECK(run({"spectrum", "--v0", "-1"}).code == 2);
    CHECK(run({"spectrum", "--v0", "1", "--b", "7"}).code == 2);
    CHECK(run({"spectrum", "--v0", "1", "--format", "xml"}).code == 2);
    CHECK(run({"special", "h"}).code == 2);
    CHECK(run({"special", "f", "--count", "0"}).code == 2);
    CHECK(run({"wavefunction", "-1", "--v0", "1"}).code == 2);
    CHECK(run({"wavefunction", "9", "--v0", "1", "--e-max", "0.5"}).code == 2);
    CHECK(run({"oracle", "--v0", "1", "--grid-n", "10"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("output is deterministic and CSV matches JSON")
{
    const auto a = run({"spectrum", "--v0", "4.0998", "--n-states", "8"});
    const auto b = run({"spectrum", "--v0", "4.0998", "--n-states", "8"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);

    const auto j = run({"spectrum", "--v0", "4.0998", "--n-states", "8", "--format", "json"});
    REQUIRE(j.code == 0);
    const auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["schema"] == 1);
    CHECK(doc["command"] == "spectrum");
    const auto rows = records(a.out, "spectrum");
    REQUIRE(doc["spectrum"].size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& obj = doc["spectrum"][i];
        CHECK(rows[i].at("energy") == asw::format_number(obj["energy"].get<double>()));
        CHECK(rows[i].at("U") == asw::format_number(obj["U"].get<double>()));
        CHECK(rows[i].at("kind") == obj["kind"].get<std::string>());
    }
}

TEST_CASE("output file")
{
    const std::string path = "cli_output_test.csv";
    const auto r = run({"spectrum", "--v0", "5", "--output", path});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream content;
    content << in.rdbuf();
    CHECK(records(content.str(), "spectrum").size() == 6);
    std::remove(path.c_str());
    CHECK(run({"spectrum", "--v0", "5", "--output", "/nonexistent-dir/x.csv"}).code == 2);
}
