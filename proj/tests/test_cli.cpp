#include <doctest.h>

#include "cattaneo/cli.hpp"
#include "cattaneo/errors.hpp"
#include "cattaneo/experiments.hpp"
#include "cattaneo/spectrum.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace cattaneo;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("length tokens and number formatting") {
    CHECK(cli::parse_length("pi") == kPi);
    CHECK(cli::parse_length("3.5") == 3.5);
    CHECK_THROWS_AS(cli::parse_length("abc"), InvalidArgument);
    CHECK_THROWS_AS(cli::parse_length("1.0x"), InvalidArgument);
    CHECK_THROWS_AS(cli::parse_length("inf"), InvalidArgument);
    for (double x : {0.1, 1.0 / 3, kPi, -2.5e-300, 6.02e23}) CHECK(std::stod(cli::format_double(x)) == x);
    CHECK(cli::format_double(INFINITY) == "inf");
    CHECK(cli::format_double(-INFINITY) == "-inf");
}

TEST_CASE("exceptional set listing") {
    const auto r = run({"exceptional", "--L", "3.14159265358979", "--N", "10", "--kind", "c"});
    CHECK(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 11);
    CHECK(rows[0] == std::vector<std::string>{"index", "value"});
    CHECK(std::stod(rows[10][1]) == doctest::Approx(1.0).epsilon(1e-12));

    const auto s = run({"exceptional", "--N", "3", "--kind", "sigma", "--gamma-rho", "4"});
    CHECK(s.code == 0);
    CHECK(std::stod(parse_csv(s.out)[1][1]) == doctest::Approx(4.0 / 9));
}

TEST_CASE("exit codes") {
    CHECK(run({"solve", "--a", "1", "--b", "1", "--c", "0.25", "--L", "pi"}).code == 2);
    CHECK(run({"solve", "--a", "1", "--b", "1", "--c", "0.26", "--L", "pi"}).code == 0);
    CHECK(run({"solve", "--a", "1", "--b", "1", "--c", "1", "--L", "pi", "--N", "4", "--allow-exceptional",
               "--theta0", "1", "--theta1", "0"})
              .code == 3);
    CHECK(run({"solve", "--a", "1", "--b", "1", "--c", "1", "--L", "pi", "--N", "4", "--allow-exceptional",
               "--theta0", "-1", "--theta1", "1"})
              .code == 0);
    CHECK(run({"heatcmp", "--sigma", "1"}).code == 2);
    CHECK(run({"boundary", "--a", "1", "--b", "1", "--c", "0.25"}).code == 2);
    CHECK(run({}).code == 1);
    CHECK(run({"nonsense"}).code == 1);
    CHECK(run({"solve", "--a", "1", "--b", "1"}).code == 1);
    CHECK(run({"solve", "--a", "1", "--b", "1", "--c", "0.3", "--chi", "1"}).code == 1);
    CHECK(run({"spectrum", "--L", "abc"}).code == 1);
    CHECK(run({"exceptional", "--kind", "x"}).code == 1);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("physical parameter styles") {
    // χ = 1, σ = 0.5, γρ = 1.6 under m1 is a = 2, b = 1.25, c = 0.3125.
    const auto m1 = run({"solve", "--chi", "1", "--sigma", "0.5", "--gamma-rho", "1.6", "--map", "m1", "--t", "0.3"});
    const auto raw = run({"solve", "--a", "2", "--b", "1.25", "--c", "0.3125", "--t", "0.3"});
    REQUIRE(m1.code == 0);
    REQUIRE(raw.code == 0);
    const auto x = parse_csv(m1.out), y = parse_csv(raw.out);
    REQUIRE(x.size() == y.size());
    for (std::size_t i = 1; i < x.size(); ++i)
        CHECK(std::stod(x[i][2]) == doctest::Approx(std::stod(y[i][2])).epsilon(1e-12));
    CHECK(run({"solve", "--chi", "1", "--sigma", "0.5", "--gamma-rho", "1.6", "--map", "m2"}).code == 0);
    CHECK(run({"solve", "--chi", "1", "--sigma", "0.5", "--gamma-rho", "2", "--map", "m1"}).code == 2);
}

TEST_CASE("limit3 schema") {
    const auto r = run({"limit3", "--kmax", "12", "--t", "0.1"});
    CHECK(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 13);
    CHECK(rows[0] == std::vector<std::string>{"k", "sigma", "coeff1", "exp1", "coeff2", "exp2", "logvalue", "flag"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].size() == 8);
        CHECK((rows[i][7] == "ok" || rows[i][7] == "saturated" || rows[i][7] == "exceptional"));
    }
    CHECK(r.err.find("9") != std::string::npos);
}

TEST_CASE("round trip of CSV values through the library") {
    std::mt19937_64 rng(2024);
    {
        const auto rows = parse_csv(run({"limit3", "--kmax", "40", "--t", "0.1"}).out);
        const auto ref = limit3_scan(1, 40, 0.1);
        std::uniform_int_distribution<std::size_t> pick(1, rows.size() - 1);
        for (int i = 0; i < 10; ++i) {
            const std::size_t r = pick(rng);
            const auto& row = ref.rows[r - 1];
            CHECK(rows[r][0] == std::to_string(row.k));
            CHECK(rows[r][1] == cli::format_double(row.parameter));
            CHECK(rows[r][2] == cli::format_double(row.coeff_first));
            CHECK(rows[r][3] == cli::format_double(row.exp_first));
            CHECK(rows[r][4] == cli::format_double(row.coeff_second));
            CHECK(rows[r][5] == cli::format_double(row.exp_second));
            CHECK(rows[r][6] == cli::format_double(row.value.log.log_abs));
            CHECK(rows[r][7] == std::string(to_string(row.flag)));
        }
    }
    {
        const auto rows = parse_csv(run({"limit2"}).out);
        const auto ref = limit2_scan_auto_gamma(1, 1, 1, interval_modes(kPi, 40), 4, 40, 0.1);
        std::uniform_int_distribution<std::size_t> pick(1, rows.size() - 1);
        for (int i = 0; i < 10; ++i) {
            const std::size_t r = pick(rng);
            const auto& row = ref.rows[r - 1];
            CHECK(std::stod(rows[r][1]) == row.parameter);
            CHECK(std::stod(rows[r][2]) == row.coeff_first);
            CHECK(std::stod(rows[r][6]) == row.value.value);
        }
    }
}

TEST_CASE("CSV written to a file") {
    const auto path = std::filesystem::temp_directory_path() / "cattaneo_cli_test.csv";
    const auto r = run({"--out", path.string(), "wholeline", "--jmax", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path, std::ios::binary);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(text.find('\r') == std::string::npos);
    CHECK(text.rfind("j,lambda,", 0) == 0);
    CHECK(parse_csv(text).size() == 6);
    std::filesystem::remove(path);
}

TEST_CASE("identical configurations give identical output") {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"verify", "--seed", "3", "--count", "8"}, {"limit1"}, {"heatcmp"},
          {"spectrum", "--L", "1", "2", "--N", "50"}, {"boundary", "--a", "1", "--b", "1", "--c", "0.3"}}) {
        const auto a = run(args), b = run(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
    CHECK(run({"verify", "--seed", "3", "--count", "8"}).out != run({"verify", "--seed", "4", "--count", "8"}).out);
}

TEST_CASE("verify suite passes") {
    const auto r = run({"verify", "--seed", "11", "--count", "30"});
    CHECK(r.code == 0);
    const auto rows = parse_csv(r.out);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].back() == "ok");
}
