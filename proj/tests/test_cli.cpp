#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "zi/cli.hpp"
#include "zi/csv.hpp"
#include "zi/errors.hpp"
#include "zi/random.hpp"
#include "zi/suite.hpp"

namespace fs = std::filesystem;
using namespace zi;

namespace {

const std::string kSource = ZI_SOURCE_DIR;
const std::string kCalibration = kSource + "/data/calibration.txt";

fs::path scratch() {
    const auto dir = fs::temp_directory_path() / "zi_test_cli";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

// Runs the CLI writing to a scratch file and returns (exit code, file contents).
std::pair<int, std::string> run_to_file(std::vector<std::string> args, const std::string& name) {
    const auto out = scratch() / name;
    fs::remove(out);
    args.push_back("--output");
    args.push_back(out.string());
    const int rc = cli::run(args);
    return {rc, fs::exists(out) ? slurp(out) : std::string{}};
}

struct Golden {
    std::string name;
    std::vector<std::string> args;
};

std::vector<Golden> goldens() {
    return {
        {"sieve", {"sieve", "--x-max", "100"}},
        {"enumerate", {"enumerate", "--x-max", "50"}},
        {"sum", {"sum", "--f", "mu", "--x-max", "1000", "--theta2", "1/4"}},
        {"pretentious_profile", {"pretentious-profile", "--f", "random", "--seed", "42", "--m", "-2..2", "--x-max", "1000"}},
        {"sectorial", {"sectorial", "--f", "mu", "--theta1", "0", "--theta2", "1/4", "--x-max", "10000", "--T", "32"}},
        {"short_interval", {"short-interval", "--f", "mu", "--x-max", "10000", "--h", "251", "--theta2", "1/4", "--T", "4",
                            "--m", "-3..3"}},
        {"verify_lemmas", {"verify-lemmas", "--x-max", "1000", "--calibration", kCalibration}},
    };
}

} // namespace

TEST_CASE("golden files") {
    const bool update = std::getenv("ZI_UPDATE_GOLDEN") != nullptr;
    for (const auto& g : goldens()) {
        CAPTURE(g.name);
        const auto [rc, text] = run_to_file(g.args, g.name + ".csv");
        CHECK(rc == cli::kOk);
        const fs::path golden = fs::path(kSource) / "tests" / "golden" / (g.name + ".csv");
        if (update) {
            std::ofstream(golden, std::ios::binary) << text;
            continue;
        }
        REQUIRE(fs::exists(golden));
        CHECK(text == slurp(golden));
    }
}

TEST_CASE("golden contents against oracles") {
    const fs::path dir = fs::path(kSource) / "tests" / "golden";

    const auto sieve = parse_csv(slurp(dir / "sieve.csv"));
    REQUIRE(sieve.size() == 26);
    CHECK(sieve[0] == std::vector<std::string>{"re", "im", "norm", "kind", "rational_prime"});
    const auto primes = oracle::prime_ideals(100);
    std::set<std::pair<long, long>> want, got;
    for (const auto& p : primes) want.insert({p.re, p.im});
    for (std::size_t i = 1; i < sieve.size(); ++i) got.insert({std::stol(sieve[i][0]), std::stol(sieve[i][1])});
    CHECK(got == want);

    const auto en = parse_csv(slurp(dir / "enumerate.csv"));
    CHECK(static_cast<long>(en.size()) - 1 == oracle::lattice_count(50));

    // S_mu(1000) from the oracle factorization
    const auto sum = parse_csv(slurp(dir / "sum.csv"));
    REQUIRE(sum.size() == 4);
    const auto all = oracle::prime_ideals(1000);
    double s_mu = 0.0, s_mu_J = 0.0;
    for (const auto& [n, zs] : oracle::ideals_by_norm(1000))
        for (const auto& z : zs) {
            const auto fac = oracle::factor(z, all);
            bool squarefree = true;
            for (const auto& [p, e] : fac) squarefree = squarefree && e == 1;
            const double mu = squarefree ? (fac.size() % 2 ? -1.0 : 1.0) : 0.0;
            s_mu += mu;
            if (std::atan2(double(z.im), double(z.re)) < std::acos(-1.0) / 4) s_mu_J += mu;
        }
    CHECK(sum[3][0] == "1000");
    CHECK(std::stod(sum[3][1]) == s_mu);
    CHECK(std::stod(sum[3][3]) == s_mu_J);

    const auto prof = parse_csv(slurp(dir / "pretentious_profile.csv"));
    CHECK(prof.size() == 6);
    const auto vl = parse_csv(slurp(dir / "verify_lemmas.csv"));
    REQUIRE(vl.size() > 1);
    for (std::size_t i = 1; i < vl.size(); ++i) CHECK(vl[i].back() == "1");
}

TEST_CASE("profile shape at 1e5") {
    const auto [rc, text] = run_to_file(
        {"pretentious-profile", "--f", "random", "--seed", "42", "--m", "-4..4", "--x-max", "100000"}, "profile.csv");
    CHECK(rc == cli::kOk);
    const auto rows = parse_csv(text);
    REQUIRE(rows.size() == 10);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].size() == 4);
        CHECK(std::stoi(rows[i][0]) == static_cast<int>(i) - 5);
        CHECK(std::stod(rows[i][2]) >= 0.0);
    }
}

TEST_CASE("sectorial columns") {
    const auto [rc, text] = run_to_file(
        {"sectorial", "--f", "mu", "--theta1", "0", "--theta2", "1/2", "--x-max", "100000", "--T", "32"}, "sect.csv");
    CHECK(rc == cli::kOk);
    const auto rows = parse_csv(text);
    CHECK(rows[0] == std::vector<std::string>{"x", "S_fJ", "delta_S_f", "residual", "bound"});
    CHECK(rows.size() == 6);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][3]) == 0.0);  // J is the full quadrant
}

TEST_CASE("exit codes") {
    CHECK(cli::run({"nonsense"}) == cli::kUsage);
    CHECK(cli::run({}) == cli::kUsage);
    CHECK(cli::run({"sieve", "--x-max", "100", "--bogus"}) == cli::kUsage);
    CHECK(cli::run({"sieve", "--x-max", "1"}) == cli::kUsage);
    CHECK(cli::run({"sum", "--f", "nope", "--x-max", "100"}) == cli::kUsage);
    CHECK(cli::run({"sum", "--theta1", "1/2", "--theta2", "1/4", "--x-max", "100"}) == cli::kUsage);
    CHECK(cli::run({"verify-lemmas", "--x-max", "1000"}) == cli::kUsage);
    CHECK(cli::run({"calibrate", "--x-max", "1000000", "--calibration", (scratch() / "c.txt").string()}) == cli::kUsage);
    CHECK(cli::run({"--help"}) == cli::kOk);

    // constants shrunk by 10^6 must trip the regression exit
    const auto base = Calibration::load(kCalibration);
    auto cal = base;
    for (const auto& [tag, e] : base.entries()) cal.set(tag, e.constant * 1e-6);
    const auto tight = scratch() / "tight.txt";
    cal.save(tight.string());
    const auto [rc, text] = run_to_file({"verify-lemmas", "--x-max", "1000", "--calibration", tight.string()}, "v.csv");
    CHECK(rc == cli::kRegression);
    CHECK(text.find(",0\n") != std::string::npos);

    const auto bad_hash = scratch() / "bad.txt";
    std::ofstream(bad_hash) << "# calibration v1\nthm12 0000000000000000 1.0\n";
    CHECK(cli::run({"verify-lemmas", "--x-max", "1000", "--calibration", bad_hash.string()}) != cli::kOk);
}

TEST_CASE("calibrate writes a loadable file") {
    const auto path = scratch() / "cal.txt";
    fs::remove(path);
    const auto [rc, text] = run_to_file({"calibrate", "--x-max", "1000", "--calibration", path.string()}, "cal.csv");
    CHECK(rc == cli::kOk);
    const auto cal = Calibration::load(path.string());
    CHECK(cal.entries().size() >= 10);
    for (const auto& [tag, e] : cal.entries()) CHECK(e.param_hash == shape_hash(tag));
    CHECK(slurp(path).rfind("# calibration v1\n", 0) == 0);
    // at its own lattice every report passes
    CHECK(cli::run({"verify-lemmas", "--x-max", "1000", "--calibration", path.string(), "--output",
                    (scratch() / "self.csv").string()}) == cli::kOk);
}

TEST_CASE("config file with flag override") {
    const auto conf = scratch() / "run.conf";
    std::ofstream(conf) << "x-max = 1000\nf = mu\ntheta2 = 1/4\n";
    const auto [a_rc, a] = run_to_file({"sum", "--config", conf.string()}, "a.csv");
    const auto [b_rc, b] = run_to_file({"sum", "--x-max", "1000", "--f", "mu", "--theta2", "1/4"}, "b.csv");
    CHECK(a_rc == cli::kOk);
    CHECK(b_rc == cli::kOk);
    CHECK(a == b);
    const auto [c_rc, c] = run_to_file({"sum", "--config", conf.string(), "--x-max", "100"}, "c.csv");
    CHECK(c_rc == cli::kOk);
    CHECK(parse_csv(c).back()[0] == "100");
}

TEST_CASE("thread count does not change output") {
    const std::vector<std::vector<std::string>> cmds = {
        {"sum", "--f", "random", "--x-max", "200000", "--theta2", "1/3"},
        {"pretentious-profile", "--f", "random", "--m", "-2..2", "--x-max", "20000"},
        {"sectorial", "--f", "random-nc", "--x-max", "200000", "--theta1", "1/10", "--theta2", "2/5"},
        {"short-interval", "--f", "mu", "--x-max", "100000", "--theta2", "1/4"},
        {"verify-lemmas", "--x-max", "10000", "--calibration", kCalibration},
    };
    int k = 0;
    for (auto cmd : cmds) {
        CAPTURE(cmd[0]);
        auto one = cmd, many = cmd;
        one.insert(one.end(), {"--threads", "1"});
        many.insert(many.end(), {"--threads", "8"});
        const auto [r1, a] = run_to_file(one, "t1_" + std::to_string(k) + ".csv");
        const auto [r8, b] = run_to_file(many, "t8_" + std::to_string(k) + ".csv");
        ++k;
        CHECK(r1 == cli::kOk);
        CHECK(r8 == cli::kOk);
        CHECK(!a.empty());
        CHECK(a == b);
    }
}

TEST_CASE("parsers") {
    CHECK(cli::parse_rational("1/4") == 0.25);
    CHECK(cli::parse_rational("0.5") == 0.5);
    CHECK(cli::parse_rational("-3/6") == -0.5);
    CHECK_THROWS_AS(cli::parse_rational("1/0"), PreconditionError);
    CHECK_THROWS_AS(cli::parse_rational("a/b"), PreconditionError);
    CHECK_THROWS_AS(cli::parse_rational("1/4x"), PreconditionError);
    CHECK(cli::parse_int_list("-4..4").size() == 9);
    CHECK(cli::parse_int_list("1,3,5") == std::vector<int>{1, 3, 5});
    CHECK(cli::parse_int_list("2") == std::vector<int>{2});
    CHECK_THROWS_AS(cli::parse_int_list("3..1"), PreconditionError);
    CHECK_THROWS_AS(cli::parse_int_list("1,,2"), PreconditionError);
}

TEST_CASE("csv emission") {
    const auto path = scratch() / "empty.csv";
    fs::remove(path);
    CsvTable empty{{"a", "b"}, {}};
    CHECK_THROWS_AS(emit_csv(empty, path.string()), PreconditionError);
    CHECK_FALSE(fs::exists(path));

    CsvTable one{{"tag", "measured", "bound", "ratio"}, {}};
    one.add({std::string("psi_ideal"), 7.49554434720223, 10.0, 0.749554434720223});
    const auto p1 = scratch() / "one.csv";
    emit_csv(one, p1.string());
    const auto text = slurp(p1);
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
    CHECK(text.find('\r') == std::string::npos);
    CHECK_THROWS(one.add({std::string("short")}));

    // round trip of 12-digit decimals
    CsvTable nums{{"v"}, {}};
    SplitMix64 rng(1);
    std::vector<double> vals;
    for (int i = 0; i < 500; ++i) {
        const double v = (rng.uniform() - 0.5) * std::pow(10.0, static_cast<int>(rng.next() % 40) - 20);
        vals.push_back(v);
        nums.add({v});
    }
    vals.push_back(0.0);
    nums.add({0.0});
    std::stringstream ss;
    write_csv(nums, ss);
    const auto rows = parse_csv(ss.str());
    REQUIRE(rows.size() == vals.size() + 1);
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const double back = std::stod(rows[i + 1][0]);
        CHECK(std::abs(back - vals[i]) <= 1e-10 * std::abs(vals[i]));
    }
    CHECK(format_cell(0.0) == "0");
    CHECK(format_cell(std::string("a,b")) == "\"a,b\"");
    CHECK(format_cell(std::int64_t{-7}) == "-7");
}
