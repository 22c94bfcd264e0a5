#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "agg/cli.hpp"
#include "agg/io.hpp"

using namespace agg;
namespace fs = std::filesystem;

namespace {

fs::path tmp_dir() {
    const fs::path dir = fs::temp_directory_path() / "agg_io_tests";
    fs::create_directories(dir);
    return dir;
}

std::string path_of(const std::string& name) { return (tmp_dir() / name).string(); }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::trunc);
    out << content;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cli(std::vector<std::string> args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
    std::ostringstream out, err;
    const int code = run_cli(std::move(args), out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

}  // namespace

TEST_CASE("distribution round trip is lossless") {
    const FiniteDistribution d({1.0 / 3.0, 1.0 / 7.0, 1.0 - 1.0 / 3.0 - 1.0 / 7.0},
                               {0.1, 1.0 / 3.0, 0.987654321});
    const std::string path = path_of("dist.txt");
    save_distribution(d, path);
    const FiniteDistribution back = load_distribution(path);
    REQUIRE(back.n_atoms() == 3);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(back.mass(j) == d.mass(j));
        CHECK(back.eta(j) == d.eta(j));
    }
}

TEST_CASE("class and sample round trips") {
    const FunctionClass cls({Rule({1.0, -1.0}), Rule({-0.25, 1.0 / 3.0})});
    const std::string cpath = path_of("class.txt");
    save_class(cls, cpath);
    const FunctionClass cback = load_class(cpath);
    REQUIRE(cback.size() == 2);
    CHECK(cback.rules[0].values() == cls.rules[0].values());
    CHECK(cback.rules[1].values() == cls.rules[1].values());

    LabeledSample sample;
    sample.entries = {{0, 1}, {1, -1}, {0, -1}};
    const std::string spath = path_of("sample.txt");
    save_sample(sample, spath);
    const LabeledSample sback = load_sample(spath);
    REQUIRE(sback.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(sback.entries[i].atom == sample.entries[i].atom);
        CHECK(sback.entries[i].label == sample.entries[i].label);
    }
}

TEST_CASE("parse errors carry the path and line number") {
    const std::string path = path_of("bad_dist.txt");
    write_file(path,
               "atoms 0 1\n"
               "masses 0.5 oops\n"
               "etas 0.25 0.75\n");
    try {
        load_distribution(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        const std::string msg = e.what();
        CHECK(msg.find(path) != std::string::npos);
        CHECK(msg.find(":2:") != std::string::npos);
    }

    CHECK_THROWS_AS(load_distribution(path_of("no_such_file.txt")), ParseError);
}

TEST_CASE("config parsing") {
    const ExperimentConfig config = parse_config_text(
        "# comment\n"
        "kappa = 2\n"
        "M = 8\n"
        "n_grid = 64, 128, 256\n"
        "trials = 10\n"
        "procedures = ERM, CAEW\n"
        "master_seed = 42\n",
        "inline");
    CHECK(config.kappa == 2.0);
    CHECK(config.M == 8);
    CHECK(config.n_grid == std::vector<std::size_t>{64, 128, 256});
    CHECK(config.trials == 10);
    REQUIRE(config.procedures.size() == 2);
    CHECK(config.procedures[0] == Procedure::ERM);
    CHECK(config.procedures[1] == Procedure::CAEW);
    CHECK(config.master_seed == 42);
    CHECK(config.use_cube);

    CHECK_THROWS_AS(parse_config_text("frobnicate = 1\n", "inline"), ParseError);
    CHECK_THROWS_AS(parse_config_text("kappa\n", "inline"), ParseError);
    CHECK_THROWS_AS(parse_config_text("trials = many\n", "inline"), ParseError);
}

TEST_CASE("cli aggregate") {
    // antipodal pair and a balanced sample: equal risks, symmetric weights
    write_file(path_of("cli_class.txt"),
               "atoms 0\n"
               "rule 1\n"
               "rule -1\n");
    write_file(path_of("cli_sample.txt"),
               "n 2\n"
               "0 1\n"
               "0 -1\n");
    std::string out;
    const int code = cli({"aggregate", "--class", path_of("cli_class.txt"),
                          "--sample", path_of("cli_sample.txt"), "--procedure", "AEW"},
                         &out);
    CHECK(code == 0);
    CHECK(out.find("procedure AEW") != std::string::npos);
    CHECK(out.find("rule 0 risk 1 weight 0.5") != std::string::npos);
    CHECK(out.find("rule 1 risk 1 weight 0.5") != std::string::npos);

    std::string err;
    write_file(path_of("cli_garbage.txt"), "not a class file\n");
    CHECK(cli({"aggregate", "--class", path_of("cli_garbage.txt"), "--sample",
               path_of("cli_sample.txt")},
              nullptr, &err) == 2);
    CHECK(!err.empty());

    CHECK(cli({"aggregate", "--class", path_of("cli_class.txt")}) == 2);  // missing option
    CHECK(cli({"no_such_command"}) == 2);
}

TEST_CASE("cli simulate") {
    const std::string conf = path_of("cli_sim.conf");
    write_file(conf,
               "kappa = 1\n"
               "M = 4\n"
               "n_grid = 32, 64\n"
               "trials = 6\n"
               "procedures = ERM, AEW\n"
               "master_seed = 9\n");

    SUBCASE("reruns with the same seed are byte identical") {
        const std::string csv1 = path_of("sim1.csv");
        const std::string csv2 = path_of("sim2.csv");
        CHECK(cli({"simulate", "--config", conf, "--output", csv1}) == 0);
        CHECK(cli({"simulate", "--config", conf, "--output", csv2, "--threads", "4"}) == 0);
        const std::string a = slurp(csv1);
        CHECK(!a.empty());
        CHECK(a == slurp(csv2));
        CHECK(a.rfind("n,M,kappa,procedure,", 0) == 0);
        // sidecar metadata lands next to the CSV
        CHECK(slurp(path_of("sim1.meta")).find("master_seed = 9") != std::string::npos);
    }

    SUBCASE("different seeds differ") {
        const std::string csv1 = path_of("sim_s1.csv");
        const std::string csv2 = path_of("sim_s2.csv");
        CHECK(cli({"simulate", "--config", conf, "--output", csv1, "--seed", "1"}) == 0);
        CHECK(cli({"simulate", "--config", conf, "--output", csv2, "--seed", "2"}) == 0);
        CHECK(slurp(csv1) != slurp(csv2));
    }

    SUBCASE("invalid overrides are usage errors") {
        std::string err;
        CHECK(cli({"simulate", "--config", conf, "--set", "trials=0"}, nullptr, &err) == 2);
        CHECK(!err.empty());
        CHECK(cli({"simulate", "--config", conf, "--set", "bogus=1"}) == 2);
        CHECK(cli({"simulate", "--config", path_of("no_such.conf")}) == 2);
    }

    SUBCASE("without --output the csv goes to stdout") {
        std::string out;
        CHECK(cli({"simulate", "--config", conf}, &out) == 0);
        CHECK(out.rfind("n,M,kappa,procedure,", 0) == 0);
    }
}

TEST_CASE("cli bounds") {
    std::string out;
    const int code = cli({"bounds", "--kappa", "1", "--M", "16", "--c", "1",
                          "--n-min", "16", "--n-max", "64"},
                         &out);
    CHECK(code == 0);
    std::istringstream lines(out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "n,remainder,thm1_bound,thm2_bound");
    std::size_t rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 3);  // n = 16, 32, 64
}

TEST_CASE("cli oracle") {
    write_file(path_of("cli_dist.txt"),
               "atoms 0\n"
               "masses 1\n"
               "etas 0.75\n");
    write_file(path_of("cli_pair.txt"),
               "atoms 0\n"
               "rule 1\n"
               "rule -1\n");
    std::string out;
    CHECK(cli({"oracle", "--distribution", path_of("cli_dist.txt"), "--class",
               path_of("cli_pair.txt"), "--grid-step", "0.01"},
              &out) == 0);
    CHECK(out.find("min_vertex 0.5") != std::string::npos);
    CHECK(out.find("min_grid 0.5") != std::string::npos);
}
