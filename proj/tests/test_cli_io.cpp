#include "doctest.h"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <unistd.h>

#include "gibbsgraph/experiment.hpp"
#include "gibbsgraph/io.hpp"
#include "test_support.hpp"

using namespace gibbsgraph;
namespace fs = std::filesystem;

namespace {

// fresh scratch directory per test run; cleaned up by the fixture below
struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("gibbsgraph-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
    std::string file(const std::string& name) const { return (path / name).string(); }
    static inline int counter = 0;
};

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
            std::string* err_text = nullptr) {
    std::vector<const char*> argv;
    argv.push_back("gibbsgraph");
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

} // namespace

TEST_SUITE_BEGIN("cli_io");

TEST_CASE("format_double prints shortest round-tripping decimals") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-2.25) == "-2.25");
    CHECK(format_double(0.0) == "0");
    for (double x : {0.1, 1.0 / 3.0, 1e-300, 6.02e23, -123.456, 2.2250738585072014e-308}) {
        const std::string s = format_double(x);
        double back = 0.0;
        const auto result = std::from_chars(s.data(), s.data() + s.size(), back);
        REQUIRE(result.ec == std::errc{});
        CHECK(back == x); // bit-exact round trip
    }
}

TEST_CASE("fnv1a64 matches the published test vectors") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
    CHECK(hex16(0) == "0000000000000000");
    CHECK(hex16(0xdeadbeefull) == "00000000deadbeef");
    CHECK(hex16(fnv1a64("")) == "cbf29ce484222325");
}

TEST_CASE("point files round-trip bit-exactly and skip comments") {
    PointSet points(2, {0.1, 1.0 / 3.0, -2.5, 1e-12, 42.0, 0.0});
    std::ostringstream out;
    write_points(out, points, {"made for the round-trip test"});
    CHECK(out.str().find("# made for the round-trip test") != std::string::npos);
    CHECK(out.str().substr(0, 6) == "x0,x1\n");

    std::istringstream in(out.str());
    PointSet back = read_points(in);
    CHECK(back.coords() == points.coords());
    CHECK(back.dim() == 2);

    // comments and blank lines between rows are fine
    std::istringstream commented("x0\n1.5\n# a note\n\n2.5\n");
    PointSet sparse = read_points(commented);
    CHECK(sparse.size() == 2);
    CHECK(sparse.coords() == std::vector<double>{1.5, 2.5});
}

TEST_CASE("read_points rejects malformed input") {
    auto reject = [](const std::string& text) {
        std::istringstream in(text);
        CHECK_THROWS_AS(read_points(in), FormatError);
    };
    reject("");                        // no header
    reject("a,b\n0,0\n");              // bad header
    reject("x0,x1\n1.0\n");            // ragged row
    reject("x0,x1\n1.0,zzz\n");        // bad number
    reject("x0\n1.0\n1.0\n");          // duplicate point
}

TEST_CASE("configuration files round-trip with canonical rows") {
    Configuration config(5);
    config.set_open(EdgeId(3, 1), true);
    config.set_open(EdgeId(0, 4), true);

    std::ostringstream out;
    write_configuration(out, config);
    CHECK(out.str().substr(0, 4) == "i,j\n");
    // rows are sorted: (0,4) before (1,3)
    CHECK(out.str().find("0,4\n1,3\n") != std::string::npos);

    std::istringstream in(out.str());
    Configuration back = read_configuration(in, 5);
    CHECK(back == config);

    std::istringstream bad_vertex("i,j\n0,9\n");
    CHECK_THROWS_AS(read_configuration(bad_vertex, 5), FormatError);
    std::istringstream self_loop("i,j\n2,2\n");
    CHECK_THROWS_AS(read_configuration(self_loop, 5), FormatError);
    std::istringstream duplicate("i,j\n0,1\n0,1\n");
    CHECK_THROWS_AS(read_configuration(duplicate, 5), FormatError);
}

TEST_CASE("file helpers report the path on failure") {
    TempDir dir;
    CHECK_THROWS_WITH_AS(read_text_file(dir.file("missing.csv")),
                         doctest::Contains("missing.csv"), FormatError);

    write_text_file(dir.file("hello.txt"), "hello\n");
    CHECK(read_text_file(dir.file("hello.txt")) == "hello\n");
}

TEST_CASE("KeyValueConfig parses, types, and rejects typos") {
    std::istringstream in("alpha = 1.5   # trailing comment\n"
                          "# full-line comment\n"
                          "\n"
                          "name= chain run\n"
                          "count =40\n"
                          "flag = true\n"
                          "sides = 4, 8, 16\n"
                          "seed = 18446744073709551615\n");
    KeyValueConfig config = KeyValueConfig::parse(in, "inline");

    CHECK(config.get_double("alpha") == 1.5);
    CHECK(config.get_string("name") == "chain run");
    CHECK(config.get_long("count") == 40);
    CHECK(config.get_bool("flag", false));
    CHECK(config.get_double_list("sides") == std::vector<double>{4.0, 8.0, 16.0});
    CHECK(config.get_u64("seed") == 18446744073709551615ull);
    CHECK(config.get_double("absent", 7.0) == 7.0);
    CHECK(config.has("alpha"));
    CHECK(!config.has("absent"));

    CHECK_NOTHROW(config.reject_unused());

    CHECK_THROWS_AS(config.get_double("name"), ConfigError);
    CHECK_THROWS_AS(config.get_string("nowhere"), ConfigError);
}

TEST_CASE("KeyValueConfig flags unused keys and bad lines") {
    std::istringstream in("used = 1\nmistyped_keyy = 2\n");
    KeyValueConfig config = KeyValueConfig::parse(in, "inline");
    config.get_double("used");
    CHECK_THROWS_WITH_AS(config.reject_unused(), doctest::Contains("mistyped_keyy"), ConfigError);

    std::istringstream bad("no equals sign here\n");
    CHECK_THROWS_AS(KeyValueConfig::parse(bad, "inline"), ConfigError);

    std::istringstream duplicate("k = 1\nk = 2\n");
    CHECK_THROWS_AS(KeyValueConfig::parse(duplicate, "inline"), ConfigError);
}

TEST_CASE("KeyValueConfig canonical form is sorted and override-aware") {
    std::istringstream in("zeta = 1\nalpha = 2\n");
    KeyValueConfig config = KeyValueConfig::parse(in, "inline");
    config.set("middle", "3");
    CHECK(config.canonical() == "alpha=2\nmiddle=3\nzeta=1\n");
}

TEST_CASE("the CLI writes seeded, manifest-stamped, reproducible files") {
    TempDir dir;
    const std::string out1 = dir.file("points1.csv");
    const std::string out2 = dir.file("points2.csv");
    const std::string cfg = dir.file("sample.cfg");
    write_text_file(cfg, "process = poisson\nintensity = 3\nbox_side = 2\ndim = 2\nseed = 9\n"
                         "output = " + out1 + "\n");

    std::string text;
    CHECK(run_cli({"sample-points", "--config", cfg}, &text) == 0);
    CHECK(text.find("sample-points") != std::string::npos);

    const std::string first = read_text_file(out1);
    CHECK(first.find("# gibbsgraph 0.1.0 command=sample-points config=") != std::string::npos);
    CHECK(first.find("seed=9") != std::string::npos);

    // same config, second output path: identical bytes except none (the
    // manifest hashes the effective config minus output naming)
    CHECK(run_cli({"sample-points", "--config", cfg, "--output", out2}) == 0);
    CHECK(read_text_file(out2) == first);

    // --seed overrides and changes the draw
    const std::string out3 = dir.file("points3.csv");
    CHECK(run_cli({"sample-points", "--config", cfg, "--output", out3, "--seed", "10"}) == 0);
    CHECK(read_text_file(out3) != first);
}

TEST_CASE("CLI exit codes distinguish config, format, and usage errors") {
    TempDir dir;
    std::string err;

    // unreadable input file -> 2
    const std::string cfg = dir.file("energy.cfg");
    write_text_file(cfg, "points = " + dir.file("no-such.csv") + "\n" +
                         "edges = " + dir.file("also-missing.csv") + "\n" +
                         "h0 = 0.5\nh1 = 1\noutput = " + dir.file("e.csv") + "\n");
    CHECK(run_cli({"energy", "--config", cfg}, nullptr, &err) == 2);
    CHECK(err.find("no-such.csv") != std::string::npos);

    // unknown key -> 2, named in the message
    const std::string typo = dir.file("typo.cfg");
    write_text_file(typo, "process = poisson\nintensity = 1\nbox_side = 2\ndim = 2\nseed = 1\n"
                          "output = " + dir.file("p.csv") + "\nintensityy = 4\n");
    CHECK(run_cli({"sample-points", "--config", typo}, nullptr, &err) == 2);
    CHECK(err.find("intensityy") != std::string::npos);

    // usage errors come from the argument parser, not the command
    CHECK(run_cli({"no-such-command", "--config", typo}) != 0);
    CHECK(run_cli({"sample-points"}) != 0); // --config is required
    CHECK(run_cli({"--help"}) == 0);
    std::string version_text;
    CHECK(run_cli({"--version"}, &version_text) == 0);
    CHECK(version_text.find("0.1.0") != std::string::npos);
}

TEST_CASE("energy command recomputes what the library reports") {
    TempDir dir;
    SplitMix64 rng(71);
    PointSet points = testsupport::random_points(5, 2, 1.5, rng);
    Configuration config = testsupport::configuration_from_mask(5, 0b1011);

    {
        std::ostringstream points_text, config_text;
        write_points(points_text, points);
        write_configuration(config_text, config);
        write_text_file(dir.file("pts.csv"), points_text.str());
        write_text_file(dir.file("conf.csv"), config_text.str());
    }
    const std::string cfg = dir.file("energy.cfg");
    write_text_file(cfg, "points = " + dir.file("pts.csv") + "\n" +
                         "edges = " + dir.file("conf.csv") + "\n" +
                         "beta = 2\nh0 = 0.5\nh1 = 1\noutput = " + dir.file("e.csv") + "\n");

    std::string text;
    REQUIRE(run_cli({"energy", "--config", cfg}, &text) == 0);
    const ModelParams params(2.0, 0.5, 1.0);
    const double expected = energy(points, config, params);
    CHECK(read_text_file(dir.file("e.csv")).find(format_double(expected)) != std::string::npos);
}

TEST_SUITE_END();
